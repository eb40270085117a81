//! Row-form permutations of `{1, …, n}` acting on the right.
//!
//! `row[i-1]` is the image of `i`. Products read left to right: in `x * y`
//! the permutation `x` is applied first, so `(x * y).row[i] = y.row[x.row[i]]`.
//! Under this convention `s_j * w` swaps positions `j, j+1` of `w` and
//! `w * s_j` swaps the values `j, j+1`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::Composition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    row: Vec<usize>,
}

/// A word in the simple transpositions `s_j = (j, j+1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorWord(pub Vec<usize>);

/// A set `J` of simple transposition indices in `{1, …, n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicSet {
    n: usize,
    members: BTreeSet<usize>,
}

impl Permutation {
    pub fn from_row(row: Vec<usize>) -> Result<Self> {
        let n = row.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty row".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &row {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{row:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { row })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { row: (1..=n).collect() }
    }

    /// `w_0 = [n, n-1, …, 1]`.
    pub fn longest_element(n: usize) -> Self {
        Permutation { row: (1..=n).rev().collect() }
    }

    /// The simple transposition `s_j` in `S_n`.
    pub fn simple(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j >= n {
            return Err(Error::OutOfRange { index: j, max: n.saturating_sub(1) });
        }
        let mut row: Vec<usize> = (1..=n).collect();
        row.swap(j - 1, j);
        Ok(Permutation { row })
    }

    /// Build from disjoint cycles; each listed element maps to the next one.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut row: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        for cycle in cycles {
            for (idx, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n || touched[a] {
                    return Err(Error::InvalidPermutation(format!("cycles {cycles:?} in S_{n}")));
                }
                touched[a] = true;
                row[a - 1] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Ok(Permutation { row })
    }

    /// The cycle `(i, i+1, …, n)` of `S_n`; with `n = m+1` this is the coset
    /// representative `x_i = s_m ⋯ s_i` of `S_m` in `S_{m+1}`.
    pub fn rising_cycle(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::OutOfRange { index: i, max: n });
        }
        let mut row: Vec<usize> = (1..=n).collect();
        for v in i..n {
            row[v - 1] = v + 1;
        }
        row[n - 1] = i;
        Ok(Permutation { row })
    }

    /// `w_J(λ)`: reverses every consecutive block of `λ`.
    pub fn parabolic_longest(lambda: &Composition) -> Self {
        let mut row = Vec::with_capacity(lambda.size());
        for block in lambda.blocks() {
            row.extend(block.rev().map(|v| v + 1));
        }
        Permutation { row }
    }

    pub fn degree(&self) -> usize {
        self.row.len()
    }

    pub fn row(&self) -> &[usize] {
        &self.row
    }

    /// Image of `i` (1-based).
    pub fn image(&self, i: usize) -> usize {
        self.row[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.row.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation { row: self.row.iter().map(|&v| other.row[v - 1]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut row = vec![0; self.degree()];
        for (i, &v) in self.row.iter().enumerate() {
            row[v - 1] = i + 1;
        }
        Permutation { row }
    }

    /// Coxeter length, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        let r = &self.row;
        let mut inv = 0;
        for i in 0..r.len() {
            for j in i + 1..r.len() {
                if r[i] > r[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// `j` is a left descent iff `l(s_j w) < l(w)`, i.e. positions `j, j+1`
    /// of the row are out of order.
    pub fn is_left_descent(&self, j: usize) -> bool {
        self.row[j - 1] > self.row[j]
    }

    /// `j` is a right descent iff `l(w s_j) < l(w)`, i.e. the value `j+1`
    /// sits before the value `j`.
    pub fn is_right_descent(&self, j: usize) -> bool {
        let inv = self.inverse();
        inv.row[j - 1] > inv.row[j]
    }

    /// `s_j * self`: swap positions `j` and `j+1`.
    pub fn left_mul_simple(&self, j: usize) -> Permutation {
        let mut row = self.row.clone();
        row.swap(j - 1, j);
        Permutation { row }
    }

    /// `self * s_j`: swap the values `j` and `j+1`.
    pub fn right_mul_simple(&self, j: usize) -> Permutation {
        let row = self
            .row
            .iter()
            .map(|&v| if v == j { j + 1 } else if v == j + 1 { j } else { v })
            .collect();
        Permutation { row }
    }

    /// Canonical reduced word: peel off the smallest left descent until the
    /// identity is reached. The letters come out in product order.
    pub fn reduced_word(&self) -> GeneratorWord {
        let mut w = self.clone();
        let mut letters = Vec::with_capacity(self.length());
        while let Some(j) = (1..w.degree()).find(|&j| w.is_left_descent(j)) {
            letters.push(j);
            w = w.left_mul_simple(j);
        }
        GeneratorWord(letters)
    }

    /// `x` is a prefix of `y` (right weak order): `l(x) + l(x⁻¹y) = l(y)`.
    pub fn is_prefix_of(&self, y: &Permutation) -> Result<bool> {
        let rest = self.inverse().compose(y)?;
        Ok(self.length() + rest.length() == y.length())
    }

    /// `x` is a suffix of `y` (left weak order): `l(y x⁻¹) + l(x) = l(y)`.
    pub fn is_suffix_of(&self, y: &Permutation) -> Result<bool> {
        let rest = y.compose(&self.inverse())?;
        Ok(self.length() + rest.length() == y.length())
    }

    /// Natural embedding into `S_{n+1}` fixing `n+1`.
    pub fn embed(&self) -> Permutation {
        let mut row = self.row.clone();
        row.push(self.degree() + 1);
        Permutation { row }
    }

    /// Inverse of [`embed`](Self::embed); `None` unless `n` is fixed.
    pub fn restrict(&self) -> Option<Permutation> {
        let n = self.degree();
        (n > 1 && self.row[n - 1] == n).then(|| Permutation { row: self.row[..n - 1].to_vec() })
    }

    /// `w_0 · self · w_0`.
    pub fn conjugate_by_longest(&self) -> Permutation {
        let n = self.degree();
        let row = self.row.iter().rev().map(|&v| n + 1 - v).collect();
        Permutation { row }
    }

    /// Minimal length in its coset `W_{J(λ)} · self`: strictly increasing on
    /// every block of positions.
    pub fn is_distinguished(&self, lambda: &Composition) -> Result<bool> {
        self.check_size(lambda)?;
        Ok(lambda.blocks().all(|b| self.row[b].windows(2).all(|w| w[0] < w[1])))
    }

    /// The factorisation `self = u · e` with `u ∈ W_{J(λ)}` and `e`
    /// distinguished.
    pub fn coset_decompose(&self, lambda: &Composition) -> Result<(Permutation, Permutation)> {
        self.check_size(lambda)?;
        let mut row = self.row.clone();
        for b in lambda.blocks() {
            row[b].sort_unstable();
        }
        let e = Permutation { row };
        let u = self.compose(&e.inverse())?;
        Ok((u, e))
    }

    fn check_size(&self, lambda: &Composition) -> Result<()> {
        if lambda.size() != self.degree() {
            return Err(Error::SizeMismatch { expected: lambda.size(), found: self.degree() });
        }
        Ok(())
    }

    /// Disjoint cycles of length at least two, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] || self.row[start - 1] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.row[start - 1];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.row[cur - 1];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect()
    }

    /// Parse row-form `[4,6,7,1,2,3,5,8]`, cycle form `(1,4)(2,6,3,7,5)` or a
    /// generator word `s3 s4 s5`. Cycle and word forms need `degree` unless it
    /// can be read off as the largest letter mentioned.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Permutation> {
        let t = text.trim();
        let bad = || Error::Parse(format!("cannot read permutation {text:?}"));
        let numbers = |s: &str| -> Result<Vec<usize>> {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        let perm = if let Some(body) = t.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            Permutation::from_row(numbers(body)?)?
        } else if t.starts_with('(') {
            let mut cycles = Vec::new();
            let mut rest = t;
            while !rest.is_empty() {
                let body_end = rest.find(')').ok_or_else(bad)?;
                if !rest.starts_with('(') {
                    return Err(bad());
                }
                let cycle = numbers(&rest[1..body_end])?;
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
                rest = rest[body_end + 1..].trim_start();
            }
            let max = cycles.iter().flatten().copied().max().unwrap_or(1);
            let n = degree.unwrap_or(max);
            Permutation::from_cycles(n, &cycles)?
        } else if t.starts_with('s') || t.is_empty() {
            let word: Vec<usize> = t
                .split(|c: char| c.is_whitespace() || c == '*' || c == '·')
                .filter(|x| !x.is_empty())
                .map(|x| x.strip_prefix('s').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            let n = degree.unwrap_or(word.iter().max().map_or(1, |m| m + 1));
            GeneratorWord(word).product(n)?
        } else {
            return Err(bad());
        };
        if let Some(n) = degree {
            if perm.degree() != n {
                return Err(Error::DegreeMismatch(n, perm.degree()));
            }
        }
        Ok(perm)
    }

    /// Sort key giving length-then-lexicographic order.
    pub fn length_lex_key(&self) -> (usize, Vec<usize>) {
        (self.length(), self.row.clone())
    }
}

/// Sort permutations by length, then lexicographically by row-form.
pub fn sort_length_lex(perms: &mut [Permutation]) {
    perms.sort_by_cached_key(|p| p.length_lex_key());
}

/// `x * y` applies `x` first. Panics on a degree mismatch; use
/// [`Permutation::compose`] for a checked product.
impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("degree mismatch in permutation product")
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(row: Vec<usize>) -> Result<Self> {
        Permutation::from_row(row)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.row
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.row.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Permutation::parse(s, None)
    }
}

impl GeneratorWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// `s_{a_1} s_{a_2} ⋯` in `S_n`.
    pub fn product(&self, n: usize) -> Result<Permutation> {
        let mut w = Permutation::identity(n);
        for &j in &self.0 {
            if j == 0 || j >= n {
                return Err(Error::OutOfRange { index: j, max: n.saturating_sub(1) });
            }
            w = w.right_mul_simple(j);
        }
        Ok(w)
    }

    pub fn is_reduced(&self, n: usize) -> Result<bool> {
        Ok(self.product(n)?.length() == self.len())
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        GeneratorWord(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|j| format!("s{j}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl ParabolicSet {
    pub fn new(n: usize, members: BTreeSet<usize>) -> Result<Self> {
        if let Some(&bad) = members.iter().find(|&&j| j == 0 || j >= n) {
            return Err(Error::OutOfRange { index: bad, max: n.saturating_sub(1) });
        }
        Ok(ParabolicSet { n, members })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, j: usize) -> bool {
        self.members.contains(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
        let mut row: Vec<usize> = (1..=n).collect();
        row.shuffle(rng);
        Permutation::from_row(row).unwrap()
    }

    #[test]
    fn product_convention_matches_worked_example() {
        let lambda: Composition = "3,3,2,1".parse().unwrap();
        let wj = Permutation::parabolic_longest(&lambda);
        assert_eq!(wj, p("[3,2,1,6,5,4,8,7,9]"));
        let d = p("[3,4,7,2,6,8,1,9,5]");
        assert_eq!(&wj * &d, p("[7,4,3,8,6,2,9,1,5]"));
        assert_eq!(&Permutation::identity(9) * &d, d);
        assert_eq!(&d * &d.inverse(), Permutation::identity(9));
    }

    #[test]
    fn simple_multiplication_sides() {
        let w = p("[3,1,2]");
        let s1 = Permutation::simple(3, 1).unwrap();
        assert_eq!(&s1 * &w, p("[1,3,2]"));
        assert_eq!(&w * &s1, p("[3,2,1]"));
        assert_eq!(w.left_mul_simple(1), &s1 * &w);
        assert_eq!(w.right_mul_simple(1), &w * &s1);
    }

    #[test]
    fn inverses() {
        assert_eq!(Permutation::identity(4).inverse(), Permutation::identity(4));
        assert_eq!(p("[2,3,1]").inverse(), p("[3,1,2]"));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let w = random_perm(&mut rng, 8);
            assert_eq!(w.inverse().inverse(), w);
        }
    }

    fn double_loop_inversions(row: &[usize]) -> usize {
        let mut count = 0;
        for (i, a) in row.iter().enumerate() {
            for b in &row[i + 1..] {
                count += usize::from(a > b);
            }
        }
        count
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(Permutation::longest_element(4).length(), 6);
        assert_eq!(Permutation::longest_element(5).length(), 10);
        let d = p("[3,4,7,2,6,8,1,9,5]");
        assert_eq!(d.length(), double_loop_inversions(d.row()));
        assert_eq!(d.length(), 14);
    }

    #[test]
    fn reduced_words_replay() {
        assert!(Permutation::identity(4).reduced_word().is_empty());
        assert_eq!(Permutation::simple(4, 1).unwrap().reduced_word(), GeneratorWord(vec![1]));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let w = random_perm(&mut rng, 7);
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(word.product(7).unwrap(), w);
        }
    }

    #[test]
    fn prefixes_from_worked_example() {
        let d = p("[3,4,7,2,6,8,1,9,5]");
        assert!(p("[2,3,4,1,6,7,5,8,9]").is_prefix_of(&d).unwrap());
        assert!(!p("[2,5,6,1,4,7,3,8,9]").is_prefix_of(&d).unwrap());
        assert!(Permutation::identity(9).is_prefix_of(&d).unwrap());
        assert!(Permutation::identity(3).is_prefix_of(&d).is_err());
    }

    #[test]
    fn longest_elements() {
        assert_eq!(Permutation::longest_element(1), p("[1]"));
        assert_eq!(Permutation::longest_element(3), p("[3,2,1]"));
        let n5: Composition = "5".parse().unwrap();
        assert_eq!(Permutation::parabolic_longest(&n5), Permutation::longest_element(5));
        let ones: Composition = "1^5".parse().unwrap();
        assert!(Permutation::parabolic_longest(&ones).is_identity());
    }

    #[test]
    fn distinguished_representatives() {
        let lambda: Composition = "3,3,2,1".parse().unwrap();
        assert!(p("[3,4,7,2,6,8,1,9,5]").is_distinguished(&lambda).unwrap());
        assert!(Permutation::identity(9).is_distinguished(&lambda).unwrap());
        let l21: Composition = "2,1".parse().unwrap();
        assert!(!p("[2,1,3]").is_distinguished(&l21).unwrap());
        assert!(p("[2,1]").is_distinguished(&l21).is_err());
    }

    #[test]
    fn coset_decomposition() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let all7 = Composition::all(7);
        for _ in 0..200 {
            let w = random_perm(&mut rng, 7);
            let lambda = all7.choose(&mut rng).unwrap();
            let (u, e) = w.coset_decompose(lambda).unwrap();
            assert_eq!(&u * &e, w);
            assert_eq!(u.length() + e.length(), w.length());
            assert!(e.is_distinguished(lambda).unwrap());
            let (_, ue) = u.coset_decompose(lambda).unwrap();
            assert!(ue.is_identity(), "u must lie in W_J");
        }
        let lambda: Composition = "2,3,1".parse().unwrap();
        let wj = Permutation::parabolic_longest(&lambda);
        assert_eq!(wj.coset_decompose(&lambda).unwrap(), (wj.clone(), Permutation::identity(6)));
        let id = Permutation::identity(6);
        assert_eq!(id.coset_decompose(&lambda).unwrap(), (id.clone(), id));
    }

    #[test]
    fn parabolic_length_additivity() {
        for lambda in Composition::all(5) {
            let wj = Permutation::parabolic_longest(&lambda);
            let mut row: Vec<usize> = (1..=5).collect();
            loop {
                let e = Permutation::from_row(row.clone()).unwrap();
                if e.is_distinguished(&lambda).unwrap() {
                    assert_eq!((&wj * &e).length(), wj.length() + e.length());
                }
                // next permutation
                let Some(i) = (0..4).rev().find(|&i| row[i] < row[i + 1]) else { break };
                let j = (i + 1..5).rev().find(|&j| row[j] > row[i]).unwrap();
                row.swap(i, j);
                row[i + 1..].reverse();
            }
        }
    }

    #[test]
    fn parse_formats() {
        assert_eq!(Permutation::parse("(1,4)(2,6,3,7,5)", Some(8)).unwrap(), p("[4,6,7,1,2,3,5,8]"));
        assert_eq!(Permutation::parse("()", Some(3)).unwrap(), Permutation::identity(3));
        let w = Permutation::parse("s3 s4 s5", Some(6)).unwrap();
        assert_eq!(w, GeneratorWord(vec![3, 4, 5]).product(6).unwrap());
        assert!(Permutation::parse("[1,1,2]", None).is_err());
        assert!(Permutation::parse("[1,2]", Some(3)).is_err());
        assert_eq!(p("[4,6,7,1,2,3,5,8]").cycle_string(), "(1,4)(2,6,3,7,5)");
    }

    #[test]
    fn rising_cycle_is_descending_word() {
        // x_i = s_n ⋯ s_i in S_{n+1}
        for n in 1..6 {
            for i in 1..=n + 1 {
                let word = GeneratorWord((i..=n).rev().collect());
                assert_eq!(Permutation::rising_cycle(n + 1, i).unwrap(), word.product(n + 1).unwrap());
            }
        }
    }

    #[test]
    fn conjugation_by_longest() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let w = random_perm(&mut rng, 6);
            let w0 = Permutation::longest_element(6);
            assert_eq!(w.conjugate_by_longest(), &(&w0 * &w) * &w0);
        }
    }
}
