//! Compositions and partitions of `n`.
//!
//! Parts are 1-indexed wherever a part index leaves this module (the maximal
//! part set, `bump`), matching the usual convention for row numbers.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::ParabolicSet;

/// A proper composition: a non-empty sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

/// A composition whose parts weakly decrease.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Composition);

/// The compositions derived from `λ` that the lifting maps act between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derived {
    pub reverse: Composition,
    pub lower_star: Composition,
    pub upper_star: Composition,
    pub max_part: usize,
    pub max_positions: BTreeSet<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!(
                "zero part in {parts:?}"
            )));
        }
        Ok(Composition { parts })
    }

    /// The one-part composition `(n)`.
    pub fn single(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The integer `n` this is a composition of.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Position ranges (0-based, half open) of the consecutive blocks.
    pub fn blocks(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.parts.iter().scan(0usize, |start, &p| {
            let r = *start..*start + p;
            *start += p;
            Some(r)
        })
    }

    /// Block index (0-based) of every 0-based position.
    pub fn block_of_positions(&self) -> Vec<usize> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(b, &p)| std::iter::repeat(b).take(p))
            .collect()
    }

    /// Proper partial sums `λ_1, λ_1+λ_2, …` (all but the total).
    pub fn partial_sums(&self) -> Vec<usize> {
        let mut acc = 0;
        self.parts[..self.parts.len() - 1]
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect()
    }

    pub fn conjugate(&self) -> Partition {
        let max = self.max_part();
        let parts = (1..=max)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count())
            .collect();
        Partition(Composition { parts })
    }

    /// The parts sorted into decreasing order (equal to the double conjugate).
    pub fn sorted(&self) -> Partition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(Composition { parts })
    }

    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn to_partition(&self) -> Result<Partition> {
        Partition::new(self.parts.clone())
    }

    /// `J(λ)`: every generator except those at the proper partial sums.
    pub fn generator_set(&self) -> ParabolicSet {
        let n = self.size();
        let cuts: BTreeSet<usize> = self.partial_sums().into_iter().collect();
        ParabolicSet::new(n, (1..n).filter(|j| !cuts.contains(j)).collect())
            .expect("members lie in 1..n")
    }

    pub fn reverse(&self) -> Composition {
        Composition { parts: self.parts.iter().rev().copied().collect() }
    }

    /// `λ_*`: append a part 1.
    pub fn lower_star(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.push(1);
        Composition { parts }
    }

    /// `λ^*`: prepend a part 1.
    pub fn upper_star(&self) -> Composition {
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        parts.push(1);
        parts.extend_from_slice(&self.parts);
        Composition { parts }
    }

    pub fn max_part(&self) -> usize {
        *self.parts.iter().max().expect("non-empty")
    }

    /// `M(λ)`: 1-based indices of the maximal parts.
    pub fn max_positions(&self) -> BTreeSet<usize> {
        let m = self.max_part();
        (1..=self.len()).filter(|&j| self.parts[j - 1] == m).collect()
    }

    /// `λ^(k)`: add one to part `k`, which must be a maximal part.
    pub fn bump(&self, k: usize) -> Result<Composition> {
        if !self.max_positions().contains(&k) {
            return Err(Error::NotMaximalPart(k, self.to_string()));
        }
        let mut parts = self.parts.clone();
        parts[k - 1] += 1;
        Ok(Composition { parts })
    }

    pub fn derived(&self) -> Derived {
        Derived {
            reverse: self.reverse(),
            lower_star: self.lower_star(),
            upper_star: self.upper_star(),
            max_part: self.max_part(),
            max_positions: self.max_positions(),
        }
    }

    /// All `2^(n-1)` compositions of `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Composition> {
        fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition { parts: cur.clone() });
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                go(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// All distinct rearrangements of the parts, lexicographically ordered.
    pub fn rearrangements(&self) -> Vec<Composition> {
        let mut parts = self.parts.clone();
        parts.sort_unstable();
        let mut out = vec![Composition { parts: parts.clone() }];
        // next-permutation walk over the multiset
        loop {
            let Some(i) = (0..parts.len().saturating_sub(1)).rev().find(|&i| parts[i] < parts[i + 1])
            else {
                break;
            };
            let j = (i + 1..parts.len()).rev().find(|&j| parts[j] > parts[i]).unwrap();
            parts.swap(i, j);
            parts[i + 1..].reverse();
            out.push(Composition { parts: parts.clone() });
        }
        out
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let c = Composition::new(parts)?;
        if !c.is_partition() {
            return Err(Error::NotAPartition(c.to_string()));
        }
        Ok(Partition(c))
    }

    pub fn parts(&self) -> &[usize] {
        self.0.parts()
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_composition(&self) -> &Composition {
        &self.0
    }

    pub fn conjugate(&self) -> Partition {
        self.0.conjugate()
    }

    /// `self ⊴ other` in the dominance order.
    pub fn dominated_by(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch { expected: self.size(), found: other.size() });
        }
        let (a, b) = (self.parts(), other.parts());
        let (mut sa, mut sb) = (0, 0);
        for i in 0..a.len().max(b.len()) {
            sa += a.get(i).copied().unwrap_or(0);
            sb += b.get(i).copied().unwrap_or(0);
            if sa > sb {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Strict dominance `self ◁ other`.
    pub fn strictly_dominated_by(&self, other: &Partition) -> Result<bool> {
        Ok(self != other && self.dominated_by(other)?)
    }

    /// Append a part; the caller guarantees the result is still a partition.
    #[cfg(test)]
    pub(crate) fn with_appended(&self, part: usize) -> Partition {
        let mut parts = self.parts().to_vec();
        parts.push(part);
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition(Composition { parts })
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(Composition { parts: cur.clone() }));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

/// `dominates_leq(λ, μ)`: `λ ⊴ μ`.
pub fn dominates_leq(lambda: &Partition, mu: &Partition) -> Result<bool> {
    lambda.dominated_by(mu)
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Composition::new(v)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0.parts
    }
}

impl From<Partition> for Composition {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Accepts `(3,3,2,1)`, `3,3,2,1`, `3 3 2 1` and exponent shorthand such as
/// `2,1^3,2` or `3^2,2,1`.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let mut parts = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e),
                None => (tok, "1"),
            };
            let base: usize = base
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad part {tok:?} in {s:?}")))?;
            let exp: usize = exp
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {tok:?} in {s:?}")))?;
            if base == 0 {
                return Err(Error::InvalidComposition(format!("zero part in {s:?}")));
            }
            parts.extend(std::iter::repeat(base).take(exp));
        }
        Composition::new(parts)
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let c: Composition = s.parse()?;
        c.to_partition()
    }
}
