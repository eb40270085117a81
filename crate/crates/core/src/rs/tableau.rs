use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::Node;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::shapes::Partition;

/// A Young tableau with distinct positive entries, rows and columns strictly
/// increasing. Tableaux produced by RS on `S_n` have content `{1, …, n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TableauRepr", into = "TableauRepr")]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct TableauRepr {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<StandardTableau> {
        let bad = |why: &str| Err(Error::InvalidTableau(format!("{rows:?}: {why}")));
        if rows.is_empty() || rows.iter().any(Vec::is_empty) {
            return bad("empty row");
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return bad("row lengths increase");
        }
        if rows.iter().any(|r| r.windows(2).any(|w| w[0] >= w[1])) {
            return bad("row not increasing");
        }
        if rows.windows(2).any(|w| w[1].iter().zip(&w[0]).any(|(below, above)| below <= above)) {
            return bad("column not increasing");
        }
        let mut all: Vec<usize> = rows.iter().flatten().copied().collect();
        all.sort_unstable();
        if all[0] == 0 || all.windows(2).any(|w| w[0] == w[1]) {
            return bad("entries must be distinct and positive");
        }
        Ok(StandardTableau { rows })
    }

    pub fn single_row(n: usize) -> StandardTableau {
        StandardTableau { rows: vec![(1..=n).collect()] }
    }

    pub fn single_column(n: usize) -> StandardTableau {
        StandardTableau { rows: (1..=n).map(|i| vec![i]).collect() }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("rows weakly decrease")
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Content is exactly `{1, …, n}`.
    pub fn has_standard_content(&self) -> bool {
        let n = self.size();
        self.rows.iter().flatten().all(|&e| e <= n)
    }

    /// The node (1-based) holding `value`.
    pub fn position(&self, value: usize) -> Option<Node> {
        self.rows.iter().enumerate().find_map(|(i, r)| {
            r.iter().position(|&e| e == value).map(|j| (i + 1, j + 1))
        })
    }

    pub fn to_ascii(&self) -> String {
        let width = self.rows.iter().flatten().max().map_or(1, |m| m.to_string().len());
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|e| format!("{e:>width$}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

impl TryFrom<TableauRepr> for StandardTableau {
    type Error = Error;
    fn try_from(repr: TableauRepr) -> Result<Self> {
        StandardTableau::new(repr.rows)
    }
}

impl From<StandardTableau> for TableauRepr {
    fn from(t: StandardTableau) -> Self {
        TableauRepr { rows: t.rows }
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

/// Row-insert `x` into `rows`, returning the node created.
fn insert_rows(rows: &mut Vec<Vec<usize>>, mut x: usize) -> Node {
    for (i, row) in rows.iter_mut().enumerate() {
        match row.iter().position(|&e| e > x) {
            Some(j) => x = std::mem::replace(&mut row[j], x),
            None => {
                row.push(x);
                return (i + 1, row.len());
            }
        }
    }
    rows.push(vec![x]);
    (rows.len(), 1)
}

/// Row insertion of a value not already present.
pub fn insert(t: &StandardTableau, x: usize) -> Result<(StandardTableau, Node)> {
    if x == 0 || t.position(x).is_some() {
        return Err(Error::InvalidTableau(format!("cannot insert {x}")));
    }
    let mut rows = t.rows.clone();
    let node = insert_rows(&mut rows, x);
    Ok((StandardTableau { rows }, node))
}

/// `w ↦ (P(w), Q(w))` by row insertion of `w(1), …, w(n)`.
pub fn rs_pair(w: &Permutation) -> (StandardTableau, StandardTableau) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (step, &x) in w.row().iter().enumerate() {
        let (i, _) = insert_rows(&mut p, x);
        if i > q.len() {
            q.push(Vec::new());
        }
        q[i - 1].push(step + 1);
    }
    (StandardTableau { rows: p }, StandardTableau { rows: q })
}

pub fn shape_of(w: &Permutation) -> Partition {
    rs_pair(w).0.shape()
}

/// Inner corners (removable nodes) and outer corners (addable nodes) of a
/// Young diagram.
pub fn corners(shape: &Partition) -> (BTreeSet<Node>, BTreeSet<Node>) {
    let parts = shape.parts();
    let mut inner = BTreeSet::new();
    let mut outer = BTreeSet::new();
    for (i, &len) in parts.iter().enumerate() {
        if parts.get(i + 1).is_none_or(|&next| next < len) {
            inner.insert((i + 1, len));
        }
        if i == 0 || parts[i - 1] > len {
            outer.insert((i + 1, len + 1));
        }
    }
    outer.insert((parts.len() + 1, 1));
    (inner, outer)
}

/// Remove the entry at an inner corner and reverse-bump it up to the first
/// row. Returns the smaller tableau and the value expelled from row 1.
pub fn reverse_insert(t: &StandardTableau, corner: Node) -> Result<(StandardTableau, usize)> {
    let (inner, _) = corners(&t.shape());
    if !inner.contains(&corner) {
        return Err(Error::NotInnerCorner(corner.0, corner.1));
    }
    let mut rows = t.rows.clone();
    let (r, _) = corner;
    let mut x = rows[r - 1].pop().expect("corner row is non-empty");
    if rows[r - 1].is_empty() {
        rows.pop();
    }
    for i in (0..r - 1).rev() {
        let row = &mut rows[i];
        let j = row.iter().rposition(|&e| e < x).expect("column strictness");
        x = std::mem::replace(&mut row[j], x);
    }
    Ok((StandardTableau { rows }, x))
}

/// The permutation with RS pair `(P, Q)`.
pub fn rs_inverse(p: &StandardTableau, q: &StandardTableau) -> Result<Permutation> {
    if p.shape() != q.shape() {
        return Err(Error::InvalidTableau(format!(
            "shapes {} and {} differ",
            p.shape(),
            q.shape()
        )));
    }
    if !p.has_standard_content() || !q.has_standard_content() {
        return Err(Error::InvalidTableau("content must be 1..n".into()));
    }
    let n = p.size();
    let mut p = p.clone();
    let mut row = vec![0; n];
    for step in (1..=n).rev() {
        let corner = q.position(step).expect("standard content");
        let (smaller, x) = reverse_insert(&p, corner)?;
        row[step - 1] = x;
        p = smaller;
    }
    Permutation::from_row(row)
}

/// All standard Young tableaux of a shape, in lexicographic order of rows.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    let n = shape.size();
    let parts = shape.parts().to_vec();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); parts.len()];
    let mut out = Vec::new();
    fn go(v: usize, n: usize, parts: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<StandardTableau>) {
        if v > n {
            out.push(StandardTableau { rows: rows.clone() });
            return;
        }
        for i in 0..parts.len() {
            let len = rows[i].len();
            if len < parts[i] && (i == 0 || rows[i - 1].len() > len) {
                rows[i].push(v);
                go(v + 1, n, parts, rows, out);
                rows[i].pop();
            }
        }
    }
    go(1, n, &parts, &mut rows, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
        let mut row: Vec<usize> = (1..=n).collect();
        row.shuffle(rng);
        Permutation::from_row(row).unwrap()
    }

    fn hook_count(shape: &Partition) -> usize {
        let parts = shape.parts();
        let conj = shape.conjugate();
        let mut denom = 1usize;
        for (i, &len) in parts.iter().enumerate() {
            for j in 0..len {
                denom *= (len - j - 1) + (conj.parts()[j] - i - 1) + 1;
            }
        }
        (1..=shape.size()).product::<usize>() / denom
    }

    #[test]
    fn trivial_pairs() {
        let (p, q) = rs_pair(&Permutation::identity(5));
        assert_eq!((p.clone(), q), (StandardTableau::single_row(5), StandardTableau::single_row(5)));
        let (p, q) = rs_pair(&Permutation::longest_element(4));
        assert_eq!(p, StandardTableau::single_column(4));
        assert_eq!(q, StandardTableau::single_column(4));
        assert!(rs_inverse(&StandardTableau::single_row(4), &StandardTableau::single_row(4))
            .unwrap()
            .is_identity());
        assert_eq!(
            rs_inverse(&StandardTableau::single_column(4), &StandardTableau::single_column(4)).unwrap(),
            Permutation::longest_element(4)
        );
    }

    #[test]
    fn hand_computed_pair() {
        // 3 1 4 2: P = [1,2],[3,4]; Q = [1,3],[2,4]
        let (p, q) = rs_pair(&"[3,1,4,2]".parse().unwrap());
        assert_eq!(p.rows(), &[vec![1, 2], vec![3, 4]]);
        assert_eq!(q.rows(), &[vec![1, 3], vec![2, 4]]);
    }

    #[test]
    fn recording_is_insertion_of_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let w = random_perm(&mut rng, 7);
            assert_eq!(rs_pair(&w).1, rs_pair(&w.inverse()).0);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = 1 + rand::Rng::gen_range(&mut rng, 0..9);
            let w = random_perm(&mut rng, n);
            let (p, q) = rs_pair(&w);
            assert_eq!(rs_inverse(&p, &q).unwrap(), w);
        }
        let bad = rs_inverse(&StandardTableau::single_row(3), &StandardTableau::single_column(3));
        assert!(bad.is_err());
    }

    #[test]
    fn shape_of_parabolic_longest_is_conjugate() {
        for n in 1..=7 {
            for lambda in crate::shapes::Composition::all(n) {
                assert_eq!(shape_of(&Permutation::parabolic_longest(&lambda)), lambda.conjugate());
            }
        }
        assert_eq!(shape_of(&Permutation::identity(5)).parts(), &[5]);
    }

    #[test]
    fn corner_sets() {
        let (i, o) = corners(&Partition::new(vec![1]).unwrap());
        assert_eq!(i, BTreeSet::from([(1, 1)]));
        assert_eq!(o, BTreeSet::from([(1, 2), (2, 1)]));
        let (i, o) = corners(&Partition::new(vec![3, 1]).unwrap());
        assert_eq!(i, BTreeSet::from([(1, 3), (2, 1)]));
        assert_eq!(o, BTreeSet::from([(1, 4), (2, 2), (3, 1)]));
        for n in 1..=9 {
            for shape in Partition::all(n) {
                let (i, o) = corners(&shape);
                assert_eq!(o.len(), i.len() + 1);
            }
        }
    }

    #[test]
    fn reverse_insertion() {
        let (t, x) = reverse_insert(&StandardTableau::single_row(5), (1, 5)).unwrap();
        assert_eq!((t, x), (StandardTableau::single_row(4), 5));
        // inserting 1 into [2] bumps 2 down, so the column [1;2] expels 1
        let (t, x) = reverse_insert(&StandardTableau::single_column(2), (2, 1)).unwrap();
        assert_eq!((t.rows().to_vec(), x), (vec![vec![2]], 1));
        assert_eq!(
            reverse_insert(&StandardTableau::single_row(3), (1, 2)),
            Err(Error::NotInnerCorner(1, 2))
        );
    }

    #[test]
    fn reverse_insertion_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let w = random_perm(&mut rng, 8);
            let (p, _) = rs_pair(&w);
            let (inner, _) = corners(&p.shape());
            for &corner in &inner {
                let (smaller, x) = reverse_insert(&p, corner).unwrap();
                let (back, node) = insert(&smaller, x).unwrap();
                assert_eq!(back, p);
                assert_eq!(node, corner);
            }
        }
    }

    #[test]
    fn tableau_enumeration_matches_hook_formula() {
        for n in 1..=7 {
            let mut total = 0;
            for shape in Partition::all(n) {
                let ts = standard_tableaux(&shape);
                assert_eq!(ts.len(), hook_count(&shape));
                assert!(ts.iter().all(|t| StandardTableau::new(t.rows().to_vec()).is_ok()));
                total += ts.len() * ts.len();
            }
            assert_eq!(total, (1..=n).product::<usize>());
        }
    }

    #[test]
    fn validation_and_json() {
        assert!(StandardTableau::new(vec![vec![1, 3], vec![2]]).is_ok());
        assert!(StandardTableau::new(vec![vec![2, 1]]).is_err());
        assert!(StandardTableau::new(vec![vec![1], vec![2, 3]]).is_err());
        assert!(StandardTableau::new(vec![vec![2, 3], vec![1]]).is_err());
        let t = StandardTableau::new(vec![vec![1, 3, 4], vec![2], vec![5]]).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"rows":[[1,3,4],[2],[5]]}"#);
        assert_eq!(serde_json::from_str::<StandardTableau>(&json).unwrap(), t);
        assert_eq!(t.to_ascii(), "1 3 4\n2\n5\n");
    }
}
