//! The set `Z(λ)`, its rim, and the right cell containing `w_J(λ)`.
//!
//! `Z(λ)` holds the distinguished `e` with `w_J(λ) e` in the right cell of
//! `w_J(λ)`; the cell itself is `w_J(λ) Z(λ)`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::perm::{sort_length_lex, GeneratorWord, Permutation};
use crate::rs::{corners, is_admissible, reverse_insert, rs_inverse, rs_pair, standard_tableaux, StandardTableau};
use crate::shapes::Composition;

/// `e ∈ Z(λ)`: `e` is distinguished and `D(e, λ)` is admissible.
pub fn in_z(lambda: &Composition, e: &Permutation) -> Result<bool> {
    if !e.is_distinguished(lambda)? {
        return Ok(false);
    }
    Ok(is_admissible(&Diagram::canonical(e, lambda)?))
}

/// `e ∈ Z(λ)` by comparing recording tableaux: `Q(w_J e) = Q(w_J)`.
pub fn in_z_by_recording(lambda: &Composition, e: &Permutation) -> Result<bool> {
    if !e.is_distinguished(lambda)? {
        return Ok(false);
    }
    let wj = Permutation::parabolic_longest(lambda);
    Ok(rs_pair(&(&wj * e)).1 == rs_pair(&wj).1)
}

/// Length-increasing right extensions `e s_j` (value `j` before `j+1`).
fn extensions(e: &Permutation) -> impl Iterator<Item = Permutation> + '_ {
    (1..e.degree()).filter(|&j| !e.is_right_descent(j)).map(|j| e.right_mul_simple(j))
}

/// All of `Z(λ)` by breadth-first search from the identity, in
/// length-then-lex order.
pub fn enumerate_z(lambda: &Composition) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut frontier = vec![Permutation::identity(lambda.size())];
    seen.insert(frontier[0].clone());
    let mut out = frontier.clone();
    while !frontier.is_empty() {
        let mut next: Vec<Permutation> = frontier
            .par_iter()
            .flat_map_iter(|e| extensions(e).collect::<Vec<_>>())
            .filter(|c| in_z(lambda, c).expect("size checked"))
            .collect();
        next.sort_unstable_by(|a, b| a.row().cmp(b.row()));
        next.dedup();
        next.retain(|c| seen.insert(c.clone()));
        out.extend(next.iter().cloned());
        frontier = next;
    }
    sort_length_lex(&mut out);
    out
}

/// Members of `Z` that are not a prefix of another member. Relies on `Z`
/// being prefix-closed, so only one-letter extensions need checking.
pub fn rim_of(z: &[Permutation]) -> Vec<Permutation> {
    let set: HashSet<&Permutation> = z.iter().collect();
    z.iter().filter(|e| !extensions(e).any(|c| set.contains(&c))).cloned().collect()
}

/// `Y(λ)`.
pub fn rim_y(lambda: &Composition) -> Vec<Permutation> {
    rim_of(&enumerate_z(lambda))
}

/// `ℰ^(λ) = {D(y, λ) : y ∈ Y(λ)}`, aligned with [`rim_y`].
pub fn rim_diagrams(lambda: &Composition) -> Result<Vec<Diagram>> {
    rim_y(lambda).iter().map(|y| Diagram::canonical(y, lambda)).collect()
}

/// Every special diagram with row composition `λ`, one per rearrangement of
/// `λ′` as the column composition.
pub fn special_diagrams(lambda: &Composition) -> Vec<Diagram> {
    lambda
        .conjugate()
        .as_composition()
        .rearrangements()
        .iter()
        .map(|mu| Diagram::special(lambda, mu).expect("mu rearranges the conjugate"))
        .collect()
}

/// `Y_s(λ)`: rim members equal to `w_D` for a special `D`.
pub fn special_rim(lambda: &Composition) -> Vec<Permutation> {
    special_rim_of(lambda, &rim_y(lambda))
}

pub fn special_rim_of(lambda: &Composition, rim: &[Permutation]) -> Vec<Permutation> {
    let special: HashSet<Permutation> = special_diagrams(lambda).iter().map(Diagram::w).collect();
    rim.iter().filter(|y| special.contains(y)).cloned().collect()
}

/// `w_J(λ) Z(λ)`, in length-then-lex order.
pub fn cell_elements(lambda: &Composition) -> Vec<Permutation> {
    let wj = Permutation::parabolic_longest(lambda);
    let mut out: Vec<Permutation> = enumerate_z(lambda).iter().map(|e| &wj * e).collect();
    sort_length_lex(&mut out);
    out
}

/// Largest degree scanned by [`brute_force_cell`]. `KLCELLS_BRUTE_LIMIT`,
/// then `KLCELLS_ORACLE_LIMIT`, override the default of 8.
pub fn brute_force_limit() -> usize {
    ["KLCELLS_BRUTE_LIMIT", "KLCELLS_ORACLE_LIMIT"]
        .iter()
        .find_map(|var| std::env::var(var).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(8)
}

/// The right cell of `w_J(λ)` by scanning all of `S_n`.
pub fn brute_force_cell(lambda: &Composition) -> Result<Vec<Permutation>> {
    let n = lambda.size();
    let limit = brute_force_limit();
    if n > limit {
        return Err(Error::OracleBound { size: n, limit });
    }
    let q = rs_pair(&Permutation::parabolic_longest(lambda)).1;
    Ok(brute_force_q(n, &q))
}

fn brute_force_q(n: usize, q: &StandardTableau) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = (1..=n)
        .permutations(n)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|row| Permutation::from_row(row).expect("permutation"))
        .filter(|w| &rs_pair(w).1 == q)
        .collect();
    sort_length_lex(&mut out);
    out
}

/// A right cell, named by the common recording tableau of its members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellId(StandardTableau);

impl CellId {
    pub fn new(q: StandardTableau) -> Result<CellId> {
        if !q.has_standard_content() {
            return Err(Error::InvalidTableau("content must be 1..n".into()));
        }
        Ok(CellId(q))
    }

    /// The cell containing `w`.
    pub fn of(w: &Permutation) -> CellId {
        CellId(rs_pair(w).1)
    }

    /// The cell containing `w_J(λ)`.
    pub fn of_composition(lambda: &Composition) -> CellId {
        CellId::of(&Permutation::parabolic_longest(lambda))
    }

    pub fn tableau(&self) -> &StandardTableau {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.size()
    }

    /// `{w : Q(w) = Q}`, via inverse RS over all `P` of the same shape.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = standard_tableaux(&self.0.shape())
            .iter()
            .map(|p| rs_inverse(p, &self.0).expect("same shape, standard content"))
            .collect();
        sort_length_lex(&mut out);
        out
    }
}

/// `{w : Q(w) = Q}`.
pub fn cell_of(q: &StandardTableau) -> Result<Vec<Permutation>> {
    Ok(CellId::new(q.clone())?.elements())
}

/// A child of a cell under induction to `S_{n+1}`: `n+1` added at `corner`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Induced {
    pub corner: (usize, usize),
    pub cell: CellId,
}

/// The cells meeting `𝔠 𝔛′`, one per outer corner, in node order.
pub fn induce_cell(id: &CellId) -> Vec<Induced> {
    let (_, outer) = corners(&id.0.shape());
    let n = id.degree();
    outer
        .into_iter()
        .map(|(r, c)| {
            let mut rows = id.0.rows().to_vec();
            if r > rows.len() {
                rows.push(Vec::new());
            }
            rows[r - 1].push(n + 1);
            debug_assert_eq!(rows[r - 1].len(), c);
            let q = StandardTableau::new(rows).expect("outer corner keeps the tableau standard");
            Induced { corner: (r, c), cell: CellId(q) }
        })
        .collect()
}

/// `𝔠 𝔛′ = {w x_i}` for `x_i = (i, …, n+1)`.
pub fn induced_set(id: &CellId) -> Vec<Permutation> {
    let n = id.degree();
    let mut out: Vec<Permutation> = id
        .elements()
        .iter()
        .flat_map(|w| {
            let w = w.embed();
            (1..=n + 1).map(move |i| &w * &Permutation::rising_cycle(n + 1, i).expect("in range"))
        })
        .collect();
    sort_length_lex(&mut out);
    out
}

/// Check that the induced cells partition `𝔠 𝔛′`.
pub fn verify_induction(id: &CellId) -> bool {
    let lhs: BTreeSet<Vec<usize>> = induced_set(id).into_iter().map(Vec::from).collect();
    let mut total = 0;
    let mut rhs = BTreeSet::new();
    for child in induce_cell(id) {
        for w in child.cell.elements() {
            total += 1;
            rhs.insert(Vec::from(w));
        }
    }
    total == rhs.len() && lhs == rhs
}

/// One piece `d_k 𝔠_k` of a cell restricted to `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Restricted {
    pub corner: (usize, usize),
    /// `i(k)`, the entry expelled from the first row.
    pub expelled: usize,
    /// `d_k = s_{i(k)} ⋯ s_n`.
    pub d: Permutation,
    pub cell: CellId,
}

/// Decompose the cell of `id` (on `1..n+1`) as `⋃_k d_k 𝔠_k`, one piece per
/// inner corner, in node order.
pub fn restrict_cell(id: &CellId) -> Result<Vec<Restricted>> {
    let m = id.degree();
    if m < 2 {
        return Err(Error::OutOfRange { index: m, max: 2 });
    }
    let (inner, _) = corners(&id.0.shape());
    inner
        .into_iter()
        .map(|corner| {
            let (smaller, i) = reverse_insert(&id.0, corner)?;
            let d = Permutation::rising_cycle(m, i)?.inverse();
            let rows = smaller.rows().iter().map(|r| r.iter().map(|&e| d.image(e)).collect()).collect();
            Ok(Restricted { corner, expelled: i, d, cell: CellId(StandardTableau::new(rows)?) })
        })
        .collect()
}

/// Check that the pieces `d_k 𝔠_k` partition the cell.
pub fn verify_restriction(id: &CellId) -> Result<bool> {
    let lhs: BTreeSet<Vec<usize>> = id.elements().into_iter().map(Vec::from).collect();
    let mut rhs = BTreeSet::new();
    let mut total = 0;
    for piece in restrict_cell(id)? {
        for v in piece.cell.elements() {
            total += 1;
            rhs.insert(Vec::from(&piece.d * &v.embed()));
        }
    }
    Ok(total == rhs.len() && lhs == rhs)
}

/// The members of `Z(λ) ∖ Y(λ)` as the strict prefixes `e ≠ w_E` with
/// `t^E e` standard, over admissible `E` with rows `λ` and at most `n`
/// columns. Independent of the search in [`enumerate_z`].
pub fn non_rim_by_diagrams(lambda: &Composition) -> Vec<Permutation> {
    let n = lambda.size();
    let mut seen_w: HashSet<Permutation> = HashSet::new();
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for d in diagrams_with_rows(lambda, n) {
        if !is_admissible(&d) {
            continue;
        }
        let w = d.w();
        if !seen_w.insert(w.clone()) {
            continue;
        }
        for filling in d.standard_fillings() {
            if filling != w.row() {
                out.insert(filling);
            }
        }
    }
    let mut out: Vec<Permutation> =
        out.into_iter().map(|r| Permutation::from_row(r).expect("bijective filling")).collect();
    sort_length_lex(&mut out);
    out
}

/// Every principal diagram with row composition `λ` and at most `max_cols`
/// columns.
pub fn diagrams_with_rows(lambda: &Composition, max_cols: usize) -> Vec<Diagram> {
    lambda
        .parts()
        .iter()
        .map(|&len| (1..=max_cols).combinations(len).collect::<Vec<_>>())
        .multi_cartesian_product()
        .filter_map(|rows| {
            let nodes = rows.iter().enumerate().flat_map(|(i, cols)| cols.iter().map(move |&c| (i + 1, c)));
            Diagram::new(nodes).ok()
        })
        .collect()
}

/// Everything known about the cell of `w_J(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellReport {
    pub lambda: Composition,
    pub z: Vec<Permutation>,
    pub y: Vec<Permutation>,
    pub y_s: Vec<Permutation>,
    pub e: Vec<Diagram>,
    pub cell_elements: Vec<Permutation>,
    /// Reduced word of each `e ∈ Z(λ)`.
    pub reduced_words: BTreeMap<Permutation, GeneratorWord>,
    /// Reduced word of `w_J(λ)`; prepending it gives words for the cell.
    pub wj_word: GeneratorWord,
}

impl CellReport {
    pub fn new(lambda: &Composition) -> Result<CellReport> {
        let z = enumerate_z(lambda);
        let y = rim_of(&z);
        let y_s = special_rim_of(lambda, &y);
        let e = y.iter().map(|w| Diagram::canonical(w, lambda)).collect::<Result<Vec<_>>>()?;
        let wj = Permutation::parabolic_longest(lambda);
        let cell_elements = z.iter().map(|x| &wj * x).collect();
        let reduced_words = z.iter().map(|x| (x.clone(), x.reduced_word())).collect();
        Ok(CellReport {
            lambda: lambda.clone(),
            z,
            y,
            y_s,
            e,
            cell_elements,
            reduced_words,
            wj_word: wj.reduced_word(),
        })
    }

    /// Reduced word of `w_J(λ) e`.
    pub fn cell_word(&self, e: &Permutation) -> Option<GeneratorWord> {
        self.reduced_words.get(e).map(|w| self.wj_word.concat(w))
    }

    pub fn to_json(&self) -> Value {
        let words: serde_json::Map<String, Value> =
            self.z.iter().map(|e| (e.to_string(), json!(self.reduced_words[e]))).collect();
        json!({
            "lambda": self.lambda,
            "Z": self.z,
            "Y": self.y,
            "Ys": self.y_s,
            "E": self.e,
            "cell": self.cell_elements,
            "wj_word": self.wj_word,
            "reduced_words": words,
        })
    }
}
