//! Closed-form rims for partitions, reversed partitions, hook rearrangements
//! and `(2, 1^{r-2}, 2)`.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cells::{rim_y, special_diagrams, CellReport};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::perm::{sort_length_lex, Permutation};
use crate::shapes::{Composition, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Partition,
    ReversedPartition,
    HookRearrangement,
    TwoOnesTwo,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Partition => "partition",
            Family::ReversedPartition => "reversed_partition",
            Family::HookRearrangement => "hook_rearrangement",
            Family::TwoOnesTwo => "two_ones_two",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRim {
    pub lambda: Composition,
    pub family: Family,
    /// Length-then-lex order.
    pub rim: Vec<Permutation>,
    pub predicted_size: usize,
}

impl FamilyRim {
    fn new(lambda: Composition, family: Family, mut rim: Vec<Permutation>, predicted_size: usize) -> Self {
        sort_length_lex(&mut rim);
        rim.dedup();
        FamilyRim { lambda, family, rim, predicted_size }
    }

    /// Compare against the general enumeration.
    pub fn matches_rim_y(&self) -> bool {
        let mut general = rim_y(&self.lambda);
        sort_length_lex(&mut general);
        general == self.rim
    }

    pub fn to_json(&self) -> Result<Value> {
        let mut v = CellReport::new(&self.lambda)?.to_json();
        v["family"] = json!(self.family);
        v["predicted_size"] = json!(self.predicted_size);
        v["family_rim"] = json!(self.rim);
        Ok(v)
    }
}

fn outside(lambda: &Composition, family: &'static str) -> Error {
    Error::OutsideFamily { lambda: lambda.to_string(), family }
}

/// `Y(λ) = {w_D}` for `D` the Young diagram of `λ`.
pub fn rim_partition(lambda: &Partition) -> FamilyRim {
    let w = Diagram::young(lambda).w();
    FamilyRim::new(lambda.as_composition().clone(), Family::Partition, vec![w], 1)
}

/// `Y(λ) = {w_0 w_E w_0}` for `E` the Young diagram of the reversed
/// composition.
pub fn rim_reversed_partition(lambda: &Composition) -> Result<FamilyRim> {
    let reversed = lambda.reverse().to_partition().map_err(|_| outside(lambda, "reversed_partition"))?;
    let w = Diagram::young(&reversed).w().conjugate_by_longest();
    Ok(FamilyRim::new(lambda.clone(), Family::ReversedPartition, vec![w], 1))
}

/// `(m, 1^{r-1})` rearranged with `m > 1` strictly inside, `r ≥ 3`. Returns
/// `(m, position of m)`.
fn hook_shape(lambda: &Composition) -> Option<(usize, usize)> {
    let parts = lambda.parts();
    let r = parts.len();
    let big: Vec<usize> = (1..=r).filter(|&i| parts[i - 1] > 1).collect();
    match big.as_slice() {
        [k] if r >= 3 && 1 < *k && *k < r => Some((parts[k - 1], *k)),
        _ => None,
    }
}

/// `Y(λ) = {w_D : D special with rows λ}`, of size `m`.
pub fn rim_hook(lambda: &Composition) -> Result<FamilyRim> {
    let (m, _) = hook_shape(lambda).ok_or_else(|| outside(lambda, "hook_rearrangement"))?;
    let rim = special_diagrams(lambda).iter().map(Diagram::w).collect();
    Ok(FamilyRim::new(lambda.clone(), Family::HookRearrangement, rim, m))
}

/// `D(a) = {(i,1) : i < a} ∪ {(i,2) : a ≤ i ≤ r} ∪ {(r,1), (1,2)}`.
pub fn two_ones_two_diagram(r: usize, a: usize) -> Result<Diagram> {
    if r < 3 || a < 2 || a > r {
        return Err(Error::OutOfRange { index: a, max: r });
    }
    let nodes = (1..a).map(|i| (i, 1)).chain((a..=r).map(|i| (i, 2))).chain([(r, 1), (1, 2)]);
    Diagram::new(nodes)
}

/// `Y((2, 1^{r-2}, 2)) = {w_{D(a)} : 2 ≤ a ≤ r}`.
pub fn rim_two_ones_two(r: usize) -> Result<FamilyRim> {
    if r < 3 {
        return Err(Error::OutOfRange { index: r, max: usize::MAX });
    }
    let mut parts = vec![1; r];
    parts[0] = 2;
    parts[r - 1] = 2;
    let lambda = Composition::new(parts)?;
    let rim = (2..=r).map(|a| two_ones_two_diagram(r, a).map(|d| d.w())).collect::<Result<_>>()?;
    Ok(FamilyRim::new(lambda, Family::TwoOnesTwo, rim, r - 1))
}

fn two_ones_two_length(lambda: &Composition) -> Option<usize> {
    let p = lambda.parts();
    let r = p.len();
    (r >= 3 && p[0] == 2 && p[r - 1] == 2 && p[1..r - 1].iter().all(|&x| x == 1)).then_some(r)
}

/// The first family, in declaration order, whose precondition `λ` meets.
pub fn classify(lambda: &Composition) -> Option<Family> {
    if lambda.is_partition() {
        Some(Family::Partition)
    } else if lambda.reverse().is_partition() {
        Some(Family::ReversedPartition)
    } else if hook_shape(lambda).is_some() {
        Some(Family::HookRearrangement)
    } else if two_ones_two_length(lambda).is_some() {
        Some(Family::TwoOnesTwo)
    } else {
        None
    }
}

/// The closed-form rim for whichever family `λ` belongs to.
pub fn family_rim(lambda: &Composition) -> Result<FamilyRim> {
    match classify(lambda) {
        Some(Family::Partition) => Ok(rim_partition(&lambda.to_partition()?)),
        Some(Family::ReversedPartition) => rim_reversed_partition(lambda),
        Some(Family::HookRearrangement) => rim_hook(lambda),
        Some(Family::TwoOnesTwo) => rim_two_ones_two(two_ones_two_length(lambda).expect("classified")),
        None => Err(outside(lambda, "any closed-form")),
    }
}
