//! Exhaustive verification of every invariant over all compositions of size
//! at most `n`.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cells::{
    brute_force_cell, brute_force_limit, cell_elements, enumerate_z, in_z, in_z_by_recording,
    non_rim_by_diagrams, restrict_cell, rim_of, rim_y, verify_induction,
    verify_restriction, CellId,
};
use crate::diagram::Diagram;
use crate::families::{classify, family_rim};
use crate::lifting::{bump_extend, restriction_bridge, theta_k_condition, Condition, LiftReport};
use crate::perm::{sort_length_lex, Permutation};
use crate::rs::{oracle_limit, row_count_witness, subsequence_type, subsequence_type_oracle};
use crate::shapes::Composition;

type Check = std::result::Result<(), String>;

/// Outcome of one named invariant across all compositions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub skipped: usize,
    pub failures: usize,
    /// The first failing composition in size-then-lex order, with a witness.
    pub first_failure: Option<(Composition, String)>,
}

/// Whether `Y(λ)θ = Y(λ^(k))` held in a case where only containment is
/// guaranteed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub lambda: Composition,
    pub k: usize,
    pub condition: Condition,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub compositions: usize,
    pub checks: Vec<CheckOutcome>,
    pub observations: Vec<Observation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!(
                "all checks passed ({} checks over {} compositions of size ≤ {})",
                self.checks.len(),
                self.compositions,
                self.max_n
            )
        } else {
            let failed = self.checks.iter().filter(|c| c.failures > 0).count();
            format!("{failed} of {} checks failed", self.checks.len())
        }
    }

    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.failures == 0 { "ok  " } else { "FAIL" };
            out.push_str(&format!("{status} {:<28} cases={} skipped={}", c.name, c.cases, c.skipped));
            if let Some((lambda, witness)) = &c.first_failure {
                out.push_str(&format!("  first failure at {lambda}: {witness}"));
            }
            out.push('\n');
        }
        let (eq, total) = (self.observations.iter().filter(|o| o.equal).count(), self.observations.len());
        out.push_str(&format!("conditions B/C: rim image equals target rim in {eq} of {total} cases\n"));
        out.push_str(&self.summary());
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_n": self.max_n,
            "compositions": self.compositions,
            "passed": self.passed(),
            "checks": self.checks,
            "observations": self.observations,
            "summary": self.summary(),
        })
    }
}

/// Per-composition data shared by the checks.
struct Ctx {
    lambda: Composition,
    z: Vec<Permutation>,
    y: Vec<Permutation>,
    distinguished: Vec<Permutation>,
}

impl Ctx {
    fn new(lambda: Composition) -> Ctx {
        let n = lambda.size();
        let z = enumerate_z(&lambda);
        let y = rim_of(&z);
        let distinguished = distinguished(&lambda);
        debug_assert!(n == 0 || !distinguished.is_empty());
        Ctx { lambda, z, y, distinguished }
    }
}

/// All distinguished representatives: increasing on each block of positions.
fn distinguished(lambda: &Composition) -> Vec<Permutation> {
    let n = lambda.size();
    let mut out = Vec::new();
    fn go(parts: &[usize], avail: &[usize], row: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        let Some((&len, rest)) = parts.split_first() else {
            out.push(Permutation::from_row(row.clone()).expect("bijection"));
            return;
        };
        for chosen in avail.iter().copied().combinations(len) {
            let left: Vec<usize> = avail.iter().copied().filter(|v| !chosen.contains(v)).collect();
            row.extend(&chosen);
            go(rest, &left, row, out);
            row.truncate(row.len() - len);
        }
    }
    go(lambda.parts(), &(1..=n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// Unwrap a library result inside a check, turning errors into failures.
macro_rules! attempt {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return Some(fail(err)),
        }
    };
}

fn fail<T: std::fmt::Display>(what: T) -> Check {
    Err(what.to_string())
}

fn ensure(cond: bool, witness: impl FnOnce() -> String) -> Check {
    if cond { Ok(()) } else { Err(witness()) }
}

/// `None` means the check does not apply at this size.
type CheckFn = fn(&Ctx) -> Option<Check>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("cell_equals_brute_force", check_brute_force),
    ("membership_tests_agree", check_membership),
    ("canonical_round_trip", check_canonical),
    ("greene_consistency", check_greene),
    ("dominance_bounds", check_dominance),
    ("row_count_witnesses", check_row_counts),
    ("z_prefix_closed", check_prefix_closed),
    ("prefix_criterion", check_prefix_criterion),
    ("special_diagrams_in_z", check_special_rim),
    ("reverse_symmetry", check_reverse),
    ("theta_lower_star", check_lower_star),
    ("theta_upper_star", check_upper_star),
    ("theta_k", check_theta_k),
    ("theta_k_diagram_bijection", check_diagram_bijection),
    ("dual_rim_sizes", check_dual_sizes),
    ("induction", check_induction),
    ("restriction", check_restriction),
    ("restriction_bridge", check_bridge),
    ("families", check_families),
];

/// Names of all checks, in execution order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(name, _)| *name).collect()
}

fn check_brute_force(ctx: &Ctx) -> Option<Check> {
    if ctx.lambda.size() > brute_force_limit() {
        return None;
    }
    Some(match brute_force_cell(&ctx.lambda) {
        Ok(brute) => {
            let cell = cell_elements(&ctx.lambda);
            ensure(cell == brute, || {
                let a: HashSet<_> = cell.iter().collect();
                let b: HashSet<_> = brute.iter().collect();
                let w = a.symmetric_difference(&b).next().map(|w| w.to_string()).unwrap_or_default();
                format!("cells differ at {w}")
            })
        }
        Err(e) => fail(e),
    })
}

fn check_membership(ctx: &Ctx) -> Option<Check> {
    let z: HashSet<&Permutation> = ctx.z.iter().collect();
    for e in &ctx.distinguished {
        let (a, b) = match (in_z(&ctx.lambda, e), in_z_by_recording(&ctx.lambda, e)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(err), _) | (_, Err(err)) => return Some(fail(err)),
        };
        if a != b || a != z.contains(e) {
            return Some(fail(format!("{e}: admissible={a} recording={b}")));
        }
    }
    Some(Ok(()))
}

fn check_canonical(ctx: &Ctx) -> Option<Check> {
    for e in &ctx.distinguished {
        match Diagram::canonical(e, &ctx.lambda) {
            Ok(d) if d.w() == *e && d.row_composition() == ctx.lambda => {}
            Ok(d) => return Some(fail(format!("{e}: D = {d:?}"))),
            Err(err) => return Some(fail(format!("{e}: {err}"))),
        }
    }
    Some(Ok(()))
}

fn check_greene(ctx: &Ctx) -> Option<Check> {
    if ctx.lambda.size() > oracle_limit() {
        return None;
    }
    for e in &ctx.distinguished {
        let d = attempt!(Diagram::canonical(e, &ctx.lambda));
        match subsequence_type_oracle(&d) {
            Ok(nu) if nu == subsequence_type(&d) => {}
            Ok(nu) => return Some(fail(format!("{d:?}: oracle {nu}, RS {}", subsequence_type(&d)))),
            Err(err) => return Some(fail(err)),
        }
    }
    Some(Ok(()))
}

fn check_dominance(ctx: &Ctx) -> Option<Check> {
    for e in &ctx.distinguished {
        let d = attempt!(Diagram::canonical(e, &ctx.lambda));
        let nu = subsequence_type(&d).into_partition();
        let low = d.column_composition().sorted();
        let high = ctx.lambda.conjugate();
        if !(low.dominated_by(&nu).unwrap_or(false) && nu.dominated_by(&high).unwrap_or(false)) {
            return Some(fail(format!("{d:?}: {low} ⊴ {nu} ⊴ {high} fails")));
        }
    }
    Some(Ok(()))
}

fn check_row_counts(ctx: &Ctx) -> Option<Check> {
    if ctx.lambda.size() > oracle_limit() {
        return None;
    }
    for y in &ctx.y {
        let d = attempt!(Diagram::canonical(y, &ctx.lambda));
        for u in 1..=ctx.lambda.max_part() {
            match row_count_witness(&d, u) {
                Ok(Some(_)) => {}
                Ok(None) => return Some(fail(format!("{d:?}: no {u}-path with the row counts"))),
                Err(err) => return Some(fail(err)),
            }
        }
    }
    Some(Ok(()))
}

fn check_prefix_closed(ctx: &Ctx) -> Option<Check> {
    let z: HashSet<&Permutation> = ctx.z.iter().collect();
    for e in &ctx.z {
        for j in (1..e.degree()).filter(|&j| e.is_right_descent(j)) {
            let u = e.right_mul_simple(j);
            if !z.contains(&u) {
                return Some(fail(format!("{e} has prefix {u} outside Z")));
            }
        }
    }
    Some(Ok(()))
}

fn check_prefix_criterion(ctx: &Ctx) -> Option<Check> {
    let y: HashSet<&Permutation> = ctx.y.iter().collect();
    let expected: Vec<Permutation> = ctx.z.iter().filter(|e| !y.contains(e)).cloned().collect();
    let found = non_rim_by_diagrams(&ctx.lambda);
    Some(ensure(found == expected, || {
        let a: HashSet<_> = found.iter().collect();
        let b: HashSet<_> = expected.iter().collect();
        let w = a.symmetric_difference(&b).next().map(|w| w.to_string()).unwrap_or_default();
        format!("Z∖Y and the diagram criterion differ at {w}")
    }))
}

fn check_special_rim(ctx: &Ctx) -> Option<Check> {
    for d in crate::cells::special_diagrams(&ctx.lambda) {
        if !attempt!(in_z(&ctx.lambda, &d.w())) {
            return Some(fail(format!("special {d:?} gives w_D outside Z")));
        }
    }
    Some(Ok(()))
}

fn check_reverse(ctx: &Ctx) -> Option<Check> {
    let rev = ctx.lambda.reverse();
    let mut flipped: Vec<Permutation> = ctx.z.iter().map(Permutation::conjugate_by_longest).collect();
    sort_length_lex(&mut flipped);
    if flipped != enumerate_z(&rev) {
        return Some(fail("Z(reverse λ) ≠ w0 Z(λ) w0"));
    }
    let mut flipped_y: Vec<Permutation> = ctx.y.iter().map(Permutation::conjugate_by_longest).collect();
    sort_length_lex(&mut flipped_y);
    let mut rev_y = rim_y(&rev);
    sort_length_lex(&mut rev_y);
    Some(ensure(flipped_y == rev_y, || "Y(reverse λ) ≠ w0 Y(λ) w0".into()))
}

fn report_check(report: crate::error::Result<LiftReport>) -> Check {
    let report = report.map_err(|e| e.to_string())?;
    match report.required_checks().into_iter().find(|&(_, ok)| !ok) {
        None => Ok(()),
        Some((name, _)) => fail(format!("{name} ({:?})", report.map)),
    }
}

fn check_lower_star(ctx: &Ctx) -> Option<Check> {
    Some(report_check(LiftReport::lower_star(&ctx.lambda)))
}

fn check_upper_star(ctx: &Ctx) -> Option<Check> {
    Some(report_check(LiftReport::upper_star(&ctx.lambda)))
}

fn check_theta_k(ctx: &Ctx) -> Option<Check> {
    for k in ctx.lambda.max_positions() {
        if let Err(e) = report_check(LiftReport::bump(&ctx.lambda, k)) {
            return Some(fail(format!("k = {k}: {e}")));
        }
    }
    Some(Ok(()))
}

fn check_diagram_bijection(ctx: &Ctx) -> Option<Check> {
    if !ctx.lambda.max_positions().contains(&1) {
        return None;
    }
    let target = attempt!(ctx.lambda.bump(1));
    let mut bumped = Vec::new();
    for y in &ctx.y {
        let d = attempt!(Diagram::canonical(y, &ctx.lambda));
        bumped.push(attempt!(bump_extend(&d, 1)));
    }
    let lifted: BTreeSet<Diagram> = bumped.iter().cloned().collect();
    let e_bar: BTreeSet<Diagram> = rim_y(&target)
        .iter()
        .filter_map(|y| Diagram::canonical(y, &target).ok())
        .collect();
    Some(ensure(lifted.len() == bumped.len() && lifted == e_bar, || {
        format!("{{D^(1)}} has {} diagrams, E(λ^(1)) has {}", lifted.len(), e_bar.len())
    }))
}

fn check_dual_sizes(ctx: &Ctx) -> Option<Check> {
    let r = ctx.lambda.len();
    if !ctx.lambda.max_positions().contains(&r) {
        return None;
    }
    let target = attempt!(ctx.lambda.bump(r));
    let (a, b) = (ctx.y.len(), rim_y(&target).len());
    Some(ensure(a == b, || format!("|Y(λ)| = {a}, |Y(λ^(r))| = {b}")))
}

fn check_induction(ctx: &Ctx) -> Option<Check> {
    let id = CellId::of_composition(&ctx.lambda);
    if !verify_induction(&id) {
        return Some(fail("union of induced cells ≠ 𝔠𝔛′"));
    }
    let kids = crate::cells::induce_cell(&id);
    for pair in kids.windows(2) {
        let (a, b) = (pair[0].cell.tableau().shape(), pair[1].cell.tableau().shape());
        if !b.strictly_dominated_by(&a).unwrap_or(false) {
            return Some(fail(format!("shapes {a} then {b} break the dominance order")));
        }
    }
    Some(Ok(()))
}

fn check_restriction(ctx: &Ctx) -> Option<Check> {
    if ctx.lambda.size() < 2 {
        return None;
    }
    let id = CellId::of_composition(&ctx.lambda);
    match verify_restriction(&id) {
        Ok(true) => {}
        Ok(false) => return Some(fail("cell ≠ disjoint union of d_k 𝔠_k")),
        Err(e) => return Some(fail(e)),
    }
    let pieces = attempt!(restrict_cell(&id));
    for pair in pieces.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let (sa, sb) = (a.cell.tableau().shape(), b.cell.tableau().shape());
        if !sa.strictly_dominated_by(&sb).unwrap_or(false) {
            return Some(fail(format!("shapes {sa} then {sb} break the dominance order")));
        }
        if !(b.expelled <= a.expelled && a.d.is_suffix_of(&b.d).unwrap_or(false)) {
            return Some(fail(format!("d_k chain broken between {} and {}", a.d, b.d)));
        }
    }
    Some(Ok(()))
}

fn check_bridge(ctx: &Ctx) -> Option<Check> {
    for k in ctx.lambda.max_positions() {
        match restriction_bridge(&ctx.lambda, k) {
            Ok(b) if b.identity_holds && b.inclusion_holds => {}
            Ok(b) => {
                return Some(fail(format!(
                    "k = {k}: identity {} inclusion {}",
                    b.identity_holds, b.inclusion_holds
                )))
            }
            Err(e) => return Some(fail(e)),
        }
    }
    Some(Ok(()))
}

fn check_families(ctx: &Ctx) -> Option<Check> {
    classify(&ctx.lambda)?;
    Some(match family_rim(&ctx.lambda) {
        Ok(f) => ensure(f.matches_rim_y() && f.rim.len() == f.predicted_size, || {
            format!("{} rim {:?} vs general {:?}", f.family, f.rim, ctx.y)
        }),
        Err(e) => fail(e),
    })
}

fn observations(ctx: &Ctx) -> Vec<Observation> {
    let mut out = Vec::new();
    for k in ctx.lambda.max_positions() {
        let Ok(condition) = theta_k_condition(&ctx.lambda, k) else { continue };
        if !matches!(condition, Condition::B | Condition::C) {
            continue;
        }
        if let Ok(report) = LiftReport::bump(&ctx.lambda, k) {
            let equal = report.check("Y_image_equals_target_Y").unwrap_or(false);
            out.push(Observation { lambda: ctx.lambda.clone(), k, condition, equal });
        }
    }
    out
}

/// Run every check on every composition of size `1..=max_n`.
pub fn verify(max_n: usize, parallel: bool) -> VerifyReport {
    let lambdas: Vec<Composition> = (1..=max_n).flat_map(Composition::all).collect();
    let run = |lambda: &Composition| {
        let ctx = Ctx::new(lambda.clone());
        let results: Vec<Option<Check>> = CHECKS.iter().map(|(_, f)| f(&ctx)).collect();
        (results, observations(&ctx))
    };
    let per_lambda: Vec<(Vec<Option<Check>>, Vec<Observation>)> = if parallel {
        lambdas.par_iter().map(run).collect()
    } else {
        lambdas.iter().map(run).collect()
    };

    let mut checks: Vec<CheckOutcome> = CHECKS
        .iter()
        .map(|(name, _)| CheckOutcome { name, cases: 0, skipped: 0, failures: 0, first_failure: None })
        .collect();
    let mut all_obs = Vec::new();
    for (lambda, (results, obs)) in lambdas.iter().zip(per_lambda) {
        for (outcome, result) in checks.iter_mut().zip(results) {
            match result {
                None => outcome.skipped += 1,
                Some(Ok(())) => outcome.cases += 1,
                Some(Err(witness)) => {
                    outcome.cases += 1;
                    outcome.failures += 1;
                    outcome.first_failure.get_or_insert((lambda.clone(), witness));
                }
            }
        }
        all_obs.extend(obs);
    }
    VerifyReport { max_n, compositions: lambdas.len(), checks, observations: all_obs }
}
