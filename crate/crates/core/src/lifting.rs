//! Maps lifting `Z(λ)` to `Z(λ_*)`, `Z(λ^*)` and `Z(λ^(k))`.
//!
//! Throughout, `n = |λ|` and `x_i = s_n ⋯ s_i` is the cycle `(i, …, n+1)`,
//! so `𝔛′ = {x_1, …, x_{n+1}}` is the set of distinguished representatives
//! of `S_n` in `S_{n+1}`.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cells::{cell_elements, enumerate_z, in_z, rim_of, rim_y};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::perm::{GeneratorWord, Permutation};
use crate::rs::is_admissible;
use crate::shapes::Composition;

/// How a node is added in row `r_D + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StarKind {
    /// `D′_0`: shift everything right and put the new node in column 1.
    Zero,
    /// `D′_j`: new node in column `j`.
    Column(usize),
    /// `D′(u_i)`: new node under the column of `u_i`, splitting it if needed.
    Node(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarExtension {
    pub base: Diagram,
    pub kind: StarKind,
    pub result: Diagram,
}

impl StarExtension {
    pub fn new(base: &Diagram, kind: StarKind) -> Result<StarExtension> {
        let result = match kind {
            StarKind::Zero => star_extend_zero(base),
            StarKind::Column(j) => star_extend_column(base, j)?,
            StarKind::Node(i) => star_extend_node(base, i)?,
        };
        Ok(StarExtension { base: base.clone(), kind, result })
    }

    /// `x` with `w_{result} = w_{base} x`.
    pub fn connector(&self) -> Permutation {
        let n = self.base.len();
        match self.kind {
            StarKind::Zero => x(n, 1),
            StarKind::Node(i) => x(n, i + 1),
            StarKind::Column(_) => &self.base.w().embed().inverse() * &self.result.w(),
        }
    }
}

/// `x_i ∈ S_{n+1}`.
fn x(n: usize, i: usize) -> Permutation {
    Permutation::rising_cycle(n + 1, i).expect("1 ≤ i ≤ n+1")
}

/// `D′_0 = {(i, j+1) : (i,j) ∈ D} ∪ {(r_D+1, 1)}`.
pub fn star_extend_zero(d: &Diagram) -> Diagram {
    let r = d.num_rows();
    let nodes = d.nodes().iter().map(|&(i, j)| (i, j + 1)).chain([(r + 1, 1)]);
    Diagram::new(nodes).expect("principal")
}

/// `D′_j = D ∪ {(r_D+1, j)}` for `1 ≤ j ≤ c_D`.
pub fn star_extend_column(d: &Diagram, j: usize) -> Result<Diagram> {
    if j == 0 || j > d.num_cols() {
        return Err(Error::OutOfRange { index: j, max: d.num_cols() });
    }
    Diagram::new(d.nodes().iter().copied().chain([(d.num_rows() + 1, j)]))
}

/// `D′(u_i)`, where `u_i` holds entry `i` of `t_D`.
pub fn star_extend_node(d: &Diagram, i: usize) -> Result<Diagram> {
    let n = d.len();
    if i == 0 || i > n {
        return Err(Error::OutOfRange { index: i, max: n });
    }
    let order = d.column_order();
    let (_, b) = d.nodes()[order[i - 1]];
    let r = d.num_rows();
    let last_in_column = i == n || d.nodes()[order[i]].1 > b;
    let nodes: Vec<(usize, usize)> = if last_in_column {
        d.nodes().iter().copied().chain([(r + 1, b)]).collect()
    } else {
        order
            .iter()
            .enumerate()
            .map(|(pos, &idx)| {
                let (row, col) = d.nodes()[idx];
                if pos < i { (row, col) } else { (row, col + 1) }
            })
            .chain([(r + 1, b)])
            .collect()
    };
    Diagram::new(nodes)
}

fn require_admissible(d: &Diagram) -> Result<()> {
    if is_admissible(d) { Ok(()) } else { Err(Error::NotAdmissible) }
}

/// `p(D) = min{i : D′(u_i) admissible}`, by a descending scan.
pub fn p_of(d: &Diagram) -> Result<usize> {
    require_admissible(d)?;
    let mut p = None;
    for i in (1..=d.len()).rev() {
        if is_admissible(&star_extend_node(d, i)?) {
            p = Some(i);
        } else {
            break;
        }
    }
    p.ok_or_else(|| Error::Internal(format!("no admissible D′(u_i) for {d:?}")))
}

/// `q(D) = min{j : D′_j admissible}`.
pub fn q_of(d: &Diagram) -> Result<usize> {
    require_admissible(d)?;
    for j in 1..=d.num_cols() {
        if is_admissible(&star_extend_column(d, j)?) {
            return Ok(j);
        }
    }
    Err(Error::Internal(format!("no admissible D′_j for {d:?}")))
}

fn require_z(lambda: &Composition, z: &Permutation) -> Result<()> {
    if in_z(lambda, z)? {
        Ok(())
    } else {
        Err(Error::NotInZ { perm: z.to_string(), lambda: lambda.to_string() })
    }
}

/// `θ_* : Z(λ) → Z(λ_*)`, `z ↦ w(D′_{q(D)})` with `D = D(z, λ)`.
pub fn theta_star(lambda: &Composition, z: &Permutation) -> Result<Permutation> {
    require_z(lambda, z)?;
    let d = Diagram::canonical(z, lambda)?;
    Ok(star_extend_column(&d, q_of(&d)?)?.w())
}

/// `θ^* : Z(λ) → Z(λ^*)`, obtained from `θ_*` for the reversed composition
/// by conjugating with the longest elements.
pub fn theta_upper_star(lambda: &Composition, z: &Permutation) -> Result<Permutation> {
    require_z(lambda, z)?;
    let flipped = theta_star(&lambda.reverse(), &z.conjugate_by_longest())?;
    Ok(flipped.conjugate_by_longest())
}

/// `D^(k) = D ∪ {(k, c_D+1)}` for `k ∈ M(λ_D)`.
pub fn bump_extend(d: &Diagram, k: usize) -> Result<Diagram> {
    let lambda = d.row_composition();
    if !lambda.max_positions().contains(&k) {
        return Err(Error::NotMaximalPart(k, lambda.to_string()));
    }
    Diagram::new(d.nodes().iter().copied().chain([(k, d.num_cols() + 1)]))
}

/// `d = s_{p+1} ⋯ s_n ∈ S_{n+1}` with `p = λ_1 + … + λ_k`.
pub fn theta_k_connector(lambda: &Composition, k: usize) -> Result<Permutation> {
    lambda.bump(k)?;
    let p: usize = lambda.parts()[..k].iter().sum();
    descending_run(lambda.size(), p)
}

/// `s_{a+1} ⋯ s_n` in `S_{n+1}`.
fn descending_run(n: usize, a: usize) -> Result<Permutation> {
    GeneratorWord((a + 1..=n).collect()).product(n + 1)
}

/// `θ : Z(λ) → Z(λ^(k))`, `z ↦ d z`.
pub fn theta_k(lambda: &Composition, k: usize, z: &Permutation) -> Result<Permutation> {
    let d = theta_k_connector(lambda, k)?;
    require_z(lambda, z)?;
    Ok(&d * &z.embed())
}

/// Which hypothesis guarantees `Y(λ)θ ⊆ Y(λ^(k))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// `k = 1`.
    A,
    /// `k ≠ max M(λ)`.
    B,
    /// `M(λ) = {k}` and the last occurrence of the next largest part lies
    /// below row `k`.
    C,
    None,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::A => "A",
            Condition::B => "B",
            Condition::C => "C",
            Condition::None => "none",
        };
        f.write_str(s)
    }
}

pub fn theta_k_condition(lambda: &Composition, k: usize) -> Result<Condition> {
    let m_set = lambda.max_positions();
    if !m_set.contains(&k) {
        return Err(Error::NotMaximalPart(k, lambda.to_string()));
    }
    if k == 1 {
        return Ok(Condition::A);
    }
    if Some(&k) != m_set.last() {
        return Ok(Condition::B);
    }
    let parts = lambda.parts();
    let others = parts.iter().enumerate().filter(|&(i, _)| i + 1 != k).map(|(_, &p)| p);
    if m_set.len() == 1 {
        if let Some(m) = others.max() {
            let last = (1..=parts.len()).rev().find(|&i| i != k && parts[i - 1] == m);
            if last.is_some_and(|i| i > k) {
                return Ok(Condition::C);
            }
        }
    }
    Ok(Condition::None)
}

/// The identity `d̄ w_J(λ) = w_J(λ^(k)) d` and the inclusion
/// `d̄ 𝔠(λ) ⊆ 𝔠(λ^(k))`, with `d̄ = s_{q+1} ⋯ s_n`, `q = λ_1 + … + λ_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionBridge {
    pub lambda: Composition,
    pub k: usize,
    pub d: Permutation,
    pub d_bar: Permutation,
    pub identity_holds: bool,
    pub inclusion_holds: bool,
}

pub fn restriction_bridge(lambda: &Composition, k: usize) -> Result<RestrictionBridge> {
    let target = lambda.bump(k)?;
    let n = lambda.size();
    let q: usize = lambda.parts()[..k - 1].iter().sum();
    let d = theta_k_connector(lambda, k)?;
    let d_bar = descending_run(n, q)?;
    let wj = Permutation::parabolic_longest(lambda).embed();
    let wj_bar = Permutation::parabolic_longest(&target);
    let identity_holds = &d_bar * &wj == &wj_bar * &d;
    let big: HashSet<Permutation> = cell_elements(&target).into_iter().collect();
    let inclusion_holds = cell_elements(lambda).iter().all(|w| big.contains(&(&d_bar * &w.embed())));
    Ok(RestrictionBridge { lambda: lambda.clone(), k, d, d_bar, identity_holds, inclusion_holds })
}

/// Which lifting map a report describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftMap {
    LowerStar,
    UpperStar,
    Bump(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftPair {
    pub z: Permutation,
    pub z_prime: Permutation,
    /// `x` with `z′ = z x` (lower star) or `z′ = x z` (bump); for the upper
    /// star map, `z^{-1} z′`.
    pub connector: Permutation,
}

/// The image of `Z(λ)` under one lifting map, with the rim checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub lambda: Composition,
    pub target: Composition,
    pub map: LiftMap,
    pub condition: Option<Condition>,
    pub pairs: Vec<LiftPair>,
    pub checks: Vec<(&'static str, bool)>,
}

impl LiftReport {
    pub fn lower_star(lambda: &Composition) -> Result<LiftReport> {
        Self::build(lambda, LiftMap::LowerStar)
    }

    pub fn upper_star(lambda: &Composition) -> Result<LiftReport> {
        Self::build(lambda, LiftMap::UpperStar)
    }

    pub fn bump(lambda: &Composition, k: usize) -> Result<LiftReport> {
        lambda.bump(k)?;
        Self::build(lambda, LiftMap::Bump(k))
    }

    fn build(lambda: &Composition, map: LiftMap) -> Result<LiftReport> {
        let n = lambda.size();
        let (target, condition) = match map {
            LiftMap::LowerStar => (lambda.lower_star(), None),
            LiftMap::UpperStar => (lambda.upper_star(), None),
            LiftMap::Bump(k) => (lambda.bump(k)?, Some(theta_k_condition(lambda, k)?)),
        };
        let z = enumerate_z(lambda);
        let y = rim_of(&z);
        let y_set: HashSet<&Permutation> = y.iter().collect();
        let target_y = rim_y(&target);
        let target_y_set: HashSet<&Permutation> = target_y.iter().collect();

        let mut pairs = Vec::with_capacity(z.len());
        for e in &z {
            let (image, connector) = match map {
                LiftMap::LowerStar | LiftMap::UpperStar => {
                    let image = if map == LiftMap::LowerStar {
                        theta_star(lambda, e)?
                    } else {
                        theta_upper_star(lambda, e)?
                    };
                    let connector = &e.embed().inverse() * &image;
                    (image, connector)
                }
                LiftMap::Bump(k) => (theta_k(lambda, k, e)?, theta_k_connector(lambda, k)?),
            };
            pairs.push(LiftPair { z: e.clone(), z_prime: image, connector });
        }

        let images: HashSet<&Permutation> = pairs.iter().map(|p| &p.z_prime).collect();
        let rim_images: Vec<&Permutation> =
            pairs.iter().filter(|p| y_set.contains(&p.z)).map(|p| &p.z_prime).collect();
        let mut checks = vec![
            ("injective", images.len() == pairs.len()),
            ("images_in_Z", pairs.iter().all(|p| in_z(&target, &p.z_prime).unwrap_or(false))),
            ("Y_image_in_target_Y", rim_images.iter().all(|w| target_y_set.contains(w))),
        ];
        match map {
            LiftMap::LowerStar => {
                let xs: HashSet<Permutation> = (1..=n + 1).map(|i| x(n, i)).collect();
                checks.push(("connectors_in_X", pairs.iter().all(|p| xs.contains(&p.connector))));
                checks.push(("target_Y_in_Z_image", target_y.iter().all(|w| images.contains(w))));
                let maximal = pairs.iter().all(|p| {
                    let base = p.z.embed();
                    xs.iter().all(|xi| {
                        !in_z(&target, &(&base * xi)).unwrap_or(false)
                            || xi.is_prefix_of(&p.connector).unwrap_or(false)
                    })
                });
                checks.push(("connector_maximal", maximal));
            }
            LiftMap::UpperStar => {}
            LiftMap::Bump(k) => {
                let via_diagram = pairs.iter().all(|p| {
                    Diagram::canonical(&p.z, lambda)
                        .and_then(|d| bump_extend(&d, k))
                        .is_ok_and(|d| d.w() == p.z_prime)
                });
                checks.push(("matches_bumped_diagram", via_diagram));
                let non_rim_stays_off =
                    pairs.iter().filter(|p| !y_set.contains(&p.z)).all(|p| !target_y_set.contains(&p.z_prime));
                checks.push(("non_rim_image_off_target_Y", non_rim_stays_off));
                checks.push(("Y_image_equals_target_Y", rim_images.len() == target_y.len()
                    && rim_images.iter().all(|w| target_y_set.contains(w))));
            }
        }
        Ok(LiftReport { lambda: lambda.clone(), target, map, condition, pairs, checks })
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|(k, _)| *k == name).map(|&(_, v)| v)
    }

    /// Checks that the theory guarantees. For the bump map these depend on
    /// the condition; observed equality is never required.
    pub fn required_checks(&self) -> Vec<(&'static str, bool)> {
        self.checks
            .iter()
            .copied()
            .filter(|&(name, _)| match (self.map, name) {
                (LiftMap::Bump(_), "Y_image_equals_target_Y") => self.condition == Some(Condition::A),
                (LiftMap::Bump(_), "Y_image_in_target_Y") => self.condition != Some(Condition::None),
                _ => true,
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let checks: serde_json::Map<String, Value> =
            self.checks.iter().map(|&(k, v)| (k.to_string(), json!(v))).collect();
        let mut v = json!({
            "lambda": self.lambda,
            "target": self.target,
            "map": self.map,
            "pairs": self.pairs,
            "checks": checks,
        });
        if let Some(c) = self.condition {
            v["condition"] = json!(c.to_string());
        }
        v
    }
}
