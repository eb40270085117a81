use std::fmt;

use serde::{Deserialize, Serialize};

use super::tableau::shape_of;
use crate::diagram::{Diagram, Node};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::shapes::Partition;

/// `ν` such that `ν_1 + … + ν_k` is the largest size of a `k`-path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsequenceType(Partition);

impl SubsequenceType {
    pub fn nu(&self) -> &Partition {
        &self.0
    }

    pub fn into_partition(self) -> Partition {
        self.0
    }
}

impl fmt::Display for SubsequenceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Mutually disjoint paths; along a path rows strictly increase and columns
/// weakly increase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KPath {
    paths: Vec<Vec<Node>>,
}

impl KPath {
    pub fn new(paths: Vec<Vec<Node>>) -> Result<KPath> {
        for path in &paths {
            if path.windows(2).any(|w| !(w[0].0 < w[1].0 && w[0].1 <= w[1].1)) {
                return Err(Error::InvalidDiagram(format!("{path:?} is not a path")));
            }
        }
        let mut all: Vec<Node> = paths.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidDiagram("paths are not disjoint".into()));
        }
        Ok(KPath { paths })
    }

    pub fn paths(&self) -> &[Vec<Node>] {
        &self.paths
    }

    pub fn k(&self) -> usize {
        self.paths.len()
    }

    /// Total number of nodes.
    pub fn size(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    /// Nodes of the path family lying in row `r`.
    pub fn nodes_in_row(&self, r: usize) -> usize {
        self.paths.iter().flatten().filter(|n| n.0 == r).count()
    }
}

/// `ν` computed as the RS shape of `w_J(λ_D) w_D`.
pub fn subsequence_type(d: &Diagram) -> SubsequenceType {
    let wj = Permutation::parabolic_longest(&d.row_composition());
    SubsequenceType(shape_of(&(&wj * &d.w())))
}

/// `D` has subsequence type `λ_D′`.
pub fn is_admissible(d: &Diagram) -> bool {
    subsequence_type(d).0 == d.row_composition().conjugate()
}

/// Largest diagram size accepted by the oracle; `KLCELLS_ORACLE_LIMIT`
/// overrides the default of 14.
pub fn oracle_limit() -> usize {
    std::env::var("KLCELLS_ORACLE_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(14)
        .min(24)
}

/// Subset tables for the strict order `(a,b) ≺ (c,d)` iff `a < c`, `b ≤ d`.
struct Oracle<'a> {
    nodes: &'a [Node],
    below: Vec<u32>,
    width: Vec<u8>,
}

fn precedes(u: Node, v: Node) -> bool {
    u.0 < v.0 && u.1 <= v.1
}

impl<'a> Oracle<'a> {
    fn build(d: &'a Diagram) -> Result<Oracle<'a>> {
        let n = d.len();
        let limit = oracle_limit();
        if n > limit {
            return Err(Error::OracleBound { size: n, limit });
        }
        let nodes = d.nodes();
        let mut incomparable = vec![0u32; n];
        let mut below = vec![0u32; n];
        for v in 0..n {
            for u in 0..n {
                if u == v {
                    continue;
                }
                if precedes(nodes[u], nodes[v]) {
                    below[v] |= 1 << u;
                } else if !precedes(nodes[v], nodes[u]) {
                    incomparable[v] |= 1 << u;
                }
            }
        }
        // width[S] = largest antichain inside S
        let mut width = vec![0u8; 1 << n];
        for s in 1usize..(1 << n) {
            let v = s.trailing_zeros() as usize;
            let without = s & !(1 << v);
            let with = 1 + width[s & incomparable[v] as usize];
            width[s] = width[without].max(with);
        }
        Ok(Oracle { nodes, below, width })
    }

    /// For each `k`, the first subset (in numeric order) of maximal size
    /// among those with no antichain of size `k + 1`.
    fn best(&self) -> Vec<(usize, usize)> {
        let n = self.nodes.len();
        let mut best = vec![(0usize, 0usize); n + 1];
        for (s, &w) in self.width.iter().enumerate() {
            let size = s.count_ones() as usize;
            for entry in best.iter_mut().skip(w as usize) {
                if size > entry.0 {
                    *entry = (size, s);
                }
            }
        }
        best
    }

    /// A minimum chain cover of `mask`, by maximum matching on the
    /// comparability graph.
    fn chain_cover(&self, mask: usize) -> Vec<Vec<Node>> {
        let members: Vec<usize> = (0..self.nodes.len()).filter(|&v| mask >> v & 1 == 1).collect();
        let mut next: Vec<Option<usize>> = vec![None; self.nodes.len()];
        let mut prev: Vec<Option<usize>> = vec![None; self.nodes.len()];
        fn augment(
            u: usize,
            members: &[usize],
            below: &[u32],
            seen: &mut Vec<bool>,
            next: &mut Vec<Option<usize>>,
            prev: &mut Vec<Option<usize>>,
        ) -> bool {
            for &v in members {
                if below[v] >> u & 1 == 1 && !seen[v] {
                    seen[v] = true;
                    let free = match prev[v] {
                        None => true,
                        Some(w) => augment(w, members, below, seen, next, prev),
                    };
                    if free {
                        next[u] = Some(v);
                        prev[v] = Some(u);
                        return true;
                    }
                }
            }
            false
        }
        for &u in &members {
            let mut seen = vec![false; self.nodes.len()];
            augment(u, &members, &self.below, &mut seen, &mut next, &mut prev);
        }
        let mut chains = Vec::new();
        for &start in members.iter().filter(|&&v| prev[v].is_none()) {
            let mut chain = vec![self.nodes[start]];
            let mut cur = start;
            while let Some(v) = next[cur] {
                chain.push(self.nodes[v]);
                cur = v;
            }
            chains.push(chain);
        }
        chains
    }
}

fn partition_from_sums(sums: &[usize]) -> Result<Partition> {
    let diffs: Vec<usize> =
        sums.windows(2).map(|w| w[1] - w[0]).take_while(|&x| x > 0).collect();
    Partition::new(diffs).map_err(|e| Error::Internal(format!("k-path sizes {sums:?}: {e}")))
}

/// `ν` from the definition: the largest `k`-path is the largest subset with
/// no antichain of size `k + 1`. Independent of RS.
pub fn subsequence_type_oracle(d: &Diagram) -> Result<SubsequenceType> {
    let oracle = Oracle::build(d)?;
    let sums: Vec<usize> = oracle.best().into_iter().map(|(size, _)| size).collect();
    Ok(SubsequenceType(partition_from_sums(&sums)?))
}

/// A `k`-path of maximal size for each `k = 1, …, ℓ(ν)`.
pub fn witness_paths(d: &Diagram) -> Result<Vec<KPath>> {
    let oracle = Oracle::build(d)?;
    let best = oracle.best();
    let sums: Vec<usize> = best.iter().map(|&(size, _)| size).collect();
    let len = partition_from_sums(&sums)?.len();
    (1..=len)
        .map(|k| {
            let mut paths = oracle.chain_cover(best[k].1);
            if paths.len() > k {
                return Err(Error::Internal(format!("chain cover larger than {k}")));
            }
            paths.resize(k, Vec::new());
            KPath::new(paths)
        })
        .collect()
}

/// A maximal `u`-path meeting row `i` in exactly `min(u, λ_i)` nodes, if one
/// exists.
pub fn row_count_witness(d: &Diagram, u: usize) -> Result<Option<KPath>> {
    let oracle = Oracle::build(d)?;
    let best = oracle.best();
    let target_size = best[u.min(d.len())].0;
    let lambda = d.row_composition();
    let target: Vec<usize> = lambda.parts().iter().map(|&l| l.min(u)).collect();
    for (s, &w) in oracle.width.iter().enumerate() {
        if w as usize > u || s.count_ones() as usize != target_size {
            continue;
        }
        let mut counts = vec![0; lambda.len()];
        for v in (0..d.len()).filter(|&v| s >> v & 1 == 1) {
            counts[d.nodes()[v].0 - 1] += 1;
        }
        if counts == target {
            let mut paths = oracle.chain_cover(s);
            paths.resize(u.max(paths.len()), Vec::new());
            return KPath::new(paths).map(Some);
        }
    }
    Ok(None)
}
