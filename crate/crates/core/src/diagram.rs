//! Generalized diagrams: finite sets of grid nodes `(row, col)`.
//!
//! Every [`Diagram`] is principal: rows and columns are indexed from 1 with no
//! empty row or column in between. Nodes are kept sorted in the total order
//! `(i,j) < (i',j')` iff `i < i'`, or `i = i'` and `j < j'`, so the position of
//! a node in [`Diagram::nodes`] is its entry in the row-filled tableau minus 1.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::shapes::{Composition, Partition};

/// A node `(row, col)`, both 1-based.
pub type Node = (usize, usize);

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DiagramRepr", into = "DiagramRepr")]
pub struct Diagram {
    nodes: Vec<Node>,
    rows: usize,
    cols: usize,
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    nodes: Vec<[usize; 2]>,
}

/// A bijection from the nodes of a diagram to `{1, …, n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DTableau {
    diagram: Diagram,
    /// `entries[i]` is the entry at `diagram.nodes()[i]`.
    entries: Vec<usize>,
}

impl Diagram {
    /// Build from nodes that already form a principal diagram.
    pub fn new(nodes: impl IntoIterator<Item = Node>) -> Result<Diagram> {
        let set: BTreeSet<Node> = nodes.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidDiagram("no nodes".into()));
        }
        if set.iter().any(|&(r, c)| r == 0 || c == 0) {
            return Err(Error::InvalidDiagram("indices start at 1".into()));
        }
        let rows: BTreeSet<usize> = set.iter().map(|n| n.0).collect();
        let cols: BTreeSet<usize> = set.iter().map(|n| n.1).collect();
        let (r, c) = (rows.len(), cols.len());
        if *rows.last().unwrap() != r || *cols.last().unwrap() != c {
            return Err(Error::InvalidDiagram("diagram has an empty row or column".into()));
        }
        Ok(Diagram { nodes: set.into_iter().collect(), rows: r, cols: c })
    }

    /// Reindex rows and columns consecutively from 1, preserving their order.
    pub fn normalize_principal(nodes: impl IntoIterator<Item = Node>) -> Result<Diagram> {
        let set: BTreeSet<Node> = nodes.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidDiagram("no nodes".into()));
        }
        let rank = |vals: BTreeSet<usize>| -> BTreeMap<usize, usize> {
            vals.into_iter().enumerate().map(|(i, v)| (v, i + 1)).collect()
        };
        let rows = rank(set.iter().map(|n| n.0).collect());
        let cols = rank(set.iter().map(|n| n.1).collect());
        Diagram::new(set.iter().map(|&(r, c)| (rows[&r], cols[&c])))
    }

    /// The Young diagram of a partition.
    pub fn young(shape: &Partition) -> Diagram {
        let nodes = shape
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| (i + 1, j)));
        Diagram::new(nodes).expect("Young diagrams are principal")
    }

    /// A single row of `n` nodes.
    pub fn single_row(n: usize) -> Diagram {
        Diagram::new((1..=n).map(|j| (1, j))).expect("principal")
    }

    /// A single column of `n` nodes.
    pub fn single_column(n: usize) -> Diagram {
        Diagram::new((1..=n).map(|i| (i, 1))).expect("principal")
    }

    /// The unique special diagram with row composition `lambda` and column
    /// composition `mu`; requires `mu` to rearrange `lambda′`.
    pub fn special(lambda: &Composition, mu: &Composition) -> Result<Diagram> {
        if mu.sorted() != lambda.conjugate() {
            return Err(Error::InvalidDiagram(format!(
                "no special diagram with rows {lambda} and columns {mu}"
            )));
        }
        // Row i plays the role of Young row k = 1 + #{rows strictly longer};
        // it meets column j iff that column has at least k nodes.
        let parts = lambda.parts();
        let mut nodes = Vec::with_capacity(lambda.size());
        for (i, &len) in parts.iter().enumerate() {
            let k = 1 + parts.iter().filter(|&&p| p > len).count();
            for (j, &height) in mu.parts().iter().enumerate() {
                if height >= k {
                    nodes.push((i + 1, j + 1));
                }
            }
        }
        let d = Diagram::new(nodes)?;
        debug_assert_eq!(&d.row_composition(), lambda);
        debug_assert_eq!(&d.column_composition(), mu);
        Ok(d)
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `r_D`.
    pub fn num_rows(&self) -> usize {
        self.rows
    }

    /// `c_D`.
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn contains(&self, node: Node) -> bool {
        self.nodes.binary_search(&node).is_ok()
    }

    /// Index of a node in the total order (its row-fill entry minus one).
    pub fn index_of(&self, node: Node) -> Option<usize> {
        self.nodes.binary_search(&node).ok()
    }

    /// `λ_D`.
    pub fn row_composition(&self) -> Composition {
        let mut counts = vec![0; self.rows];
        for &(r, _) in &self.nodes {
            counts[r - 1] += 1;
        }
        Composition::new(counts).expect("principal rows are non-empty")
    }

    /// `μ_D`.
    pub fn column_composition(&self) -> Composition {
        let mut counts = vec![0; self.cols];
        for &(_, c) in &self.nodes {
            counts[c - 1] += 1;
        }
        Composition::new(counts).expect("principal columns are non-empty")
    }

    /// Pairwise characterisation of special diagrams, cross-checked against
    /// `λ_D″ = μ_D′`.
    pub fn is_special(&self) -> bool {
        let pairwise = self.nodes.iter().all(|&(i, j)| {
            self.nodes
                .iter()
                .filter(|&&(i2, j2)| i2 != i && j2 != j)
                .all(|&(i2, j2)| self.contains((i2, j)) || self.contains((i, j2)))
        });
        let by_shape = self.row_composition().sorted() == self.column_composition().conjugate();
        assert_eq!(pairwise, by_shape, "specialness tests disagree on {self:?}");
        pairwise
    }

    /// Node indices in column-reading order (columns left to right, each top
    /// to bottom).
    pub fn column_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&i| (self.nodes[i].1, self.nodes[i].0));
        order
    }

    /// `t^D`: entries `1..n` in the node total order.
    pub fn row_fill(&self) -> DTableau {
        DTableau { diagram: self.clone(), entries: (1..=self.len()).collect() }
    }

    /// `t_D`: entries `1..n` down the columns, left to right.
    pub fn column_fill(&self) -> DTableau {
        let mut entries = vec![0; self.len()];
        for (k, idx) in self.column_order().into_iter().enumerate() {
            entries[idx] = k + 1;
        }
        DTableau { diagram: self.clone(), entries }
    }

    /// `w_D`, defined by `t^D w_D = t_D`; its row-form is `t_D` read by rows.
    pub fn w(&self) -> Permutation {
        Permutation::from_row(self.column_fill().entries).expect("column fill is a bijection")
    }

    /// All `u` with `t^D u` standard, i.e. the prefixes of `w_D`. Sorted by
    /// length then row-form.
    pub fn prefixes_of_w(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = self
            .standard_fillings()
            .into_iter()
            .map(|entries| Permutation::from_row(entries).expect("bijective filling"))
            .collect();
        crate::perm::sort_length_lex(&mut out);
        out
    }

    /// Every standard filling, as entry vectors aligned with [`nodes`](Self::nodes).
    pub fn standard_fillings(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let preds: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| {
                        u != v
                            && self.nodes[u].0 <= self.nodes[v].0
                            && self.nodes[u].1 <= self.nodes[v].1
                    })
                    .collect()
            })
            .collect();
        let mut entries = vec![0; n];
        let mut out = Vec::new();
        fn go(
            value: usize,
            n: usize,
            preds: &[Vec<usize>],
            entries: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if value > n {
                out.push(entries.clone());
                return;
            }
            for v in 0..n {
                if entries[v] == 0 && preds[v].iter().all(|&u| entries[u] != 0) {
                    entries[v] = value;
                    go(value + 1, n, preds, entries, out);
                    entries[v] = 0;
                }
            }
        }
        go(1, n, &preds, &mut entries, &mut out);
        out
    }

    /// `D(d, λ)`: the diagram with fewest columns among those with row
    /// composition `λ` and `w_D = d`.
    ///
    /// The rows of the diagram are the `λ`-blocks of `d`'s row-form. Values
    /// `1..n` are then laid out in column-reading order, opening a new column
    /// exactly when the next value's row is not below the last row used in the
    /// current column.
    pub fn canonical(d: &Permutation, lambda: &Composition) -> Result<Diagram> {
        if !d.is_distinguished(lambda)? {
            return Err(Error::NotDistinguished { perm: d.to_string(), lambda: lambda.to_string() });
        }
        let block = lambda.block_of_positions();
        let inv = d.inverse();
        let mut nodes = Vec::with_capacity(d.degree());
        let mut col = 0;
        let mut last_row = usize::MAX;
        for v in 1..=d.degree() {
            let row = block[inv.image(v) - 1] + 1;
            if last_row == usize::MAX || row <= last_row {
                col += 1;
            }
            nodes.push((row, col));
            last_row = row;
        }
        let diagram = Diagram::new(nodes)?;
        if diagram.w() != *d || diagram.row_composition() != *lambda {
            return Err(Error::Internal(format!("D({d}, {lambda}) failed its round trip")));
        }
        Ok(diagram)
    }

    /// Rotation through 180°.
    pub fn rotate180(&self) -> Diagram {
        let (r, c) = (self.rows, self.cols);
        Diagram::new(self.nodes.iter().map(|&(i, j)| (r + 1 - i, c + 1 - j))).expect("principal")
    }

    /// Nodes grouped by column, each top to bottom.
    pub fn columns(&self) -> Vec<Vec<Node>> {
        let mut cols = vec![Vec::new(); self.cols];
        for idx in self.column_order() {
            let node = self.nodes[idx];
            cols[node.1 - 1].push(node);
        }
        cols
    }

    /// Render as rows of `x`/`.` separated by spaces.
    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        for r in 1..=self.rows {
            let line: Vec<&str> =
                (1..=self.cols).map(|c| if self.contains((r, c)) { "x" } else { "." }).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse either `{"nodes": [[r,c], …]}` or the ASCII grid. Rows may be
    /// separated by newlines, `/` or `;`. Input is normalized to principal form.
    pub fn parse(text: &str) -> Result<Diagram> {
        let t = text.trim();
        if t.starts_with('{') {
            let repr: DiagramRepr =
                serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            return Diagram::try_from(repr);
        }
        let mut nodes = Vec::new();
        for (r, line) in t.split(['\n', '/', ';']).map(str::trim).filter(|l| !l.is_empty()).enumerate() {
            let tokens: Vec<String> = if line.contains(char::is_whitespace) {
                line.split_whitespace().map(str::to_owned).collect()
            } else {
                line.chars().map(String::from).collect()
            };
            for (c, tok) in tokens.iter().enumerate() {
                match tok.as_str() {
                    "x" | "X" | "×" => nodes.push((r + 1, c + 1)),
                    "." => {}
                    other => return Err(Error::Parse(format!("unexpected diagram cell {other:?}"))),
                }
            }
        }
        Diagram::normalize_principal(nodes)
    }
}

impl TryFrom<DiagramRepr> for Diagram {
    type Error = Error;
    fn try_from(repr: DiagramRepr) -> Result<Self> {
        Diagram::normalize_principal(repr.nodes.into_iter().map(|[r, c]| (r, c)))
    }
}

impl From<Diagram> for DiagramRepr {
    fn from(d: Diagram) -> Self {
        DiagramRepr { nodes: d.nodes.into_iter().map(|(r, c)| [r, c]).collect() }
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram{:?}", self.nodes)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

impl FromStr for Diagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Diagram::parse(s)
    }
}

impl DTableau {
    /// `entries` is aligned with `diagram.nodes()`.
    pub fn new(diagram: Diagram, entries: Vec<usize>) -> Result<DTableau> {
        let n = diagram.len();
        let mut seen = vec![false; n + 1];
        if entries.len() != n
            || entries.iter().any(|&e| e == 0 || e > n || std::mem::replace(&mut seen[e], true))
        {
            return Err(Error::InvalidTableau(format!("{entries:?} is not a bijection onto 1..{n}")));
        }
        Ok(DTableau { diagram, entries })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn entry(&self, node: Node) -> Option<usize> {
        self.diagram.index_of(node).map(|i| self.entries[i])
    }

    /// Entries weakly increase towards larger rows and columns.
    pub fn is_standard(&self) -> bool {
        let nodes = self.diagram.nodes();
        (0..nodes.len()).all(|a| {
            (0..nodes.len()).all(|b| {
                let (u, v) = (nodes[a], nodes[b]);
                !(u.0 <= v.0 && u.1 <= v.1) || self.entries[a] <= self.entries[b]
            })
        })
    }

    /// `t w`: every entry `i` becomes `i w`.
    pub fn act(&self, w: &Permutation) -> Result<DTableau> {
        if w.degree() != self.entries.len() {
            return Err(Error::SizeMismatch { expected: self.entries.len(), found: w.degree() });
        }
        Ok(DTableau {
            diagram: self.diagram.clone(),
            entries: self.entries.iter().map(|&e| w.image(e)).collect(),
        })
    }

    pub fn to_ascii(&self) -> String {
        let width = self.entries.len().to_string().len();
        let mut out = String::new();
        for r in 1..=self.diagram.num_rows() {
            let cells: Vec<String> = (1..=self.diagram.num_cols())
                .map(|c| match self.entry((r, c)) {
                    Some(e) => format!("{e:>width$}"),
                    None => format!("{:>width$}", "."),
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}
