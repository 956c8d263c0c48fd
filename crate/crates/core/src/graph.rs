//! Finite graphs with loops, folds and graph homomorphisms.
//!
//! Vertices are `0..n` and neighborhoods are stored as `u64` bitsets, so a
//! graph has at most [`MAX_VERTICES`] vertices. Edge multiplicity is not
//! recorded; loops are.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A set of vertices as a bitmask.
pub type VertexSet = u64;

pub(crate) fn members(set: VertexSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n).expect("complete graph too large");
        for a in 0..n {
            for b in a + 1..n {
                g.adj[a] |= 1 << b;
                g.adj[b] |= 1 << a;
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path graph too large")
    }

    /// Star with center `0` and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star too large")
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        for x in [a, b] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn all_vertices(&self) -> VertexSet {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] & (1 << b) != 0
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// Vertices adjacent to every member of `set`. The empty set yields all vertices.
    pub fn common_neighbors(&self, set: VertexSet) -> VertexSet {
        members(set).fold(self.all_vertices(), |acc, v| acc & self.adj[v])
    }

    /// Edges `(a, b)` with `a <= b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in members(self.adj[a]) {
                if a <= b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// The graph with vertices renamed by `perm` (old vertex `x` becomes `perm[x]`).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n).expect("same size");
        for (a, b) in self.edges() {
            g.add_edge(perm[a], perm[b]).expect("permutation in range");
        }
        g
    }

    /// All fold witnesses `(v, u)`, sorted by `(v, u)`.
    pub fn find_folds(&self) -> Vec<FoldWitness> {
        let mut out = Vec::new();
        for v in 0..self.n {
            for u in 0..self.n {
                if u != v && self.adj[v] & !self.adj[u] == 0 {
                    out.push(FoldWitness { v, u });
                }
            }
        }
        out
    }

    pub fn is_stiff(&self) -> bool {
        self.find_folds().is_empty()
    }

    /// Smallest witness deleting `v`.
    pub fn fold_for(&self, v: usize) -> Result<FoldWitness> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        self.find_folds()
            .into_iter()
            .find(|w| w.v == v)
            .ok_or(Error::NoFold(v))
    }

    pub fn check_witness(&self, w: FoldWitness) -> Result<()> {
        for x in [w.v, w.u] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if w.v == w.u {
            return Err(Error::DegenerateWitness(w.v));
        }
        let missing = self.adj[w.v] & !self.adj[w.u];
        if missing != 0 {
            return Err(Error::DominationViolation {
                v: w.v,
                u: w.u,
                missing: missing.trailing_zeros() as usize,
            });
        }
        Ok(())
    }

    /// Deletes `w.v`, returning `G - v` with the fold and inclusion maps.
    pub fn apply_fold(&self, w: FoldWitness) -> Result<Fold> {
        self.check_witness(w)?;
        let relabel: Vec<Option<usize>> = (0..self.n)
            .map(|x| match x.cmp(&w.v) {
                std::cmp::Ordering::Less => Some(x),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(x - 1),
            })
            .collect();
        let mut folded = Graph::empty(self.n - 1)?;
        for (a, b) in self.edges() {
            if let (Some(a), Some(b)) = (relabel[a], relabel[b]) {
                folded.add_edge(a, b)?;
            }
        }
        let fold_map = (0..self.n)
            .map(|x| relabel[if x == w.v { w.u } else { x }].expect("u survives"))
            .collect();
        let incl_map = (0..self.n).filter(|&x| x != w.v).collect();
        Ok(Fold {
            witness: w,
            fold: GraphHomomorphism::new_unchecked(self.clone(), folded.clone(), fold_map),
            inclusion: GraphHomomorphism::new_unchecked(folded.clone(), self.clone(), incl_map),
            folded,
            relabel,
        })
    }

    /// Repeatedly applies the smallest fold until the graph is stiff.
    pub fn fold_to_stiff(&self) -> Graph {
        let mut g = self.clone();
        while let Some(&w) = g.find_folds().first() {
            g = g.apply_fold(w).expect("witness from find_folds").folded;
        }
        g
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (a, b) in self.edges() {
            writeln!(f, "e {a} {b}")?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_graph(text)
    }
}

/// Parses the line-oriented graph format: `# comment`, one `n <count>` header
/// as the first directive, then `e <a> <b>` lines.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let num = |tok: &str| {
            tok.parse::<usize>()
                .map_err(|_| err(format!("expected a non-negative integer, got `{tok}`")))
        };
        match (tokens[0], &graph) {
            ("n", None) => {
                if tokens.len() != 2 {
                    return Err(err("expected `n <count>`".into()));
                }
                let n = num(tokens[1])?;
                graph = Some(Graph::empty(n).map_err(|e| err(e.to_string()))?);
            }
            ("n", Some(_)) => return Err(err("duplicate `n` header".into())),
            ("e", None) => return Err(err("edge before `n` header".into())),
            ("e", Some(_)) => {
                if tokens.len() != 3 {
                    return Err(err("expected `e <u> <v>`".into()));
                }
                let (a, b) = (num(tokens[1])?, num(tokens[2])?);
                let g = graph.as_mut().expect("header seen");
                g.add_edge(a, b).map_err(|e| err(e.to_string()))?;
            }
            (other, _) => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    graph.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        msg: "missing `n <count>` header".into(),
    })
}

/// Deletion of `v`, justified by `N(u) ⊇ N(v)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FoldWitness {
    pub v: usize,
    pub u: usize,
}

/// Result of deleting a folded vertex.
#[derive(Clone, Debug)]
pub struct Fold {
    pub witness: FoldWitness,
    pub folded: Graph,
    /// `G -> G - v`, sending `v` to `u`.
    pub fold: GraphHomomorphism,
    /// `G - v -> G`.
    pub inclusion: GraphHomomorphism,
    /// Old vertex to new vertex; `None` for the deleted vertex.
    pub relabel: Vec<Option<usize>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphHomomorphism {
    source: Graph,
    target: Graph,
    map: Vec<usize>,
}

impl GraphHomomorphism {
    /// Checks totality and edge preservation.
    pub fn new(source: Graph, target: Graph, map: Vec<usize>) -> Result<Self> {
        let h = Self::new_total(source, target, map)?;
        if let Some((a, b)) = h.first_broken_edge() {
            return Err(Error::NotHomomorphism(a, b));
        }
        Ok(h)
    }

    /// Checks only that `map` is a total function into the target's vertices.
    pub fn new_total(source: Graph, target: Graph, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.n() {
            return Err(Error::MapLength { got: map.len(), expected: source.n() });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.n()) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: target.n() });
        }
        Ok(Self::new_unchecked(source, target, map))
    }

    fn new_unchecked(source: Graph, target: Graph, map: Vec<usize>) -> Self {
        GraphHomomorphism { source, target, map }
    }

    pub fn identity(g: &Graph) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), (0..g.n()).collect())
    }

    pub fn source(&self) -> &Graph {
        &self.source
    }

    pub fn target(&self) -> &Graph {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Image of a vertex set.
    pub fn apply_set(&self, set: VertexSet) -> VertexSet {
        members(set).fold(0, |acc, x| acc | 1 << self.map[x])
    }

    fn first_broken_edge(&self) -> Option<(usize, usize)> {
        self.source
            .edges()
            .into_iter()
            .find(|&(a, b)| !self.target.has_edge(self.map[a], self.map[b]))
    }

    pub fn is_homomorphism(&self) -> bool {
        self.first_broken_edge().is_none()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GraphHomomorphism) -> Result<GraphHomomorphism> {
        if self.target != other.source {
            return Err(Error::Contract("composed maps do not share a middle graph".into()));
        }
        let map = self.map.iter().map(|&y| other.map[y]).collect();
        Ok(Self::new_unchecked(self.source.clone(), other.target.clone(), map))
    }
}
