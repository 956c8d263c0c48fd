//! Cells of `Hom(G, H)` and the maps induced by graph homomorphisms.
//!
//! A cell assigns a nonempty set `η(x) ⊆ V(H)` to every vertex `x` of `G`
//! such that `η(x) × η(y) ⊆ E(H)` for every edge `(x, y)` of `G`. Cells are
//! ordered by pointwise inclusion, and a cell is a product of simplices of
//! dimension `Σ (|η(x)| - 1)`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{members, Graph, GraphHomomorphism, VertexSet};
use crate::poset::{ElemId, Element, FacePoset, Poset, PosetJson, PosetMap};

pub const DEFAULT_MAX_CELLS: usize = 1_000_000;

/// One multihomomorphism: a vertex set of `H` per vertex of `G`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct HomCell(pub Box<[VertexSet]>);

impl HomCell {
    pub fn new(sets: Vec<VertexSet>) -> Self {
        HomCell(sets.into_boxed_slice())
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.0
    }

    pub fn get(&self, x: usize) -> VertexSet {
        self.0[x]
    }

    pub fn dim(&self) -> usize {
        self.0.iter().map(|s| s.count_ones() as usize - 1).sum()
    }

    /// `Σ |η(x)|`.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|s| s.count_ones() as usize).sum()
    }

    pub fn is_face_of(&self, other: &HomCell) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn with(&self, x: usize, set: VertexSet) -> HomCell {
        let mut sets = self.0.clone();
        sets[x] = set;
        HomCell(sets)
    }

    /// The assignment with vertex `x` deleted (later vertices shift down).
    pub fn without(&self, x: usize) -> HomCell {
        HomCell(self.0.iter().enumerate().filter(|&(y, _)| y != x).map(|(_, &s)| s).collect())
    }

    /// Whether the edge condition holds for `g` and `h`.
    pub fn is_cell(&self, g: &Graph, h: &Graph) -> bool {
        self.0.len() == g.n()
            && self.0.iter().all(|&s| s != 0 && s & !h.all_vertices() == 0)
            && g.edges().into_iter().all(|(a, b)| self.0[a] & !h.common_neighbors(self.0[b]) == 0)
    }

    /// Sorted vertex lists, e.g. `[[0],[1,2],[0]]`.
    pub fn label(&self) -> Value {
        Value::from(
            self.0
                .iter()
                .map(|&s| Value::from(members(s).collect::<Vec<_>>()))
                .collect::<Vec<_>>(),
        )
    }
}

/// The face poset of `Hom(G, H)`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    g: Graph,
    h: Graph,
    cells: Vec<HomCell>,
    index: HashMap<HomCell, usize>,
    poset: FacePoset,
}

/// Nonempty subsets of `allowed` in increasing numeric order.
fn subsets(allowed: VertexSet) -> impl Iterator<Item = VertexSet> {
    let mut s: VertexSet = 0;
    std::iter::from_fn(move || {
        s = s.wrapping_sub(allowed) & allowed;
        (s != 0).then_some(s)
    })
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    /// Per vertex: neighbors already placed before it in the order 0..n.
    earlier: Vec<Vec<usize>>,
    limit: usize,
    count: &'a AtomicUsize,
}

impl Search<'_> {
    fn candidates(&self, assignment: &[VertexSet], x: usize) -> VertexSet {
        self.earlier[x]
            .iter()
            .fold(self.h.all_vertices(), |acc, &y| acc & self.h.common_neighbors(assignment[y]))
    }

    fn admissible(&self, x: usize, set: VertexSet) -> bool {
        !self.g.has_loop(x) || set & !self.h.common_neighbors(set) == 0
    }

    fn extend(&self, assignment: &mut Vec<VertexSet>, out: &mut Vec<HomCell>) -> Result<()> {
        let x = assignment.len();
        if x == self.g.n() {
            let seen = self.count.fetch_add(1, Ordering::Relaxed) + 1;
            if seen > self.limit {
                return Err(Error::ResourceLimit { limit: self.limit, partial: seen - 1 });
            }
            out.push(HomCell::new(assignment.clone()));
            return Ok(());
        }
        for set in subsets(self.candidates(assignment, x)) {
            if self.admissible(x, set) {
                assignment.push(set);
                let r = self.extend(assignment, out);
                assignment.pop();
                r?;
            }
        }
        Ok(())
    }
}

impl HomComplex {
    /// Enumerates every cell of `Hom(g, h)` in lexicographic order of the
    /// assignment (sets compared as bitmasks) and builds the cover relation.
    pub fn enumerate(g: &Graph, h: &Graph, max_cells: usize) -> Result<Self> {
        let earlier = (0..g.n())
            .map(|x| members(g.neighbors(x)).filter(|&y| y < x).collect())
            .collect();
        let count = AtomicUsize::new(0);
        let search = Search { g, h, earlier, limit: max_cells, count: &count };
        let cells: Vec<HomCell> = if g.n() == 0 {
            let mut out = Vec::new();
            search.extend(&mut Vec::new(), &mut out)?;
            out
        } else {
            let firsts: Vec<VertexSet> =
                subsets(h.all_vertices()).filter(|&s| search.admissible(0, s)).collect();
            let chunks = firsts
                .par_iter()
                .map(|&first| {
                    let mut out = Vec::new();
                    search.extend(&mut vec![first], &mut out)?;
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()
                .map_err(|e| match e {
                    Error::ResourceLimit { limit, .. } => Error::ResourceLimit {
                        limit,
                        partial: count.load(Ordering::Relaxed).min(limit),
                    },
                    other => other,
                })?;
            chunks.into_iter().flatten().collect()
        };
        Ok(Self::from_cells(g.clone(), h.clone(), cells))
    }

    /// Builds the complex from a downward-closed list of cells.
    pub fn from_cells(g: Graph, h: Graph, cells: Vec<HomCell>) -> Self {
        let index: HashMap<HomCell, usize> =
            cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut covers = Vec::new();
        for (i, cell) in cells.iter().enumerate() {
            for x in 0..cell.0.len() {
                let set = cell.0[x];
                if set.count_ones() < 2 {
                    continue;
                }
                for a in members(set) {
                    let face = cell.with(x, set & !(1 << a));
                    let j = index[&face];
                    covers.push((j as ElemId, i as ElemId));
                }
            }
        }
        let elements = cells
            .iter()
            .enumerate()
            .map(|(i, c)| Element { id: i as ElemId, dim: c.dim() as i32, label: c.label() })
            .collect();
        let poset = FacePoset::from_covers_unchecked(elements, &covers).expect("cell poset");
        HomComplex { g, h, cells, index, poset }
    }

    pub fn source(&self) -> &Graph {
        &self.g
    }

    pub fn target(&self) -> &Graph {
        &self.h
    }

    pub fn cells(&self) -> &[HomCell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &HomCell {
        &self.cells[i]
    }

    pub fn find(&self, cell: &HomCell) -> Option<usize> {
        self.index.get(cell).copied()
    }

    pub fn poset(&self) -> &FacePoset {
        &self.poset
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for c in &self.cells {
            let d = c.dim();
            if f.len() <= d {
                f.resize(d + 1, 0);
            }
            f[d] += 1;
        }
        f
    }

    /// Cells of dimension zero as homomorphism maps `V(G) -> V(H)`.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        self.cells
            .iter()
            .filter(|c| c.dim() == 0)
            .map(|c| c.0.iter().map(|s| s.trailing_zeros() as usize).collect())
            .collect()
    }

    pub fn to_json(&self) -> PosetJson {
        self.poset.to_json()
    }

    fn map_cells(&self, target: &HomComplex, f: impl Fn(&HomCell) -> HomCell) -> Result<PosetMap> {
        let images = self
            .cells
            .iter()
            .map(|c| {
                let img = f(c);
                target.find(&img).map(|j| j as ElemId).ok_or_else(|| {
                    Error::Contract(format!("image {} is not a cell of the target", img.label()))
                })
            })
            .collect::<Result<_>>()?;
        Ok(PosetMap::new(images))
    }
}

impl Poset for HomComplex {
    fn len(&self) -> usize {
        self.cells.len()
    }

    fn id(&self, index: usize) -> ElemId {
        index as ElemId
    }

    fn index_of(&self, id: ElemId) -> Option<usize> {
        ((id as usize) < self.cells.len()).then_some(id as usize)
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.cells[a].is_face_of(&self.cells[b])
    }

    fn upper_covers(&self, a: usize) -> &[usize] {
        self.poset.upper_covers(a)
    }
}

/// `Hom(H, G) -> Hom(H, G')` for `phi: G -> G'`, as a map of cell posets.
pub fn covariant_map(source: &HomComplex, target: &HomComplex, phi: &GraphHomomorphism) -> Result<PosetMap> {
    if source.g != target.g || &source.h != phi.source() || &target.h != phi.target() {
        return Err(Error::Contract("complexes do not match the homomorphism".into()));
    }
    source.map_cells(target, |c| HomCell(c.0.iter().map(|&s| phi.apply_set(s)).collect()))
}

/// `Hom(G', H) -> Hom(G, H)` for `phi: G -> G'`, by precomposition.
pub fn contravariant_map(source: &HomComplex, target: &HomComplex, phi: &GraphHomomorphism) -> Result<PosetMap> {
    if source.h != target.h || &source.g != phi.target() || &target.g != phi.source() {
        return Err(Error::Contract("complexes do not match the homomorphism".into()));
    }
    source.map_cells(target, |c| HomCell(phi.map().iter().map(|&y| c.0[y]).collect()))
}

/// A poset map together with the complexes it runs between.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub source: HomComplex,
    pub target: HomComplex,
    pub map: PosetMap,
}

/// Enumerates `Hom(h, G)` and `Hom(h, G')` and the map induced by `phi: G -> G'`.
pub fn induced_covariant(phi: &GraphHomomorphism, h: &Graph, max_cells: usize) -> Result<InducedMap> {
    let source = HomComplex::enumerate(h, phi.source(), max_cells)?;
    let target = HomComplex::enumerate(h, phi.target(), max_cells)?;
    let map = covariant_map(&source, &target, phi)?;
    Ok(InducedMap { source, target, map })
}

/// Enumerates `Hom(G', h)` and `Hom(G, h)` and the map induced by `phi: G -> G'`.
pub fn induced_contravariant(phi: &GraphHomomorphism, h: &Graph, max_cells: usize) -> Result<InducedMap> {
    let source = HomComplex::enumerate(phi.target(), h, max_cells)?;
    let target = HomComplex::enumerate(phi.source(), h, max_cells)?;
    let map = contravariant_map(&source, &target, phi)?;
    Ok(InducedMap { source, target, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FoldWitness;

    fn hom(g: &Graph, h: &Graph) -> HomComplex {
        HomComplex::enumerate(g, h, DEFAULT_MAX_CELLS).unwrap()
    }

    /// Every assignment of nonempty subsets, filtered by the edge condition.
    fn brute_force(g: &Graph, h: &Graph) -> Vec<HomCell> {
        let choices: Vec<VertexSet> = (1..=h.all_vertices()).collect();
        let mut out = vec![HomCell::new(Vec::new())];
        for _ in 0..g.n() {
            out = out
                .into_iter()
                .flat_map(|c| {
                    choices.iter().map(move |&s| {
                        let mut v = c.0.to_vec();
                        v.push(s);
                        HomCell::new(v)
                    })
                })
                .collect();
        }
        out.retain(|c| c.is_cell(g, h));
        out
    }

    #[test]
    fn k1_to_k3_is_a_triangle() {
        let c = hom(&Graph::complete(1), &Graph::complete(3));
        assert_eq!(c.len(), 7);
        assert_eq!(c.f_vector(), vec![3, 3, 1]);
    }

    #[test]
    fn k2_to_k3_is_a_hexagon() {
        let c = hom(&Graph::complete(2), &Graph::complete(3));
        assert_eq!(c.f_vector(), vec![6, 6]);
        assert!((0..c.len()).all(|i| {
            let p = c.poset();
            p.upper_covers(i).len() + p.lower_covers(i).len() == 2
        }));
    }

    #[test]
    fn l3_to_k3_has_thirty_cells() {
        let (g, h) = (Graph::path(3), Graph::complete(3));
        let c = hom(&g, &h);
        assert_eq!(c.len(), 30);
        assert_eq!(c.cells(), brute_force(&g, &h).as_slice());
    }

    #[test]
    fn enumeration_order_is_lexicographic_and_matches_brute_force() {
        let looped = Graph::from_edges(3, &[(0, 0), (0, 1), (1, 2), (2, 2)]).unwrap();
        for (g, h) in [
            (Graph::star(2), Graph::complete(4)),
            (Graph::complete(2), looped.clone()),
            (looped.clone(), looped.clone()),
            (Graph::empty(2).unwrap(), Graph::path(3)),
        ] {
            let c = hom(&g, &h);
            assert_eq!(c.cells(), brute_force(&g, &h).as_slice());
            assert!(c.cells().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn empty_complexes() {
        let c = hom(&Graph::complete(3), &Graph::complete(2));
        assert!(c.is_empty());
        assert!(c.f_vector().is_empty());
        assert_eq!(serde_json::to_string(&c.to_json()).unwrap(), r#"{"elements":[],"covers":[]}"#);
        let point = hom(&Graph::empty(0).unwrap(), &Graph::complete(2));
        assert_eq!(point.f_vector(), vec![1]);
    }

    #[test]
    fn resource_limit_reports_partial_count() {
        let err = HomComplex::enumerate(&Graph::empty(3).unwrap(), &Graph::complete(3), 100).unwrap_err();
        match err {
            Error::ResourceLimit { limit, partial } => {
                assert_eq!(limit, 100);
                assert!(partial <= 100);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn labels_are_sorted_vertex_lists() {
        let c = hom(&Graph::path(3), &Graph::complete(3));
        let cell = HomCell::new(vec![0b001, 0b110, 0b001]);
        let i = c.find(&cell).unwrap();
        assert_eq!(c.poset().element(i).label, serde_json::json!([[0], [1, 2], [0]]));
        assert_eq!(c.poset().element(i).dim, 1);
    }

    #[test]
    fn zero_cells_are_homomorphisms() {
        let (g, h) = (Graph::path(3), Graph::complete(3));
        let maps = hom(&g, &h).vertices();
        assert_eq!(maps.len(), 12);
        for m in maps {
            assert!(GraphHomomorphism::new(g.clone(), h.clone(), m).is_ok());
        }
    }

    #[test]
    fn covariant_examples() {
        let (k2, l3) = (Graph::complete(2), Graph::path(3));
        let id = induced_covariant(&GraphHomomorphism::identity(&l3), &k2, DEFAULT_MAX_CELLS).unwrap();
        assert_eq!(id.map, PosetMap::identity(&id.source));

        let fold = l3.apply_fold(FoldWitness { v: 0, u: 2 }).unwrap();
        let f = induced_covariant(&fold.fold, &k2, DEFAULT_MAX_CELLS).unwrap();
        assert_eq!(f.source.len(), 6);
        assert_eq!(f.target.len(), 2);
        let mut hit: Vec<_> = f.map.images().to_vec();
        hit.sort_unstable();
        hit.dedup();
        assert_eq!(hit, vec![0, 1]);
        assert!(f.map.order_violation(&f.source, &f.target).unwrap().is_none());

        let i = induced_covariant(&fold.inclusion, &k2, DEFAULT_MAX_CELLS).unwrap();
        let mut imgs = i.map.images().to_vec();
        imgs.sort_unstable();
        imgs.dedup();
        assert_eq!(imgs.len(), 2);
        for &id in i.map.images() {
            let cell = i.target.cell(id as usize);
            assert_eq!(cell.dim(), 0);
            assert!(cell.sets().iter().all(|&s| s & 1 == 0));
        }
    }

    #[test]
    fn contravariant_examples() {
        let (k3, l3) = (Graph::complete(3), Graph::path(3));
        let id = induced_contravariant(&GraphHomomorphism::identity(&l3), &k3, DEFAULT_MAX_CELLS).unwrap();
        assert_eq!(id.map, PosetMap::identity(&id.source));

        let fold = l3.apply_fold(FoldWitness { v: 0, u: 2 }).unwrap();
        let i = induced_contravariant(&fold.inclusion, &k3, DEFAULT_MAX_CELLS).unwrap();
        assert_eq!((i.source.len(), i.target.len()), (30, 12));

        let f = induced_contravariant(&fold.fold, &k3, DEFAULT_MAX_CELLS).unwrap();
        assert_eq!((f.source.len(), f.target.len()), (12, 30));
        let mut imgs = f.map.images().to_vec();
        imgs.sort_unstable();
        imgs.dedup();
        assert_eq!(imgs.len(), 12);
        let expected: Vec<ElemId> = (0..30)
            .filter(|&j| {
                let c = f.target.cell(j);
                c.get(0) == c.get(2)
            })
            .map(|j| j as ElemId)
            .collect();
        assert_eq!(imgs, expected);
    }
}
