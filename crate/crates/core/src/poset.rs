//! Finite posets stored as Hasse diagrams, order complexes, face posets and
//! closure-operator checks.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// Stable identifier of a poset element. Survives subposet extraction.
pub type ElemId = u32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Element {
    pub id: ElemId,
    /// Intrinsic dimension, `-1` for abstract poset points.
    pub dim: i32,
    #[serde(default)]
    pub label: Value,
}

impl Element {
    pub fn point(id: ElemId) -> Self {
        Element { id, dim: -1, label: Value::Null }
    }
}

/// Read access to a finite poset by dense element index.
pub trait Poset {
    fn len(&self) -> usize;
    fn id(&self, index: usize) -> ElemId;
    fn index_of(&self, id: ElemId) -> Option<usize>;
    fn leq(&self, a: usize, b: usize) -> bool;
    fn upper_covers(&self, a: usize) -> &[usize];

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Transitive closure of the Hasse diagram, strict relations only.
#[derive(Debug)]
struct Reach {
    above: Vec<Vec<u32>>,
    below: Vec<Vec<u32>>,
}

/// A finite poset given by its cover relation.
#[derive(Debug)]
pub struct FacePoset {
    elements: Vec<Element>,
    index: HashMap<ElemId, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// Position of each element in a fixed linear extension.
    rank: Vec<usize>,
    reach: OnceLock<Reach>,
}

impl Clone for FacePoset {
    fn clone(&self) -> Self {
        FacePoset {
            elements: self.elements.clone(),
            index: self.index.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
            rank: self.rank.clone(),
            reach: OnceLock::new(),
        }
    }
}

impl PartialEq for FacePoset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.cover_ids() == other.cover_ids()
    }
}

impl FacePoset {
    /// Builds a poset from elements and cover pairs `(lower, upper)`.
    ///
    /// Rejects unknown or duplicate ids, cycles, and covers implied by transitivity.
    pub fn from_covers(elements: Vec<Element>, covers: &[(ElemId, ElemId)]) -> Result<Self> {
        let p = Self::from_covers_unchecked(elements, covers)?;
        for a in 0..p.len() {
            for &b in &p.up[a] {
                if p.up[a].iter().any(|&c| c != b && p.strictly_below(c, b)) {
                    return Err(Error::TransitiveCover(p.id(a), p.id(b)));
                }
            }
        }
        Ok(p)
    }

    /// Like [`from_covers`](Self::from_covers) but trusts that no cover is transitive.
    pub(crate) fn from_covers_unchecked(
        elements: Vec<Element>,
        covers: &[(ElemId, ElemId)],
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.id, i).is_some() {
                return Err(Error::DuplicateId(e.id));
            }
        }
        let n = elements.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(covers.len());
        for &(lo, hi) in covers {
            let a = *index.get(&lo).ok_or(Error::UnknownId(lo))?;
            let b = *index.get(&hi).ok_or(Error::UnknownId(hi))?;
            if a == b {
                return Err(Error::CyclicCovers(lo));
            }
            if seen.insert((a, b)) {
                up[a].push(b);
                down[b].push(a);
            }
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_unstable();
        }
        let rank = linear_extension(&up, &down).ok_or_else(|| {
            // Some element never reaches in-degree zero; report the smallest such id.
            let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
            let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
            while let Some(a) = stack.pop() {
                for &b in &up[a] {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        stack.push(b);
                    }
                }
            }
            let stuck = (0..n).filter(|&i| indeg[i] > 0).map(|i| elements[i].id).min();
            Error::CyclicCovers(stuck.unwrap_or_default())
        })?;
        Ok(FacePoset { elements, index, up, down, rank, reach: OnceLock::new() })
    }

    /// Builds the Hasse diagram of the strict order `less` on `elements`.
    ///
    /// `less` must be irreflexive and transitive; quadratic in the element count.
    pub fn from_order(elements: Vec<Element>, less: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = elements.len();
        let above: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).filter(|&b| less(a, b)).collect()).collect();
        let mut covers = Vec::new();
        for a in 0..n {
            for &b in &above[a] {
                if !above[a].iter().any(|&c| less(c, b)) {
                    covers.push((elements[a].id, elements[b].id));
                }
            }
        }
        Self::from_covers_unchecked(elements, &covers)
    }

    /// A chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let elements = (0..n as ElemId).map(Element::point).collect();
        let covers: Vec<_> = (1..n as ElemId).map(|i| (i - 1, i)).collect();
        Self::from_covers_unchecked(elements, &covers).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        let elements = (0..n as ElemId).map(Element::point).collect();
        Self::from_covers_unchecked(elements, &[]).expect("antichain is a poset")
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Element {
        &self.elements[index]
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.elements.iter().map(|e| e.id)
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.down[a]
    }

    /// Cover pairs as ids, sorted.
    pub fn cover_ids(&self) -> Vec<(ElemId, ElemId)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|a| self.up[a].iter().map(move |&b| (a, b)))
            .map(|(a, b)| (self.id(a), self.id(b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn cover_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.up[a].binary_search(&b).is_ok()
    }

    /// Position in a fixed linear extension: `a < b` implies `rank(a) < rank(b)`.
    pub fn rank(&self, a: usize) -> usize {
        self.rank[a]
    }

    fn reach(&self) -> &Reach {
        self.reach.get_or_init(|| {
            let n = self.len();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_unstable_by_key(|&i| self.rank[i]);
            let mut above: Vec<Vec<u32>> = vec![Vec::new(); n];
            for &a in order.iter().rev() {
                let mut acc: Vec<u32> = Vec::new();
                for &c in &self.up[a] {
                    acc.push(c as u32);
                    acc.extend_from_slice(&above[c]);
                }
                acc.sort_unstable();
                acc.dedup();
                above[a] = acc;
            }
            let mut below: Vec<Vec<u32>> = vec![Vec::new(); n];
            for (a, ups) in above.iter().enumerate() {
                for &b in ups {
                    below[b as usize].push(a as u32);
                }
            }
            Reach { above, below }
        })
    }

    pub fn strictly_below(&self, a: usize, b: usize) -> bool {
        a != b && self.reach().above[a].binary_search(&(b as u32)).is_ok()
    }

    /// Indices strictly above `a`, ascending.
    pub fn strict_up_set(&self, a: usize) -> &[u32] {
        &self.reach().above[a]
    }

    /// Indices strictly below `a`, ascending.
    pub fn strict_down_set(&self, a: usize) -> &[u32] {
        &self.reach().below[a]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    /// The same elements with the order reversed.
    pub fn dual(&self) -> FacePoset {
        let covers: Vec<_> = self.cover_ids().into_iter().map(|(a, b)| (b, a)).collect();
        Self::from_covers_unchecked(self.elements.clone(), &covers).expect("dual of a poset")
    }

    /// Induced subposet on the indices where `keep` holds, ids preserved.
    pub fn subposet(&self, keep: impl Fn(usize) -> bool) -> FacePoset {
        let kept: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        let mut mask = vec![false; self.len()];
        for &i in &kept {
            mask[i] = true;
        }
        let mut covers = Vec::new();
        for &a in &kept {
            // Restricted covers are covers; elements reached only through removed
            // elements need the transitive closure.
            let all_covers_kept = self.up[a].iter().all(|&c| mask[c]);
            if all_covers_kept {
                covers.extend(self.up[a].iter().map(|&b| (self.id(a), self.id(b))));
                continue;
            }
            let candidates: Vec<usize> = self
                .strict_up_set(a)
                .iter()
                .map(|&b| b as usize)
                .filter(|&b| mask[b])
                .collect();
            for &b in &candidates {
                if !candidates.iter().any(|&c| c != b && self.strictly_below(c, b)) {
                    covers.push((self.id(a), self.id(b)));
                }
            }
        }
        let elements = kept.iter().map(|&i| self.elements[i].clone()).collect();
        Self::from_covers_unchecked(elements, &covers).expect("subposet of a poset")
    }

    /// Calls `visit` on every nonempty chain inside `set`, each listed bottom to top.
    ///
    /// `set` is a membership mask over indices.
    pub fn for_each_chain_in(&self, set: &[bool], mut visit: impl FnMut(&[usize])) {
        let mut chain = Vec::new();
        for a in 0..self.len() {
            if set[a] {
                chain.push(a);
                self.extend_chains(set, &mut chain, &mut visit);
                chain.pop();
            }
        }
    }

    fn extend_chains(&self, set: &[bool], chain: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        visit(chain);
        let top = *chain.last().expect("nonempty chain");
        let reach = self.reach();
        for &b in &reach.above[top] {
            let b = b as usize;
            if set[b] {
                chain.push(b);
                self.extend_chains(set, chain, visit);
                chain.pop();
            }
        }
    }

    /// Number of nonempty chains, without materializing them.
    pub fn chain_count(&self) -> u128 {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_unstable_by_key(|&i| self.rank[i]);
        let mut ending = vec![0u128; self.len()];
        let reach = self.reach();
        for &a in &order {
            ending[a] = 1 + reach.below[a].iter().map(|&b| ending[b as usize]).sum::<u128>();
        }
        ending.iter().sum()
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.elements.clone(),
            covers: self.cover_ids().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_json(json: PosetJson) -> Result<Self> {
        let covers: Vec<_> = json.covers.iter().map(|&[a, b]| (a, b)).collect();
        Self::from_covers(json.elements, &covers)
    }
}

impl Poset for FacePoset {
    fn len(&self) -> usize {
        self.elements.len()
    }

    fn id(&self, index: usize) -> ElemId {
        self.elements[index].id
    }

    fn index_of(&self, id: ElemId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.strictly_below(a, b)
    }

    fn upper_covers(&self, a: usize) -> &[usize] {
        &self.up[a]
    }
}

/// Kahn's algorithm, smallest index first. `None` if the covers contain a cycle.
fn linear_extension(up: &[Vec<usize>], down: &[Vec<usize>]) -> Option<Vec<usize>> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let n = up.len();
    let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
    let mut rank = vec![usize::MAX; n];
    let mut next = 0;
    while let Some(Reverse(a)) = heap.pop() {
        rank[a] = next;
        next += 1;
        for &b in &up[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                heap.push(Reverse(b));
            }
        }
    }
    (next == n).then_some(rank)
}

/// Serialized form: `{"elements":[{"id","dim","label"}],"covers":[[lo,hi]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<Element>,
    pub covers: Vec<[ElemId; 2]>,
}

/// An order-preserving map between posets, stored as the image id of each
/// source element in source index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    images: Vec<ElemId>,
}

impl PosetMap {
    pub fn new(images: Vec<ElemId>) -> Self {
        PosetMap { images }
    }

    pub fn identity<P: Poset>(p: &P) -> Self {
        PosetMap { images: (0..p.len()).map(|i| p.id(i)).collect() }
    }

    /// From explicit `(source id, image id)` pairs covering every element of `source`.
    pub fn from_pairs<P: Poset>(source: &P, pairs: &[(ElemId, ElemId)]) -> Result<Self> {
        let mut images: Vec<Option<ElemId>> = vec![None; source.len()];
        for &(from, to) in pairs {
            let i = source.index_of(from).ok_or(Error::UnknownId(from))?;
            images[i] = Some(to);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| img.ok_or(Error::Contract(format!("map undefined on {}", source.id(i)))))
            .collect::<Result<_>>()?;
        Ok(PosetMap { images })
    }

    pub fn images(&self) -> &[ElemId] {
        &self.images
    }

    pub fn image(&self, source_index: usize) -> ElemId {
        self.images[source_index]
    }

    pub fn pairs<P: Poset>(&self, source: &P) -> Vec<(ElemId, ElemId)> {
        (0..source.len()).map(|i| (source.id(i), self.images[i])).collect()
    }

    /// `second ∘ self`, where `second` is defined on `middle`.
    pub fn then<P: Poset>(&self, middle: &P, second: &PosetMap) -> Result<PosetMap> {
        let images = self
            .images
            .iter()
            .map(|&id| {
                let j = middle.index_of(id).ok_or(Error::UnknownId(id))?;
                Ok(second.images[j])
            })
            .collect::<Result<_>>()?;
        Ok(PosetMap { images })
    }

    /// The map restricted to the elements of a subposet (ids preserved).
    pub fn restrict<P: Poset, Q: Poset>(&self, source: &P, sub: &Q) -> Result<PosetMap> {
        let images = (0..sub.len())
            .map(|i| {
                let id = sub.id(i);
                let j = source.index_of(id).ok_or(Error::UnknownId(id))?;
                Ok(self.images[j])
            })
            .collect::<Result<_>>()?;
        Ok(PosetMap { images })
    }

    /// Whether `a <= b` implies `f(a) <= f(b)`, checked on covers.
    /// Returns the lower end of a violating cover.
    pub fn order_violation<P: Poset, Q: Poset>(&self, source: &P, target: &Q) -> Result<Option<ElemId>> {
        for a in 0..source.len() {
            let fa = target.index_of(self.images[a]).ok_or(Error::UnknownId(self.images[a]))?;
            for &b in source.upper_covers(a) {
                let fb = target.index_of(self.images[b]).ok_or(Error::UnknownId(self.images[b]))?;
                if !target.leq(fa, fb) {
                    return Ok(Some(source.id(a)));
                }
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `f(x) >= x`.
    Ascending,
    /// `f(x) <= x`.
    Descending,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Ascending => Direction::Descending,
            Direction::Descending => Direction::Ascending,
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "ascending" | "asc" => Ok(Direction::Ascending),
            "descending" | "desc" => Ok(Direction::Descending),
            other => Err(format!("unknown direction `{other}`")),
        }
    }
}

/// Outcome of checking the closure-operator laws; each field holds a
/// counterexample id when the law fails.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub order_preserving: Option<ElemId>,
    pub idempotent: Option<ElemId>,
    pub comparable: Option<ElemId>,
}

impl ClosureReport {
    pub fn holds(&self) -> bool {
        self.order_preserving.is_none() && self.idempotent.is_none() && self.comparable.is_none()
    }

    /// The first failing law as an error.
    pub fn into_result(self) -> Result<()> {
        let failures = [
            ("order-preserving", self.order_preserving),
            ("idempotent", self.idempotent),
            ("comparison", self.comparable),
        ];
        match failures.into_iter().find_map(|(law, w)| w.map(|w| (law, w))) {
            Some((law, witness)) => Err(Error::ClosureLaw { law, witness }),
            None => Ok(()),
        }
    }
}

/// Checks that `f` is an order-preserving idempotent endomap with
/// `f(x) <= x` (descending) or `f(x) >= x` (ascending).
pub fn verify_closure_operator<P: Poset>(p: &P, f: &PosetMap, direction: Direction) -> Result<ClosureReport> {
    if f.images.len() != p.len() {
        return Err(Error::MapLength { got: f.images.len(), expected: p.len() });
    }
    let fx: Vec<usize> = f
        .images
        .iter()
        .map(|&id| p.index_of(id).ok_or(Error::UnknownId(id)))
        .collect::<Result<_>>()?;
    let mut report = ClosureReport { order_preserving: f.order_violation(p, p)?, ..Default::default() };
    report.idempotent = (0..p.len()).find(|&x| fx[fx[x]] != fx[x]).map(|x| p.id(x));
    report.comparable = (0..p.len())
        .find(|&x| match direction {
            Direction::Descending => !p.leq(fx[x], x),
            Direction::Ascending => !p.leq(x, fx[x]),
        })
        .map(|x| p.id(x));
    Ok(report)
}

/// The induced subposet on the image of an endomap, ids preserved.
pub fn image_subposet(p: &FacePoset, f: &PosetMap) -> Result<FacePoset> {
    let mut keep = vec![false; p.len()];
    for &id in f.images() {
        keep[p.index_of(id).ok_or(Error::UnknownId(id))?] = true;
    }
    Ok(p.subposet(|i| keep[i]))
}

/// The simplicial complex of all nonempty chains; vertices are element ids.
pub fn order_complex(p: &FacePoset) -> SimplicialComplex {
    let all = vec![true; p.len()];
    let mut simplices = Vec::new();
    p.for_each_chain_in(&all, |chain| {
        let mut s: Vec<ElemId> = chain.iter().map(|&i| p.id(i)).collect();
        s.sort_unstable();
        simplices.push(s);
    });
    let vertices = p.ids().collect();
    SimplicialComplex::from_closed_simplices(vertices, simplices)
}

/// The poset of simplices under inclusion. Element ids are positions in
/// the complex's canonical order (by dimension, then lexicographic), labels
/// are the vertex lists.
pub fn face_poset(x: &SimplicialComplex) -> FacePoset {
    let elements = (0..x.len())
        .map(|i| {
            let s = x.simplex(i);
            Element { id: i as ElemId, dim: s.len() as i32 - 1, label: Value::from(s.to_vec()) }
        })
        .collect();
    let mut covers = Vec::new();
    for i in 0..x.len() {
        for face in x.facets_of(i) {
            covers.push((face as ElemId, i as ElemId));
        }
    }
    FacePoset::from_covers_unchecked(elements, &covers).expect("face poset of a complex")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_poset() -> FacePoset {
        // a=0 < b=1, a=0 < c=2
        FacePoset::from_covers((0..3).map(Element::point).collect(), &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn order_complex_examples() {
        assert_eq!(order_complex(&FacePoset::antichain(3)).f_vector(), vec![3]);
        assert_eq!(order_complex(&FacePoset::chain(3)).f_vector(), vec![3, 3, 1]);
        assert_eq!(order_complex(&v_poset()).f_vector(), vec![3, 2]);
        assert!(order_complex(&FacePoset::antichain(0)).is_empty());
    }

    #[test]
    fn face_poset_examples() {
        let edge = SimplicialComplex::from_facets(vec![0, 1], &[vec![0, 1]]);
        let p = face_poset(&edge);
        assert_eq!(p.len(), 3);
        assert_eq!(p.minimal_elements().len(), 2);
        assert_eq!(p.maximal_elements().len(), 1);

        let boundary =
            SimplicialComplex::from_facets(vec![0, 1, 2], &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        let p = face_poset(&boundary);
        assert_eq!(p.len(), 6);
        assert_eq!(p.cover_count(), 6);
        assert!((0..6).all(|i| p.upper_covers(i).len() + p.lower_covers(i).len() == 2));

        let triangle = SimplicialComplex::from_facets(vec![0, 1, 2], &[vec![0, 1, 2]]);
        assert_eq!(order_complex(&face_poset(&triangle)).f_vector(), vec![7, 12, 6]);
    }

    #[test]
    fn rejects_malformed_covers() {
        let pts = || (0..3).map(Element::point).collect::<Vec<_>>();
        assert_eq!(
            FacePoset::from_covers(pts(), &[(0, 1), (1, 2), (2, 0)]).unwrap_err(),
            Error::CyclicCovers(0)
        );
        assert_eq!(
            FacePoset::from_covers(pts(), &[(0, 1), (1, 2), (0, 2)]).unwrap_err(),
            Error::TransitiveCover(0, 2)
        );
        assert_eq!(FacePoset::from_covers(pts(), &[(0, 7)]).unwrap_err(), Error::UnknownId(7));
        let dup = vec![Element::point(1), Element::point(1)];
        assert_eq!(FacePoset::from_covers(dup, &[]).unwrap_err(), Error::DuplicateId(1));
    }

    #[test]
    fn closure_operator_examples() {
        let chain = FacePoset::chain(3);
        for dir in [Direction::Ascending, Direction::Descending] {
            let id = PosetMap::identity(&chain);
            assert!(verify_closure_operator(&chain, &id, dir).unwrap().holds());
        }
        let good = PosetMap::new(vec![0, 1, 1]);
        assert!(verify_closure_operator(&chain, &good, Direction::Descending).unwrap().holds());
        let report = verify_closure_operator(&chain, &good, Direction::Ascending).unwrap();
        assert_eq!(report.comparable, Some(2));

        let bad = PosetMap::new(vec![0, 0, 1]);
        let report = verify_closure_operator(&chain, &bad, Direction::Descending).unwrap();
        assert_eq!(report.idempotent, Some(2));
        assert_eq!(report.order_preserving, None);
        assert_eq!(
            report.into_result().unwrap_err(),
            Error::ClosureLaw { law: "idempotent", witness: 2 }
        );
    }

    #[test]
    fn order_violation_detected() {
        // b -> b, c -> a on {a<b, a<c}, plus a -> c: a<b but f(a)=c, f(b)=b incomparable.
        let p = v_poset();
        let f = PosetMap::new(vec![2, 1, 2]);
        let report = verify_closure_operator(&p, &f, Direction::Ascending).unwrap();
        assert_eq!(report.order_preserving, Some(0));
    }

    #[test]
    fn image_subposet_examples() {
        let chain = FacePoset::chain(3);
        let whole = image_subposet(&chain, &PosetMap::identity(&chain)).unwrap();
        assert_eq!(whole, chain);
        let img = image_subposet(&chain, &PosetMap::new(vec![0, 1, 1])).unwrap();
        assert_eq!(img, FacePoset::chain(2));
    }

    #[test]
    fn subposet_recovers_covers_through_removed_elements() {
        let chain = FacePoset::chain(4);
        let sub = chain.subposet(|i| i != 1 && i != 2);
        assert_eq!(sub.cover_ids(), vec![(0, 3)]);
        let ids: Vec<_> = sub.ids().collect();
        assert_eq!(ids, vec![0, 3]);
    }

    #[test]
    fn chain_count_matches_order_complex() {
        let p = v_poset();
        assert_eq!(p.chain_count(), 5);
        let t = face_poset(&SimplicialComplex::from_facets(vec![0, 1, 2], &[vec![0, 1, 2]]));
        assert_eq!(t.chain_count(), 25);
    }

    #[test]
    fn json_round_trip() {
        let p = v_poset();
        let text = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(text, r#"{"elements":[{"id":0,"dim":-1,"label":null},{"id":1,"dim":-1,"label":null},{"id":2,"dim":-1,"label":null}],"covers":[[0,1],[0,2]]}"#);
        let back = FacePoset::from_json(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
