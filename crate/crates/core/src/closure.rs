//! Collapses induced by closure operators.
//!
//! A descending closure operator `φ` on `P` yields a sequence of elementary
//! collapses from `Δ(P)` onto `Δ(φ(P))`: take a minimal `x ∉ φ(P)`; its link
//! is a cone with apex `φ(x)`, so the pairs `(σ ∪ {x}, σ ∪ {x, φ(x)})` for
//! `σ ∈ Δ(P_{>x}) * Δ(P_{<φ(x)})`, largest `σ` first, remove `x`. Repeat
//! until only the image is left. Ascending operators are handled order-dually.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{order_complex, verify_closure_operator, Direction, ElemId, Element, FacePoset, Poset, PosetMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Steps are simplices of an order complex.
    Simplicial,
    /// Steps are cell ids of a face poset.
    Cw,
}

/// A cell of the complex being collapsed: a poset element id in CW mode,
/// a sorted vertex tuple in simplicial mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Face {
    Cell(ElemId),
    Simplex(Vec<ElemId>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseStep {
    pub free: Face,
    pub coface: Face,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseSequence {
    pub mode: Mode,
    pub steps: Vec<CollapseStep>,
}

impl CollapseSequence {
    pub fn new(mode: Mode) -> Self {
        CollapseSequence { mode, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push_cells(&mut self, free: ElemId, coface: ElemId) {
        self.steps.push(CollapseStep { free: Face::Cell(free), coface: Face::Cell(coface) });
    }

    pub fn push_simplices(&mut self, free: Vec<ElemId>, coface: Vec<ElemId>) {
        self.steps.push(CollapseStep { free: Face::Simplex(free), coface: Face::Simplex(coface) });
    }

    /// Appends `other`; both must use the same mode.
    pub fn extend(&mut self, other: CollapseSequence) -> Result<()> {
        if other.mode != self.mode {
            return Err(Error::Contract("cannot concatenate sequences of different modes".into()));
        }
        self.steps.extend(other.steps);
        Ok(())
    }

    /// The pairs as a matching, for CW-mode sequences.
    pub fn as_matching(&self) -> Result<Vec<(ElemId, ElemId)>> {
        self.steps
            .iter()
            .map(|s| match (&s.free, &s.coface) {
                (Face::Cell(a), Face::Cell(b)) => Ok((*a, *b)),
                _ => Err(Error::Contract("matching view needs a CW-mode sequence".into())),
            })
            .collect()
    }
}

/// Matched cover pairs `(lower, upper)` and the unmatched (critical) elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub pairs: Vec<(ElemId, ElemId)>,
    pub critical: Vec<ElemId>,
}

/// Reusable membership buffer over poset indices.
struct Mask {
    flags: Vec<bool>,
    set: Vec<usize>,
}

impl Mask {
    fn new(n: usize) -> Self {
        Mask { flags: vec![false; n], set: Vec::new() }
    }

    fn load(&mut self, members: impl Iterator<Item = usize>) {
        for &i in &self.set {
            self.flags[i] = false;
        }
        self.set.clear();
        for i in members {
            self.flags[i] = true;
            self.set.push(i);
        }
    }
}

/// Chains (each bottom to top) inside the loaded mask, including the empty chain.
fn chains(p: &FacePoset, mask: &Mask) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut sorted = mask.set.clone();
    sorted.sort_unstable();
    let mut stack = Vec::new();
    for &a in &sorted {
        stack.push(a);
        grow(p, &mask.flags, &mut stack, &mut out);
        stack.pop();
    }
    out
}

fn grow(p: &FacePoset, flags: &[bool], chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(chain.clone());
    let top = *chain.last().expect("nonempty");
    for &b in p.strict_up_set(top) {
        let b = b as usize;
        if flags[b] {
            chain.push(b);
            grow(p, flags, chain, out);
            chain.pop();
        }
    }
}

fn resolve(p: &FacePoset, phi: &PosetMap) -> Result<Vec<usize>> {
    phi.images().iter().map(|&id| p.index_of(id).ok_or(Error::UnknownId(id))).collect()
}

/// Order of removal: repeatedly the smallest-id element of `P ∖ φ(P)` that is
/// minimal (descending) or maximal (ascending) among the remaining ones.
fn removal_order(p: &FacePoset, in_image: &[bool], direction: Direction) -> Vec<usize> {
    let outside: Vec<usize> = (0..p.len()).filter(|&i| !in_image[i]).collect();
    let blockers = |x: usize| -> &[u32] {
        match direction {
            Direction::Descending => p.strict_down_set(x),
            Direction::Ascending => p.strict_up_set(x),
        }
    };
    let dependents = |x: usize| -> &[u32] {
        match direction {
            Direction::Descending => p.strict_up_set(x),
            Direction::Ascending => p.strict_down_set(x),
        }
    };
    let mut pending = vec![0usize; p.len()];
    let mut ready = BTreeSet::new();
    for &x in &outside {
        pending[x] = blockers(x).iter().filter(|&&y| !in_image[y as usize]).count();
        if pending[x] == 0 {
            ready.insert((p.id(x), x));
        }
    }
    let mut order = Vec::with_capacity(outside.len());
    while let Some((_, x)) = ready.pop_first() {
        order.push(x);
        for &y in dependents(x) {
            let y = y as usize;
            if !in_image[y] {
                pending[y] -= 1;
                if pending[y] == 0 {
                    ready.insert((p.id(y), y));
                }
            }
        }
    }
    order
}

/// Elementary collapses of `Δ(p)` onto `Δ(φ(p))` for a closure operator `phi`.
pub fn collapse_sequence_from_closure(p: &FacePoset, phi: &PosetMap, direction: Direction) -> Result<CollapseSequence> {
    verify_closure_operator(p, phi, direction)?.into_result()?;
    let fx = resolve(p, phi)?;
    let mut in_image = vec![false; p.len()];
    for &y in &fx {
        in_image[y] = true;
    }
    let mut alive = vec![true; p.len()];
    let mut lower = Mask::new(p.len());
    let mut upper = Mask::new(p.len());
    let mut seq = CollapseSequence::new(Mode::Simplicial);
    for x in removal_order(p, &in_image, direction) {
        let apex = fx[x];
        let (below, above) = match direction {
            Direction::Descending => (p.strict_down_set(apex), p.strict_up_set(x)),
            Direction::Ascending => (p.strict_down_set(x), p.strict_up_set(apex)),
        };
        lower.load(below.iter().map(|&i| i as usize).filter(|&i| alive[i]));
        upper.load(above.iter().map(|&i| i as usize).filter(|&i| alive[i]));
        let lows = chains(p, &lower);
        let highs = chains(p, &upper);
        let mut pairs: Vec<(Vec<ElemId>, Vec<ElemId>)> = Vec::with_capacity(lows.len() * highs.len());
        for lo in &lows {
            for hi in &highs {
                let mut free: Vec<ElemId> = lo.iter().chain(hi).map(|&i| p.id(i)).collect();
                free.push(p.id(x));
                free.sort_unstable();
                let mut coface = free.clone();
                let pos = coface.binary_search(&p.id(apex)).unwrap_err();
                coface.insert(pos, p.id(apex));
                pairs.push((free, coface));
            }
        }
        pairs.sort_unstable_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        for (free, coface) in pairs {
            seq.push_simplices(free, coface);
        }
        alive[x] = false;
    }
    Ok(seq)
}

/// The acyclic matching on the chains of `p` given by a descending closure
/// operator. Ids refer to `face_poset(&order_complex(p))`.
///
/// For a chain `x_1 < ... < x_k` not inside `φ(P)`, let `x_i` be its lowest
/// element outside the image. If `φ(x_i) = x_{i-1}` the chain is matched with
/// the chain missing `x_{i-1}`; otherwise with the chain gaining `φ(x_i)`.
pub fn morse_matching_from_closure(p: &FacePoset, phi: &PosetMap) -> Result<Matching> {
    verify_closure_operator(p, phi, Direction::Descending)?.into_result()?;
    let fx = resolve(p, phi)?;
    let mut in_image = vec![false; p.len()];
    for &y in &fx {
        in_image[y] = true;
    }
    let delta = order_complex(p);
    let mut matching = Matching::default();
    // Whether the chain at canonical index k is the upper end of a pair.
    let mut upper_end = vec![false; delta.len()];
    for k in 0..delta.len() {
        let mut chain: Vec<usize> =
            delta.simplex(k).iter().map(|&id| p.index_of(id).expect("vertex of Δ(p)")).collect();
        chain.sort_unstable_by_key(|&i| p.rank(i));
        let Some(i) = chain.iter().position(|&y| !in_image[y]) else {
            matching.critical.push(k as ElemId);
            continue;
        };
        let top = chain[i];
        if i > 0 && fx[top] == chain[i - 1] {
            upper_end[k] = true;
            continue;
        }
        let mut grown: Vec<ElemId> = delta.simplex(k).to_vec();
        let pos = grown.binary_search(&p.id(fx[top])).unwrap_err();
        grown.insert(pos, p.id(fx[top]));
        let partner = delta
            .index_of(&grown)
            .ok_or_else(|| Error::Contract(format!("chain {grown:?} is missing from Δ(P)")))?;
        matching.pairs.push((k as ElemId, partner as ElemId));
    }
    let mut uppers: Vec<ElemId> = matching.pairs.iter().map(|&(_, b)| b).collect();
    uppers.sort_unstable();
    let flagged: Vec<ElemId> = (0..delta.len()).filter(|&k| upper_end[k]).map(|k| k as ElemId).collect();
    if uppers != flagged {
        return Err(Error::Contract("matching rule is not an involution on Bd P".into()));
    }
    Ok(matching)
}

/// Result of the acyclicity check; `cycle` is a certificate when cyclic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcyclicityReport {
    pub acyclic: bool,
    pub cycle: Option<Vec<ElemId>>,
}

/// Checks that `pairs` is a matching of covers whose modified Hasse diagram
/// (matched covers pointing up, all others down) has no directed cycle.
pub fn verify_acyclic_matching(p: &FacePoset, pairs: &[(ElemId, ElemId)]) -> Result<AcyclicityReport> {
    let n = p.len();
    let mut partner_up = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(lo, hi) in pairs {
        let a = p.index_of(lo).ok_or(Error::UnknownId(lo))?;
        let b = p.index_of(hi).ok_or(Error::UnknownId(hi))?;
        if !p.is_cover(a, b) {
            return Err(Error::NotACover(lo, hi));
        }
        for (i, id) in [(a, lo), (b, hi)] {
            if std::mem::replace(&mut used[i], true) {
                return Err(Error::NotAMatching(id));
            }
        }
        partner_up[a] = b;
    }
    // Out-neighbors: matched upper partner, or every lower cover except a matched one.
    let successors = |a: usize| -> Vec<usize> {
        if partner_up[a] != usize::MAX {
            return vec![partner_up[a]];
        }
        p.lower_covers(a).iter().copied().filter(|&c| partner_up[c] != a).collect()
    };
    // Iterative three-color DFS.
    let mut color = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(root, successors(root), 0)];
        color[root] = 1;
        while let Some((node, succ, pos)) = stack.last_mut() {
            if *pos == succ.len() {
                color[*node] = 2;
                stack.pop();
                continue;
            }
            let next = succ[*pos];
            *pos += 1;
            let node = *node;
            match color[next] {
                0 => {
                    color[next] = 1;
                    parent[next] = node;
                    stack.push((next, successors(next), 0));
                }
                1 => {
                    let mut cycle = vec![p.id(next)];
                    let mut cur = node;
                    while cur != next {
                        cycle.push(p.id(cur));
                        cur = parent[cur];
                    }
                    cycle[1..].reverse();
                    return Ok(AcyclicityReport { acyclic: false, cycle: Some(cycle) });
                }
                _ => {}
            }
        }
    }
    Ok(AcyclicityReport { acyclic: true, cycle: None })
}

/// Disconnected graphs on `n` labeled vertices with at least one edge, under
/// edge inclusion, and the ascending closure operator replacing a graph by
/// the union of cliques on its connected components.
///
/// Element ids are edge bitmasks over the pairs `(i, j)`, `i < j`, in
/// lexicographic order; labels are edge lists.
pub fn disconnected_graph_fixture(n: usize) -> Result<(FacePoset, PosetMap)> {
    if !(3..=6).contains(&n) {
        return Err(Error::Guard { what: "vertex count", got: n, lo: 3, hi: 6 });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let components = |mask: u32| -> Vec<usize> {
        let mut comp: Vec<usize> = (0..n).collect();
        fn root(comp: &mut [usize], mut x: usize) -> usize {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        }
        for (e, &(i, j)) in pairs.iter().enumerate() {
            if mask >> e & 1 == 1 {
                let (a, b) = (root(&mut comp, i), root(&mut comp, j));
                comp[a.max(b)] = a.min(b);
            }
        }
        (0..n).map(|x| root(&mut comp, x)).collect()
    };
    let mut members = Vec::new();
    let mut closure = Vec::new();
    for mask in 1u32..(1 << pairs.len()) {
        let comp = components(mask);
        if comp.iter().all(|&c| c == 0) {
            continue;
        }
        let cliques = pairs
            .iter()
            .enumerate()
            .filter(|&(_, &(i, j))| comp[i] == comp[j])
            .fold(0u32, |acc, (e, _)| acc | 1 << e);
        members.push(mask);
        closure.push(cliques);
    }
    let present: std::collections::HashSet<u32> = members.iter().copied().collect();
    let mut covers = Vec::new();
    for &mask in &members {
        for e in 0..pairs.len() {
            let bigger = mask | 1 << e;
            if bigger != mask && present.contains(&bigger) {
                covers.push((mask, bigger));
            }
        }
    }
    let elements = members
        .iter()
        .map(|&mask| {
            let edges: Vec<[usize; 2]> = pairs
                .iter()
                .enumerate()
                .filter(|&(e, _)| mask >> e & 1 == 1)
                .map(|(_, &(i, j))| [i, j])
                .collect();
            Element { id: mask, dim: -1, label: serde_json::json!(edges) }
        })
        .collect();
    let poset = FacePoset::from_covers_unchecked(elements, &covers)?;
    Ok((poset, PosetMap::new(closure)))
}
