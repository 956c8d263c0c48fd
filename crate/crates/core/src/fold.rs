//! Collapses induced by a fold `G -> G - v` in either argument of `Hom`.
//!
//! First argument: `𝒫(i_H)` factors as `β ∘ α` with `α` an ascending closure
//! operator on `𝒫(Hom(G, H))` and `β` a descending one on its image, so the
//! barycentric subdivision collapses in two closure-operator stages.
//!
//! Second argument: cells of `Hom(H, G)` that use `v` are paired directly by
//! adding `u` at the first vertex (in a fixed order of `V(H)`) whose set
//! contains `v`; the pairs are removed in lexicographic order of
//! `(position, -dim)`, leaving `Hom(H, G - v)`.

use serde::{Deserialize, Serialize};

use crate::closure::{collapse_sequence_from_closure, CollapseSequence, Face, Mode};
use crate::error::{Error, Result};
use crate::graph::{Fold, FoldWitness, Graph, VertexSet};
use crate::hom::{contravariant_map, covariant_map, HomCell, HomComplex};
use crate::poset::{order_complex, Direction, ElemId, FacePoset, Poset, PosetMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    First,
    Second,
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "first" => Ok(Side::First),
            "second" => Ok(Side::Second),
            other => Err(format!("unknown side `{other}`")),
        }
    }
}

/// A collapse sequence realizing a fold, together with what it should leave.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PlanJson", from = "PlanJson")]
pub struct FoldCollapsePlan {
    pub side: Side,
    pub witness: FoldWitness,
    /// Order of `V(H)` used to pick the pairing vertex; empty on the first side.
    pub vertex_order: Vec<usize>,
    pub sequence: CollapseSequence,
    /// Simplices (first side) or cell ids (second side) of the target.
    pub retained: Vec<Face>,
}

#[derive(Serialize, Deserialize)]
struct PlanJson {
    side: Side,
    v: usize,
    u: usize,
    vertex_order: Vec<usize>,
    sequence: CollapseSequence,
    retained: Vec<Face>,
}

impl From<FoldCollapsePlan> for PlanJson {
    fn from(p: FoldCollapsePlan) -> Self {
        PlanJson {
            side: p.side,
            v: p.witness.v,
            u: p.witness.u,
            vertex_order: p.vertex_order,
            sequence: p.sequence,
            retained: p.retained,
        }
    }
}

impl From<PlanJson> for FoldCollapsePlan {
    fn from(p: PlanJson) -> Self {
        FoldCollapsePlan {
            side: p.side,
            witness: FoldWitness { v: p.v, u: p.u },
            vertex_order: p.vertex_order,
            sequence: p.sequence,
            retained: p.retained,
        }
    }
}

fn violation(what: &str, cell: &HomCell) -> Error {
    Error::Contract(format!("fold-witness violation: {what} of {} is not a cell", cell.label()))
}

fn lookup(hom: &HomComplex, cell: HomCell, what: &str, from: &HomCell) -> Result<ElemId> {
    hom.find(&cell).map(|j| j as ElemId).ok_or_else(|| violation(what, from))
}

/// `α` on `𝒫(Hom(G, H))`, its image `X = {η : η(v) ⊇ η(u)}` and `β` on `X`.
#[derive(Clone, Debug)]
pub struct AlphaBeta {
    pub alpha: PosetMap,
    pub x: FacePoset,
    pub beta: PosetMap,
}

/// `α` sets `η(v) ← η(u) ∪ η(v)`; `β` sets `η(v) ← η(u)`.
pub fn alpha_beta_maps(hom: &HomComplex, w: FoldWitness) -> Result<AlphaBeta> {
    hom.source().check_witness(w)?;
    let FoldWitness { v, u } = w;
    let alpha = hom
        .cells()
        .iter()
        .map(|c| lookup(hom, c.with(v, c.get(u) | c.get(v)), "α", c))
        .collect::<Result<Vec<_>>>()?;
    let x = hom.poset().subposet(|i| {
        let c = hom.cell(i);
        c.get(u) & !c.get(v) == 0
    });
    let beta = (0..x.len())
        .map(|k| {
            let c = hom.cell(x.id(k) as usize);
            lookup(hom, c.with(v, c.get(u)), "β", c)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlphaBeta { alpha: PosetMap::new(alpha), x, beta: PosetMap::new(beta) })
}

/// Cells with `η(v) = η(u)`, identified with `𝒫(Hom(G - v, H))`.
pub fn first_arg_target(hom: &HomComplex, w: FoldWitness) -> FacePoset {
    hom.poset().subposet(|i| {
        let c = hom.cell(i);
        c.get(w.u) == c.get(w.v)
    })
}

/// Collapses of `Bd Hom(G, H)` onto `Bd Hom(G - v, H)`, on an enumerated `hom`.
pub fn first_arg_plan(hom: &HomComplex, w: FoldWitness) -> Result<FoldCollapsePlan> {
    let ab = alpha_beta_maps(hom, w)?;
    let mut sequence = collapse_sequence_from_closure(hom.poset(), &ab.alpha, Direction::Ascending)?;
    sequence.extend(collapse_sequence_from_closure(&ab.x, &ab.beta, Direction::Descending)?)?;
    let retained = order_complex(&first_arg_target(hom, w)).iter().map(|s| Face::Simplex(s.to_vec())).collect();
    Ok(FoldCollapsePlan { side: Side::First, witness: w, vertex_order: Vec::new(), sequence, retained })
}

/// Enumerates `Hom(g, h)` and plans the first-argument collapse for `w`.
pub fn first_arg_collapse(g: &Graph, w: FoldWitness, h: &Graph, max_cells: usize) -> Result<(HomComplex, FoldCollapsePlan)> {
    g.check_witness(w)?;
    let hom = HomComplex::enumerate(g, h, max_cells)?;
    let plan = first_arg_plan(&hom, w)?;
    Ok((hom, plan))
}

fn check_order(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &x in order {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(Error::Contract(format!("vertex order {order:?} is not a permutation of 0..{n}")));
        }
    }
    if order.len() != n {
        return Err(Error::Contract(format!("vertex order {order:?} is not a permutation of 0..{n}")));
    }
    Ok(())
}

/// Position in `order` of the first vertex whose set contains `v`.
fn first_hit(cell: &HomCell, order: &[usize], v: usize) -> Option<usize> {
    order.iter().position(|&x| cell.get(x) >> v & 1 == 1)
}

/// Direct elementary collapses of `Hom(H, G)` onto `Hom(H, G - v)`, on an
/// enumerated `hom = Hom(H, G)`.
pub fn second_arg_plan(hom: &HomComplex, w: FoldWitness, vertex_order: &[usize]) -> Result<FoldCollapsePlan> {
    hom.target().check_witness(w)?;
    check_order(vertex_order, hom.source().n())?;
    let FoldWitness { v, u } = w;
    let mut pairs: Vec<(usize, std::cmp::Reverse<usize>, ElemId, ElemId)> = Vec::new();
    let mut uppers = 0usize;
    let mut retained = Vec::new();
    for (i, cell) in hom.cells().iter().enumerate() {
        let Some(pos) = first_hit(cell, vertex_order, v) else {
            retained.push(Face::Cell(i as ElemId));
            continue;
        };
        let x = vertex_order[pos];
        if cell.get(x) >> u & 1 == 1 {
            uppers += 1;
            continue;
        }
        let partner = lookup(hom, cell.with(x, cell.get(x) | 1 << u), "adding u", cell)?;
        pairs.push((pos, std::cmp::Reverse(cell.dim()), i as ElemId, partner));
    }
    if uppers != pairs.len() {
        return Err(Error::Contract("pairing is not a bijection between A and B".into()));
    }
    pairs.sort_unstable();
    let mut sequence = CollapseSequence::new(Mode::Cw);
    for (_, _, a, b) in pairs {
        sequence.push_cells(a, b);
    }
    Ok(FoldCollapsePlan { side: Side::Second, witness: w, vertex_order: vertex_order.to_vec(), sequence, retained })
}

/// Enumerates `Hom(h, g)` and plans the second-argument collapse for `w` on `g`.
pub fn second_arg_collapse(
    h: &Graph,
    g: &Graph,
    w: FoldWitness,
    vertex_order: &[usize],
    max_cells: usize,
) -> Result<(HomComplex, FoldCollapsePlan)> {
    g.check_witness(w)?;
    let hom = HomComplex::enumerate(h, g, max_cells)?;
    let plan = second_arg_plan(&hom, w, vertex_order)?;
    Ok((hom, plan))
}

/// `φ` on `𝒫(Hom(H, G))`, its image `Y` and `ψ` on `Y`.
#[derive(Clone, Debug)]
pub struct PhiPsi {
    pub phi: PosetMap,
    pub y: FacePoset,
    pub psi: PosetMap,
}

/// `φ` adds `u` wherever `v` occurs; `ψ` removes `v`.
pub fn phi_psi_maps(hom: &HomComplex, w: FoldWitness) -> Result<PhiPsi> {
    hom.target().check_witness(w)?;
    let FoldWitness { v, u } = w;
    let (vb, ub): (VertexSet, VertexSet) = (1 << v, 1 << u);
    let map_sets = |c: &HomCell, f: &dyn Fn(VertexSet) -> VertexSet| {
        HomCell(c.sets().iter().map(|&s| if s & vb != 0 { f(s) } else { s }).collect())
    };
    let phi = hom
        .cells()
        .iter()
        .map(|c| lookup(hom, map_sets(c, &|s| s | ub), "φ", c))
        .collect::<Result<Vec<_>>>()?;
    let y = hom.poset().subposet(|i| hom.cell(i).sets().iter().all(|&s| s & vb == 0 || s & ub != 0));
    let psi = (0..y.len())
        .map(|k| {
            let c = hom.cell(y.id(k) as usize);
            lookup(hom, map_sets(c, &|s| s & !vb), "ψ", c)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiPsi { phi: PosetMap::new(phi), y, psi: PosetMap::new(psi) })
}

/// Cells of `Hom(G, H)` where `β(α(η))`, read as a cell of `Hom(G - v, H)`,
/// differs from `η ∘ i`. `folded` is `Hom(G - v, H)`.
pub fn first_arg_factorization_mismatches(hom: &HomComplex, folded: &HomComplex, fold: &Fold) -> Result<Vec<ElemId>> {
    let ab = alpha_beta_maps(hom, fold.witness)?;
    let composite = ab.alpha.then(&ab.x, &ab.beta)?;
    let induced = contravariant_map(hom, folded, &fold.inclusion)?;
    let mut bad = Vec::new();
    for i in 0..hom.len() {
        let reduced = hom.cell(composite.image(i) as usize).without(fold.witness.v);
        if folded.find(&reduced) != Some(induced.image(i) as usize) {
            bad.push(i as ElemId);
        }
    }
    Ok(bad)
}

/// Cells of `Hom(H, G)` where `ψ(φ(η))`, relabeled into `G - v`, differs from
/// `f ∘ η`. `folded` is `Hom(H, G - v)`.
pub fn second_arg_factorization_mismatches(hom: &HomComplex, folded: &HomComplex, fold: &Fold) -> Result<Vec<ElemId>> {
    let pp = phi_psi_maps(hom, fold.witness)?;
    let composite = pp.phi.then(&pp.y, &pp.psi)?;
    let induced = covariant_map(hom, folded, &fold.fold)?;
    let relabel = |s: VertexSet| -> VertexSet {
        crate::graph::members(s).fold(0, |acc, x| acc | 1 << fold.relabel[x].expect("ψ removes v"))
    };
    let mut bad = Vec::new();
    for i in 0..hom.len() {
        let c = hom.cell(composite.image(i) as usize);
        let moved = HomCell(c.sets().iter().map(|&s| relabel(s)).collect());
        if folded.find(&moved) != Some(induced.image(i) as usize) {
            bad.push(i as ElemId);
        }
    }
    Ok(bad)
}
