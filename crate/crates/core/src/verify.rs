//! Step-by-step execution of collapse sequences and the verdict that bundles
//! validity, the remaining set, Euler characteristics and Betti numbers.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::closure::{CollapseSequence, Face, Mode};
use crate::error::{Error, Result};
use crate::hom::HomComplex;
use crate::homology::{betti, BettiVector, ChainComplex, Coefficients};
use crate::poset::{order_complex, ElemId, FacePoset, Poset};
use crate::simplicial::SimplicialComplex;

/// A complex to collapse. Simplicial ambients take simplex steps; the other
/// two take cell ids.
#[derive(Clone, Copy, Debug)]
pub enum Ambient<'a> {
    Simplicial(&'a SimplicialComplex),
    /// A face poset; homology is taken on its order complex.
    Poset(&'a FacePoset),
    /// A Hom complex; homology is cellular.
    Hom(&'a HomComplex),
}

impl Ambient<'_> {
    pub fn mode(&self) -> Mode {
        match self {
            Ambient::Simplicial(_) => Mode::Simplicial,
            Ambient::Poset(_) | Ambient::Hom(_) => Mode::Cw,
        }
    }

    fn len(&self) -> usize {
        match self {
            Ambient::Simplicial(x) => x.len(),
            Ambient::Poset(p) => p.len(),
            Ambient::Hom(h) => h.len(),
        }
    }

    fn poset(&self) -> Option<&FacePoset> {
        match self {
            Ambient::Simplicial(_) => None,
            Ambient::Poset(p) => Some(p),
            Ambient::Hom(h) => Some(h.poset()),
        }
    }

    fn dim(&self, i: usize) -> i64 {
        match self {
            Ambient::Simplicial(x) => x.simplex(i).len() as i64 - 1,
            _ => self.poset().expect("cw").element(i).dim as i64,
        }
    }

    fn lower_covers(&self, i: usize) -> Vec<usize> {
        match self {
            Ambient::Simplicial(x) => x.facets_of(i),
            _ => self.poset().expect("cw").lower_covers(i).to_vec(),
        }
    }

    fn resolve(&self, face: &Face) -> Result<Option<usize>> {
        match (self, face) {
            (Ambient::Simplicial(x), Face::Simplex(s)) => Ok(x.index_of(s)),
            (Ambient::Simplicial(_), Face::Cell(_)) | (_, Face::Simplex(_)) => {
                Err(Error::Contract("step does not match the ambient's mode".into()))
            }
            (_, Face::Cell(id)) => {
                let p = self.poset().expect("cw");
                p.index_of(*id).map(Some).ok_or(Error::UnknownId(*id))
            }
        }
    }

    fn face(&self, i: usize) -> Face {
        match self {
            Ambient::Simplicial(x) => Face::Simplex(x.simplex(i).to_vec()),
            _ => Face::Cell(self.poset().expect("cw").id(i)),
        }
    }

    /// Alive elements strictly above `i` by one step.
    fn live_upper_cover(&self, i: usize, alive: &[bool]) -> Option<usize> {
        match self {
            Ambient::Simplicial(x) => {
                let s = x.simplex(i);
                x.dim_range(s.len()).find(|&j| alive[j] && is_subset(s, x.simplex(j)))
            }
            _ => self.poset().expect("cw").upper_covers(i).iter().copied().find(|&j| alive[j]),
        }
    }

    fn is_cover(&self, a: usize, b: usize) -> bool {
        match self {
            Ambient::Simplicial(x) => {
                let (s, t) = (x.simplex(a), x.simplex(b));
                t.len() == s.len() + 1 && is_subset(s, t)
            }
            _ => self.poset().expect("cw").is_cover(a, b),
        }
    }

    fn euler(&self, alive: &[bool]) -> i64 {
        (0..self.len()).filter(|&i| alive[i]).map(|i| sign(self.dim(i))).sum()
    }

    fn betti(&self, alive: &[bool], coefficients: Coefficients) -> Result<BettiVector> {
        match self {
            Ambient::Simplicial(x) => betti(&x.filter(|i| alive[i]), coefficients),
            Ambient::Poset(p) => betti(&order_complex(&p.subposet(|i| alive[i])), coefficients),
            Ambient::Hom(h) => ChainComplex::cellular(h, Some(alive)).betti(coefficients),
        }
    }
}

fn sign(d: i64) -> i64 {
    if d.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn is_subset(small: &[ElemId], big: &[ElemId]) -> bool {
    let mut it = big.iter();
    small.iter().all(|a| it.any(|b| b == a))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepFault {
    /// The face is not (or no longer) in the complex.
    Missing { face: Face },
    NotACover,
    /// Another element still lies above the free face (or above its coface).
    NotFree { blocker: Face },
    DimensionJump,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFailure {
    pub index: usize,
    pub free: Face,
    pub coface: Face,
    pub fault: StepFault,
}

/// Outcome of running a sequence. Execution stops at the first invalid step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Execution {
    pub failure: Option<StepFailure>,
    /// `(dim free, dim coface)` for each executed step.
    pub step_dims: Vec<(i64, i64)>,
    /// Whether the Euler characteristic was unchanged after every executed step.
    pub euler_invariant: bool,
    alive: Vec<bool>,
}

impl Execution {
    pub fn valid(&self) -> bool {
        self.failure.is_none()
    }

    /// What is left, as faces in canonical order.
    pub fn remaining(&self, ambient: Ambient<'_>) -> Vec<Face> {
        (0..self.alive.len()).filter(|&i| self.alive[i]).map(|i| ambient.face(i)).collect()
    }

    pub fn remaining_mask(&self) -> &[bool] {
        &self.alive
    }
}

/// Runs `seq` on `ambient`, checking at every step that the coface covers the
/// free face and is the only remaining element above it.
pub fn execute_collapses(ambient: Ambient<'_>, seq: &CollapseSequence) -> Result<Execution> {
    if ambient.mode() != seq.mode {
        return Err(Error::Contract(format!("{:?} sequence on a {:?} ambient", seq.mode, ambient.mode())));
    }
    let n = ambient.len();
    let mut alive = vec![true; n];
    let mut above = vec![0usize; n];
    for i in 0..n {
        for c in ambient.lower_covers(i) {
            above[c] += 1;
        }
    }
    let mut euler = ambient.euler(&alive);
    let mut exec = Execution { failure: None, step_dims: Vec::with_capacity(seq.len()), euler_invariant: true, alive: Vec::new() };
    for (index, step) in seq.steps.iter().enumerate() {
        let fail = |fault| StepFailure { index, free: step.free.clone(), coface: step.coface.clone(), fault };
        let (a, b) = match (ambient.resolve(&step.free)?, ambient.resolve(&step.coface)?) {
            (Some(a), Some(b)) if alive[a] && alive[b] => (a, b),
            (a, _) => {
                let missing = if a.is_some_and(|a| alive[a]) { step.coface.clone() } else { step.free.clone() };
                exec.failure = Some(fail(StepFault::Missing { face: missing }));
                break;
            }
        };
        if !ambient.is_cover(a, b) {
            exec.failure = Some(fail(StepFault::NotACover));
            break;
        }
        // In a finite poset, b is the unique element above a iff it is a's
        // only upper cover and has no upper cover itself.
        if above[a] != 1 || above[b] != 0 {
            let blocker = if above[a] != 1 {
                let alive_without_b: Vec<bool> = (0..n).map(|i| alive[i] && i != b).collect();
                ambient.live_upper_cover(a, &alive_without_b)
            } else {
                ambient.live_upper_cover(b, &alive)
            }
            .expect("counted cover exists");
            exec.failure = Some(fail(StepFault::NotFree { blocker: ambient.face(blocker) }));
            break;
        }
        let (da, db) = (ambient.dim(a), ambient.dim(b));
        if db != da + 1 {
            exec.failure = Some(fail(StepFault::DimensionJump));
            break;
        }
        for x in [b, a] {
            alive[x] = false;
            for c in ambient.lower_covers(x) {
                above[c] -= 1;
            }
        }
        let before = euler;
        euler -= sign(da) + sign(db);
        exec.euler_invariant &= euler == before;
        exec.step_dims.push((da, db));
    }
    exec.euler_invariant &= euler == ambient.euler(&alive);
    exec.alive = alive;
    Ok(exec)
}

/// Summary of [`compare_collapse`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub valid: bool,
    pub failed_step: Option<usize>,
    pub euler_invariant: bool,
    pub betti_before: Vec<usize>,
    pub betti_after: Vec<usize>,
    pub remaining_matches: bool,
    #[serde(skip)]
    pub failure: Option<StepFailure>,
}

impl Verdict {
    pub fn all_pass(&self) -> bool {
        self.valid && self.remaining_matches && self.euler_invariant && self.betti_before == self.betti_after
    }
}

/// Executes `seq` and compares the result with `expected_remaining`; Betti
/// numbers are over GF(2).
pub fn compare_collapse(ambient: Ambient<'_>, seq: &CollapseSequence, expected_remaining: &[Face]) -> Result<Verdict> {
    compare_collapse_with(ambient, seq, expected_remaining, Coefficients::Gf2)
}

/// [`compare_collapse`] with a choice of coefficients for the Betti numbers.
pub fn compare_collapse_with(
    ambient: Ambient<'_>,
    seq: &CollapseSequence,
    expected_remaining: &[Face],
    coefficients: Coefficients,
) -> Result<Verdict> {
    let exec = execute_collapses(ambient, seq)?;
    let all = vec![true; ambient.len()];
    let betti_before = ambient.betti(&all, coefficients)?.betti;
    let betti_after = ambient.betti(&exec.alive, coefficients)?.betti;
    let remaining: BTreeSet<Face> = exec.remaining(ambient).into_iter().collect();
    let expected: BTreeSet<Face> = expected_remaining.iter().cloned().collect();
    Ok(Verdict {
        valid: exec.valid(),
        failed_step: exec.failure.as_ref().map(|f| f.index),
        euler_invariant: exec.euler_invariant,
        betti_before,
        betti_after,
        remaining_matches: remaining == expected,
        failure: exec.failure,
    })
}

/// Cell counts by dimension.
pub fn f_vector(ambient: Ambient<'_>) -> Vec<usize> {
    match ambient {
        Ambient::Simplicial(x) => x.f_vector(),
        Ambient::Hom(h) => h.f_vector(),
        Ambient::Poset(p) => {
            let mut f = Vec::new();
            for e in p.elements() {
                let d = e.dim.max(0) as usize;
                if f.len() <= d {
                    f.resize(d + 1, 0);
                }
                f[d] += 1;
            }
            f
        }
    }
}
