//! Chain complexes with integer boundaries, Betti numbers over GF(2) and
//! integer homology through the Smith normal form.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::members;
use crate::hom::HomComplex;
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Gf2,
    Integer,
}

impl std::str::FromStr for Coefficients {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "gf2" | "GF2" | "z2" => Ok(Coefficients::Gf2),
            "integer" | "int" | "z" => Ok(Coefficients::Integer),
            other => Err(format!("unknown coefficients `{other}`")),
        }
    }
}

/// Unreduced Betti numbers, trailing zeros trimmed. `torsion[k]` lists the
/// invariant factors above one of `H_k` (integer coefficients only).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
}

impl BettiVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

type Column = Vec<(u32, i64)>;

/// Cells counted per dimension and, for `k >= 1`, the boundary `∂_k` stored
/// column-wise: column `j` lists `(row in dimension k-1, coefficient)`.
#[derive(Clone, Debug, Default)]
pub struct ChainComplex {
    counts: Vec<usize>,
    boundaries: Vec<Vec<Column>>,
}

impl ChainComplex {
    pub fn from_simplicial(x: &SimplicialComplex) -> Self {
        let dims = x.f_vector().len();
        let mut boundaries = vec![Vec::new()];
        for k in 1..dims {
            let rows = x.dim_range(k - 1).start;
            let col = x
                .dim_range(k)
                .map(|i| {
                    let mut c: Column = x
                        .facets_of(i)
                        .into_iter()
                        .enumerate()
                        .map(|(j, f)| ((f - rows) as u32, if j % 2 == 0 { 1 } else { -1 }))
                        .collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            boundaries.push(col);
        }
        ChainComplex { counts: x.f_vector(), boundaries }
    }

    /// The cellular chain complex of a Hom complex (or of the downward-closed
    /// set of cells where `keep` holds), with cells oriented as products of
    /// simplices in the vertex order of the source graph.
    pub fn cellular(hom: &HomComplex, keep: Option<&[bool]>) -> Self {
        let kept = |i: usize| keep.is_none_or(|k| k[i]);
        let mut local = vec![usize::MAX; hom.cells().len()];
        let mut counts: Vec<usize> = Vec::new();
        for (i, cell) in hom.cells().iter().enumerate() {
            if kept(i) {
                let d = cell.dim();
                if counts.len() <= d {
                    counts.resize(d + 1, 0);
                }
                local[i] = counts[d];
                counts[d] += 1;
            }
        }
        let mut boundaries: Vec<Vec<Column>> = (0..counts.len().max(1))
            .map(|k| if k == 0 { Vec::new() } else { vec![Vec::new(); counts[k]] })
            .collect();
        for (i, cell) in hom.cells().iter().enumerate() {
            if !kept(i) || cell.dim() == 0 {
                continue;
            }
            let mut column = Column::new();
            let mut shift = 0usize;
            for x in 0..cell.sets().len() {
                let set = cell.get(x);
                for (j, a) in members(set).enumerate() {
                    if set.count_ones() < 2 {
                        break;
                    }
                    let face = hom.find(&cell.with(x, set & !(1 << a))).expect("faces are cells");
                    assert!(kept(face), "kept cells must form a subcomplex");
                    let sign = if (shift + j).is_multiple_of(2) { 1 } else { -1 };
                    column.push((local[face] as u32, sign));
                }
                shift += set.count_ones() as usize - 1;
            }
            column.sort_unstable();
            boundaries[cell.dim()][local[i]] = column;
        }
        ChainComplex { counts, boundaries }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Whether `∂_{k-1} ∘ ∂_k = 0` for all `k`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.counts.len()).all(|k| {
            self.boundaries[k].iter().all(|col| {
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for &(r, a) in col {
                    for &(s, b) in &self.boundaries[k - 1][r as usize] {
                        *acc.entry(s).or_default() += a * b;
                    }
                }
                acc.values().all(|&v| v == 0)
            })
        })
    }

    pub fn betti(&self, coefficients: Coefficients) -> Result<BettiVector> {
        let top = self.counts.len();
        let (ranks, torsion) = match coefficients {
            Coefficients::Gf2 => (self.gf2_ranks(), vec![Vec::new(); top + 1]),
            Coefficients::Integer => {
                let per_dim: Vec<(usize, Vec<u64>)> = (0..=top)
                    .into_par_iter()
                    .map(|k| {
                        if k == 0 || k >= top {
                            Ok((0, Vec::new()))
                        } else {
                            integer_invariants(&self.boundaries[k], self.counts[k - 1])
                        }
                    })
                    .collect::<Result<_>>()?;
                let ranks = per_dim.iter().map(|(r, _)| *r).collect();
                // Torsion of H_k comes from the image of ∂_{k+1}.
                let torsion = (0..=top)
                    .map(|k| per_dim.get(k + 1).map(|(_, t)| t.clone()).unwrap_or_default())
                    .collect();
                (ranks, torsion)
            }
        };
        let mut betti: Vec<usize> =
            (0..top).map(|k| self.counts[k] - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0)).collect();
        let mut torsion: Vec<Vec<u64>> = torsion.into_iter().take(top).collect();
        while betti.last() == Some(&0) {
            betti.pop();
        }
        while torsion.last().is_some_and(Vec::is_empty) {
            torsion.pop();
        }
        Ok(BettiVector { betti, torsion })
    }

    /// Ranks of `∂_k` over GF(2), indexed by `k` (entry 0 is zero), by column
    /// reduction from the top dimension down, skipping columns that are
    /// known to reduce to zero.
    fn gf2_ranks(&self) -> Vec<usize> {
        let top = self.counts.len();
        let mut ranks = vec![0; top + 1];
        let mut cleared: Vec<bool> = Vec::new();
        for k in (1..top).rev() {
            let mut next_cleared = vec![false; self.counts[k - 1]];
            let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
            for (j, col) in self.boundaries[k].iter().enumerate() {
                if cleared.get(j).copied().unwrap_or(false) {
                    continue;
                }
                let mut c: Vec<u32> = col.iter().filter(|&&(_, a)| a % 2 != 0).map(|&(r, _)| r).collect();
                while let Some(&low) = c.last() {
                    match pivots.get(&low) {
                        Some(p) => c = symmetric_difference(&c, p),
                        None => break,
                    }
                }
                if let Some(&low) = c.last() {
                    next_cleared[low as usize] = true;
                    pivots.insert(low, c);
                }
            }
            ranks[k] = pivots.len();
            cleared = next_cleared;
        }
        ranks
    }
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Rank and invariant factors above one of an integer matrix given by columns.
///
/// Unit pivots are eliminated sparsely first; the remainder goes through a
/// dense Smith normal form with overflow-checked arithmetic.
fn integer_invariants(columns: &[Column], rows: usize) -> Result<(usize, Vec<u64>)> {
    let mut cols: Vec<BTreeMap<u32, i64>> =
        columns.iter().map(|c| c.iter().filter(|e| e.1 != 0).copied().collect()).collect();
    let mut row_index: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); rows];
    for (j, c) in cols.iter().enumerate() {
        for &r in c.keys() {
            row_index[r as usize].insert(j as u32);
        }
    }
    let mut alive = vec![true; cols.len()];
    let mut rank = 0;
    loop {
        let pivot = (0..cols.len())
            .filter(|&j| alive[j])
            .find_map(|j| cols[j].iter().find(|e| e.1.abs() == 1).map(|(&r, &v)| (j, r, v)));
        let Some((pc, pr, pv)) = pivot else { break };
        rank += 1;
        alive[pc] = false;
        let pivot_col = std::mem::take(&mut cols[pc]);
        for &r in pivot_col.keys() {
            row_index[r as usize].remove(&(pc as u32));
        }
        let others: Vec<u32> = row_index[pr as usize].iter().copied().collect();
        for j in others {
            let j = j as usize;
            let factor = cols[j][&pr].checked_mul(pv).ok_or(Error::Overflow)?;
            for (&r, &v) in &pivot_col {
                let entry = cols[j].entry(r).or_insert(0);
                *entry = entry.checked_sub(factor.checked_mul(v).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
                if *entry == 0 {
                    cols[j].remove(&r);
                    row_index[r as usize].remove(&(j as u32));
                } else {
                    row_index[r as usize].insert(j as u32);
                }
            }
        }
    }
    let rest: Vec<&BTreeMap<u32, i64>> = (0..cols.len()).filter(|&j| alive[j] && !cols[j].is_empty()).map(|j| &cols[j]).collect();
    if rest.is_empty() {
        return Ok((rank, Vec::new()));
    }
    let mut row_ids: Vec<u32> = rest.iter().flat_map(|c| c.keys().copied()).collect();
    row_ids.sort_unstable();
    row_ids.dedup();
    let row_pos: HashMap<u32, usize> = row_ids.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut dense = vec![vec![0i64; rest.len()]; row_ids.len()];
    for (j, c) in rest.iter().enumerate() {
        for (r, &v) in c.iter() {
            dense[row_pos[r]][j] = v;
        }
    }
    let diagonal = smith_diagonal(dense)?;
    let torsion: Vec<u64> = diagonal.iter().map(|&d| d.unsigned_abs()).filter(|&d| d > 1).collect();
    Ok((rank + diagonal.len(), torsion))
}

/// Nonzero diagonal of the Smith normal form, each entry dividing the next.
pub fn smith_diagonal(mut a: Vec<Vec<i64>>) -> Result<Vec<i64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t] / a[t][t];
                    for j in t..cols {
                        a[i][j] = a[i][j].checked_sub(q.checked_mul(a[t][j]).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
                    }
                    dirty |= a[i][t] != 0;
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j] / a[t][t];
                    for row in a.iter_mut().skip(t) {
                        row[j] = row[j].checked_sub(q.checked_mul(row[t]).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
                    }
                    dirty |= a[t][j] != 0;
                }
            }
            if dirty {
                // Bring the smallest remainder of row/column t to the pivot.
                let (mut bi, mut bj) = (t, t);
                for i in t..rows {
                    if a[i][t] != 0 && a[i][t].abs() < a[bi][bj].abs() {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t..cols {
                    if a[t][j] != 0 && a[t][j].abs() < a[bi][bj].abs() {
                        (bi, bj) = (t, j);
                    }
                }
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            let pivot = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % pivot != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] = a[t][j].checked_add(a[i][j]).ok_or(Error::Overflow)?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    Ok(diag)
}

fn min_entry(a: &[Vec<i64>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &v) in row.iter().enumerate().skip(t) {
            if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Betti numbers of a simplicial complex.
pub fn betti(x: &SimplicialComplex, coefficients: Coefficients) -> Result<BettiVector> {
    ChainComplex::from_simplicial(x).betti(coefficients)
}
