//! Random and exhaustive inputs for property tests and the `gen` command.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poset::{verify_closure_operator, Direction, ElemId, Element, FacePoset, Poset, PosetMap};

/// A random poset on `n` elements: each pair of a random linear order is
/// related with probability `p`, then transitively closed. Ids are a random
/// permutation of `0..n`, so id order is unrelated to the partial order.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> FacePoset {
    let mut less = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            less[i][j] = rng.gen_bool(p);
        }
    }
    for k in 0..n {
        for i in 0..k {
            if less[i][k] {
                for j in k + 1..n {
                    if less[k][j] {
                        less[i][j] = true;
                    }
                }
            }
        }
    }
    let mut ids: Vec<ElemId> = (0..n as ElemId).collect();
    ids.shuffle(rng);
    let elements = ids.into_iter().map(Element::point).collect();
    FacePoset::from_order(elements, |a, b| less[a][b]).expect("transitive closure of a dag")
}

/// A random descending closure operator on `p`.
///
/// Draws a subset `S` containing every minimal element and maps each `x` to
/// the largest element of `S` below it. Elements are visited in a linear
/// extension; when that largest element is not unique, `x` joins `S`. Draws
/// that fail the closure laws are rejected; the identity is the fallback.
pub fn random_descending_closure<R: Rng + ?Sized>(rng: &mut R, p: &FacePoset, attempts: usize) -> PosetMap {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| p.rank(x));
    for _ in 0..attempts {
        let keep_p: f64 = rng.gen_range(0.1..0.8);
        let mut in_s: Vec<bool> = (0..n).map(|_| rng.gen_bool(keep_p)).collect();
        for m in p.minimal_elements() {
            in_s[m] = true;
        }
        let mut images = vec![0; n];
        for &x in &order {
            let below: Vec<usize> = (0..n).filter(|&s| in_s[s] && p.leq(s, x)).collect();
            let tops: Vec<usize> =
                below.iter().copied().filter(|&s| !below.iter().any(|&t| t != s && p.leq(s, t))).collect();
            let top = match tops[..] {
                [t] => t,
                _ => {
                    in_s[x] = true;
                    x
                }
            };
            images[x] = p.id(top);
        }
        let map = PosetMap::new(images);
        if verify_closure_operator(p, &map, Direction::Descending).is_ok_and(|r| r.holds()) {
            return map;
        }
    }
    PosetMap::identity(p)
}

/// One representative per isomorphism class of loopless graphs on `n`
/// vertices, ordered by edge count and then by canonical edge mask.
pub fn graphs_up_to_iso(n: usize) -> Result<Vec<Graph>> {
    if n > 6 {
        return Err(Error::Guard { what: "vertex count", got: n, lo: 0, hi: 6 });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let position = |a: usize, b: usize| pairs.iter().position(|&e| e == (a.min(b), a.max(b))).unwrap();
    let perms = permutations(n);
    let canonical = |mask: u32| -> u32 {
        perms
            .iter()
            .map(|perm| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &(a, b))| acc | 1 << position(perm[a], perm[b]))
            })
            .min()
            .unwrap_or(mask)
    };
    let mut reps: Vec<u32> = (0..1u32 << pairs.len()).filter(|&m| canonical(m) == m).collect();
    reps.sort_by_key(|&m| (m.count_ones(), m));
    reps.into_iter()
        .map(|m| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|&(i, _)| m >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &edges)
        })
        .collect()
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn rec(k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == current.len() {
            out.push(current.clone());
            return;
        }
        for i in k..current.len() {
            current.swap(k, i);
            rec(k + 1, current, out);
            current.swap(k, i);
        }
    }
    rec(0, &mut current, &mut out);
    out
}
