//! Abstract simplicial complexes over element ids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::ElemId;

/// Simplices of one dimension, stored back to back and sorted lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Layer {
    width: usize,
    data: Vec<ElemId>,
}

impl Layer {
    fn len(&self) -> usize {
        self.data.len() / self.width
    }

    fn get(&self, i: usize) -> &[ElemId] {
        &self.data[i * self.width..(i + 1) * self.width]
    }

    fn find(&self, s: &[ElemId]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(s) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// A downward-closed family of nonempty sorted vertex tuples.
///
/// Simplices have a canonical index: ordered by dimension, then
/// lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    layers: Vec<Layer>,
    offsets: Vec<usize>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Closes `facets` downward; every listed vertex becomes a 0-simplex.
    /// Facets are sorted internally.
    pub fn from_facets(vertices: Vec<ElemId>, facets: &[Vec<ElemId>]) -> Self {
        let mut all: Vec<Vec<ElemId>> = vertices.into_iter().map(|v| vec![v]).collect();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                all.push((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect());
            }
        }
        Self::from_closed_simplices(Vec::new(), all)
    }

    /// From a family already closed under nonempty subsets. Each simplex
    /// must be sorted; duplicates are dropped. Listed vertices become 0-simplices.
    pub fn from_closed_simplices(vertices: Vec<ElemId>, simplices: Vec<Vec<ElemId>>) -> Self {
        let max_len = simplices.iter().map(Vec::len).max().unwrap_or(0);
        let mut buckets: Vec<Vec<Vec<ElemId>>> = vec![Vec::new(); max_len.max(1)];
        buckets[0].extend(vertices.into_iter().map(|v| vec![v]));
        for s in simplices {
            debug_assert!(s.windows(2).all(|w| w[0] < w[1]));
            buckets[s.len() - 1].push(s);
        }
        let layers: Vec<Layer> = buckets
            .into_iter()
            .enumerate()
            .map(|(d, mut b)| {
                b.sort_unstable();
                b.dedup();
                Layer { width: d + 1, data: b.into_iter().flatten().collect() }
            })
            .collect();
        Self::from_layers(layers)
    }

    fn from_layers(mut layers: Vec<Layer>) -> Self {
        while layers.last().is_some_and(|l| l.data.is_empty()) {
            layers.pop();
        }
        let mut offsets = Vec::with_capacity(layers.len() + 1);
        let mut acc = 0;
        for l in &layers {
            offsets.push(acc);
            acc += l.len();
        }
        offsets.push(acc);
        SimplicialComplex { layers, offsets }
    }

    pub fn vertices(&self) -> &[ElemId] {
        self.layers.first().map_or(&[], |l| &l.data)
    }

    /// Total number of simplices.
    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.layers.len() as isize - 1
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.layers.iter().map(Layer::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Simplex by canonical index.
    pub fn simplex(&self, index: usize) -> &[ElemId] {
        let d = self.offsets.partition_point(|&o| o <= index) - 1;
        self.layers[d].get(index - self.offsets[d])
    }

    /// Canonical indices of the `count` simplices of dimension `d` start here.
    pub fn dim_range(&self, d: usize) -> std::ops::Range<usize> {
        match self.layers.get(d) {
            Some(l) => self.offsets[d]..self.offsets[d] + l.len(),
            None => self.len()..self.len(),
        }
    }

    pub fn index_of(&self, s: &[ElemId]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        let layer = self.layers.get(d)?;
        layer.find(s).map(|i| self.offsets[d] + i)
    }

    pub fn contains(&self, s: &[ElemId]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[ElemId]> + '_ {
        self.layers.iter().flat_map(|l| (0..l.len()).map(move |i| l.get(i)))
    }

    /// Canonical indices of the codimension-one faces of simplex `index`,
    /// in the order obtained by deleting vertex 0, 1, ... .
    pub fn facets_of(&self, index: usize) -> Vec<usize> {
        let s = self.simplex(index);
        if s.len() < 2 {
            return Vec::new();
        }
        let mut face = Vec::with_capacity(s.len() - 1);
        (0..s.len())
            .map(|skip| {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                self.index_of(&face).expect("complex is closed under faces")
            })
            .collect()
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Vec<ElemId>> {
        let mut has_coface = vec![false; self.len()];
        for i in 0..self.len() {
            for f in self.facets_of(i) {
                has_coface[f] = true;
            }
        }
        (0..self.len()).filter(|&i| !has_coface[i]).map(|i| self.simplex(i).to_vec()).collect()
    }

    /// The subcomplex of simplices where `keep` holds. The caller keeps the family closed.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> SimplicialComplex {
        let layers = self
            .layers
            .iter()
            .enumerate()
            .map(|(d, l)| {
                let mut data = Vec::new();
                for i in 0..l.len() {
                    if keep(self.offsets[d] + i) {
                        data.extend_from_slice(l.get(i));
                    }
                }
                Layer { width: d + 1, data }
            })
            .collect();
        Self::from_layers(layers)
    }

    /// Checks downward closure.
    pub fn validate(&self) -> Result<()> {
        let mut face = Vec::new();
        for s in self.iter() {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                if !self.contains(&face) {
                    return Err(Error::Contract(format!("face {face:?} of {s:?} is missing")));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson { vertices: self.vertices().to_vec(), facets: self.facets() }
    }

    pub fn from_json(json: &ComplexJson) -> Self {
        Self::from_facets(json.vertices.clone(), &json.facets)
    }
}

/// Serialized form: `{"vertices":[...],"facets":[[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<ElemId>,
    pub facets: Vec<Vec<ElemId>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_triangle() {
        let t = SimplicialComplex::from_facets(vec![0, 1, 2], &[vec![2, 0, 1]]);
        assert_eq!(t.f_vector(), vec![3, 3, 1]);
        assert_eq!(t.euler_characteristic(), 1);
        assert_eq!(t.simplex(0), &[0]);
        assert_eq!(t.simplex(3), &[0, 1]);
        assert_eq!(t.simplex(6), &[0, 1, 2]);
        assert_eq!(t.index_of(&[1, 2]), Some(5));
        assert_eq!(t.facets_of(6), vec![5, 4, 3]);
        assert_eq!(t.facets(), vec![vec![0, 1, 2]]);
        t.validate().unwrap();
    }

    #[test]
    fn empty_complex() {
        let e = SimplicialComplex::empty();
        assert!(e.f_vector().is_empty());
        assert_eq!(e.dim(), -1);
        assert_eq!(e.euler_characteristic(), 0);
        assert!(e.facets().is_empty());
    }

    #[test]
    fn listed_vertices_are_zero_simplices() {
        let c = SimplicialComplex::from_facets(vec![0, 1, 2, 9], &[vec![0, 1]]);
        assert_eq!(c.vertices(), &[0, 1, 2, 9]);
        assert_eq!(c.f_vector(), vec![4, 1]);
        assert_eq!(c.facets(), vec![vec![2], vec![9], vec![0, 1]]);
    }

    #[test]
    fn json_shape() {
        let c = SimplicialComplex::from_facets(vec![0, 1, 2], &[vec![0, 1], vec![2]]);
        let text = serde_json::to_string(&c.to_json()).unwrap();
        assert_eq!(text, r#"{"vertices":[0,1,2],"facets":[[2],[0,1]]}"#);
        assert_eq!(SimplicialComplex::from_json(&serde_json::from_str(&text).unwrap()), c);
    }

    #[test]
    fn validate_catches_missing_face() {
        let broken = SimplicialComplex::from_closed_simplices(vec![], vec![vec![0], vec![0, 1]]);
        assert!(broken.validate().is_err());
    }
}
