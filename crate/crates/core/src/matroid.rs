//! Matroids given by a rank oracle, with lazy memoised constructors.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, MultiGraph};

/// Ground sets are limited so subsets fit a `u64` mask.
pub const MAX_ELEMENTS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Loop,
    Coloop,
    Normal,
}

#[derive(Debug)]
enum Kind {
    Graphic(MultiGraph),
    Uniform(usize),
    Dual(Matroid),
    DirectSum(Matroid, Matroid),
    Delete(Matroid, usize),
    Contract(Matroid, usize),
}

#[derive(Debug)]
struct Inner {
    labels: Vec<EdgeId>,
    kind: Kind,
    memo: Mutex<HashMap<u64, usize>>,
}

/// A matroid on labelled elements; positions `0..len` index the ground set.
#[derive(Clone, Debug)]
pub struct Matroid(Arc<Inner>);

impl Matroid {
    fn build(labels: Vec<EdgeId>, kind: Kind) -> Result<Self> {
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                what: "matroid ground set",
                got: labels.len(),
                limit: MAX_ELEMENTS,
            });
        }
        Ok(Matroid(Arc::new(Inner {
            labels,
            kind,
            memo: Mutex::new(HashMap::new()),
        })))
    }

    /// Cycle matroid of `g`; elements are the edges, labelled by edge id.
    pub fn graphic(g: &MultiGraph) -> Result<Self> {
        Self::build(g.edge_ids(), Kind::Graphic(g.clone()))
    }

    /// `U_{r,n}` on labels `0..n`.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::Precondition(format!("uniform rank {r} exceeds size {n}")));
        }
        Self::build((0..n).map(EdgeId).collect(), Kind::Uniform(r))
    }

    pub fn dual(&self) -> Self {
        Self::build(self.0.labels.clone(), Kind::Dual(self.clone())).expect("same size")
    }

    /// Direct sum; the second summand's labels are shifted past the first's.
    pub fn direct_sum(&self, o: &Matroid) -> Result<Self> {
        let shift = self.0.labels.iter().map(|l| l.0 + 1).max().unwrap_or(0);
        let mut labels = self.0.labels.clone();
        labels.extend(o.0.labels.iter().map(|l| EdgeId(l.0 + shift)));
        Self::build(labels, Kind::DirectSum(self.clone(), o.clone()))
    }

    pub fn delete(&self, e: EdgeId) -> Result<Self> {
        let p = self.position(e)?;
        Self::build(self.minor_labels(p), Kind::Delete(self.clone(), p))
    }

    pub fn contract(&self, e: EdgeId) -> Result<Self> {
        let p = self.position(e)?;
        Self::build(self.minor_labels(p), Kind::Contract(self.clone(), p))
    }

    fn minor_labels(&self, p: usize) -> Vec<EdgeId> {
        let mut l = self.0.labels.clone();
        l.remove(p);
        l
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn labels(&self) -> &[EdgeId] {
        &self.0.labels
    }

    pub fn position(&self, e: EdgeId) -> Result<usize> {
        self.0
            .labels
            .iter()
            .position(|&l| l == e)
            .ok_or(Error::UnknownEdge(e.0))
    }

    pub fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn mask_of(&self, ids: &[EdgeId]) -> Result<u64> {
        ids.iter()
            .try_fold(0u64, |m, &id| Ok(m | (1u64 << self.position(id)?)))
    }

    /// Rank of the subset given by positions in `mask`.
    pub fn rank(&self, mask: u64) -> usize {
        if let Some(&r) = self.0.memo.lock().expect("memo lock").get(&mask) {
            return r;
        }
        let r = self.compute_rank(mask);
        self.0.memo.lock().expect("memo lock").insert(mask, r);
        r
    }

    pub fn rank_of(&self, ids: &[EdgeId]) -> Result<usize> {
        Ok(self.rank(self.mask_of(ids)?))
    }

    /// `r(E)`.
    pub fn full_rank(&self) -> usize {
        self.rank(self.full_mask())
    }

    fn compute_rank(&self, mask: u64) -> usize {
        match &self.0.kind {
            Kind::Graphic(g) => {
                let ids: Vec<EdgeId> = positions(mask).map(|i| self.0.labels[i]).collect();
                g.rank(&ids).expect("labels are edges")
            }
            Kind::Uniform(r) => (mask.count_ones() as usize).min(*r),
            Kind::Dual(m) => {
                let comp = m.full_mask() & !mask;
                mask.count_ones() as usize + m.rank(comp) - m.full_rank()
            }
            Kind::DirectSum(a, b) => {
                let lo = mask & a.full_mask();
                let hi = mask >> a.len();
                a.rank(lo) + b.rank(hi)
            }
            Kind::Delete(m, p) => m.rank(expand(mask, *p)),
            Kind::Contract(m, p) => {
                let bit = 1u64 << p;
                m.rank(expand(mask, *p) | bit) - m.rank(bit)
            }
        }
    }

    pub fn classify_element(&self, e: EdgeId) -> Result<ElementKind> {
        let p = self.position(e)?;
        let bit = 1u64 << p;
        Ok(if self.rank(bit) == 0 {
            ElementKind::Loop
        } else if self.rank(self.full_mask() & !bit) < self.full_rank() {
            ElementKind::Coloop
        } else {
            ElementKind::Normal
        })
    }

    /// Two non-loop elements forming a 2-circuit, lowest labels first.
    pub fn find_parallel_pair(&self) -> Option<(EdgeId, EdgeId)> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (1u64 << i, 1u64 << j);
                if self.rank(a) == 1 && self.rank(b) == 1 && self.rank(a | b) == 1 {
                    return Some((self.0.labels[i], self.0.labels[j]));
                }
            }
        }
        None
    }

    /// A 2-cocircuit, i.e. a parallel pair of the dual.
    pub fn find_series_pair(&self) -> Option<(EdgeId, EdgeId)> {
        self.dual().find_parallel_pair()
    }

    /// Is `A` a separator: `r(A) + r(E - A) = r(E)`.
    pub fn is_separator(&self, mask: u64) -> bool {
        self.rank(mask) + self.rank(self.full_mask() & !mask) == self.full_rank()
    }

    /// No separator other than the empty set and the whole ground set.
    pub fn is_2connected(&self) -> Result<bool> {
        let n = self.len();
        if n > 20 {
            return Err(Error::TooLarge {
                what: "ground set for exhaustive connectivity",
                got: n,
                limit: 20,
            });
        }
        if n <= 1 {
            return Ok(true);
        }
        // Every bipartition contains element 0 on one side.
        let full = self.full_mask();
        Ok(!(1..full).step_by(2).any(|m| m != full && self.is_separator(m)))
    }

    /// The 2-connected components as sorted label lists.
    pub fn connected_components(&self) -> Result<Vec<Vec<EdgeId>>> {
        let n = self.len();
        if n > 20 {
            return Err(Error::TooLarge {
                what: "ground set for exhaustive connectivity",
                got: n,
                limit: 20,
            });
        }
        let full = self.full_mask();
        let separators: Vec<u64> = (0..=full).filter(|&m| self.is_separator(m)).collect();
        let mut out = Vec::new();
        let mut covered = 0u64;
        for p in 0..n {
            if covered >> p & 1 == 1 {
                continue;
            }
            let comp = separators
                .iter()
                .filter(|&&s| s >> p & 1 == 1)
                .fold(full, |acc, &s| acc & s);
            covered |= comp;
            out.push(positions(comp).map(|i| self.0.labels[i]).collect());
        }
        Ok(out)
    }

    /// Is `e` in the closure of `S`.
    pub fn spanned_by(&self, s: &[EdgeId], e: EdgeId) -> Result<bool> {
        let m = self.mask_of(s)?;
        let bit = 1u64 << self.position(e)?;
        Ok(self.rank(m | bit) == self.rank(m))
    }

    /// Elements whose deletion and contraction both leave a 2-connected matroid.
    pub fn splitting_elements(&self) -> Result<Vec<EdgeId>> {
        let mut out = Vec::new();
        for &e in self.labels() {
            if self.delete(e)?.is_2connected()? && self.contract(e)?.is_2connected()? {
                out.push(e);
            }
        }
        Ok(out)
    }

    /// Ranks of every subset, indexed by mask.
    pub fn rank_table(&self) -> Result<Vec<usize>> {
        let n = self.len();
        if n > 24 {
            return Err(Error::TooLarge {
                what: "ground set for subset expansion",
                got: n,
                limit: 24,
            });
        }
        Ok((0..(1u64 << n)).map(|m| self.rank(m)).collect())
    }
}

fn positions(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

// Reinserts a zero bit at position `p`.
fn expand(mask: u64, p: usize) -> u64 {
    let low = mask & ((1u64 << p) - 1);
    let high = (mask >> p) << (p + 1);
    low | high
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_and_dual_ranks() {
        let u = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u.full_rank(), 2);
        let d = u.dual();
        assert_eq!(d.full_rank(), 2);
        assert_eq!(d.rank(0b0111), 2);
        let u13 = Matroid::uniform(1, 3).unwrap().dual();
        assert_eq!(u13.full_rank(), 2);
        assert_eq!(u13.rank(0b011), 2);
    }

    #[test]
    fn minors_relabel_and_preserve_rank_identities() {
        let g = MultiGraph::complete(4);
        let m = Matroid::graphic(&g).unwrap();
        let del = m.delete(EdgeId(2)).unwrap();
        let con = m.contract(EdgeId(2)).unwrap();
        assert_eq!(del.len(), 5);
        assert_eq!(del.full_rank(), 3);
        assert_eq!(con.full_rank(), 2);
        let gc = Matroid::graphic(&g.contract(EdgeId(2)).unwrap()).unwrap();
        for mask in 0..32u64 {
            assert_eq!(con.rank(mask), gc.rank(mask));
        }
    }

    #[test]
    fn element_classes_and_pairs() {
        let g = MultiGraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (2, 2)]).unwrap();
        let m = Matroid::graphic(&g).unwrap();
        assert_eq!(m.classify_element(EdgeId(0)).unwrap(), ElementKind::Normal);
        assert_eq!(m.classify_element(EdgeId(2)).unwrap(), ElementKind::Coloop);
        assert_eq!(m.classify_element(EdgeId(3)).unwrap(), ElementKind::Loop);
        assert_eq!(m.find_parallel_pair(), Some((EdgeId(0), EdgeId(1))));
        let c4 = Matroid::graphic(&MultiGraph::cycle(4)).unwrap();
        assert_eq!(c4.find_series_pair(), Some((EdgeId(0), EdgeId(1))));
        assert_eq!(m.connected_components().unwrap().len(), 3);
    }

    #[test]
    fn connectivity_of_standard_examples() {
        assert!(Matroid::uniform(2, 4).unwrap().is_2connected().unwrap());
        let s = Matroid::uniform(1, 2).unwrap().direct_sum(&Matroid::uniform(1, 2).unwrap()).unwrap();
        assert!(!s.is_2connected().unwrap());
        assert_eq!(s.connected_components().unwrap().len(), 2);
        let k4 = Matroid::graphic(&MultiGraph::complete(4)).unwrap();
        assert!(k4.spanned_by(&[EdgeId(0), EdgeId(1)], EdgeId(3)).unwrap());
        assert_eq!(k4.splitting_elements().unwrap().len(), 6);
    }
}
