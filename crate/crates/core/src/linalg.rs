//! Exact sparse linear algebra over ℚ.
//!
//! Vectors are sorted `(key, coefficient)` lists. [`Echelon`] keeps a
//! semi-echelon basis of a growing subspace, optionally tracking how each
//! stored row is written in terms of the inserted vectors.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::hash::Hash;

use crate::rational::{inv_mod, Q};

pub type SparseVec<K> = Vec<(K, Q)>;

/// Normalizes an unsorted list: merges equal keys and drops zeros.
pub fn normalize<K: Ord>(mut v: Vec<(K, Q)>) -> SparseVec<K> {
    v.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<(K, Q)> = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc += &c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// `a + s·b` for sorted sparse vectors.
pub fn axpy<K: Ord + Clone>(a: &[(K, Q)], s: &Q, b: &[(K, Q)]) -> SparseVec<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((b[j].0.clone(), &b[j].1 * s));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = &a[i].1 + &(&b[j].1 * s);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(k, c)| (k.clone(), c * s)));
    out
}

struct Row<K> {
    pivot: K,
    vec: SparseVec<K>,
    /// `vec = Σ c·inserted[i]`.
    transform: SparseVec<usize>,
}

/// Incrementally built semi-echelon basis.
pub struct Echelon<K> {
    rows: Vec<Row<K>>,
    pivots: HashMap<K, usize>,
    inserted: usize,
    track: bool,
}

/// Outcome of reducing a vector against an [`Echelon`].
pub struct Reduction<K> {
    pub residual: SparseVec<K>,
    /// `v − residual = Σ c·inserted[i]` (empty unless tracking).
    pub combination: SparseVec<usize>,
}

impl<K: Ord + Hash + Clone> Echelon<K> {
    pub fn new() -> Echelon<K> {
        Echelon {
            rows: Vec::new(),
            pivots: HashMap::new(),
            inserted: 0,
            track: false,
        }
    }

    /// Also records each row as a combination of inserted vectors.
    pub fn with_transform() -> Echelon<K> {
        Echelon {
            track: true,
            ..Echelon::new()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn reduce(&self, v: &[(K, Q)]) -> Reduction<K> {
        let mut v: SparseVec<K> = v.to_vec();
        let mut comb: SparseVec<usize> = Vec::new();
        let mut heap: BinaryHeap<Reverse<usize>> = v
            .iter()
            .filter_map(|(k, _)| self.pivots.get(k).map(|&r| Reverse(r)))
            .collect();
        let mut last = None;
        while let Some(Reverse(r)) = heap.pop() {
            if last == Some(r) {
                continue;
            }
            last = Some(r);
            let row = &self.rows[r];
            let c = match v.binary_search_by(|(k, _)| k.cmp(&row.pivot)) {
                Ok(pos) => v[pos].1.clone(),
                Err(_) => continue,
            };
            let s = -&c;
            v = axpy(&v, &s, &row.vec);
            if self.track {
                comb = axpy(&comb, &c, &row.transform);
            }
            for (k, _) in &row.vec {
                if let Some(&r2) = self.pivots.get(k) {
                    if r2 > r {
                        heap.push(Reverse(r2));
                    }
                }
            }
        }
        Reduction {
            residual: v,
            combination: comb,
        }
    }

    /// Inserts `v`; returns `Ok(())` when it enlarged the span and otherwise
    /// `Err(c)` with `v = Σ c·inserted[i]` (empty unless tracking).
    pub fn insert(&mut self, v: &[(K, Q)]) -> std::result::Result<(), SparseVec<usize>> {
        let idx = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        if red.residual.is_empty() {
            return Err(red.combination);
        }
        let pivot_c = red.residual[0].1.clone();
        let inv = pivot_c.recip();
        let vec: SparseVec<K> = red.residual.iter().map(|(k, c)| (k.clone(), c * &inv)).collect();
        let transform = if self.track {
            let t = axpy(&[(idx, Q::one())], &Q::from_int(-1), &red.combination);
            t.into_iter().map(|(i, c)| (i, &c * &inv)).collect()
        } else {
            Vec::new()
        };
        let pivot = vec[0].0.clone();
        self.pivots.insert(pivot.clone(), self.rows.len());
        self.rows.push(Row {
            pivot,
            vec,
            transform,
        });
        Ok(())
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &[(K, Q)]) -> bool {
        self.reduce(v).residual.is_empty()
    }

    /// Coefficients of `v` over the inserted vectors, if `v` is in the span.
    pub fn express(&self, v: &[(K, Q)]) -> Option<SparseVec<usize>> {
        let red = self.reduce(v);
        red.residual.is_empty().then_some(red.combination)
    }
}

impl<K: Ord + Hash + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon::new()
    }
}

/// Rank of a list of sparse vectors.
pub fn rank<K: Ord + Hash + Clone>(vs: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        let _ = e.insert(v);
    }
    e.rank()
}

/// Basis of `{c : Σ c_i·images[i] = 0}`, as sparse coefficient vectors.
pub fn kernel<K: Ord + Hash + Clone>(images: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    let mut e = Echelon::with_transform();
    let mut out = Vec::new();
    for (j, v) in images.iter().enumerate() {
        if let Err(comb) = e.insert(v) {
            out.push(axpy(&[(j, Q::one())], &Q::from_int(-1), &comb));
        }
    }
    out
}

/// A prime for modular rank bounds.
pub const PRIME: u64 = (1 << 61) - 1;

/// `a·b mod PRIME` for reduced `a`, `b`.
fn mul_p(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let r = (x as u64 & PRIME) + (x >> 61) as u64;
    if r >= PRIME {
        r - PRIME
    } else {
        r
    }
}

/// Semi-echelon basis over `ℤ/PRIME` for vectors with columns `0..ncols`.
/// Its rank never exceeds the rank of the same integral vectors over ℚ.
pub struct ModEchelon {
    rows: Vec<Vec<(usize, u64)>>,
    pivot_row: Vec<Option<usize>>,
    work: Vec<u64>,
}

impl ModEchelon {
    pub fn new(ncols: usize) -> ModEchelon {
        ModEchelon {
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            work: vec![0; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts a vector of reduced residues; returns whether the span grew.
    pub fn insert(&mut self, v: &[(usize, u64)]) -> bool {
        let Some(start) = v.iter().map(|e| e.0).min() else {
            return false;
        };
        for &(c, x) in v {
            self.work[c] = (self.work[c] + x) % PRIME;
        }
        let mut out = Vec::new();
        for c in start..self.work.len() {
            let f = self.work[c];
            if f == 0 {
                continue;
            }
            self.work[c] = 0;
            match self.pivot_row[c] {
                Some(r) if out.is_empty() => {
                    let f = PRIME - f;
                    for &(j, x) in &self.rows[r][1..] {
                        let w = self.work[j] + mul_p(f, x);
                        self.work[j] = if w >= PRIME { w - PRIME } else { w };
                    }
                }
                _ => out.push((c, f)),
            }
        }
        let Some(&(pivot, lead)) = out.first() else {
            return false;
        };
        let inv = inv_mod(lead, PRIME);
        for e in &mut out {
            e.1 = mul_p(e.1, inv);
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(out);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[(u32, i64)]) -> SparseVec<u32> {
        normalize(xs.iter().map(|&(k, c)| (k, Q::from_int(c))).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let a = v(&[(0, 1), (1, 2)]);
        let b = v(&[(1, 1), (2, 1)]);
        let c = v(&[(0, 1), (1, 4), (2, 2)]);
        assert_eq!(rank(&[a.clone(), b.clone(), c.clone()]), 2);
        let k = kernel(&[a.clone(), b.clone(), c.clone()]);
        assert_eq!(k.len(), 1);
        let mut sum: SparseVec<u32> = Vec::new();
        for (i, q) in &k[0] {
            sum = axpy(&sum, q, &[a.clone(), b.clone(), c.clone()][*i]);
        }
        assert!(sum.is_empty());
    }

    #[test]
    fn express_in_basis() {
        let mut e = Echelon::with_transform();
        let a = v(&[(3, 2), (5, 1)]);
        let b = v(&[(3, 1), (7, 1)]);
        e.insert(&a).unwrap();
        e.insert(&b).unwrap();
        let t = v(&[(3, 5), (5, 1), (7, 3)]);
        let c = e.express(&t).unwrap();
        assert_eq!(c, vec![(0, Q::one()), (1, Q::from_int(3))]);
        assert!(e.express(&v(&[(9, 1)])).is_none());
    }
}
