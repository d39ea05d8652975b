//! Sparse exact linear algebra over the rationals.
//!
//! Vectors are `BTreeMap<column, coefficient>` with no stored zeros. An
//! [`Echelon`] keeps rows with pairwise distinct leading columns (the
//! smallest column index present), which is enough for canonical
//! remainders, membership tests and filtered dimension counts.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Q;

pub type SparseVec = BTreeMap<usize, Q>;

/// `y += a * x`, dropping cancelled entries.
pub fn axpy(y: &mut SparseVec, a: &Q, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (c, v) in x {
        let prod = a * v;
        match y.get_mut(c) {
            Some(slot) => {
                *slot += prod;
                if slot.is_zero() {
                    y.remove(c);
                }
            }
            None => {
                y.insert(*c, prod);
            }
        }
    }
}

pub fn scale(x: &mut SparseVec, a: &Q) {
    if a.is_zero() {
        x.clear();
    } else {
        for v in x.values_mut() {
            *v *= a;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    lead: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn leads(&self) -> impl Iterator<Item = usize> + '_ {
        self.lead.keys().copied()
    }

    pub fn has_lead(&self, col: usize) -> bool {
        self.lead.contains_key(&col)
    }

    /// Canonical remainder of `v` modulo the row space: the unique element
    /// of `v + span(rows)` vanishing on every leading column.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        self.reduce_tracked(&mut v, None);
        v
    }

    fn reduce_tracked(&self, v: &mut SparseVec, mut comb: Option<(&mut SparseVec, &[SparseVec])>) {
        let mut start = 0;
        loop {
            let hit = v
                .range(start..)
                .find(|(c, _)| self.lead.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = hit else { break };
            let r = self.lead[&c];
            let neg = -x;
            axpy(v, &neg, &self.rows[r]);
            if let Some((comb, combs)) = comb.as_mut() {
                axpy(comb, &neg, &combs[r]);
            }
            start = c + 1;
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Inserts `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(v);
        let Some((&c, x)) = v.iter().next() else {
            return false;
        };
        let inv = Q::one() / x;
        scale(&mut v, &inv);
        self.lead.insert(c, self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn extend<I: IntoIterator<Item = SparseVec>>(&mut self, vs: I) -> usize {
        vs.into_iter().filter(|v| self.insert(v.clone())).count()
    }

    /// Rows whose leading column satisfies `pred`. When columns are ordered
    /// so that a filtration piece is a terminal segment, the rows with lead
    /// in that segment span the intersection with the piece.
    pub fn rows_with_lead<'a>(&'a self, pred: impl Fn(usize) -> bool + 'a) -> impl Iterator<Item = &'a SparseVec> + 'a {
        self.lead.iter().filter(move |(c, _)| pred(**c)).map(move |(_, r)| &self.rows[*r])
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_space(&self, other: &Echelon) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }
}

/// Basis of the kernel of the linear map sending the `i`-th domain basis
/// vector to `images[i]`. Kernel vectors are expressed in domain
/// coordinates.
pub fn kernel(images: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    let mut combs: Vec<SparseVec> = Vec::new();
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut comb = SparseVec::new();
        comb.insert(i, Q::one());
        ech.reduce_tracked(&mut v, Some((&mut comb, &combs)));
        match v.iter().next() {
            None => out.push(comb),
            Some((&c, x)) => {
                let inv = Q::one() / x;
                scale(&mut v, &inv);
                scale(&mut comb, &inv);
                ech.lead.insert(c, ech.rows.len());
                ech.rows.push(v);
                combs.push(comb);
            }
        }
    }
    out
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut ech = Echelon::new();
    ech.extend(vectors.iter().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(c, x)| (*c, q(*x))).filter(|(_, x)| !x.is_zero()).collect()
    }

    #[test]
    fn insert_and_reduce() {
        let mut e = Echelon::new();
        assert!(e.insert(sv(&[(0, 2), (1, 4)])));
        assert!(e.insert(sv(&[(1, 1), (2, 1)])));
        assert!(!e.insert(sv(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.dim(), 2);
        assert!(e.contains(&sv(&[(0, 1), (1, 2)])));
        assert!(!e.contains(&sv(&[(2, 1)])));
        // remainder is canonical
        let r1 = e.reduce(sv(&[(2, 1)]));
        let r2 = e.reduce(sv(&[(0, 1), (1, 2), (2, 1)]));
        assert_eq!(r1, r2);
    }

    #[test]
    fn kernel_of_small_map() {
        // columns of [[1,2,3],[2,4,6]] as images of three domain vectors
        let images = vec![sv(&[(0, 1), (1, 2)]), sv(&[(0, 2), (1, 4)]), sv(&[(0, 3), (1, 6)])];
        let ker = kernel(&images);
        assert_eq!(ker.len(), 2);
        for k in &ker {
            let mut total = SparseVec::new();
            for (i, c) in k {
                axpy(&mut total, c, &images[*i]);
            }
            assert!(total.is_empty());
        }
        assert_eq!(rank(&images), 1);
    }

    #[test]
    fn filtered_rows() {
        let mut e = Echelon::new();
        e.insert(sv(&[(0, 1), (3, 1)]));
        e.insert(sv(&[(2, 1), (3, 5)]));
        e.insert(sv(&[(3, 1)]));
        assert_eq!(e.rows_with_lead(|c| c >= 2).count(), 2);
        assert!(e.rows_with_lead(|c| c >= 2).all(|r| r.keys().all(|c| *c >= 2)));
    }
}
