//! Two-sided ideals of `U(g)` at a PBW-degree cap.
//!
//! An ideal is stored as an echelon basis of `I ∩ U(g)_{<=d}` over the PBW
//! monomials of degree at most `d`, with columns sorted by descending
//! degree. With that ordering the rows whose leading monomial has degree at
//! most `k` span `I ∩ U(g)_{<=k}`, so every filtration piece is read off a
//! single echelon form.

pub mod checks;
pub mod tmodule;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::enveloping::{BasisIndex, Enveloping, Monomial, UEAElement};
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::scalar::{q, Q};
use crate::verma::{SubmoduleBasis, VermaModule, VermaVector};

pub use checks::{
    adjoint_invariance_check, ann_quotient_check, controller_check, duflo_check, injectivity_check, joseph_map,
    torsion_check,
};
pub use tmodule::{phi_property_check, TModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    CentralCharacter,
    Annihilator,
    User,
}

/// Whether an ideal is known exactly at its cap or only up to one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    /// Kernel of the action on finitely many vectors of an infinite module.
    TruncatedSuperset { height_cap: u32, degree_cap: u32 },
    /// Products `a g b` kept below the degree cap; elements of `I ∩ U_{<=d}`
    /// reachable only through higher-degree intermediates may be missing.
    TruncatedSubset { degree_cap: u32 },
}

/// PBW monomials of degree at most `d`, in column order.
#[derive(Debug)]
pub struct MonomialIndex {
    degree_cap: u32,
    monomials: Vec<Monomial>,
    column: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(alg: &Enveloping, degree_cap: u32) -> Self {
        let monomials = alg.monomials_up_to(degree_cap);
        let column = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { degree_cap, monomials, column }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn column(&self, m: &Monomial) -> Option<usize> {
        self.column.get(m).copied()
    }

    /// Coordinates of `a`, or `None` if `a` has degree above the cap.
    pub fn to_sparse(&self, a: &UEAElement) -> Option<SparseVec> {
        a.terms().iter().map(|(m, c)| self.column(m).map(|i| (i, c.clone()))).collect()
    }

    pub fn from_sparse(&self, v: &SparseVec) -> UEAElement {
        UEAElement::from_terms(v.iter().map(|(i, c)| (self.monomials[*i].clone(), c.clone())))
    }
}

#[derive(Clone, Debug)]
pub struct IdealBasis {
    alg: Arc<Enveloping>,
    index: Arc<MonomialIndex>,
    ech: Echelon,
    generators: Vec<(UEAElement, Provenance)>,
    exactness: Exactness,
}

impl IdealBasis {
    pub fn zero(alg: Arc<Enveloping>, degree_cap: u32) -> Self {
        let index = Arc::new(MonomialIndex::new(&alg, degree_cap));
        Self::with_index(alg, index)
    }

    fn with_index(alg: Arc<Enveloping>, index: Arc<MonomialIndex>) -> Self {
        Self { alg, index, ech: Echelon::new(), generators: Vec::new(), exactness: Exactness::Exact }
    }

    /// All of `U(g)_{<=d}`.
    pub fn whole(alg: Arc<Enveloping>, degree_cap: u32) -> Self {
        let one = alg.one();
        two_sided_closure(&alg, &[(one, Provenance::User)], degree_cap)
    }

    pub fn algebra(&self) -> &Arc<Enveloping> {
        &self.alg
    }

    pub fn degree_cap(&self) -> u32 {
        self.index.degree_cap
    }

    pub fn index(&self) -> &MonomialIndex {
        &self.index
    }

    pub fn generators(&self) -> &[(UEAElement, Provenance)] {
        &self.generators
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }

    pub fn dim(&self) -> usize {
        self.ech.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.ech.is_empty()
    }

    fn lead_degree(&self, col: usize) -> u32 {
        self.index.monomials[col].degree()
    }

    /// `dim I ∩ U_{<=k}` for `k = 0..=d`.
    pub fn per_degree_dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.degree_cap() as usize + 1];
        for c in self.ech.leads() {
            for slot in out.iter_mut().skip(self.lead_degree(c) as usize) {
                *slot += 1;
            }
        }
        out
    }

    /// Basis of `I ∩ U_{<=k}`.
    pub fn basis_up_to(&self, k: u32) -> Vec<UEAElement> {
        self.ech
            .rows_with_lead(|c| self.index.monomials[c].degree() <= k)
            .map(|r| self.index.from_sparse(r))
            .collect()
    }

    pub fn basis(&self) -> Vec<UEAElement> {
        self.basis_up_to(self.degree_cap())
    }

    /// Exact membership; elements above the cap are never members.
    pub fn contains(&self, a: &UEAElement) -> bool {
        self.index.to_sparse(a).is_some_and(|v| self.ech.contains(&v))
    }

    pub fn is_subset_of(&self, other: &IdealBasis) -> bool {
        assert_eq!(self.degree_cap(), other.degree_cap(), "ideals compared at different caps");
        self.ech.is_subspace_of(&other.ech)
    }

    pub fn same_as(&self, other: &IdealBasis) -> bool {
        self.dim() == other.dim() && self.is_subset_of(other)
    }

    /// Contains a nonzero scalar, hence everything.
    pub fn contains_one(&self) -> bool {
        self.contains(&self.alg.one())
    }

    fn insert(&mut self, a: &UEAElement) -> bool {
        match self.index.to_sparse(a) {
            Some(v) => self.ech.insert(v),
            None => false,
        }
    }
}

/// Saturates `span(gens)` under left and right multiplication by the Lie
/// generators, keeping only products of degree at most `d`.
///
/// Each round multiplies the elements added in the previous round, in
/// parallel, and inserts the products in a fixed order, so the result is
/// independent of scheduling.
pub fn two_sided_closure(alg: &Arc<Enveloping>, gens: &[(UEAElement, Provenance)], d: u32) -> IdealBasis {
    let mut ideal = IdealBasis::zero(alg.clone(), d);
    ideal.generators = gens.to_vec();
    let mut frontier: Vec<UEAElement> = gens.iter().filter(|(g, _)| ideal.insert(g)).map(|(g, _)| g.clone()).collect();
    let dim = alg.dim();
    while !frontier.is_empty() {
        let products: Vec<UEAElement> = frontier
            .par_iter()
            .filter(|a| a.degree().unwrap_or(0) < d)
            .flat_map_iter(|a| {
                (0..dim).flat_map(move |x| {
                    let g = alg.gen_idx(x);
                    [alg.gen_mul(x, a), alg.mul(a, &g)]
                })
            })
            .collect();
        frontier = products.into_iter().filter(|p| ideal.insert(p)).collect();
    }
    // a single central z gives I ∩ U_{<=k} = U_{<=k-deg z} z, since gr U is
    // a domain; the unit ideal and the zero ideal are trivially exact
    let nonzero: Vec<&UEAElement> = gens.iter().map(|(g, _)| g).filter(|g| !g.is_zero()).collect();
    let single_central = nonzero.len() == 1 && alg.centrality_witness(nonzero[0]).is_none();
    if !(nonzero.is_empty() || single_central || ideal.contains_one()) {
        ideal.exactness = Exactness::TruncatedSubset { degree_cap: d };
    }
    ideal
}

/// Kernel of `m -> images(m)` over the monomials of degree at most `d`.
pub fn annihilator_from_images<F>(
    alg: &Arc<Enveloping>,
    d: u32,
    images: F,
    exactness: Exactness,
) -> IdealBasis
where
    F: Fn(&Monomial) -> SparseVec + Sync,
{
    let mut ideal = IdealBasis::zero(alg.clone(), d);
    let cols: Vec<SparseVec> = ideal.index.monomials.par_iter().map(&images).collect();
    for k in kernel(&cols) {
        ideal.ech.insert(k);
    }
    let basis = ideal.basis();
    ideal.generators = basis.into_iter().map(|g| (g, Provenance::Annihilator)).collect();
    ideal.exactness = exactness;
    ideal
}

/// Representatives `f^B v` of a basis of `M / N` at heights at most `k`.
pub fn quotient_representatives(module: &VermaModule, sub: &SubmoduleBasis, k: u32) -> Vec<VermaVector> {
    let mut out = Vec::new();
    for (key, space) in module.weight_spaces() {
        if VermaModule::key_height(key) > k {
            continue;
        }
        for (pos, b) in space.iter().enumerate() {
            let is_lead = sub.space(key).is_some_and(|e| e.has_lead(pos));
            if !is_lead {
                out.push(module.basis_vector(b.clone()));
            }
        }
    }
    out
}

/// Coordinates of `v` in `M / N`: canonical remainders per weight space,
/// laid out by global PBW index.
fn quotient_coordinates(module: &VermaModule, sub: &SubmoduleBasis, v: &VermaVector, slot: usize, slots: usize) -> SparseVec {
    let mut out = SparseVec::new();
    for (key, comp) in module.split(v) {
        for (pos, c) in sub.reduce_local(&key, module.to_local(&comp)) {
            let g = module.global_index(&module.space(&key)[pos]).unwrap();
            out.insert(g * slots + slot, c);
        }
    }
    out
}

/// `Ann(M / N) ∩ U_{<=d}`, evaluated on quotient vectors of height at most
/// `k`. A PBW monomial applies its `e`'s first, so no product leaves the
/// cap once `k + d * (max root height) <= cap`.
pub fn annihilator_of_quotient(module: &VermaModule, sub: &SubmoduleBasis, k: u32, d: u32) -> IdealBasis {
    let reps = quotient_representatives(module, sub, k);
    let slots = reps.len().max(1);
    let exactness = quotient_exactness(module, sub, k, d);
    annihilator_from_images(
        module.algebra(),
        d,
        |m| {
            let mut img = SparseVec::new();
            for (slot, r) in reps.iter().enumerate() {
                let w = module.act_monomial(m, r);
                img.extend(quotient_coordinates(module, sub, &w, slot, slots));
            }
            img
        },
        exactness,
    )
}

/// Exactness of [`annihilator_of_quotient`]:
/// * the quotient has no basis vectors above height `k` within the cap and
///   `N` fills the top band, so `M / N` is finite-dimensional and fully
///   sampled; or
/// * rank one with `N = 0`: a weight-homogeneous `f^a h^b e^c` of degree at
///   most `d` sends `f^t v` to `P(t) f^(t+a-c) v` with `deg P <= b + 2c <= 2d`
///   (each `e` contributes a quadratic factor), so vanishing at
///   `t = 0..=2d` forces it to vanish identically.
pub fn quotient_exactness(module: &VermaModule, sub: &SubmoduleBasis, k: u32, d: u32) -> Exactness {
    let finite = crate::verma::submodule::fills_top_band(module, sub)
        && module
            .weight_spaces()
            .iter()
            .filter(|(key, _)| VermaModule::key_height(key) > k)
            .all(|(key, bs)| sub.dim_at(key) == bs.len());
    let fits = k + d * module.root_system().max_root_height() as u32 <= module.cap();
    let verma_rank_one = module.root_system().rank() == 1 && sub.is_zero() && k >= 2 * d;
    if fits && (finite || verma_rank_one) {
        Exactness::Exact
    } else {
        Exactness::TruncatedSuperset { height_cap: module.cap(), degree_cap: d }
    }
}

/// `Ann L(m) ∩ U_{<=d}` for `sl2` and `m` a nonnegative integer, computed
/// from the explicit `(m+1)`-dimensional matrices
/// `h v_k = (m - 2k) v_k`, `f v_k = v_{k+1}`, `e v_k = k (m - k + 1) v_{k-1}`.
/// Independent of the Verma-module machinery.
pub fn sl2_irreducible_annihilator(alg: &Arc<Enveloping>, m: u32, d: u32) -> IdealBasis {
    let dim = m as usize + 1;
    let lay = alg.layout();
    let act = |x: usize, v: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); dim];
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match lay.basis(x) {
                BasisIndex::H(_) => out[k] += c * q(m as i64 - 2 * k as i64),
                BasisIndex::F(_) => {
                    if k + 1 < dim {
                        out[k + 1] += c;
                    }
                }
                BasisIndex::E(_) => {
                    if k > 0 {
                        out[k - 1] += c * q(k as i64 * (m as i64 - k as i64 + 1));
                    }
                }
            }
        }
        out
    };
    annihilator_from_images(
        alg,
        d,
        |mono| {
            let mut img = SparseVec::new();
            for col in 0..dim {
                let mut v = vec![Q::zero(); dim];
                v[col] = Q::one();
                for x in mono.factors().iter().rev() {
                    v = act(*x, &v);
                }
                for (row, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        img.insert(row * dim + col, c);
                    }
                }
            }
            img
        },
        Exactness::Exact,
    )
}

/// The two-sided ideal generated by `Omega - chi_lambda(Omega)`.
pub fn central_character_ideal(alg: &Arc<Enveloping>, lambda: &crate::root_system::Weight, d: u32) -> IdealBasis {
    let omega = alg.casimir();
    let c = alg.cartan_projection_at(&omega, lambda);
    let z = &omega - &alg.constant(c);
    two_sided_closure(alg, &[(z, Provenance::CentralCharacter)], d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{CartanType, Weight};
    use crate::scalar::{binomial, q_frac};

    fn sl2() -> Arc<Enveloping> {
        Enveloping::of_type(CartanType::A1, 5).unwrap()
    }

    fn dim_u(d: u32) -> usize {
        // PBW monomials of degree <= d in three variables
        binomial(d as i64 + 3, 3).to_integer().try_into().unwrap()
    }

    #[test]
    fn trivial_closures() {
        let alg = sl2();
        let whole = IdealBasis::whole(alg.clone(), 4);
        assert_eq!(whole.dim(), dim_u(4));
        let zero = two_sided_closure(&alg, &[], 4);
        assert!(zero.is_zero());
        assert_eq!(zero.per_degree_dims(), vec![0; 5]);
    }

    #[test]
    fn central_ideal_dimensions() {
        // (Omega - c) U is free over the domain U, so I ∩ U_{<=k} ≅ U_{<=k-2}
        let alg = sl2();
        for lam in [q(0), q(3), q_frac(1, 2)] {
            let ideal = central_character_ideal(&alg, &Weight::new(vec![lam]), 6);
            let expect: Vec<usize> = (0..=6).map(|k| if k < 2 { 0 } else { dim_u(k - 2) }).collect();
            assert_eq!(ideal.per_degree_dims(), expect);
        }
    }

    #[test]
    fn trivial_module_annihilator() {
        let alg = sl2();
        let ann = sl2_irreducible_annihilator(&alg, 0, 1);
        assert_eq!(ann.per_degree_dims(), vec![0, 3]);
        for b in [BasisIndex::E(0), BasisIndex::F(0), BasisIndex::H(0)] {
            assert!(ann.contains(&alg.gen(b)));
        }
    }

    #[test]
    fn casimir_shift_in_annihilator() {
        let alg = sl2();
        let ann = sl2_irreducible_annihilator(&alg, 1, 2);
        let z = &alg.casimir() - &alg.constant(q_frac(3, 2));
        assert!(ann.contains(&z));
        assert!(!ann.contains(&alg.casimir()));
    }

    #[test]
    fn verma_annihilator_is_central_ideal() {
        let alg = sl2();
        let d = 4;
        for lam in [q(2), q_frac(1, 2), q(-3)] {
            let vm = VermaModule::new(alg.clone(), Weight::new(vec![lam.clone()]), 3 * d).unwrap();
            let ann = annihilator_of_quotient(&vm, &SubmoduleBasis::zero(""), 2 * d, d);
            assert!(ann.is_exact());
            let central = central_character_ideal(&alg, &Weight::new(vec![lam]), d);
            assert!(ann.same_as(&central));
        }
    }

    #[test]
    fn quotient_route_matches_matrices() {
        let alg = sl2();
        for m in 0..4u32 {
            let d = 2 * m + 2;
            let vm = VermaModule::new(alg.clone(), Weight::from_ints(&[m as i64]), 3 * d).unwrap();
            let n = crate::verma::maximal_submodule(&vm).basis;
            let ann = annihilator_of_quotient(&vm, &n, 2 * d, d);
            assert!(ann.is_exact());
            assert!(ann.same_as(&sl2_irreducible_annihilator(&alg, m, d)), "m = {m}");
        }
    }

    #[test]
    fn closure_is_order_independent() {
        let alg = sl2();
        let z = &alg.casimir() - &alg.constant(q(4));
        let e2 = alg.pow(&alg.gen(BasisIndex::E(0)), 3);
        let a = two_sided_closure(&alg, &[(z.clone(), Provenance::User), (e2.clone(), Provenance::User)], 5);
        let b = two_sided_closure(&alg, &[(e2, Provenance::User), (z.clone(), Provenance::User)], 5);
        assert!(a.same_as(&b));
        let c = two_sided_closure(&alg, &[(z, Provenance::User)], 5);
        assert!(c.is_subset_of(&a));
        assert!(c.per_degree_dims().iter().zip(a.per_degree_dims()).all(|(x, y)| *x <= y));
    }
}
