//! Verma modules truncated at a height cap.
//!
//! `M(lambda)` has basis `f^B v_lambda` indexed by `f`-exponent vectors
//! `B`. The weight of `f^B v_lambda` is `lambda - sum_j b_j beta_j`; the
//! root-lattice vector `sum_j b_j beta_j` is used as the weight-space key.
//! Terms pushed above the cap are dropped and recorded in a
//! [`Truncation`] so callers never mistake a truncated result for an exact
//! one.

pub mod calculus;
pub mod submodule;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::enveloping::{BasisIndex, Enveloping, Monomial, UEAElement};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::root_system::{RootSystem, Weight};
use crate::scalar::{q, valuation, Q, Val};

pub use calculus::{
    extract_weight_component, separating_operator, AffinoidVector, Extraction, SeparatingOperator, Separator,
};
pub use submodule::{
    correspondence_roundtrip, maximal_submodule, simple_quotient, singular_vectors, submodule_lattice,
    MaximalSubmodule, RoundtripReport, SubmoduleBasis, SubmoduleLattice, TruncationStatus,
};

/// `f`-exponent vector `B`.
pub type FExp = Vec<u32>;
/// `lambda - mu` as a vector over the simple roots.
pub type WeightKey = Vec<i64>;

/// Lowest height and gauge among terms dropped above the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub min_height: u32,
    pub min_gauge: Val,
}

impl Truncation {
    fn merge(a: Option<Truncation>, b: Option<Truncation>) -> Option<Truncation> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(Truncation {
                min_height: a.min_height.min(b.min_height),
                min_gauge: a.min_gauge.min(b.min_gauge),
            }),
        }
    }
}

/// Element of `M(lambda)` at a height cap.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VermaVector {
    terms: BTreeMap<FExp, Q>,
    truncation: Option<Truncation>,
}

impl VermaVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (FExp, Q)>>(it: I) -> Self {
        let mut v = Self::zero();
        for (b, c) in it {
            v.add_term(b, c);
        }
        v
    }

    pub fn terms(&self) -> &BTreeMap<FExp, Q> {
        &self.terms
    }

    pub fn truncation(&self) -> Option<Truncation> {
        self.truncation
    }

    pub fn is_truncated(&self) -> bool {
        self.truncation.is_some()
    }

    /// Same terms with the truncation flag cleared.
    pub fn exact_part(&self) -> VermaVector {
        Self { terms: self.terms.clone(), truncation: None }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, b: &[u32]) -> Q {
        self.terms.get(b).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, b: FExp, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &VermaVector, c: &Q) {
        if !c.is_zero() {
            for (b, x) in &other.terms {
                self.add_term(b.clone(), x * c);
            }
        }
        self.truncation = Truncation::merge(self.truncation, other.truncation);
    }

    pub fn scaled(&self, c: &Q) -> VermaVector {
        let mut out = VermaVector { terms: BTreeMap::new(), truncation: self.truncation };
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect();
        }
        out
    }

    pub fn sub(&self, other: &VermaVector) -> VermaVector {
        let mut out = self.clone();
        out.add_scaled(other, &q(-1));
        out
    }

    /// Keeps only the terms satisfying `pred`.
    pub fn filtered(&self, pred: impl Fn(&FExp) -> bool) -> VermaVector {
        VermaVector {
            terms: self.terms.iter().filter(|(b, _)| pred(b)).map(|(b, c)| (b.clone(), c.clone())).collect(),
            truncation: self.truncation,
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&FExp, &Q) -> Q) -> VermaVector {
        let mut out = VermaVector { terms: BTreeMap::new(), truncation: self.truncation };
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(b, c));
        }
        out
    }
}

pub struct VermaModule {
    alg: Arc<Enveloping>,
    lambda: Weight,
    cap: u32,
    spaces: BTreeMap<WeightKey, Vec<FExp>>,
    position: HashMap<FExp, (WeightKey, usize)>,
    global: HashMap<FExp, usize>,
    cache: RwLock<HashMap<(usize, FExp), VermaVector>>,
}

impl std::fmt::Debug for VermaModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VermaModule").field("lambda", &self.lambda).field("cap", &self.cap).finish()
    }
}

/// All `B` with `sum b_j ht(beta_j) <= cap`.
fn enumerate_exponents(heights: &[u32], cap: u32) -> Vec<FExp> {
    fn rec(heights: &[u32], pos: usize, left: u32, cur: &mut FExp, out: &mut Vec<FExp>) {
        if pos == heights.len() {
            out.push(cur.clone());
            return;
        }
        let mut e = 0;
        while e * heights[pos] <= left {
            cur[pos] = e;
            rec(heights, pos + 1, left - e * heights[pos], cur, out);
            e += 1;
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    rec(heights, 0, cap, &mut vec![0; heights.len()], &mut out);
    out
}

impl VermaModule {
    pub fn new(alg: Arc<Enveloping>, lambda: Weight, cap: u32) -> Result<Self> {
        let rs = alg.root_system();
        if lambda.rank() != rs.rank() {
            return Err(Error::Config(format!(
                "weight {lambda} has {} pairings, root system has rank {}",
                lambda.rank(),
                rs.rank()
            )));
        }
        lambda.check_level(alg.prime())?;
        let heights: Vec<u32> = rs.positive_roots().iter().map(|r| r.height() as u32).collect();
        let mut spaces: BTreeMap<WeightKey, Vec<FExp>> = BTreeMap::new();
        for b in enumerate_exponents(&heights, cap) {
            spaces.entry(Self::key_in(rs, &b)).or_default().push(b);
        }
        let mut position = HashMap::new();
        let mut global = HashMap::new();
        for (key, bs) in spaces.iter_mut() {
            bs.sort();
            for (i, b) in bs.iter().enumerate() {
                position.insert(b.clone(), (key.clone(), i));
                let g = global.len();
                global.insert(b.clone(), g);
            }
        }
        Ok(Self {
            alg,
            lambda,
            cap,
            spaces,
            position,
            global,
            cache: RwLock::new(HashMap::new()),
        })
    }

    fn key_in(rs: &RootSystem, b: &[u32]) -> WeightKey {
        let mut key = vec![0i64; rs.rank()];
        for (j, e) in b.iter().enumerate() {
            for (i, c) in rs.positive_roots()[j].coeffs.iter().enumerate() {
                key[i] += *e as i64 * c;
            }
        }
        key
    }

    pub fn algebra(&self) -> &Arc<Enveloping> {
        &self.alg
    }

    pub fn root_system(&self) -> &RootSystem {
        self.alg.root_system()
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.lambda
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// `Lambda = lambda(delta)`.
    pub fn big_lambda(&self) -> Q {
        self.root_system().weight_delta(&self.lambda)
    }

    pub fn num_positive(&self) -> usize {
        self.root_system().num_positive()
    }

    pub fn weight_key(&self, b: &[u32]) -> WeightKey {
        Self::key_in(self.root_system(), b)
    }

    pub fn height(&self, b: &[u32]) -> u32 {
        self.root_system()
            .positive_roots()
            .iter()
            .zip(b)
            .map(|(r, e)| r.height() as u32 * e)
            .sum()
    }

    pub fn degree(b: &[u32]) -> u32 {
        b.iter().sum()
    }

    pub fn key_height(key: &[i64]) -> u32 {
        key.iter().sum::<i64>() as u32
    }

    pub fn weight_of_key(&self, key: &[i64]) -> Weight {
        self.root_system().shift_down(&self.lambda, key)
    }

    pub fn weight_of(&self, b: &[u32]) -> Weight {
        self.weight_of_key(&self.weight_key(b))
    }

    /// Root-lattice key of `mu`, if `lambda - mu` is a nonnegative integer
    /// combination of simple roots.
    pub fn key_of_weight(&self, mu: &Weight) -> Result<WeightKey> {
        let rs = self.root_system();
        let r = rs.rank();
        let diff = self.lambda.sub(mu);
        // diff(h_j) = sum_i k_i a_ji; solve for k over Q
        let mut m: Vec<Vec<Q>> = (0..r)
            .map(|j| {
                let mut row: Vec<Q> = (0..r).map(|i| q(rs.cartan_matrix()[j][i])).collect();
                row.push(diff.coroot_pairings[j].clone());
                row
            })
            .collect();
        for col in 0..r {
            let piv = (col..r).find(|row| !m[*row][col].is_zero()).expect("nonsingular Cartan matrix");
            m.swap(col, piv);
            let inv = Q::one() / &m[col][col];
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for row in 0..r {
                if row != col && !m[row][col].is_zero() {
                    let f = m[row][col].clone();
                    for k in 0..=r {
                        let s = &f * &m[col][k];
                        m[row][k] -= s;
                    }
                }
            }
        }
        let mut key = Vec::with_capacity(r);
        for row in m {
            match crate::scalar::q_to_i64(&row[r]) {
                Some(k) if k >= 0 => key.push(k),
                _ => {
                    return Err(Error::Domain(format!(
                        "{mu} is not a weight of M({}): lambda - mu is not a nonnegative integral combination of simple roots",
                        self.lambda
                    )))
                }
            }
        }
        Ok(key)
    }

    /// Weight spaces within the cap, keyed by `lambda - mu`.
    pub fn weight_spaces(&self) -> &BTreeMap<WeightKey, Vec<FExp>> {
        &self.spaces
    }

    pub fn space(&self, key: &[i64]) -> &[FExp] {
        self.spaces.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self) -> usize {
        self.global.len()
    }

    pub fn global_index(&self, b: &[u32]) -> Option<usize> {
        self.global.get(b).copied()
    }

    pub fn position(&self, b: &[u32]) -> Option<&(WeightKey, usize)> {
        self.position.get(b)
    }

    pub fn highest_weight_vector(&self) -> VermaVector {
        self.basis_vector(vec![0; self.num_positive()])
    }

    pub fn basis_vector(&self, b: FExp) -> VermaVector {
        VermaVector::from_terms([(b, Q::one())])
    }

    fn f_monomial(&self, b: &[u32]) -> Monomial {
        let mut m = Monomial::one(self.alg.dim());
        m.0[..b.len()].copy_from_slice(b);
        m
    }

    /// `x . f^B v_lambda` without truncation.
    pub fn act_gen_basis(&self, x: usize, b: &FExp) -> VermaVector {
        let lay = self.alg.layout();
        match lay.basis(x) {
            BasisIndex::H(i) => {
                let w = self.weight_of(b);
                self.basis_vector(b.clone()).scaled(&w.coroot_pairings[i])
            }
            BasisIndex::F(_) => {
                let prod = self.alg.left_mul_gen(x, &self.f_monomial(b));
                let n = self.num_positive();
                VermaVector::from_terms(prod.terms().iter().map(|(m, c)| {
                    debug_assert!(m.exponents()[n..].iter().all(|e| *e == 0));
                    (m.exponents()[..n].to_vec(), c.clone())
                }))
            }
            BasisIndex::E(_) => {
                let Some(j) = b.iter().position(|e| *e > 0) else {
                    return VermaVector::zero();
                };
                let key = (x, b.clone());
                if let Some(hit) = self.cache.read().unwrap().get(&key) {
                    return hit.clone();
                }
                // e f_j f^B' v = f_j (e f^B' v) + [e, f_j] f^B' v
                let mut rest = b.clone();
                rest[j] -= 1;
                let inner = self.act_gen_basis(x, &rest);
                let mut out = VermaVector::zero();
                for (bb, c) in inner.terms() {
                    out.add_scaled(&self.act_gen_basis(j, bb), c);
                }
                for (z, c) in self.alg.structure_constants().bracket(x, j) {
                    out.add_scaled(&self.act_gen_basis(*z, &rest), &q(*c));
                }
                self.cache.write().unwrap().insert(key, out.clone());
                out
            }
        }
    }

    pub(crate) fn clip(&self, mut v: VermaVector) -> VermaVector {
        let n = self.highest_weight().deformation_level;
        let over: Vec<FExp> = v.terms.keys().filter(|b| self.height(b) > self.cap).cloned().collect();
        for b in over {
            let c = v.terms.remove(&b).unwrap();
            let t = Truncation {
                min_height: self.height(&b),
                min_gauge: valuation(&c, self.alg.prime()) + -(n as i64 * Self::degree(&b) as i64),
            };
            v.truncation = Truncation::merge(v.truncation, Some(t));
        }
        v
    }

    /// Generator action on a vector, truncated at the cap.
    pub fn act_gen(&self, x: usize, v: &VermaVector) -> VermaVector {
        let mut out = VermaVector { terms: BTreeMap::new(), truncation: v.truncation };
        for (b, c) in v.terms() {
            out.add_scaled(&self.act_gen_basis(x, b), c);
        }
        self.clip(out)
    }

    /// Monomial action: the factors of `f^B h^C e^A` act right to left, so
    /// heights only rise in the final `f` phase and clipping there is exact
    /// below the cap.
    pub fn act_monomial(&self, m: &Monomial, v: &VermaVector) -> VermaVector {
        m.factors().iter().rev().fold(v.clone(), |acc, g| self.act_gen(*g, &acc))
    }

    pub fn act(&self, u: &UEAElement, v: &VermaVector) -> VermaVector {
        let mut out = VermaVector { terms: BTreeMap::new(), truncation: v.truncation };
        for (m, c) in u.terms() {
            out.add_scaled(&self.act_monomial(m, v), c);
        }
        out
    }

    /// Independent route: straighten `u f^B` in `U(g)`, drop terms with an
    /// `e`-part and evaluate the `h`-part at `lambda`.
    pub fn act_by_straightening(&self, u: &UEAElement, v: &VermaVector) -> VermaVector {
        let lay = self.alg.layout();
        let n = self.num_positive();
        let mut out = VermaVector::zero();
        for (b, c) in v.terms() {
            let fb = UEAElement::monomial(self.f_monomial(b), c.clone());
            let prod = self.alg.mul(u, &fb);
            'terms: for (m, x) in prod.terms() {
                let mut val = x.clone();
                for (idx, e) in m.exponents().iter().enumerate().skip(n) {
                    if *e == 0 {
                        continue;
                    }
                    match lay.basis(idx) {
                        BasisIndex::H(i) => {
                            for _ in 0..*e {
                                val *= &self.lambda.coroot_pairings[i];
                            }
                        }
                        _ => continue 'terms,
                    }
                }
                out.add_term(m.exponents()[..n].to_vec(), val);
            }
        }
        self.clip(out)
    }

    /// Weight components keyed by `lambda - mu`.
    pub fn split(&self, v: &VermaVector) -> BTreeMap<WeightKey, VermaVector> {
        let mut out: BTreeMap<WeightKey, VermaVector> = BTreeMap::new();
        for (b, c) in v.terms() {
            out.entry(self.weight_key(b)).or_default().add_term(b.clone(), c.clone());
        }
        out
    }

    /// Direct projection onto one weight space in the PBW weight basis.
    pub fn project(&self, v: &VermaVector, key: &[i64]) -> VermaVector {
        v.filtered(|b| self.weight_key(b) == key).exact_part()
    }

    /// Local coordinates of a vector supported on one weight space.
    pub fn to_local(&self, v: &VermaVector) -> SparseVec {
        v.terms().iter().map(|(b, c)| (self.position[b].1, c.clone())).collect()
    }

    pub fn from_local(&self, key: &[i64], sv: &SparseVec) -> VermaVector {
        let space = self.space(key);
        VermaVector::from_terms(sv.iter().map(|(i, c)| (space[*i].clone(), c.clone())))
    }

    /// `delta f^B v = (Lambda - height(f^B)) f^B v`.
    pub fn delta_eigenvalue(&self, b: &[u32]) -> Q {
        self.big_lambda() - q(self.height(b) as i64)
    }

    pub fn apply_delta(&self, v: &VermaVector) -> VermaVector {
        v.map_coefficients(|b, c| c * self.delta_eigenvalue(b))
    }

    /// Eigenvalue of `delta - Lambda + a` on `f^B v`: `a - height(f^B)`.
    pub fn shifted_delta_eigenvalue(&self, a: i64, b: &[u32]) -> Q {
        q(a - self.height(b) as i64)
    }

    /// `epsilon_{i,j} f^B v = C(i + j - height(f^B), i) f^B v`.
    pub fn epsilon_coefficient(i: u32, j: u32, height: u32) -> Q {
        crate::scalar::binomial(i as i64 + j as i64 - height as i64, i)
    }

    pub fn epsilon_apply(&self, i: u32, j: u32, v: &VermaVector) -> VermaVector {
        v.map_coefficients(|b, c| c * Self::epsilon_coefficient(i, j, self.height(b)))
    }

    /// `epsilon_{i,j} = prod_{l<i} (delta - Lambda + i + j - l) / i!` in `U(h)`.
    pub fn epsilon_operator(&self, i: u32, j: u32) -> UEAElement {
        let alg = &self.alg;
        let delta = alg.delta_element();
        let mut op = alg.one();
        let mut fact = Q::one();
        for l in 0..i {
            let shift = -self.big_lambda() + q(i as i64 + j as i64 - l as i64);
            let factor = &delta + &alg.constant(shift);
            op = alg.mul(&op, &factor);
            fact *= q(l as i64 + 1);
        }
        op.scaled(&(Q::one() / fact))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::CartanType;
    use crate::scalar::q_frac;
    use BasisIndex::{E, F, H};

    fn sl2_module(m: Q, cap: u32) -> VermaModule {
        let alg = Enveloping::of_type(CartanType::A1, 5).unwrap();
        VermaModule::new(alg, Weight::new(vec![m]), cap).unwrap()
    }

    #[test]
    fn sl2_actions() {
        for m in [q(0), q(3), q_frac(1, 2), q(-4)] {
            let vm = sl2_module(m.clone(), 8);
            let alg = vm.algebra().clone();
            let fv = vm.basis_vector(vec![1]);
            let hfv = vm.act(&alg.gen(H(0)), &fv);
            assert_eq!(hfv, fv.scaled(&(&m - q(2))));
            let efv = vm.act(&alg.gen(E(0)), &fv);
            assert_eq!(efv, vm.highest_weight_vector().scaled(&m));
            assert!(vm.act(&alg.gen(E(0)), &vm.highest_weight_vector()).is_zero());
        }
    }

    #[test]
    fn truncation_is_flagged() {
        let vm = sl2_module(q(2), 3);
        let alg = vm.algebra().clone();
        let top = vm.basis_vector(vec![3]);
        let out = vm.act(&alg.gen(F(0)), &top);
        assert!(out.is_zero());
        assert_eq!(out.truncation().unwrap().min_height, 4);
        let ok = vm.act(&alg.gen(E(0)), &top);
        assert!(!ok.is_truncated());
    }

    #[test]
    fn two_routes_agree_rank_two() {
        for t in [CartanType::A2, CartanType::B2, CartanType::G2] {
            let alg = Enveloping::of_type(t, 5).unwrap();
            let vm = VermaModule::new(alg.clone(), Weight::new(vec![q(2), q_frac(-1, 3)]), 7).unwrap();
            let omega = alg.casimir();
            for (_, bs) in vm.weight_spaces().iter().take(12) {
                for b in bs.iter().filter(|b| vm.height(b) <= 3) {
                    let v = vm.basis_vector(b.clone());
                    for x in 0..alg.dim() {
                        let u = alg.gen_idx(x);
                        assert_eq!(vm.act(&u, &v), vm.act_by_straightening(&u, &v), "{t} {x} {b:?}");
                    }
                    assert_eq!(vm.act(&omega, &v), vm.act_by_straightening(&omega, &v));
                }
            }
        }
    }

    #[test]
    fn weight_keys_and_domain_errors() {
        let alg = Enveloping::of_type(CartanType::A2, 5).unwrap();
        let vm = VermaModule::new(alg, Weight::from_ints(&[1, 1]), 4).unwrap();
        let mu = vm.weight_of_key(&[2, 1]);
        assert_eq!(vm.key_of_weight(&mu).unwrap(), vec![2, 1]);
        assert!(matches!(vm.key_of_weight(&Weight::from_ints(&[2, 2])), Err(Error::Domain(_))));
        assert!(matches!(vm.key_of_weight(&Weight::new(vec![q_frac(1, 2), q(1)])), Err(Error::Domain(_))));
    }

    #[test]
    fn epsilon_binomial_cases() {
        for j in 0..5u32 {
            for i in 0..5u32 {
                assert_eq!(VermaModule::epsilon_coefficient(i, j, j), q(1));
                for t in j + 1..=i + j {
                    assert_eq!(VermaModule::epsilon_coefficient(i, j, t), q(0));
                }
            }
        }
        for l in 1..7u32 {
            let expected = if (l - 1) % 2 == 0 { q(1) } else { q(-1) };
            assert_eq!(VermaModule::epsilon_coefficient(l - 1, 0, l), expected);
        }
    }

    #[test]
    fn delta_eigenvalues_sl2() {
        let m = q(7);
        let vm = sl2_module(m.clone(), 6);
        // delta = h / 2 for sl2
        assert_eq!(vm.delta_eigenvalue(&[0]), q_frac(7, 2));
        assert_eq!(vm.delta_eigenvalue(&[3]), q_frac(1, 2));
        let alg = vm.algebra().clone();
        for a in -2..4 {
            for k in 0..5u32 {
                let v = vm.basis_vector(vec![k]);
                let op = &alg.delta_element() + &alg.constant(-vm.big_lambda() + q(a));
                assert_eq!(vm.act(&op, &v), v.scaled(&vm.shifted_delta_eigenvalue(a, &[k])));
            }
        }
    }

    #[test]
    fn height_inequality_on_basis() {
        for t in CartanType::ALL {
            let alg = Enveloping::of_type(t, 5).unwrap();
            let mh = alg.root_system().max_root_height() as u32;
            let vm = VermaModule::new(alg, Weight::zero(t.rank()), 8).unwrap();
            for bs in vm.weight_spaces().values() {
                for b in bs {
                    let deg = VermaModule::degree(b);
                    assert!(mh * deg >= vm.height(b) && vm.height(b) >= deg);
                }
            }
        }
    }
}
