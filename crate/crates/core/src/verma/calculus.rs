//! Weight-component extraction by Cartan-polynomial operators.
//!
//! Every operator used here lies in `U(h)` and acts diagonally on the PBW
//! weight basis, so applying one is a per-term rescaling. The element
//! forms (`to_element`, [`VermaModule::epsilon_operator`]) exist so tests
//! can confirm the diagonal shortcut against the honest module action.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{FExp, VermaModule, VermaVector, WeightKey};
use crate::enveloping::{BasisIndex, Enveloping, UEAElement};
use crate::error::{Error, Result};
use crate::root_system::{RootSystem, Weight};
use crate::scalar::{certify_convergence, q, render_q, valuation, CoeffSite, GaugeStaircase, Q, Val};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Separator {
    Delta,
    SimpleCoroot(usize),
}

impl Separator {
    fn pairing(self, rs: &RootSystem, w: &Weight) -> Q {
        match self {
            Separator::Delta => rs.weight_delta(w),
            Separator::SimpleCoroot(i) => w.coroot_pairings[i].clone(),
        }
    }

    fn element(self, alg: &Enveloping) -> UEAElement {
        match self {
            Separator::Delta => alg.delta_element(),
            Separator::SimpleCoroot(i) => alg.gen(BasisIndex::H(i)),
        }
    }

    fn label(self) -> String {
        match self {
            Separator::Delta => "delta".into(),
            Separator::SimpleCoroot(i) => format!("h{}", i + 1),
        }
    }
}

/// `H_S = prod_{nu in S} (h_nu - nu(h_nu))`, normalised so that it acts as
/// the identity on the target weight space and kills every `nu in S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingOperator {
    target: Weight,
    factors: Vec<(Separator, Q)>,
    scale: Q,
}

impl SeparatingOperator {
    pub fn target(&self) -> &Weight {
        &self.target
    }

    pub fn factors(&self) -> &[(Separator, Q)] {
        &self.factors
    }

    /// Unnormalised eigenvalue on the target, `prod (mu(h_s) - nu(h_s))`.
    pub fn scale(&self) -> &Q {
        &self.scale
    }

    /// Normalised eigenvalue on weight `w`.
    pub fn eigenvalue(&self, rs: &RootSystem, w: &Weight) -> Q {
        let mut out = Q::one();
        for (s, c) in &self.factors {
            out *= s.pairing(rs, w) - c;
        }
        out / &self.scale
    }

    pub fn to_element(&self, alg: &Enveloping) -> UEAElement {
        let mut out = alg.one();
        for (s, c) in &self.factors {
            let factor = &s.element(alg) - &alg.constant(c.clone());
            out = alg.mul(&out, &factor);
        }
        out.scaled(&(Q::one() / &self.scale))
    }

    pub fn describe(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(s, c)| format!("({} - {})", s.label(), render_q(c)))
            .collect();
        format!("{} / {}", parts.join(""), render_q(&self.scale))
    }
}

/// Builds `H_S` separating `mu` from `others`. For each `nu` the separator
/// is whichever of `delta` and the simple coroots distinguishes the pair
/// with the smallest `p`-adic valuation of the difference, so the
/// normaliser costs as little gauge as possible; ties prefer `delta`, then
/// the lowest coroot index.
pub fn separating_operator(rs: &RootSystem, mu: &Weight, others: &[Weight], prime: u64) -> Result<SeparatingOperator> {
    let mut factors = Vec::new();
    let mut scale = Q::one();
    for nu in others {
        if nu.coroot_pairings == mu.coroot_pairings {
            return Err(Error::Degenerate(format!("weight {mu} cannot be separated from itself")));
        }
        let candidates = std::iter::once(Separator::Delta).chain((0..rs.rank()).map(Separator::SimpleCoroot));
        let s = candidates
            .filter_map(|s| {
                let d = s.pairing(rs, mu) - s.pairing(rs, nu);
                (!d.is_zero()).then(|| (valuation(&d, prime), s))
            })
            .min_by_key(|(v, _)| *v)
            .map(|(_, s)| s)
            .expect("distinct weights differ on a simple coroot");
        let c = s.pairing(rs, nu);
        scale *= s.pairing(rs, mu) - &c;
        factors.push((s, c));
    }
    Ok(SeparatingOperator { target: mu.clone(), factors, scale })
}

/// A convergent element of the completed module: an explicit part up to the
/// height cap plus a staircase bounding the gauges of everything beyond.
#[derive(Clone, Debug)]
pub struct AffinoidVector {
    explicit: VermaVector,
    tail: GaugeStaircase,
    n: u32,
}

impl AffinoidVector {
    /// Certifies the explicit coefficients against the staircase.
    pub fn new(module: &VermaModule, explicit: VermaVector, tail: GaugeStaircase) -> Result<Self> {
        let n = module.highest_weight().deformation_level;
        let sites: Vec<(u32, u32, &Q)> = explicit
            .terms()
            .iter()
            .map(|(b, c)| (module.height(b), VermaModule::degree(b), c))
            .collect();
        if let Some((h, _, _)) = sites.iter().find(|(h, _, _)| *h > module.cap()) {
            return Err(Error::Truncation { height: *h, cap: module.cap() });
        }
        certify_convergence(
            sites.iter().map(|(height, degree, coeff)| CoeffSite { height: *height, degree: *degree, coeff }),
            n,
            module.algebra().prime(),
            &tail,
        )
        .map_err(|v| {
            Error::Consistency(format!(
                "coefficient at height {} (degree {}) has gauge {} below the staircase value {}",
                v.height, v.degree, v.gauge, v.required
            ))
        })?;
        Ok(Self { explicit: explicit.exact_part(), tail, n })
    }

    pub fn explicit(&self) -> &VermaVector {
        &self.explicit
    }

    pub fn tail(&self) -> &GaugeStaircase {
        &self.tail
    }

    pub fn level(&self) -> u32 {
        self.n
    }
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub key: WeightKey,
    pub weight: Weight,
    pub height: u32,
    pub component: VermaVector,
    pub separator: SeparatingOperator,
    /// Operators applied, in order.
    pub steps: Vec<String>,
    /// Residual gauge after the `i`-th filtering step, `i = 0..=cap - L`.
    pub residual_gauges: Vec<Val>,
    /// Change in the tail bound caused by dividing by the `H_S` normaliser.
    pub tail_shift: i64,
    pub frontier_residual: Val,
    pub frontier_required: i64,
}

impl Extraction {
    /// The residual at the frontier meets the staircase at the cap.
    pub fn converged(&self) -> bool {
        self.frontier_residual >= Val::Finite(self.frontier_required)
    }
}

/// Extracts the `mu`-component of `u` using `H_S`, `delta` and the
/// `epsilon_{i,L}` family.
pub fn extract_weight_component(module: &VermaModule, u: &AffinoidVector, mu: &Weight) -> Result<Extraction> {
    let key = module.key_of_weight(mu)?;
    let l = VermaModule::key_height(&key);
    let cap = module.cap();
    if l > cap {
        return Err(Error::Truncation { height: l, cap });
    }
    let rs = module.root_system();
    let p = module.algebra().prime();
    let n = u.level() as i64;

    let mut others: Vec<Weight> = module
        .split(u.explicit())
        .keys()
        .filter(|k| VermaModule::key_height(k) == l && **k != key)
        .map(|k| module.weight_of_key(k))
        .collect();
    others.dedup();
    let sep = separating_operator(rs, mu, &others, p)?;

    let mut steps = vec![format!("H_S = {}", sep.describe())];
    let mut v = u.explicit().map_coefficients(|b, c| c * sep.eigenvalue(rs, &module.weight_of(b)));
    let shift = -valuation(sep.scale(), p).finite().unwrap_or(0);

    if l >= 1 {
        v = module.epsilon_apply(l - 1, 0, &v);
        steps.push(format!("epsilon_{{{},0}}", l - 1));
        let sign = if l % 2 == 0 { q(1) } else { q(-1) };
        let denom = q(l as i64);
        v = v.map_coefficients(|b, c| c * &sign * module.shifted_delta_eigenvalue(0, b) / &denom);
        steps.push(format!("(-1)^{l} (delta - Lambda) / {l}"));
        // on height t > L the two steps multiply by
        // C(L-1-t, L-1) (-1)^L (-t) / L = C(t-1, L-1) t / L = C(t, L),
        // an integer, so the tail bound loses nothing here
    }

    let tail_bound = Val::Finite(u.tail().value_at(cap + 1) + shift);
    let gauge_of = |b: &FExp, c: &Q| valuation(c, p) + -(n * VermaModule::degree(b) as i64);
    let mut residual_gauges = Vec::new();
    let mut last = v.clone();
    for i in 0..=(cap - l) {
        let vi = module.epsilon_apply(i, l, &v);
        let explicit_residual = vi
            .terms()
            .iter()
            .filter(|(b, _)| module.height(b) > l + i)
            .map(|(b, c)| gauge_of(b, c))
            .min()
            .unwrap_or(Val::Infinite);
        residual_gauges.push(explicit_residual.min(tail_bound));
        last = vi;
    }
    steps.push(format!("epsilon_{{i,{l}}}, i = 0..={}", cap - l));

    let component = last.filtered(|b| module.height(b) == l).exact_part();
    debug_assert!(component.terms().keys().all(|b| module.weight_key(b) == key));
    let frontier_residual = *residual_gauges.last().unwrap();
    Ok(Extraction {
        weight: mu.clone(),
        key,
        height: l,
        component,
        separator: sep,
        steps,
        residual_gauges,
        tail_shift: shift,
        frontier_residual,
        frontier_required: u.tail().value_at(cap),
    })
}

/// Convenience: extraction keyed by `lambda - mu`.
pub fn extract_by_key(module: &VermaModule, u: &AffinoidVector, key: &[i64]) -> Result<Extraction> {
    if key.iter().any(|k| k.is_negative()) {
        return Err(Error::Domain(format!("weight key {key:?} has a negative entry")));
    }
    extract_weight_component(module, u, &module.weight_of_key(key))
}

/// Gauge of a single vector under the module's level.
pub fn vector_gauge(module: &VermaModule, v: &VermaVector) -> Val {
    let n = module.highest_weight().deformation_level as i64;
    let p = module.algebra().prime();
    v.terms()
        .iter()
        .map(|(b, c)| valuation(c, p) + -(n * VermaModule::degree(b) as i64))
        .min()
        .unwrap_or(Val::Infinite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enveloping::Enveloping;
    use crate::root_system::CartanType;
    use crate::scalar::{q_frac, q_pow};

    fn module(t: CartanType, lam: Vec<Q>, cap: u32) -> VermaModule {
        VermaModule::new(Enveloping::of_type(t, 5).unwrap(), Weight::new(lam), cap).unwrap()
    }

    /// Sum of every basis vector with coefficient `p^(2 * height) * (1 + index)`.
    fn dense(m: &VermaModule) -> VermaVector {
        let mut v = VermaVector::zero();
        for (k, bs) in m.weight_spaces().values().enumerate() {
            for (i, b) in bs.iter().enumerate() {
                v.add_term(b.clone(), q_pow(5, 2 * m.height(b) as i64) * q((k + i + 1) as i64));
            }
        }
        v
    }

    #[test]
    fn separating_operator_kills_others() {
        let rs = RootSystem::new(CartanType::A2).unwrap();
        let mu = Weight::from_ints(&[1, 0]);
        let others = [Weight::from_ints(&[-1, 1]), Weight::from_ints(&[2, -1])];
        let h = separating_operator(&rs, &mu, &others, 5).unwrap();
        assert_eq!(h.eigenvalue(&rs, &mu), q(1));
        for nu in &others {
            assert!(h.eigenvalue(&rs, nu).is_zero());
        }
        assert!(matches!(separating_operator(&rs, &mu, &[mu.clone()], 5), Err(Error::Degenerate(_))));
    }

    #[test]
    fn separating_element_matches_diagonal_action() {
        let m = module(CartanType::B2, vec![q(1), q_frac(2, 3)], 4);
        let alg = m.algebra().clone();
        let v = dense(&m);
        let mu = m.weight_of_key(&[1, 1]);
        let others = vec![m.weight_of_key(&[2, 0]), m.weight_of_key(&[0, 2])];
        let h = separating_operator(m.root_system(), &mu, &others, 5).unwrap();
        let diag = v.map_coefficients(|b, c| c * h.eigenvalue(m.root_system(), &m.weight_of(b)));
        assert_eq!(m.act(&h.to_element(&alg), &v), diag);
    }

    #[test]
    fn epsilon_element_matches_diagonal_action() {
        let m = module(CartanType::A2, vec![q(3), q_frac(-1, 2)], 4);
        let v = dense(&m);
        for (i, j) in [(0, 0), (1, 0), (2, 1), (3, 2)] {
            assert_eq!(m.act(&m.epsilon_operator(i, j), &v), m.epsilon_apply(i, j, &v));
        }
    }

    #[test]
    fn extraction_recovers_projection() {
        for t in [CartanType::A1, CartanType::A2, CartanType::B2, CartanType::G2] {
            let lam = (0..t.rank()).map(|i| q_frac(2 * i as i64 + 1, 3)).collect();
            let m = module(t, lam, 6);
            let v = dense(&m);
            let tail = GaugeStaircase::linear(2, 0).unwrap();
            let u = AffinoidVector::new(&m, v.clone(), tail).unwrap();
            for key in m.weight_spaces().keys() {
                let ex = extract_by_key(&m, &u, key).unwrap();
                assert_eq!(ex.component, m.project(&v, key), "{t} {key:?}");
                assert!(ex.converged(), "{t} {key:?} {:?} {} {}", ex.residual_gauges, ex.tail_shift, ex.separator.describe());
            }
        }
    }

    #[test]
    fn extraction_errors() {
        let m = module(CartanType::A1, vec![q(2)], 3);
        let u = AffinoidVector::new(&m, dense(&m), GaugeStaircase::linear(2, 0).unwrap()).unwrap();
        assert!(matches!(
            extract_weight_component(&m, &u, &Weight::from_ints(&[4])),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            extract_weight_component(&m, &u, &Weight::from_ints(&[-8])),
            Err(Error::Truncation { .. })
        ));
        let bad = m.basis_vector(vec![2]).scaled(&q(1));
        assert!(AffinoidVector::new(&m, bad, GaugeStaircase::linear(1, 0).unwrap()).is_err());
    }

    #[test]
    fn residual_gauges_grow() {
        let m = module(CartanType::A1, vec![q_frac(1, 2)], 8);
        let u = AffinoidVector::new(&m, dense(&m), GaugeStaircase::linear(2, 0).unwrap()).unwrap();
        let ex = extract_by_key(&m, &u, &[1]).unwrap();
        assert!(ex.residual_gauges.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(ex.residual_gauges.len(), 8);
    }
}
