//! The right module `T(lambda) = K_lambda ⊗_{U(b-)} U(g)` and the map
//! `phi: T(lambda) -> M(lambda)`, `1 ⊗ x ↦ sigma(x) v_lambda`.
//!
//! `T(lambda)` has basis `1 ⊗ e^A`. Elements reuse [`VermaVector`], with the
//! exponent vector read as `A` instead of `B`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use super::IdealBasis;
use crate::enveloping::{BasisIndex, Enveloping, Monomial, UEAElement};
use crate::error::Result;
use crate::linalg::{rank, Echelon, SparseVec};
use crate::report::CheckReport;
use crate::root_system::Weight;
use crate::sampling::{self, random_element};
use crate::scalar::Q;
use crate::verma::{FExp, VermaModule, VermaVector, WeightKey};

pub struct TModule {
    /// Shares the index set, heights and weight keys with `M(lambda)`.
    verma: VermaModule,
}

impl TModule {
    pub fn new(alg: Arc<Enveloping>, lambda: Weight, cap: u32) -> Result<Self> {
        Ok(Self { verma: VermaModule::new(alg, lambda, cap)? })
    }

    pub fn verma(&self) -> &VermaModule {
        &self.verma
    }

    pub fn algebra(&self) -> &Arc<Enveloping> {
        self.verma.algebra()
    }

    pub fn cap(&self) -> u32 {
        self.verma.cap()
    }

    pub fn weight_spaces(&self) -> &BTreeMap<WeightKey, Vec<FExp>> {
        self.verma.weight_spaces()
    }

    pub fn generator(&self) -> VermaVector {
        self.verma.highest_weight_vector()
    }

    pub fn basis_vector(&self, a: FExp) -> VermaVector {
        self.verma.basis_vector(a)
    }

    fn e_monomial(&self, a: &[u32]) -> Monomial {
        let alg = self.algebra();
        let lay = alg.layout();
        let mut m = Monomial::one(alg.dim());
        for (k, e) in a.iter().enumerate() {
            m.0[lay.index(BasisIndex::E(k))] = *e;
        }
        m
    }

    /// `(1 ⊗ e^A) u`: straighten `e^A u`, drop terms with an `f`-part (they
    /// act on `K_lambda` by zero) and evaluate the `h`-part at `lambda`.
    pub fn right_act_basis(&self, a: &[u32], u: &UEAElement) -> VermaVector {
        let alg = self.algebra();
        let lay = alg.layout();
        let lambda = self.verma.highest_weight();
        let ea = UEAElement::monomial(self.e_monomial(a), Q::from_integer(1.into()));
        let prod = alg.mul(&ea, u);
        let np = self.verma.num_positive();
        let mut out = VermaVector::zero();
        'terms: for (m, c) in prod.terms() {
            let mut val = c.clone();
            let mut a2 = vec![0u32; np];
            for (idx, e) in m.exponents().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                match lay.basis(idx) {
                    BasisIndex::F(_) => continue 'terms,
                    BasisIndex::H(i) => {
                        for _ in 0..*e {
                            val *= &lambda.coroot_pairings[i];
                        }
                    }
                    BasisIndex::E(k) => a2[k] = *e,
                }
            }
            out.add_term(a2, val);
        }
        self.verma.clip(out)
    }

    pub fn right_act(&self, t: &VermaVector, u: &UEAElement) -> VermaVector {
        let mut out = VermaVector::zero();
        for (a, c) in t.terms() {
            out.add_scaled(&self.right_act_basis(a, u), c);
        }
        out
    }

    /// `phi(1 ⊗ e^A) = sigma(e^A) v_lambda`.
    pub fn phi(&self, t: &VermaVector) -> VermaVector {
        let alg = self.algebra();
        let v = self.verma.highest_weight_vector();
        let mut out = VermaVector::zero();
        for (a, c) in t.terms() {
            let ea = UEAElement::monomial(self.e_monomial(a), c.clone());
            out.add_scaled(&self.verma.act(&alg.sigma(&ea), &v), &Q::from_integer(1.into()));
        }
        out
    }

    /// Rank of `phi` on each weight space, against its dimension.
    pub fn phi_ranks(&self) -> BTreeMap<WeightKey, (usize, usize)> {
        self.weight_spaces()
            .iter()
            .map(|(key, space)| {
                let images: Vec<SparseVec> = space
                    .iter()
                    .map(|a| self.verma.to_local(&self.phi(&self.basis_vector(a.clone()))))
                    .collect();
                (key.clone(), (rank(&images), space.len()))
            })
            .collect()
    }
}

fn spans(module: &VermaModule, vectors: &[VermaVector]) -> BTreeMap<WeightKey, Echelon> {
    let mut out: BTreeMap<WeightKey, Echelon> = BTreeMap::new();
    for v in vectors {
        for (key, comp) in module.split(v) {
            out.entry(key).or_default().insert(module.to_local(&comp));
        }
    }
    out
}

fn same_spans(a: &BTreeMap<WeightKey, Echelon>, b: &BTreeMap<WeightKey, Echelon>) -> bool {
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    keys.into_iter().all(|k| {
        let e = Echelon::new();
        a.get(k).unwrap_or(&e).same_space(b.get(k).unwrap_or(&e))
    })
}

/// Checks that `phi` is a per-weight bijection, that
/// `phi(t u) = sigma(u) phi(t)` on random pairs, and, given an ideal, that
/// `phi(T(lambda) I)` and `sigma(I) M(lambda)` span the same weight spaces.
pub fn phi_property_check(
    tm: &TModule,
    samples: usize,
    u_degree: u32,
    ideal: Option<&IdealBasis>,
    seed: u64,
) -> CheckReport {
    let alg = tm.algebra();
    let module = tm.verma();
    let mut rep = CheckReport::new("phi_property_check");
    rep.param("lambda", module.highest_weight())
        .param("height_cap", tm.cap())
        .param("samples", samples)
        .param("seed", seed);

    rep.assert(
        "phi(1 ⊗ 1) = v_lambda",
        tm.phi(&tm.generator()) == module.highest_weight_vector(),
        "",
    );
    let ranks = tm.phi_ranks();
    let bad = ranks.iter().find(|(_, (r, d))| r != d);
    rep.assert(
        "phi bijective on every weight space",
        bad.is_none(),
        match bad {
            Some((k, (r, d))) => format!("weight {k:?}: rank {r} of {d}"),
            None => format!("{} weight spaces", ranks.len()),
        },
    );

    let mut rng = sampling::rng(seed);
    let basis: Vec<&FExp> = tm.weight_spaces().values().flatten().collect();
    let mut failures = Vec::new();
    for s in 0..samples {
        let mut t = VermaVector::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let a = basis[rng.gen_range(0..basis.len())].clone();
            t.add_term(a, sampling::small_nonzero(&mut rng, 4));
        }
        let u = random_element(alg, &mut rng, u_degree, 3);
        let lhs = tm.phi(&tm.right_act(&t, &u)).exact_part();
        let rhs = module.act(&alg.sigma(&u), &tm.phi(&t)).exact_part();
        if lhs != rhs {
            failures.push(format!("sample {s}: u = {}", alg.render(&u)));
        }
    }
    rep.assert(
        "phi(t u) = sigma(u) phi(t)",
        failures.is_empty(),
        failures.first().cloned().unwrap_or_else(|| format!("{samples} pairs")),
    );

    if let Some(ideal) = ideal {
        let rows = ideal.basis();
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for i in &rows {
            let si = alg.sigma(i);
            for a in &basis {
                lhs.push(tm.phi(&tm.right_act_basis(a, i)).exact_part());
                rhs.push(module.act(&si, &module.basis_vector((*a).clone())).exact_part());
            }
        }
        rep.assert(
            "phi(T I) = sigma(I) M",
            same_spans(&spans(module, &lhs), &spans(module, &rhs)),
            format!("{} ideal rows", rows.len()),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::sl2_irreducible_annihilator;
    use crate::root_system::CartanType;
    use crate::scalar::q;

    #[test]
    fn sl2_phi_examples() {
        let alg = Enveloping::of_type(CartanType::A1, 5).unwrap();
        let tm = TModule::new(alg.clone(), Weight::from_ints(&[3]), 6).unwrap();
        assert_eq!(tm.phi(&tm.basis_vector(vec![1])), tm.verma().basis_vector(vec![1]));
        // (1 ⊗ 1) f = 0 and (1 ⊗ 1) h = lambda(h)
        assert!(tm.right_act(&tm.generator(), &alg.gen(BasisIndex::F(0))).is_zero());
        assert_eq!(tm.right_act(&tm.generator(), &alg.gen(BasisIndex::H(0))), tm.generator().scaled(&q(3)));
        let ann = sl2_irreducible_annihilator(&alg, 3, 5);
        let rep = phi_property_check(&tm, 20, 3, Some(&ann), 3);
        assert!(rep.passed(), "{:#?}", rep.checks);
    }

    #[test]
    fn rank_two_phi() {
        for t in [CartanType::A2, CartanType::B2] {
            let alg = Enveloping::of_type(t, 5).unwrap();
            let tm = TModule::new(alg, Weight::from_ints(&[1, 2]), 4).unwrap();
            let rep = phi_property_check(&tm, 10, 2, None, 11);
            assert!(rep.passed(), "{t}: {:#?}", rep.checks);
        }
    }
}
