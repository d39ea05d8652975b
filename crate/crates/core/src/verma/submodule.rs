//! Submodules of a truncated Verma module.
//!
//! A submodule is stored weight space by weight space as an echelon basis
//! in local PBW coordinates. Because `U(g) = U(n-) U(h) U(n+)`, the span of
//! `U(g) S` is reached by first lowering with `e`'s and then raising with
//! `f`'s, so closing under simple generators with terms above the cap
//! dropped is exact at every height up to the cap.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::calculus::{extract_by_key, AffinoidVector};
use super::{VermaModule, VermaVector, WeightKey};
use crate::enveloping::BasisIndex;
use crate::error::Result;
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::scalar::{q, q_pow, valuation, GaugeStaircase, Q, Val};

#[derive(Clone, Debug, Default)]
pub struct SubmoduleBasis {
    spaces: BTreeMap<WeightKey, Echelon>,
    generators: Vec<VermaVector>,
    provenance: String,
}

impl SubmoduleBasis {
    pub fn zero(provenance: impl Into<String>) -> Self {
        Self { provenance: provenance.into(), ..Self::default() }
    }

    /// `U(g) * gens`, truncated at the module's cap.
    pub fn generate(module: &VermaModule, gens: &[VermaVector], provenance: impl Into<String>) -> Self {
        let mut out = Self::zero(provenance);
        out.generators = gens.iter().map(VermaVector::exact_part).collect();
        out.close(module, gens.to_vec());
        out
    }

    /// The whole truncated module.
    pub fn whole(module: &VermaModule) -> Self {
        Self::generate(module, &[module.highest_weight_vector()], "M(lambda)")
    }

    /// Adds generators and re-closes.
    pub fn extend(&mut self, module: &VermaModule, gens: &[VermaVector]) {
        self.generators.extend(gens.iter().map(VermaVector::exact_part));
        self.close(module, gens.to_vec());
    }

    fn close(&mut self, module: &VermaModule, seeds: Vec<VermaVector>) {
        let alg = module.algebra();
        let lay = alg.layout();
        let rank = module.root_system().rank();
        let simple: Vec<usize> = (0..rank)
            .flat_map(|i| [lay.index(BasisIndex::E(i)), lay.index(BasisIndex::F(i))])
            .collect();
        let mut work: Vec<VermaVector> = Vec::new();
        for s in seeds {
            for (key, comp) in module.split(&s) {
                if self.insert_component(module, &key, &comp) {
                    work.push(comp);
                }
            }
        }
        while let Some(v) = work.pop() {
            for x in &simple {
                let w = module.act_gen(*x, &v);
                for (key, comp) in module.split(&w) {
                    if self.insert_component(module, &key, &comp) {
                        work.push(comp);
                    }
                }
            }
        }
    }

    fn insert_component(&mut self, module: &VermaModule, key: &WeightKey, comp: &VermaVector) -> bool {
        self.spaces.entry(key.clone()).or_default().insert(module.to_local(comp))
    }

    pub fn generators(&self) -> &[VermaVector] {
        &self.generators
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn dim_at(&self, key: &[i64]) -> usize {
        self.spaces.get(key).map_or(0, Echelon::dim)
    }

    pub fn dims(&self) -> BTreeMap<WeightKey, usize> {
        self.spaces.iter().filter(|(_, e)| e.dim() > 0).map(|(k, e)| (k.clone(), e.dim())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(Echelon::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn space(&self, key: &[i64]) -> Option<&Echelon> {
        self.spaces.get(key)
    }

    pub fn basis_vectors(&self, module: &VermaModule, key: &[i64]) -> Vec<VermaVector> {
        self.spaces
            .get(key)
            .map(|e| e.rows().iter().map(|r| module.from_local(key, r)).collect())
            .unwrap_or_default()
    }

    /// Canonical remainder of a vector supported on one weight space.
    pub fn reduce_local(&self, key: &[i64], v: SparseVec) -> SparseVec {
        match self.spaces.get(key) {
            Some(e) => e.reduce(v),
            None => v,
        }
    }

    pub fn contains(&self, module: &VermaModule, v: &VermaVector) -> bool {
        module
            .split(v)
            .iter()
            .all(|(key, comp)| self.reduce_local(key, module.to_local(comp)).is_empty())
    }

    pub fn is_subset_of(&self, other: &SubmoduleBasis) -> bool {
        self.spaces.iter().all(|(k, e)| match other.spaces.get(k) {
            Some(o) => e.is_subspace_of(o),
            None => e.dim() == 0,
        })
    }

    pub fn same_as(&self, other: &SubmoduleBasis) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// Sum of two submodules.
    pub fn sum(&self, module: &VermaModule, other: &SubmoduleBasis) -> SubmoduleBasis {
        let mut out = self.clone();
        out.provenance = format!("{} + {}", self.provenance, other.provenance);
        out.generators.extend(other.generators.iter().cloned());
        for key in other.spaces.keys() {
            for v in other.basis_vectors(module, key) {
                out.insert_component(module, key, &v);
            }
        }
        out
    }
}

/// Vectors `v` of positive height with `e_i v in modulo` for every simple
/// `i`, independent modulo `modulo`; one list per weight space.
pub fn singular_vectors(module: &VermaModule, modulo: &SubmoduleBasis) -> Vec<(WeightKey, VermaVector)> {
    let alg = module.algebra();
    let lay = alg.layout();
    let rank = module.root_system().rank();
    let mut out = Vec::new();
    for (key, space) in module.weight_spaces() {
        if VermaModule::key_height(key) == 0 {
            continue;
        }
        let images: Vec<SparseVec> = space
            .iter()
            .map(|b| {
                let mut img = SparseVec::new();
                for i in 0..rank {
                    if key[i] == 0 {
                        continue;
                    }
                    let mut target = key.clone();
                    target[i] -= 1;
                    let w = module.act_gen_basis(lay.index(BasisIndex::E(i)), b);
                    let red = modulo.reduce_local(&target, module.to_local(&w));
                    for (pos, c) in red {
                        let g = module.global_index(&module.space(&target)[pos]).unwrap();
                        img.insert(g * rank + i, c);
                    }
                }
                img
            })
            .collect();
        let mut ech = modulo.space(key).cloned().unwrap_or_default();
        for k in kernel(&images) {
            if ech.insert(k.clone()) {
                out.push((key.clone(), module.from_local(key, &k)));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TruncationStatus {
    Exact,
    HeightTruncated,
}

#[derive(Clone, Debug)]
pub struct MaximalSubmodule {
    pub basis: SubmoduleBasis,
    /// Singular-vector fixpoint; agrees with `basis` whenever the maximal
    /// submodule is generated by successive singular vectors in the band.
    pub singular_closure: SubmoduleBasis,
    pub rounds: usize,
    pub status: TruncationStatus,
}

/// `e^A f^B v_lambda` reduced to its `v_lambda` coefficient when `A` and `B`
/// have the same weight.
fn shapovalov_entry(module: &VermaModule, a: &[u32], b: &[u32]) -> Q {
    let lay = module.algebra().layout();
    let mut v = module.basis_vector(b.to_vec());
    for (k, e) in a.iter().enumerate().rev() {
        for _ in 0..*e {
            v = module.act_gen(lay.index(BasisIndex::E(k)), &v);
        }
    }
    v.coefficient(&vec![0; a.len()])
}

/// The maximal proper submodule, computed as the radical of the Shapovalov
/// pairing on each weight space: `v` lies in it iff no raising monomial of
/// the complementary weight returns a multiple of `v_lambda`. This is exact
/// for every weight space below the cap.
pub fn maximal_submodule(module: &VermaModule) -> MaximalSubmodule {
    let mut basis = SubmoduleBasis::zero("maximal submodule");
    for (key, space) in module.weight_spaces() {
        if VermaModule::key_height(key) == 0 {
            continue;
        }
        let images: Vec<SparseVec> = space
            .iter()
            .map(|b| {
                space
                    .iter()
                    .enumerate()
                    .map(|(i, a)| (i, shapovalov_entry(module, a, b)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        for k in kernel(&images) {
            let v = module.from_local(key, &k);
            basis.generators.push(v.clone());
            basis.insert_component(module, key, &v);
        }
    }

    let mut closure = SubmoduleBasis::zero("singular-vector fixpoint");
    let mut rounds = 0;
    loop {
        let sv = singular_vectors(module, &closure);
        if sv.is_empty() {
            break;
        }
        rounds += 1;
        let mut gens = closure.generators.clone();
        gens.extend(sv.into_iter().map(|(_, v)| v));
        closure = SubmoduleBasis::generate(module, &gens, "singular-vector fixpoint");
    }
    MaximalSubmodule { basis, singular_closure: closure, rounds, status: TruncationStatus::Exact }
}

/// Dimensions of the simple quotient `L(lambda)` per weight space.
pub fn simple_quotient(module: &VermaModule, maximal: &SubmoduleBasis) -> BTreeMap<WeightKey, usize> {
    module
        .weight_spaces()
        .iter()
        .map(|(k, bs)| (k.clone(), bs.len() - maximal.dim_at(k)))
        .filter(|(_, d)| *d > 0)
        .collect()
}

#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    /// Distinct submodules, sorted by total dimension.
    pub elements: Vec<SubmoduleBasis>,
    /// `below[i]` lists the `j` with `elements[j]` strictly inside `elements[i]`.
    pub below: Vec<Vec<usize>>,
    pub singular: Vec<(WeightKey, VermaVector)>,
    pub length: usize,
    pub status: TruncationStatus,
}

/// Lattice of submodules generated by subsets of the singular vectors
/// together with `v_lambda`.
pub fn submodule_lattice(module: &VermaModule) -> SubmoduleLattice {
    let singular = singular_vectors(module, &SubmoduleBasis::zero(""));
    let mut gens: Vec<VermaVector> = vec![module.highest_weight_vector()];
    gens.extend(singular.iter().map(|(_, v)| v.clone()));
    let atoms: Vec<SubmoduleBasis> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let name = if i == 0 { "U(g)v_lambda".to_string() } else { format!("U(g)s{i}") };
            SubmoduleBasis::generate(module, std::slice::from_ref(g), name)
        })
        .collect();

    let mut elements: Vec<SubmoduleBasis> = vec![SubmoduleBasis::zero("0")];
    for mask in 1u64..(1u64 << atoms.len()) {
        let mut acc = SubmoduleBasis::zero("");
        let mut first = true;
        for (i, a) in atoms.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc = if first { a.clone() } else { acc.sum(module, a) };
                first = false;
            }
        }
        if !elements.iter().any(|e| e.same_as(&acc)) {
            elements.push(acc);
        }
    }
    elements.sort_by_key(SubmoduleBasis::total_dim);
    let below: Vec<Vec<usize>> = (0..elements.len())
        .map(|i| {
            (0..elements.len())
                .filter(|j| *j != i && elements[*j].total_dim() < elements[i].total_dim())
                .filter(|j| elements[*j].is_subset_of(&elements[i]))
                .collect()
        })
        .collect();
    let mut longest = vec![0usize; elements.len()];
    for i in 0..elements.len() {
        longest[i] = below[i].iter().map(|j| longest[*j] + 1).max().unwrap_or(0);
    }
    let status = if module.root_system().rank() == 1 {
        TruncationStatus::Exact
    } else {
        TruncationStatus::HeightTruncated
    };
    SubmoduleLattice {
        length: longest.iter().copied().max().unwrap_or(0),
        elements,
        below,
        singular,
        status,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundtripReport {
    pub samples: usize,
    pub extractions: usize,
    pub failures: Vec<String>,
    /// Smallest `frontier residual - staircase(cap)` over all extractions.
    pub min_frontier_margin: Option<i64>,
    /// Whether the extracted components span the truncated submodule.
    pub recovered: bool,
}

impl RoundtripReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.recovered
    }
}

fn small_q(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let x = rng.gen_range(-4i64..=4);
        if x != 0 {
            return q(x);
        }
    }
}

/// Rescales each height slice by a power of `p` so that every coefficient
/// meets the staircase.
pub fn fit_to_staircase(module: &VermaModule, v: &VermaVector, staircase: &GaugeStaircase) -> VermaVector {
    let p = module.algebra().prime();
    let n = module.highest_weight().deformation_level as i64;
    let mut need: BTreeMap<u32, i64> = BTreeMap::new();
    for (b, c) in v.terms() {
        let h = module.height(b);
        let g = valuation(c, p) + -(n * VermaModule::degree(b) as i64);
        let Val::Finite(g) = g else { continue };
        let deficit = (staircase.value_at(h) - g).max(0);
        let slot = need.entry(h).or_insert(0);
        *slot = (*slot).max(deficit);
    }
    v.map_coefficients(|b, c| c * q_pow(p, need.get(&module.height(b)).copied().unwrap_or(0)))
}

/// Samples convergent elements of the completion of `sub` and checks that
/// extracting every weight component lands back in `sub`.
pub fn correspondence_roundtrip(
    module: &VermaModule,
    sub: &SubmoduleBasis,
    samples: usize,
    staircase: &GaugeStaircase,
    seed: u64,
) -> Result<RoundtripReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_dim = sub.spaces.values().map(Echelon::dim).max().unwrap_or(0);
    let samples = samples.max(max_dim + 1);
    let lowering: Vec<usize> = (0..module.num_positive()).collect();
    let mut recovered: BTreeMap<WeightKey, Echelon> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut extractions = 0;
    let mut margin: Option<i64> = None;

    for s in 0..samples {
        let mut x = VermaVector::zero();
        for g in sub.generators() {
            // a random lowering word applied to the generator
            let mut w = g.clone();
            for _ in 0..rng.gen_range(0..=2) {
                let f = lowering[rng.gen_range(0..lowering.len())];
                w = module.act_gen(f, &w);
            }
            x.add_scaled(&w, &small_q(&mut rng));
        }
        for key in sub.spaces.keys() {
            for v in sub.basis_vectors(module, key) {
                x.add_scaled(&v, &small_q(&mut rng));
            }
        }
        let x = fit_to_staircase(module, &x.exact_part(), staircase);
        let u = AffinoidVector::new(module, x.clone(), staircase.clone())?;
        for key in module.split(&x).keys() {
            let ex = extract_by_key(module, &u, key)?;
            extractions += 1;
            if let Val::Finite(r) = ex.frontier_residual {
                let m = r - ex.frontier_required;
                margin = Some(margin.map_or(m, |old| old.min(m)));
            }
            if ex.component != module.project(&x, key) {
                failures.push(format!("sample {s}: weight {key:?} extracted component differs from projection"));
            }
            if !sub.contains(module, &ex.component) {
                failures.push(format!("sample {s}: weight {key:?} component escapes the submodule"));
            }
            recovered.entry(key.clone()).or_default().insert(module.to_local(&ex.component));
        }
    }
    let recovered_ok = sub
        .spaces
        .iter()
        .all(|(k, e)| recovered.get(k).map_or(e.dim() == 0, |r| r.same_space(e)));
    Ok(RoundtripReport {
        samples,
        extractions,
        failures,
        min_frontier_margin: margin,
        recovered: recovered_ok,
    })
}

/// Keys of weight spaces where `sub` is all of `M` in the band of heights
/// `(cap - max_root_height, cap]`; when this holds the quotient by `sub`
/// has no weights near the cap and truncation cannot hide vectors.
pub fn fills_top_band(module: &VermaModule, sub: &SubmoduleBasis) -> bool {
    let mh = module.root_system().max_root_height() as u32;
    let lo = module.cap().saturating_sub(mh);
    module
        .weight_spaces()
        .iter()
        .filter(|(k, _)| VermaModule::key_height(k) > lo)
        .all(|(k, bs)| sub.dim_at(k) == bs.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enveloping::Enveloping;
    use crate::root_system::{CartanType, Weight};
    use crate::scalar::q_frac;
    use num_traits::One;

    fn module(t: CartanType, lam: &[i64], cap: u32) -> VermaModule {
        VermaModule::new(Enveloping::of_type(t, 5).unwrap(), Weight::from_ints(lam), cap).unwrap()
    }

    fn weyl_dimension(m: &VermaModule) -> Q {
        let rs = m.root_system();
        let lam_rho = m.highest_weight().add(&rs.rho());
        let mut num = Q::one();
        let mut den = Q::one();
        for k in 0..rs.num_positive() {
            num *= rs.weight_on_coroot(&lam_rho, k);
            den *= rs.weight_on_coroot(&rs.rho(), k);
        }
        num / den
    }

    #[test]
    fn sl2_singular_vector_at_m_plus_one() {
        for m in 0..5 {
            let vm = module(CartanType::A1, &[m], 8);
            let sv = singular_vectors(&vm, &SubmoduleBasis::zero(""));
            assert_eq!(sv.len(), 1);
            assert_eq!(sv[0].0, vec![m + 1]);
        }
        let vm = VermaModule::new(
            Enveloping::of_type(CartanType::A1, 5).unwrap(),
            Weight::new(vec![q_frac(1, 2)]),
            8,
        )
        .unwrap();
        assert!(singular_vectors(&vm, &SubmoduleBasis::zero("")).is_empty());
        assert!(maximal_submodule(&vm).basis.is_zero());
    }

    #[test]
    fn simple_quotient_has_weyl_dimension() {
        for (t, lam, cap) in [
            (CartanType::A1, vec![3], 6),
            (CartanType::A2, vec![1, 1], 6),
            (CartanType::A2, vec![2, 0], 6),
            (CartanType::B2, vec![1, 0], 6),
            (CartanType::B2, vec![0, 1], 6),
            (CartanType::G2, vec![1, 0], 8),
            (CartanType::A3, vec![1, 0, 0], 5),
        ] {
            let vm = module(t, &lam, cap);
            let max = maximal_submodule(&vm);
            let dims = simple_quotient(&vm, &max.basis);
            let total: usize = dims.values().sum();
            assert_eq!(q(total as i64), weyl_dimension(&vm), "{t} {lam:?}");
            assert!(max.singular_closure.is_subset_of(&max.basis));
        }
    }

    #[test]
    fn sl2_lattice_lengths() {
        assert_eq!(submodule_lattice(&module(CartanType::A1, &[2], 6)).length, 2);
        assert_eq!(submodule_lattice(&module(CartanType::A1, &[-3], 6)).length, 1);
    }

    #[test]
    fn a2_zero_lattice_has_length_six() {
        let lat = submodule_lattice(&module(CartanType::A2, &[0, 0], 5));
        assert_eq!(lat.singular.len(), 5);
        assert_eq!(lat.length, 6);
    }

    #[test]
    fn roundtrip_on_sl2_submodule() {
        let vm = module(CartanType::A1, &[2], 7);
        let n = SubmoduleBasis::generate(&vm, &[vm.basis_vector(vec![3])], "N");
        let st = GaugeStaircase::linear(1, 0).unwrap();
        let rep = correspondence_roundtrip(&vm, &n, 3, &st, 7).unwrap();
        assert!(rep.ok(), "{rep:?}");
        assert!(fills_top_band(&vm, &n));
    }
}
