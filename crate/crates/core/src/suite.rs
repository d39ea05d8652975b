//! The acceptance suite: ten exact, seeded checks run by `verify-all` and
//! by the `acceptance` integration test.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::enveloping::{BasisIndex, Enveloping, SwapSchedule, UEAElement};
use crate::error::{Error, Result};
use crate::ideals::{
    adjoint_invariance_check, ann_quotient_check, central_character_ideal, controller_check, duflo_check,
    phi_property_check, sl2_irreducible_annihilator, torsion_check, IdealBasis, TModule,
};
use crate::report::{CheckReport, Status};
use crate::root_system::{CartanType, Weight};
use crate::sampling::{self, random_element, small_nonzero, SuiteRng};
use crate::scalar::{q, q_frac, GaugeStaircase, Q};
use crate::verma::calculus::extract_by_key;
use crate::verma::submodule::fit_to_staircase;
use crate::verma::{
    correspondence_roundtrip, maximal_submodule, submodule_lattice, AffinoidVector, VermaModule, VermaVector,
};

pub const CRITERIA: [(u32, &str); 10] = [
    (1, "delta eigenvalue law"),
    (2, "epsilon calculus"),
    (3, "extraction equals projection"),
    (4, "submodule correspondence roundtrip"),
    (5, "torsion freeness"),
    (6, "primitive ideals and annihilators of quotients"),
    (7, "controller one-sided generation"),
    (8, "adjoint invariance"),
    (9, "phi map"),
    (10, "algebraic bedrock"),
];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub prime: u64,
    pub n: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 7, prime: 5, n: 1 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    /// First failing check, or a summary when everything passed.
    pub witness: String,
    pub report: CheckReport,
}

impl CriterionResult {
    fn from_report(id: u32, report: CheckReport) -> Self {
        let name = criterion_name(id).to_string();
        let passed = report.passed();
        let witness = match report.first_failure() {
            Some(c) => format!("{}: {}", c.name, c.witness),
            None => {
                let truncated = report.checks.iter().filter(|c| c.status == Status::Truncated).count();
                format!("{} checks passed ({truncated} as truncated containments)", report.checks.len())
            }
        };
        Self { id, name, passed, witness, report }
    }

    fn from_error(id: u32, err: Error) -> Self {
        let mut report = CheckReport::new(criterion_name(id));
        report.assert("criterion ran", false, err.to_string());
        Self::from_report(id, report)
    }
}

pub fn criterion_name(id: u32) -> &'static str {
    CRITERIA.iter().find(|(i, _)| *i == id).map_or("unknown criterion", |(_, n)| n)
}

/// Runs one criterion by id (1..=10).
pub fn run_criterion(id: u32, cfg: &SuiteConfig) -> CriterionResult {
    let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add(id as u64);
    let out = match id {
        1 => delta_law(cfg),
        2 => epsilon_calculus(cfg),
        3 => extraction(cfg, seed),
        4 => correspondence(cfg, seed),
        5 => torsion(cfg, seed),
        6 => duflo(cfg),
        7 => controller(cfg),
        8 => adjoint(cfg),
        9 => phi(cfg, seed),
        10 => bedrock(cfg, seed),
        _ => Err(Error::Config(format!("no acceptance criterion {id}"))),
    };
    match out {
        Ok(rep) => CriterionResult::from_report(id, rep),
        Err(e) => CriterionResult::from_error(id, e),
    }
}

/// Worker count from `LIEVERMA_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("LIEVERMA_THREADS").ok()?.parse().ok().filter(|n| *n > 0)
}

/// Runs the selected criteria concurrently; results come back sorted by id.
pub fn run_suite(ids: &[u32], cfg: &SuiteConfig) -> Vec<CriterionResult> {
    let run = || ids.par_iter().map(|id| run_criterion(*id, cfg)).collect::<Vec<_>>();
    let mut out = match thread_cap() {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    };
    out.sort_by_key(|r| r.id);
    out
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionResult> {
    let ids: Vec<u32> = CRITERIA.iter().map(|(id, _)| *id).collect();
    run_suite(&ids, cfg)
}

fn algebra(t: CartanType, p: u64) -> Result<Arc<Enveloping>> {
    Enveloping::of_type(t, p)
}

fn all_basis_vectors(m: &VermaModule) -> Vec<VermaVector> {
    m.weight_spaces().values().flatten().map(|b| m.basis_vector(b.clone())).collect()
}

fn delta_law(cfg: &SuiteConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("delta eigenvalue law");
    let cases: [(CartanType, Vec<Q>); 5] = [
        (CartanType::A1, vec![q(3)]),
        (CartanType::A1, vec![q_frac(1, 2)]),
        (CartanType::A2, vec![q(1), q_frac(-2, 3)]),
        (CartanType::B2, vec![q(2), q_frac(1, 3)]),
        (CartanType::B2, vec![q(-3), q(0)]),
    ];
    for (t, lam) in cases {
        let alg = algebra(t, cfg.prime)?;
        let m = VermaModule::new(alg.clone(), Weight::new(lam), 10)?;
        let delta = alg.delta_element();
        let mut bad = None;
        let vecs = all_basis_vectors(&m);
        for v in &vecs {
            let b = v.terms().keys().next().unwrap();
            let expected = v.scaled(&(m.big_lambda() - q(m.height(b) as i64)));
            if m.act(&delta, v) != expected || m.apply_delta(v) != expected || m.delta_eigenvalue(b) != m.big_lambda() - q(m.height(b) as i64) {
                bad = Some(format!("{b:?}"));
                break;
            }
        }
        rep.assert(
            format!("{t} lambda = {}", m.highest_weight()),
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{} basis vectors up to height 10", vecs.len())),
        );
    }
    Ok(rep)
}

/// `C(x, i)` as a falling factorial over `i!`, independent of the library's
/// binomial.
fn falling_binomial(x: i64, i: u32) -> Q {
    let mut num = q(1);
    let mut den = q(1);
    for l in 0..i as i64 {
        num *= q(x - l);
        den *= q(l + 1);
    }
    num / den
}

fn epsilon_calculus(cfg: &SuiteConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("epsilon calculus");
    for (t, lam) in [(CartanType::A1, vec![q_frac(5, 3)]), (CartanType::A2, vec![q(2), q_frac(-1, 2)])] {
        let alg = algebra(t, cfg.prime)?;
        let m = VermaModule::new(alg, Weight::new(lam), 10)?;
        let mut dense = VermaVector::zero();
        for (k, b) in m.weight_spaces().values().flatten().enumerate() {
            dense.add_term(b.clone(), q(k as i64 + 1));
        }
        let mut closed_form_bad = None;
        let mut operator_bad = None;
        for i in 0..=6u32 {
            for j in 0..=6u32 {
                let applied = m.epsilon_apply(i, j, &dense);
                for (b, c) in dense.terms() {
                    let ht = m.height(b) as i64;
                    let expected = c * falling_binomial(i as i64 + j as i64 - ht, i);
                    if applied.coefficient(b) != expected && closed_form_bad.is_none() {
                        closed_form_bad = Some(format!("i = {i}, j = {j}, height {ht}"));
                    }
                }
                if m.act(&m.epsilon_operator(i, j), &dense) != applied && operator_bad.is_none() {
                    operator_bad = Some(format!("i = {i}, j = {j}"));
                }
            }
        }
        rep.assert(format!("{t}: closed-form binomial"), closed_form_bad.is_none(), closed_form_bad.unwrap_or_default());
        rep.assert(format!("{t}: expanded operator via act"), operator_bad.is_none(), operator_bad.unwrap_or_default());
    }
    Ok(rep)
}

fn random_staircase(rng: &mut SuiteRng) -> Result<GaugeStaircase> {
    let slope = rng.gen_range(1..=3);
    let offset = rng.gen_range(-1..=2);
    let mut bps = vec![(0u32, offset)];
    if rng.gen_bool(0.5) {
        bps.push((rng.gen_range(2..=4), offset + rng.gen_range(0..=3)));
    }
    GaugeStaircase::new(bps, slope)
}

fn random_affinoid(m: &VermaModule, rng: &mut SuiteRng, staircase: &GaugeStaircase) -> Result<AffinoidVector> {
    let mut v = VermaVector::zero();
    for b in m.weight_spaces().values().flatten() {
        if rng.gen_bool(0.7) {
            let c = small_nonzero(rng, 9) / q(rng.gen_range(1..=4));
            v.add_term(b.clone(), c);
        }
    }
    AffinoidVector::new(m, fit_to_staircase(m, &v, staircase), staircase.clone())
}

fn extraction(cfg: &SuiteConfig, seed: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("extraction equals projection");
    let mut rng = sampling::rng(seed);
    let sl2 = algebra(CartanType::A1, cfg.prime)?;
    let a2 = algebra(CartanType::A2, cfg.prime)?;
    let rs_a2 = a2.root_system().clone();
    let mut modules: Vec<VermaModule> = Vec::new();
    for lam in [q(0), q(1), q(2), q(3), q_frac(1, 2)] {
        modules.push(VermaModule::new(sl2.clone(), Weight::new(vec![lam]).with_level(cfg.n), 8)?);
    }
    for _ in 0..5 {
        // rho-shifted integral and rational samples
        let shift = Weight::new(vec![q(rng.gen_range(-2..=2)), q_frac(rng.gen_range(-3..=3), 3)]);
        let lam = rs_a2.rho().add(&shift).with_level(cfg.n);
        modules.push(VermaModule::new(a2.clone(), lam, 6)?);
    }
    let mut extracted = 0;
    let mut failures = Vec::new();
    let mut weakest: Option<i64> = None;
    for s in 0..50 {
        let m = &modules[s % modules.len()];
        let st = random_staircase(&mut rng)?;
        let u = random_affinoid(m, &mut rng, &st)?;
        for key in m.weight_spaces().keys() {
            let ex = extract_by_key(m, &u, key)?;
            extracted += 1;
            if ex.component != m.project(u.explicit(), key) {
                failures.push(format!("sample {s}, lambda {}, weight {key:?}: component differs", m.highest_weight()));
            }
            if !ex.converged() {
                failures.push(format!(
                    "sample {s}, lambda {}, weight {key:?}: frontier residual {} below {}",
                    m.highest_weight(),
                    ex.frontier_residual,
                    ex.frontier_required
                ));
            }
            if let Some(r) = ex.frontier_residual.finite() {
                let margin = r - ex.frontier_required;
                weakest = Some(weakest.map_or(margin, |w| w.min(margin)));
            }
        }
    }
    rep.assert(
        "50 certified samples",
        failures.is_empty(),
        failures.first().cloned().unwrap_or_else(|| format!("{extracted} extractions, smallest frontier margin {weakest:?}")),
    );
    Ok(rep)
}

fn correspondence(cfg: &SuiteConfig, seed: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("submodule correspondence roundtrip");
    let alg = algebra(CartanType::A1, cfg.prime)?;
    let mut cases: Vec<(Q, Option<u32>)> = (0..=4).map(|m| (q(m), Some(m as u32))).collect();
    cases.push((q_frac(1, 2), None));
    for (lam, integral) in cases {
        let cap = match integral {
            Some(m) => m + 8,
            None => 8,
        };
        let m = VermaModule::new(alg.clone(), Weight::new(vec![lam.clone()]).with_level(cfg.n), cap)?;
        let label = format!("lambda = {}", m.highest_weight());
        let max = maximal_submodule(&m).basis;
        let lattice = submodule_lattice(&m);
        let dims: Vec<usize> = lattice.elements.iter().map(|e| e.total_dim()).collect();
        let whole = crate::verma::SubmoduleBasis::whole(&m);
        let expected_ok = match integral {
            Some(k) => {
                let n_expected = crate::verma::SubmoduleBasis::generate(&m, &[m.basis_vector(vec![k + 1])], "N");
                lattice.elements.len() == 3
                    && lattice.elements[0].is_zero()
                    && lattice.elements[1].same_as(&n_expected)
                    && lattice.elements[1].same_as(&max)
                    && lattice.elements[2].same_as(&whole)
            }
            None => lattice.elements.len() == 2 && lattice.elements[0].is_zero() && lattice.elements[1].same_as(&whole),
        };
        rep.assert(format!("{label}: lattice"), expected_ok, format!("element dimensions {dims:?}"));

        let st = GaugeStaircase::linear(1, 0)?;
        let mut recovered = 0;
        for (i, el) in lattice.elements.iter().enumerate() {
            let samples = if el.same_as(&max) && !el.is_zero() { 25 } else { 5 };
            let r = correspondence_roundtrip(&m, el, samples, &st, seed.wrapping_add(i as u64))?;
            rep.assert(
                format!("{label}: roundtrip of element {i}"),
                r.ok(),
                r.failures.first().cloned().unwrap_or_else(|| format!("{} samples, {} extractions", r.samples, r.extractions)),
            );
            if r.ok() {
                recovered += 1;
            }
        }
        let expected_len = if integral.is_some() { 2 } else { 1 };
        // every lattice element is recovered from its completion, so the
        // closed-submodule lattice has the same longest chain
        rep.assert(
            format!("{label}: length"),
            lattice.length == expected_len && recovered == lattice.elements.len(),
            format!("length {} (expected {expected_len}), {recovered} elements recovered", lattice.length),
        );
    }
    Ok(rep)
}

fn torsion(cfg: &SuiteConfig, seed: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("torsion freeness");
    let mut jobs = Vec::new();
    for p in [3u64, 5] {
        for m in 0..=3i64 {
            jobs.push((p, m));
        }
    }
    let results: Vec<Result<(String, CheckReport)>> = jobs
        .par_iter()
        .map(|(p, m)| {
            let alg = algebra(CartanType::A1, *p)?;
            let lam = Weight::from_ints(&[*m]).with_level(cfg.n);
            let r = torsion_check(&alg, &lam, 100, 3, seed.wrapping_add(*p * 10 + *m as u64))?;
            Ok((format!("p = {p}, m = {m}"), r))
        })
        .collect();
    for r in results {
        let (label, sub) = r?;
        rep.absorb(&label, sub);
    }
    Ok(rep)
}

fn duflo(cfg: &SuiteConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("primitive ideals and annihilators of quotients");
    let alg = algebra(CartanType::A1, cfg.prime)?;
    let mut cases: Vec<(Weight, u32)> = (0..=3i64).map(|m| (Weight::from_ints(&[m]), 2 * m as u32 + 4)).collect();
    cases.push((Weight::new(vec![q_frac(1, 2)]), 5));
    let results: Vec<Result<CheckReport>> = cases
        .par_iter()
        .map(|(lam, d)| -> Result<CheckReport> {
            let lam = lam.clone().with_level(cfg.n);
            let mut sub = duflo_check(&alg, &lam, *d)?;
            // k = 2d samples enough heights for the Verma polynomial argument
            let k = 2 * d;
            let module = VermaModule::new(alg.clone(), lam.clone(), k + d)?;
            let mut ideals_to_check = vec![("ker chi", central_character_ideal(&alg, &lam, *d))];
            if lam.is_integral() {
                let m = crate::scalar::q_to_i64(&lam.coroot_pairings[0]).unwrap() as u32;
                ideals_to_check.push(("Ann L(lambda)", sl2_irreducible_annihilator(&alg, m, *d)));
            }
            ideals_to_check.push(("whole", IdealBasis::whole(alg.clone(), *d)));
            for (name, ideal) in ideals_to_check {
                sub.absorb(&format!("I = {name}"), ann_quotient_check(&ideal, &module, k));
            }
            Ok(sub)
        })
        .collect();
    for (r, (lam, _)) in results.into_iter().zip(&cases) {
        rep.absorb(&format!("lambda = {lam}"), r?);
    }
    Ok(rep)
}

fn controller(cfg: &SuiteConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("controller one-sided generation");
    let alg = algebra(CartanType::A1, cfg.prime)?;
    let d = 8;
    let mut ideals_to_check: Vec<(String, IdealBasis)> = vec![("J = 0".into(), IdealBasis::zero(alg.clone(), d))];
    for m in 0..=3u32 {
        ideals_to_check.push((format!("J = ker chi, m = {m}"), central_character_ideal(&alg, &Weight::from_ints(&[m as i64]), d)));
        ideals_to_check.push((format!("J = Ann L({m})"), sl2_irreducible_annihilator(&alg, m, d)));
    }
    let jobs: Vec<(usize, u32)> = (0..ideals_to_check.len()).flat_map(|i| [(i, 0), (i, 1)]).collect();
    let results: Vec<CheckReport> = jobs.par_iter().map(|(i, n)| controller_check(&ideals_to_check[*i].1, *n)).collect();
    for ((i, n), r) in jobs.iter().zip(results) {
        rep.absorb(&format!("{}, n = {n}", ideals_to_check[*i].0), r);
    }
    Ok(rep)
}

fn adjoint(cfg: &SuiteConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new("adjoint invariance");
    let p = cfg.prime;
    for t in CartanType::ALL {
        let alg = algebra(t, p)?;
        let omega = alg.casimir();
        let mut bad = None;
        for k in 0..alg.root_system().num_positive() {
            for x in [BasisIndex::E(k), BasisIndex::F(k)] {
                for r in [q(1), q(p as i64)] {
                    if alg.adjoint_group_action_of(x, &r, &omega)? != omega {
                        bad = Some(format!("x_{x}({r})"));
                    }
                }
            }
        }
        rep.assert(format!("{t}: Casimir fixed"), bad.is_none(), bad.unwrap_or_default());
    }
    let sl2 = algebra(CartanType::A1, p)?;
    let d = 4;
    for m in 0..=3i64 {
        let lam = Weight::from_ints(&[m]);
        let big = central_character_ideal(&sl2, &lam, d + 2);
        let gens: Vec<UEAElement> = central_character_ideal(&sl2, &lam, d).generators().iter().map(|(g, _)| g.clone()).collect();
        rep.absorb(&format!("ker chi, m = {m}"), adjoint_invariance_check(&big, &gens)?);
        let ann_big = sl2_irreducible_annihilator(&sl2, m as u32, d + 2);
        let ann_gens = sl2_irreducible_annihilator(&sl2, m as u32, d).basis();
        rep.absorb(&format!("Ann L({m})"), adjoint_invariance_check(&ann_big, &ann_gens)?);
    }
    for t in [CartanType::A2, CartanType::B2] {
        let alg = algebra(t, p)?;
        let lam = Weight::from_ints(&[1, 0]);
        let ideal = central_character_ideal(&alg, &lam, 4);
        let gens: Vec<UEAElement> = ideal.generators().iter().map(|(g, _)| g.clone()).collect();
        rep.absorb(&format!("{t}: (Omega - c)"), adjoint_invariance_check(&ideal, &gens)?);
    }
    Ok(rep)
}

fn phi(cfg: &SuiteConfig, seed: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("phi map");
    let sl2 = algebra(CartanType::A1, cfg.prime)?;
    let tm = TModule::new(sl2.clone(), Weight::from_ints(&[3]), 8)?;
    let ann = sl2_irreducible_annihilator(&sl2, 3, 5);
    rep.absorb("sl2, lambda = 3", phi_property_check(&tm, 20, 3, Some(&ann), seed));
    let tm = TModule::new(sl2, Weight::new(vec![q_frac(1, 2)]), 8)?;
    rep.absorb("sl2, lambda = 1/2", phi_property_check(&tm, 10, 3, None, seed + 1));
    let a2 = algebra(CartanType::A2, cfg.prime)?;
    let tm = TModule::new(a2.clone(), Weight::from_ints(&[1, 2]), 5)?;
    let central = central_character_ideal(&a2, &Weight::from_ints(&[1, 2]), 3);
    rep.absorb("A2, lambda = (1,2)", phi_property_check(&tm, 10, 2, Some(&central), seed + 2));
    let b2 = algebra(CartanType::B2, cfg.prime)?;
    let tm = TModule::new(b2, Weight::new(vec![q(2), q_frac(-1, 3)]), 4)?;
    rep.absorb("B2, lambda = (2,-1/3)", phi_property_check(&tm, 10, 2, None, seed + 3));
    Ok(rep)
}

fn bedrock(cfg: &SuiteConfig, seed: u64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("algebraic bedrock");
    let mut rng = sampling::rng(seed);
    for t in CartanType::ALL {
        let alg = algebra(t, cfg.prime)?;
        let sc = alg.structure_constants();
        rep.assert(format!("{t}: antisymmetry"), sc.is_antisymmetric(), "");
        rep.assert(
            format!("{t}: Jacobi (exhaustive)"),
            sc.jacobi_violation().is_none(),
            format!("{:?}", sc.jacobi_violation()),
        );
        rep.assert(
            format!("{t}: Serre (exhaustive)"),
            sc.serre_violation(alg.root_system()).is_none(),
            format!("{:?}", sc.serre_violation(alg.root_system())),
        );

        let lay = alg.layout();
        let mut confluence_bad = None;
        for s in 0..20 {
            let word: Vec<BasisIndex> = sampling::random_word(&mut rng, alg.dim(), 6).into_iter().map(|i| lay.basis(i)).collect();
            let left = alg.pbw_normalize(&word, q(1), SwapSchedule::LeftmostFirst);
            let right = alg.pbw_normalize(&word, q(1), SwapSchedule::RightmostFirst);
            let direct = alg.word(&word);
            if left != right || left != direct {
                confluence_bad = Some(format!("sample {s}: {word:?}"));
                break;
            }
        }
        rep.assert(format!("{t}: PBW confluence"), confluence_bad.is_none(), confluence_bad.unwrap_or_else(|| "20 words".into()));

        let mut assoc_bad = None;
        for s in 0..10 {
            let a = random_element(&alg, &mut rng, 2, 3);
            let b = random_element(&alg, &mut rng, 2, 3);
            let c = random_element(&alg, &mut rng, 2, 3);
            if alg.mul(&alg.mul(&a, &b), &c) != alg.mul(&a, &alg.mul(&b, &c)) {
                assoc_bad = Some(format!("sample {s}"));
                break;
            }
        }
        rep.assert(format!("{t}: associativity"), assoc_bad.is_none(), assoc_bad.unwrap_or_else(|| "10 triples".into()));

        let mut gauge_bad = None;
        let pairs = 100 / CartanType::ALL.len();
        for s in 0..pairs {
            let n = rng.gen_range(0..=2);
            let (na, nb) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
            let a = sampling::random_deformed_element(&alg, &mut rng, 3, 3, na);
            let b = sampling::random_deformed_element(&alg, &mut rng, 3, 3, nb);
            let a = a.scaled(&(q(1) / q(rng.gen_range(1..=3))));
            if alg.gauge(&alg.mul(&a, &b), n) < alg.gauge(&a, n) + alg.gauge(&b, n) {
                gauge_bad = Some(format!("sample {s}"));
                break;
            }
        }
        rep.assert(format!("{t}: gauge submultiplicativity"), gauge_bad.is_none(), gauge_bad.unwrap_or_else(|| format!("{pairs} pairs")));

        let mh = alg.root_system().max_root_height() as u32;
        let m = VermaModule::new(alg.clone(), Weight::zero(t.rank()), 8)?;
        let bad = m
            .weight_spaces()
            .values()
            .flatten()
            .find(|b| {
                let deg = VermaModule::degree(b);
                !(mh * deg >= m.height(b) && m.height(b) >= deg)
            })
            .cloned();
        rep.assert(format!("{t}: height inequality"), bad.is_none(), format!("{bad:?}"));
    }
    Ok(rep)
}
