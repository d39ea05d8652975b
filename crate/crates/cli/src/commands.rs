use std::collections::BTreeMap;
use std::sync::Arc;

use lieverma::enveloping::{Enveloping, UEAElement};
use lieverma::ideals::{
    annihilator_of_quotient, central_character_ideal, controller_check, duflo_check, phi_property_check,
    sl2_irreducible_annihilator, two_sided_closure, Exactness, IdealBasis, Provenance, TModule,
};
use lieverma::report::CheckReport;
use lieverma::root_system::{CartanType, RootSystem};
use lieverma::sampling::{self, small_nonzero};
use lieverma::scalar::{q, q_to_i64, render_q, GaugeStaircase};
use lieverma::suite::{run_all, run_suite, SuiteConfig, CRITERIA};
use lieverma::verma::calculus::extract_by_key;
use lieverma::verma::submodule::fit_to_staircase;
use lieverma::verma::{
    maximal_submodule, simple_quotient, singular_vectors, submodule_lattice, AffinoidVector, SubmoduleBasis,
    VermaModule, VermaVector,
};
use lieverma::Error;
use serde_json::{json, Value};

use crate::cli::{Command, IdealChoice, IdealsCommand, QuotientChoice, VermaCommand};
use crate::config::Config;
use crate::render;

pub struct Outcome {
    pub operation: String,
    pub result: Value,
    pub text: Vec<String>,
    /// First failing check, if any.
    pub failure: Option<String>,
}

impl Outcome {
    fn computed(operation: &str, result: Value, text: Vec<String>) -> Self {
        Self { operation: operation.into(), result, text, failure: None }
    }

    fn from_report(operation: &str, report: &CheckReport) -> Self {
        let mut text = vec![operation.to_string()];
        for (k, v) in &report.parameters {
            text.push(format!("  {k} = {v}"));
        }
        for (k, v) in &report.per_degree_dims {
            text.push(format!("  dims {k}: {v:?}"));
        }
        for c in &report.checks {
            let status = serde_json::to_value(c.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            text.push(format!("  [{status}] {}: {}", c.name, c.witness));
        }
        Self {
            operation: operation.into(),
            result: serde_json::to_value(report).expect("report serializes"),
            text,
            failure: report.first_failure().map(|c| format!("{}: {}", c.name, c.witness)),
        }
    }
}

/// Errors from the library: bad input is a usage error, anything else a
/// failed check.
pub enum RunError {
    Usage(String),
    Failure(String),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Consistency(_) | Error::NotCentral { .. } => RunError::Failure(e.to_string()),
            _ => RunError::Usage(e.to_string()),
        }
    }
}

type Run = Result<Outcome, RunError>;

pub fn run(cmd: &Command, cfg: &Config) -> Run {
    match cmd {
        Command::RootSystem => root_system(cfg),
        Command::Verma(v) => verma(v, cfg),
        Command::Ideals(i) => ideals(i, cfg),
        Command::VerifyAll { only } => verify_all(only, cfg),
    }
}

fn algebra(cfg: &Config) -> Result<Arc<Enveloping>, RunError> {
    Ok(Enveloping::of_type(cfg.cartan_type, cfg.prime)?)
}

fn module(cfg: &Config) -> Result<VermaModule, RunError> {
    Ok(VermaModule::new(algebra(cfg)?, cfg.lambda.clone(), cfg.height_cap)?)
}

fn root_system(cfg: &Config) -> Run {
    let rs = RootSystem::new(cfg.cartan_type)?;
    let p = cfg.prime;
    let roots: Vec<Value> = rs
        .positive_roots()
        .iter()
        .map(|r| json!({"coefficients": r.coeffs, "height": rs.height(r), "delta": render::scalar(&rs.delta_pairing_root(&r.coeffs), p)}))
        .collect();
    let rho: Vec<Value> = rs.rho().coroot_pairings.iter().map(|x| render::scalar(x, p)).collect();
    let delta: Vec<Value> = rs.delta().iter().map(|x| render::scalar(x, p)).collect();
    let mut text = vec![
        format!("type {} (rank {})", cfg.cartan_type, rs.rank()),
        format!("cartan matrix {:?}", rs.cartan_matrix()),
        format!("{} positive roots:", rs.num_positive()),
    ];
    for r in rs.positive_roots() {
        text.push(format!("  {r}  height {}", rs.height(r)));
    }
    text.push(format!("rho = {} (simple-coroot pairings)", rs.rho()));
    text.push(format!(
        "delta = [{}] (over simple coroots)",
        rs.delta().iter().map(render_q).collect::<Vec<_>>().join(", ")
    ));
    let result = json!({
        "type": cfg.cartan_type.to_string(),
        "rank": rs.rank(),
        "cartan_matrix": rs.cartan_matrix(),
        "positive_roots": roots,
        "highest_root": rs.highest_root().coeffs,
        "max_root_height": rs.max_root_height(),
        "rho": rho,
        "delta": delta,
    });
    Ok(Outcome::computed("root-system", result, text))
}

fn verma(cmd: &VermaCommand, cfg: &Config) -> Run {
    let m = module(cfg)?;
    let p = cfg.prime;
    match cmd {
        VermaCommand::Act { element, basis } => {
            let alg = m.algebra();
            let u = alg.parse(element)?;
            let v = match basis {
                None => m.highest_weight_vector(),
                Some(b) => {
                    if b.len() != m.num_positive() {
                        return Err(RunError::Usage(format!("--basis needs {} exponents", m.num_positive())));
                    }
                    if m.height(b) > m.cap() {
                        return Err(Error::Truncation { height: m.height(b), cap: m.cap() }.into());
                    }
                    m.basis_vector(b.clone())
                }
            };
            let w = m.act(&u, &v);
            let mut text = vec![
                format!("u = {}", alg.render(&u)),
                format!("v = {}", render::vector_text(&v)),
                format!("u v = {}", render::vector_text(&w)),
            ];
            if let Some(t) = w.truncation() {
                text.push(format!("terms above the cap dropped: lowest height {}, lowest gauge {}", t.min_height, t.min_gauge));
            }
            let result = json!({
                "element": render::element(alg, &u),
                "vector": render::vector(&m, &v),
                "image": render::vector(&m, &w),
            });
            Ok(Outcome::computed("verma act", result, text))
        }
        VermaCommand::Weights => {
            let mut text = vec![format!("M({}) up to height {}: {} basis vectors", m.highest_weight(), m.cap(), m.dim())];
            let spaces: Vec<Value> = m
                .weight_spaces()
                .iter()
                .map(|(key, space)| {
                    let h = VermaModule::key_height(key);
                    let eig = m.big_lambda() - q(h as i64);
                    text.push(format!("  lambda - {key:?}: height {h}, dim {}, delta eigenvalue {}", space.len(), render_q(&eig)));
                    json!({
                        "key": key,
                        "weight": m.weight_of_key(key).coroot_pairings.iter().map(|x| render::scalar(x, p)).collect::<Vec<_>>(),
                        "height": h,
                        "dim": space.len(),
                        "delta_eigenvalue": render::scalar(&eig, p),
                    })
                })
                .collect();
            Ok(Outcome::computed("verma weights", json!({"total_dim": m.dim(), "weight_spaces": spaces}), text))
        }
        VermaCommand::Singular => {
            let sv = singular_vectors(&m, &SubmoduleBasis::zero(""));
            let mut text = vec![format!("{} singular vectors up to height {}", sv.len(), m.cap())];
            let list: Vec<Value> = sv
                .iter()
                .map(|(key, v)| {
                    text.push(format!("  weight lambda - {key:?}: {}", render::vector_text(v)));
                    json!({"key": key, "height": VermaModule::key_height(key), "vector": render::vector(&m, v)})
                })
                .collect();
            Ok(Outcome::computed("verma singular", json!({"singular_vectors": list}), text))
        }
        VermaCommand::Submodules => {
            let max = maximal_submodule(&m);
            let quotient = simple_quotient(&m, &max.basis);
            let agrees = max.singular_closure.same_as(&max.basis);
            let lattice = submodule_lattice(&m);
            let mut text = vec![
                format!("maximal submodule: dim {} below height {}", max.basis.total_dim(), m.cap()),
                format!("singular-vector fixpoint agrees: {agrees} ({} rounds)", max.rounds),
                format!("simple quotient: dim {}", quotient.values().sum::<usize>()),
                format!("lattice: {} elements, length {}, status {:?}", lattice.elements.len(), lattice.length, lattice.status),
            ];
            for (i, el) in lattice.elements.iter().enumerate() {
                text.push(format!("  [{i}] {} dim {} contains {:?}", el.provenance(), el.total_dim(), lattice.below[i]));
            }
            let q_dims: BTreeMap<String, usize> = quotient.iter().map(|(k, d)| (format!("{k:?}"), *d)).collect();
            let elements: Vec<Value> = lattice
                .elements
                .iter()
                .enumerate()
                .map(|(i, el)| json!({"provenance": el.provenance(), "dim": el.total_dim(), "contains": lattice.below[i]}))
                .collect();
            let result = json!({
                "maximal_submodule": {"dim": max.basis.total_dim(), "status": max.status, "fixpoint_agrees": agrees, "fixpoint_rounds": max.rounds},
                "simple_quotient": {"dim": quotient.values().sum::<usize>(), "per_weight": q_dims},
                "lattice": {"elements": elements, "length": lattice.length, "status": lattice.status},
            });
            Ok(Outcome::computed("verma submodules", result, text))
        }
        VermaCommand::Extract => extract(&m, cfg),
    }
}

fn extract(m: &VermaModule, cfg: &Config) -> Run {
    let mut rng = sampling::rng(cfg.seed);
    let mut dense = VermaVector::zero();
    for b in m.weight_spaces().values().flatten() {
        dense.add_term(b.clone(), small_nonzero(&mut rng, 9));
    }
    let staircase = GaugeStaircase::linear(1, 0)?;
    let u = AffinoidVector::new(m, fit_to_staircase(m, &dense, &staircase), staircase)?;
    let keys: Vec<_> = m
        .weight_spaces()
        .keys()
        .filter(|k| cfg.mu_height.is_none_or(|h| VermaModule::key_height(k) == h))
        .cloned()
        .collect();
    if keys.is_empty() {
        return Err(RunError::Usage(format!("no weight of height {:?} below the cap {}", cfg.mu_height, m.cap())));
    }
    let mut rep = CheckReport::new("verma extract");
    let mut text = vec![format!("affinoid vector with {} explicit terms, tail staircase gauge >= height", u.explicit().terms().len())];
    let mut out = Vec::new();
    for key in keys {
        let ex = extract_by_key(m, &u, &key)?;
        let matches = ex.component == m.project(u.explicit(), &key);
        rep.assert(format!("weight {key:?}: component equals projection"), matches, "");
        rep.assert(
            format!("weight {key:?}: convergence certified"),
            ex.converged(),
            format!("frontier residual {} vs required {}", ex.frontier_residual, ex.frontier_required),
        );
        text.push(format!("weight lambda - {key:?} (height {}):", ex.height));
        text.push(format!("  separator {}", ex.separator.describe()));
        text.push(format!("  component {}", render::vector_text(&ex.component)));
        text.push(format!(
            "  residual gauges {:?}, tail shift {}, frontier {} >= {}: {}",
            ex.residual_gauges.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            ex.tail_shift,
            ex.frontier_residual,
            ex.frontier_required,
            ex.converged()
        ));
        out.push(json!({
            "key": ex.key,
            "height": ex.height,
            "separator": ex.separator.describe(),
            "steps": ex.steps,
            "component": render::vector(m, &ex.component),
            "residual_gauges": ex.residual_gauges,
            "tail_shift": ex.tail_shift,
            "frontier_residual": ex.frontier_residual,
            "frontier_required": ex.frontier_required,
            "converged": ex.converged(),
        }));
    }
    let failure = rep.first_failure().map(|c| format!("{}: {}", c.name, c.witness));
    Ok(Outcome {
        operation: "verma extract".into(),
        result: json!({"extractions": out, "checks": rep.checks}),
        text,
        failure,
    })
}

fn integral_sl2_weight(cfg: &Config) -> Option<u32> {
    if cfg.cartan_type != CartanType::A1 {
        return None;
    }
    q_to_i64(&cfg.lambda.coroot_pairings[0]).and_then(|m| u32::try_from(m).ok())
}

fn ideals(cmd: &IdealsCommand, cfg: &Config) -> Run {
    let alg = algebra(cfg)?;
    let d = cfg.degree_cap;
    match cmd {
        IdealsCommand::Closure { generators } => {
            let ideal = if generators.is_empty() {
                central_character_ideal(&alg, &cfg.lambda, d)
            } else {
                let gens = generators
                    .iter()
                    .map(|g| Ok((alg.parse(g)?, Provenance::User)))
                    .collect::<Result<Vec<(UEAElement, Provenance)>, Error>>()?;
                two_sided_closure(&alg, &gens, d)
            };
            Ok(ideal_outcome("ideals closure", &alg, &ideal))
        }
        IdealsCommand::Annihilator { of } => {
            let m = module(cfg)?;
            let spread = d * m.root_system().max_root_height() as u32;
            if spread > cfg.height_cap {
                return Err(RunError::Usage(format!(
                    "--height-cap {} is below degree_cap * max root height = {spread}",
                    cfg.height_cap
                )));
            }
            let k = cfg.height_cap - spread;
            let sub = match of {
                QuotientChoice::Verma => SubmoduleBasis::zero("0"),
                QuotientChoice::Simple => maximal_submodule(&m).basis,
            };
            let ann = annihilator_of_quotient(&m, &sub, k, d);
            let mut out = ideal_outcome("ideals annihilator", &alg, &ann);
            out.text.insert(0, format!("sampled heights <= {k}"));
            if let (QuotientChoice::Simple, Some(mm), Exactness::Exact) = (of, integral_sl2_weight(cfg), ann.exactness()) {
                let matrices = sl2_irreducible_annihilator(&alg, mm, d);
                let ok = matrices.same_as(&ann);
                out.text.push(format!("agrees with the explicit L({mm}) matrices: {ok}"));
                if !ok {
                    out.failure = Some(format!("Ann L({mm}) differs from the explicit-matrix annihilator"));
                }
                out.result["matches_explicit_matrices"] = json!(ok);
            }
            Ok(out)
        }
        IdealsCommand::DufloCheck => Ok(Outcome::from_report("ideals duflo-check", &duflo_check(&alg, &cfg.lambda, d)?)),
        IdealsCommand::ControllerCheck { ideal } => {
            let j = match ideal {
                IdealChoice::Zero => IdealBasis::zero(alg.clone(), d),
                IdealChoice::Central => central_character_ideal(&alg, &cfg.lambda, d),
                IdealChoice::Simple => match integral_sl2_weight(cfg) {
                    Some(mm) => sl2_irreducible_annihilator(&alg, mm, d),
                    None => {
                        return Err(RunError::Usage(
                            "--ideal simple needs --type A1 and a nonnegative integral --lambda".into(),
                        ))
                    }
                },
            };
            Ok(Outcome::from_report("ideals controller-check", &controller_check(&j, cfg.n)))
        }
        IdealsCommand::PhiCheck { samples } => {
            let tm = TModule::new(alg.clone(), cfg.lambda.clone(), cfg.height_cap)?;
            let ideal = central_character_ideal(&alg, &cfg.lambda, d);
            let rep = phi_property_check(&tm, *samples, d.min(3), Some(&ideal), cfg.seed);
            Ok(Outcome::from_report("ideals phi-check", &rep))
        }
    }
}

fn ideal_outcome(operation: &str, alg: &Enveloping, ideal: &IdealBasis) -> Outcome {
    let dims = ideal.per_degree_dims();
    let mut text = vec![
        format!("degree cap {}, exactness {:?}", ideal.degree_cap(), ideal.exactness()),
        format!("dim I ∩ U_{{<=k}} for k = 0..: {dims:?}"),
        format!("contains 1: {}", ideal.contains_one()),
    ];
    for (g, prov) in ideal.generators() {
        text.push(format!("  generator [{prov:?}] {}", alg.render(g)));
    }
    let gens: Vec<Value> = ideal
        .generators()
        .iter()
        .map(|(g, prov)| json!({"element": render::element(alg, g), "provenance": prov}))
        .collect();
    let result = json!({
        "degree_cap": ideal.degree_cap(),
        "per_degree_dims": dims,
        "dim": ideal.dim(),
        "contains_one": ideal.contains_one(),
        "exactness": ideal.exactness(),
        "generators": gens,
    });
    Outcome::computed(operation, result, text)
}

fn verify_all(only: &[u32], cfg: &Config) -> Run {
    if let Some(bad) = only.iter().find(|id| !CRITERIA.iter().any(|(i, _)| i == *id)) {
        return Err(RunError::Usage(format!("no acceptance criterion {bad}; ids are 1..={}", CRITERIA.len())));
    }
    let suite_cfg = SuiteConfig { seed: cfg.seed, prime: cfg.prime, n: cfg.n };
    let results = if only.is_empty() { run_all(&suite_cfg) } else { run_suite(only, &suite_cfg) };
    let text = results
        .iter()
        .map(|r| format!("[{}] criterion {:>2} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name, r.witness))
        .collect();
    let failure = results.iter().find(|r| !r.passed).map(|r| format!("criterion {} ({}): {}", r.id, r.name, r.witness));
    let result = json!({
        "criteria": serde_json::to_value(&results).expect("results serialize"),
        "passed": results.iter().filter(|r| r.passed).count(),
        "total": results.len(),
    });
    Ok(Outcome { operation: "verify-all".into(), result, text, failure })
}
