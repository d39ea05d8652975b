//! JSON and text forms of library values. Rationals always appear as
//! `num/den` together with their valuation.

use lieverma::enveloping::{Enveloping, UEAElement};
use lieverma::scalar::{render_q, RenderedScalar, Q};
use lieverma::verma::{VermaModule, VermaVector};
use serde_json::{json, Value};

pub fn scalar(x: &Q, p: u64) -> Value {
    serde_json::to_value(RenderedScalar::new(x, p)).expect("scalar serializes")
}

pub fn vector(module: &VermaModule, v: &VermaVector) -> Value {
    let p = module.algebra().prime();
    let terms: Vec<Value> = v
        .terms()
        .iter()
        .map(|(b, c)| {
            json!({
                "basis": b,
                "height": module.height(b),
                "weight": module.weight_key(b),
                "coefficient": scalar(c, p),
            })
        })
        .collect();
    json!({
        "terms": terms,
        "truncation": v.truncation().map(|t| json!({"min_height": t.min_height, "min_gauge": t.min_gauge})),
    })
}

pub fn vector_text(v: &VermaVector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.terms()
        .iter()
        .map(|(b, c)| format!("({})*f^{:?}v", render_q(c), b))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn element(alg: &Enveloping, u: &UEAElement) -> Value {
    let terms: Vec<Value> = u
        .terms()
        .iter()
        .map(|(m, c)| json!({"monomial": alg.render_monomial(m), "coefficient": scalar(c, alg.prime())}))
        .collect();
    json!({"text": alg.render(u), "terms": terms})
}
