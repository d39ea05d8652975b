//! Run configuration: flags, then an optional `key=value` file, then defaults.

use std::collections::BTreeMap;
use std::path::Path;

use lieverma::root_system::{CartanType, Weight};
use lieverma::scalar::{is_prime, parse_q};
use serde_json::{json, Value};

use crate::cli::Common;

#[derive(Clone, Debug)]
pub struct Config {
    pub cartan_type: CartanType,
    pub lambda: Weight,
    pub prime: u64,
    pub n: u32,
    pub height_cap: u32,
    pub degree_cap: u32,
    pub seed: u64,
    pub json: bool,
    pub mu_height: Option<u32>,
}

#[derive(Debug)]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

const KEYS: [&str; 9] = ["type", "lambda", "prime", "n", "height_cap", "degree_cap", "seed", "output", "mu_height"];

pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, UsageError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("{}:{}: expected key=value", path.display(), no + 1)))?;
        let k = k.trim().replace('-', "_");
        if !KEYS.contains(&k.as_str()) {
            return Err(usage(format!("{}:{}: unknown key {k:?}", path.display(), no + 1)));
        }
        out.insert(k, v.trim().to_string());
    }
    Ok(out)
}

fn pick<T: std::str::FromStr>(flag: Option<T>, file: &BTreeMap<String, String>, key: &str, default: T) -> Result<T, UsageError> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match file.get(key) {
        Some(s) => s.parse().map_err(|_| usage(format!("config key {key}: cannot parse {s:?}"))),
        None => Ok(default),
    }
}

pub fn parse_lambda(s: &str, rank: usize) -> Result<Weight, UsageError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != rank {
        return Err(usage(format!("--lambda needs {rank} comma-separated pairings, got {s:?}")));
    }
    let qs = parts
        .iter()
        .map(|p| parse_q(p).map_err(|e| usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Weight::new(qs))
}

impl Config {
    pub fn resolve(common: &Common) -> Result<Self, UsageError> {
        let file = match &common.config {
            Some(p) => read_config_file(p)?,
            None => BTreeMap::new(),
        };
        let type_str = pick(common.cartan_type.clone(), &file, "type", "A1".to_string())?;
        let cartan_type: CartanType = type_str.parse().map_err(|e: lieverma::Error| usage(e.to_string()))?;
        let prime = pick(common.prime, &file, "prime", 5)?;
        if !is_prime(prime) {
            return Err(usage(format!("--prime {prime} is not prime")));
        }
        let n = pick(common.n, &file, "n", 1)?;
        let height_cap = pick(common.height_cap, &file, "height_cap", 12)?;
        let degree_cap = pick(common.degree_cap, &file, "degree_cap", 8)?;
        if height_cap == 0 || degree_cap == 0 {
            return Err(usage("caps must be at least 1"));
        }
        let seed = pick(common.seed, &file, "seed", 7)?;
        let json = common.json
            || match file.get("output").map(String::as_str) {
                None | Some("text") => false,
                Some("json") => true,
                Some(other) => return Err(usage(format!("config key output: expected text or json, got {other:?}"))),
            };
        let mu_height = match common.mu_height {
            Some(h) => Some(h),
            None => file.get("mu_height").map(|s| s.parse()).transpose().map_err(|_| usage("config key mu_height: not an integer"))?,
        };
        let rank = cartan_type.rank();
        let lambda = match common.lambda.clone().or_else(|| file.get("lambda").cloned()) {
            Some(s) => parse_lambda(&s, rank)?,
            None => Weight::zero(rank),
        }
        .with_level(n);
        lambda.check_level(prime).map_err(|e| usage(e.to_string()))?;
        Ok(Self { cartan_type, lambda, prime, n, height_cap, degree_cap, seed, json, mu_height })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.cartan_type.to_string(),
            "lambda": self.lambda.coroot_pairings.iter().map(|x| crate::render::scalar(x, self.prime)).collect::<Vec<_>>(),
            "prime": self.prime,
            "n": self.n,
            "height_cap": self.height_cap,
            "degree_cap": self.degree_cap,
            "seed": self.seed,
            "mu_height": self.mu_height,
        })
    }
}
