//! Rendering of command results as JSON, CSV or text.

use std::fmt::Write as _;

use fockspec_core::galerkin::SpectralReport;
use fockspec_core::Error;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::suites::{Expansion, SuiteReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub n: usize,
    pub q: usize,
    pub operator: String,
    pub mu: i64,
    pub degrees: Vec<u32>,
    pub multiplicities: Vec<usize>,
}

impl GrowthReport {
    /// First step at which the multiplicity fails to grow.
    pub fn stall(&self) -> Option<Value> {
        self.multiplicities.windows(2).zip(self.degrees.windows(2)).find(|(m, _)| m[0] >= m[1]).map(|(m, d)| {
            json!({ "from_degree": d[0], "to_degree": d[1], "from": m[0], "to": m[1] })
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Spectrum(SpectralReport),
    Growth(GrowthReport),
    Suite(SuiteReport),
    Expand(Expansion),
    /// A computation that stopped on an error that is not a usage error.
    Failure { error: String, counterexample: Value },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub command: &'static str,
    pub body: Body,
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            if let Some(r) = num.as_f64().map(round12).and_then(serde_json::Number::from_f64) {
                *num = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

/// Structured detail for errors raised mid-computation.
pub fn error_detail(e: &Error) -> Value {
    match e {
        Error::OffInteger { value, distance, tolerance } => {
            json!({ "eigenvalue": value, "distance": distance, "tolerance": tolerance })
        }
        Error::ResidualExceeded { residual, tolerance } => json!({ "residual": residual, "tolerance": tolerance }),
        Error::IllConditioned(rcond) => json!({ "reciprocal_condition": rcond }),
        other => json!({ "error": other.to_string() }),
    }
}

impl Output {
    pub fn passed(&self) -> bool {
        match &self.body {
            Body::Spectrum(_) => true,
            Body::Growth(g) => g.stall().is_none(),
            Body::Suite(s) => s.passed(),
            Body::Expand(e) => e.passed(),
            Body::Failure { .. } => false,
        }
    }

    pub fn counterexample(&self) -> Option<Value> {
        match &self.body {
            Body::Spectrum(_) => None,
            Body::Growth(g) => g.stall(),
            Body::Suite(s) => s.first_counterexample(),
            Body::Expand(e) => (!e.passed()).then(|| json!({ "monomial": e.monomial })),
            Body::Failure { counterexample, .. } => Some(counterexample.clone()),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
        map.insert("command".into(), json!(self.command));
        map.insert("passed".into(), json!(self.passed()));
        let body = match &self.body {
            Body::Spectrum(r) => json!({
                "n": r.n,
                "q": r.q,
                "degree": r.degree,
                "operator": r.operator.name(),
                "tolerance": r.tolerance,
                "basis_dimension": r.basis_dimension,
                "class_count": r.class_count,
                "max_residual": r.max_residual(),
                "clusters": r.clusters.iter().map(|c| json!({
                    "eigenvalue": c.integer,
                    "multiplicity": c.multiplicity,
                    "estimate": c.estimate,
                    "max_residual": c.max_residual,
                    "max_deviation": c.max_deviation,
                })).collect::<Vec<_>>(),
            }),
            Body::Growth(g) => serde_json::to_value(g).expect("serializable"),
            Body::Suite(s) => {
                let mut v = serde_json::to_value(s).expect("serializable");
                v["total_cases"] = json!(s.total_cases());
                for (c, out) in s.checks.iter().zip(v["checks"].as_array_mut().expect("array")) {
                    out["passed"] = json!(c.passed());
                }
                v
            }
            Body::Expand(e) => serde_json::to_value(e).expect("serializable"),
            Body::Failure { error, .. } => json!({ "error": error }),
        };
        if let Value::Object(fields) = body {
            map.extend(fields);
        }
        map.insert("counterexample".into(), self.counterexample().unwrap_or(Value::Null));
        let mut v = Value::Object(map);
        round_numbers(&mut v);
        v
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut row = |fields: &[String]| w.write_record(fields).expect("in-memory write");
        let s = |x: &dyn ToString| x.to_string();
        match &self.body {
            Body::Spectrum(r) => {
                row(&[s(&"eigenvalue"), s(&"multiplicity"), s(&"max_residual")]);
                for c in &r.clusters {
                    row(&[s(&c.integer), s(&c.multiplicity), fmt12(c.max_residual)]);
                }
            }
            Body::Growth(g) => {
                row(&[s(&"degree"), s(&"mu"), s(&"multiplicity")]);
                for (d, m) in g.degrees.iter().zip(&g.multiplicities) {
                    row(&[s(d), s(&g.mu), s(m)]);
                }
            }
            Body::Suite(rep) => {
                row(&[s(&"check"), s(&"cases"), s(&"failures"), s(&"passed")]);
                for c in &rep.checks {
                    row(&[c.name.clone(), s(&c.cases), s(&c.failures), s(&c.passed())]);
                }
            }
            Body::Expand(e) => {
                row(&[s(&"basis"), s(&"label"), s(&"eigenvalue"), s(&"coefficient"), s(&"norm_squared")]);
                for t in &e.eigen_terms {
                    row(&[s(&"eigen"), eigen_label(&t.kind, &t.params), s(&t.eigenvalue), t.coefficient.clone(), t.norm_squared.clone()]);
                }
                for t in &e.hermite_terms {
                    row(&[s(&"hermite"), hermite_label(&t.x_indices, &t.y_indices), String::new(), t.coefficient.clone(), String::new()]);
                }
            }
            Body::Failure { error, counterexample } => {
                row(&[s(&"error"), s(&"counterexample")]);
                row(&[error.clone(), counterexample.to_string()]);
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        match &self.body {
            Body::Spectrum(r) => {
                let _ = writeln!(
                    out,
                    "spectrum of {} on (0,{})-forms, n = {}, degree <= {}",
                    r.operator.name(),
                    r.q,
                    r.n,
                    r.degree
                );
                let _ = writeln!(
                    out,
                    "basis dimension {} in {} charge classes, max residual {}",
                    r.basis_dimension,
                    r.class_count,
                    fmt12(r.max_residual())
                );
                let _ = writeln!(out, "{:>10}  {:>12}  {:>18}", "eigenvalue", "multiplicity", "max_residual");
                for c in &r.clusters {
                    let _ = writeln!(out, "{:>10}  {:>12}  {:>18}", c.integer, c.multiplicity, fmt12(c.max_residual));
                }
            }
            Body::Growth(g) => {
                let _ = writeln!(out, "multiplicity of {} ({}, n = {}, q = {}): {verdict}", g.mu, g.operator, g.n, g.q);
                for (d, m) in g.degrees.iter().zip(&g.multiplicities) {
                    let _ = writeln!(out, "  degree <= {d:>3}: {m}");
                }
            }
            Body::Suite(rep) => {
                let seed = rep.seed.map(|s| format!(", seed {s}")).unwrap_or_default();
                let _ = writeln!(out, "{}: {verdict} ({} cases{seed})", rep.suite, rep.total_cases());
                for c in &rep.checks {
                    let status = match (c.passed(), c.cases) {
                        (true, 0) => "not applicable".to_string(),
                        (true, _) => "ok".to_string(),
                        (false, _) => format!("{} FAILED", c.failures),
                    };
                    let _ = writeln!(out, "  {:<24} {:>6} cases  {status}", c.name, c.cases);
                }
            }
            Body::Expand(e) => {
                let _ = writeln!(out, "{} in eigenfunctions ({}):", e.monomial, ok(e.eigen_reconstructs));
                for t in &e.eigen_terms {
                    let _ = writeln!(
                        out,
                        "  ({}) {}  eigenvalue {}  norm^2 {}  = {}",
                        t.coefficient,
                        eigen_label(&t.kind, &t.params),
                        t.eigenvalue,
                        t.norm_squared,
                        t.poly
                    );
                }
                let _ = writeln!(out, "{} in Hermite products ({}):", e.monomial, ok(e.hermite_reconstructs));
                for t in &e.hermite_terms {
                    let _ = writeln!(out, "  ({}) {}", t.coefficient, hermite_label(&t.x_indices, &t.y_indices));
                }
            }
            Body::Failure { error, .. } => {
                let _ = writeln!(out, "{}: FAIL: {error}", self.command);
            }
        }
        if let Some(c) = self.counterexample() {
            let _ = writeln!(out, "counterexample: {c}");
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "exact"
    } else {
        "MISMATCH"
    }
}

fn eigen_label(kind: &str, params: &[(u32, u32)]) -> String {
    let ps: Vec<String> = params.iter().map(|(k, m)| format!("{k},{m}")).collect();
    format!("{kind}({})", ps.join(";"))
}

fn hermite_label(x: &[u32], y: &[u32]) -> String {
    let mut parts = Vec::new();
    for (j, (&i, &k)) in x.iter().zip(y).enumerate() {
        if i > 0 {
            parts.push(format!("H_{i}(x{})", j + 1));
        }
        if k > 0 {
            parts.push(format!("H_{k}(y{})", j + 1));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fockspec_core::galerkin::{full_spectrum, SpectrumConfig};

    #[test]
    fn rounding() {
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round12(2.0), 2.0);
        assert_eq!(round12(0.0), 0.0);
    }

    #[test]
    fn spectrum_json_shape() {
        let out = Output {
            command: "spectrum",
            body: Body::Spectrum(full_spectrum(&SpectrumConfig::new(1, 0, 3)).unwrap()),
        };
        let v = out.to_json();
        assert_eq!(v["schema_version"], json!(SCHEMA_VERSION));
        assert_eq!(v["passed"], json!(true));
        assert_eq!(v["clusters"][0]["eigenvalue"], json!(0));
        assert_eq!(v["clusters"][0]["multiplicity"], json!(4));
        assert_eq!(v["counterexample"], Value::Null);
        let csv = out.to_csv();
        assert!(csv.starts_with("eigenvalue,multiplicity,max_residual\n0,4,"));
        assert!(out.to_text().contains("basis dimension 10"));
    }

    #[test]
    fn growth_stall_is_counterexample() {
        let g = GrowthReport {
            n: 1,
            q: 0,
            operator: "box".into(),
            mu: 1,
            degrees: vec![4, 8, 12],
            multiplicities: vec![4, 4, 12],
        };
        let out = Output { command: "multiplicity", body: Body::Growth(g) };
        assert!(!out.passed());
        assert_eq!(out.to_json()["counterexample"]["from_degree"], json!(4));
    }

    #[test]
    fn labels() {
        assert_eq!(hermite_label(&[2, 0], &[0, 1]), "H_2(x1) H_1(y2)");
        assert_eq!(hermite_label(&[0], &[0]), "1");
        assert_eq!(eigen_label("u", &[(1, 2)]), "u(1,2)");
    }
}
