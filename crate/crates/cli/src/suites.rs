//! Verification suites shared by the binary and the acceptance tests.

use fockspec_core::eigen::{basis_element, expand_monomial, reconstruct, u_fn, v_fn, verify_eigen, EigenFunction};
use fockspec_core::galerkin::{charge_classes, merge_spectra, solve_charge_class, Operator, SpectralReport, SpectrumConfig};
use fockspec_core::hermite::{hermite_expand, hermite_product, real_inner, to_complex, to_real};
use fockspec_core::inner::{form_inner, monomial_inner, poly_inner};
use fockspec_core::operators::{
    box_coord, box_laplacian, dbar, dbar_star, dirichlet_form, levi_action, witten_coord, witten_d, witten_dstar,
    witten_laplacian, WittenRep,
};
use fockspec_core::{Bidegree, GaussianRational, Poly, QForm};
use serde::Serialize;
use serde_json::{json, Value};

use crate::parallel;
use crate::quadrature::monomial_inner_numeric;
use crate::sample::{self, Shape};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    /// Cases actually exercised; inapplicable draws are not counted.
    pub cases: usize,
    pub failures: usize,
    /// The failing case with the lowest index.
    pub counterexample: Option<Value>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn total_cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_counterexample(&self) -> Option<Value> {
        self.checks.iter().find(|c| !c.passed()).map(|c| {
            json!({ "check": c.name, "detail": c.counterexample })
        })
    }
}

/// Case outcome: `None` when the case does not apply, `Some(Err(detail))` on failure.
type Case = Option<Result<(), Value>>;

fn run_cases(name: &str, count: usize, f: impl Fn(usize) -> Case + Sync) -> CheckOutcome {
    let results = parallel::map(count, f);
    let mut outcome = CheckOutcome {
        name: name.to_string(),
        cases: 0,
        failures: 0,
        counterexample: None,
    };
    for (i, r) in results.into_iter().enumerate() {
        match r {
            None => {}
            Some(Ok(())) => outcome.cases += 1,
            Some(Err(mut detail)) => {
                outcome.cases += 1;
                outcome.failures += 1;
                if outcome.counterexample.is_none() {
                    if let Value::Object(map) = &mut detail {
                        map.insert("case".into(), json!(i));
                    }
                    outcome.counterexample = Some(detail);
                }
            }
        }
    }
    outcome
}

fn verdict(ok: bool, detail: impl FnOnce() -> Value) -> Result<(), Value> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn core_error(e: fockspec_core::Error) -> Value {
    json!({ "error": e.to_string() })
}

/// Settings for the seeded random-form suites.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomSuite {
    pub seed: u64,
    pub cases: usize,
    pub shape: Shape,
    pub max_degree: u32,
}

impl RandomSuite {
    /// Draws a form accepted by `keep` for `case` of check `check` and runs `body` on it.
    fn check<F>(&self, name: &str, check: u64, keep: fn(usize, usize) -> bool, body: F) -> CheckOutcome
    where
        F: Fn(&QForm, &mut rand_chacha::ChaCha8Rng) -> fockspec_core::Result<Option<Value>> + Sync,
    {
        run_cases(name, self.cases, |case| {
            let mut rng = sample::case_rng(self.seed, check, case);
            let (n, q) = self.shape.draw(&mut rng, keep)?;
            let f = sample::form(&mut rng, n, q, self.max_degree);
            Some(match body(&f, &mut rng) {
                Ok(None) => Ok(()),
                Ok(Some(mut detail)) => {
                    if let Value::Object(map) = &mut detail {
                        map.insert("n".into(), json!(n));
                        map.insert("q".into(), json!(q));
                        map.insert("form".into(), json!(f.to_string()));
                    }
                    Err(detail)
                }
                Err(e) => Err(core_error(e)),
            })
        })
    }
}

fn any(_: usize, _: usize) -> bool {
    true
}

fn mismatch<T: ToString>(lhs: &T, rhs: &T) -> Value {
    json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string() })
}

fn equal_or<T: PartialEq + ToString>(lhs: T, rhs: T) -> Option<Value> {
    (lhs != rhs).then(|| mismatch(&lhs, &rhs))
}

/// ∂̄² = 0, (∂̄*)² = 0, box against its coordinate form, the adjoint relation,
/// self-adjointness, positivity and the Dirichlet form identity.
pub fn operator_suite(cfg: &RandomSuite) -> SuiteReport {
    let d = cfg.max_degree;
    let checks = vec![
        cfg.check("dbar-squared", 0, |n, q| q + 2 <= n, |f, _| {
            let v = dbar(&dbar(f)?)?;
            Ok((!v.is_zero()).then(|| json!({ "image": v.to_string() })))
        }),
        cfg.check("dbar-star-squared", 1, |_, q| q >= 2, |f, _| {
            let v = dbar_star(&dbar_star(f)?)?;
            Ok((!v.is_zero()).then(|| json!({ "image": v.to_string() })))
        }),
        cfg.check("box-equals-coordinates", 2, any, |f, _| {
            Ok(equal_or(box_laplacian(f)?, box_coord(f)))
        }),
        cfg.check("adjoint", 3, |n, q| q < n, |f, rng| {
            let g = sample::form(rng, f.n(), f.q() + 1, d);
            Ok(equal_or(form_inner(&dbar(f)?, &g)?, form_inner(f, &dbar_star(&g)?)?)
                .map(|v| json!({ "g": g.to_string(), "values": v })))
        }),
        cfg.check("self-adjoint", 4, any, |f, rng| {
            let g = sample::form(rng, f.n(), f.q(), d);
            Ok(equal_or(form_inner(&box_laplacian(f)?, &g)?, form_inner(f, &box_laplacian(&g)?)?)
                .map(|v| json!({ "g": g.to_string(), "values": v })))
        }),
        cfg.check("positivity", 5, any, |f, _| {
            let v = form_inner(&box_laplacian(f)?, f)?;
            Ok((!v.is_nonnegative()).then(|| json!({ "value": v.to_string() })))
        }),
        cfg.check("dirichlet-form", 6, any, |f, rng| {
            let g = sample::form(rng, f.n(), f.q(), d);
            Ok(equal_or(dirichlet_form(f, &g)?, form_inner(&box_laplacian(f)?, &g)?)
                .map(|v| json!({ "g": g.to_string(), "values": v })))
        }),
    ];
    SuiteReport {
        suite: "operator-check".into(),
        seed: Some(cfg.seed),
        checks,
    }
}

/// Truncated spectrum with per-class solves fanned out over threads.
pub fn spectrum(cfg: &SpectrumConfig) -> fockspec_core::Result<SpectralReport> {
    cfg.validate()?;
    let classes = charge_classes(cfg.n, cfg.degree);
    let parts = parallel::map(classes.len(), |i| solve_charge_class(cfg, &classes[i]))
        .into_iter()
        .collect::<fockspec_core::Result<Vec<_>>>()?;
    merge_spectra(cfg, parts)
}

/// Multiplicity of `mu` at each cap in `degrees`.
pub fn growth(cfg: &SpectrumConfig, mu: i64, degrees: &[u32]) -> fockspec_core::Result<Vec<usize>> {
    if mu < cfg.q as i64 {
        return Err(fockspec_core::Error::InvalidParameter(format!("mu = {mu} is below q = {}", cfg.q)));
    }
    degrees
        .iter()
        .map(|&d| Ok(spectrum(&cfg.clone().with_degree(d))?.multiplicity(mu)))
        .collect()
}

fn spectra_agree(name: &str, pairs: &[(SpectrumConfig, SpectrumConfig)]) -> CheckOutcome {
    run_cases(name, pairs.len(), |i| {
        let (a, b) = &pairs[i];
        Some(match (spectrum(a), spectrum(b)) {
            (Ok(x), Ok(y)) => verdict(x.clusters == y.clusters, || {
                json!({
                    "n": a.n, "q": a.q, "degree": a.degree,
                    a.operator.name(): x.table(), b.operator.name(): y.table(),
                })
            }),
            (Err(e), _) | (_, Err(e)) => Err(core_error(e)),
        })
    })
}

/// Conjugation, coordinate formula, commutation, the one-form split
/// `Δ^{(0,1)} = Δ^{(0,0)} ⊗ I + M_φ`, `M_φ = I`, and equal truncated spectra
/// for the box and Witten matrices at each configuration in `spectra`.
pub fn witten_suite(cfg: &RandomSuite, spectra: &[SpectrumConfig]) -> SuiteReport {
    let mut checks = vec![
        cfg.check("conjugation", 10, any, |f, _| {
            let lap = witten_laplacian(&WittenRep::new(f.clone()))?;
            Ok(equal_or(lap.into_poly_part(), box_laplacian(f)?))
        }),
        cfg.check("coordinate-formula", 11, any, |f, _| {
            let h = WittenRep::new(f.clone());
            let (lhs, rhs) = (witten_laplacian(&h)?.into_poly_part(), witten_coord(&h).into_poly_part());
            Ok(equal_or(lhs, rhs))
        }),
        cfg.check("commutation-d", 12, |n, q| q < n, |f, _| {
            let h = WittenRep::new(f.clone());
            let lhs = witten_d(&witten_laplacian(&h)?)?.into_poly_part();
            let rhs = witten_laplacian(&witten_d(&h)?)?.into_poly_part();
            Ok(equal_or(lhs, rhs))
        }),
        cfg.check("commutation-dstar", 13, |_, q| q >= 1, |f, _| {
            let h = WittenRep::new(f.clone());
            let lhs = witten_dstar(&witten_laplacian(&h)?)?.into_poly_part();
            let rhs = witten_laplacian(&witten_dstar(&h)?)?.into_poly_part();
            Ok(equal_or(lhs, rhs))
        }),
        cfg.check("one-form-split", 14, |_, q| q == 1, |g, _| {
            let h = WittenRep::new(g.clone());
            let comps = g
                .components()
                .map(|(j, p)| {
                    let lap = witten_laplacian(&WittenRep::scalar(p.clone()))?.into_poly_part().as_function()?;
                    Ok((j.indices().to_vec(), lap))
                })
                .collect::<fockspec_core::Result<Vec<_>>>()?;
            let tensor = QForm::from_components(g.n(), 1, comps)?;
            let rhs = tensor.checked_add(levi_action(&h)?.poly_part())?;
            Ok(equal_or(witten_laplacian(&h)?.into_poly_part(), rhs))
        }),
        cfg.check("levi-identity", 15, |_, q| q == 1, |g, _| {
            Ok(equal_or(levi_action(&WittenRep::new(g.clone()))?.into_poly_part(), g.clone()))
        }),
    ];
    let pairs: Vec<_> = spectra
        .iter()
        .map(|c| (c.clone().with_operator(Operator::Box), c.clone().with_operator(Operator::Witten)))
        .collect();
    checks.push(spectra_agree("spectra-box-vs-witten", &pairs));
    SuiteReport {
        suite: "witten-check".into(),
        seed: Some(cfg.seed),
        checks,
    }
}

/// `P_-` against box on functions and `P_+` against box on `(0,1)`-forms, `n = 1`.
pub fn pauli_check(degree: u32, tolerance: f64) -> CheckOutcome {
    let pairs: Vec<_> = [(0, Operator::PauliMinus), (1, Operator::PauliPlus)]
        .into_iter()
        .map(|(q, op)| {
            let base = SpectrumConfig::new(1, q, degree).with_tolerance(tolerance);
            (base.clone().with_operator(op), base)
        })
        .collect();
    spectra_agree("pauli-spectra", &pairs)
}

/// Which one-variable family an eigen item belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    U,
    V,
}

/// Exact verification of `u_{k,m}` (`0 <= k <= kmax`, `1 <= m <= mmax`) and
/// `v_{k,m}` (`1 <= k <= kmax`, `0 <= m <= mmax`), optionally only `k + m <= max_sum`.
pub fn eigen_suite(kmax: u32, mmax: u32, max_sum: Option<u32>) -> SuiteReport {
    let family = |fam: Family| {
        let (name, k_lo, m_lo) = match fam {
            Family::U => ("u-family", 0, 1),
            Family::V => ("v-family", 1, 0),
        };
        let items: Vec<(u32, u32)> = (k_lo..=kmax)
            .flat_map(|k| (m_lo..=mmax).map(move |m| (k, m)))
            .filter(|&(k, m)| max_sum.is_none_or(|s| k + m <= s))
            .collect();
        run_cases(name, items.len(), |i| {
            let (k, m) = items[i];
            let f = match fam {
                Family::U => u_fn(k, m),
                Family::V => v_fn(k, m),
            };
            Some(match f.and_then(|f| verify_eigen(&f)) {
                Ok(v) => verdict(v.holds, || json!({ "k": k, "m": m, "residual": v.residual.to_string() })),
                Err(e) => Err(core_error(e)),
            })
        })
    };
    SuiteReport {
        suite: "verify-eigen".into(),
        seed: None,
        checks: vec![family(Family::U), family(Family::V)],
    }
}

fn unit(e: &Bidegree) -> Poly {
    Poly::monomial(e.clone(), GaussianRational::from_int(1))
}

/// Completeness at truncation in `n` variables up to degree `degree`, plus
/// inner-product cross-checks in one variable up to degree 6.
pub fn hermite_suite(n: usize, degree: u32, quadrature_tolerance: f64) -> SuiteReport {
    let monos = Bidegree::all_up_to(n, degree);
    let eigen_expansion = run_cases("eigen-expansion", monos.len(), |i| {
        let e = &monos[i];
        let exp = expand_monomial(e);
        let exact = reconstruct(n, &exp) == unit(e);
        let verified = exp.iter().all(|(f, _)| verify_eigen(f).is_ok_and(|v| v.holds));
        Some(verdict(exact && verified, || json!({ "monomial": e.to_string() })))
    });
    let round_trip = run_cases("hermite-round-trip", monos.len(), |i| {
        let e = &monos[i];
        let exp = hermite_expand(&unit(e));
        let ok = exp.reconstruct() == unit(e) && exp.max_degree().unwrap_or(0) <= e.degree();
        Some(verdict(ok, || json!({ "monomial": e.to_string() })))
    });
    let span = run_cases("span-dimension", degree as usize + 1, |d| {
        let d = d as u32;
        let level: Vec<&Bidegree> = monos.iter().filter(|e| e.degree() <= d).collect();
        // monomials -> Hermite products of degree <= d, and back
        let forward = level
            .iter()
            .all(|e| hermite_expand(&unit(e)).max_degree().unwrap_or(0) <= d);
        let backward = level.iter().all(|e| {
            hermite_product(e.alpha(), e.beta()).is_ok_and(|h| to_complex(&h).total_degree().unwrap_or(0) <= d)
        });
        // H_alpha(x) H_beta(y) = 2^d x^alpha y^beta + lower degree, so the products are independent
        let triangular = level
            .iter()
            .filter(|e| {
                hermite_product(e.alpha(), e.beta()).is_ok_and(|h| {
                    let top = e.degree();
                    let lead = h.as_xy().coeff(e) == GaussianRational::from_int(1i64 << top);
                    lead && h.as_xy().terms().all(|(t, _)| t == **e || t.degree() < top)
                })
            })
            .count();
        let ok = forward && backward && triangular == level.len();
        Some(verdict(ok, || {
            json!({ "degree": d, "monomials": level.len(), "independent_products": triangular })
        }))
    });
    let items: Vec<EigenFunction> = (0..=6u32)
        .flat_map(|k| (0..=6 - k).map(move |m| (k, m)))
        .flat_map(|(k, m)| [u_fn(k, m).ok(), v_fn(k, m).ok()])
        .flatten()
        .collect();
    let coverage = run_cases("eigenfunction-coverage", items.len(), |i| {
        let f = &items[i];
        let (k, m) = f.params[0];
        let bound = f.poly.total_degree().unwrap_or(0);
        let exp = hermite_expand(&f.poly);
        let ok = exp.reconstruct() == f.poly && exp.max_degree().unwrap_or(0) <= bound;
        Some(verdict(ok, || json!({ "kind": format!("{:?}", f.kind), "k": k, "m": m })))
    });
    let small = Bidegree::all_up_to(1, degree.min(4));
    let pairs: Vec<(&Bidegree, &Bidegree)> = small.iter().flat_map(|a| small.iter().map(move |b| (a, b))).collect();
    let real = run_cases("real-inner", pairs.len(), |i| {
        let (a, b) = pairs[i];
        let exact = poly_inner(&unit(a), &unit(b)).ok()?;
        let r = real_inner(&to_real(&unit(a)), &to_real(&unit(b))).ok()?;
        let ok = r.coeff == *exact.coeff() && r.sqrt_pi_power == 2 * exact.pi_power();
        Some(verdict(ok, || json!({ "a": a.to_string(), "b": b.to_string() })))
    });
    SuiteReport {
        suite: "hermite-check".into(),
        seed: None,
        checks: vec![
            eigen_expansion,
            round_trip,
            span,
            coverage,
            real,
            quadrature_check(6, quadrature_tolerance),
        ],
    }
}

/// `monomial_inner` against numeric quadrature for all one-variable pairs of
/// degree at most `max_degree`: relative error for nonzero values, absolute otherwise.
pub fn quadrature_check(max_degree: u32, tolerance: f64) -> CheckOutcome {
    let monos = Bidegree::all_up_to(1, max_degree);
    let pairs: Vec<(&Bidegree, &Bidegree)> = monos.iter().flat_map(|a| monos.iter().map(move |b| (a, b))).collect();
    run_cases("inner-quadrature", pairs.len(), |i| {
        let (a, b) = pairs[i];
        let exact = monomial_inner(a, b).ok()?.re_f64();
        let (re, im) = monomial_inner_numeric(a.alpha()[0], a.beta()[0], b.alpha()[0], b.beta()[0]);
        let scale = exact.abs().max(1.0);
        let ok = if exact == 0.0 {
            re.abs() <= tolerance && im.abs() <= tolerance
        } else {
            (re - exact).abs() <= tolerance * exact.abs() && im.abs() <= tolerance * scale
        };
        Some(verdict(ok, || {
            json!({ "a": a.to_string(), "b": b.to_string(), "exact": exact, "numeric": [re, im] })
        }))
    })
}

/// One term of an eigenfunction expansion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenTerm {
    pub coefficient: String,
    pub kind: String,
    pub params: Vec<(u32, u32)>,
    pub eigenvalue: u32,
    /// `<f, f>` as `p/q·pi^n`.
    pub norm_squared: String,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HermiteTerm {
    pub x_indices: Vec<u32>,
    pub y_indices: Vec<u32>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expansion {
    pub monomial: String,
    pub eigen_terms: Vec<EigenTerm>,
    pub eigen_reconstructs: bool,
    pub hermite_terms: Vec<HermiteTerm>,
    pub hermite_reconstructs: bool,
}

impl Expansion {
    pub fn passed(&self) -> bool {
        self.eigen_reconstructs && self.hermite_reconstructs
    }
}

/// Expansions of `z^alpha zb^beta` in eigenfunctions and in Hermite products.
pub fn expansion(e: &Bidegree) -> fockspec_core::Result<Expansion> {
    let n = e.n();
    let exp = expand_monomial(e);
    let eigen_terms = exp
        .iter()
        .map(|(f, c)| {
            Ok(EigenTerm {
                coefficient: c.to_string(),
                kind: format!("{:?}", f.kind).to_lowercase(),
                params: f.params.clone(),
                eigenvalue: f.eigenvalue,
                norm_squared: poly_inner(&f.poly, &f.poly)?.to_string(),
                poly: f.poly.to_string(),
            })
        })
        .collect::<fockspec_core::Result<Vec<_>>>()?;
    let herm = hermite_expand(&unit(e));
    let hermite_terms = herm
        .terms()
        .map(|(k, c)| HermiteTerm {
            x_indices: k.alpha().to_vec(),
            y_indices: k.beta().to_vec(),
            coefficient: c.to_string(),
        })
        .collect();
    debug_assert_eq!(basis_element(e).poly.leading_term().map(|t| t.0.clone()), Some(e.clone()));
    Ok(Expansion {
        monomial: e.to_string(),
        eigen_reconstructs: reconstruct(n, &exp) == unit(e),
        eigen_terms,
        hermite_reconstructs: herm.reconstruct() == unit(e),
        hermite_terms,
    })
}
