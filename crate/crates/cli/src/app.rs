//! Command-line definitions and dispatch.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fockspec_core::galerkin::{Operator, SpectrumConfig, DEFAULT_TOLERANCE};
use fockspec_core::{Bidegree, Error};

use crate::report::{error_detail, Body, Format, GrowthReport, Output};
use crate::sample::Shape;
use crate::suites::{self, RandomSuite};

pub const QUADRATURE_TOLERANCE: f64 = 1e-8;

#[derive(Parser, Debug, Clone)]
#[command(name = "fockspec", version, about = "Exact checks and truncated spectra for the |z|^2-weighted dbar-complex")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Verify the closed-form eigenfunctions u_{k,m} and v_{k,m} exactly
    VerifyEigen,
    /// Truncated spectrum with multiplicities
    Spectrum,
    /// Multiplicity of one eigenvalue across several degree caps
    Multiplicity,
    /// Witten-Laplacian identities on seeded random forms, plus matching spectra
    WittenCheck,
    /// dbar-complex identities on seeded random forms
    OperatorCheck,
    /// Completeness at truncation via eigenfunction and Hermite expansions
    HermiteCheck,
    /// Expand z^alpha zb^beta in eigenfunctions and Hermite products
    Expand,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyEigen => "verify-eigen",
            Command::Spectrum => "spectrum",
            Command::Multiplicity => "multiplicity",
            Command::WittenCheck => "witten-check",
            Command::OperatorCheck => "operator-check",
            Command::HermiteCheck => "hermite-check",
            Command::Expand => "expand",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, ValueEnum)]
pub enum OperatorArg {
    #[default]
    Box,
    Witten,
    PauliMinus,
    PauliPlus,
}

impl From<OperatorArg> for Operator {
    fn from(o: OperatorArg) -> Self {
        match o {
            OperatorArg::Box => Operator::Box,
            OperatorArg::Witten => Operator::Witten,
            OperatorArg::PauliMinus => Operator::PauliMinus,
            OperatorArg::PauliPlus => Operator::PauliPlus,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Complex dimension
    #[arg(long, global = true, default_value_t = 1)]
    pub n: usize,
    /// Form degree
    #[arg(long, global = true, default_value_t = 0)]
    pub q: usize,
    /// Polynomial degree cap
    #[arg(long, global = true, default_value_t = 8)]
    pub degree: u32,
    #[arg(long, global = true, default_value_t = 8)]
    pub kmax: u32,
    #[arg(long, global = true, default_value_t = 8)]
    pub mmax: u32,
    /// Only verify eigenfunctions with k + m at most this
    #[arg(long, global = true)]
    pub max_sum: Option<u32>,
    /// Distance from an integer beyond which an eigenvalue is an error
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random forms per identity (default 200 for operator-check, 100 for witten-check)
    #[arg(long, global = true)]
    pub cases: Option<usize>,
    /// Draw n from 1..=N and q from 0..=n instead of the fixed (N, Q)
    #[arg(long, global = true)]
    pub all_shapes: bool,
    #[arg(long, global = true, value_enum, default_value_t = OperatorArg::Box)]
    pub operator: OperatorArg,
    /// Eigenvalue tracked by `multiplicity` (default q)
    #[arg(long, global = true)]
    pub mu: Option<i64>,
    #[arg(long, global = true, value_delimiter = ',', default_value = "4,8,12")]
    pub degrees: Vec<u32>,
    /// Accept degree caps above the default limit
    #[arg(long, global = true)]
    pub allow_large_degree: bool,
    /// Holomorphic exponents for `expand`, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    pub alpha: Vec<u32>,
    /// Antiholomorphic exponents for `expand`, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    pub beta: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidParameter(_)
            | Error::DegreeOutOfRange { .. }
            | Error::DegreeCapExceeded { .. }
            | Error::Parse(_)
            | Error::DimensionMismatch { .. }
            | Error::IndexOutOfRange { .. }
    )
}

impl Options {
    pub fn validate(&self) -> Result<(), UsageError> {
        if self.n == 0 {
            return Err(UsageError("--n must be at least 1".into()));
        }
        if self.q > self.n {
            return Err(UsageError(format!("--q {} exceeds --n {}", self.q, self.n)));
        }
        if self.degree == 0 {
            return Err(UsageError("--degree must be at least 1".into()));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(UsageError("--tolerance must be positive".into()));
        }
        if self.cases == Some(0) {
            return Err(UsageError("--cases must be at least 1".into()));
        }
        Ok(())
    }

    pub fn spectrum_config(&self) -> SpectrumConfig {
        SpectrumConfig {
            n: self.n,
            q: self.q,
            degree: self.degree,
            tolerance: self.tolerance,
            operator: self.operator.into(),
            allow_large_degree: self.allow_large_degree,
        }
    }

    fn shape(&self) -> Shape {
        if self.all_shapes {
            Shape::Any { max_n: self.n }
        } else {
            Shape::Fixed { n: self.n, q: self.q }
        }
    }
}

fn checked(cfg: &SpectrumConfig) -> Result<(), UsageError> {
    cfg.validate().map_err(|e| UsageError(e.to_string()))
}

/// Runs one command; `Err` is a usage error, while failed checks come back
/// as an [`Output`] that does not pass.
pub fn run(cli: &Cli) -> Result<Output, UsageError> {
    let o = &cli.opts;
    o.validate()?;
    let body = match cli.command {
        Command::VerifyEigen => Body::Suite(suites::eigen_suite(o.kmax, o.mmax, o.max_sum)),
        Command::Spectrum => {
            let cfg = o.spectrum_config();
            checked(&cfg)?;
            match suites::spectrum(&cfg) {
                Ok(r) => Body::Spectrum(r),
                Err(e) if is_usage(&e) => return Err(UsageError(e.to_string())),
                Err(e) => Body::Failure { error: e.to_string(), counterexample: error_detail(&e) },
            }
        }
        Command::Multiplicity => {
            let cfg = o.spectrum_config();
            let mu = o.mu.unwrap_or(o.q as i64);
            if mu < o.q as i64 {
                return Err(UsageError(format!("--mu {mu} is below --q {}", o.q)));
            }
            if o.degrees.is_empty() {
                return Err(UsageError("--degrees needs at least one value".into()));
            }
            for &d in &o.degrees {
                checked(&cfg.clone().with_degree(d))?;
            }
            match suites::growth(&cfg, mu, &o.degrees) {
                Ok(multiplicities) => Body::Growth(GrowthReport {
                    n: o.n,
                    q: o.q,
                    operator: cfg.operator.name().into(),
                    mu,
                    degrees: o.degrees.clone(),
                    multiplicities,
                }),
                Err(e) if is_usage(&e) => return Err(UsageError(e.to_string())),
                Err(e) => Body::Failure { error: e.to_string(), counterexample: error_detail(&e) },
            }
        }
        Command::WittenCheck => {
            let cfg = o.spectrum_config().with_operator(Operator::Box);
            checked(&cfg)?;
            let suite = RandomSuite { seed: o.seed, cases: o.cases.unwrap_or(100), shape: o.shape(), max_degree: o.degree };
            let mut report = suites::witten_suite(&suite, &[cfg]);
            if o.n == 1 {
                report.checks.push(suites::pauli_check(o.degree, o.tolerance));
            }
            Body::Suite(report)
        }
        Command::OperatorCheck => {
            let suite = RandomSuite { seed: o.seed, cases: o.cases.unwrap_or(200), shape: o.shape(), max_degree: o.degree };
            Body::Suite(suites::operator_suite(&suite))
        }
        Command::HermiteCheck => Body::Suite(suites::hermite_suite(o.n, o.degree, QUADRATURE_TOLERANCE)),
        Command::Expand => {
            let (alpha, beta) = match (o.alpha.is_empty(), o.beta.is_empty()) {
                (true, true) => return Err(UsageError("expand needs --alpha and/or --beta".into())),
                (false, true) => (o.alpha.clone(), vec![0; o.alpha.len()]),
                (true, false) => (vec![0; o.beta.len()], o.beta.clone()),
                (false, false) => (o.alpha.clone(), o.beta.clone()),
            };
            if alpha.len() != o.n || beta.len() != o.n {
                return Err(UsageError(format!("--alpha and --beta need {} entries each", o.n)));
            }
            let e = Bidegree::new(alpha, beta).map_err(|e| UsageError(e.to_string()))?;
            let expansion = suites::expansion(&e).map_err(|e| UsageError(e.to_string()))?;
            Body::Expand(expansion)
        }
    };
    Ok(Output { command: cli.command.name(), body })
}
