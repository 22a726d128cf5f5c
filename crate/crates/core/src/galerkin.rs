//! Truncated spectra on monomial bases split by charge.
//!
//! Every operator handled here preserves the charge `alpha - beta` of each
//! monomial and never raises degree, so the span of the monomials of one
//! charge and degree at most `D` (in every component `J`) is invariant and
//! the Galerkin eigenvalues are exact. The pencil `(A, B)` is reduced exactly
//! over the rationals; floats enter only at the symmetric eigensolve.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use num_rational::BigRational;
use num_traits::{Float, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::forms::{MultiIndex, QForm};
use crate::inner::{form_inner, gram, ExactScalar};
use crate::operators::{box_laplacian, pauli, witten_laplacian, PauliSign, WittenRep};
use crate::polyalg::{Bidegree, GaussianRational, Poly};

pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Largest degree cap accepted without the override.
pub const DEGREE_LIMIT: u32 = 16;
/// Smallest acceptable reciprocal condition estimate in [`solve_pencil`].
pub const RCOND_THRESHOLD: f64 = 1e-10;

/// Which operator the matrices are assembled from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum Operator {
    /// `□_{φ,q}` on polynomial `(0,q)`-forms.
    #[default]
    Box,
    /// `Δ^{(0,q)}` on `p e^{-|z|²/2}`, basis taken as polynomial parts.
    Witten,
    /// `P_-`, `n = 1`, `q = 0`.
    PauliMinus,
    /// `P_+`, `n = 1`, `q = 1`.
    PauliPlus,
}

impl Operator {
    pub fn name(self) -> &'static str {
        match self {
            Operator::Box => "box",
            Operator::Witten => "witten",
            Operator::PauliMinus => "pauli-minus",
            Operator::PauliPlus => "pauli-plus",
        }
    }

    fn check(self, n: usize, q: usize) -> Result<()> {
        let need = match self {
            Operator::Box | Operator::Witten => return Ok(()),
            Operator::PauliMinus => 0,
            Operator::PauliPlus => 1,
        };
        if n != 1 || q != need {
            return Err(Error::InvalidParameter(format!(
                "{} acts for n = 1, q = {need}; got n = {n}, q = {q}",
                self.name()
            )));
        }
        Ok(())
    }

    pub fn apply(self, f: &QForm) -> Result<QForm> {
        self.check(f.n(), f.q())?;
        match self {
            Operator::Box => box_laplacian(f),
            Operator::Witten => Ok(witten_laplacian(&WittenRep::new(f.clone()))?.into_poly_part()),
            Operator::PauliMinus => Ok(QForm::from_poly(pauli(&f.as_function()?, PauliSign::Minus)?)),
            Operator::PauliPlus => {
                let dz = MultiIndex::single(0);
                QForm::single(dz.clone(), pauli(&f.component(&dz), PauliSign::Plus)?)
            }
        }
    }
}

impl core::str::FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "box" => Operator::Box,
            "witten" => Operator::Witten,
            "pauli-minus" => Operator::PauliMinus,
            "pauli-plus" => Operator::PauliPlus,
            other => return Err(Error::Parse(format!("unknown operator `{other}`"))),
        })
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SpectrumConfig {
    pub n: usize,
    pub q: usize,
    pub degree: u32,
    pub tolerance: f64,
    pub operator: Operator,
    pub allow_large_degree: bool,
}

impl SpectrumConfig {
    pub fn new(n: usize, q: usize, degree: u32) -> Self {
        SpectrumConfig {
            n,
            q,
            degree,
            tolerance: DEFAULT_TOLERANCE,
            operator: Operator::Box,
            allow_large_degree: false,
        }
    }

    pub fn with_operator(mut self, operator: Operator) -> Self {
        self.operator = operator;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_degree(mut self, degree: u32) -> Self {
        self.degree = degree;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if self.q > self.n {
            return Err(Error::DegreeOutOfRange { q: self.q, n: self.n });
        }
        if self.degree == 0 {
            return Err(Error::InvalidParameter("degree cap must be at least 1".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.degree > DEGREE_LIMIT && !self.allow_large_degree {
            return Err(Error::DegreeCapExceeded {
                degree: self.degree,
                limit: DEGREE_LIMIT,
            });
        }
        self.operator.check(self.n, self.q)
    }
}

/// Monomials of one charge with total degree at most `degree_cap`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChargeClass {
    n: usize,
    charge: Vec<i64>,
    degree_cap: u32,
    monomials: Vec<Bidegree>,
}

impl ChargeClass {
    pub fn new(n: usize, charge: Vec<i64>, degree_cap: u32) -> Result<Self> {
        if charge.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: charge.len(),
            });
        }
        let monomials: Vec<Bidegree> = Bidegree::all_up_to(n, degree_cap)
            .into_iter()
            .filter(|e| e.charge() == charge)
            .collect();
        if monomials.is_empty() {
            return Err(Error::EmptyBasis);
        }
        Ok(ChargeClass {
            n,
            charge,
            degree_cap,
            monomials,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn charge(&self) -> &[i64] {
        &self.charge
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn monomials(&self) -> &[Bidegree] {
        &self.monomials
    }
}

/// All nonempty classes for degree cap `d`, ordered by charge.
pub fn charge_classes(n: usize, d: u32) -> Vec<ChargeClass> {
    let mut groups: BTreeMap<Vec<i64>, Vec<Bidegree>> = BTreeMap::new();
    for e in Bidegree::all_up_to(n, d) {
        groups.entry(e.charge()).or_default().push(e);
    }
    groups
        .into_iter()
        .map(|(charge, monomials)| ChargeClass {
            n,
            charge,
            degree_cap: d,
            monomials,
        })
        .collect()
}

/// Exact matrices of a class, with `π^n` divided out.
#[derive(Clone, PartialEq, Debug)]
pub struct ClassMatrices {
    pub basis: Vec<QForm>,
    /// `a[i][j] = <op e_j, e_i> / π^n`
    pub a: Vec<Vec<BigRational>>,
    /// `b[i][j] = <e_j, e_i> / π^n`
    pub b: Vec<Vec<BigRational>>,
}

impl ClassMatrices {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn to_f64(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let m = self.dim();
        let conv = |x: &Vec<Vec<BigRational>>| DMatrix::from_fn(m, m, |i, j| to_f64(&x[i][j]));
        (conv(&self.a), conv(&self.b))
    }
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn real_part(s: &ExactScalar) -> Result<BigRational> {
    if s.coeff().is_real() {
        Ok(s.coeff().re().clone())
    } else {
        Err(Error::NotReal(s.to_string()))
    }
}

/// Assembles the operator and Gram matrices of `class` in degree `q`; the
/// basis runs over components `J` (outer) and the class monomials (inner).
pub fn build_class_matrices(class: &ChargeClass, q: usize, op: Operator) -> Result<ClassMatrices> {
    let n = class.n;
    op.check(n, q)?;
    let mut basis = Vec::new();
    let mut index = BTreeMap::new();
    for j in MultiIndex::all(n, q) {
        for e in &class.monomials {
            index.insert((j.clone(), e.clone()), basis.len());
            basis.push(QForm::single(j.clone(), Poly::monomial(e.clone(), GaussianRational::from_int(1)))?);
        }
    }
    let m = basis.len();
    let b = gram(&basis)?
        .iter()
        .map(|row| row.iter().map(real_part).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut a = alloc::vec![alloc::vec![BigRational::zero(); m]; m];
    for (col, e) in basis.iter().enumerate() {
        let image = op.apply(e)?;
        for (j, p) in image.components() {
            for (mono, _) in p.terms() {
                if !index.contains_key(&(j.clone(), mono.clone())) {
                    return Err(Error::LeavesSubspace(format!("{mono} in component {j}")));
                }
            }
        }
        for (row, f) in basis.iter().enumerate() {
            a[row][col] = real_part(&form_inner(&image, f)?)?;
        }
    }
    for i in 0..m {
        for j in 0..i {
            if a[i][j] != a[j][i] {
                return Err(Error::InvalidParameter(format!(
                    "{} matrix is not symmetric at ({i}, {j})",
                    op.name()
                )));
            }
        }
    }
    Ok(ClassMatrices { basis, a, b })
}

/// `B = L diag(d) L^T` with `L` unit lower triangular.
fn ldl(b: &[Vec<BigRational>]) -> Result<(Vec<Vec<BigRational>>, Vec<BigRational>)> {
    let m = b.len();
    let mut l = alloc::vec![alloc::vec![BigRational::zero(); m]; m];
    let mut d: Vec<BigRational> = Vec::with_capacity(m);
    for j in 0..m {
        let mut dj = b[j][j].clone();
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        if dj <= BigRational::zero() {
            return Err(Error::SingularGram(j));
        }
        for i in j + 1..m {
            let mut v = b[i][j].clone();
            for k in 0..j {
                v -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = v / &dj;
        }
        l[j][j] = BigRational::from_integer(1.into());
        d.push(dj);
    }
    Ok((l, d))
}

/// `L^{-1} X` for unit lower triangular `L`.
fn forward_solve(l: &[Vec<BigRational>], x: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let m = l.len();
    let mut y: Vec<Vec<BigRational>> = x.to_vec();
    for i in 0..m {
        for k in 0..i {
            if l[i][k].is_zero() {
                continue;
            }
            let (head, tail) = y.split_at_mut(i);
            for (t, s) in tail[0].iter_mut().zip(&head[k]) {
                *t -= &l[i][k] * s;
            }
        }
    }
    y
}

fn transpose(x: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let m = x.len();
    (0..m).map(|j| (0..m).map(|i| x[i][j].clone()).collect()).collect()
}

/// Eigenvalues of the class pencil, ascending, each with the residual
/// `|S y - λ y|` of the reduced symmetric problem `S = D^{-1/2} L^{-1} A L^{-T} D^{-1/2}`.
pub fn solve_class(mats: &ClassMatrices) -> Result<Vec<(f64, f64)>> {
    let m = mats.dim();
    if m == 0 {
        return Err(Error::EmptyBasis);
    }
    let (l, d) = ldl(&mats.b)?;
    let c = forward_solve(&l, &transpose(&forward_solve(&l, &mats.a)));
    let sd: Vec<f64> = d.iter().map(|x| Float::sqrt(to_f64(x))).collect();
    let s = DMatrix::from_fn(m, m, |i, j| to_f64(&c[i][j]) / (sd[i] * sd[j]));
    let s = (&s + s.transpose()) * 0.5;
    let eig = SymmetricEigen::new(s.clone());
    let mut out: Vec<(f64, f64)> = (0..m)
        .map(|k| {
            let y = eig.eigenvectors.column(k);
            let lam = eig.eigenvalues[k];
            (lam, (&s * y - y * lam).norm())
        })
        .collect();
    out.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(out)
}

/// Floating-point generalized eigenvalues of `A x = λ B x` through a
/// Cholesky factor of `B`; refuses `B` whose eigenvalue spread `λ_min/λ_max`
/// falls below [`RCOND_THRESHOLD`].
pub fn solve_pencil(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<Vec<f64>> {
    if a.shape() != b.shape() || !a.is_square() {
        return Err(Error::DimensionMismatch {
            left: a.nrows(),
            right: b.nrows(),
        });
    }
    if a.is_empty() {
        return Err(Error::EmptyBasis);
    }
    let spread = SymmetricEigen::new(b.clone()).eigenvalues;
    let rcond = spread.min() / spread.max();
    if rcond.is_nan() || rcond < RCOND_THRESHOLD {
        return Err(Error::IllConditioned(rcond));
    }
    let l = b.clone().cholesky().ok_or(Error::IllConditioned(rcond))?.l();
    let x = l.solve_lower_triangular(a).ok_or(Error::IllConditioned(rcond))?;
    let c = l.solve_lower_triangular(&x.transpose()).ok_or(Error::IllConditioned(rcond))?;
    let c = (&c + c.transpose()) * 0.5;
    let mut ev: Vec<f64> = SymmetricEigen::new(c).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

#[derive(Clone, PartialEq, Debug)]
pub struct ClassSpectrum {
    pub charge: Vec<i64>,
    pub dimension: usize,
    /// `(eigenvalue, residual)`, ascending.
    pub eigenpairs: Vec<(f64, f64)>,
}

pub fn solve_charge_class(cfg: &SpectrumConfig, class: &ChargeClass) -> Result<ClassSpectrum> {
    let mats = build_class_matrices(class, cfg.q, cfg.operator)?;
    Ok(ClassSpectrum {
        charge: class.charge.clone(),
        dimension: mats.dim(),
        eigenpairs: solve_class(&mats)?,
    })
}

#[derive(Clone, PartialEq, Debug)]
pub struct Cluster {
    pub estimate: f64,
    pub integer: i64,
    pub multiplicity: usize,
    pub max_residual: f64,
    /// Largest distance of a member from `integer`.
    pub max_deviation: f64,
}

/// Groups `(eigenvalue, residual)` pairs by nearest integer; anything
/// farther than `tolerance` from an integer, or with a larger residual, is an error.
pub fn cluster_eigenvalues(pairs: &[(f64, f64)], tolerance: f64) -> Result<Vec<Cluster>> {
    let mut acc: BTreeMap<i64, Cluster> = BTreeMap::new();
    for &(value, residual) in pairs {
        let nearest = Float::round(value);
        let distance = Float::abs(value - nearest);
        if distance.is_nan() || distance > tolerance {
            return Err(Error::OffInteger {
                value,
                distance,
                tolerance,
            });
        }
        if residual.is_nan() || residual > tolerance {
            return Err(Error::ResidualExceeded { residual, tolerance });
        }
        let c = acc.entry(nearest as i64).or_insert(Cluster {
            estimate: 0.0,
            integer: nearest as i64,
            multiplicity: 0,
            max_residual: 0.0,
            max_deviation: 0.0,
        });
        c.estimate += value;
        c.multiplicity += 1;
        c.max_residual = c.max_residual.max(residual);
        c.max_deviation = c.max_deviation.max(distance);
    }
    Ok(acc
        .into_values()
        .map(|mut c| {
            c.estimate /= c.multiplicity as f64;
            c
        })
        .collect())
}

#[derive(Clone, PartialEq, Debug)]
pub struct SpectralReport {
    pub n: usize,
    pub q: usize,
    pub degree: u32,
    pub operator: Operator,
    pub tolerance: f64,
    pub clusters: Vec<Cluster>,
    pub basis_dimension: usize,
    pub class_count: usize,
}

impl SpectralReport {
    pub fn multiplicity(&self, mu: i64) -> usize {
        self.clusters
            .iter()
            .find(|c| c.integer == mu)
            .map_or(0, |c| c.multiplicity)
    }

    pub fn eigenvalues(&self) -> Vec<i64> {
        self.clusters.iter().map(|c| c.integer).collect()
    }

    /// `(integer, multiplicity)` per cluster.
    pub fn table(&self) -> Vec<(i64, usize)> {
        self.clusters.iter().map(|c| (c.integer, c.multiplicity)).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.clusters.iter().map(|c| c.max_residual).fold(0.0, f64::max)
    }

    pub fn max_deviation(&self) -> f64 {
        self.clusters.iter().map(|c| c.max_deviation).fold(0.0, f64::max)
    }
}

/// Deterministic merge of per-class results, in any order.
pub fn merge_spectra(cfg: &SpectrumConfig, mut classes: Vec<ClassSpectrum>) -> Result<SpectralReport> {
    classes.sort_by(|x, y| x.charge.cmp(&y.charge));
    let mut pairs: Vec<(f64, f64, &[i64])> = classes
        .iter()
        .flat_map(|c| c.eigenpairs.iter().map(move |&(v, r)| (v, r, c.charge.as_slice())))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then_with(|| x.2.cmp(y.2)));
    let flat: Vec<(f64, f64)> = pairs.iter().map(|&(v, r, _)| (v, r)).collect();
    Ok(SpectralReport {
        n: cfg.n,
        q: cfg.q,
        degree: cfg.degree,
        operator: cfg.operator,
        tolerance: cfg.tolerance,
        clusters: cluster_eigenvalues(&flat, cfg.tolerance)?,
        basis_dimension: classes.iter().map(|c| c.dimension).sum(),
        class_count: classes.len(),
    })
}

pub fn full_spectrum(cfg: &SpectrumConfig) -> Result<SpectralReport> {
    cfg.validate()?;
    let spectra = charge_classes(cfg.n, cfg.degree)
        .iter()
        .map(|c| solve_charge_class(cfg, c))
        .collect::<Result<Vec<_>>>()?;
    merge_spectra(cfg, spectra)
}

/// Multiplicity of `mu` at each degree cap in `degrees`.
pub fn multiplicity_growth(cfg: &SpectrumConfig, mu: i64, degrees: &[u32]) -> Result<Vec<usize>> {
    if mu < cfg.q as i64 {
        return Err(Error::InvalidParameter(format!("mu = {mu} is below q = {}", cfg.q)));
    }
    degrees
        .iter()
        .map(|&d| Ok(full_spectrum(&cfg.clone().with_degree(d))?.multiplicity(mu)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::scalar_basis_element;
    use alloc::vec;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    /// Monomials of degree at most `d` with `Σ beta = mu`, the triangular diagonal of box.
    fn monomial_count(n: usize, d: u32, mu: u32) -> usize {
        Bidegree::all_up_to(n, d)
            .iter()
            .filter(|e| e.beta().iter().sum::<u32>() == mu)
            .count()
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn charge_zero_class_matrices() {
        let class = ChargeClass::new(1, vec![0], 4).unwrap();
        let mats = build_class_matrices(&class, 0, Operator::Box).unwrap();
        let want = [[1, 1, 2], [1, 2, 6], [2, 6, 24]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(mats.b[i][j], rat(want[i][j]));
            }
        }
        let ev: Vec<f64> = solve_class(&mats).unwrap().iter().map(|p| p.0).collect();
        for (got, want) in ev.iter().zip([0.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-8);
        }
        let (a, b) = mats.to_f64();
        for (got, want) in solve_pencil(&a, &b).unwrap().iter().zip([0.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-8);
        }
    }

    #[test]
    fn single_zbar_class() {
        let class = ChargeClass::new(1, vec![-1], 1).unwrap();
        let mats = build_class_matrices(&class, 0, Operator::Box).unwrap();
        assert_eq!((mats.a.clone(), mats.b.clone()), (vec![vec![rat(1)]], vec![vec![rat(1)]]));
        let ev = solve_class(&mats).unwrap();
        assert!((ev[0].0 - 1.0).abs() < 1e-12);
        assert!(ChargeClass::new(1, vec![-3], 2).is_err());
    }

    #[test]
    fn form_degree_shifts_class_spectrum() {
        for charge in -2..=2i64 {
            let class = ChargeClass::new(1, vec![charge], 6).unwrap();
            let e0 = solve_class(&build_class_matrices(&class, 0, Operator::Box).unwrap()).unwrap();
            let e1 = solve_class(&build_class_matrices(&class, 1, Operator::Box).unwrap()).unwrap();
            for (x, y) in e0.iter().zip(&e1) {
                assert!((y.0 - x.0 - 1.0).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn pencil_rejects_ill_conditioning() {
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1e-14]);
        assert!(matches!(solve_pencil(&DMatrix::identity(2, 2), &b), Err(Error::IllConditioned(_))));
        let class = ChargeClass::new(1, vec![0], 16).unwrap();
        let (a, b) = build_class_matrices(&class, 0, Operator::Box).unwrap().to_f64();
        assert!(matches!(solve_pencil(&a, &b), Err(Error::IllConditioned(_))));
    }

    #[test]
    fn one_variable_spectrum() {
        let d = 12;
        for q in 0..=1usize {
            let r = full_spectrum(&SpectrumConfig::new(1, q, d)).unwrap();
            let want: Vec<i64> = (q as i64..=d as i64 + q as i64).collect();
            assert_eq!(r.eigenvalues(), want);
            for c in &r.clusters {
                let mu = (c.integer - q as i64) as u32;
                assert_eq!(c.multiplicity, monomial_count(1, d, mu));
                assert_eq!(c.multiplicity as u32, d - mu + 1);
                assert!(c.max_deviation < 1e-8);
            }
            assert_eq!(r.basis_dimension, ((d + 1) * (d + 2) / 2) as usize);
        }
    }

    #[test]
    fn two_variable_one_forms() {
        let d = 6;
        let r = full_spectrum(&SpectrumConfig::new(2, 1, d)).unwrap();
        assert_eq!(r.clusters[0].integer, 1);
        for mu in 1..=6 {
            assert_eq!(r.multiplicity(mu), binom(2, 1) * monomial_count(2, d, mu as u32 - 1));
        }
        assert!(r.max_deviation() < 1e-8);
    }

    #[test]
    fn closed_form_count_matches() {
        let d = 8;
        let r = full_spectrum(&SpectrumConfig::new(1, 0, d)).unwrap();
        for c in &r.clusters {
            let count = Bidegree::all_up_to(1, d)
                .iter()
                .map(|e| scalar_basis_element(e.alpha()[0], e.beta()[0]))
                .filter(|f| f.eigenvalue as i64 == c.integer)
                .count();
            assert_eq!(count, c.multiplicity);
        }
    }

    #[test]
    fn witten_and_pauli_reports_agree() {
        for (n, d) in [(1, 6), (2, 4)] {
            for q in 0..=n {
                let cfg = SpectrumConfig::new(n, q, d);
                let b = full_spectrum(&cfg).unwrap();
                let w = full_spectrum(&cfg.clone().with_operator(Operator::Witten)).unwrap();
                assert_eq!(b.clusters, w.clusters);
            }
        }
        for (q, op) in [(0, Operator::PauliMinus), (1, Operator::PauliPlus)] {
            let cfg = SpectrumConfig::new(1, q, 8);
            let p = full_spectrum(&cfg.clone().with_operator(op)).unwrap();
            assert_eq!(p.clusters, full_spectrum(&cfg).unwrap().clusters);
        }
        assert!(full_spectrum(&SpectrumConfig::new(1, 1, 4).with_operator(Operator::PauliMinus)).is_err());
    }

    #[test]
    fn growth_examples() {
        let cfg = SpectrumConfig::new(1, 0, 1);
        assert_eq!(multiplicity_growth(&cfg, 1, &[4, 8, 12]).unwrap(), vec![4, 8, 12]);
        assert_eq!(multiplicity_growth(&cfg, 0, &[4, 8, 12]).unwrap(), vec![5, 9, 13]);
        assert!(multiplicity_growth(&SpectrumConfig::new(1, 1, 1), 0, &[4]).is_err());
        for n in 1..=2 {
            for q in 0..=n {
                for mu in q as i64..=4 {
                    let g = multiplicity_growth(&SpectrumConfig::new(n, q, 1), mu, &[4, 5, 6]).unwrap();
                    assert!(g.windows(2).all(|w| w[0] < w[1]), "n={n} q={q} mu={mu}: {g:?}");
                }
            }
        }
    }

    #[test]
    fn clustering_is_strict() {
        let c = cluster_eigenvalues(&[(0.0, 0.0), (1.0 + 1e-9, 1e-12), (1.0, 0.0)], 1e-6).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!((c[1].integer, c[1].multiplicity), (1, 2));
        assert!(matches!(
            cluster_eigenvalues(&[(0.5, 0.0)], 1e-6),
            Err(Error::OffInteger { .. })
        ));
        assert!(matches!(
            cluster_eigenvalues(&[(1.0, 1e-3)], 1e-6),
            Err(Error::ResidualExceeded { .. })
        ));
    }

    #[test]
    fn config_validation() {
        assert!(matches!(
            full_spectrum(&SpectrumConfig::new(1, 0, 17)),
            Err(Error::DegreeCapExceeded { degree: 17, limit: 16 })
        ));
        let mut cfg = SpectrumConfig::new(1, 0, 17);
        cfg.allow_large_degree = true;
        assert_eq!(full_spectrum(&cfg).unwrap().multiplicity(0), 18);
        assert!(full_spectrum(&SpectrumConfig::new(1, 2, 4)).is_err());
        assert!(full_spectrum(&SpectrumConfig::new(1, 0, 0)).is_err());
        assert!(full_spectrum(&SpectrumConfig::new(1, 0, 4).with_tolerance(0.0)).is_err());
    }

    #[test]
    fn merge_is_order_independent() {
        let cfg = SpectrumConfig::new(2, 1, 3);
        let mut parts: Vec<ClassSpectrum> = charge_classes(2, 3)
            .iter()
            .map(|c| solve_charge_class(&cfg, c).unwrap())
            .collect();
        let forward = merge_spectra(&cfg, parts.clone()).unwrap();
        parts.reverse();
        assert_eq!(forward, merge_spectra(&cfg, parts).unwrap());
    }
}
