//! Exact inner products against the weight `e^{-|z|^2}`.
//!
//! For monomials the integral factorizes over the variables:
//! `∫ z^a zb^b conj(z^c zb^d) e^{-|z|^2} dλ = π (a+d)!` when `a - b = c - d`,
//! and zero otherwise, so every inner product of polynomials lands in
//! `Q(i)·π^n`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::forms::QForm;
use crate::polyalg::{factorial, Bidegree, GaussianRational, Poly};

/// `coeff · π^pi_power`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactScalar {
    coeff: GaussianRational,
    pi_power: u32,
}

impl ExactScalar {
    pub fn new(coeff: GaussianRational, pi_power: u32) -> Self {
        Self { coeff, pi_power }
    }

    pub fn zero(pi_power: u32) -> Self {
        Self::new(GaussianRational::zero(), pi_power)
    }

    pub fn coeff(&self) -> &GaussianRational {
        &self.coeff
    }

    pub fn pi_power(&self) -> u32 {
        self.pi_power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeff.conj(), self.pi_power)
    }

    /// Real and non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeff.is_real() && !self.coeff.re().is_negative()
    }

    /// Real and strictly positive.
    pub fn is_positive(&self) -> bool {
        self.coeff.is_real() && self.coeff.re().is_positive()
    }

    /// Floating value of the real part, including the power of π.
    pub fn re_f64(&self) -> f64 {
        self.coeff.re().to_f64().unwrap_or(f64::NAN) * core::f64::consts::PI.powi(self.pi_power as i32)
    }

    /// Floating value of the imaginary part, including the power of π.
    pub fn im_f64(&self) -> f64 {
        self.coeff.im().to_f64().unwrap_or(f64::NAN) * core::f64::consts::PI.powi(self.pi_power as i32)
    }
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        // a zero summand carries no information about the power of π
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        assert_eq!(self.pi_power, rhs.pi_power, "mixed powers of pi");
        ExactScalar::new(&self.coeff + &rhs.coeff, self.pi_power)
    }
}

impl fmt::Display for ExactScalar {
    /// `p/q·pi^n`; complex coefficients are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "0");
        }
        if self.coeff.is_real() {
            write!(f, "{}·pi^{}", self.coeff, self.pi_power)
        } else {
            write!(f, "({})·pi^{}", self.coeff, self.pi_power)
        }
    }
}

fn check_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

/// Coefficient of `π^n` in `<z^a.alpha zb^a.beta, z^b.alpha zb^b.beta>`.
fn monomial_inner_coeff(a: &Bidegree, b: &Bidegree) -> Option<num_bigint::BigInt> {
    let mut acc = num_bigint::BigInt::one();
    for j in 0..a.n() {
        let (aa, ab, ba, bb) = (a.alpha()[j], a.beta()[j], b.alpha()[j], b.beta()[j]);
        if i64::from(aa) - i64::from(ab) != i64::from(ba) - i64::from(bb) {
            return None;
        }
        acc *= factorial(aa + bb);
    }
    Some(acc)
}

/// `<z^a.alpha zb^a.beta, z^b.alpha zb^b.beta>_φ` for `φ = |z|^2`.
pub fn monomial_inner(a: &Bidegree, b: &Bidegree) -> Result<ExactScalar> {
    check_dim(a.n(), b.n())?;
    let n = a.n() as u32;
    Ok(match monomial_inner_coeff(a, b) {
        Some(v) => ExactScalar::new(GaussianRational::from_bigint(v), n),
        None => ExactScalar::zero(n),
    })
}

/// `(p, q)_φ = ∫ p conj(q) e^{-|z|^2}`; linear in `p`, conjugate-linear in `q`.
pub fn poly_inner(p: &Poly, q: &Poly) -> Result<ExactScalar> {
    check_dim(p.n(), q.n())?;
    let mut acc = GaussianRational::zero();
    for (ea, ca) in p.terms() {
        for (eb, cb) in q.terms() {
            if let Some(v) = monomial_inner_coeff(ea, eb) {
                acc = acc + &(ca * &cb.conj()) * &GaussianRational::from_bigint(v);
            }
        }
    }
    Ok(ExactScalar::new(acc, p.n() as u32))
}

fn check_forms(f: &QForm, g: &QForm) -> Result<()> {
    check_dim(f.n(), g.n())?;
    if f.q() != g.q() {
        return Err(Error::DegreeMismatch {
            left: f.q(),
            right: g.q(),
        });
    }
    Ok(())
}

/// Sum over common increasing `J` of `(f_J, g_J)_φ`.
pub fn form_inner(f: &QForm, g: &QForm) -> Result<ExactScalar> {
    check_forms(f, g)?;
    let mut acc = ExactScalar::zero(f.n() as u32);
    for (j, fj) in f.components() {
        let gj = g.component(j);
        if !gj.is_zero() {
            acc = &acc + &poly_inner(fj, &gj)?;
        }
    }
    Ok(acc)
}

/// Gram matrix `G[i][j] = <basis[i], basis[j]>`.
pub fn gram(basis: &[QForm]) -> Result<Vec<Vec<ExactScalar>>> {
    let first = basis.first().ok_or(Error::EmptyBasis)?;
    for (i, f) in basis.iter().enumerate() {
        check_forms(first, f)?;
        if f.is_zero() {
            return Err(Error::ZeroBasisElement(i));
        }
    }
    let m = basis.len();
    let mut g = alloc::vec![alloc::vec![ExactScalar::zero(first.n() as u32); m]; m];
    for i in 0..m {
        for j in i..m {
            let v = form_inner(&basis[i], &basis[j])?;
            g[j][i] = v.conj();
            g[i][j] = v;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::MultiIndex;
    use alloc::string::ToString;
    use alloc::vec;
    use crate::testutil::{arb_form, arb_poly};
    use proptest::prelude::*;

    fn zz(a: u32, b: u32) -> Poly {
        Poly::monomial(Bidegree::scalar(a, b), GaussianRational::one())
    }

    fn pi(k: i64) -> ExactScalar {
        ExactScalar::new(GaussianRational::from_int(k), 1)
    }

    /// Adaptive Simpson on [lo, hi].
    fn simpson(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
        fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
            let (flm, frm) = (f(lm), f(rm));
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
                return left + right + (left + right - whole) / 15.0;
            }
            step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
        let (fa, fb, fm) = (f(lo), f(hi), f(0.5 * (lo + hi)));
        let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        step(f, lo, hi, fa, fm, fb, whole, tol, 40)
    }

    /// Numeric `<z^a zb^b, z^c zb^d>` on C with the Gaussian weight, in polar
    /// coordinates: trapezoid in the angle (exact for trigonometric
    /// polynomials of low order), adaptive Simpson in the radius.
    fn quadrature(a: u32, b: u32, c: u32, d: u32) -> (f64, f64) {
        let power = (a + b + c + d) as i32;
        let freq = a as i32 - b as i32 - c as i32 + d as i32;
        let radial = simpson(&|r: f64| r.powi(power + 1) * (-r * r).exp(), 0.0, 12.0, 1e-13);
        let m = 64;
        let (mut re, mut im) = (0.0, 0.0);
        for k in 0..m {
            let t = 2.0 * core::f64::consts::PI * k as f64 / m as f64;
            re += (freq as f64 * t).cos();
            im += (freq as f64 * t).sin();
        }
        let w = 2.0 * core::f64::consts::PI / m as f64;
        (radial * re * w, radial * im * w)
    }

    #[test]
    fn monomial_examples() {
        let z = Bidegree::scalar(1, 0);
        let zb = Bidegree::scalar(0, 1);
        assert_eq!(monomial_inner(&z, &z).unwrap(), pi(1));
        assert_eq!(monomial_inner(&Bidegree::scalar(1, 1), &Bidegree::one(1)).unwrap(), pi(1));
        assert!(monomial_inner(&z, &zb).unwrap().is_zero());
        assert!(monomial_inner(&z, &Bidegree::one(2)).is_err());
        // 2π ∫ r^3 e^{-r^2} dr = π Γ(2) = π
        let (re, im) = quadrature(1, 0, 1, 0);
        assert!((re - core::f64::consts::PI).abs() < 1e-10 && im.abs() < 1e-12);
    }

    #[test]
    fn charge_selection_matches_quadrature() {
        for a in 0..=6u32 {
            for b in 0..=6 - a {
                for c in 0..=6u32 {
                    for d in 0..=6 - c {
                        let exact = monomial_inner(&Bidegree::scalar(a, b), &Bidegree::scalar(c, d)).unwrap();
                        let (re, im) = quadrature(a, b, c, d);
                        let want = exact.re_f64();
                        assert!(im.abs() < 1e-8 * (1.0 + want.abs()));
                        if exact.is_zero() {
                            assert!(re.abs() < 1e-8, "({a},{b},{c},{d}) got {re}");
                        } else {
                            assert!((re - want).abs() <= 1e-8 * want.abs(), "({a},{b},{c},{d}) {re} vs {want}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn poly_examples() {
        let u01 = &zz(1, 1) - &Poly::one(1);
        assert!(poly_inner(&u01, &Poly::one(1)).unwrap().is_zero());
        assert_eq!(poly_inner(&zz(0, 1), &zz(0, 1)).unwrap(), pi(1));
        assert!(poly_inner(&Poly::zero(1), &zz(3, 1)).unwrap().is_zero());
        // sesquilinear: <i p, q> = i <p, q>, <p, i q> = -i <p, q>
        let ip = zz(1, 1).scale(&GaussianRational::i());
        assert_eq!(poly_inner(&ip, &zz(1, 1)).unwrap().coeff(), &(GaussianRational::i() * GaussianRational::from_int(2)));
        assert_eq!(poly_inner(&zz(1, 1), &ip).unwrap().coeff(), &(GaussianRational::i() * GaussianRational::from_int(-2)));
    }

    #[test]
    fn form_examples() {
        let zb1 = Poly::zbar(2, 0).unwrap();
        let f = QForm::single(MultiIndex::single(0), zb1).unwrap();
        assert_eq!(form_inner(&f, &f).unwrap(), ExactScalar::new(GaussianRational::one(), 2));
        let e1 = QForm::single(MultiIndex::single(0), Poly::one(2)).unwrap();
        let e2 = QForm::single(MultiIndex::single(1), Poly::one(2)).unwrap();
        assert!(form_inner(&e1, &e2).unwrap().is_zero());
        let h = QForm::from_poly(Poly::one(2));
        assert_eq!(form_inner(&e1, &h).unwrap_err(), Error::DegreeMismatch { left: 1, right: 0 });
    }

    #[test]
    fn gram_examples() {
        let basis: Vec<QForm> = [Poly::one(1), zz(1, 0), zz(0, 1)].into_iter().map(QForm::from_poly).collect();
        let g = gram(&basis).unwrap();
        for (i, row) in g.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(v, &if i == j { pi(1) } else { ExactScalar::zero(1) });
            }
        }
        let g = gram(&[QForm::from_poly(zz(1, 1)), QForm::from_poly(Poly::one(1))]).unwrap();
        assert_eq!(g, vec![vec![pi(2), pi(1)], vec![pi(1), pi(1)]]);
        assert_eq!(gram(&[QForm::from_poly(Poly::zero(1))]).unwrap_err(), Error::ZeroBasisElement(0));
        assert_eq!(gram(&[]).unwrap_err(), Error::EmptyBasis);
        let mixed = [QForm::from_poly(Poly::one(1)), QForm::single(MultiIndex::single(0), Poly::one(1)).unwrap()];
        assert!(gram(&mixed).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(pi(2).to_string(), "2·pi^1");
        let c = ExactScalar::new(GaussianRational::ratio(1, 2) + GaussianRational::i(), 2);
        assert_eq!(c.to_string(), "(1/2+1*i)·pi^2");
        assert_eq!(ExactScalar::zero(3).to_string(), "0");
    }

    proptest! {
        #[test]
        fn hermitian_symmetry(p in arb_poly(2, 3, 5), q in arb_poly(2, 3, 5)) {
            prop_assert_eq!(poly_inner(&p, &q).unwrap(), poly_inner(&q, &p).unwrap().conj());
        }

        #[test]
        fn positive_definite(f in arb_form(2, 1)) {
            let v = form_inner(&f, &f).unwrap();
            prop_assert!(v.is_nonnegative());
            prop_assert_eq!(v.is_zero(), f.is_zero());
        }
    }
}
