//! Exact polynomials in `z_1..z_n, zb_1..zb_n` over the Gaussian rationals.
//!
//! The variables `z_j` and `zb_j` (the conjugate) are treated as independent
//! commuting indeterminates, so the Wirtinger derivatives `d/dz_j` and
//! `d/dzb_j` are ordinary formal partial derivatives.

use alloc::collections::BTreeMap;
use alloc::format;

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact complex scalar `re + im*i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Self::real(BigRational::from_integer(v))
    }

    /// `num/den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn i() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|self|^2`, always a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.norm_sqr();
        Some(Self {
            re: &self.re / &d,
            im: -(&self.im / &d),
        })
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(BigRational::one())
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(v: BigRational) -> Self {
        Self::real(v)
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl fmt::Display for GaussianRational {
    /// Renders as `p/q+r/s*i`; zero parts are omitted, `1` denominators too.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}*i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s).map_err(|_| Error::Parse(format!("bad rational `{s}`")))
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(body) = s.strip_suffix("*i") else {
            return Ok(Self::real(parse_rational(s)?));
        };
        // the only sign that is not leading separates the real and imaginary parts
        match body.rfind(['+', '-']).filter(|&pos| pos > 0) {
            Some(pos) => {
                let re = parse_rational(&body[..pos])?;
                let im_text = body[pos..].strip_prefix('+').unwrap_or(&body[pos..]);
                Ok(Self::new(re, parse_rational(im_text)?))
            }
            None => Ok(Self::new(BigRational::zero(), parse_rational(body)?)),
        }
    }
}

/// Exponent pair `(alpha, beta)` of the monomial `z^alpha zb^beta`.
///
/// Ordered graded-lexicographically: total degree first, then `alpha`, then `beta`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Bidegree {
    alpha: Vec<u32>,
    beta: Vec<u32>,
}

impl Bidegree {
    pub fn new(alpha: Vec<u32>, beta: Vec<u32>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::DimensionMismatch {
                left: alpha.len(),
                right: beta.len(),
            });
        }
        if alpha.is_empty() {
            return Err(Error::InvalidParameter("dimension n must be at least 1".into()));
        }
        Ok(Self { alpha, beta })
    }

    /// The constant monomial in `n` variables.
    pub fn one(n: usize) -> Self {
        Self {
            alpha: vec![0; n],
            beta: vec![0; n],
        }
    }

    /// Single-variable shorthand for `z^a zb^b`.
    pub fn scalar(a: u32, b: u32) -> Self {
        Self {
            alpha: vec![a],
            beta: vec![b],
        }
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn beta(&self) -> &[u32] {
        &self.beta
    }

    pub fn degree(&self) -> u32 {
        self.alpha.iter().chain(&self.beta).sum()
    }

    /// Componentwise `alpha - beta`.
    pub fn charge(&self) -> Vec<i64> {
        self.alpha
            .iter()
            .zip(&self.beta)
            .map(|(&a, &b)| i64::from(a) - i64::from(b))
            .collect()
    }

    /// Exponents of the complex conjugate monomial.
    pub fn conj(&self) -> Self {
        Self {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// Every monomial in `n` variables of total degree at most `max_degree`,
    /// in ascending graded-lex order.
    pub fn all_up_to(n: usize, max_degree: u32) -> Vec<Bidegree> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; 2 * n];
        loop {
            out.push(Bidegree {
                alpha: exps[..n].to_vec(),
                beta: exps[n..].to_vec(),
            });
            // odometer over 2n exponents bounded by the remaining degree
            let mut i = 0;
            loop {
                if i == 2 * n {
                    out.sort();
                    return out;
                }
                exps[i] += 1;
                if exps.iter().sum::<u32>() <= max_degree {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    fn times(&self, other: &Self) -> Self {
        Self {
            alpha: self.alpha.iter().zip(&other.alpha).map(|(a, b)| a + b).collect(),
            beta: self.beta.iter().zip(&other.beta).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Ord for Bidegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for Bidegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for j in 0..self.n() {
            for (name, e) in [("z", self.alpha[j]), ("zb", self.beta[j])] {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{name}{}", j + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Polynomial in `z, zb` with Gaussian rational coefficients.
///
/// Zero coefficients are never stored; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Bidegree, GaussianRational>,
}

fn check_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self::monomial(Bidegree::one(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussianRational::one())
    }

    pub fn monomial(exps: Bidegree, c: GaussianRational) -> Self {
        let mut p = Self::zero(exps.n());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The coordinate `z_j` (zero-based `j`).
    pub fn z(n: usize, j: usize) -> Result<Self> {
        check_index(j, n)?;
        let mut e = Bidegree::one(n);
        e.alpha[j] = 1;
        Ok(Self::monomial(e, GaussianRational::one()))
    }

    /// The conjugate coordinate `zb_j` (zero-based `j`).
    pub fn zbar(n: usize, j: usize) -> Result<Self> {
        check_index(j, n)?;
        let mut e = Bidegree::one(n);
        e.beta[j] = 1;
        Ok(Self::monomial(e, GaussianRational::one()))
    }

    /// Sums the given terms; repeated exponents accumulate.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Bidegree, GaussianRational)>,
    {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            check_dim(n, e.n())?;
            p.accumulate(e, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Bidegree, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Bidegree) -> GaussianRational {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Highest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Bidegree, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(e, _)| e.degree())
    }

    fn accumulate(&mut self, e: Bidegree, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        check_dim(self.n, other.n)?;
        let mut out = Poly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.accumulate(e1.times(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Poly {
        self.scale(&GaussianRational::from_int(c))
    }

    fn neg_ref(&self) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), -v)).collect(),
        }
    }

    /// Complex conjugate: swaps `z` and `zb` exponents and conjugates coefficients.
    pub fn conj(&self) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.conj(), v.conj())).collect(),
        }
    }

    /// Formal `d/dz_j`.
    pub fn d_z(&self, j: usize) -> Result<Poly> {
        check_index(j, self.n)?;
        Ok(self.differentiate(|e| &mut e.alpha[j]))
    }

    /// Formal `d/dzb_j`.
    pub fn d_zbar(&self, j: usize) -> Result<Poly> {
        check_index(j, self.n)?;
        Ok(self.differentiate(|e| &mut e.beta[j]))
    }

    fn differentiate(&self, exponent: impl Fn(&mut Bidegree) -> &mut u32) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            let slot = exponent(&mut e);
            if *slot == 0 {
                continue;
            }
            let k = i64::from(*slot);
            *slot -= 1;
            out.accumulate(e, c * &GaussianRational::from_int(k));
        }
        out
    }

    /// `sum_j d^2 p / dz_j dzb_j`, i.e. a quarter of the Laplacian.
    pub fn laplace_quarter(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            for j in 0..self.n {
                let (a, b) = (e.alpha[j], e.beta[j]);
                if a == 0 || b == 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2.alpha[j] -= 1;
                e2.beta[j] -= 1;
                out.accumulate(e2, c * &GaussianRational::from_int(i64::from(a * b)));
            }
        }
        out
    }

    /// Multiplies by the monomial `z^alpha zb^beta`.
    pub fn mul_monomial(&self, e: &Bidegree) -> Result<Poly> {
        check_dim(self.n, e.n())?;
        Ok(Poly {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.times(e), v.clone())).collect(),
        })
    }

    /// Evaluates at `point`, with `zb_j` taken as the conjugate of `point[j]`.
    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        check_dim(self.n, point.len())?;
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            let mut term = c.to_complex64();
            for (j, w) in point.iter().enumerate() {
                term *= w.powu(e.alpha[j]) * w.conj().powu(e.beta[j]);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Places a one-variable polynomial in variable `j` of an `n`-variable ring.
    pub fn embed(&self, j: usize, n: usize) -> Result<Poly> {
        check_dim(self.n, 1)?;
        check_index(j, n)?;
        let mut out = Poly::zero(n);
        for (e, c) in &self.terms {
            let mut e2 = Bidegree::one(n);
            e2.alpha[j] = e.alpha[0];
            e2.beta[j] = e.beta[0];
            out.terms.insert(e2, c.clone());
        }
        Ok(out)
    }

    /// Drops every term for which `keep` is false.
    pub fn filter_terms(&self, keep: impl Fn(&Bidegree) -> bool) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

pub(crate) fn check_index(j: usize, n: usize) -> Result<()> {
    if j < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: j, n })
    }
}

// Operator sugar for internal use where dimensions are known to agree.
impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial dimensions agree")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial dimensions agree")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial dimensions agree")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl fmt::Display for Poly {
    /// Terms from highest to lowest in graded-lex order, joined by ` + `.
    /// A coefficient other than `1` is written in parentheses before the monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let is_const = e.degree() == 0;
            if is_const {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{e}")?;
            } else {
                write!(f, "({c}) {e}")?;
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Parses the text rendering produced by `Display`, in `n` variables.
    pub fn parse(n: usize, s: &str) -> Result<Poly> {
        let s = s.trim();
        if s == "0" {
            return Ok(Poly::zero(n));
        }
        let mut out = Poly::zero(n);
        for term in s.split(" + ") {
            let mut coeff = GaussianRational::one();
            let mut exps = Bidegree::one(n);
            for (i, tok) in term.split_whitespace().enumerate() {
                if let Some(inner) = tok.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
                    if i != 0 {
                        return Err(Error::Parse(format!("coefficient must lead the term `{term}`")));
                    }
                    coeff = inner.parse()?;
                    continue;
                }
                if tok == "1" {
                    continue;
                }
                let (var, exp) = match tok.split_once('^') {
                    Some((v, e)) => (
                        v,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?,
                    ),
                    None => (tok, 1),
                };
                let (is_bar, idx) = match var.strip_prefix("zb") {
                    Some(rest) => (true, rest),
                    None => (
                        false,
                        var.strip_prefix('z')
                            .ok_or_else(|| Error::Parse(format!("bad variable `{var}`")))?,
                    ),
                };
                let j = idx
                    .parse::<usize>()
                    .ok()
                    .filter(|&j| j >= 1)
                    .ok_or_else(|| Error::Parse(format!("bad variable index `{var}`")))?
                    - 1;
                check_index(j, n)?;
                if is_bar {
                    exps.beta[j] += exp;
                } else {
                    exps.alpha[j] += exp;
                }
            }
            out.accumulate(exps, coeff);
        }
        Ok(out)
    }
}
