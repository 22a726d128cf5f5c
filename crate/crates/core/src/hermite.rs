//! Real coordinates `z = x + iy` and the Hermite product basis.
//!
//! [`RealPoly`] reuses [`Poly`] storage with the `alpha` slot holding
//! `x`-exponents and the `beta` slot holding `y`-exponents.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyalg::{factorial, Bidegree, GaussianRational, Poly};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RealPoly(Poly);

impl RealPoly {
    /// Interprets `p`'s `z_j` exponents as `x_j` and `zb_j` exponents as `y_j`.
    pub fn from_xy(p: Poly) -> Self {
        RealPoly(p)
    }

    pub fn as_xy(&self) -> &Poly {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.0.total_degree()
    }

    pub fn is_real(&self) -> bool {
        self.0.terms().all(|(_, c)| c.is_real())
    }
}

impl fmt::Display for RealPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.to_string().replace("zb", "y").replace('z', "x");
        f.write_str(&s)
    }
}

/// Replaces `alpha`-slot variable `j` by `a[j]` and `beta`-slot variable `j` by `b[j]`.
fn substitute(p: &Poly, a: &[Poly], b: &[Poly]) -> Poly {
    let n = p.n();
    let mut cache: BTreeMap<(bool, usize, u32), Poly> = BTreeMap::new();
    let mut power = |beta: bool, j: usize, e: u32| -> Poly {
        cache
            .entry((beta, j, e))
            .or_insert_with(|| {
                let base = if beta { &b[j] } else { &a[j] };
                (0..e).fold(Poly::one(n), |acc, _| &acc * base)
            })
            .clone()
    };
    let mut out = Poly::zero(n);
    for (e, c) in p.terms() {
        let mut term = Poly::constant(n, c.clone());
        for j in 0..n {
            term = &term * &power(false, j, e.alpha()[j]);
            term = &term * &power(true, j, e.beta()[j]);
        }
        out = &out + &term;
    }
    out
}

/// `z_j = x_j + i y_j`, `zb_j = x_j - i y_j`.
pub fn to_real(p: &Poly) -> RealPoly {
    let n = p.n();
    let x: Vec<Poly> = (0..n).map(|j| Poly::z(n, j).expect("j < n")).collect();
    let iy: Vec<Poly> = (0..n)
        .map(|j| Poly::zbar(n, j).expect("j < n").scale(&GaussianRational::i()))
        .collect();
    let zs: Vec<Poly> = x.iter().zip(&iy).map(|(x, iy)| x + iy).collect();
    let zbs: Vec<Poly> = x.iter().zip(&iy).map(|(x, iy)| x - iy).collect();
    RealPoly(substitute(p, &zs, &zbs))
}

/// `x_j = (z_j + zb_j)/2`, `y_j = i(zb_j - z_j)/2`.
pub fn to_complex(r: &RealPoly) -> Poly {
    let n = r.n();
    let half = GaussianRational::ratio(1, 2);
    let half_i = &half * &GaussianRational::i();
    let xs: Vec<Poly> = (0..n)
        .map(|j| (&Poly::z(n, j).expect("j < n") + &Poly::zbar(n, j).expect("j < n")).scale(&half))
        .collect();
    let ys: Vec<Poly> = (0..n)
        .map(|j| (&Poly::zbar(n, j).expect("j < n") - &Poly::z(n, j).expect("j < n")).scale(&half_i))
        .collect();
    substitute(&r.0, &xs, &ys)
}

/// Coefficients of the physicists' Hermite polynomial `H_k`, lowest power first.
pub fn hermite_coefficients(k: u32) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = alloc::vec![BigInt::one()];
    if k == 0 {
        return prev;
    }
    let mut cur: Vec<BigInt> = alloc::vec![BigInt::zero(), BigInt::from(2)];
    for j in 1..k {
        // H_{j+1} = 2x H_j - 2j H_{j-1}
        let mut next = alloc::vec![BigInt::zero(); cur.len() + 1];
        for (p, c) in cur.iter().enumerate() {
            next[p + 1] += c * 2;
        }
        for (p, c) in prev.iter().enumerate() {
            next[p] -= c * BigInt::from(2 * j);
        }
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// `H_k(x)` as a one-variable [`RealPoly`].
pub fn hermite_poly(k: u32) -> RealPoly {
    hermite_product(&[k], &[0]).expect("one variable")
}

/// `Π_j H_{i_j}(x_j) H_{k_j}(y_j)`.
pub fn hermite_product(i: &[u32], k: &[u32]) -> Result<RealPoly> {
    if i.len() != k.len() {
        return Err(Error::DimensionMismatch {
            left: i.len(),
            right: k.len(),
        });
    }
    let n = i.len();
    let mut out = Poly::one(n);
    for j in 0..n {
        for (deg, beta) in [(i[j], false), (k[j], true)] {
            let terms = hermite_coefficients(deg).into_iter().enumerate().map(|(p, c)| {
                let mut a = alloc::vec![0; n];
                let mut b = alloc::vec![0; n];
                if beta {
                    b[j] = p as u32;
                } else {
                    a[j] = p as u32;
                }
                (Bidegree::new(a, b).expect("same length"), GaussianRational::from_bigint(c))
            });
            out = &out * &Poly::from_terms(n, terms)?;
        }
    }
    Ok(RealPoly(out))
}

/// A Gaussian rational times `√π^power`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SqrtPiScalar {
    pub coeff: GaussianRational,
    pub sqrt_pi_power: u32,
}

impl fmt::Display for SqrtPiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·sqrt(pi)^{}", self.coeff, self.sqrt_pi_power)
    }
}

/// `∫_R x^m e^{-x²} dx`: zero for odd `m`, `√π (2k)! / (4^k k!)` for `m = 2k`.
pub fn gaussian_moment(m: u32) -> SqrtPiScalar {
    let coeff = if m % 2 == 1 {
        GaussianRational::zero()
    } else {
        let k = m / 2;
        let den = BigInt::from(4u32).pow(k) * factorial(k);
        GaussianRational::real(num_rational::BigRational::new(factorial(m), den))
    };
    SqrtPiScalar {
        coeff,
        sqrt_pi_power: 1,
    }
}

/// `∫_{R^{2n}} p conj(q) e^{-|x|²-|y|²}`, carrying `√π^{2n}`.
pub fn real_inner(p: &RealPoly, q: &RealPoly) -> Result<SqrtPiScalar> {
    if p.n() != q.n() {
        return Err(Error::DimensionMismatch {
            left: p.n(),
            right: q.n(),
        });
    }
    let n = p.n();
    let mut acc = GaussianRational::zero();
    for (ea, ca) in p.0.terms() {
        for (eb, cb) in q.0.terms() {
            let mut w = ca * &cb.conj();
            for j in 0..n {
                for m in [ea.alpha()[j] + eb.alpha()[j], ea.beta()[j] + eb.beta()[j]] {
                    w = &w * &gaussian_moment(m).coeff;
                }
            }
            acc = acc + w;
        }
    }
    Ok(SqrtPiScalar {
        coeff: acc,
        sqrt_pi_power: 2 * n as u32,
    })
}

/// Coefficients over Hermite products, keyed by `(x-indices, y-indices)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HermiteExpansion {
    n: usize,
    terms: BTreeMap<Bidegree, GaussianRational>,
}

impl HermiteExpansion {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Bidegree, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: &[u32], k: &[u32]) -> GaussianRational {
        Bidegree::new(i.to_vec(), k.to_vec())
            .ok()
            .and_then(|e| self.terms.get(&e).cloned())
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Largest total Hermite degree used.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Bidegree::degree).max()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    pub fn reconstruct_real(&self) -> RealPoly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            let h = hermite_product(e.alpha(), e.beta()).expect("matching lengths");
            out = &out + &h.0.scale(c);
        }
        RealPoly(out)
    }

    pub fn reconstruct(&self) -> Poly {
        to_complex(&self.reconstruct_real())
    }
}

/// Expands `p` over products `H_i(x) H_k(y)` by peeling off leading terms;
/// `H_i(x)H_k(y)` leads with `2^{|i|+|k|} x^i y^k`.
pub fn hermite_expand(p: &Poly) -> HermiteExpansion {
    let n = p.n();
    let mut rest = to_real(p).0;
    let mut terms = BTreeMap::new();
    while let Some((e, c)) = rest.leading_term() {
        let e = e.clone();
        let scale = BigInt::from(2u32).pow(e.degree());
        let c = c * &GaussianRational::real(num_rational::BigRational::new(BigInt::one(), scale));
        let h = hermite_product(e.alpha(), e.beta()).expect("matching lengths");
        rest = &rest - &h.0.scale(&c);
        terms.insert(e, c);
    }
    HermiteExpansion { n, terms }
}
