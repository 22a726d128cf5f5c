//! `(0,q)`-forms `sum'_J u_J dzb_J` over increasing multi-indices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::polyalg::{GaussianRational, Poly};

/// Strictly increasing list of zero-based variable indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct MultiIndex(Vec<usize>);

/// A basis form up to sign: `sign * dzb_J`.
pub type Signed = (i8, MultiIndex);

impl MultiIndex {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(alloc::format!(
                "multi-index {indices:?} is not strictly increasing"
            )));
        }
        Ok(Self(indices))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(k: usize) -> Self {
        Self(alloc::vec![k])
    }

    /// Sorts arbitrary indices into increasing order, returning the permutation
    /// sign, or `None` when an index repeats (the wedge product vanishes).
    pub fn normalize(mut indices: Vec<usize>) -> Option<Signed> {
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..indices.len() {
            let mut j = i;
            while j > 0 && indices[j - 1] > indices[j] {
                indices.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, Self(indices)))
    }

    /// All increasing multi-indices of length `q` in `0..n`, lexicographically.
    pub fn all(n: usize, q: usize) -> Vec<MultiIndex> {
        fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if left == 0 {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for k in start..n {
                if n - k < left {
                    break;
                }
                cur.push(k);
                rec(k + 1, n, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if q <= n {
            rec(0, n, q, &mut Vec::with_capacity(q), &mut out);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.binary_search(&k).is_ok()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", k + 1)?;
        }
        write!(f, ")")
    }
}

/// `dzb_k ∧ dzb_J`: zero if `k ∈ J`, else `J ∪ {k}` with sign
/// `(-1)^{#{j in J : j < k}}`.
pub fn wedge_basis(k: usize, j: &MultiIndex) -> Option<Signed> {
    match j.0.binary_search(&k) {
        Ok(_) => None,
        Err(pos) => {
            let mut out = j.0.clone();
            out.insert(pos, k);
            Some((if pos % 2 == 0 { 1 } else { -1 }, MultiIndex(out)))
        }
    }
}

/// `dzb_k ⌟ dzb_J`: zero if `k ∉ J`, else `J \ {k}` with sign `(-1)^{position of k}`.
///
/// This is the sign forced by `<a, dzb_k ⌟ dzb_J> = <dzb_k ∧ a, dzb_J>`.
pub fn contract_basis(k: usize, j: &MultiIndex) -> Option<Signed> {
    let pos = j.0.binary_search(&k).ok()?;
    let mut out = j.0.clone();
    out.remove(pos);
    Some((if pos % 2 == 0 { 1 } else { -1 }, MultiIndex(out)))
}

/// A `(0,q)`-form in `n` variables with polynomial coefficients.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QForm {
    n: usize,
    q: usize,
    coeffs: BTreeMap<MultiIndex, Poly>,
}

impl QForm {
    pub fn zero(n: usize, q: usize) -> Result<Self> {
        if q > n {
            return Err(Error::DegreeOutOfRange { q, n });
        }
        Ok(Self {
            n,
            q,
            coeffs: BTreeMap::new(),
        })
    }

    /// A function viewed as a `(0,0)`-form.
    pub fn from_poly(p: Poly) -> Self {
        let mut f = Self {
            n: p.n(),
            q: 0,
            coeffs: BTreeMap::new(),
        };
        f.accumulate(MultiIndex::empty(), 1, &p);
        f
    }

    /// `p dzb_J`.
    pub fn single(j: MultiIndex, p: Poly) -> Result<Self> {
        if let Some(&last) = j.0.last() {
            if last >= p.n() {
                return Err(Error::IndexOutOfRange {
                    index: last,
                    n: p.n(),
                });
            }
        }
        let mut f = Self::zero(p.n(), j.len())?;
        f.accumulate(j, 1, &p);
        Ok(f)
    }

    /// Builds a form from components given over arbitrary (possibly unordered)
    /// index lists; each is normalized with its permutation sign, and terms with
    /// a repeated index vanish.
    pub fn from_components<I>(n: usize, q: usize, comps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Poly)>,
    {
        let mut f = Self::zero(n, q)?;
        for (idx, p) in comps {
            if idx.len() != q {
                return Err(Error::DegreeMismatch {
                    left: q,
                    right: idx.len(),
                });
            }
            if p.n() != n {
                return Err(Error::DimensionMismatch { left: n, right: p.n() });
            }
            if let Some(&k) = idx.iter().find(|&&k| k >= n) {
                return Err(Error::IndexOutOfRange { index: k, n });
            }
            if let Some((sign, j)) = MultiIndex::normalize(idx) {
                f.accumulate(j, sign, &p);
            }
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn component(&self, j: &MultiIndex) -> Poly {
        self.coeffs.get(j).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn components(&self) -> impl Iterator<Item = (&MultiIndex, &Poly)> {
        self.coeffs.iter()
    }

    /// Adds `sign * p` to the `J` component.
    pub(crate) fn accumulate(&mut self, j: MultiIndex, sign: i8, p: &Poly) {
        debug_assert_eq!(j.len(), self.q);
        if p.is_zero() {
            return;
        }
        let term = if sign < 0 { -p } else { p.clone() };
        let sum = match self.coeffs.remove(&j) {
            Some(old) => &old + &term,
            None => term,
        };
        if !sum.is_zero() {
            self.coeffs.insert(j, sum);
        }
    }

    fn check_compatible(&self, other: &QForm) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.q != other.q {
            return Err(Error::DegreeMismatch {
                left: self.q,
                right: other.q,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &QForm) -> Result<QForm> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (j, p) in &other.coeffs {
            out.accumulate(j.clone(), 1, p);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &QForm) -> Result<QForm> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (j, p) in &other.coeffs {
            out.accumulate(j.clone(), -1, p);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> QForm {
        self.map_components(|p| p.scale(c))
    }

    pub fn scale_int(&self, c: i64) -> QForm {
        self.scale(&GaussianRational::from_int(c))
    }

    /// Applies `f` to every coefficient, keeping the degree.
    pub fn map_components(&self, f: impl Fn(&Poly) -> Poly) -> QForm {
        let mut out = QForm {
            n: self.n,
            q: self.q,
            coeffs: BTreeMap::new(),
        };
        for (j, p) in &self.coeffs {
            out.accumulate(j.clone(), 1, &f(p));
        }
        out
    }

    /// The largest total degree over all coefficients.
    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.values().filter_map(Poly::total_degree).max()
    }

    /// The scalar of a `(0,0)`-form.
    pub fn as_function(&self) -> Result<Poly> {
        if self.q != 0 {
            return Err(Error::DegreeMismatch { left: 0, right: self.q });
        }
        Ok(self.component(&MultiIndex::empty()))
    }
}

impl fmt::Display for QForm {
    /// `(J): coefficient` entries joined by ` ; `, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (j, p)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{j}: {p}")?;
        }
        Ok(())
    }
}
