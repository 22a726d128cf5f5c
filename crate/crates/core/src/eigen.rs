//! Closed-form eigenfunctions of `□_{φ,q}` and expansion of monomials in them.
//!
//! In one variable the eigenfunction with leading monomial `z^a zb^b` has
//! eigenvalue `b`:
//!
//! * `b = 0`: the holomorphic monomial `z^a`,
//! * `a = 0`: the antiholomorphic monomial `zb^b`,
//! * `b >= a >= 1`: `u_{b-a, a}`,
//! * `a > b >= 1`: `v_{b, a-b}`.
//!
//! All lower terms share the charge `a - b` and have strictly smaller degree,
//! which makes expansion a triangular back-substitution.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{MultiIndex, QForm};
use crate::operators::{box_coord, box_scalar_coord};
use crate::polyalg::{factorial, Bidegree, GaussianRational, Poly};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum EigenKind {
    /// `u_{k,m}`; `m = 0` is the antiholomorphic monomial `zb^k`.
    U,
    V,
    Holomorphic,
    Tensor,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EigenFunction {
    /// Eigenvalue of the scalar operator `-¼△ + Σ zb_j ∂/∂zb_j`.
    pub eigenvalue: u32,
    pub kind: EigenKind,
    /// `(k, m)` per factor; `(a, 0)` for a holomorphic `z^a`.
    pub params: Vec<(u32, u32)>,
    pub poly: Poly,
    /// Component `J` when embedded in a `(0,q)`-form, `q = |J|`.
    pub component: Option<MultiIndex>,
}

impl EigenFunction {
    /// Eigenvalue of `□_{φ,q}` on the embedded form: the scalar eigenvalue plus `q`.
    pub fn form_eigenvalue(&self) -> u32 {
        self.eigenvalue + self.component.as_ref().map_or(0, |j| j.len() as u32)
    }

    pub fn as_form(&self) -> Result<QForm> {
        match &self.component {
            Some(j) => QForm::single(j.clone(), self.poly.clone()),
            None => Ok(QForm::from_poly(self.poly.clone())),
        }
    }

    /// Places this eigenfunction in component `J`.
    pub fn in_component(mut self, j: MultiIndex) -> Result<Self> {
        if let Some(&last) = j.indices().last() {
            crate::polyalg::check_index(last, self.poly.n())?;
        }
        self.component = Some(j);
        Ok(self)
    }
}

fn zz(a: u32, b: u32) -> Bidegree {
    Bidegree::scalar(a, b)
}

/// `(-1)^j (k+m)! m! / (j! (k+m-j)! (m-j)!)`, the `j`-th lower coefficient of `u_{k,m}`.
pub fn u_coefficient(k: u32, m: u32, j: u32) -> GaussianRational {
    signed_ratio(j, factorial(k + m) * factorial(m), factorial(j) * factorial(k + m - j) * factorial(m - j))
}

/// `(-1)^j (k+m)! k! / (j! (k+m-j)! (k-j)!)`, the `j`-th lower coefficient of `v_{k,m}`.
pub fn v_coefficient(k: u32, m: u32, j: u32) -> GaussianRational {
    signed_ratio(j, factorial(k + m) * factorial(k), factorial(j) * factorial(k + m - j) * factorial(k - j))
}

fn signed_ratio(j: u32, num: num_bigint::BigInt, den: num_bigint::BigInt) -> GaussianRational {
    let v = GaussianRational::real(num_rational::BigRational::new(num, den));
    if j.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// `u_{k,m} = zb^{k+m} z^m + Σ_{j=1}^m a_j zb^{k+m-j} z^{m-j}`, eigenvalue `k + m`.
pub fn u_fn(k: u32, m: u32) -> Result<EigenFunction> {
    if m == 0 {
        return Err(Error::InvalidParameter(format!("u_{{k,m}} needs m >= 1, got m = {m}")));
    }
    Ok(u_family(k, m))
}

fn u_family(k: u32, m: u32) -> EigenFunction {
    let terms = (0..=m).map(|j| (zz(m - j, k + m - j), u_coefficient(k, m, j)));
    EigenFunction {
        eigenvalue: k + m,
        kind: EigenKind::U,
        params: alloc::vec![(k, m)],
        poly: Poly::from_terms(1, terms).expect("one variable"),
        component: None,
    }
}

/// `v_{k,m} = zb^k z^{k+m} + Σ_{j=1}^k b_j zb^{k-j} z^{k+m-j}`, eigenvalue `k`.
pub fn v_fn(k: u32, m: u32) -> Result<EigenFunction> {
    if k == 0 {
        return Err(Error::InvalidParameter(format!("v_{{k,m}} needs k >= 1, got k = {k}")));
    }
    let terms = (0..=k).map(|j| (zz(k + m - j, k - j), v_coefficient(k, m, j)));
    Ok(EigenFunction {
        eigenvalue: k,
        kind: EigenKind::V,
        params: alloc::vec![(k, m)],
        poly: Poly::from_terms(1, terms).expect("one variable"),
        component: None,
    })
}

/// `z^a`, in the kernel.
pub fn holomorphic(a: u32) -> EigenFunction {
    EigenFunction {
        eigenvalue: 0,
        kind: EigenKind::Holomorphic,
        params: alloc::vec![(a, 0)],
        poly: Poly::monomial(zz(a, 0), GaussianRational::one()),
        component: None,
    }
}

/// `zb^k`, eigenvalue `k`; the `m = 0` member of the `u` family.
pub fn antiholomorphic(k: u32) -> EigenFunction {
    u_family(k, 0)
}

/// The one-variable eigenfunction whose leading monomial is `z^a zb^b`.
pub fn scalar_basis_element(a: u32, b: u32) -> EigenFunction {
    match (a, b) {
        (a, 0) => holomorphic(a),
        (a, b) if b >= a => u_family(b - a, a),
        (a, b) => v_fn(b, a - b).expect("b >= 1"),
    }
}

/// Product of one-variable eigenfunctions, factor `j` in variable `j`, placed
/// in component `J` of a `(0,q)`-form.
pub fn tensor_fn(factors: &[EigenFunction], j: MultiIndex, q: usize) -> Result<EigenFunction> {
    let n = factors.len();
    if n == 0 {
        return Err(Error::InvalidParameter("tensor needs at least one factor".into()));
    }
    if j.len() != q {
        return Err(Error::DegreeMismatch { left: q, right: j.len() });
    }
    if q > n {
        return Err(Error::DegreeOutOfRange { q, n });
    }
    let mut poly = Poly::one(n);
    let mut params = Vec::with_capacity(n);
    let mut eigenvalue = 0;
    for (var, f) in factors.iter().enumerate() {
        if f.poly.n() != 1 || f.component.is_some() {
            return Err(Error::InvalidParameter(format!(
                "tensor factor {var} must be a one-variable scalar eigenfunction"
            )));
        }
        poly = &poly * &f.poly.embed(var, n)?;
        params.extend_from_slice(&f.params);
        eigenvalue += f.eigenvalue;
    }
    EigenFunction {
        eigenvalue,
        kind: EigenKind::Tensor,
        params,
        poly,
        component: None,
    }
    .in_component(j)
}

/// The eigenfunction (a tensor of one-variable ones when `n > 1`) whose
/// leading monomial is `e`.
pub fn basis_element(e: &Bidegree) -> EigenFunction {
    if e.n() == 1 {
        return scalar_basis_element(e.alpha()[0], e.beta()[0]);
    }
    let factors: Vec<EigenFunction> = (0..e.n())
        .map(|j| scalar_basis_element(e.alpha()[j], e.beta()[j]))
        .collect();
    let mut f = tensor_fn(&factors, MultiIndex::empty(), 0).expect("valid factors");
    f.component = None;
    f
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verification {
    pub holds: bool,
    pub residual: Poly,
}

/// Exact check of `□ f = λ f` through the coordinate formula.
pub fn verify_eigen(f: &EigenFunction) -> Result<Verification> {
    let residual = match &f.component {
        None => &box_scalar_coord(&f.poly) - &f.poly.scale_int(i64::from(f.eigenvalue)),
        Some(j) => {
            let form = f.as_form()?;
            let lam = i64::from(f.form_eigenvalue());
            let diff = box_coord(&form).checked_sub(&form.scale_int(lam))?;
            // the action is diagonal, so nothing may leak into other components
            if diff.components().any(|(k, _)| k != j) {
                return Err(Error::InvalidParameter(format!("residual leaves component {j}")));
            }
            diff.component(j)
        }
    };
    Ok(Verification {
        holds: residual.is_zero(),
        residual,
    })
}

/// Writes `p` as a combination of [`basis_element`]s by peeling off the
/// highest remaining monomial.
pub fn expand_poly(p: &Poly) -> Vec<(EigenFunction, GaussianRational)> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    while let Some((e, c)) = rest.leading_term() {
        let (e, c) = (e.clone(), c.clone());
        let f = basis_element(&e);
        debug_assert!(f.poly.coeff(&e).is_one());
        rest = &rest - &f.poly.scale(&c);
        out.push((f, c));
    }
    out
}

/// Expansion of the monomial `z^alpha zb^beta` in eigenfunctions.
pub fn expand_monomial(e: &Bidegree) -> Vec<(EigenFunction, GaussianRational)> {
    expand_poly(&Poly::monomial(e.clone(), GaussianRational::one()))
}

/// `Σ c_i f_i`.
pub fn reconstruct(n: usize, expansion: &[(EigenFunction, GaussianRational)]) -> Poly {
    expansion
        .iter()
        .fold(Poly::zero(n), |acc, (f, c)| if c.is_zero() { acc } else { &acc + &f.poly.scale(c) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inner::poly_inner;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn mono(a: u32, b: u32) -> Poly {
        Poly::monomial(zz(a, b), GaussianRational::one())
    }

    #[test]
    fn u_examples() {
        let u = u_fn(1, 1).unwrap();
        assert_eq!(u.poly, &mono(1, 2) - &mono(0, 1).scale_int(2));
        assert_eq!(u.eigenvalue, 2);
        let u = u_fn(0, 1).unwrap();
        assert_eq!(u.poly, &mono(1, 1) - &Poly::one(1));
        assert_eq!(u.eigenvalue, 1);
        for k in 0..6 {
            // a_2 = ½ (k+2)(k+1)·2·1
            let a2 = GaussianRational::from_int(i64::from((k + 2) * (k + 1)));
            assert_eq!(u_fn(k, 2).unwrap().poly.coeff(&zz(0, k)), a2);
        }
        assert!(u_fn(3, 0).is_err());
    }

    #[test]
    fn v_examples() {
        let v = v_fn(1, 1).unwrap();
        assert_eq!(v.poly, &mono(2, 1) - &mono(1, 0).scale_int(2));
        assert_eq!(v.eigenvalue, 1);
        assert_eq!(v_fn(1, 0).unwrap().poly, u_fn(0, 1).unwrap().poly);
        let v = v_fn(2, 0).unwrap();
        assert_eq!(v.poly, &(&mono(2, 2) - &mono(1, 1).scale_int(4)) + &Poly::constant(1, GaussianRational::from_int(2)));
        assert_eq!(v.eigenvalue, 2);
        assert!(v_fn(0, 4).is_err());
    }

    #[test]
    fn coefficients_match_recurrence() {
        // comparing coefficients of zb^{k+m-j} z^{m-j} in □u = (k+m)u gives
        // a_j = -(k+m-j+1)(m-j+1) a_{j-1} / j, and symmetrically for b_j
        for k in 0..=8u32 {
            for m in 0..=8u32 {
                let mut a = GaussianRational::one();
                for j in 1..=m {
                    a = a * GaussianRational::ratio(-i64::from((k + m - j + 1) * (m - j + 1)), i64::from(j));
                    assert_eq!(a, u_coefficient(k, m, j), "a_{j} for k={k} m={m}");
                }
                if k >= 1 {
                    let mut b = GaussianRational::one();
                    for j in 1..=k {
                        b = b * GaussianRational::ratio(-i64::from((k - j + 1) * (k + m - j + 1)), i64::from(j));
                        assert_eq!(b, v_coefficient(k, m, j), "b_{j} for k={k} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn families_satisfy_eigen_equation() {
        for k in 0..=12u32 {
            for m in 0..=12 - k {
                if m >= 1 {
                    assert!(verify_eigen(&u_fn(k, m).unwrap()).unwrap().holds, "u_{k},{m}");
                }
                if k >= 1 {
                    assert!(verify_eigen(&v_fn(k, m).unwrap()).unwrap().holds, "v_{k},{m}");
                }
            }
        }
        for a in 0..6 {
            assert!(verify_eigen(&holomorphic(a)).unwrap().holds);
            assert!(verify_eigen(&antiholomorphic(a)).unwrap().holds);
        }
    }

    #[test]
    fn tampering_is_detected() {
        let mut f = u_fn(2, 3).unwrap();
        f.poly = &f.poly + &mono(1, 3);
        let v = verify_eigen(&f).unwrap();
        assert!(!v.holds);
        assert!(!v.residual.is_zero());
    }

    #[test]
    fn tensor_examples() {
        let f = tensor_fn(&[v_fn(1, 0).unwrap(), holomorphic(0)], MultiIndex::single(0), 1).unwrap();
        assert_eq!(f.form_eigenvalue(), 2);
        assert!(verify_eigen(&f).unwrap().holds);
        let f = tensor_fn(&[holomorphic(3), holomorphic(1)], MultiIndex::empty(), 0).unwrap();
        assert_eq!(f.form_eigenvalue(), 0);
        assert!(verify_eigen(&f).unwrap().holds);
        let (k1, m1, k2, m2) = (1, 2, 2, 3);
        for jj in MultiIndex::all(2, 1) {
            let f = tensor_fn(&[u_fn(k1, m1).unwrap(), v_fn(k2, m2).unwrap()], jj, 1).unwrap();
            assert_eq!(f.form_eigenvalue(), (k1 + m1) + k2 + 1);
            assert!(verify_eigen(&f).unwrap().holds);
        }
        assert!(tensor_fn(&[holomorphic(1)], MultiIndex::single(0), 0).is_err());
        assert!(tensor_fn(&[holomorphic(1)], MultiIndex::new(vec![0, 1]).unwrap(), 2).is_err());
    }

    #[test]
    fn u_and_v_coincide_on_the_diagonal() {
        for m in 1..=8 {
            assert_eq!(u_fn(0, m).unwrap().poly, v_fn(m, 0).unwrap().poly);
        }
    }

    #[test]
    fn expansion_examples() {
        let exp = expand_monomial(&zz(1, 1));
        assert_eq!(exp.len(), 2);
        assert_eq!(exp[0].0.poly, u_fn(0, 1).unwrap().poly);
        assert_eq!(exp[0].1, GaussianRational::one());
        assert_eq!(exp[1].0.poly, Poly::one(1));
        assert_eq!(exp[1].1, GaussianRational::one());
        let exp = expand_monomial(&zz(0, 1));
        assert_eq!(exp.len(), 1);
        assert_eq!((exp[0].0.kind, exp[0].0.eigenvalue), (EigenKind::U, 1));
        let exp = expand_monomial(&zz(4, 0));
        assert_eq!(exp.len(), 1);
        assert_eq!((exp[0].0.kind, exp[0].0.eigenvalue), (EigenKind::Holomorphic, 0));
    }

    #[test]
    fn completeness_at_truncation() {
        for d in 0..=8u32 {
            let monos = Bidegree::all_up_to(1, d);
            assert_eq!(monos.len() as u32, (d + 1) * (d + 2) / 2);
            let mut used = BTreeSet::new();
            for e in &monos {
                let exp = expand_monomial(e);
                assert_eq!(reconstruct(1, &exp), Poly::monomial(e.clone(), GaussianRational::one()));
                for (f, _) in &exp {
                    let (lead, _) = f.poly.leading_term().unwrap();
                    assert!(lead.degree() <= d);
                    used.insert(lead.clone());
                }
            }
            // distinct leading monomials with unit coefficient: the family is triangular
            assert_eq!(used.len(), monos.len());
        }
    }

    #[test]
    fn tensor_expansion_reconstructs() {
        for e in Bidegree::all_up_to(2, 5) {
            let exp = expand_monomial(&e);
            assert_eq!(reconstruct(2, &exp), Poly::monomial(e.clone(), GaussianRational::one()));
            for (f, _) in &exp {
                assert!(verify_eigen(f).unwrap().holds);
            }
        }
    }

    #[test]
    fn orthogonal_across_eigenvalues() {
        let family: Vec<EigenFunction> = Bidegree::all_up_to(1, 12)
            .iter()
            .map(|e| scalar_basis_element(e.alpha()[0], e.beta()[0]))
            .filter(|f| f.poly.total_degree().unwrap() <= 12 && f.params[0].0 + f.params[0].1 <= 6)
            .collect();
        for f in &family {
            for g in &family {
                if f.eigenvalue != g.eigenvalue {
                    assert!(poly_inner(&f.poly, &g.poly).unwrap().is_zero());
                }
            }
        }
    }
}
