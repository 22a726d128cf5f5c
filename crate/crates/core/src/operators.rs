//! The weighted ∂̄-complex and the complex Witten complex for `φ = |z|^2`.
//!
//! Functions of the Witten complex live in the unweighted space and are
//! carried as `h = p · e^{-|z|^2/2}`; [`WittenRep`] stores the polynomial
//! part `p` and every operator below expands derivatives of the Gaussian
//! envelope symbolically, so the envelope itself never appears.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::forms::{contract_basis, wedge_basis, MultiIndex, QForm};
use crate::inner::{form_inner, ExactScalar};
use crate::polyalg::{GaussianRational, Poly};

fn half() -> GaussianRational {
    GaussianRational::ratio(1, 2)
}

fn quarter() -> GaussianRational {
    GaussianRational::ratio(1, 4)
}

/// The weight `φ = Σ_j z_j zb_j`.
pub fn weight(n: usize) -> Poly {
    (0..n).fold(Poly::zero(n), |acc, j| {
        &acc + &(&Poly::z(n, j).expect("j < n") * &Poly::zbar(n, j).expect("j < n"))
    })
}

/// Levi matrix `M[j][k] = ∂²φ / ∂z_k ∂zb_j`, computed from [`weight`].
pub fn levi_matrix(n: usize) -> Vec<Vec<Poly>> {
    let phi = weight(n);
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| phi.d_zbar(j).and_then(|d| d.d_z(k)).expect("indices in range"))
                .collect()
        })
        .collect()
}

/// `δ_k p = ∂p/∂z_k - (∂φ/∂z_k) p = ∂p/∂z_k - zb_k p`.
pub fn delta(p: &Poly, k: usize) -> Result<Poly> {
    let dphi = weight(p.n()).d_z(k)?;
    Ok(&p.d_z(k)? - &(&dphi * p))
}

/// `∂̄u = Σ'_J Σ_j ∂u_J/∂zb_j dzb_j ∧ dzb_J`.
pub fn dbar(u: &QForm) -> Result<QForm> {
    let (n, q) = (u.n(), u.q());
    if q >= n {
        return Err(Error::DegreeOutOfRange { q: q + 1, n });
    }
    let mut out = QForm::zero(n, q + 1)?;
    for (jj, p) in u.components() {
        for j in 0..n {
            if let Some((sign, target)) = wedge_basis(j, jj) {
                out.accumulate(target, sign, &p.d_zbar(j)?);
            }
        }
    }
    Ok(out)
}

/// `∂̄*_φ u = -Σ'_K Σ_k δ_k u_{kK} dzb_K`, where `u_{kK}` is the coefficient
/// of `dzb_k ∧ dzb_K` written in the increasing basis.
pub fn dbar_star(u: &QForm) -> Result<QForm> {
    let (n, q) = (u.n(), u.q());
    if q == 0 {
        return Err(Error::DegreeOutOfRange { q, n });
    }
    let mut out = QForm::zero(n, q - 1)?;
    for kk in MultiIndex::all(n, q - 1) {
        for k in 0..n {
            if let Some((sign, jj)) = wedge_basis(k, &kk) {
                let coeff = u.component(&jj);
                if !coeff.is_zero() {
                    out.accumulate(kk.clone(), -sign, &delta(&coeff, k)?);
                }
            }
        }
    }
    Ok(out)
}

/// `□_{φ,q} = ∂̄∂̄*_φ + ∂̄*_φ∂̄`; the undefined half is dropped at `q = 0` and `q = n`.
pub fn box_laplacian(u: &QForm) -> Result<QForm> {
    let (n, q) = (u.n(), u.q());
    let mut out = QForm::zero(n, q)?;
    if q > 0 {
        out = out.checked_add(&dbar(&dbar_star(u)?)?)?;
    }
    if q < n {
        out = out.checked_add(&dbar_star(&dbar(u)?)?)?;
    }
    Ok(out)
}

/// Scalar part of the coordinate formula: `-¼△p + Σ_j zb_j ∂p/∂zb_j`.
pub fn box_scalar_coord(p: &Poly) -> Poly {
    let n = p.n();
    let mut out = -&p.laplace_quarter();
    for j in 0..n {
        let zb = Poly::zbar(n, j).expect("j < n");
        out = &out + &(&zb * &p.d_zbar(j).expect("j < n"));
    }
    out
}

/// Coordinate form `Σ'_J (-¼△u_J + Σ_j zb_j ∂u_J/∂zb_j + q u_J) dzb_J`.
pub fn box_coord(u: &QForm) -> QForm {
    let q = u.q() as i64;
    u.map_components(|p| &box_scalar_coord(p) + &p.scale_int(q))
}

/// `Q_φ(f, g) = (∂̄f, ∂̄g)_φ + (∂̄*_φ f, ∂̄*_φ g)_φ`.
pub fn dirichlet_form(f: &QForm, g: &QForm) -> Result<ExactScalar> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch {
            left: f.n(),
            right: g.n(),
        });
    }
    if f.q() != g.q() {
        return Err(Error::DegreeMismatch {
            left: f.q(),
            right: g.q(),
        });
    }
    let (n, q) = (f.n(), f.q());
    let mut acc = ExactScalar::zero(n as u32);
    if q < n {
        acc = &acc + &form_inner(&dbar(f)?, &dbar(g)?)?;
    }
    if q > 0 {
        acc = &acc + &form_inner(&dbar_star(f)?, &dbar_star(g)?)?;
    }
    Ok(acc)
}

/// A form `h = Σ'_J p_J e^{-|z|^2/2} dzb_J` of the Witten complex, stored by
/// its polynomial parts `p_J`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WittenRep(QForm);

impl WittenRep {
    pub fn new(poly_part: QForm) -> Self {
        Self(poly_part)
    }

    pub fn scalar(p: Poly) -> Self {
        Self(QForm::from_poly(p))
    }

    pub fn poly_part(&self) -> &QForm {
        &self.0
    }

    pub fn into_poly_part(self) -> QForm {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn q(&self) -> usize {
        self.0.q()
    }
}

/// Polynomial part of `∂/∂z_k (p e^{-|z|^2/2})`.
fn envelope_d_z(p: &Poly, k: usize) -> Result<Poly> {
    let zb = Poly::zbar(p.n(), k)?;
    Ok(&p.d_z(k)? - &(&zb * p).scale(&half()))
}

/// Polynomial part of `∂/∂zb_k (p e^{-|z|^2/2})`.
fn envelope_d_zbar(p: &Poly, k: usize) -> Result<Poly> {
    let z = Poly::z(p.n(), k)?;
    Ok(&p.d_zbar(k)? - &(&z * p).scale(&half()))
}

/// `Z_k = ∂/∂zb_k + ½ ∂φ/∂zb_k` on one polynomial part.
pub fn witten_z_poly(p: &Poly, k: usize) -> Result<Poly> {
    let dphi = weight(p.n()).d_zbar(k)?;
    Ok(&envelope_d_zbar(p, k)? + &(&dphi * p).scale(&half()))
}

/// `Z_k* = -∂/∂z_k + ½ ∂φ/∂z_k` on one polynomial part.
pub fn witten_zstar_poly(p: &Poly, k: usize) -> Result<Poly> {
    let dphi = weight(p.n()).d_z(k)?;
    Ok(&(&dphi * p).scale(&half()) - &envelope_d_z(p, k)?)
}

/// `Z_k` applied to every component.
pub fn witten_z(h: &WittenRep, k: usize) -> Result<WittenRep> {
    crate::polyalg::check_index(k, h.n())?;
    Ok(WittenRep(h.0.map_components(|p| witten_z_poly(p, k).expect("k < n"))))
}

/// `Z_k*` applied to every component.
pub fn witten_zstar(h: &WittenRep, k: usize) -> Result<WittenRep> {
    crate::polyalg::check_index(k, h.n())?;
    Ok(WittenRep(h.0.map_components(|p| witten_zstar_poly(p, k).expect("k < n"))))
}

/// `D̄_{q+1} h = Σ_k Σ'_J Z_k(h_J) dzb_k ∧ dzb_J`.
pub fn witten_d(h: &WittenRep) -> Result<WittenRep> {
    let (n, q) = (h.n(), h.q());
    if q >= n {
        return Err(Error::DegreeOutOfRange { q: q + 1, n });
    }
    let mut out = QForm::zero(n, q + 1)?;
    for (jj, p) in h.0.components() {
        for k in 0..n {
            if let Some((sign, target)) = wedge_basis(k, jj) {
                out.accumulate(target, sign, &witten_z_poly(p, k)?);
            }
        }
    }
    Ok(WittenRep(out))
}

/// `D̄_q* h = Σ_k Σ'_J Z_k*(h_J) dzb_k ⌟ dzb_J`.
pub fn witten_dstar(h: &WittenRep) -> Result<WittenRep> {
    let (n, q) = (h.n(), h.q());
    if q == 0 {
        return Err(Error::DegreeOutOfRange { q, n });
    }
    let mut out = QForm::zero(n, q - 1)?;
    for (jj, p) in h.0.components() {
        for k in 0..n {
            if let Some((sign, target)) = contract_basis(k, jj) {
                out.accumulate(target, sign, &witten_zstar_poly(p, k)?);
            }
        }
    }
    Ok(WittenRep(out))
}

/// `Δ^{(0,q)} = D̄_q D̄_q* + D̄_{q+1}* D̄_{q+1}`, with the same edge-degree
/// convention as [`box_laplacian`].
pub fn witten_laplacian(h: &WittenRep) -> Result<WittenRep> {
    let (n, q) = (h.n(), h.q());
    let mut out = QForm::zero(n, q)?;
    if q > 0 {
        out = out.checked_add(&witten_d(&witten_dstar(h)?)?.0)?;
    }
    if q < n {
        out = out.checked_add(&witten_dstar(&witten_d(h)?)?.0)?;
    }
    Ok(WittenRep(out))
}

/// Coordinate formula
/// `-¼△h_J + ½Σ_j (zb_j ∂h_J/∂zb_j - z_j ∂h_J/∂z_j) + ¼|z|² h_J + (q - n/2) h_J`
/// applied to `h_J = p_J e^{-|z|^2/2}`, returning polynomial parts.
pub fn witten_coord(h: &WittenRep) -> WittenRep {
    let (n, q) = (h.n(), h.q());
    let phi = weight(n);
    let shift = GaussianRational::ratio(2 * q as i64 - n as i64, 2);
    WittenRep(h.0.map_components(|p| {
        let mut out = &(&phi * p).scale(&quarter()) + &p.scale(&shift);
        for j in 0..n {
            let (z, zb) = (Poly::z(n, j).expect("j < n"), Poly::zbar(n, j).expect("j < n"));
            let dzb = envelope_d_zbar(p, j).expect("j < n");
            let dz = envelope_d_z(p, j).expect("j < n");
            // -¼△ = -Σ_j ∂_{z_j} ∂_{zb_j}
            out = &out - &envelope_d_z(&dzb, j).expect("j < n");
            out = &out + &(&(&zb * &dzb) - &(&z * &dz)).scale(&half());
        }
        out
    }))
}

/// `M_φ g = Σ_j (Σ_k ∂²φ/∂z_k∂zb_j g_k) dzb_j` on a `(0,1)`-form.
pub fn levi_action(g: &WittenRep) -> Result<WittenRep> {
    let n = g.n();
    if g.q() != 1 {
        return Err(Error::DegreeMismatch { left: 1, right: g.q() });
    }
    let m = levi_matrix(n);
    let mut out = QForm::zero(n, 1)?;
    for (j, row) in m.iter().enumerate() {
        for (k, entry) in row.iter().enumerate() {
            let gk = g.0.component(&MultiIndex::single(k));
            out.accumulate(MultiIndex::single(j), 1, &(entry * &gk));
        }
    }
    Ok(WittenRep(out))
}

/// Which Pauli operator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PauliSign {
    /// `P_+ = e^{-|z|²/2} ∂̄∂̄*_φ e^{|z|²/2}` on the coefficient of `dzb`.
    Plus,
    /// `P_- = e^{-|z|²/2} ∂̄*_φ∂̄ e^{|z|²/2}` on functions.
    Minus,
}

/// Pauli operators for `n = 1`, acting on the polynomial part of `p e^{-|z|²/2}`.
///
/// Conjugating by `e^{|z|²/2}` turns `p e^{-|z|²/2}` into `p`, so the
/// polynomial part of the result is the ∂̄-complex composition applied to `p`.
pub fn pauli(p: &Poly, sign: PauliSign) -> Result<Poly> {
    if p.n() != 1 {
        return Err(Error::InvalidParameter(alloc::format!(
            "Pauli operators are defined for n = 1, got n = {}",
            p.n()
        )));
    }
    let dz = MultiIndex::single(0);
    match sign {
        PauliSign::Minus => dbar_star(&dbar(&QForm::from_poly(p.clone()))?)?.as_function(),
        PauliSign::Plus => {
            let f = QForm::single(dz.clone(), p.clone())?;
            Ok(dbar(&dbar_star(&f)?)?.component(&dz))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::Bidegree;
    use crate::testutil::{arb_any_form, arb_form, arb_poly};
    use alloc::vec;
    use num_traits::One;
    use proptest::prelude::*;

    fn zz(a: u32, b: u32) -> Poly {
        Poly::monomial(Bidegree::scalar(a, b), GaussianRational::one())
    }

    fn mono(alpha: &[u32], beta: &[u32]) -> Poly {
        Poly::monomial(Bidegree::new(alpha.to_vec(), beta.to_vec()).unwrap(), GaussianRational::one())
    }

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn levi_matrix_is_identity() {
        let m = levi_matrix(3);
        for (j, row) in m.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                assert_eq!(e, &if j == k { Poly::one(3) } else { Poly::zero(3) });
            }
        }
    }

    #[test]
    fn dbar_examples() {
        let f = QForm::from_poly(Poly::zbar(2, 0).unwrap());
        assert_eq!(dbar(&f).unwrap(), QForm::single(mi(&[0]), Poly::one(2)).unwrap());
        // ∂̄(zb2 dzb1) = dzb2 ∧ dzb1 = -dzb1 ∧ dzb2
        let g = QForm::single(mi(&[0]), Poly::zbar(2, 1).unwrap()).unwrap();
        assert_eq!(dbar(&g).unwrap(), QForm::single(mi(&[0, 1]), Poly::one(2).scale_int(-1)).unwrap());
        let top = QForm::single(mi(&[0, 1]), Poly::one(2)).unwrap();
        assert_eq!(dbar(&top).unwrap_err(), Error::DegreeOutOfRange { q: 3, n: 2 });
    }

    #[test]
    fn dbar_star_examples() {
        let dz = mi(&[0]);
        let one = QForm::single(dz.clone(), Poly::one(1)).unwrap();
        assert_eq!(dbar_star(&one).unwrap().as_function().unwrap(), zz(0, 1));
        let z = QForm::single(dz, zz(1, 0)).unwrap();
        assert_eq!(dbar_star(&z).unwrap().as_function().unwrap(), &zz(1, 1) - &Poly::one(1));
        assert!(dbar_star(&QForm::from_poly(Poly::one(1))).is_err());
    }

    #[test]
    fn box_examples() {
        let f = QForm::from_poly(zz(0, 1));
        assert_eq!(box_laplacian(&f).unwrap(), f);
        let u11 = QForm::from_poly(&zz(1, 2) - &zz(0, 1).scale_int(2));
        assert_eq!(box_laplacian(&u11).unwrap(), u11.scale_int(2));
        let hol = QForm::from_poly(&zz(4, 0) + &zz(1, 0).scale_int(3));
        assert!(box_laplacian(&hol).unwrap().is_zero());
        // box_coord(zb1 dzb1) = 0 + zb1 + zb1 in n = 2
        let g = QForm::single(mi(&[0]), Poly::zbar(2, 0).unwrap()).unwrap();
        assert_eq!(box_coord(&g), g.scale_int(2));
        assert!(box_coord(&QForm::from_poly(Poly::constant(2, GaussianRational::from_int(5)))).is_zero());
    }

    #[test]
    fn dirichlet_examples() {
        let zb = QForm::from_poly(zz(0, 1));
        assert_eq!(dirichlet_form(&zb, &zb).unwrap(), ExactScalar::new(GaussianRational::one(), 1));
        let one = QForm::from_poly(Poly::one(1));
        assert!(dirichlet_form(&one, &one).unwrap().is_zero());
    }

    #[test]
    fn witten_first_order_examples() {
        let zb = WittenRep::scalar(zz(0, 1));
        let back = witten_zstar(&witten_z(&zb, 0).unwrap(), 0).unwrap();
        assert_eq!(back, zb);
        assert!(witten_z(&WittenRep::scalar(&zz(3, 0) + &zz(1, 0)), 0).unwrap().poly_part().is_zero());
        assert!(witten_z(&zb, 1).is_err());
        // Z_k acts as ∂/∂zb_k and Z_k* as -∂/∂z_k + zb_k on polynomial parts
        let p = &zz(2, 3) + &zz(1, 0);
        assert_eq!(witten_z_poly(&p, 0).unwrap(), p.d_zbar(0).unwrap());
        assert_eq!(witten_zstar_poly(&p, 0).unwrap(), &(&zz(0, 1) * &p) - &p.d_z(0).unwrap());
    }

    #[test]
    fn witten_dstar_on_one_forms() {
        // D̄* g = Σ_k Z_k*(g_k) for a (0,1)-form
        let g1 = mono(&[1, 0], &[0, 2]);
        let g2 = mono(&[0, 1], &[1, 1]);
        let g = WittenRep::new(
            QForm::from_components(2, 1, [(vec![0], g1.clone()), (vec![1], g2.clone())]).unwrap(),
        );
        let want = &witten_zstar_poly(&g1, 0).unwrap() + &witten_zstar_poly(&g2, 1).unwrap();
        assert_eq!(witten_dstar(&g).unwrap().poly_part().as_function().unwrap(), want);
    }

    #[test]
    fn witten_coord_examples() {
        let zb = WittenRep::scalar(zz(0, 1));
        assert_eq!(witten_coord(&zb), zb);
        assert!(witten_coord(&WittenRep::scalar(Poly::one(1))).poly_part().is_zero());
    }

    #[test]
    fn pauli_examples() {
        assert_eq!(pauli(&zz(0, 1), PauliSign::Minus).unwrap(), zz(0, 1));
        assert_eq!(pauli(&Poly::one(1), PauliSign::Plus).unwrap(), Poly::one(1));
        assert!(pauli(&zz(5, 0), PauliSign::Minus).unwrap().is_zero());
        assert!(pauli(&Poly::one(2), PauliSign::Plus).is_err());
    }

    #[test]
    fn box_preserves_charge_and_degree() {
        for n in 1..=2usize {
            let monos = Bidegree::all_up_to(n, 8);
            for e in monos {
                for q in 0..=n {
                    for jj in MultiIndex::all(n, q) {
                        let f = QForm::single(jj.clone(), Poly::monomial(e.clone(), GaussianRational::one())).unwrap();
                        let out = box_laplacian(&f).unwrap();
                        for (j2, p) in out.components() {
                            assert_eq!(j2, &jj);
                            for (e2, _) in p.terms() {
                                assert_eq!(e2.charge(), e.charge());
                                assert!(e2.degree() <= e.degree());
                            }
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn complex_property(f in arb_any_form()) {
            if f.q() + 2 <= f.n() {
                prop_assert!(dbar(&dbar(&f).unwrap()).unwrap().is_zero());
            }
            if f.q() >= 2 {
                prop_assert!(dbar_star(&dbar_star(&f).unwrap()).unwrap().is_zero());
            }
        }

        #[test]
        fn box_matches_coordinates(f in arb_any_form()) {
            prop_assert_eq!(box_laplacian(&f).unwrap(), box_coord(&f));
        }

        #[test]
        fn adjoint_relation(f in arb_form(2, 0), g in arb_form(2, 1)) {
            prop_assert_eq!(form_inner(&dbar(&f).unwrap(), &g).unwrap(), form_inner(&f, &dbar_star(&g).unwrap()).unwrap());
        }

        #[test]
        fn self_adjoint_and_positive(f in arb_form(2, 1), g in arb_form(2, 1)) {
            let bf = box_laplacian(&f).unwrap();
            prop_assert_eq!(form_inner(&bf, &g).unwrap(), form_inner(&f, &box_laplacian(&g).unwrap()).unwrap());
            let q = dirichlet_form(&f, &f).unwrap();
            prop_assert!(q.is_nonnegative());
            prop_assert_eq!(q, form_inner(&bf, &f).unwrap());
        }

        #[test]
        fn witten_conjugation(f in arb_any_form()) {
            let h = WittenRep::new(f.clone());
            let lap = witten_laplacian(&h).unwrap();
            prop_assert_eq!(lap.poly_part(), &box_laplacian(&f).unwrap());
            prop_assert_eq!(&lap, &witten_coord(&h));
        }

        #[test]
        fn witten_commutation(f in arb_form(3, 1)) {
            let h = WittenRep::new(f);
            let lhs = witten_d(&witten_laplacian(&h).unwrap()).unwrap();
            let rhs = witten_laplacian(&witten_d(&h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            let g = witten_d(&h).unwrap();
            let lhs = witten_dstar(&witten_laplacian(&g).unwrap()).unwrap();
            let rhs = witten_laplacian(&witten_dstar(&g).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn one_form_laplacian_splits(g in arb_form(2, 1)) {
            let h = WittenRep::new(g.clone());
            let tensor = g.map_components(|p| {
                witten_laplacian(&WittenRep::scalar(p.clone())).unwrap().poly_part().as_function().unwrap()
            });
            let want = tensor.checked_add(levi_action(&h).unwrap().poly_part()).unwrap();
            let lap = witten_laplacian(&h).unwrap();
            prop_assert_eq!(lap.poly_part(), &want);
        }

        #[test]
        fn delta_is_dz_minus_zbar(p in arb_poly(2, 3, 4)) {
            let zb = Poly::zbar(2, 1).unwrap();
            prop_assert_eq!(delta(&p, 1).unwrap(), &p.d_z(1).unwrap() - &(&zb * &p));
        }
    }
}
