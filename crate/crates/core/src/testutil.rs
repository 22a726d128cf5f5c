use alloc::vec::Vec;

use proptest::prelude::*;

use crate::forms::{MultiIndex, QForm};
use crate::polyalg::{Bidegree, GaussianRational, Poly};

pub fn arb_scalar() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=3, -6i64..=6, 1i64..=3).prop_map(|(a, b, c, d)| {
        GaussianRational::ratio(a, b) + GaussianRational::ratio(c, d) * GaussianRational::i()
    })
}

pub fn arb_poly(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (
            prop::collection::vec(0..=max_exp, n),
            prop::collection::vec(0..=max_exp, n),
            arb_scalar(),
        ),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Poly::from_terms(
            n,
            terms.into_iter().map(|(a, b, c)| (Bidegree::new(a, b).unwrap(), c)),
        )
        .unwrap()
    })
}

pub fn arb_form(n: usize, q: usize) -> impl Strategy<Value = QForm> {
    let comps: Vec<MultiIndex> = MultiIndex::all(n, q);
    prop::collection::vec(arb_poly(n, 3, 4), comps.len()).prop_map(move |ps| {
        QForm::from_components(n, q, comps.iter().map(|j| j.indices().to_vec()).zip(ps)).unwrap()
    })
}

/// A random `(n, q)` pair with `1 <= n <= 3`, `0 <= q <= n`, and a form of that type.
pub fn arb_any_form() -> impl Strategy<Value = QForm> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, q)| arb_form(n, q))
}
