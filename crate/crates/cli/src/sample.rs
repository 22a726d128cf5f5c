//! Seeded random polynomials and forms.

use fockspec_core::{Bidegree, GaussianRational, MultiIndex, Poly, QForm};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for case `case` of check `check`: independent of thread layout.
pub fn case_rng(seed: u64, check: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(check);
    rng.set_word_pos((case as u128) << 20);
    rng
}

pub fn scalar(rng: &mut impl Rng) -> GaussianRational {
    let re = GaussianRational::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3));
    let im = GaussianRational::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3));
    re + im * GaussianRational::i()
}

/// Exponents on the `2n` slots with total degree at most `max_degree`.
pub fn bidegree(rng: &mut impl Rng, n: usize, max_degree: u32) -> Bidegree {
    let total = rng.gen_range(0..=max_degree);
    let mut slots = vec![0u32; 2 * n];
    for _ in 0..total {
        slots[rng.gen_range(0..2 * n)] += 1;
    }
    let beta = slots.split_off(n);
    Bidegree::new(slots, beta).expect("equal lengths")
}

/// Up to `max_terms` random terms of degree at most `max_degree`.
pub fn poly(rng: &mut impl Rng, n: usize, max_degree: u32, max_terms: usize) -> Poly {
    let count = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..count)
        .map(|_| (bidegree(rng, n, max_degree), scalar(rng)))
        .collect();
    Poly::from_terms(n, terms).expect("dimensions agree")
}

pub fn form(rng: &mut impl Rng, n: usize, q: usize, max_degree: u32) -> QForm {
    let comps: Vec<_> = MultiIndex::all(n, q)
        .into_iter()
        .map(|j| (j.indices().to_vec(), poly(rng, n, max_degree, 4)))
        .collect();
    QForm::from_components(n, q, comps).expect("valid shape")
}

/// Which `(n, q)` a check draws from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Fixed { n: usize, q: usize },
    /// Uniform `n` in `1..=max_n`, then uniform `q` in `0..=n`.
    Any { max_n: usize },
}

impl Shape {
    /// Draws a shape accepted by `keep`, or `None` when no shape qualifies.
    pub fn draw(self, rng: &mut impl Rng, keep: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
        match self {
            Shape::Fixed { n, q } => keep(n, q).then_some((n, q)),
            Shape::Any { max_n } => {
                let options: Vec<(usize, usize)> = (1..=max_n)
                    .flat_map(|n| (0..=n).map(move |q| (n, q)))
                    .filter(|&(n, q)| keep(n, q))
                    .collect();
                if options.is_empty() {
                    return None;
                }
                let n = loop {
                    let n = rng.gen_range(1..=max_n);
                    if options.iter().any(|o| o.0 == n) {
                        break n;
                    }
                };
                let qs: Vec<usize> = options.iter().filter(|o| o.0 == n).map(|o| o.1).collect();
                Some((n, qs[rng.gen_range(0..qs.len())]))
            }
        }
    }
}
