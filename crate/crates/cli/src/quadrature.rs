//! Numeric oracle for the Gaussian-weighted inner product in one variable.

use std::f64::consts::PI;

/// Adaptive Simpson on `[lo, hi]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> f64 {
    struct Panel {
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
    }
    fn step(f: &dyn Fn(f64) -> f64, p: Panel, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (p.a + p.b);
        let (flm, frm) = (f(0.5 * (p.a + m)), f(0.5 * (m + p.b)));
        let left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
        let right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
        let delta = left + right - p.whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        let lp = Panel { a: p.a, b: m, fa: p.fa, fm: flm, fb: p.fm, whole: left };
        let rp = Panel { a: m, b: p.b, fa: p.fm, fm: frm, fb: p.fb, whole: right };
        step(f, lp, tol / 2.0, depth - 1) + step(f, rp, tol / 2.0, depth - 1)
    }
    let (fa, fm, fb) = (f(lo), f(0.5 * (lo + hi)), f(hi));
    let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, Panel { a: lo, b: hi, fa, fm, fb, whole }, tol, 48)
}

/// `∫_C z^a zb^b conj(z^c zb^d) e^{-|z|²} dA` as `(re, im)`, in polar
/// coordinates: adaptive Simpson in the radius, trapezoid in the angle.
pub fn monomial_inner_numeric(a: u32, b: u32, c: u32, d: u32) -> (f64, f64) {
    let power = (a + b + c + d) as i32;
    let freq = f64::from(a as i32 - b as i32 - c as i32 + d as i32);
    let radial = adaptive_simpson(&|r: f64| r.powi(power + 1) * (-r * r).exp(), 0.0, 12.0, 1e-13);
    // the angular integrand is a trigonometric polynomial of order < 64
    let m = 64;
    let (mut re, mut im) = (0.0, 0.0);
    for k in 0..m {
        let t = 2.0 * PI * k as f64 / m as f64;
        re += (freq * t).cos();
        im += (freq * t).sin();
    }
    let w = 2.0 * PI / m as f64;
    (radial * re * w, radial * im * w)
}
