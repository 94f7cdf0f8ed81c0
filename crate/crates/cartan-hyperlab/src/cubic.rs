//! Comparison of the roots of two members of the cubic family
//! `T³ + 3W(1+δ)T² + (3W²(1+δ)² − 1)T + W(1−δ) + W³(1+δ)³`.
//!
//! Shifting `T = S − W(1+δ)` gives `S³ − S + 2W`, whose discriminant is
//! `4(1 − 27W²)`, so all roots are real exactly when `|W| ≤ 1/(3√3)`. The
//! solver does not rely on this: roots come from the companion matrix and any
//! complex pair is reported.

use crate::rng;
use cartan_exact::exec::{self, Mode};
use cartan_exact::rational::{rat, to_f64};
use cartan_exact::Rational;
use nalgebra::Matrix3;
use rand::Rng;
use serde::Serialize;

/// Largest admissible `|W|`.
pub fn w_max() -> f64 {
    1.0 / (3.0 * 3f64.sqrt())
}

/// Residual tolerance for accepted real roots.
pub const ROOT_TOL: f64 = 1e-10;

/// `(c₂, c₁, c₀)` of the monic cubic.
pub fn coefficients(w: f64, delta: f64) -> [f64; 3] {
    let u = w * (1.0 + delta);
    [3.0 * u, 3.0 * u * u - 1.0, w * (1.0 - delta) + u * u * u]
}

fn eval(c: &[f64; 3], t: f64) -> f64 {
    ((t + c[0]) * t + c[1]) * t + c[2]
}

fn deriv(c: &[f64; 3], t: f64) -> f64 {
    (3.0 * t + 2.0 * c[0]) * t + c[1]
}

/// Discriminant of `T³ + pT² + qT + r`.
pub fn discriminant(c: &[f64; 3]) -> f64 {
    let [p, q, r] = *c;
    18.0 * p * q * r - 4.0 * p * p * p * r + p * p * q * q - 4.0 * q * q * q - 27.0 * r * r
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum RootError {
    /// Companion eigenvalues `(re, im)` when the discriminant is negative.
    Complex([(f64, f64); 3]),
    /// Real candidates whose residual after polishing exceeds the tolerance.
    Residual([f64; 3]),
}

/// Real roots in descending order, from companion eigenvalues polished by
/// Newton steps.
pub fn real_roots(c: &[f64; 3]) -> Result<[f64; 3], RootError> {
    let comp = Matrix3::new(0.0, 0.0, -c[2], 1.0, 0.0, -c[1], 0.0, 1.0, -c[0]);
    let ev = comp.complex_eigenvalues();
    let raw: [(f64, f64); 3] = std::array::from_fn(|i| (ev[i].re, ev[i].im));
    let scale = 1.0 + c.iter().map(|x| x.abs()).sum::<f64>();
    // A double root shows up as a pair with imaginary part of order √ulp,
    // so realness is decided on the discriminant rather than on `im`.
    if raw.iter().any(|z| z.1.abs() > ROOT_TOL) && discriminant(c) < -ROOT_TOL * scale.powi(4) {
        return Err(RootError::Complex(raw));
    }
    let mut roots: [f64; 3] = std::array::from_fn(|i| raw[i].0);
    for t in roots.iter_mut() {
        for _ in 0..4 {
            let d = deriv(c, *t);
            if d.abs() < 1e-6 {
                break;
            }
            let step = eval(c, *t) / d;
            *t -= step;
            if step.abs() < 1e-17 {
                break;
            }
        }
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    if roots.iter().any(|&t| eval(c, t).abs() > ROOT_TOL * scale) {
        return Err(RootError::Residual(roots));
    }
    Ok(roots)
}

#[derive(Clone, Debug)]
pub struct CubicPair {
    pub w: f64,
    pub w_bar: f64,
    pub delta: Rational,
    pub k: f64,
    /// `μ₁ ≥ μ₂ ≥ μ₃`.
    pub mu: [f64; 3],
    pub mu_bar: [f64; 3],
    /// `(1−δ)/(5+δ)`.
    pub rho: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum CubicError {
    Inadmissible(String),
    Roots { which: &'static str, w: f64, delta: f64, error: RootError },
}

impl CubicPair {
    pub fn new(w: f64, w_bar: f64, delta: Rational, k: f64) -> Result<Self, CubicError> {
        let d = to_f64(&delta);
        let wm = w_max() * (1.0 + 1e-15);
        if !(0.0..1.0).contains(&d) {
            return Err(CubicError::Inadmissible(format!("delta = {d} outside [0, 1)")));
        }
        if w.abs() > wm || w_bar.abs() > wm {
            return Err(CubicError::Inadmissible(format!("|W| or |W̄| exceeds 1/(3√3): {w}, {w_bar}")));
        }
        if !(k > 0.0) || !k.is_finite() {
            return Err(CubicError::Inadmissible(format!("K = {k} is not positive")));
        }
        if (k - 1.0).abs() + (w_bar - w).abs() == 0.0 {
            return Err(CubicError::Inadmissible("K = 1 and W̄ = W".into()));
        }
        let solve = |which, x: f64| real_roots(&coefficients(x, d)).map_err(|error| CubicError::Roots { which, w: x, delta: d, error });
        let mu = solve("W", w)?;
        let mu_bar = solve("W̄", w_bar)?;
        Ok(CubicPair { w, w_bar, delta, k, mu, mu_bar, rho: (1.0 - d) / (5.0 + d) })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CubicCheck {
    pub pass: bool,
    pub mu_minus: f64,
    pub mu_plus: f64,
    /// `μ₊(K)/(−μ₋(K))`.
    pub ratio: f64,
    pub rho: f64,
}

pub fn cubic_comparison_check(pair: &CubicPair) -> CubicCheck {
    let diffs: [f64; 3] = std::array::from_fn(|i| pair.mu[i] - pair.k * pair.mu_bar[i]);
    let mu_minus = diffs.iter().copied().fold(f64::INFINITY, f64::min);
    let mu_plus = diffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ratio = mu_plus / -mu_minus;
    let tol = 1e-12;
    let pass = mu_minus < 0.0 && ratio >= pair.rho * (1.0 - tol) && ratio <= (1.0 + tol) / pair.rho;
    CubicCheck { pass, mu_minus, mu_plus, ratio, rho: pair.rho }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubicFailure {
    pub w: f64,
    pub w_bar: f64,
    pub delta: String,
    pub k: f64,
    pub check: CubicCheck,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CubicSummary {
    pub samples: usize,
    pub failures: Vec<CubicFailure>,
    pub root_events: Vec<CubicError>,
    /// Smallest `ratio/ρ` and smallest `(1/ρ)/ratio` seen: both ≥ 1 on success.
    pub lower_slack: f64,
    pub upper_slack: f64,
}

const CHUNK: usize = 1024;
const TAG: u32 = 3;

/// One admissible draw: `δ` on the grid `j/64`, `W, W̄` uniform (with some
/// mass on the boundary and on `W̄ = W`), `K` log-uniform in `[e⁻⁷, e⁷]`
/// (with some mass on `K = 1`).
pub fn sample_pair<R: Rng + ?Sized>(r: &mut R) -> (f64, f64, Rational, f64) {
    let wm = w_max();
    let draw_w = |r: &mut R| -> f64 {
        match r.random_range(0..16) {
            0 => wm,
            1 => -wm,
            _ => r.random_range(-wm..=wm),
        }
    };
    let delta = rat(r.random_range(0..64), 64);
    let w = draw_w(r);
    loop {
        let w_bar = if r.random_range(0..8) == 0 { w } else { draw_w(r) };
        let k = if r.random_range(0..8) == 0 { 1.0 } else { r.random_range(-7.0f64..7.0).exp() };
        if (k - 1.0).abs() + (w_bar - w).abs() > 0.0 {
            return (w, w_bar, delta, k);
        }
    }
}

pub fn run_cubic(seed: u64, n: usize, mode: Mode) -> CubicSummary {
    let chunks = n.div_ceil(CHUNK);
    let parts = exec::map_range(mode, chunks, |c| {
        let mut r = rng::stream(seed, rng::stream_id(TAG, c as u64));
        let len = CHUNK.min(n - c * CHUNK);
        (0..len)
            .map(|_| {
                let (w, w_bar, delta, k) = sample_pair(&mut r);
                let ds = cartan_exact::rational::fmt_rational(&delta);
                CubicPair::new(w, w_bar, delta, k).map(|p| (cubic_comparison_check(&p), w, w_bar, ds, k))
            })
            .collect::<Vec<_>>()
    });
    let mut s = CubicSummary { samples: n, failures: vec![], root_events: vec![], lower_slack: f64::INFINITY, upper_slack: f64::INFINITY };
    for res in parts.into_iter().flatten() {
        match res {
            Ok((check, w, w_bar, delta, k)) => {
                s.lower_slack = s.lower_slack.min(check.ratio / check.rho);
                s.upper_slack = s.upper_slack.min(1.0 / (check.rho * check.ratio));
                if !check.pass {
                    s.failures.push(CubicFailure { w, w_bar, delta, k, check });
                }
            }
            Err(e) => s.root_events.push(e),
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_exact::rational::int;

    #[test]
    fn rho_at_zero() {
        let p = CubicPair::new(0.1, -0.1, int(0), 1.0).unwrap();
        assert_eq!(p.rho, 0.2);
    }

    #[test]
    fn symmetric_example() {
        let p = CubicPair::new(0.0, 0.0, int(0), 2.0).unwrap();
        for (x, y) in p.mu.iter().zip([1.0, 0.0, -1.0]) {
            assert!((x - y).abs() < 1e-14);
        }
        let c = cubic_comparison_check(&p);
        assert!((c.mu_plus - 1.0).abs() < 1e-14 && (c.mu_minus + 1.0).abs() < 1e-14);
        assert!((c.ratio - 1.0).abs() < 1e-14);
        assert!(c.pass);
    }

    #[test]
    fn roots_match_trigonometric_form() {
        // S³ − S + 2W = 0 ⇔ S = (2/√3)cos φ with cos 3φ = −3√3·W
        for &w in &[-0.19, -0.05, 0.0, 0.07, 0.17, w_max()] {
            for &d in &[0.0, 0.3, 0.9] {
                let roots = real_roots(&coefficients(w, d)).unwrap();
                let th = (-3.0 * 3f64.sqrt() * w).clamp(-1.0, 1.0).acos();
                let mut want: Vec<f64> = (0..3)
                    .map(|k| 2.0 / 3f64.sqrt() * ((th - 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos() - w * (1.0 + d))
                    .collect();
                want.sort_by(|a, b| b.total_cmp(a));
                for (x, y) in roots.iter().zip(&want) {
                    assert!((x - y).abs() < 1e-7, "w={w} d={d}: {roots:?} vs {want:?}");
                }
            }
        }
    }

    #[test]
    fn shifted_form_discriminant() {
        for &w in &[0.0, 0.1, -0.15, 0.19] {
            let disc = discriminant(&coefficients(w, 0.4));
            assert!((disc - 4.0 * (1.0 - 27.0 * w * w)).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_roots_are_reported() {
        let r = real_roots(&coefficients(0.3, 0.0));
        assert!(matches!(r, Err(RootError::Complex(_))));
        assert!(matches!(CubicPair::new(0.3, 0.0, int(0), 1.0), Err(CubicError::Inadmissible(_))));
    }

    #[test]
    fn excluded_pair_rejected() {
        assert!(CubicPair::new(0.1, 0.1, int(0), 1.0).is_err());
        assert!(CubicPair::new(0.1, 0.1, int(0), 0.0).is_err());
    }

    #[test]
    fn monte_carlo_passes() {
        let s = run_cubic(5, 10_000, Mode::default_mode());
        assert!(s.failures.is_empty(), "{:?}", &s.failures[..s.failures.len().min(3)]);
        assert!(s.root_events.is_empty(), "{:?}", s.root_events.first());
        assert!(s.lower_slack >= 1.0 - 1e-12 && s.upper_slack >= 1.0 - 1e-12);
    }
}
