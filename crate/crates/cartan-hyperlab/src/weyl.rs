//! Eigenvalue bounds for a difference of symmetric matrices: with
//! `λ`, `λ′`, `Λ` the sorted spectra of `A`, `B`, `A − B`,
//! `Λ_max ≥ maxᵢ(λᵢ − λ′ᵢ)` and `Λ_min ≤ minᵢ(λᵢ − λ′ᵢ)`.

use crate::rng;
use cartan_exact::exec::{self, Mode};
use cartan_geometry::Mat5;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

pub const WEYL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeylCheck {
    pub pass: bool,
    /// `Λ_max − maxᵢ(λᵢ − λ′ᵢ)`.
    pub upper_slack: f64,
    /// `minᵢ(λᵢ − λ′ᵢ) − Λ_min`.
    pub lower_slack: f64,
}

fn sorted_eigenvalues(m: &Mat5) -> [f64; 5] {
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    std::array::from_fn(|i| ev[i])
}

pub fn weyl_bounds_check(a: &Mat5, b: &Mat5) -> WeylCheck {
    let (la, lb, ld) = (sorted_eigenvalues(a), sorted_eigenvalues(b), sorted_eigenvalues(&(a - b)));
    let diffs: Vec<f64> = (0..5).map(|i| la[i] - lb[i]).collect();
    let hi = diffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = diffs.iter().copied().fold(f64::INFINITY, f64::min);
    let upper_slack = ld[0] - hi;
    let lower_slack = lo - ld[4];
    let tol = WEYL_TOL * (1.0 + a.norm() + b.norm());
    WeylCheck { pass: upper_slack >= -tol && lower_slack >= -tol, upper_slack, lower_slack }
}

/// A symmetric matrix with independent standard Gaussian entries on and
/// above the diagonal.
pub fn random_symmetric<R: Rng + ?Sized>(rng: &mut R) -> Mat5 {
    let mut m = Mat5::zeros();
    for i in 0..5 {
        for j in i..5 {
            let x: f64 = rng.sample(StandardNormal);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeylSummary {
    pub samples: usize,
    pub failures: usize,
    pub min_upper_slack: f64,
    pub min_lower_slack: f64,
}

const CHUNK: usize = 1024;
const TAG: u32 = 2;

/// `n` random Gaussian pairs from the master `seed`.
pub fn run_weyl(seed: u64, n: usize, mode: Mode) -> WeylSummary {
    let chunks = n.div_ceil(CHUNK);
    let parts = exec::map_range(mode, chunks, |c| {
        let mut r = rng::stream(seed, rng::stream_id(TAG, c as u64));
        let len = CHUNK.min(n - c * CHUNK);
        (0..len)
            .map(|_| {
                let a = random_symmetric(&mut r);
                let b = random_symmetric(&mut r);
                weyl_bounds_check(&a, &b)
            })
            .collect::<Vec<_>>()
    });
    let mut s = WeylSummary { samples: n, failures: 0, min_upper_slack: f64::INFINITY, min_lower_slack: f64::INFINITY };
    for w in parts.iter().flatten() {
        s.failures += usize::from(!w.pass);
        s.min_upper_slack = s.min_upper_slack.min(w.upper_slack);
        s.min_lower_slack = s.min_lower_slack.min(w.lower_slack);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_subtrahend_is_tight() {
        let mut r = rng::stream(3, 0);
        let a = random_symmetric(&mut r);
        let w = weyl_bounds_check(&a, &Mat5::zeros());
        assert!(w.pass);
        assert!(w.upper_slack.abs() < 1e-12 && w.lower_slack.abs() < 1e-12);
    }

    #[test]
    fn commuting_diagonals_are_tight() {
        let a = Mat5::from_diagonal(&[5.0, 3.0, 1.0, -2.0, -4.0].into());
        let b = Mat5::from_diagonal(&[1.0, 0.5, 0.25, -1.0, -6.0].into());
        let w = weyl_bounds_check(&a, &b);
        assert!(w.pass);
        assert!(w.upper_slack.abs() < 1e-12 && w.lower_slack.abs() < 1e-12);
    }

    #[test]
    fn random_pairs_pass() {
        let s = run_weyl(11, 10_000, Mode::default_mode());
        assert_eq!(s.failures, 0);
        assert!(s.min_upper_slack >= -1e-9);
        assert_eq!(s, run_weyl(11, 10_000, Mode::Sequential));
    }
}
