//! Numeric reduction of a unit vector `x` to `(p, 0, q, 0, 0)` with `q ≥ 0`:
//! find `g = exp(φ₁X₁)exp(φ₂X₂)exp(φ₃X₃)` and `χ` with
//! `g·(cos χ, 0, sin χ, 0, 0) = x` by damped Gauss–Newton from seeded starts.

use crate::cubic::{normal_form_value, CartanCubic};
use crate::stabilizer::Stabilizer;
use crate::{GeometryError, Mat5, Vec5};
use cartan_exact::exec::{self, Mode};
use nalgebra::{Matrix4, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

#[derive(Clone, Debug)]
pub struct ReduceConfig {
    pub tol: f64,
    pub restarts: usize,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        ReduceConfig { tol: 1e-10, restarts: 32, max_iter: 200, seed: 0x5eed }
    }
}

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub p: f64,
    pub q: f64,
    /// `reducer·(p, 0, q, 0, 0)ᵀ ≈ x`.
    pub reducer: Mat5,
    pub angles: [f64; 3],
    pub residual: f64,
    /// Whether `p` came from inverting `(3p − p³)/2 = P₅(x)`; near `p = ±1`
    /// that inversion is ill-conditioned and the solver's `cos χ` is used.
    pub p_from_cubic: bool,
}

/// Solves `(3p − p³)/2 = v` on `[−1, 1]` by bisection.
pub fn solve_p(v: f64) -> f64 {
    let v = v.clamp(-1.0, 1.0);
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if normal_form_value(mid) < v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn circle(chi: f64) -> Vec5 {
    Vec5::new(chi.cos(), 0.0, chi.sin(), 0.0, 0.0)
}

struct Solver<'a> {
    st: &'a Stabilizer,
    xs: [Mat5; 3],
}

impl Solver<'_> {
    fn factors(&self, th: &Vector4<f64>) -> [Mat5; 3] {
        std::array::from_fn(|k| self.st.exp(k, th[k]))
    }

    fn residual(&self, th: &Vector4<f64>, x: &Vec5) -> (Vec5, [Mat5; 3]) {
        let f = self.factors(th);
        (f[0] * f[1] * f[2] * circle(th[3]) - x, f)
    }

    /// Levenberg–Marquardt from `th`; returns the final parameters and `|r|`.
    fn run(&self, mut th: Vector4<f64>, x: &Vec5, max_iter: usize) -> (Vector4<f64>, f64) {
        let (mut r, mut f) = self.residual(&th, x);
        let mut cost = r.norm_squared();
        let mut lambda = 1e-3;
        for _ in 0..max_iter {
            if cost < 1e-30 {
                break;
            }
            let n = circle(th[3]);
            let dn = Vec5::new(-th[3].sin(), 0.0, th[3].cos(), 0.0, 0.0);
            let mut j = nalgebra::SMatrix::<f64, 5, 4>::zeros();
            j.set_column(0, &(self.xs[0] * f[0] * f[1] * f[2] * n));
            j.set_column(1, &(f[0] * self.xs[1] * f[1] * f[2] * n));
            j.set_column(2, &(f[0] * f[1] * self.xs[2] * f[2] * n));
            j.set_column(3, &(f[0] * f[1] * f[2] * dn));
            let jtj = j.transpose() * j;
            let g = j.transpose() * r;
            let mut improved = false;
            for _ in 0..12 {
                let a = jtj + Matrix4::from_diagonal(&jtj.diagonal().map(|d| lambda * (d + 1e-12)));
                let Some(step) = a.lu().solve(&(-g)) else {
                    lambda *= 10.0;
                    continue;
                };
                let cand = th + step;
                let (rc, fc) = self.residual(&cand, x);
                let cc = rc.norm_squared();
                if cc < cost {
                    th = cand;
                    r = rc;
                    f = fc;
                    let small = (cost - cc) <= 1e-16 * cost;
                    cost = cc;
                    lambda = (lambda * 0.3).max(1e-12);
                    improved = !small;
                    break;
                }
                lambda *= 10.0;
            }
            if !improved {
                break;
            }
        }
        (th, cost.sqrt())
    }
}

/// Reduces one unit vector. Restarts are drawn from a stream seeded by
/// `cfg.seed` and `stream`.
pub fn reduce_with(
    p5: &CartanCubic,
    st: &Stabilizer,
    x: &Vec5,
    cfg: &ReduceConfig,
    stream: u64,
) -> Result<NormalForm, GeometryError> {
    let norm = x.norm();
    if (norm - 1.0).abs() > cfg.tol {
        return Err(GeometryError::NotUnit { norm, tol: cfg.tol });
    }
    if x[1] == 0.0 && x[3] == 0.0 && x[4] == 0.0 && x[2] >= 0.0 {
        let residual = (Vec5::new(x[0], 0.0, x[2], 0.0, 0.0) - x).norm();
        return Ok(NormalForm { p: x[0], q: x[2], reducer: Mat5::identity(), angles: [0.0; 3], residual, p_from_cubic: false });
    }
    let solver = Solver { st, xs: [st.numeric(0), st.numeric(1), st.numeric(2)] };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let mut best: Option<(Vector4<f64>, f64)> = None;
    for attempt in 0..cfg.restarts.max(1) {
        let start = if attempt == 0 {
            Vector4::new(0.0, 0.0, 0.0, x[2].atan2(x[0]))
        } else {
            Vector4::new(rng.random::<f64>() * TAU, rng.random::<f64>() * TAU, rng.random::<f64>() * TAU, rng.random::<f64>() * TAU)
        };
        let (th, res) = solver.run(start, x, cfg.max_iter);
        if best.as_ref().is_none_or(|b| res < b.1) {
            best = Some((th, res));
        }
        if res <= cfg.tol * 1e-2 {
            break;
        }
    }
    let (th, solver_res) = best.unwrap();
    if solver_res > cfg.tol {
        return Err(GeometryError::NoConvergence { attempts: cfg.restarts, best_residual: solver_res });
    }
    let f = solver.factors(&th);
    let mut reducer = f[0] * f[1] * f[2];
    if th[3].sin() < 0.0 {
        let k = st.flip_index().ok_or_else(|| GeometryError::Algebra("no half-turn flipping z1".into()))?;
        reducer *= st.exp(k, std::f64::consts::PI);
    }
    let finish = |p: f64| {
        let q = (1.0 - p * p).max(0.0).sqrt();
        (q, (reducer * Vec5::new(p, 0.0, q, 0.0, 0.0) - x).norm())
    };
    let p_cubic = solve_p(p5.eval(x) / norm.powi(3));
    let (q, residual) = finish(p_cubic);
    let mut out = NormalForm { p: p_cubic, q, reducer, angles: [th[0], th[1], th[2]], residual, p_from_cubic: true };
    if residual > cfg.tol {
        let p_chi = th[3].cos();
        let (q, residual) = finish(p_chi);
        out = NormalForm { p: p_chi, q, residual, p_from_cubic: false, ..out };
    }
    if out.residual > cfg.tol {
        return Err(GeometryError::NoConvergence { attempts: cfg.restarts, best_residual: out.residual });
    }
    Ok(out)
}

pub fn reduce_to_normal_form(x: &Vec5, cfg: &ReduceConfig) -> Result<NormalForm, GeometryError> {
    let p5 = crate::build_p5();
    let st = Stabilizer::compute(&p5)?;
    reduce_with(&p5, &st, x, cfg, 0)
}

/// Reduces a batch; point `i` uses restart stream `i`, so results do not
/// depend on the execution mode.
pub fn reduce_batch(xs: &[Vec5], cfg: &ReduceConfig, mode: Mode) -> Result<Vec<Result<NormalForm, GeometryError>>, GeometryError> {
    let p5 = crate::build_p5();
    let st = Stabilizer::compute(&p5)?;
    Ok(exec::map_range(mode, xs.len(), |i| reduce_with(&p5, &st, &xs[i], cfg, i as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_points_are_fixed() {
        let x = Vec5::new(0.6, 0.0, 0.8, 0.0, 0.0);
        let nf = reduce_to_normal_form(&x, &ReduceConfig::default()).unwrap();
        assert_eq!(nf.reducer, Mat5::identity());
        assert_eq!(nf.residual, 0.0);
        assert_eq!((nf.p, nf.q), (0.6, 0.8));
    }

    #[test]
    fn e2_reduces_to_p_zero() {
        let x = Vec5::new(0.0, 1.0, 0.0, 0.0, 0.0);
        let nf = reduce_to_normal_form(&x, &ReduceConfig::default()).unwrap();
        assert!(nf.p.abs() < 1e-12);
        assert!((nf.q - 1.0).abs() < 1e-12);
        assert!(nf.residual <= 1e-12);
    }

    #[test]
    fn negative_q_is_flipped() {
        let x = Vec5::new(0.6, 0.0, -0.8, 0.0, 0.0);
        let nf = reduce_to_normal_form(&x, &ReduceConfig::default()).unwrap();
        assert!(nf.q >= 0.0);
        assert!(nf.residual <= 1e-10);
    }

    #[test]
    fn rejects_non_unit() {
        let x = Vec5::new(2.0, 0.0, 0.0, 0.0, 0.0);
        assert!(matches!(reduce_to_normal_form(&x, &ReduceConfig::default()), Err(GeometryError::NotUnit { .. })));
    }

    #[test]
    fn cubic_inversion() {
        for &p in &[-1.0, -0.5, 0.0, 0.3, 0.99] {
            assert!((solve_p(normal_form_value(p)) - p).abs() < 1e-7);
        }
        assert!((solve_p(normal_form_value(0.3)) - 0.3).abs() < 1e-15);
    }
}
