//! The seeded ratio-bound experiment with adversarial refinement.

use crate::orthogonal::{random_orthogonal, Orthogonal5};
use crate::ratio::{check_ratio_bound, RatioCheck};
use crate::sample::{delta_matrix_spectrum, HyperbolicitySample};
use crate::{rng, LabError};
use cartan_exact::exec::{self, Mode};
use cartan_exact::rational::{fmt_rational, rat, to_f64};
use cartan_exact::Rational;
use cartan_geometry::{CartanCubic, Vec5};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub deltas: Vec<Rational>,
    /// Random samples per `δ`.
    pub samples: usize,
    /// Radius exponent: `|b| = U^γ` or `1 − U^γ`, so `γ > 1` crowds `|b|`
    /// towards both `0` and `1`.
    pub gamma: f64,
    /// Worst random samples used as starting points for coordinate descent.
    pub refine_starts: usize,
    /// Cap on descent sweeps per start.
    pub refine_sweeps: usize,
    pub mode: Mode,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0x5eed,
            deltas: vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4)],
            samples: 100_000,
            gamma: 3.0,
            refine_starts: 8,
            refine_sweeps: 60,
            mode: Mode::default_mode(),
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), LabError> {
        if self.samples == 0 {
            return Err(LabError::Config("samples must be at least 1".into()));
        }
        if self.deltas.iter().any(|d| to_f64(d) < 0.0 || to_f64(d) >= 1.0) {
            return Err(LabError::Config("every delta must lie in [0, 1)".into()));
        }
        if !(self.gamma > 0.0) {
            return Err(LabError::Config("gamma must be positive".into()));
        }
        Ok(())
    }
}

/// Everything needed to re-examine a violation offline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub index: usize,
    pub a: [f64; 5],
    pub b: [f64; 5],
    pub o: [[f64; 5]; 5],
    pub delta: String,
    pub lambda: [f64; 5],
    pub ratio: f64,
    pub c: f64,
}

impl FailureRecord {
    fn new(index: usize, s: &HyperbolicitySample) -> Self {
        FailureRecord {
            index,
            a: std::array::from_fn(|i| s.a[i]),
            b: std::array::from_fn(|i| s.b[i]),
            o: s.o.rows(),
            delta: fmt_rational(&s.delta),
            lambda: s.lambda,
            ratio: s.ratio,
            c: s.c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub delta: String,
    pub c: f64,
    pub samples: usize,
    pub degenerate: usize,
    pub failures: Vec<FailureRecord>,
    pub max_ratio: f64,
    pub min_ratio: f64,
    pub worst_margin: f64,
    /// Extremes after adversarial refinement (they include the random ones).
    pub refined_max_ratio: f64,
    pub refined_min_ratio: f64,
    pub refined_worst_margin: f64,
    /// Samples where the swapped evaluation gave a different verdict or a
    /// ratio other than the reciprocal.
    pub swap_mismatches: usize,
    /// Trace-nonnegative samples with `4Λ₁ + Λ₅ < 0`.
    pub trace_step_violations: usize,
    pub max_trace_residual: f64,
}

impl DeltaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.swap_mismatches == 0 && self.trace_step_violations == 0 && self.max_trace_residual <= 1e-9
    }
}

fn unit_gaussian<R: Rng + ?Sized>(r: &mut R) -> Vec5 {
    loop {
        let v = Vec5::from_fn(|_, _| r.sample::<f64, _>(StandardNormal));
        let n = v.norm();
        if n > 1e-8 {
            return v / n;
        }
    }
}

/// One input triple, normalized so that `|a| = 1 ≥ |b| > 0`.
pub fn draw_input<R: Rng + ?Sized>(r: &mut R, gamma: f64) -> (Vec5, Vec5, Orthogonal5) {
    let a = unit_gaussian(r);
    let dir = unit_gaussian(r);
    let radius = loop {
        let u: f64 = r.random();
        let x = if r.random::<bool>() { u.powf(gamma) } else { 1.0 - u.powf(gamma) };
        if x > 1e-6 {
            break x;
        }
    };
    let o = random_orthogonal(r);
    (a, dir * radius, o)
}

struct Evaluated {
    sample: HyperbolicitySample,
    check: Option<RatioCheck>,
    swap_ok: bool,
    trace_ok: bool,
}

fn evaluate(p5: &CartanCubic, a: &Vec5, b: &Vec5, o: &Orthogonal5, delta: &Rational) -> Result<Evaluated, LabError> {
    let sample = delta_matrix_spectrum(p5, a, b, o, delta)?;
    let check = check_ratio_bound(&sample);
    // (b, a, Oᵀ) gives −O·M·Oᵀ, whose ratio is the reciprocal.
    let swapped = delta_matrix_spectrum(p5, b, a, &o.transpose(), delta)?;
    let swap_ok = match (check, check_ratio_bound(&swapped)) {
        (Some(x), Some(y)) => x.pass == y.pass && (x.ratio * y.ratio - 1.0).abs() <= 1e-6,
        (None, None) => true,
        _ => false,
    };
    let l = &sample.lambda;
    let tol = 1e-9 * sample.scale.max(1.0);
    let trace_ok = sample.degenerate || sample.trace < 0.0 || 4.0 * l[0] + l[4] >= -tol;
    Ok(Evaluated { sample, check, swap_ok, trace_ok })
}

const CHUNK: usize = 512;
const TAG: u32 = 1;

fn margin_of(p5: &CartanCubic, a: &Vec5, b: &Vec5, o: &Orthogonal5, delta: &Rational) -> f64 {
    match delta_matrix_spectrum(p5, a, b, o, delta).ok().as_ref().and_then(check_ratio_bound) {
        Some(c) => c.margin,
        None => f64::INFINITY,
    }
}

/// Coordinate descent on the margin over `a` (on the sphere), `b` (in the
/// ball) and `O` (by plane rotations), starting from a sample.
pub fn refine(p5: &CartanCubic, start: &HyperbolicitySample, sweeps: usize) -> HyperbolicitySample {
    let delta = &start.delta;
    let (mut a, mut b, mut o) = (start.a, start.b, start.o.clone());
    let mut best = margin_of(p5, &a, &b, &o, delta);
    let mut h = 0.1;
    for _ in 0..sweeps {
        let mut improved = false;
        for coord in 0..20 {
            for sign in [1.0, -1.0] {
                let step = sign * h;
                let (mut na, mut nb, mut no) = (a, b, o.clone());
                match coord {
                    0..=4 => {
                        na[coord] += step;
                        na = na.normalize();
                    }
                    5..=9 => {
                        nb[coord - 5] += step * nb.norm();
                        let n = nb.norm();
                        if n > 1.0 {
                            nb /= n;
                        }
                        if nb.norm() < 1e-6 {
                            continue;
                        }
                    }
                    _ => {
                        let k = coord - 10;
                        let (i, j) = PLANES[k];
                        no = o.rotate(i, j, step);
                    }
                }
                let m = margin_of(p5, &na, &nb, &no, delta);
                if m < best {
                    best = m;
                    (a, b, o) = (na, nb, no);
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
            if h < 1e-6 {
                break;
            }
        }
    }
    delta_matrix_spectrum(p5, &a, &b, &o, delta).expect("refined points stay nonzero")
}

const PLANES: [(usize, usize); 10] = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn run_delta(p5: &CartanCubic, cfg: &ExperimentConfig, di: usize, delta: &Rational) -> Result<DeltaReport, LabError> {
    let n = cfg.samples;
    let chunks = n.div_ceil(CHUNK);
    let parts = exec::map_range(cfg.mode, chunks, |c| -> Result<Vec<Evaluated>, LabError> {
        let mut r = rng::stream(cfg.seed, rng::stream_id(TAG, ((di as u64) << 32) | c as u64));
        let len = CHUNK.min(n - c * CHUNK);
        (0..len)
            .map(|_| {
                let (a, b, o) = draw_input(&mut r, cfg.gamma);
                evaluate(p5, &a, &b, &o, delta)
            })
            .collect()
    });
    let mut rep = DeltaReport {
        delta: fmt_rational(delta),
        c: crate::ratio::ratio_constant_f64(to_f64(delta)),
        samples: n,
        degenerate: 0,
        failures: vec![],
        max_ratio: f64::NEG_INFINITY,
        min_ratio: f64::INFINITY,
        worst_margin: f64::INFINITY,
        refined_max_ratio: f64::NEG_INFINITY,
        refined_min_ratio: f64::INFINITY,
        refined_worst_margin: f64::INFINITY,
        swap_mismatches: 0,
        trace_step_violations: 0,
        max_trace_residual: 0.0,
    };
    let mut ranked: Vec<(f64, usize, HyperbolicitySample)> = Vec::new();
    let mut index = 0;
    for part in parts {
        for e in part? {
            rep.swap_mismatches += usize::from(!e.swap_ok);
            rep.trace_step_violations += usize::from(!e.trace_ok);
            rep.max_trace_residual = rep.max_trace_residual.max(e.sample.trace_residual());
            match e.check {
                None => rep.degenerate += 1,
                Some(c) => {
                    rep.max_ratio = rep.max_ratio.max(c.ratio);
                    rep.min_ratio = rep.min_ratio.min(c.ratio);
                    rep.worst_margin = rep.worst_margin.min(c.margin);
                    if !c.pass {
                        rep.failures.push(FailureRecord::new(index, &e.sample));
                    }
                    ranked.push((c.margin, index, e.sample));
                }
            }
            index += 1;
        }
    }
    ranked.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
    // Starts: the smallest margins among ratios above and below one, so both
    // ends of the bound are attacked.
    let mut starts: Vec<&(f64, usize, HyperbolicitySample)> = Vec::new();
    let half = cfg.refine_starts.div_ceil(2);
    starts.extend(ranked.iter().filter(|x| x.2.ratio >= 1.0).take(half));
    starts.extend(ranked.iter().filter(|x| x.2.ratio < 1.0).take(cfg.refine_starts - half.min(cfg.refine_starts)));
    let refined = exec::map(cfg.mode, &starts, |s| refine(p5, &s.2, cfg.refine_sweeps));
    rep.refined_max_ratio = rep.max_ratio;
    rep.refined_min_ratio = rep.min_ratio;
    rep.refined_worst_margin = rep.worst_margin;
    for (s, start) in refined.iter().zip(&starts) {
        if let Some(c) = check_ratio_bound(s) {
            rep.refined_max_ratio = rep.refined_max_ratio.max(c.ratio);
            rep.refined_min_ratio = rep.refined_min_ratio.min(c.ratio);
            rep.refined_worst_margin = rep.refined_worst_margin.min(c.margin);
            if !c.pass {
                rep.failures.push(FailureRecord::new(n + start.1, s));
            }
        }
    }
    Ok(rep)
}

/// Runs every `δ` of the configuration. Results depend only on the seed and
/// the configuration, not on the number of workers.
pub fn run_experiment(p5: &CartanCubic, cfg: &ExperimentConfig) -> Result<Vec<DeltaReport>, LabError> {
    cfg.validate()?;
    cfg.deltas.iter().enumerate().map(|(i, d)| run_delta(p5, cfg, i, d)).collect()
}

/// One JSON record per line.
pub fn dump_failures(path: &Path, reports: &[DeltaReport]) -> Result<usize, LabError> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    let mut n = 0;
    for r in reports {
        for rec in &r.failures {
            serde_json::to_writer(&mut f, rec)?;
            f.write_all(b"\n")?;
            n += 1;
        }
    }
    f.flush()?;
    Ok(n)
}
