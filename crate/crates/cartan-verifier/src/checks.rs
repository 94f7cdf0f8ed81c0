//! The individual checks. Each one is independent: it reads the
//! configuration, may write files under the output directory, and returns a
//! single [`CheckResult`].

use crate::config::SuiteConfig;
use crate::report::{CheckResult, Status};
use cartan_certify::targets::{certify_bound, g_box, normalized_goal, claimed_bounds, resultant_positivity, GBound};
use cartan_certify::{certify, verify_certificate, CertOutcome, Certificate, CertifyOptions, Goal, Margin};
use cartan_exact::exec::Mode;
use cartan_exact::rational::{fmt_rational, int, rat, to_f64};
use cartan_exact::{QuadExt, Rational, Scalar};
use cartan_geometry::cubic::{euler_defect, laplacian};
use cartan_geometry::group::invariant_relabellings;
use cartan_geometry::{check_invariance, CartanCubic, Generator, Stabilizer, Vec5};
use cartan_hyperlab::cubic::run_cubic;
use cartan_hyperlab::experiment::{dump_failures, ExperimentConfig};
use cartan_hyperlab::weyl::run_weyl;
use cartan_hyperlab::{rng, run_experiment};
use cartan_spectrum::charpoly::{EPS, P};
use cartan_spectrum::gfun::GFunction;
use cartan_spectrum::hessian::{hessian_exact, hessian_f64, pythagorean_normal_point, symbolic_tilde, trace_identity_defect};
use cartan_spectrum::identity::{fit_at, fit_symbolic, g_scale, g_value};
use cartan_spectrum::ordering::{branch_crossings, cross_validate, interior, oddness_holds, p0_f64};
use cartan_spectrum::registry::{adjudicate_all, adjudicate_claim, Adjudication, Recomputed, Registry};
use cartan_spectrum::symmat::elementary_symmetric;
use cartan_spectrum::{Branch, NormalFormAlgebra, Resultants};
use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error(transparent)]
    Geometry(#[from] cartan_geometry::GeometryError),
    #[error(transparent)]
    Spectrum(#[from] cartan_spectrum::SpectrumError),
    #[error(transparent)]
    Certify(#[from] cartan_certify::CertifyError),
    #[error(transparent)]
    Lab(#[from] cartan_hyperlab::LabError),
    #[error(transparent)]
    Poly(#[from] cartan_exact::PolyError),
    #[error("I/O on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Other(String),
}

/// Shared inputs of a run.
pub struct Ctx<'a> {
    pub cfg: &'a SuiteConfig,
    pub p5: CartanCubic,
    pub out: PathBuf,
}

impl<'a> Ctx<'a> {
    pub fn new(cfg: &'a SuiteConfig) -> Self {
        Ctx { cfg, p5: cartan_geometry::build_p5(), out: cfg.output_dir.clone() }
    }

    /// Writes `contents` to `rel` under the output directory and returns `rel`.
    pub fn write(&self, rel: &str, contents: &str) -> Result<String, CheckError> {
        let path = self.out.join(rel);
        let io = |source| CheckError::Io { path: path.display().to_string(), source };
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(io)?;
        }
        std::fs::write(&path, contents).map_err(io)?;
        Ok(rel.to_string())
    }

    fn certify_opts(&self) -> CertifyOptions {
        CertifyOptions { depth_limit: self.cfg.depth_limit, ..CertifyOptions::default() }
    }
}

/// Key under which a result lists the files it produced.
pub const FILES: &str = "files";
/// Key under which a result lists the certificates it produced.
pub const CERTIFICATES: &str = "certificates";

pub type CheckFn = Box<dyn Fn(&Ctx) -> Result<CheckResult, CheckError> + Send + Sync>;

fn adjudication_value(a: &Adjudication) -> Value {
    let mut m = Map::new();
    m.insert("location".into(), a.location.clone().into());
    m.insert("target".into(), a.target.clone().into());
    m.insert("verdict".into(), a.verdict.to_string().into());
    if let cartan_spectrum::registry::Verdict::Mismatch { residual, .. } = &a.verdict {
        m.insert("residual".into(), residual.clone().into());
    }
    if let Some(n) = &a.note {
        m.insert("note".into(), n.clone().into());
    }
    Value::Object(m)
}

/// Adjudicates the named claims; DISCREPANCY if any of them mismatches.
fn adjudicate_ids(name: &str, ids: &[&str], what: &str) -> Result<CheckResult, CheckError> {
    let reg = Registry::shipped();
    let rc = Recomputed::shared();
    let mut details = Map::new();
    let mut mismatches = Vec::new();
    for id in ids {
        let claim = reg.get(id).ok_or_else(|| CheckError::Other(format!("claim {id} missing from the registry")))?;
        let a = adjudicate_claim(reg, rc, claim)?.ok_or_else(|| CheckError::Other(format!("claim {id} is a definition")))?;
        if !a.verdict.is_match() {
            mismatches.push(id.to_string());
        }
        details.insert(id.to_string(), adjudication_value(&a));
    }
    let status = if mismatches.is_empty() { Status::Pass } else { Status::Discrepancy };
    let summary = if mismatches.is_empty() {
        format!("printed {what} match the recomputation")
    } else {
        format!("printed {what} differ from the recomputation: {}", mismatches.join(", "))
    };
    let mut r = CheckResult::new(name, status, summary);
    r.details = details;
    Ok(r)
}

// ---------------------------------------------------------------- invariance

pub fn printed_generators(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let mut broken = Vec::new();
    let mut r = CheckResult::new("invariance.printed_generators", Status::Pass, "");
    let mut sets = Vec::new();
    for g in Generator::ALL {
        let v = check_invariance(&ctx.p5, &g.printed())?;
        let fixes = invariant_relabellings(&ctx.p5, &g.printed())?;
        let mut m = Map::new();
        m.insert("invariant".into(), v.pass.into());
        m.insert("remainder_terms".into(), v.remainder.terms().count().into());
        m.insert("repairing_relabellings".into(), fixes.iter().map(|f| f.describe()).collect::<Vec<_>>().into());
        r = r.with(g.name(), Value::Object(m));
        if !v.pass {
            broken.push(g.name());
        }
        sets.push(fixes);
    }
    let common = sets[0].iter().filter(|x| sets[1].contains(x) && sets[2].contains(x)).count();
    r = r.with("common_relabellings", common);
    if broken.is_empty() {
        r.summary = "the printed generators preserve P5 modulo c^2 + s^2 - 1".into();
    } else {
        r.status = Status::Discrepancy;
        r.summary = format!(
            "printed {} do not preserve P5; each is repaired by a signed relabelling of axes, none common to all three",
            broken.join(", ")
        );
    }
    Ok(r)
}

pub fn derived_stabilizer(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let st = Stabilizer::compute(&ctx.p5)?;
    let mut ok = st.basis().len() == 3;
    let mut per = Vec::new();
    for k in 0..st.basis().len() {
        let m = st.exp_symbolic(k);
        let orth = m.orthogonality_defect().is_zero();
        let inv = check_invariance(&ctx.p5, &m)?.pass;
        ok &= orth && inv;
        per.push(json!({ "orthogonal": orth, "invariant": inv }));
    }
    Ok(CheckResult::pass_if(
        "invariance.derived_stabilizer",
        ok,
        "the three one-parameter subgroups of the computed stabilizer algebra preserve P5 exactly",
    )
    .with("dimension", st.basis().len())
    .with("generators", per))
}

// --------------------------------------------------------------- harmonicity

pub fn harmonic(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let lap = laplacian(ctx.p5.poly())?;
    let euler = euler_defect(ctx.p5.poly(), 3)?;
    Ok(CheckResult::pass_if(
        "harmonicity.laplacian",
        lap.is_zero() && euler.is_zero(),
        "the Laplacian of P5 vanishes identically and P5 is homogeneous of degree 3",
    )
    .with("laplacian_terms", lap.terms().count())
    .with("euler_defect_terms", euler.terms().count()))
}

pub fn trace_identity(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let tilde = symbolic_tilde(&ctx.p5)?;
    let defect = trace_identity_defect(&ctx.p5, &tilde);
    Ok(CheckResult::pass_if(
        "harmonicity.trace_identity",
        defect.is_zero(),
        "trace(D^2 w)|x|^(3+delta) + (1+delta)(8-delta)P5 vanishes for symbolic delta",
    )
    .with("defect_terms", defect.terms().count()))
}

pub fn printed_trace(_: &Ctx) -> Result<CheckResult, CheckError> {
    adjudicate_ids("harmonicity.printed_trace_constant", &["trace_constant", "trace_factor"], "trace constants")
}

// ------------------------------------------------------------------ charpoly

pub fn coefficients(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let alg = NormalFormAlgebra::shared();
    let tol = ctx.cfg.tolerances.eigen;
    let fl: Vec<_> = alg.coeffs.iter().map(|c| c.map_coeffs(to_f64)).collect();
    let mut worst = 0.0f64;
    let mut points = 0;
    for i in 0..40 {
        let p = -1.0 + 2.0 * i as f64 / 39.0;
        for j in 0..25 {
            let eps = 0.05 + 0.95 * j as f64 / 24.0;
            let x = Vec5::new(p, 0.0, (1.0 - p * p).max(0.0).sqrt(), 0.0, 0.0);
            let e = elementary_symmetric(&hessian_f64(&ctx.p5, &x, 1.0 - eps)?.eigenvalues());
            for k in 1..=5 {
                let a = fl[k].eval_f64_named(&[(P, p), (EPS, eps)])?;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                worst = worst.max((a - sign * e[k]).abs() / (1.0 + a.abs()));
            }
            points += 1;
        }
    }
    let at: Vec<Rational> = (3..=5)
        .map(|k| alg.coeffs[k].eval(&[(P, int(1)), (EPS, int(1))]))
        .collect::<Result<_, _>>()?;
    Ok(CheckResult::pass_if(
        "spectrum.coefficients",
        worst <= tol,
        format!("a_k = (-1)^k E_k on {points} grid points, worst relative gap {worst:.2e}"),
    )
    .with("grid_points", points)
    .with_f64("worst_relative_gap", worst)
    .with("a3_a4_a5_at_p1_delta0", at.iter().map(fmt_rational).collect::<Vec<_>>()))
}

pub fn printed_coefficients(_: &Ctx) -> Result<CheckResult, CheckError> {
    adjudicate_ids("spectrum.printed_coefficients", &["a1", "a2", "a3", "a4", "a5"], "characteristic coefficients")
}

pub fn registry_table(_: &Ctx) -> Result<CheckResult, CheckError> {
    let all = adjudicate_all(Registry::shipped(), Recomputed::shared())?;
    let matched = all.iter().filter(|a| a.verdict.is_match()).count();
    let mut r = CheckResult::new(
        "spectrum.registry",
        if matched == all.len() { Status::Pass } else { Status::Discrepancy },
        format!("{matched} of {} printed formulas match the recomputation", all.len()),
    );
    for a in &all {
        r = r.with(&a.id, adjudication_value(a));
    }
    Ok(r)
}

// ------------------------------------------------------------------ identity

pub fn identity_fit(_: &Ctx) -> Result<CheckResult, CheckError> {
    let alg = NormalFormAlgebra::shared();
    let sym = fit_symbolic(alg)?;
    let mut ok = sym.residual_is_zero();
    let mut agree = 0;
    for k in 1..=20 {
        let e = rat(k, 20);
        let f = fit_at(alg, &e)?;
        if f.residual_is_zero() && sym.at(&e) == Some([f.c5.clone(), f.c3.clone(), f.c1.clone()]) {
            agree += 1;
        }
    }
    ok &= agree == 20;
    let f0 = fit_at(alg, &int(1))?;
    let constraint = &f0.c5 * int(-32768) + &f0.c3 * int(11776) - &f0.c1 * int(3808);
    ok &= constraint == int(392);
    Ok(CheckResult::pass_if(
        "identity.fit",
        ok,
        "E5 = c5 E1^5 + c3 E1^3 E2 + c1 E1 E4 with zero residual for symbolic eps and at 20 rational eps",
    )
    .with("symbolic_residual_zero", sym.residual_is_zero())
    .with("rational_fits_agreeing", agree)
    .with("single_point_constraint", fmt_rational(&constraint))
    .with("c5", sym.c5.to_string())
    .with("c3", sym.c3.to_string())
    .with("c1", sym.c1.to_string()))
}

pub fn printed_identity(_: &Ctx) -> Result<CheckResult, CheckError> {
    adjudicate_ids("identity.printed_coefficients", &["e5", "e3", "e1"], "identity coefficients")
}

const PYTHAGOREAN: [(i64, i64); 10] = [(1, 0), (2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (5, 2), (5, 4), (1, 1), (1, 2)];

pub fn identity_residual(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let alg = NormalFormAlgebra::shared();
    let tilde = symbolic_tilde(&ctx.p5)?;
    let mut exact_zero = 0;
    let mut exact_total = 0;
    for d in 0..10 {
        let delta = rat(d, 10);
        let fit = fit_at(alg, &(int(1) - &delta))?;
        let c: [QuadExt; 3] = [fit.c5, fit.c3, fit.c1].map(QuadExt::rational);
        for (m, n) in PYTHAGOREAN {
            let x = pythagorean_normal_point(m, n);
            let h = hessian_exact(&tilde, &x, &delta)?;
            let h = h.on_sphere().ok_or_else(|| CheckError::Other("normal point off the sphere".into()))?;
            let cp = h.charpoly();
            let e: Vec<QuadExt> = (0..=5).map(|k| if k % 2 == 0 { cp[k].clone() } else { cp[k].negated() }).collect();
            let e1_3 = e[1].times(&e[1]).times(&e[1]);
            let g = e[5]
                .minus(&c[0].times(&e1_3).times(&e[1]).times(&e[1]))
                .minus(&c[1].times(&e1_3).times(&e[2]))
                .minus(&c[2].times(&e[1]).times(&e[4]));
            exact_total += 1;
            exact_zero += usize::from(g.is_zero());
        }
    }
    let gf = GFunction::shared();
    let mut r = rng::stream(ctx.cfg.seed, 0xFACE);
    let mut worst = 0.0f64;
    let float_total = 1000;
    for _ in 0..float_total {
        let x = Vec5::from_fn(|_, _| r.sample::<f64, _>(StandardNormal)) * r.random_range(0.2..2.0);
        let delta = r.random_range(0..10) as f64 / 10.0;
        let e = elementary_symmetric(&hessian_f64(&ctx.p5, &x, delta)?.eigenvalues());
        let c = gf.c_f64(1.0 - delta);
        worst = worst.max(g_value(c, &e).abs() / g_scale(c, &e));
    }
    let tol = ctx.cfg.tolerances.identity;
    Ok(CheckResult::pass_if(
        "identity.residual",
        exact_zero == exact_total && worst <= tol,
        format!(
            "g vanishes exactly at {exact_zero}/{exact_total} rational normal-form points; worst relative residual {worst:.2e} at {float_total} random points"
        ),
    )
    .with("exact_points", exact_total)
    .with("exact_zero", exact_zero)
    .with("float_points", float_total)
    .with_f64("worst_relative_residual", worst))
}

// ------------------------------------------------------------------ ordering

pub fn ordering_grid(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let alg = NormalFormAlgebra::shared();
    let mut worst = 0.0f64;
    let mut points = 0;
    for d in 0..10 {
        let eps = 1.0 - d as f64 / 10.0;
        for k in -512..=512 {
            worst = worst.max(cross_validate(&ctx.p5, alg, k as f64 / 512.0, eps)?);
            points += 1;
        }
    }
    let tol = ctx.cfg.tolerances.eigen;
    Ok(CheckResult::pass_if(
        "ordering.grid",
        worst <= tol,
        format!("sorted eigenvalues match the closed-form branch order at {points} points, worst gap {worst:.2e}"),
    )
    .with("points", points)
    .with_f64("worst_gap", worst))
}

pub fn ordering_oddness(_: &Ctx) -> Result<CheckResult, CheckError> {
    let alg = NormalFormAlgebra::shared();
    let mut fails = Vec::new();
    let mut total = 0;
    for e in [int(1), rat(3, 4), rat(1, 2), rat(1, 4), rat(1, 20)] {
        for k in 0..=32 {
            let p = rat(k, 32);
            total += 1;
            if !oddness_holds(alg, &p, &e)? {
                fails.push(format!("p={}, eps={}", fmt_rational(&p), fmt_rational(&e)));
            }
        }
    }
    Ok(CheckResult::pass_if(
        "ordering.oddness",
        fails.is_empty(),
        format!("lambda_i(-p) = -lambda_(6-i)(p) exactly at {} of {total} rational points", total - fails.len()),
    )
    .with("points", total)
    .with("failures", fails))
}

pub fn ordering_crossings(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let alg = NormalFormAlgebra::shared();
    let res = Resultants::shared();
    let mut ok = true;
    let mut per = Map::new();
    let mut deltas: Vec<Rational> = (0..10).map(|k| rat(k, 10)).chain(ctx.cfg.deltas.iter().cloned()).collect();
    deltas.sort();
    deltas.dedup();
    for delta in &deltas {
        let eps = int(1) - delta;
        let all = branch_crossings(alg, res, &eps)?;
        let inner = interior(&all);
        let p0 = p0_f64(to_f64(&eps));
        let list: Vec<Value> = inner
            .iter()
            .map(|c| {
                json!({
                    "pair": format!("{}/{}", c.pair.0.name(), c.pair.1.name()),
                    "p": c.p_approx,
                    "contains_p0": c.contains_p0,
                })
            })
            .collect();
        let good = if delta.is_zero() {
            inner.is_empty()
                && all.iter().any(|c| c.root.exact == Some(int(1)) && c.pair == (Branch::L, Branch::APlus) && c.contains_p0)
        } else {
            !inner.is_empty() && inner.iter().all(|c| c.contains_p0)
        };
        ok &= good;
        per.insert(fmt_rational(delta), json!({ "p0": p0, "interior_crossings": list, "consistent": good }));
    }
    let mut r = CheckResult::pass_if(
        "ordering.crossings",
        ok,
        "branch crossings are isolated exactly; at delta = 0 the only crossing is at p = 1, otherwise at -p0 and p0",
    );
    r.details = per;
    Ok(r)
}

// ---------------------------------------------------------------- positivity

fn cert_name(b: &GBound) -> String {
    let br = b.branch.name().replace('+', "plus").replace('-', "minus");
    format!("{}_{}", b.name, br)
}

fn write_cert(ctx: &Ctx, rel: &str, c: &Certificate) -> Result<String, CheckError> {
    let text = c.to_json()?;
    ctx.write(rel, &text)
}

fn positivity_bound(ctx: &Ctx, bound: &GBound) -> Result<CheckResult, CheckError> {
    let rc = Recomputed::shared();
    let gf = GFunction::shared();
    let mut bound = bound.clone();
    if let Some(k) = ctx.cfg.margins.get(bound.name) {
        bound.claimed = k.clone();
    }
    let name = format!("positivity.{}[{}]", bound.name, bound.branch.name());
    let rep = certify_bound(gf, &rc.norm, &bound, &ctx.cfg.epsilon_min, &ctx.certify_opts(), true)?;
    let stem = cert_name(&bound);
    let claim = format!("{} > {}", bound.name, bound.margin());
    if !rep.den_positive {
        return Ok(CheckResult::new(&name, Status::Fail, "normalization denominator not certified positive"));
    }
    match &rep.outcome {
        CertOutcome::Certified(c) => {
            let goal = normalized_goal(gf, &rc.norm, bound.branch, &bound.margin());
            let replay = verify_certificate(c, &goal)?;
            let file = write_cert(ctx, &format!("certificates/{stem}.json"), c)?;
            Ok(CheckResult::pass_if(&name, replay, format!("{claim} certified on {} and replayed", g_box(&ctx.cfg.epsilon_min)))
                .with("leaves", c.leaf_count)
                .with("max_depth", c.max_depth)
                .with("replay", replay)
                .with(CERTIFICATES, vec![file]))
        }
        other => {
            let mut r = CheckResult::new(&name, Status::Discrepancy, format!("{claim} not certified ({})", other.label()));
            if let CertOutcome::CounterexampleCandidate(cx) = other {
                r = r.with("counterexample", cx.point.iter().map(fmt_rational).collect::<Vec<_>>());
            }
            if let Some((k, c)) = &rep.largest {
                let file = write_cert(ctx, &format!("certificates/{stem}_largest.json"), c)?;
                r.summary += &format!("; largest certified constant {}", fmt_rational(k));
                r = r.with("largest_constant", fmt_rational(k)).with(CERTIFICATES, vec![file]);
            }
            Ok(r)
        }
    }
}

pub fn positivity_radicand(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let d = NormalFormAlgebra::shared().disc_a_quarter();
    let goal = Goal::positive(d, Margin::zero());
    let out = certify(&goal, &g_box(&ctx.cfg.epsilon_min), &ctx.certify_opts())?;
    match out {
        CertOutcome::Certified(c) => {
            let replay = verify_certificate(&c, &goal)?;
            let file = write_cert(ctx, "certificates/radicand_D.json", &c)?;
            Ok(CheckResult::pass_if("positivity.radicand_D", replay, "D(p, eps) > 0 certified and replayed")
                .with("leaves", c.leaf_count)
                .with("max_depth", c.max_depth)
                .with(CERTIFICATES, vec![file]))
        }
        other => Ok(CheckResult::new("positivity.radicand_D", Status::Fail, format!("D > 0 not certified ({})", other.label()))),
    }
}

pub fn positivity_resultant(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let rep = resultant_positivity(&Resultants::shared().r, &ctx.certify_opts())?;
    let mut files = Vec::new();
    for (tag, o) in [("resultant_U", &rep.u_positive), ("resultant_Y", &rep.y_bound)] {
        if let Some(c) = o.certificate() {
            files.push(write_cert(ctx, &format!("certificates/{tag}.json"), c)?);
        }
    }
    let direct = match &rep.direct {
        CertOutcome::CounterexampleCandidate(cx) => {
            format!("zero at (q, eps) = ({})", cx.point.iter().map(fmt_rational).collect::<Vec<_>>().join(", "))
        }
        o => o.label().to_string(),
    };
    Ok(CheckResult::pass_if(
        "positivity.resultant_r",
        rep.confirmed(),
        "r = (1-q)U + (1-eps^2)Y with U > 0 and Y > 179 certified, so r > 0 on the open box; r vanishes only at the corner q = eps = 1",
    )
    .with("identity_holds", rep.identity_holds)
    .with("u_positive", rep.u_positive.label())
    .with("y_above_179", rep.y_bound.label())
    .with("direct_attempt", direct)
    .with(CERTIFICATES, files))
}

// ------------------------------------------------------------- hyperbolicity

pub fn hyperbolicity(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let cfg = ExperimentConfig {
        seed: ctx.cfg.seed,
        deltas: ctx.cfg.deltas.clone(),
        samples: ctx.cfg.samples,
        mode: Mode::default_mode(),
        ..ExperimentConfig::default()
    };
    let reports = run_experiment(&ctx.p5, &cfg)?;
    std::fs::create_dir_all(&ctx.out).map_err(|source| CheckError::Io { path: ctx.out.display().to_string(), source })?;
    let path = ctx.out.join("hyperbolicity_failures.jsonl");
    let dumped = dump_failures(&path, &reports)?;
    let ok = reports.iter().all(|r| r.passed() && r.max_trace_residual <= ctx.cfg.tolerances.trace);
    let mut r = CheckResult::pass_if(
        "hyperbolicity.ratio_bound",
        ok,
        format!(
            "{} samples per delta with adversarial refinement; {dumped} violations of 1/C <= -L1/L5 <= C",
            ctx.cfg.samples
        ),
    );
    for rep in &reports {
        r = r.with(
            &format!("delta={}", rep.delta),
            json!({
                "C": rep.c,
                "min_ratio": rep.min_ratio,
                "max_ratio": rep.max_ratio,
                "refined_min_ratio": rep.refined_min_ratio,
                "refined_max_ratio": rep.refined_max_ratio,
                "worst_log_margin": rep.refined_worst_margin,
                "degenerate": rep.degenerate,
                "violations": rep.failures.len(),
                "swap_mismatches": rep.swap_mismatches,
                "trace_step_violations": rep.trace_step_violations,
                "max_trace_residual": rep.max_trace_residual,
            }),
        );
    }
    Ok(r.with(FILES, vec!["hyperbolicity_failures.jsonl"])
        .with("note", "checked against the stated C(delta) only; the alternative constant 10^4 is not tested"))
}

// -------------------------------------------------------------------- lemmas

pub fn lemma_weyl(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let s = run_weyl(ctx.cfg.seed, ctx.cfg.lemma_samples, Mode::default_mode());
    Ok(CheckResult::pass_if(
        "lemmas.weyl",
        s.failures == 0,
        format!("{} random symmetric pairs, {} failures", s.samples, s.failures),
    )
    .with("samples", s.samples)
    .with("failures", s.failures)
    .with_f64("min_upper_slack", s.min_upper_slack)
    .with_f64("min_lower_slack", s.min_lower_slack))
}

pub fn lemma_cubic(ctx: &Ctx) -> Result<CheckResult, CheckError> {
    let s = run_cubic(ctx.cfg.seed, ctx.cfg.lemma_samples, Mode::default_mode());
    let events: Vec<String> = s.root_events.iter().take(20).map(|e| format!("{e:?}")).collect();
    Ok(CheckResult::pass_if(
        "lemmas.cubic",
        s.failures.is_empty() && s.root_events.is_empty(),
        format!(
            "{} admissible (W, W', K, delta) samples, {} outside [rho, 1/rho], {} complex-root events",
            s.samples,
            s.failures.len(),
            s.root_events.len()
        ),
    )
    .with("samples", s.samples)
    .with("failures", s.failures.len())
    .with("complex_root_events", events)
    .with_f64("min_ratio_over_rho", s.lower_slack)
    .with_f64("min_inverse_rho_over_ratio", s.upper_slack))
}

/// Positivity checks, one per theorem bound, then `D` and `r`.
pub fn positivity_checks() -> Vec<(String, CheckFn)> {
    let mut v: Vec<(String, CheckFn)> = claimed_bounds()
        .into_iter()
        .map(|b| {
            let name = format!("positivity.{}[{}]", b.name, b.branch.name());
            let f: CheckFn = Box::new(move |ctx: &Ctx| positivity_bound(ctx, &b));
            (name, f)
        })
        .collect();
    v.push(("positivity.radicand_D".into(), Box::new(positivity_radicand)));
    v.push(("positivity.resultant_r".into(), Box::new(positivity_resultant)));
    v
}
