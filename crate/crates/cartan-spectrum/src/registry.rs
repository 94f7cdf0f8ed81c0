//! Printed formulas as data, and their adjudication against the
//! recomputation.
//!
//! The registry file is `data/claims.toml`. Targets name recomputed
//! quantities:
//!
//! | target | value |
//! |---|---|
//! | `root:X` | branch `X` of the spectrum, `X ∈ {L, A+, A-, B+, B-}` |
//! | `discA/4`, `sqrt:discA/4` | radicand of the `A` roots and its square root |
//! | `aK` | characteristic coefficient in `(b, ε)` |
//! | `H[i,j]`, `2H[i,j]` | normal-form Hessian entry in `(p, q, ε)` |
//! | `F:L`, `F:A`, `F:B` | monic factors in `S` |
//! | `c5`, `c3`, `c1` | fitted identity coefficients |
//! | `Res:X,Y`, `Res:X,Y monic` | resultants in `S` |
//! | `r`, `r_eps`, `r_eps_p` | `r`, `(∂r/∂ε)/(4ε)`, `(∂/∂p of the latter)/(4p)` |
//! | `trace_const:n`, `trace_factor` | `−(1+δ)(n+3−δ)`, `(1+δ)(8−δ)` |
//! | `ghat:X`, `sqrtdiff_s:X`, `sqrtdiff_t:X`, `ghat_norm:X` | normalized partial `s − t√d` on branch `X`, its parts, and `s² − t²d` |
//! | `const:v` | the rational `v` |
//!
//! A suffix `@var=value` specializes a target.

use crate::charpoly::{Branch, NormalFormAlgebra, Resultants, EPS, P, Q, S};
use crate::gfun::{BranchForm, GFunction};
use crate::SpectrumError;
use cartan_exact::expr::{parse_with, Surd};
use cartan_exact::rational::{self, int};
use cartan_exact::{QPoly, QuadExt, RatFunc, RatPoly, Rational, SparsePoly, UniPoly};
use num_traits::One;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

pub const CLAIMS_TOML: &str = include_str!("../data/claims.toml");

#[derive(Clone, Debug, Deserialize)]
struct RegistryFile {
    schema: u32,
    #[serde(default)]
    globals: Globals,
    claim: Vec<Claim>,
}

#[derive(Clone, Debug, Default, Deserialize)]
struct Globals {
    #[serde(default)]
    bind: Vec<[String; 2]>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    #[default]
    Compare,
    QuarticRoot,
    Definition,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Claim {
    pub id: String,
    pub location: String,
    pub formula: String,
    #[serde(default)]
    pub bind: Vec<[String; 2]>,
    #[serde(default)]
    pub target: Option<String>,
    #[serde(default)]
    pub also: Vec<String>,
    #[serde(default)]
    pub kind: ClaimKind,
    #[serde(default)]
    pub reduce_q: bool,
    #[serde(default)]
    pub normalizes: bool,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Registry {
    pub schema: u32,
    globals: Vec<[String; 2]>,
    pub claims: Vec<Claim>,
}

impl Registry {
    pub fn parse(src: &str) -> Result<Self, SpectrumError> {
        let f: RegistryFile = toml::from_str(src).map_err(|e| SpectrumError::Registry(e.to_string()))?;
        let mut seen = std::collections::BTreeSet::new();
        for c in &f.claim {
            if !seen.insert(c.id.clone()) {
                return Err(SpectrumError::Registry(format!("duplicate claim id {}", c.id)));
            }
            if c.kind != ClaimKind::Definition && c.target.is_none() {
                return Err(SpectrumError::Registry(format!("claim {} has no target", c.id)));
            }
        }
        Ok(Registry { schema: f.schema, globals: f.globals.bind, claims: f.claim })
    }

    pub fn shipped() -> &'static Registry {
        static R: OnceLock<Registry> = OnceLock::new();
        R.get_or_init(|| Registry::parse(CLAIMS_TOML).expect("shipped registry parses"))
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// The printed value of a claim, with all bindings expanded.
    pub fn value(&self, id: &str) -> Result<Surd, SpectrumError> {
        let c = self.get(id).ok_or_else(|| SpectrumError::Registry(format!("no claim {id}")))?;
        self.evaluate(c)
    }

    pub fn evaluate(&self, c: &Claim) -> Result<Surd, SpectrumError> {
        let mut defs = BTreeMap::new();
        for [name, src] in self.globals.iter().chain(&c.bind) {
            let v = parse_with(src, &defs).map_err(|e| SpectrumError::Registry(format!("{}: binding {name}: {e}", c.id)))?;
            defs.insert(name.clone(), v);
        }
        parse_with(&c.formula, &defs).map_err(|e| SpectrumError::Registry(format!("{}: {e}", c.id)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Match,
    /// `residual` is printed minus recomputed (against the primary target);
    /// `factor` is set when the two differ by a factor depending on `ε` only.
    Mismatch { residual: String, factor: Option<String> },
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Match => write!(f, "MATCH"),
            Verdict::Mismatch { factor: Some(k), .. } => write!(f, "MISMATCH (printed = {k} x recomputed)"),
            Verdict::Mismatch { .. } => write!(f, "MISMATCH"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Adjudication {
    pub id: String,
    pub location: String,
    /// The target that matched, or the primary target on a mismatch.
    pub target: String,
    pub verdict: Verdict,
    pub note: Option<String>,
}

/// Recomputed quantities addressable by target name.
pub struct Recomputed<'a> {
    pub alg: &'a NormalFormAlgebra,
    pub res: &'a Resultants,
    pub gf: &'a GFunction,
    /// Scale taking `N·Φ` to the printed normalization of the partials.
    pub norm: RatFunc,
}

fn lift(f: &RatPoly) -> SparsePoly {
    SparsePoly::from_rat(f)
}

fn qc(r: Rational) -> SparsePoly {
    SparsePoly::constant(QuadExt::rational(r))
}

fn ratfunc_surd(f: &RatFunc) -> Surd {
    Surd::new(lift(&f.num_poly()), SparsePoly::zero(), None, lift(&f.den_poly()))
}

fn branch_of(name: &str) -> Result<Branch, SpectrumError> {
    Branch::ALL
        .iter()
        .copied()
        .find(|b| b.name() == name)
        .ok_or_else(|| SpectrumError::Registry(format!("unknown branch {name}")))
}

fn map_surd(s: &Surd, f: impl Fn(&SparsePoly) -> Result<SparsePoly, SpectrumError>) -> Result<Surd, SpectrumError> {
    let d = match &s.d {
        Some(d) => Some(f(d)?),
        None => None,
    };
    Ok(Surd::new(f(&s.s)?, f(&s.t)?, d, f(&s.den)?))
}

fn reduce_q_surd(s: &Surd) -> Result<Surd, SpectrumError> {
    let p = SparsePoly::var(P);
    let rep = &qc(Rational::one()) - &(&p * &p);
    map_surd(s, |x| Ok(x.reduce_power(Q, 2, &rep)?.compact()))
}

impl<'a> Recomputed<'a> {
    pub fn new(alg: &'a NormalFormAlgebra, res: &'a Resultants, gf: &'a GFunction, reg: &Registry) -> Result<Self, SpectrumError> {
        let norm = printed_normalization(reg, gf)?;
        Ok(Recomputed { alg, res, gf, norm })
    }

    pub fn shared() -> &'static Recomputed<'static> {
        static R: OnceLock<Recomputed<'static>> = OnceLock::new();
        R.get_or_init(|| {
            Recomputed::new(NormalFormAlgebra::shared(), Resultants::shared(), GFunction::shared(), Registry::shipped())
                .expect("recomputed targets")
        })
    }

    fn normalized(&self, f: &BranchForm) -> (RatPoly, RatPoly, RatPoly, RatPoly) {
        let num = self.norm.num_poly();
        (&f.s * &num, &f.t * &num, f.d.clone(), self.norm.den_poly())
    }

    pub fn target(&self, name: &str) -> Result<Surd, SpectrumError> {
        if let Some((base, spec)) = name.split_once('@') {
            let (var, val) = spec
                .split_once('=')
                .ok_or_else(|| SpectrumError::Registry(format!("bad specialization in {name}")))?;
            let v = rational::parse_rational(val.trim()).ok_or_else(|| SpectrumError::Registry(format!("{name}: bad value")))?;
            let v = QuadExt::rational(v);
            let base = self.target(base)?;
            return map_surd(&base, |x| Ok(x.specialize(var.trim(), &v).compact()));
        }
        let err = || SpectrumError::Registry(format!("unknown target {name}"));
        let alg = self.alg;
        let res = self.res;
        let poly = |f: &RatPoly| Surd::poly(lift(f));
        Ok(match name {
            "discA/4" => poly(&alg.disc_a_quarter()),
            "sqrt:discA/4" => Surd::new(SparsePoly::zero(), qc(int(1)), Some(lift(&alg.disc_a_quarter())), qc(int(1))),
            "F:L" => poly(&alg.linear_factor().to_poly()),
            "F:A" => poly(&alg.quad_a.monic().to_poly()),
            "F:B" => poly(&alg.quad_b.monic().to_poly()),
            "c5" => ratfunc_surd(&self.gf.coeffs.c5),
            "c3" => ratfunc_surd(&self.gf.coeffs.c3),
            "c1" => ratfunc_surd(&self.gf.coeffs.c1),
            "Res:A,B" => poly(&res.ab),
            "Res:A,B monic" => poly(&res.ab_monic),
            "Res:L,A" => poly(&res.la),
            "Res:L,A monic" => poly(&res.la_monic),
            "Res:L,B" => poly(&res.lb),
            "Res:L,B monic" => poly(&res.lb_monic),
            "r" => poly(&res.r),
            "r_eps" => poly(&r_eps(&res.r)?),
            "r_eps_p" => poly(&r_eps_p(&res.r)?),
            "trace_factor" => poly(&trace_factor_eps()),
            _ => {
                if let Some(k) = name.strip_prefix('a').and_then(|s| s.parse::<usize>().ok()) {
                    let c = alg.coeffs_b.get(k).filter(|_| k >= 1).ok_or_else(err)?;
                    return Ok(poly(c));
                }
                if let Some(b) = name.strip_prefix("root:") {
                    return Ok(root_surd(alg, branch_of(b)?));
                }
                if let Some(rest) = name.strip_prefix("2H[").or_else(|| name.strip_prefix("H[")) {
                    let (i, j) = parse_index(rest).ok_or_else(err)?;
                    let e = alg.matrix.get(i, j).clone();
                    let e = if name.starts_with('2') { e.scale(&QuadExt::rational(int(2))) } else { e };
                    return Ok(Surd::poly(e));
                }
                if let Some(n) = name.strip_prefix("trace_const:") {
                    let n: i64 = n.parse().map_err(|_| err())?;
                    return Ok(poly(&trace_constant_eps(n)));
                }
                if let Some(v) = name.strip_prefix("const:") {
                    let v = rational::parse_rational(v).ok_or_else(err)?;
                    return Ok(Surd::poly(qc(v)));
                }
                if let Some(b) = name.strip_prefix("ghat:") {
                    let (s, t, d, den) = self.normalized(self.gf.form(branch_of(b)?));
                    return Ok(Surd::new(lift(&s), lift(&t), Some(lift(&d)), lift(&den)));
                }
                if let Some(b) = name.strip_prefix("sqrtdiff_s:") {
                    let (s, _, _, den) = self.normalized(self.gf.form(branch_of(b)?));
                    return Ok(Surd::new(lift(&s), SparsePoly::zero(), None, lift(&den)));
                }
                if let Some(b) = name.strip_prefix("sqrtdiff_t:") {
                    // ĝ = s − t'√d, so the printed radical part is −t√d
                    let (_, t, d, den) = self.normalized(self.gf.form(branch_of(b)?));
                    return Ok(Surd::new(SparsePoly::zero(), lift(&t.neg()), Some(lift(&d)), lift(&den)));
                }
                if let Some(b) = name.strip_prefix("ghat_norm:") {
                    let br = match b {
                        "A" => Branch::APlus,
                        "B" => Branch::BPlus,
                        _ => branch_of(b)?,
                    };
                    let (s, t, d, den) = self.normalized(self.gf.form(br));
                    let n = &(&s * &s) - &(&(&t * &t) * &d);
                    return Ok(Surd::new(lift(&n), SparsePoly::zero(), None, lift(&(&den * &den))));
                }
                return Err(err());
            }
        })
    }
}

fn parse_index(rest: &str) -> Option<(usize, usize)> {
    let inner = rest.strip_suffix(']')?;
    let (a, b) = inner.split_once(',')?;
    let (i, j) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (i < 5 && j < 5).then_some((i, j))
}

fn root_surd(alg: &NormalFormAlgebra, br: Branch) -> Surd {
    match br {
        Branch::L => Surd::poly(lift(&alg.linear)),
        _ => {
            let q = alg.quadratic(br);
            let two_a = q.a.scale(&int(2));
            Surd::new(lift(&q.b.neg()), qc(int(br.sign() as i64)), Some(lift(&q.disc())), lift(&two_a))
        }
    }
}

fn delta_as_eps() -> RatPoly {
    &RatPoly::constant(int(1)) - &RatPoly::var(EPS)
}

fn trace_factor_eps() -> RatPoly {
    let d = delta_as_eps();
    &(&RatPoly::constant(int(1)) + &d) * &(&RatPoly::constant(int(8)) - &d)
}

fn trace_constant_eps(n: i64) -> RatPoly {
    let d = delta_as_eps();
    (&(&RatPoly::constant(int(1)) + &d) * &(&RatPoly::constant(int(n + 3)) - &d)).neg()
}

fn r_eps(r: &RatPoly) -> Result<RatPoly, SpectrumError> {
    let dr = r.derivative(EPS)?;
    Ok(dr.div_exact(&RatPoly::var(EPS).scale(&int(4)))?.compact())
}

fn r_eps_p(r: &RatPoly) -> Result<RatPoly, SpectrumError> {
    let d = r_eps(r)?;
    Ok(d.derivative(P)?.div_exact(&RatPoly::var(P).scale(&int(4)))?.compact())
}

/// The ratio `printed g3 / (N·Φ on L)`, required to depend on `ε` only.
pub fn printed_normalization(reg: &Registry, gf: &GFunction) -> Result<RatFunc, SpectrumError> {
    let c = reg
        .claims
        .iter()
        .find(|c| c.normalizes)
        .ok_or_else(|| SpectrumError::Registry("no normalizing claim".into()))?;
    let printed = reg
        .evaluate(c)?
        .to_poly()
        .and_then(|p| p.to_rat())
        .ok_or_else(|| SpectrumError::Registry(format!("{} is not a rational polynomial", c.id)))?;
    let target = &gf.form(Branch::L).s;
    let k = eps_ratio(&printed, target).ok_or_else(|| {
        SpectrumError::Registry(format!("{}: printed table is not an eps-multiple of the recomputed partial", c.id))
    })?;
    Ok(k)
}

/// Points at which every non-`ε` variable is specialized when looking for a
/// proportionality factor.
const PROBE: [(&str, i64, i64); 5] = [(P, 2, 7), (Q, 3, 11), ("b", 5, 13), (S, 7, 17), ("delta", 1, 19)];

fn probe_eps(f: &RatPoly) -> Option<QPoly> {
    let mut g = f.clone();
    for (v, n, d) in PROBE {
        g = g.specialize(v, &rational::rat(n, d));
    }
    let g = g.compact();
    if g.used_vars().iter().any(|v| v != EPS) {
        return None;
    }
    QPoly::from_poly(&g, EPS)
}

/// `k(ε)` with `a = k·b`, if one exists.
pub fn eps_ratio(a: &RatPoly, b: &RatPoly) -> Option<RatFunc> {
    if b.is_zero() {
        return None;
    }
    let (a0, b0) = (probe_eps(a)?, probe_eps(b)?);
    if b0.is_zero() {
        return None;
    }
    let k = RatFunc::new(EPS, a0, b0);
    if k.is_zero() {
        return None;
    }
    let lhs = a * &k.den_poly();
    let rhs = b * &k.num_poly();
    (lhs == rhs).then_some(k)
}

fn surd_parts_rat(x: &Surd) -> Option<(RatPoly, RatPoly, RatPoly)> {
    Some((x.s.to_rat()?, x.t.to_rat()?, x.den.to_rat()?))
}

/// A factor `k(ε)` with `printed = k·target`, when both sides have rational
/// coefficients and the same radicand.
fn proportional(printed: &Surd, target: &Surd) -> Option<RatFunc> {
    if printed.d != target.d {
        return None;
    }
    let (ps, pt, pd) = surd_parts_rat(printed)?;
    let (ts, tt, td) = surd_parts_rat(target)?;
    // printed/target = (ps·td)/(ts·pd) on each part
    let (xs, ys) = (&ps * &td, &ts * &pd);
    let (xt, yt) = (&pt * &td, &tt * &pd);
    let k = if !ys.is_zero() { eps_ratio(&xs, &ys)? } else { eps_ratio(&xt, &yt)? };
    let check = |x: &RatPoly, y: &RatPoly| &(x * &k.den_poly()) == &(y * &k.num_poly());
    (check(&xs, &ys) && check(&xt, &yt)).then_some(k)
}


fn residual_string(printed: &Surd, target: &Surd) -> String {
    match printed.sub(target) {
        Ok(r) => {
            let s = r.s.to_string();
            let body = match &r.d {
                Some(d) if !r.t.is_zero() => format!("{s} + ({})*sqrt({})", r.t, d),
                _ => s,
            };
            if r.den.is_constant() && r.den.constant_term() == QuadExt::one() {
                body
            } else {
                format!("({body})/({})", r.den)
            }
        }
        Err(_) => format!(
            "radicands differ: printed sqrt({}) vs recomputed sqrt({})",
            printed.d.as_ref().map(|d| d.to_string()).unwrap_or_default(),
            target.d.as_ref().map(|d| d.to_string()).unwrap_or_default()
        ),
    }
}

/// `x⁴ ↦ num/den` in `f(x)`, scaled by `den^⌈deg/4⌉`; zero exactly when
/// `x⁴ = num/den` is a root of `f`.
fn reduce_quartic(f: &RatPoly, var: &str, num: &RatPoly, den: &RatPoly) -> RatPoly {
    let u = UniPoly::from_poly(f, var);
    let deg = u.degree().unwrap_or(0);
    let m = deg / 4;
    let x = RatPoly::var(var);
    let mut out = RatPoly::zero();
    for i in 0..=deg {
        let c = u.coeff(i);
        if c.is_zero() {
            continue;
        }
        let (j, r) = (i / 4, i % 4);
        let term = &(&(&c * &x.pow(r as u32)) * &num.pow(j as u32)) * &den.pow((m - j) as u32);
        out = &out + &term;
    }
    out.compact()
}

fn adjudicate_quartic(printed: &Surd, target: &Surd) -> Result<Verdict, SpectrumError> {
    let bad = || SpectrumError::Registry("quartic_root claims need rational polynomial parts".into());
    let (num, _, den) = surd_parts_rat(printed).ok_or_else(bad)?;
    let f = target.to_poly().and_then(|p| p.to_rat()).ok_or_else(bad)?;
    let r = reduce_quartic(&f, P, &num, &den);
    Ok(if r.is_zero() {
        Verdict::Match
    } else {
        Verdict::Mismatch { residual: r.to_string(), factor: None }
    })
}

pub fn adjudicate_claim(reg: &Registry, rc: &Recomputed, c: &Claim) -> Result<Option<Adjudication>, SpectrumError> {
    if c.kind == ClaimKind::Definition {
        reg.evaluate(c)?;
        return Ok(None);
    }
    let mut printed = reg.evaluate(c)?;
    if c.reduce_q {
        printed = reduce_q_surd(&printed)?;
    }
    let primary = c.target.clone().expect("checked at parse");
    let targets: Vec<String> = std::iter::once(primary.clone()).chain(c.also.iter().cloned()).collect();
    let mut first: Option<(Surd, Verdict)> = None;
    for name in &targets {
        let mut t = rc.target(name)?;
        if c.reduce_q {
            t = reduce_q_surd(&t)?;
        }
        let v = match c.kind {
            ClaimKind::QuarticRoot => adjudicate_quartic(&printed, &t)?,
            _ if printed.same_value(&t) => Verdict::Match,
            _ => Verdict::Mismatch {
                residual: residual_string(&printed, &t),
                factor: proportional(&printed, &t).map(|k| k.to_string()),
            },
        };
        if v.is_match() {
            return Ok(Some(Adjudication {
                id: c.id.clone(),
                location: c.location.clone(),
                target: name.clone(),
                verdict: v,
                note: c.note.clone(),
            }));
        }
        if first.is_none() {
            first = Some((t, v));
        }
    }
    let (_, v) = first.expect("at least one target");
    Ok(Some(Adjudication { id: c.id.clone(), location: c.location.clone(), target: primary, verdict: v, note: c.note.clone() }))
}

/// Adjudicates every non-definition claim, in registry order.
pub fn adjudicate_all(reg: &Registry, rc: &Recomputed) -> Result<Vec<Adjudication>, SpectrumError> {
    let mut out = Vec::new();
    for c in &reg.claims {
        if let Some(a) = adjudicate_claim(reg, rc, c)? {
            out.push(a);
        }
    }
    Ok(out)
}

/// Polynomial `RatPoly` in `(p, ε)` for a printed claim, when it is one.
pub fn claim_poly(reg: &Registry, id: &str) -> Result<RatPoly, SpectrumError> {
    reg.value(id)?
        .to_poly()
        .and_then(|p| p.to_rat())
        .map(|p| p.compact())
        .ok_or_else(|| SpectrumError::Registry(format!("{id} is not a rational polynomial")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_exact::expr::parse;

    fn rc() -> &'static Recomputed<'static> {
        Recomputed::shared()
    }

    fn verdict(id: &str) -> Adjudication {
        let reg = Registry::shipped();
        adjudicate_claim(reg, rc(), reg.get(id).unwrap()).unwrap().unwrap()
    }

    #[test]
    fn shipped_registry_parses_and_evaluates() {
        let reg = Registry::shipped();
        assert_eq!(reg.schema, 1);
        for c in &reg.claims {
            reg.evaluate(c).unwrap_or_else(|e| panic!("{}: {e}", c.id));
            assert!(!c.location.is_empty());
        }
    }

    #[test]
    fn duplicate_ids_rejected() {
        let src = "schema = 1\n[[claim]]\nid = \"x\"\nlocation = \"l\"\nformula = \"1\"\ntarget = \"const:1\"\n[[claim]]\nid = \"x\"\nlocation = \"l\"\nformula = \"1\"\ntarget = \"const:1\"\n";
        assert!(Registry::parse(src).is_err());
    }

    #[test]
    fn normalization_depends_on_eps_only() {
        let k = &rc().norm;
        let want = RatFunc::new(
            EPS,
            QPoly::constant(rational::rat(-16, 3)),
            QPoly::from_poly(&parse("eps*(eps+7)^4*(eps-2)^2").unwrap().to_poly().unwrap().to_rat().unwrap(), EPS).unwrap(),
        );
        assert_eq!(*k, want);
    }

    #[test]
    fn expected_matches() {
        for id in [
            "a1", "a2", "r", "d", "d_p", "d_at_p1", "R_eps1", "p0", "p0_delta", "C_via_p0", "g3_h_table",
            "g3_eps_table", "D_proof", "t2",
        ] {
            let a = verdict(id);
            assert!(a.verdict.is_match(), "{id}: {:?}", a.verdict);
        }
    }

    #[test]
    fn expected_mismatches() {
        for id in ["D_lemma", "a3", "a4", "a5", "mu1", "mu4", "F2", "e5", "e3", "e1", "R1", "trace_constant", "trace_factor", "g1_m_table", "g1_m_compact", "s1", "t1", "g1_split", "g1_norm", "g2_n_table"] {
            let a = verdict(id);
            assert!(!a.verdict.is_match(), "{id} unexpectedly matched {}", a.target);
        }
    }

    #[test]
    fn printed_e_coefficients_are_negated() {
        for id in ["e5", "e3", "e1"] {
            match verdict(id).verdict {
                Verdict::Mismatch { factor: Some(k), .. } => assert_eq!(k, "-1", "{id}"),
                v => panic!("{id}: {v:?}"),
            }
        }
    }

    #[test]
    fn printed_e1_at_eps_one() {
        let v = Registry::shipped().value("e1").unwrap();
        assert!((v.eval_f64(&[EPS], &[1.0]) - 0.125).abs() < 1e-15);
    }

    #[test]
    fn printed_resultant_differs_by_monic_scaling() {
        let a = verdict("R");
        assert_eq!(a.target, "Res:A,B");
    }

    #[test]
    fn trace_constant_gap_is_five_delta() {
        match verdict("trace_constant").verdict {
            Verdict::Mismatch { residual, .. } => {
                let r = parse(&residual).unwrap().to_poly().unwrap();
                assert_eq!(r, parse("5*(1-eps)").unwrap().to_poly().unwrap());
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn quartic_reduction() {
        let f = parse("(p^4-2)*(p^2+1)").unwrap().to_poly().unwrap().to_rat().unwrap();
        let two = RatPoly::constant(int(2));
        assert!(reduce_quartic(&f, P, &two, &RatPoly::constant(int(1))).is_zero());
        assert!(!reduce_quartic(&f, P, &RatPoly::constant(int(3)), &RatPoly::constant(int(1))).is_zero());
    }

    #[test]
    fn p0_at_delta_zero_is_one() {
        let v = Registry::shipped().value("p0").unwrap();
        assert!((v.eval_f64(&[EPS], &[1.0]) - 1.0).abs() < 1e-15);
        let half = v.eval_f64(&[EPS], &[0.5]).powf(0.25);
        assert!((half - 0.66874).abs() < 1e-5);
    }

    #[test]
    fn every_compare_claim_yields_a_verdict() {
        let reg = Registry::shipped();
        let all = adjudicate_all(reg, rc()).unwrap();
        let n = reg.claims.iter().filter(|c| c.kind != ClaimKind::Definition).count();
        assert_eq!(all.len(), n);
    }
}
