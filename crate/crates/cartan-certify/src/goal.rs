//! What is being certified: `f > m` or `s − t√d > m`, where the margin `m`
//! is the pointwise minimum of one or more polynomials.

use crate::domain::DomainBox;
use crate::CertifyError;
use cartan_exact::rational::{fmt_rational, sign, to_f64};
use cartan_exact::{RatPoly, Rational};
use num_traits::Zero;
use sha2::{Digest, Sha256};
use std::fmt;

/// `min(alternatives)`, each a polynomial (constants included).
#[derive(Clone, Debug, PartialEq)]
pub struct Margin {
    pub alternatives: Vec<RatPoly>,
}

impl Margin {
    pub fn constant(c: Rational) -> Self {
        Margin { alternatives: vec![RatPoly::constant(c)] }
    }

    pub fn zero() -> Self {
        Margin::constant(Rational::zero())
    }

    pub fn poly(m: RatPoly) -> Self {
        Margin { alternatives: vec![m] }
    }

    pub fn min_of(alternatives: Vec<RatPoly>) -> Self {
        assert!(!alternatives.is_empty(), "margin needs at least one alternative");
        Margin { alternatives }
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Margin { alternatives: self.alternatives.iter().map(|m| m.scale(k)).collect() }
    }

    /// Multiplies every alternative by `w`, which must be positive on the
    /// domain for the goal to stay equivalent.
    pub fn times(&self, w: &RatPoly) -> Self {
        Margin { alternatives: self.alternatives.iter().map(|m| m * w).collect() }
    }

    pub fn at(&self, vars: &[String], point: &[Rational]) -> Result<Rational, CertifyError> {
        let mut best: Option<Rational> = None;
        for m in &self.alternatives {
            let v = eval(m, vars, point)?;
            best = Some(match best {
                Some(b) if b <= v => b,
                _ => v,
            });
        }
        Ok(best.expect("nonempty margin"))
    }
}

impl fmt::Display for Margin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alternatives.len() == 1 {
            return write!(f, "{}", self.alternatives[0]);
        }
        let parts: Vec<String> = self.alternatives.iter().map(|m| m.to_string()).collect();
        write!(f, "min{{{}}}", parts.join(", "))
    }
}

/// `s − t·√d`.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtDiffExpr {
    pub s: RatPoly,
    pub t: RatPoly,
    pub d: RatPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Goal {
    Positive { f: RatPoly, margin: Margin },
    SqrtDiff { expr: SqrtDiffExpr, margin: Margin },
}

/// Exact value `s − t√d` at a point (`t = 0`, `d = 0` for plain polynomials).
#[derive(Clone, Debug, PartialEq)]
pub struct PointValue {
    pub s: Rational,
    pub t: Rational,
    pub d: Rational,
}

impl PointValue {
    pub fn rational(v: Rational) -> Self {
        PointValue { s: v, t: Rational::zero(), d: Rational::zero() }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.s) - to_f64(&self.t) * to_f64(&self.d).max(0.0).sqrt()
    }

    /// Exact comparison `s − t√d ≤ m`.
    pub fn at_most(&self, m: &Rational) -> bool {
        let a = &self.s - m;
        let t2d = &self.t * &self.t * &self.d;
        match sign(&self.t) {
            0 => sign(&a) <= 0,
            // a ≤ t√d with t > 0
            1 => sign(&a) <= 0 || a.clone() * &a <= t2d,
            // a ≤ −|t|√d
            _ => sign(&a) < 0 && a.clone() * &a >= t2d,
        }
    }
}

impl fmt::Display for PointValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t.is_zero() {
            write!(f, "{}", fmt_rational(&self.s))
        } else {
            write!(f, "{} - ({})*sqrt({}) ~ {:.6e}", fmt_rational(&self.s), fmt_rational(&self.t), fmt_rational(&self.d), self.to_f64())
        }
    }
}

/// One inequality `h > 0` on a leaf, waived where `guard ≤ 0`.
#[derive(Clone, Debug)]
pub struct Condition {
    pub h: RatPoly,
    pub guard: Option<RatPoly>,
}

pub(crate) fn eval(f: &RatPoly, vars: &[String], point: &[Rational]) -> Result<Rational, CertifyError> {
    let named: Vec<(&str, Rational)> = vars.iter().map(|v| v.as_str()).zip(point.iter().cloned()).collect();
    Ok(f.eval(&named)?)
}

fn align(f: &RatPoly, vars: &[String]) -> Result<RatPoly, CertifyError> {
    f.with_vars(vars).map_err(|_| CertifyError::Variables(format!("{} uses variables outside {:?}", f, vars)))
}

impl Goal {
    pub fn positive(f: RatPoly, margin: Margin) -> Self {
        Goal::Positive { f, margin }
    }

    pub fn sqrt_diff(expr: SqrtDiffExpr, margin: Margin) -> Self {
        Goal::SqrtDiff { expr, margin }
    }

    pub fn margin(&self) -> &Margin {
        match self {
            Goal::Positive { margin, .. } | Goal::SqrtDiff { margin, .. } => margin,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Goal::Positive { .. } => "positive",
            Goal::SqrtDiff { .. } => "sqrt_diff",
        }
    }

    /// For each margin alternative, the leaf conditions that together imply
    /// the goal, expressed over the box variables.
    pub fn conditions(&self, vars: &[String]) -> Result<Vec<Vec<Condition>>, CertifyError> {
        let mut out = Vec::new();
        for m in &self.margin().alternatives {
            let conds = match self {
                Goal::Positive { f, .. } => vec![Condition { h: align(&(f - m), vars)?, guard: None }],
                Goal::SqrtDiff { expr, .. } => {
                    let a = &expr.s - m;
                    let sq = &(&a * &a) - &(&(&expr.t * &expr.t) * &expr.d);
                    vec![
                        Condition { h: align(&a, vars)?, guard: None },
                        Condition { h: align(&sq, vars)?, guard: Some(align(&expr.t, vars)?) },
                    ]
                }
            };
            out.push(conds);
        }
        Ok(out)
    }

    pub fn value_at(&self, vars: &[String], point: &[Rational]) -> Result<PointValue, CertifyError> {
        Ok(match self {
            Goal::Positive { f, .. } => PointValue::rational(eval(f, vars, point)?),
            Goal::SqrtDiff { expr, .. } => PointValue {
                s: eval(&expr.s, vars, point)?,
                t: eval(&expr.t, vars, point)?,
                d: eval(&expr.d, vars, point)?,
            },
        })
    }

    /// `Some((value, margin))` when the goal fails at `point`.
    pub fn failure_at(&self, vars: &[String], point: &[Rational]) -> Result<Option<(PointValue, Rational)>, CertifyError> {
        let v = self.value_at(vars, point)?;
        let m = self.margin().at(vars, point)?;
        Ok(v.at_most(&m).then_some((v, m)))
    }

    /// SHA-256 over the goal and the root box.
    pub fn fingerprint(&self, bx: &DomainBox) -> String {
        let mut h = Sha256::new();
        h.update(self.kind().as_bytes());
        for (v, e) in bx.vars().iter().zip(bx.endpoints()) {
            h.update(format!("|{v}:{}:{}", e[0], e[1]).as_bytes());
        }
        let polys: Vec<&RatPoly> = match self {
            Goal::Positive { f, .. } => vec![f],
            Goal::SqrtDiff { expr, .. } => vec![&expr.s, &expr.t, &expr.d],
        };
        for p in polys {
            h.update(b"|");
            h.update(p.canonical_string().as_bytes());
        }
        for m in &self.margin().alternatives {
            h.update(b"|m");
            h.update(m.canonical_string().as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}
