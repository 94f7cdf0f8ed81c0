//! Independent leaf bounds by Taylor forms, and certificate verification
//! using only those bounds.
//!
//! On a leaf, `f` is rewritten exactly on the unit box and then expanded at
//! the center and at every corner. In each expansion every monomial has an
//! exact range, so summing them encloses `f`; the enclosures are
//! intersected. Corner expansions keep the bound sharp where `f` is monotone
//! across the box.

use crate::certificate::Certificate;
use crate::domain::{DomainBox, Path};
use crate::goal::{Condition, Goal};
use crate::taylor::DenseInt;
use crate::CertifyError;
use cartan_exact::exec::{self, Mode};
use cartan_exact::rational::{int, parse_rational};
use cartan_exact::{Interval, RatPoly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed};

#[derive(Clone, Debug)]
pub struct TaylorForm {
    dense: DenseInt,
}

impl TaylorForm {
    pub fn new(f: &RatPoly) -> Result<Self, CertifyError> {
        Ok(TaylorForm { dense: DenseInt::from_poly(f) })
    }

    pub fn enclose(&self, bx: &DomainBox) -> Result<Interval, CertifyError> {
        let n = bx.dims();
        if self.dense.dims() != n {
            return Err(CertifyError::Variables(format!("{} variables against a {}-box", self.dense.dims(), n)));
        }
        let lo: Vec<Rational> = bx.intervals().iter().map(|iv| iv.lo.clone()).collect();
        let w: Vec<Rational> = bx.intervals().iter().map(|iv| iv.width()).collect();
        let unit = self.dense.to_unit_box(&lo, &w);
        let one = BigInt::one();
        let mut center = unit.clone();
        for i in 0..n {
            center = center.substitute(i, &one, &one, &BigInt::from(2));
        }
        let (mut l, mut h) = center.enclose_unit(&vec![true; n]);
        for mask in 0..1usize << n {
            let mut g = unit.clone();
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    g = g.substitute(i, &one, &-one.clone(), &one);
                }
            }
            let (a, b) = g.enclose_unit(&vec![false; n]);
            l = l.max(a);
            h = h.min(b);
        }
        Ok(Interval::new(l, h))
    }
}

/// Prepared forms for one condition.
#[derive(Clone, Debug)]
pub struct PreparedCondition {
    pub h: TaylorForm,
    pub guard: Option<TaylorForm>,
}

pub fn prepare(alts: &[Vec<Condition>]) -> Result<Vec<Vec<PreparedCondition>>, CertifyError> {
    alts.iter()
        .map(|conds| {
            conds
                .iter()
                .map(|c| {
                    Ok(PreparedCondition {
                        h: TaylorForm::new(&c.h)?,
                        guard: c.guard.as_ref().map(TaylorForm::new).transpose()?,
                    })
                })
                .collect()
        })
        .collect()
}

/// Smallest lower bound over the conditions that are not waived on `bx`.
pub fn replay_leaf(conds: &[PreparedCondition], bx: &DomainBox) -> Result<Rational, CertifyError> {
    let mut lower: Option<Rational> = None;
    for c in conds {
        if let Some(g) = &c.guard {
            if !g.enclose(bx)?.hi.is_positive() {
                continue;
            }
        }
        let lo = c.h.enclose(bx)?.lo;
        lower = Some(match lower {
            Some(l) if l <= lo => l,
            _ => lo,
        });
    }
    // a leaf where everything is waived proves nothing
    Ok(lower.unwrap_or_else(|| int(-1)))
}

/// True iff the paths are exactly the leaves of a complete bisection tree.
pub fn is_partition(paths: &[Path]) -> bool {
    fn rec(paths: &[&[crate::domain::Step]]) -> bool {
        if paths.len() == 1 && paths[0].is_empty() {
            return true;
        }
        if paths.is_empty() || paths.iter().any(|p| p.is_empty()) {
            return false;
        }
        let dim = paths[0][0].dim;
        if paths.iter().any(|p| p[0].dim != dim) {
            return false;
        }
        let lo: Vec<&[crate::domain::Step]> = paths.iter().filter(|p| !p[0].upper).map(|p| &p[1..]).collect();
        let hi: Vec<&[crate::domain::Step]> = paths.iter().filter(|p| p[0].upper).map(|p| &p[1..]).collect();
        rec(&lo) && rec(&hi)
    }
    let mut sorted: Vec<&Path> = paths.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let steps: Vec<&[crate::domain::Step]> = sorted.iter().map(|p| p.0.as_slice()).collect();
    rec(&steps)
}

pub fn verify_certificate(cert: &Certificate, goal: &Goal) -> Result<bool, CertifyError> {
    verify_certificate_with(cert, goal, Mode::default_mode())
}

/// Replays every leaf from scratch. Errors only when the certificate was
/// not produced for `goal`; any tampering yields `Ok(false)`.
pub fn verify_certificate_with(cert: &Certificate, goal: &Goal, mode: Mode) -> Result<bool, CertifyError> {
    let root = cert.root_box()?;
    if goal.fingerprint(&root) != cert.fingerprint || goal.kind() != cert.kind {
        return Err(CertifyError::StructuralMismatch(format!("fingerprint {} does not match the goal", cert.fingerprint)));
    }
    if let Goal::SqrtDiff { expr, .. } = goal {
        let Some(rc) = &cert.radicand else {
            return Ok(false);
        };
        let rgoal = Goal::positive(expr.d.clone(), crate::goal::Margin::zero());
        if !verify_certificate_with(rc, &rgoal, mode)? {
            return Ok(false);
        }
    }
    let mut paths = Vec::with_capacity(cert.leaves.len());
    for l in &cert.leaves {
        match Path::parse(&l.path) {
            Some(p) => paths.push(p),
            None => return Ok(false),
        }
    }
    if cert.leaves.len() != cert.leaf_count || !is_partition(&paths) {
        return Ok(false);
    }
    if paths.iter().map(|p| p.depth()).max().unwrap_or(0) != cert.max_depth {
        return Ok(false);
    }
    let prepared = prepare(&goal.conditions(root.vars())?)?;
    let idx: Vec<usize> = (0..paths.len()).collect();
    let ok = exec::map(mode, &idx, |&i| -> Result<bool, CertifyError> {
        let leaf = &cert.leaves[i];
        let Some(conds) = prepared.get(leaf.alternative) else {
            return Ok(false);
        };
        let Some(recorded) = parse_rational(&leaf.replay_lower) else {
            return Ok(false);
        };
        let bx = root.descend(&paths[i]);
        if bx.endpoints() != leaf.bounds {
            return Ok(false);
        }
        let lower = replay_leaf(conds, &bx)?;
        Ok(lower.is_positive() && lower == recorded)
    });
    for r in ok {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Step;
    use cartan_exact::expr::parse_poly;

    fn rp(s: &str) -> RatPoly {
        parse_poly(s).unwrap().to_rat().unwrap()
    }

    #[test]
    fn taylor_form_encloses_and_tightens() {
        use cartan_exact::rational::rat;
        let f = rp("x^3 - 2*x*y + y^2 - 1/3");
        let tf = TaylorForm::new(&f).unwrap();
        let bx = DomainBox::new(&[("x", rat(1, 4), rat(1, 2)), ("y", rat(-1, 8), rat(1, 8))]).unwrap();
        let enc = tf.enclose(&bx).unwrap();
        for i in 0..=8 {
            for j in 0..=8 {
                let x = rat(1, 4) + rat(i, 32);
                let y = rat(-1, 8) + rat(j, 32);
                let v = f.eval(&[("x", x), ("y", y)]).unwrap();
                assert!(enc.contains(&v));
            }
        }
        assert!(enc.width() < rat(1, 2));
    }

    #[test]
    fn partition_check() {
        let s = |d, u| Step { dim: d, upper: u };
        let ok = vec![Path(vec![s(0, false)]), Path(vec![s(0, true), s(1, false)]), Path(vec![s(0, true), s(1, true)])];
        assert!(is_partition(&ok));
        assert!(is_partition(&[Path::default()]));
        let missing = vec![Path(vec![s(0, false)]), Path(vec![s(0, true), s(1, false)])];
        assert!(!is_partition(&missing));
        let mixed = vec![Path(vec![s(0, false)]), Path(vec![s(1, true)])];
        assert!(!is_partition(&mixed));
        let dup = vec![Path(vec![s(0, false)]), Path(vec![s(0, false)]), Path(vec![s(0, true)])];
        assert!(!is_partition(&dup));
    }
}
