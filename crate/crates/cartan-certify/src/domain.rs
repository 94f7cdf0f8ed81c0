//! Boxes with rational endpoints and bisection paths.

use crate::CertifyError;
use cartan_exact::rational::fmt_rational;
use cartan_exact::{Interval, Rational};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainBox {
    vars: Vec<String>,
    ivs: Vec<Interval>,
}

impl DomainBox {
    pub fn new(parts: &[(&str, Rational, Rational)]) -> Result<Self, CertifyError> {
        if parts.is_empty() {
            return Err(CertifyError::Variables("empty box".into()));
        }
        let mut vars = Vec::new();
        let mut ivs = Vec::new();
        for (v, lo, hi) in parts {
            if lo > hi {
                return Err(CertifyError::Variables(format!("{v}: lower end above upper end")));
            }
            if vars.iter().any(|w| w == v) {
                return Err(CertifyError::Variables(format!("{v} repeated")));
            }
            vars.push(v.to_string());
            ivs.push(Interval::new(lo.clone(), hi.clone()));
        }
        Ok(DomainBox { vars, ivs })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.ivs
    }

    pub fn dims(&self) -> usize {
        self.vars.len()
    }

    pub fn center(&self) -> Vec<Rational> {
        self.ivs.iter().map(|i| i.mid()).collect()
    }

    /// Corner selected by `mask` (bit `i` set: upper end in dimension `i`).
    pub fn corner(&self, mask: usize) -> Vec<Rational> {
        self.ivs.iter().enumerate().map(|(i, iv)| if mask >> i & 1 == 1 { iv.hi.clone() } else { iv.lo.clone() }).collect()
    }

    pub fn split(&self, dim: usize) -> (DomainBox, DomainBox) {
        let (a, b) = self.ivs[dim].bisect();
        let mut l = self.clone();
        let mut r = self.clone();
        l.ivs[dim] = a;
        r.ivs[dim] = b;
        (l, r)
    }

    pub fn child(&self, step: Step) -> DomainBox {
        let (l, r) = self.split(step.dim);
        if step.upper {
            r
        } else {
            l
        }
    }

    pub fn descend(&self, path: &Path) -> DomainBox {
        path.0.iter().fold(self.clone(), |b, &s| b.child(s))
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        point.len() == self.ivs.len() && self.ivs.iter().zip(point).all(|(iv, x)| iv.contains(x))
    }

    /// Endpoints as `num/den` strings.
    pub fn endpoints(&self) -> Vec<[String; 2]> {
        self.ivs.iter().map(|iv| [fmt_rational(&iv.lo), fmt_rational(&iv.hi)]).collect()
    }
}

impl fmt::Display for DomainBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vars.iter().zip(&self.ivs).map(|(v, iv)| format!("{v} in {iv}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub dim: usize,
    pub upper: bool,
}

/// Sequence of bisections from the root box. Text form: one `<dim><0|1>`
/// token per step separated by `.`, the empty path being `-`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(pub Vec<Step>);

impl Path {
    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn push(&self, step: Step) -> Path {
        let mut v = self.0.clone();
        v.push(step);
        Path(v)
    }

    pub fn parse(s: &str) -> Option<Path> {
        if s == "-" {
            return Some(Path::default());
        }
        let mut steps = Vec::new();
        for tok in s.split('.') {
            let (d, side) = tok.split_at(tok.len().checked_sub(1)?);
            let upper = match side {
                "0" => false,
                "1" => true,
                _ => return None,
            };
            steps.push(Step { dim: d.parse().ok()?, upper });
        }
        Some(Path(steps))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let toks: Vec<String> = self.0.iter().map(|s| format!("{}{}", s.dim, u8::from(s.upper))).collect();
        write!(f, "{}", toks.join("."))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_exact::rational::{int, rat};

    #[test]
    fn path_round_trip_and_descend() {
        let b = DomainBox::new(&[("p", int(-1), int(1)), ("eps", rat(1, 20), int(1))]).unwrap();
        let path = Path(vec![Step { dim: 0, upper: true }, Step { dim: 1, upper: false }, Step { dim: 0, upper: false }]);
        assert_eq!(Path::parse(&path.to_string()), Some(path.clone()));
        assert_eq!(Path::parse("-"), Some(Path::default()));
        assert_eq!(Path::parse("01.2x"), None);
        let leaf = b.descend(&path);
        assert_eq!(leaf.intervals()[0], Interval::new(int(0), rat(1, 2)));
        assert_eq!(leaf.intervals()[1], Interval::new(rat(1, 20), rat(21, 40)));
    }

    #[test]
    fn rejects_bad_boxes() {
        assert!(DomainBox::new(&[]).is_err());
        assert!(DomainBox::new(&[("x", int(1), int(0))]).is_err());
        assert!(DomainBox::new(&[("x", int(0), int(1)), ("x", int(0), int(1))]).is_err());
    }
}
