//! 5×5 matrices whose entries are polynomials in `(c, s) = (cos φ, sin φ)`,
//! the three printed generator families, and exact invariance tests modulo
//! `c² + s² − 1`.

use crate::cubic::{CartanCubic, VARS};
use crate::{GeometryError, Mat5, Vec5};
use cartan_exact::expr::parse_poly;
use cartan_exact::rational::{fmt_rational, int};
use cartan_exact::{QuadExt, Rational, SparsePoly};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    A1,
    A2,
    A3,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::A1, Generator::A2, Generator::A3];

    pub fn name(self) -> &'static str {
        match self {
            Generator::A1 => "A1",
            Generator::A2 => "A2",
            Generator::A3 => "A3",
        }
    }

    /// The matrix as printed, with `sin 2φ = 2sc`, `cos 2φ = c² − s²`.
    pub fn printed(self) -> CsMatrix {
        let rows: [[&str; 5]; 5] = match self {
            Generator::A1 => [
                ["(3*c^2-1)/2", "sqrt(3)*s^2/2", "0", "0", "sqrt(3)*s*c"],
                ["sqrt(3)*s^2/2", "(1+c^2)/2", "0", "0", "-s*c"],
                ["0", "0", "c", "s", "0"],
                ["0", "0", "-s", "c", "0"],
                ["-sqrt(3)*s*c", "s*c", "0", "0", "c^2-s^2"],
            ],
            Generator::A2 => [
                ["1", "0", "0", "0", "0"],
                ["0", "c^2-s^2", "0", "-2*s*c", "0"],
                ["0", "0", "c", "0", "-s"],
                ["0", "2*s*c", "0", "c^2-s^2", "0"],
                ["0", "0", "s", "0", "c"],
            ],
            Generator::A3 => [
                ["(3*c^2-1)/2", "-sqrt(3)*s^2/2", "0", "0", "-sqrt(3)*s*c"],
                ["-sqrt(3)*s^2/2", "(1+c^2)/2", "0", "0", "-s*c"],
                ["0", "0", "c", "-s", "0"],
                ["0", "0", "s", "c", "0"],
                ["sqrt(3)*s*c", "s*c", "0", "0", "c^2-s^2"],
            ],
        };
        CsMatrix::from_rows(&rows)
    }
}

/// Normal form modulo `c² + s² − 1`: every power `s^k` with `k ≥ 2` is
/// rewritten through `s² = 1 − c²`.
pub fn reduce_circle(f: &SparsePoly) -> SparsePoly {
    let rep = parse_poly("1 - c^2").unwrap();
    f.reduce_power("s", 2, &rep).expect("degree cap").compact()
}

#[derive(Clone, PartialEq)]
pub struct CsMatrix {
    e: Vec<Vec<SparsePoly>>,
}

impl CsMatrix {
    pub fn from_rows(rows: &[[&str; 5]; 5]) -> Self {
        let e = rows
            .iter()
            .map(|r| r.iter().map(|t| parse_poly(t).expect("matrix entry parses")).collect())
            .collect();
        CsMatrix { e }
    }

    pub fn from_entries(e: Vec<Vec<SparsePoly>>) -> Self {
        assert!(e.len() == 5 && e.iter().all(|r| r.len() == 5));
        CsMatrix { e }
    }

    pub fn identity() -> Self {
        let e = (0..5)
            .map(|i| (0..5).map(|j| if i == j { SparsePoly::constant(QuadExt::one()) } else { SparsePoly::zero() }).collect())
            .collect();
        CsMatrix { e }
    }

    pub fn entry(&self, i: usize, j: usize) -> &SparsePoly {
        &self.e[i][j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: SparsePoly) {
        self.e[i][j] = v;
    }

    pub fn transpose(&self) -> Self {
        CsMatrix { e: (0..5).map(|i| (0..5).map(|j| self.e[j][i].clone()).collect()).collect() }
    }

    pub fn mul(&self, o: &CsMatrix) -> Self {
        let e = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| (0..5).fold(SparsePoly::zero(), |acc, k| &acc + &(&self.e[i][k] * &o.e[k][j])))
                    .collect()
            })
            .collect();
        CsMatrix { e }
    }

    pub fn map(&self, f: impl Fn(&SparsePoly) -> SparsePoly) -> Self {
        CsMatrix { e: self.e.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn reduce(&self) -> Self {
        self.map(reduce_circle)
    }

    /// The same family at the opposite angle (`s ↦ −s`).
    pub fn negate_angle(&self) -> Self {
        let minus_s = -&SparsePoly::var("s");
        self.map(|p| p.substitute("s", &minus_s).unwrap())
    }

    /// `MᵀM − I` reduced modulo the circle relation.
    pub fn orthogonality_defect(&self) -> CsMatrix {
        let g = self.transpose().mul(self);
        let id = CsMatrix::identity();
        CsMatrix { e: (0..5).map(|i| (0..5).map(|j| reduce_circle(&(&g.e[i][j] - &id.e[i][j]))).collect()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().flatten().all(|p| p.is_zero())
    }

    /// Exact matrix at a rational point of the unit circle.
    pub fn at_rational(&self, c: &Rational, s: &Rational) -> Result<[[QuadExt; 5]; 5], GeometryError> {
        if c * c + s * s != Rational::one() {
            return Err(GeometryError::NotOnCircle { c: fmt_rational(c), s: fmt_rational(s) });
        }
        let pt = [("c", QuadExt::rational(c.clone())), ("s", QuadExt::rational(s.clone()))];
        let mut out: [[QuadExt; 5]; 5] = std::array::from_fn(|_| std::array::from_fn(|_| QuadExt::zero()));
        for i in 0..5 {
            for j in 0..5 {
                out[i][j] = self.e[i][j].eval(&pt)?;
            }
        }
        Ok(out)
    }

    pub fn at_angle(&self, phi: f64) -> Mat5 {
        let pt = [("c", phi.cos()), ("s", phi.sin())];
        Mat5::from_fn(|i, j| self.e[i][j].eval_f64_named(&pt).expect("entries use only c and s"))
    }

    /// `M·v` for a vector of polynomials.
    pub fn apply(&self, v: &[SparsePoly]) -> Vec<SparsePoly> {
        (0..5).map(|i| (0..5).fold(SparsePoly::zero(), |acc, j| &acc + &(&self.e[i][j] * &v[j]))).collect()
    }
}

impl fmt::Debug for CsMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.e {
            let cells: Vec<String> = r.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct InvarianceVerdict {
    /// `P₅(M(c,s)·x) − P₅(x)` reduced modulo `c² + s² − 1`.
    pub remainder: SparsePoly,
    pub pass: bool,
}

pub fn check_invariance(p5: &CartanCubic, m: &CsMatrix) -> Result<InvarianceVerdict, GeometryError> {
    let x: Vec<SparsePoly> = VARS.iter().map(|v| SparsePoly::var(v)).collect();
    let y = m.apply(&x);
    let moved = p5.poly().compose(&y)?;
    let remainder = reduce_circle(&(&moved - p5.poly()));
    let pass = remainder.is_zero();
    Ok(InvarianceVerdict { remainder, pass })
}

/// A signed relabelling of the axes: matrix axis `k` is read as coordinate
/// `perm[k]` with sign `signs[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabelling {
    pub perm: [usize; 5],
    pub signs: [i8; 5],
}

impl Relabelling {
    pub fn describe(&self) -> String {
        let names: Vec<String> = (0..5)
            .map(|k| format!("{}{}", if self.signs[k] < 0 { "-" } else { "" }, VARS[self.perm[k]]))
            .collect();
        format!("({})", names.join(", "))
    }

    fn matrix(&self) -> Mat5 {
        let mut q = Mat5::zeros();
        for k in 0..5 {
            q[(self.perm[k], k)] = self.signs[k] as f64;
        }
        q
    }

    /// `Q·M·Qᵀ` as a polynomial matrix.
    pub fn conjugate(&self, m: &CsMatrix) -> CsMatrix {
        let mut e = vec![vec![SparsePoly::zero(); 5]; 5];
        for a in 0..5 {
            for b in 0..5 {
                let sg = (self.signs[a] * self.signs[b]) as i64;
                e[self.perm[a]][self.perm[b]] = m.e[a][b].scale(&QuadExt::rational(int(sg)));
            }
        }
        CsMatrix { e }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Every signed relabelling of the axes under which `m` preserves `P₅`,
/// screened numerically and confirmed exactly. Sign patterns that differ by
/// a global flip are both listed.
pub fn invariant_relabellings(p5: &CartanCubic, m: &CsMatrix) -> Result<Vec<Relabelling>, GeometryError> {
    let probes = [
        Vec5::new(0.31, -0.72, 0.45, 0.18, -0.39),
        Vec5::new(-0.52, 0.11, -0.63, 0.57, 0.08),
    ];
    let mats = [m.at_angle(0.7), m.at_angle(1.9)];
    let mut found = Vec::new();
    for perm in permutations(5) {
        for mask in 0..32u32 {
            let r = Relabelling {
                perm: perm.clone().try_into().unwrap(),
                signs: std::array::from_fn(|k| if mask >> k & 1 == 1 { -1 } else { 1 }),
            };
            let q = r.matrix();
            let screened = mats.iter().all(|a| {
                let b = q * a * q.transpose();
                probes.iter().all(|v| (p5.eval(&(b * v)) - p5.eval(v)).abs() < 1e-9)
            });
            if screened && check_invariance(p5, &r.conjugate(m))?.pass {
                found.push(r);
            }
        }
    }
    Ok(found)
}
