//! The Lie algebra of skew matrices `X` with `∇P₅(x)·Xx ≡ 0`, computed as
//! an exact nullspace over ℚ(√3), and the one-parameter groups `exp(φX)`.
//!
//! Every nonzero element of this algebra acts on ℝ⁵ with eigenvalues
//! `{0, ±iω, ±2iω}`, so `tr X² = −10ω²`. The basis is normalized to `ω = 1`,
//! and then `exp(φX) = I + α₁X + α₂X² + α₃X³ + α₄X⁴` with `α` polynomial in
//! `(cos φ, sin φ)`.

use crate::cubic::{CartanCubic, VARS};
use crate::group::CsMatrix;
use crate::{GeometryError, Mat5};
use cartan_exact::linsolve::nullspace;
use cartan_exact::rational::int;
use cartan_exact::{QuadExt, SparsePoly};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type ExactMat = [[QuadExt; 5]; 5];

#[derive(Clone, Debug)]
pub struct Stabilizer {
    basis: Vec<ExactMat>,
}

const PAIRS: [(usize, usize); 10] = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

fn zero_mat() -> ExactMat {
    std::array::from_fn(|_| std::array::from_fn(|_| QuadExt::zero()))
}

fn mat_mul(a: &ExactMat, b: &ExactMat) -> ExactMat {
    let mut out = zero_mat();
    for i in 0..5 {
        for j in 0..5 {
            out[i][j] = (0..5).fold(QuadExt::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j]));
        }
    }
    out
}

fn trace(a: &ExactMat) -> QuadExt {
    (0..5).fold(QuadExt::zero(), |acc, i| &acc + &a[i][i])
}

impl Stabilizer {
    pub fn compute(p5: &CartanCubic) -> Result<Self, GeometryError> {
        let grad: Vec<SparsePoly> = VARS.iter().map(|v| p5.poly().derivative(v)).collect::<Result<_, _>>()?;
        // column (i, j): ∂ᵢP·xⱼ − ∂ⱼP·xᵢ, the contribution of X_ij = −X_ji
        let cols: Vec<SparsePoly> = PAIRS
            .iter()
            .map(|&(i, j)| &(&grad[i] * &SparsePoly::var(VARS[j])) - &(&grad[j] * &SparsePoly::var(VARS[i])))
            .collect();
        let mut rows: BTreeMap<Vec<u32>, Vec<QuadExt>> = BTreeMap::new();
        for (k, col) in cols.iter().enumerate() {
            let col = col.with_vars(&VARS.iter().map(|v| v.to_string()).collect::<Vec<_>>())?;
            for (m, c) in col.terms() {
                rows.entry(m.clone()).or_insert_with(|| vec![QuadExt::zero(); PAIRS.len()])[k] = c.clone();
            }
        }
        let system: Vec<Vec<QuadExt>> = rows.into_values().collect();
        let null = nullspace(&system, PAIRS.len());
        if null.len() != 3 {
            return Err(GeometryError::Algebra(format!("expected a 3-dimensional algebra, found {}", null.len())));
        }
        let ten = QuadExt::rational(int(-10));
        let mut basis = Vec::new();
        for v in null {
            let mut x = zero_mat();
            for (k, &(i, j)) in PAIRS.iter().enumerate() {
                x[i][j] = v[k].clone();
                x[j][i] = -&v[k];
            }
            let t = trace(&mat_mul(&x, &x));
            if t != ten {
                return Err(GeometryError::Algebra(format!("basis element has tr X² = {t}, expected -10")));
            }
            basis.push(x);
        }
        Ok(Stabilizer { basis })
    }

    pub fn basis(&self) -> &[ExactMat] {
        &self.basis
    }

    pub fn numeric(&self, k: usize) -> Mat5 {
        Mat5::from_fn(|i, j| self.basis[k][i][j].to_f64())
    }

    /// `exp(φX_k)` with entries in `(c, s)`.
    pub fn exp_symbolic(&self, k: usize) -> CsMatrix {
        let x = &self.basis[k];
        let mut powers = vec![x.clone()];
        for _ in 1..4 {
            powers.push(mat_mul(powers.last().unwrap(), x));
        }
        let alphas = [
            "(4*s - s*c)/3",
            "((2*c^2 - 2) - 16*(c - 1))/12",
            "(s - s*c)/3",
            "((2*c^2 - 2) - 4*(c - 1))/12",
        ]
        .map(|t| cartan_exact::expr::parse_poly(t).unwrap());
        let mut e = vec![vec![SparsePoly::zero(); 5]; 5];
        for (i, row) in e.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = if i == j { SparsePoly::constant(QuadExt::one()) } else { SparsePoly::zero() };
                for (a, pw) in alphas.iter().zip(&powers) {
                    if !pw[i][j].is_zero() {
                        acc = &acc + &a.scale(&pw[i][j]);
                    }
                }
                *cell = acc;
            }
        }
        CsMatrix::from_entries(e)
    }

    /// `exp(φX_k)` in floating point by the same closed form.
    pub fn exp(&self, k: usize, phi: f64) -> Mat5 {
        exp_normalized(&self.numeric(k), phi)
    }

    /// The element among the basis whose half-turn fixes `e₁` and negates
    /// `e₃`; it maps `(p, 0, q, 0, 0)` to `(p, 0, −q, 0, 0)`.
    pub fn flip_index(&self) -> Option<usize> {
        (0..self.basis.len()).find(|&k| {
            let f = self.exp(k, std::f64::consts::PI);
            (f.column(0) - Mat5::identity().column(0)).norm() < 1e-12
                && (f.column(2) + Mat5::identity().column(2)).norm() < 1e-12
        })
    }
}

/// `exp(φX)` for a skew `X` with spectrum `{0, ±i, ±2i}`.
pub fn exp_normalized(x: &Mat5, phi: f64) -> Mat5 {
    let (s, c) = phi.sin_cos();
    let a1 = (4.0 * s - s * c) / 3.0;
    let a2 = ((2.0 * c * c - 2.0) - 16.0 * (c - 1.0)) / 12.0;
    let a3 = (s - s * c) / 3.0;
    let a4 = ((2.0 * c * c - 2.0) - 4.0 * (c - 1.0)) / 12.0;
    let x2 = x * x;
    let x3 = x2 * x;
    let x4 = x3 * x;
    Mat5::identity() + x * a1 + x2 * a2 + x3 * a3 + x4 * a4
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::build_p5;
    use crate::group::check_invariance;

    #[test]
    fn algebra_is_three_dimensional_and_invariant() {
        let p5 = build_p5();
        let st = Stabilizer::compute(&p5).unwrap();
        assert_eq!(st.basis().len(), 3);
        for k in 0..3 {
            let m = st.exp_symbolic(k);
            assert!(m.orthogonality_defect().is_zero());
            assert!(check_invariance(&p5, &m).unwrap().pass);
        }
    }

    #[test]
    fn closed_form_matches_series() {
        let st = Stabilizer::compute(&build_p5()).unwrap();
        let x = st.numeric(1);
        let phi = 0.83;
        let mut term = Mat5::identity();
        let mut sum = Mat5::identity();
        for n in 1..40 {
            term = term * x * (phi / n as f64);
            sum += term;
        }
        assert!((sum - st.exp(1, phi)).norm() < 1e-12);
    }

    #[test]
    fn half_turn_flips_the_normal_circle() {
        let st = Stabilizer::compute(&build_p5()).unwrap();
        let k = st.flip_index().expect("a flipping element exists");
        let f = st.exp(k, std::f64::consts::PI);
        let v = crate::Vec5::new(0.6, 0.0, 0.8, 0.0, 0.0);
        assert!((f * v - crate::Vec5::new(0.6, 0.0, -0.8, 0.0, 0.0)).norm() < 1e-12);
    }
}
