//! The difference matrix `M_δ(a, b, O) = D²w(a) − Oᵀ·D²w(b)·O` and its spectrum.

use crate::orthogonal::Orthogonal5;
use crate::LabError;
use cartan_exact::rational::to_f64;
use cartan_exact::Rational;
use cartan_geometry::{CartanCubic, Mat5, Vec5};
use cartan_spectrum::hessian::hessian_f64;
use cartan_spectrum::SymMatrix5;

/// Relative Frobenius threshold below which `M` counts as zero.
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct HyperbolicitySample {
    pub a: Vec5,
    pub b: Vec5,
    pub o: Orthogonal5,
    pub delta: Rational,
    /// `Λ₁ ≥ … ≥ Λ₅`.
    pub lambda: [f64; 5],
    /// `−Λ₁/Λ₅`.
    pub ratio: f64,
    /// `C(δ)`.
    pub c: f64,
    /// `K = (|a|/|b|)^{1+δ}`, which is `|b|^{−1−δ}` on normalized samples.
    pub k: f64,
    pub trace: f64,
    /// `−(1+δ)(8−δ)(P₅(a)/|a|^{3+δ} − P₅(b)/|b|^{3+δ})`.
    pub trace_expected: f64,
    /// Size of the two Hessians, the scale for absolute tolerances.
    pub scale: f64,
    pub degenerate: bool,
}

impl HyperbolicitySample {
    pub fn trace_residual(&self) -> f64 {
        (self.trace - self.trace_expected).abs() / self.scale.max(1.0)
    }
}

/// Rescales so that `max(|a|, |b|) = 1` and swaps so that `|b| ≤ |a|`.
/// `D²w` is homogeneous of degree `−δ`, so the ratio is unchanged by the
/// scaling; the swap replaces `(M, O)` by `(−OMOᵀ, Oᵀ)` and the caller must
/// account for it (the returned flag is true when a swap happened).
pub fn normalize(a: &Vec5, b: &Vec5) -> (Vec5, Vec5, bool) {
    let (na, nb) = (a.norm(), b.norm());
    if nb <= na {
        (a / na, b / na, false)
    } else {
        (b / nb, a / nb, true)
    }
}

pub fn delta_matrix_spectrum(
    p5: &CartanCubic,
    a: &Vec5,
    b: &Vec5,
    o: &Orthogonal5,
    delta: &Rational,
) -> Result<HyperbolicitySample, LabError> {
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return Err(LabError::ZeroVector);
    }
    let d = to_f64(delta);
    let ha = hessian_f64(p5, a, d)?.to_mat5();
    let hb = hessian_f64(p5, b, d)?.to_mat5();
    let om = o.matrix();
    let m: Mat5 = ha - om.transpose() * hb * om;
    let sym = SymMatrix5::from_mat5(&m);
    let scale = ha.norm() + hb.norm();
    let degenerate = m.norm() <= DEGENERACY_TOL * scale;
    let lambda = sym.eigenvalues();
    let trace_expected = -(1.0 + d) * (8.0 - d) * (p5.eval(a) / na.powf(3.0 + d) - p5.eval(b) / nb.powf(3.0 + d));
    Ok(HyperbolicitySample {
        a: *a,
        b: *b,
        o: o.clone(),
        delta: delta.clone(),
        lambda,
        ratio: -lambda[0] / lambda[4],
        c: crate::ratio::ratio_constant_f64(d),
        k: (na / nb).powf(1.0 + d),
        trace: sym.trace_f64(),
        trace_expected,
        scale,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_exact::rational::{int, rat};
    use cartan_geometry::build_p5;

    fn unit(v: [f64; 5]) -> Vec5 {
        Vec5::from_column_slice(&v).normalize()
    }

    #[test]
    fn equal_points_give_degenerate_sample() {
        let p5 = build_p5();
        let a = unit([0.3, -0.2, 0.5, 0.1, 0.7]);
        let s = delta_matrix_spectrum(&p5, &a, &a, &Orthogonal5::identity(), &rat(1, 4)).unwrap();
        assert!(s.degenerate);
    }

    #[test]
    fn antipodal_points_double_the_spectrum() {
        let p5 = build_p5();
        let a = unit([0.3, -0.2, 0.5, 0.1, 0.7]);
        for delta in [int(0), rat(1, 2)] {
            let s = delta_matrix_spectrum(&p5, &a, &(-a), &Orthogonal5::identity(), &delta).unwrap();
            let l = hessian_f64(&p5, &a, to_f64(&delta)).unwrap().eigenvalues();
            for i in 0..5 {
                assert!((s.lambda[i] - 2.0 * l[i]).abs() < 1e-10, "{} vs {}", s.lambda[i], l[i]);
            }
            assert!(!s.degenerate);
        }
    }

    #[test]
    fn trace_matches_the_harmonic_identity() {
        let p5 = build_p5();
        let a = unit([0.1, 0.9, -0.3, 0.2, 0.4]);
        let b = unit([-0.5, 0.1, 0.2, 0.6, -0.1]) * 0.37;
        let o = Orthogonal5::identity().rotate(0, 2, 0.4).rotate(1, 4, 1.3);
        let s = delta_matrix_spectrum(&p5, &a, &b, &o, &rat(3, 4)).unwrap();
        assert!(s.trace_residual() <= 1e-9);
        assert!((s.k - 0.37f64.powf(-1.75)).abs() < 1e-9);
    }

    #[test]
    fn zero_vector_rejected() {
        let p5 = build_p5();
        let a = unit([1.0, 0.0, 0.0, 0.0, 0.0]);
        let r = delta_matrix_spectrum(&p5, &a, &Vec5::zeros(), &Orthogonal5::identity(), &int(0));
        assert!(matches!(r, Err(LabError::ZeroVector)));
    }

    #[test]
    fn normalize_swaps_larger_point_first() {
        let a = Vec5::new(0.0, 2.0, 0.0, 0.0, 0.0);
        let b = Vec5::new(4.0, 0.0, 0.0, 0.0, 0.0);
        let (x, y, swapped) = normalize(&a, &b);
        assert!(swapped);
        assert_eq!(x, Vec5::new(1.0, 0.0, 0.0, 0.0, 0.0));
        assert_eq!(y, Vec5::new(0.0, 0.5, 0.0, 0.0, 0.0));
    }
}
