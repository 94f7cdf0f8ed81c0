//! `P₅ = x1³ + (3/2)x1(z1² + z2² − 2z3² − 2x2²) + (3√3/2)(x2z1² − x2z2² + 2z1z2z3)`.

use crate::{GeometryError, Mat5, Vec5};
use cartan_exact::expr::parse_poly;
use cartan_exact::{QuadExt, Rational, SparsePoly};

pub const VARS: [&str; 5] = ["x1", "x2", "z1", "z2", "z3"];

const P5_TEXT: &str = "x1^3 + 3/2*x1*(z1^2 + z2^2 - 2*z3^2 - 2*x2^2) + 3*sqrt(3)/2*(x2*z1^2 - x2*z2^2 + 2*z1*z2*z3)";

/// `3√3/2`
const K: f64 = 2.598_076_211_353_316;

#[derive(Clone, Debug)]
pub struct CartanCubic {
    poly: SparsePoly,
}

/// The cubic with its homogeneity and harmonicity verified.
pub fn build_p5() -> CartanCubic {
    let poly = parse_poly(P5_TEXT).expect("static formula parses");
    CartanCubic::from_poly(poly).expect("P5 is a harmonic cubic")
}

pub fn laplacian(f: &SparsePoly) -> Result<SparsePoly, GeometryError> {
    let mut acc = SparsePoly::zero();
    for v in VARS {
        acc = &acc + &f.derivative(v)?.derivative(v)?;
    }
    Ok(acc)
}

/// `x·∇f − k·f`, zero exactly when `f` is homogeneous of degree `k`.
pub fn euler_defect(f: &SparsePoly, k: i64) -> Result<SparsePoly, GeometryError> {
    let mut acc = f.scale(&QuadExt::rational(cartan_exact::rational::int(-k)));
    for v in VARS {
        acc = &acc + &(&SparsePoly::var(v) * &f.derivative(v)?);
    }
    Ok(acc)
}

/// `(3p − p³)/2`, the value of the cubic at `(p, 0, √(1−p²), 0, 0)`.
pub fn normal_form_value(p: f64) -> f64 {
    (3.0 * p - p * p * p) / 2.0
}

impl CartanCubic {
    /// Accepts a polynomial in [`VARS`] that is a harmonic cubic form.
    pub fn from_poly(poly: SparsePoly) -> Result<Self, GeometryError> {
        let vars: Vec<String> = VARS.iter().map(|v| v.to_string()).collect();
        let poly = poly.with_vars(&vars)?;
        if !poly.is_homogeneous(3) {
            return Err(GeometryError::BadCubic("not homogeneous of degree 3".into()));
        }
        let lap = laplacian(&poly)?;
        if !lap.is_zero() {
            return Err(GeometryError::BadCubic(format!("Laplacian is {lap}")));
        }
        Ok(CartanCubic { poly })
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn eval_exact(&self, x: &[Rational; 5]) -> QuadExt {
        self.poly.eval_rational(x).expect("five coordinates")
    }

    pub fn eval(&self, x: &Vec5) -> f64 {
        let (x1, x2, z1, z2, z3) = (x[0], x[1], x[2], x[3], x[4]);
        x1 * x1 * x1
            + 1.5 * x1 * (z1 * z1 + z2 * z2 - 2.0 * z3 * z3 - 2.0 * x2 * x2)
            + K * (x2 * z1 * z1 - x2 * z2 * z2 + 2.0 * z1 * z2 * z3)
    }

    pub fn gradient(&self, x: &Vec5) -> Vec5 {
        let (x1, x2, z1, z2, z3) = (x[0], x[1], x[2], x[3], x[4]);
        Vec5::new(
            3.0 * x1 * x1 + 1.5 * (z1 * z1 + z2 * z2 - 2.0 * z3 * z3 - 2.0 * x2 * x2),
            -6.0 * x1 * x2 + K * (z1 * z1 - z2 * z2),
            3.0 * x1 * z1 + 2.0 * K * (x2 * z1 + z2 * z3),
            3.0 * x1 * z2 + 2.0 * K * (z1 * z3 - x2 * z2),
            -6.0 * x1 * z3 + 2.0 * K * z1 * z2,
        )
    }

    pub fn hessian(&self, x: &Vec5) -> Mat5 {
        let (x1, x2, z1, z2, z3) = (x[0], x[1], x[2], x[3], x[4]);
        let k2 = 2.0 * K;
        Mat5::new(
            6.0 * x1, -6.0 * x2, 3.0 * z1, 3.0 * z2, -6.0 * z3,
            -6.0 * x2, -6.0 * x1, k2 * z1, -k2 * z2, 0.0,
            3.0 * z1, k2 * z1, 3.0 * x1 + k2 * x2, k2 * z3, k2 * z2,
            3.0 * z2, -k2 * z2, k2 * z3, 3.0 * x1 - k2 * x2, k2 * z1,
            -6.0 * z3, 0.0, k2 * z2, k2 * z1, -6.0 * x1,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_exact::rational::int;

    fn e(i: usize) -> [Rational; 5] {
        std::array::from_fn(|k| int((k == i) as i64))
    }

    #[test]
    fn values_at_axes() {
        let p = build_p5();
        assert_eq!(p.eval_exact(&e(0)), QuadExt::rational(int(1)));
        assert_eq!(p.eval_exact(&e(2)), QuadExt::rational(int(0)));
    }

    #[test]
    fn gradient_at_e1() {
        let p = build_p5().poly().clone();
        let d1 = p.derivative("x1").unwrap().eval_rational(&e(0)).unwrap();
        let d5 = p.derivative("z3").unwrap().eval_rational(&e(0)).unwrap();
        assert_eq!(d1, QuadExt::rational(int(3)));
        assert_eq!(d5, QuadExt::rational(int(0)));
    }

    #[test]
    fn harmonic_and_euler() {
        let p = build_p5();
        assert!(laplacian(p.poly()).unwrap().is_zero());
        assert!(euler_defect(p.poly(), 3).unwrap().is_zero());
    }

    #[test]
    fn rejects_non_harmonic() {
        let f = parse_poly("x1^3").unwrap();
        assert!(matches!(CartanCubic::from_poly(f), Err(GeometryError::BadCubic(_))));
    }

    #[test]
    fn float_forms_agree_with_symbolic_derivatives() {
        let p = build_p5();
        let x = Vec5::new(0.3, -0.7, 0.2, 0.9, -0.4);
        let pt: Vec<f64> = x.iter().copied().collect();
        let f = p.poly();
        assert!((p.eval(&x) - f.eval_f64(&pt)).abs() < 1e-14);
        let g = p.gradient(&x);
        let h = p.hessian(&x);
        for (i, vi) in VARS.iter().enumerate() {
            let di = f.derivative(vi).unwrap();
            assert!((g[i] - di.eval_f64(&pt)).abs() < 1e-13);
            for (j, vj) in VARS.iter().enumerate() {
                let dij = di.derivative(vj).unwrap();
                assert!((h[(i, j)] - dij.eval_f64(&pt)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn value_on_the_normal_circle() {
        let p = build_p5();
        // (3/5, 0, 4/5, 0, 0)
        let x = [cartan_exact::rational::rat(3, 5), int(0), cartan_exact::rational::rat(4, 5), int(0), int(0)];
        let v = p.eval_exact(&x);
        let t = cartan_exact::rational::rat(3, 5);
        assert_eq!(v, QuadExt::rational((int(3) * &t - &t * &t * &t) / int(2)));
    }
}
