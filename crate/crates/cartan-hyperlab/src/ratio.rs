//! The two-sided bound `1/C ≤ −Λ₁/Λ₅ ≤ C`.

use crate::sample::HyperbolicitySample;
use cartan_exact::rational::int;
use cartan_exact::Rational;

/// `C(δ) = 1000(δ+1)(3−δ) / (3(1−δ)²)`, exactly. Equals `1000/p₀⁴`.
pub fn ratio_constant(delta: &Rational) -> Rational {
    let one = int(1);
    let e = &one - delta;
    int(1000) * (delta + &one) * (int(3) - delta) / (int(3) * &e * &e)
}

pub fn ratio_constant_f64(delta: f64) -> f64 {
    1000.0 * (delta + 1.0) * (3.0 - delta) / (3.0 * (1.0 - delta).powi(2))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioCheck {
    pub pass: bool,
    pub ratio: f64,
    /// `ln C − |ln ratio|`: distance of the log-ratio from the nearer bound,
    /// negative on failure and `−∞` when `Λ₁` and `Λ₅` do not have strictly
    /// opposite signs.
    pub margin: f64,
}

/// `None` for degenerate samples, which the bound does not cover.
pub fn check_ratio_bound(s: &HyperbolicitySample) -> Option<RatioCheck> {
    if s.degenerate {
        return None;
    }
    let r = s.ratio;
    let margin = if r > 0.0 && r.is_finite() { s.c.ln() - r.ln().abs() } else { f64::NEG_INFINITY };
    Some(RatioCheck { pass: margin >= 0.0, ratio: r, margin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cartan_exact::rational::rat;

    #[test]
    fn constant_at_zero_is_one_thousand() {
        assert_eq!(ratio_constant(&int(0)), int(1000));
        assert_eq!(ratio_constant_f64(0.0), 1000.0);
    }

    #[test]
    fn constant_at_one_half() {
        assert_eq!(ratio_constant(&rat(1, 2)), int(5000));
        assert!((ratio_constant_f64(0.5) - 5000.0).abs() < 1e-9);
    }

    #[test]
    fn constant_is_thousand_over_p0_fourth() {
        // p₀⁴ = 3ε²/(4 − ε²) with ε = 1 − δ
        for k in 0..10 {
            let d = rat(k, 10);
            let e = int(1) - &d;
            let p04 = int(3) * &e * &e / (int(4) - &e * &e);
            assert_eq!(ratio_constant(&d), int(1000) / p04);
        }
    }
}
