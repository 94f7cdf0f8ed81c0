//! Helpers around [`num_rational::BigRational`].

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Always `num/den`, also for integers.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `n`, `n/d` and finite decimals such as `-0.125`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp);
        let n = BigInt::from_str(&digits).ok()?;
        let d = BigInt::from(10u32).pow(fp.len() as u32);
        let r = Rational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    BigInt::from_str(s).ok().map(Rational::from_integer)
}

pub fn to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Large operands: shift both to a common exponent first.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = (nb - db) - 60;
    let scaled = if shift > 0 {
        r.numer() / (r.denom() << shift as usize)
    } else {
        (r.numer() << (-shift) as usize) / r.denom()
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Exact conversion of a finite float.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Rational enclosure `lo ≤ √x ≤ hi` with `hi − lo ≤ 2^-bits`.
pub fn sqrt_enclosure(x: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!x.is_negative(), "sqrt of a negative rational");
    if x.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    let scale = BigInt::one() << (2 * bits as usize);
    let y = x * Rational::from_integer(scale.clone());
    // floor(sqrt(floor(y))) ≤ sqrt(y) < floor(sqrt(floor(y))) + 1
    let fl = y.floor().to_integer();
    let s = fl.sqrt();
    let den = BigInt::one() << bits as usize;
    let lo = Rational::new(s.clone(), den.clone());
    let hi = Rational::new(s + 1, den);
    (lo, hi)
}

/// `Some(r)` with `r ≥ 0` and `r² = x` when `x` is a rational square.
pub fn exact_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

pub fn sign(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << e as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_as_num_den() {
        assert_eq!(fmt_rational(&rat(6, -4)), "-3/2");
        assert_eq!(fmt_rational(&int(7)), "7/1");
    }

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-0.125"), Some(rat(-1, 8)));
        assert_eq!(parse_rational("0.1"), Some(rat(1, 10)));
        assert_eq!(parse_rational("12"), Some(int(12)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn sqrt3_enclosure_is_tight() {
        let (lo, hi) = sqrt_enclosure(&int(3), 110);
        assert!(&lo * &lo <= int(3) && int(3) <= &hi * &hi);
        assert!(&hi - &lo <= rat(1, 1_000_000_000_000_000) * rat(1, 1_000_000_000_000_000));
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(exact_sqrt(&int(3)), None);
    }

    #[test]
    fn to_f64_handles_huge_operands() {
        let big = Rational::new(BigInt::from(10).pow(400) + 1, BigInt::from(10).pow(400));
        assert!((to_f64(&big) - 1.0).abs() < 1e-15);
        assert!((to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-17);
    }
}
