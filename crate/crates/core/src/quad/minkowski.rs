//! Minkowski bound `(1/2) sqrt|d|` (real) or `(2/π) sqrt|d|` (imaginary).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::ring::QuadraticField;
use crate::numeric::{Fixed, Precision};

/// Lower end of a certified enclosure `3.14159265358 < π < 3.14159265359`.
pub fn pi_lower() -> BigRational {
    BigRational::new(BigInt::from(314_159_265_358u64), BigInt::from(100_000_000_000u64))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinkowskiBound {
    pub m: i64,
    /// Exact rational upper bound on the square of the bound.
    pub squared_upper: String,
    /// Every ideal class holds an ideal with norm at most this.
    pub norm_limit: u64,
    /// Least integer strictly above the bound.
    pub ceiling: u64,
    pub decimal: String,
}

pub fn minkowski_bound(field: &QuadraticField) -> MinkowskiBound {
    let abs_d = BigInt::from(field.discriminant()).abs();
    let squared = if field.is_real() {
        BigRational::new(abs_d.clone(), BigInt::from(4))
    } else {
        let pi = pi_lower();
        BigRational::from_integer(BigInt::from(4) * &abs_d) / (&pi * &pi)
    };
    // floor(sqrt(r)) of a rational r = p/q is floor(sqrt(floor(p/q)))
    let floor_sq = squared.floor().to_integer().sqrt();
    let norm_limit = floor_sq.to_u64().expect("bound fits in u64");

    let prec = Precision::with_guard(30);
    let root = prec.sqrt(&prec.from_int(&abs_d));
    let value = if field.is_real() {
        Fixed(root.0 / 2)
    } else {
        let two_root = Fixed(root.0 * 2);
        prec.div(&two_root, &prec.pi())
    };
    MinkowskiBound {
        m: field.m(),
        squared_upper: squared.to_string(),
        norm_limit,
        ceiling: norm_limit + 1,
        decimal: prec.to_decimal_string(&value, 20),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bound(m: i64) -> MinkowskiBound {
        minkowski_bound(&QuadraticField::new(m).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(bound(2).norm_limit, 1);
        assert!(bound(2).decimal.starts_with("1.41421356"));
        assert_eq!(bound(-5).norm_limit, 2);
        assert!(bound(-5).decimal.starts_with("2.8470"));
        assert_eq!(bound(-23).norm_limit, 3);
        assert!(bound(-23).decimal.starts_with("3.0531"));
        assert_eq!(bound(-1).norm_limit, 1);
        assert_eq!(bound(-163).norm_limit, 8);
    }

    #[test]
    fn limit_agrees_with_float_bound() {
        for m in [-199i64, -107, -74, -43, -2, 3, 5, 7, 71, 94] {
            let f = QuadraticField::new(m).unwrap();
            let d = f.discriminant().unsigned_abs() as f64;
            let x = if m > 0 { d.sqrt() / 2.0 } else { 2.0 * d.sqrt() / std::f64::consts::PI };
            assert_eq!(minkowski_bound(&f).norm_limit, x.floor() as u64, "m = {m}");
        }
    }
}
