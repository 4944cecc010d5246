//! Principality testing by a bounded norm-form search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ideal::QuadIdeal;
use super::ring::{QuadInt, QuadraticField};
use crate::error::{Error, Result};
use crate::units;

/// A generator of `ideal` when it is principal.
///
/// Writes `I = c J` with `J = Z a + Z (b + w)` primitive and looks for
/// `u + v w` in `J` with `|N(u + v w)| = a`. For fixed `v` the norm equation is
/// a quadratic in `u` with discriminant `d v^2 + 4T`, so only perfect squares
/// need checking. The range of `v` is finite: `|d| v^2 <= 4a` for imaginary
/// fields, and `d v^2 <= 4 a λ` for real fields after moving the candidate by a
/// power of the fundamental unit `λ` so that `1/λ <= α^2/a < λ`.
pub fn is_principal(field: &QuadraticField, ideal: &QuadIdeal) -> Result<Option<QuadInt>> {
    if ideal.m() != field.m() {
        return Err(Error::IdealFieldMismatch(field.m()));
    }
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let a = ideal.a().clone();
    let b = ideal.b().clone();
    let d = BigInt::from(field.discriminant());
    let t = field.omega_trace();
    let primitive = QuadIdeal::from_parts(field, a.clone(), b.clone(), BigInt::one())?;

    // v^2 * |d| <= limit
    let (targets, limit) = if field.is_real() {
        let lambda = units::fundamental_unit(field)?;
        let (x, y) = field.to_half_sqrt_coords(&lambda);
        // λ = (x + y sqrt m)/2 < (x + y (isqrt m + 1))/2 for x, y > 0
        let lambda_up = (x + y * (BigInt::from(field.m()).sqrt() + 1)) / 2 + 1;
        (vec![a.clone(), -a.clone()], BigInt::from(4) * &a * lambda_up)
    } else {
        (vec![a.clone()], BigInt::from(4) * &a)
    };
    let abs_d = d.abs();

    let mut v = BigInt::zero();
    while &v * &v * &abs_d <= limit {
        for target in &targets {
            let disc = &d * &v * &v + BigInt::from(4) * target;
            if disc.is_negative() {
                continue;
            }
            let s = disc.sqrt();
            if &s * &s != disc {
                continue;
            }
            for sign in [BigInt::one(), -BigInt::one()] {
                let num = -&t * &v + &s * &sign;
                if !num.is_even() {
                    continue;
                }
                let u = num / 2;
                if !Integer::is_multiple_of(&(&u - &b * &v), &a) {
                    continue;
                }
                let gamma = QuadInt::new(u, v.clone());
                if QuadIdeal::principal(field, &gamma) == primitive {
                    return Ok(Some(gamma.scale(ideal.c())));
                }
            }
        }
        v += 1;
    }
    Ok(None)
}

/// `I ~ J` iff `I conj(J)` is principal.
pub fn equivalent(field: &QuadraticField, i: &QuadIdeal, j: &QuadIdeal) -> Result<bool> {
    let p = i.product(field, &j.conjugate(field)?)?;
    Ok(is_principal(field, &p)?.is_some())
}

/// The classical test: nonzero `α, β` with `α I = β J`.
///
/// Since `J conj(J) = (N(J))`, this holds iff `N(J) I = γ J` for some `γ`,
/// i.e. iff `I conj(J) = (γ)`. Returns the witnesses `(N(J), γ)`.
pub fn equivalence_witness(
    field: &QuadraticField,
    i: &QuadIdeal,
    j: &QuadIdeal,
) -> Result<Option<(BigInt, QuadInt)>> {
    let p = i.product(field, &j.conjugate(field)?)?;
    let Some(gamma) = is_principal(field, &p)? else {
        return Ok(None);
    };
    let alpha = j.norm()?;
    let lhs = i.product(field, &QuadIdeal::principal(field, &QuadInt::from_int(alpha.clone())))?;
    let rhs = j.product(field, &QuadIdeal::principal(field, &gamma))?;
    if lhs != rhs {
        return Err(Error::Invalid("equivalence witness failed to verify".into()));
    }
    Ok(Some((alpha, gamma)))
}
