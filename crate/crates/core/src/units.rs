//! Unit groups of quadratic rings.
//!
//! Imaginary rings have a finite cyclic unit group of order 2, 4 or 6.
//! Real rings have units `±λ^k` for a fundamental unit `λ > 1`, found as the
//! first continued-fraction convergent `p/q` of `w` for which `p - q w` is a
//! unit; `λ` is then its conjugate.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{Fixed, Precision};
use crate::quad::{OmegaKind, QuadInt, QuadIntJson, QuadraticField};

/// Default cap on continued-fraction states before giving up.
pub const DEFAULT_PERIOD_CAP: usize = 1_000_000;

/// Decimal digits of the reported regulator.
pub const REGULATOR_DIGITS: u32 = 50;

/// Periodic expansion `[a0; a1, ..., a_{pre-1}, (a_pre, ..., a_{pre+period-1})]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub quotients: Vec<BigInt>,
    pub preperiod: usize,
    pub period: usize,
}

/// Right-hand side of a Pell equation `x^2 - m y^2 = N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PellKind {
    PlusOne,
    MinusOne,
    PlusFour,
    MinusFour,
}

impl PellKind {
    pub fn rhs(self) -> i64 {
        match self {
            PellKind::PlusOne => 1,
            PellKind::MinusOne => -1,
            PellKind::PlusFour => 4,
            PellKind::MinusFour => -4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    pub x: BigInt,
    pub y: BigInt,
    pub kind: PellKind,
}

/// `(P + sqrt D)/Q` driven by the integer recurrence
/// `a = floor((P + sqrt D)/Q)`, `P' = aQ - P`, `Q' = (D - P'^2)/Q`.
struct QuadraticIrrational {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    isqrt_d: BigInt,
}

impl QuadraticIrrational {
    fn of_omega(field: &QuadraticField) -> Self {
        let d = BigInt::from(field.m());
        let (p, q) = match field.omega_kind() {
            OmegaKind::Sqrtm => (BigInt::zero(), BigInt::one()),
            OmegaKind::HalfOnePlusSqrtm => (BigInt::one(), BigInt::from(2)),
        };
        let isqrt_d = d.sqrt();
        Self { p, q, d, isqrt_d }
    }

    fn of_sqrt(m: i64) -> Self {
        let d = BigInt::from(m);
        Self { p: BigInt::zero(), q: BigInt::one(), isqrt_d: d.sqrt(), d }
    }

    fn state(&self) -> (BigInt, BigInt) {
        (self.p.clone(), self.q.clone())
    }

    /// Emits the next partial quotient and advances.
    fn step(&mut self) -> BigInt {
        // sqrt D is irrational, so floor((P + sqrt D)/Q) follows from isqrt for either sign of Q
        let num = &self.p + &self.isqrt_d;
        let a = if self.q.is_positive() {
            num / &self.q
        } else {
            -((num / -&self.q) + BigInt::one())
        };
        let p_next = &a * &self.q - &self.p;
        let q_next = (&self.d - &p_next * &p_next) / &self.q;
        self.p = p_next;
        self.q = q_next;
        a
    }
}

fn expand(mut x: QuadraticIrrational, cap: usize) -> Result<ContinuedFraction> {
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut quotients = Vec::new();
    for i in 0..=cap {
        if let Some(&start) = seen.get(&x.state()) {
            return Ok(ContinuedFraction { preperiod: start, period: i - start, quotients });
        }
        seen.insert(x.state(), i);
        quotients.push(x.step());
    }
    Err(Error::PeriodExceeded(cap))
}

/// Continued fraction of `w` (`sqrt m` or `(1 + sqrt m)/2`) for a real field.
pub fn continued_fraction_of_omega(field: &QuadraticField, max_period: usize) -> Result<ContinuedFraction> {
    if !field.is_real() {
        return Err(Error::NoFundamentalUnit(field.m()));
    }
    expand(QuadraticIrrational::of_omega(field), max_period)
}

/// Convergents `p_k / q_k` of a quadratic irrational, at most `limit` of them.
fn convergents(x: QuadraticIrrational, limit: usize) -> impl Iterator<Item = (BigInt, BigInt)> {
    let mut x = x;
    let (mut p0, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q0, mut q1) = (BigInt::one(), BigInt::zero());
    (0..limit).map(move |_| {
        let a = x.step();
        let p = &a * &p1 + &p0;
        let q = &a * &q1 + &q0;
        p0 = std::mem::replace(&mut p1, p.clone());
        q0 = std::mem::replace(&mut q1, q.clone());
        (p, q)
    })
}

/// The fundamental unit `λ > 1` of a real quadratic ring.
pub fn fundamental_unit(field: &QuadraticField) -> Result<QuadInt> {
    fundamental_unit_with_cap(field, DEFAULT_PERIOD_CAP)
}

pub fn fundamental_unit_with_cap(field: &QuadraticField, cap: usize) -> Result<QuadInt> {
    if !field.is_real() {
        return Err(Error::NoFundamentalUnit(field.m()));
    }
    // a unit shows up by the end of the second period
    let limit = 2 * cap + 2;
    for (p, q) in convergents(QuadraticIrrational::of_omega(field), limit) {
        let small = QuadInt::new(p, -q);
        if field.is_unit(&small) {
            return Ok(field.conj(&small));
        }
    }
    Err(Error::PeriodExceeded(cap))
}

/// Least positive solution of `x^2 - m y^2 = N`, if one exists.
pub fn pell_solve(m: i64, kind: PellKind) -> Result<Option<PellSolution>> {
    let field = QuadraticField::new(m)?;
    if !field.is_real() {
        return Err(Error::Invalid(format!("Pell equations need m > 0, got {m}")));
    }
    let cf = expand(QuadraticIrrational::of_sqrt(m), DEFAULT_PERIOD_CAP)?;
    let limit = cf.preperiod + 2 * cf.period + 1;
    let target = BigInt::from(kind.rhs());
    let mm = BigInt::from(m);
    let from_sqrt_cf = |want: &BigInt| {
        convergents(QuadraticIrrational::of_sqrt(m), limit)
            .find(|(p, q)| &(p * p - &mm * q * q) == want)
    };
    let found = match kind {
        PellKind::PlusOne | PellKind::MinusOne => from_sqrt_cf(&target),
        PellKind::PlusFour | PellKind::MinusFour if m.rem_euclid(4) != 1 => {
            // x and y are both even here, so halve to the ±1 equation
            from_sqrt_cf(&(&target / 4)).map(|(p, q)| (p * 2, q * 2))
        }
        PellKind::PlusFour | PellKind::MinusFour => {
            // units (x + y sqrt m)/2 of Z[w], read off the convergents of w
            let cf_w = continued_fraction_of_omega(&field, DEFAULT_PERIOD_CAP)?;
            let limit = cf_w.preperiod + 2 * cf_w.period + 1;
            convergents(QuadraticIrrational::of_omega(&field), limit).find_map(|(p, q)| {
                let x = BigInt::from(2) * &p - &q;
                (&x * &x - &mm * &q * &q == target).then_some((x, q))
            })
        }
    };
    Ok(found.map(|(x, y)| PellSolution { x, y, kind }))
}

/// Roots of unity in the ring, listed as powers `ζ^0, ζ^1, ...` of the generator.
pub fn torsion_units(field: &QuadraticField) -> Vec<QuadInt> {
    let g = torsion_generator(field);
    let w = torsion_order(field);
    let mut out = Vec::with_capacity(w as usize);
    let mut acc = QuadInt::one();
    for _ in 0..w {
        out.push(acc.clone());
        acc = field.mul(&acc, &g);
    }
    out
}

pub fn torsion_order(field: &QuadraticField) -> u32 {
    match field.m() {
        -1 => 4,
        -3 => 6,
        _ => 2,
    }
}

/// The root of unity of least positive argument: `i`, `(1 + sqrt -3)/2`, or `-1`.
pub fn torsion_generator(field: &QuadraticField) -> QuadInt {
    match field.m() {
        // w = sqrt(-1) and w = (1 + sqrt(-3))/2 respectively
        -1 | -3 => QuadInt::omega(),
        _ => QuadInt::from_int(-1),
    }
}

/// Fixed-point value of `(x + y sqrt m)/2` at the given precision (real fields).
pub fn real_value(field: &QuadraticField, v: &QuadInt, prec: &Precision) -> Fixed {
    let (x, y) = field.to_half_sqrt_coords(v);
    let sqrt_m = prec.sqrt(&prec.from_int(&BigInt::from(field.m())));
    let sum = Fixed(prec.from_int(&x).0 + prec.mul(&prec.from_int(&y), &sqrt_m).0);
    Fixed(sum.0 / 2)
}

/// `log λ` for real fields, `1` when the unit rank is zero.
pub fn regulator(field: &QuadraticField, prec: &Precision) -> Result<Fixed> {
    if !field.is_real() {
        return Ok(prec.one());
    }
    let lambda = fundamental_unit(field)?;
    Ok(prec.ln(&real_value(field, &lambda, prec)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitGroupReport {
    pub m: i64,
    pub w: u32,
    pub torsion_generator: QuadIntJson,
    pub rank: u32,
    pub fundamental_unit: Option<QuadIntJson>,
    pub fundamental_unit_text: Option<String>,
    pub regulator: String,
    pub precision_digits: u32,
}

pub fn unit_group_report(field: &QuadraticField) -> Result<UnitGroupReport> {
    unit_group_report_with_precision(field, REGULATOR_DIGITS)
}

pub fn unit_group_report_with_precision(field: &QuadraticField, digits: u32) -> Result<UnitGroupReport> {
    let prec = Precision::with_guard(digits);
    let lambda = if field.is_real() { Some(fundamental_unit(field)?) } else { None };
    let reg = regulator(field, &prec)?;
    Ok(UnitGroupReport {
        m: field.m(),
        w: torsion_order(field),
        torsion_generator: torsion_generator(field).to_json(),
        rank: u32::from(field.is_real()),
        fundamental_unit_text: lambda.as_ref().map(|l| field.format(l)),
        fundamental_unit: lambda.map(|l| l.to_json()),
        regulator: prec.to_decimal_string(&reg, digits),
        precision_digits: digits,
    })
}

/// The unique `(k, a)` with `u = ζ^k λ^a`, `ζ` the torsion generator.
pub fn unit_membership(field: &QuadraticField, u: &QuadInt) -> Result<(u32, i64)> {
    if !field.is_unit(u) {
        return Err(Error::NotUnit(field.format(u)));
    }
    let mut u = u.clone();
    let mut a = 0i64;
    if field.is_real() {
        let lambda = fundamental_unit(field)?;
        // λ^-1 = N(λ) conj(λ)
        let lambda_inv = field.conj(&lambda).scale(&field.norm(&lambda));
        let one = QuadInt::one();
        while !field.real_abs_lt(&u, &lambda) {
            u = field.mul(&u, &lambda_inv);
            a += 1;
        }
        while field.real_abs_lt(&u, &one) {
            u = field.mul(&u, &lambda);
            a -= 1;
        }
    }
    let k = torsion_units(field)
        .iter()
        .position(|z| *z == u)
        .ok_or_else(|| Error::Invalid("unit decomposition failed".into()))?;
    Ok((k as u32, a))
}

/// `ζ^k λ^a` computed exactly.
pub fn unit_from_exponents(field: &QuadraticField, k: u32, a: i64) -> Result<QuadInt> {
    let zeta = field.pow(&torsion_generator(field), k);
    if a == 0 {
        return Ok(zeta);
    }
    let lambda = fundamental_unit(field)?;
    let base = if a > 0 {
        lambda
    } else {
        field.conj(&lambda).scale(&field.norm(&lambda))
    };
    Ok(field.mul(&zeta, &field.pow(&base, a.unsigned_abs() as u32)))
}
