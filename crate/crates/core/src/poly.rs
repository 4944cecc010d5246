//! Exact univariate polynomials over Z and Q.
//!
//! Coefficients are stored densely in ascending degree order. Trailing
//! zeros are always stripped, so the zero polynomial is the empty vector
//! and structural equality is mathematical equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};

pub type Rational = BigRational;

fn strip<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// A polynomial in Z[x].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

/// A polynomial in Q[x]; every coefficient is kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        strip(&mut coeffs);
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn to_rational(&self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Positive content and the primitive part carrying the sign.
    pub fn content_and_primitive_part(&self) -> Result<(BigInt, IntegerPolynomial)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let content = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let primitive = IntegerPolynomial::new(self.coeffs.iter().map(|c| c / &content).collect());
        Ok((content, primitive))
    }

    /// A prime satisfying Eisenstein's criterion, searched among the prime
    /// divisors of the constant term. `None` says nothing about reducibility.
    pub fn eisenstein_witness(&self) -> Result<Option<BigInt>> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::ConstantPolynomial),
        };
        let constant = &self.coeffs[0];
        if constant.is_zero() {
            return Ok(None);
        }
        let primes = arith::factor_big(constant.magnitude())?;
        for (p, _) in primes {
            let p = BigInt::from(p);
            let p2 = &p * &p;
            let divides = |c: &BigInt| (c % &p).is_zero();
            if !divides(&self.coeffs[n])
                && self.coeffs[..n].iter().all(divides)
                && !(constant % &p2).is_zero()
            {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    /// `1 + x + ... + x^(p-1)`.
    pub fn cyclotomic_prime(p: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Self::new(vec![BigInt::one(); p as usize]))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Text form, see [`format_terms`].
    pub fn to_text(&self) -> String {
        format_terms(&self.coeffs)
    }
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        strip(&mut coeffs);
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Monic associate; the zero polynomial maps to itself.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division with exact rational arithmetic.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d = divisor.degree().ok_or(Error::ZeroDivisor)?;
        let lc_inv = divisor.coeffs[d].recip();
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree().filter(|&n| n >= d) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut quot = vec![Rational::zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let c = &rem[k + d] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            quot[k] = c;
        }
        rem.truncate(d);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic gcd by the Euclidean algorithm, normalizing each remainder.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b)?.monic();
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc_inv = r0.leading().expect("nonzero").recip();
        Ok((r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv)))
    }

    /// The polynomial over Z when every coefficient is an integer.
    pub fn to_integer(&self) -> Option<IntegerPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntegerPolynomial::new)
    }

    pub fn to_text(&self) -> String {
        format_terms(&self.coeffs)
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

/// Renders `c0 + c1*x + c2*x^2 + ...`, omitting zero terms; the zero
/// polynomial renders as `0`.
fn format_terms<T: fmt::Display + Zero>(coeffs: &[T]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| match i {
            0 => c.to_string(),
            1 => format!("{c}*x"),
            _ => format!("{c}*x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad number `{s}`")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Canonical text of a rational: `n` or `n/d`.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses sums of terms like `3/2*x^2`, `- x`, `7`, `x^3 - 2`.
fn parse_terms(s: &str) -> Result<Vec<Rational>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..bytes.len() {
        // a sign starts a new term unless it follows `^`, `*`, `/` or another sign
        if (bytes[i] == b'+' || bytes[i] == b'-') && !b"^*/+-".contains(&bytes[i - 1]) {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);

    let mut coeffs: Vec<Rational> = Vec::new();
    for term in terms {
        let (sign, body) = match term.strip_prefix('+') {
            Some(rest) => (Rational::one(), rest),
            None => match term.strip_prefix('-') {
                Some(rest) => (-Rational::one(), rest),
                None => (Rational::one(), term),
            },
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("dangling sign in `{s}`")));
        }
        let (coef, power) = match body.find('x') {
            None => (parse_rational(body)?, 0usize),
            Some(pos) => {
                let head = body[..pos].trim_end_matches('*');
                let coef = if head.is_empty() {
                    Rational::one()
                } else {
                    parse_rational(head)?
                };
                let tail = &body[pos + 1..];
                let power = if tail.is_empty() {
                    1
                } else {
                    let exp = tail
                        .strip_prefix('^')
                        .ok_or_else(|| Error::Parse(format!("bad term `{term}`")))?;
                    exp.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?
                };
                (coef, power)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Rational::zero());
        }
        coeffs[power] += sign * coef;
    }
    Ok(coeffs)
}

impl FromStr for RationalPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('[') {
            let raw: Vec<serde_json::Value> =
                serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
            return Ok(Self::new(raw.iter().map(json_rational).collect::<Result<_>>()?));
        }
        Ok(Self::new(parse_terms(s)?))
    }
}

impl FromStr for IntegerPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RationalPolynomial::from_str(s)?
            .to_integer()
            .ok_or_else(|| Error::Parse(format!("`{s}` has non-integer coefficients")))
    }
}

/// Accepts a JSON string (`"3/4"`) or integer literal.
pub fn json_rational(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a rational, got {other}"))),
    }
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl Serialize for RationalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(rational_to_string))
    }
}

impl<'de> Deserialize<'de> for RationalPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.iter()
            .map(json_rational)
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
            .map_err(serde::de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for IntegerPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RationalPolynomial::deserialize(d)?
            .to_integer()
            .ok_or_else(|| serde::de::Error::custom("non-integer coefficient"))
    }
}

/// Lowest common multiple of the coefficient denominators.
pub fn denominator_lcm(coeffs: &[Rational]) -> BigInt {
    coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Rounds a rational to the nearest `f64`, for diagnostics only.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

pub fn abs_rational(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(s: &str) -> RationalPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn div_rem_examples() {
        let (q, r) = rp("x^2 - 2").div_rem(&rp("x - 1")).unwrap();
        assert_eq!(q, rp("x + 1"));
        assert_eq!(r, rp("-1"));
        // q*d + r reproduces the dividend
        assert_eq!(&(&q * &rp("x - 1")) + &r, rp("x^2 - 2"));

        let p = rp("3*x^3 - 1/2*x + 5");
        let (q, r) = p.div_rem(&p).unwrap();
        assert_eq!((q, r), (RationalPolynomial::one(), RationalPolynomial::zero()));

        let (q, r) = rp("x^3 - 1").div_rem(&rp("x - 1")).unwrap();
        assert_eq!(q, rp("x^2 + x + 1"));
        assert!(r.is_zero());

        assert_eq!(rp("x").div_rem(&RationalPolynomial::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(rp("x^2 - 1").gcd(&rp("x - 1")).unwrap(), rp("x - 1"));
        assert_eq!(rp("x^2 - 2").gcd(&rp("x^2 - 3")).unwrap(), RationalPolynomial::one());
        assert_eq!(rp("2*x^2 + 4").gcd(&RationalPolynomial::zero()).unwrap(), rp("x^2 + 2"));
        assert_eq!(
            RationalPolynomial::zero().gcd(&RationalPolynomial::zero()),
            Err(Error::GcdOfZeros)
        );
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = rp("x^2 - 2");
        let b = rp("x + 1");
        let (g, s, t) = a.ext_gcd(&b).unwrap();
        assert_eq!(g, RationalPolynomial::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn content_examples() {
        let ip = |s: &str| s.parse::<IntegerPolynomial>().unwrap();
        assert_eq!(
            ip("6x^2 + 4x + 2").content_and_primitive_part().unwrap(),
            (BigInt::from(2), ip("3x^2 + 2x + 1"))
        );
        assert_eq!(
            ip("x^2 + 1").content_and_primitive_part().unwrap(),
            (BigInt::from(1), ip("x^2 + 1"))
        );
        assert_eq!(
            ip("-4x").content_and_primitive_part().unwrap(),
            (BigInt::from(4), ip("-x"))
        );
        assert_eq!(
            IntegerPolynomial::zero().content_and_primitive_part(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn eisenstein_examples() {
        let ip = |s: &str| s.parse::<IntegerPolynomial>().unwrap();
        assert_eq!(ip("x^3 - 2").eisenstein_witness().unwrap(), Some(BigInt::from(2)));
        assert_eq!(ip("x^2 + 4").eisenstein_witness().unwrap(), None);
        // ((x+1)^5 - 1)/x = x^4 + 5x^3 + 10x^2 + 10x + 5
        assert_eq!(
            ip("x^4 + 5x^3 + 10x^2 + 10x + 5").eisenstein_witness().unwrap(),
            Some(BigInt::from(5))
        );
        assert_eq!(ip("7").eisenstein_witness(), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn cyclotomic_examples() {
        let ip = |s: &str| s.parse::<IntegerPolynomial>().unwrap();
        assert_eq!(IntegerPolynomial::cyclotomic_prime(3).unwrap(), ip("x^2 + x + 1"));
        assert_eq!(IntegerPolynomial::cyclotomic_prime(2).unwrap(), ip("x + 1"));
        assert_eq!(IntegerPolynomial::cyclotomic_prime(7).unwrap().degree(), Some(6));
        assert!(IntegerPolynomial::cyclotomic_prime(9).is_err());
    }

    #[test]
    fn text_and_json_forms() {
        let p = rp("x^3 - 1/2*x + 5");
        assert_eq!(p.to_text(), "5 + -1/2*x + 1*x^3");
        assert_eq!(rp(&p.to_text()), p);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["5","-1/2","0","1"]"#);
        assert_eq!(serde_json::from_str::<RationalPolynomial>(&json).unwrap(), p);
        assert_eq!(rp(r#"[-2, 0, 1]"#), rp("x^2 - 2"));
        assert_eq!(RationalPolynomial::zero().to_text(), "0");
        assert!(rp("0").is_zero());
        assert!("x^".parse::<RationalPolynomial>().is_err());
        assert!("1/0".parse::<RationalPolynomial>().is_err());
    }
}
