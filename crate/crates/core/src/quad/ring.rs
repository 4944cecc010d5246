//! Quadratic fields `Q(sqrt m)` and their rings of integers `Z + Z w`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Which integral generator `w` the ring of integers uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaKind {
    /// `w = sqrt m`, for `m = 2, 3 (mod 4)`.
    Sqrtm,
    /// `w = (1 + sqrt m)/2`, for `m = 1 (mod 4)`.
    HalfOnePlusSqrtm,
}

/// `Q(sqrt m)` for square-free `m` other than 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticField {
    m: i64,
    d: i64,
    omega: OmegaKind,
}

/// `a + b w` in the ring of integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

/// JSON form of a [`QuadInt`]: `{"a": "1", "b": "1"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadIntJson {
    pub a: String,
    pub b: String,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into() }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        Self::new(a, 0)
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn omega() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn neg(&self) -> Self {
        Self { a: -&self.a, b: -&self.b }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { a: &self.a * k, b: &self.b * k }
    }

    pub fn to_json(&self) -> QuadIntJson {
        QuadIntJson { a: self.a.to_string(), b: self.b.to_string() }
    }

    pub fn from_json(j: &QuadIntJson) -> Result<Self> {
        let parse = |s: &str| {
            s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer `{s}`")))
        };
        Ok(Self { a: parse(&j.a)?, b: parse(&j.b)? })
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*w", self.a, self.b)
    }
}

impl QuadraticField {
    /// The ring of integers of `Q(sqrt m)`.
    pub fn new(m: i64) -> Result<Self> {
        if m == 0 || m == 1 {
            return Err(Error::DegenerateRadicand(m));
        }
        if !arith::is_square_free(m)? {
            return Err(Error::NotSquareFree(m));
        }
        let (d, omega) = if m.rem_euclid(4) == 1 {
            (m, OmegaKind::HalfOnePlusSqrtm)
        } else {
            (4 * m, OmegaKind::Sqrtm)
        };
        Ok(Self { m, d, omega })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Field discriminant: `m` or `4m`.
    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn omega_kind(&self) -> OmegaKind {
        self.omega
    }

    pub fn is_real(&self) -> bool {
        self.m > 0
    }

    /// `(r1, s)`: real embeddings and pairs of complex embeddings.
    pub fn signature(&self) -> (u32, u32) {
        if self.is_real() {
            (2, 0)
        } else {
            (0, 1)
        }
    }

    /// Trace of `w`: 0 or 1.
    pub fn omega_trace(&self) -> BigInt {
        match self.omega {
            OmegaKind::Sqrtm => BigInt::zero(),
            OmegaKind::HalfOnePlusSqrtm => BigInt::one(),
        }
    }

    /// Norm of `w`: `-m` or `(1 - m)/4`.
    pub fn omega_norm(&self) -> BigInt {
        match self.omega {
            OmegaKind::Sqrtm => BigInt::from(-self.m),
            OmegaKind::HalfOnePlusSqrtm => BigInt::from((1 - self.m) / 4),
        }
    }

    /// `(a + b w)(c + d w)` using `w^2 = t w - n`.
    pub fn mul(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        let t = self.omega_trace();
        let n = self.omega_norm();
        let bd = &x.b * &y.b;
        QuadInt {
            a: &x.a * &y.a - &bd * &n,
            b: &x.a * &y.b + &x.b * &y.a + &bd * &t,
        }
    }

    pub fn pow(&self, x: &QuadInt, k: u32) -> QuadInt {
        let mut acc = QuadInt::one();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn norm(&self, x: &QuadInt) -> BigInt {
        &x.a * &x.a + &x.a * &x.b * self.omega_trace() + &x.b * &x.b * self.omega_norm()
    }

    pub fn trace(&self, x: &QuadInt) -> BigInt {
        BigInt::from(2) * &x.a + &x.b * self.omega_trace()
    }

    /// Galois conjugate: `w -> t - w`.
    pub fn conj(&self, x: &QuadInt) -> QuadInt {
        QuadInt { a: &x.a + &x.b * self.omega_trace(), b: -&x.b }
    }

    pub fn is_unit(&self, x: &QuadInt) -> bool {
        self.norm(x).abs().is_one()
    }

    /// `x / y` when the quotient lies in the ring.
    pub fn exact_div(&self, x: &QuadInt, y: &QuadInt) -> Option<QuadInt> {
        let n = self.norm(y);
        if n.is_zero() {
            return None;
        }
        let num = self.mul(x, &self.conj(y));
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        (ra.is_zero() && rb.is_zero()).then_some(QuadInt { a: qa, b: qb })
    }

    /// `(x, y)` with `a + b w = (x + y sqrt m)/2`.
    pub fn to_half_sqrt_coords(&self, v: &QuadInt) -> (BigInt, BigInt) {
        match self.omega {
            OmegaKind::Sqrtm => (BigInt::from(2) * &v.a, BigInt::from(2) * &v.b),
            OmegaKind::HalfOnePlusSqrtm => (BigInt::from(2) * &v.a + &v.b, v.b.clone()),
        }
    }

    /// Sign of the real number `x + y sqrt m` (real fields only).
    pub fn real_sign(&self, v: &QuadInt) -> i32 {
        assert!(self.is_real(), "real embedding requested for an imaginary field");
        let (x, y) = self.to_half_sqrt_coords(v);
        let sx = sign(&x);
        let sy = sign(&y);
        if sx == 0 || sy == 0 || sx == sy {
            return if sx != 0 { sx } else { sy };
        }
        // opposite signs: compare x^2 with m y^2
        let lhs = &x * &x;
        let rhs = &y * &y * BigInt::from(self.m);
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sx,
            std::cmp::Ordering::Less => sy,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Whether `|u| < |v|` under the real embedding.
    pub fn real_abs_lt(&self, u: &QuadInt, v: &QuadInt) -> bool {
        let au = if self.real_sign(u) < 0 { u.neg() } else { u.clone() };
        let av = if self.real_sign(v) < 0 { v.neg() } else { v.clone() };
        self.real_sign(&av.sub(&au)) > 0
    }

    /// Converts rational `x + y sqrt m` into the integral basis, if integral.
    pub fn from_sqrt_coords(&self, x: &BigRational, y: &BigRational) -> Result<QuadInt> {
        let (a, b) = match self.omega {
            OmegaKind::Sqrtm => (x.clone(), y.clone()),
            // sqrt m = 2w - 1
            OmegaKind::HalfOnePlusSqrtm => (x - y, y * BigRational::from_integer(2.into())),
        };
        if !a.is_integer() || !b.is_integer() {
            return Err(Error::Invalid(format!(
                "{x} + {y}*sqrt({}) is not an algebraic integer",
                self.m
            )));
        }
        Ok(QuadInt { a: a.to_integer(), b: b.to_integer() })
    }

    /// `1 + 2*sqrt(-5)` or `(1 + sqrt(-23))/2` style text.
    pub fn format(&self, v: &QuadInt) -> String {
        let (x, y) = self.to_half_sqrt_coords(v);
        let two = BigInt::from(2);
        let r = format!("sqrt({})", self.m);
        let term = |y: &BigInt| if y.is_one() { r.clone() } else { format!("{y}*{r}") };
        let body = |x: &BigInt, y: &BigInt| -> String {
            match (x.is_zero(), y.is_zero()) {
                (_, true) => x.to_string(),
                (true, false) if y.is_negative() => format!("-{}", term(&-y)),
                (true, false) => term(y),
                (false, false) if y.is_negative() => format!("{x} - {}", term(&-y)),
                (false, false) => format!("{x} + {}", term(y)),
            }
        };
        if x.is_even() && y.is_even() {
            body(&(x / &two), &(y / &two))
        } else {
            format!("({})/2", body(&x, &y))
        }
    }

    /// Parses sums of `int`, `int*sqrt(m)`, `int*w`, optionally wrapped as `(...)/k`.
    pub fn parse(&self, s: &str) -> Result<QuadInt> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (body, divisor) = split_division(&compact)?;
        let mut x = BigRational::zero();
        let mut y = BigRational::zero();
        let mut w = BigRational::zero();
        for (sign, term) in split_terms(body)? {
            let (coef, atom) = match term.find(['w', 's', '√']) {
                None => (term, ""),
                Some(pos) => (term[..pos].trim_end_matches('*'), &term[pos..]),
            };
            let coef = if coef.is_empty() {
                BigRational::one()
            } else {
                BigRational::from_integer(
                    coef.parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad coefficient in `{term}`")))?,
                )
            };
            let coef = coef * BigRational::from_integer(sign.into());
            match atom {
                "" => x += coef,
                "w" | "ω" => w += coef,
                _ => {
                    let radicand = atom
                        .strip_prefix("sqrt(")
                        .and_then(|r| r.strip_suffix(')'))
                        .or_else(|| atom.strip_prefix('√'))
                        .ok_or_else(|| Error::Parse(format!("unknown atom `{atom}`")))?;
                    let r: i64 = radicand
                        .trim_start_matches('(')
                        .trim_end_matches(')')
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad radicand `{radicand}`")))?;
                    if r != self.m {
                        return Err(Error::Parse(format!(
                            "sqrt({r}) does not belong to Q(sqrt({}))",
                            self.m
                        )));
                    }
                    y += coef;
                }
            }
        }
        // fold the w part into sqrt coordinates: w = sqrt m or (1 + sqrt m)/2
        let half = BigRational::new(1.into(), 2.into());
        match self.omega {
            OmegaKind::Sqrtm => y += w,
            OmegaKind::HalfOnePlusSqrtm => {
                x += &w * &half;
                y += &w * &half;
            }
        }
        let k = BigRational::from_integer(divisor);
        self.from_sqrt_coords(&(x / &k), &(y / &k))
    }
}

fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Splits `(body)/k` into `body` and `k`; anything else has divisor 1.
fn split_division(s: &str) -> Result<(&str, BigInt)> {
    if let Some(rest) = s.strip_prefix('(') {
        if let Some(close) = matching_paren(s) {
            if let Some(den) = s[close + 1..].strip_prefix('/') {
                let k: BigInt =
                    den.parse().map_err(|_| Error::Parse(format!("bad divisor in `{s}`")))?;
                if k.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                return Ok((&rest[..close - 1], k));
            }
            if close == s.len() - 1 {
                return Ok((&rest[..close - 1], BigInt::one()));
            }
        }
    }
    Ok((s, BigInt::one()))
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Splits a flat sum into signed terms; signs inside parentheses stay put.
fn split_terms(s: &str) -> Result<Vec<(i64, &str)>> {
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut sign = 1i64;
    let bytes = s.as_bytes();
    for (i, &ch) in bytes.iter().enumerate() {
        match ch {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                let prev_is_op = i == 0 || matches!(bytes[i - 1], b'+' | b'-' | b'*');
                if i > start && !prev_is_op {
                    out.push((sign, &s[start..i]));
                    sign = 1;
                } else if !prev_is_op && i != 0 {
                    return Err(Error::Parse(format!("unexpected sign in `{s}`")));
                }
                if ch == b'-' {
                    sign = -sign;
                }
                start = i + 1;
            }
            _ => {}
        }
    }
    if start >= s.len() {
        return Err(Error::Parse(format!("dangling sign in `{s}`")));
    }
    out.push((sign, &s[start..]));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_of_integers_examples() {
        let f = QuadraticField::new(-5).unwrap();
        assert_eq!((f.omega_kind(), f.discriminant()), (OmegaKind::Sqrtm, -20));
        let f = QuadraticField::new(-23).unwrap();
        assert_eq!((f.omega_kind(), f.discriminant()), (OmegaKind::HalfOnePlusSqrtm, -23));
        let f = QuadraticField::new(2).unwrap();
        assert_eq!((f.omega_kind(), f.discriminant()), (OmegaKind::Sqrtm, 8));
        assert_eq!(QuadraticField::new(12), Err(Error::NotSquareFree(12)));
        assert_eq!(QuadraticField::new(1), Err(Error::DegenerateRadicand(1)));
        assert_eq!(QuadraticField::new(0), Err(Error::DegenerateRadicand(0)));
    }

    #[test]
    fn norm_trace_conj_examples() {
        let f = QuadraticField::new(-5).unwrap();
        assert_eq!(f.norm(&QuadInt::new(1, 2)), BigInt::from(21));
        let x = QuadInt::new(3, -7);
        assert_eq!(f.conj(&f.conj(&x)), x);
        let g = QuadraticField::new(-23).unwrap();
        assert_eq!(g.norm(&QuadInt::omega()), BigInt::from(6));
        let y = QuadInt::new(4, 3);
        assert_eq!(g.conj(&g.conj(&y)), y);
        assert_eq!(g.trace(&QuadInt::omega()), BigInt::from(1));
        assert_eq!(g.mul(&y, &g.conj(&y)), QuadInt::from_int(g.norm(&y)));
    }

    #[test]
    fn unit_examples() {
        assert!(QuadraticField::new(2).unwrap().is_unit(&QuadInt::new(1, 1)));
        assert!(!QuadraticField::new(2).unwrap().is_unit(&QuadInt::from_int(2)));
        // (1 + sqrt -3)/2 = w
        assert!(QuadraticField::new(-3).unwrap().is_unit(&QuadInt::omega()));
    }

    #[test]
    fn parse_and_format() {
        let f = QuadraticField::new(-5).unwrap();
        assert_eq!(f.parse("1+2*sqrt(-5)").unwrap(), QuadInt::new(1, 2));
        assert_eq!(f.parse("1 - 2w").unwrap(), QuadInt::new(1, -2));
        assert_eq!(f.parse("-3").unwrap(), QuadInt::new(-3, 0));
        assert_eq!(f.format(&QuadInt::new(1, -2)), "1 - 2*sqrt(-5)");
        assert!(f.parse("(1+sqrt(-5))/2").is_err());
        assert!(f.parse("sqrt(5)").is_err());

        let g = QuadraticField::new(-23).unwrap();
        assert_eq!(g.parse("(1+sqrt(-23))/2").unwrap(), QuadInt::omega());
        assert_eq!(g.parse("(1 - sqrt(-23))/2").unwrap(), QuadInt::new(1, -1));
        assert_eq!(g.format(&QuadInt::omega()), "(1 + sqrt(-23))/2");
        for v in [QuadInt::new(3, -5), QuadInt::new(0, 2), QuadInt::new(-4, 0), QuadInt::new(0, -1)] {
            assert_eq!(g.parse(&g.format(&v)).unwrap(), v);
            assert_eq!(f.parse(&f.format(&v)).unwrap(), v);
        }
    }

    #[test]
    fn real_sign_is_exact() {
        let f = QuadraticField::new(2).unwrap();
        assert_eq!(f.real_sign(&QuadInt::new(-1, 1)), 1); // sqrt2 - 1
        assert_eq!(f.real_sign(&QuadInt::new(1, -1)), -1);
        assert_eq!(f.real_sign(&QuadInt::new(-3, 2)), -1); // 2sqrt2 < 3
        let g = QuadraticField::new(5).unwrap();
        assert_eq!(g.real_sign(&QuadInt::new(-1, 1)), 1); // w - 1 = (sqrt5 - 1)/2
        assert_eq!(g.real_sign(&QuadInt::new(-2, 1)), -1);
    }
}
