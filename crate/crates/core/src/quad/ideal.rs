//! Ideals of quadratic rings in Hermite standard form.
//!
//! A nonzero ideal is stored as `c * (Z a + Z (b + w))` with `0 <= b < a` and
//! `a | N(b + w)`. This form is unique, so ideal equality is field equality.
//! Every operation builds a generating set of lattice vectors over the basis
//! `{1, w}` and reduces it to this form with a 2x2 integer Hermite reduction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ring::{QuadInt, QuadraticField};
use crate::error::{Error, Result};

/// A nonzero ideal `c (Z a + Z (b + w))`, or the zero ideal (`a = b = c = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadIdeal {
    m: i64,
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// JSON form `{"m": -5, "a": "2", "b": "1", "c": "1"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub m: i64,
    pub a: String,
    pub b: String,
    pub c: String,
}

/// Hermite basis `{(A, 0), (B, C)}` of a full-rank sublattice of `Z^2`.
struct Hermite {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// Reduces generators `(u, v)` (meaning `u + v w`) to Hermite form.
/// Returns `None` when they span a lattice of rank below 2.
fn hermite(vectors: impl IntoIterator<Item = (BigInt, BigInt)>) -> Option<Hermite> {
    let mut pivot: Option<(BigInt, BigInt)> = None;
    let mut first = BigInt::zero();
    for (u, v) in vectors {
        if v.is_zero() {
            first = first.gcd(&u);
            continue;
        }
        match pivot.take() {
            None => pivot = Some((u, v)),
            Some((pu, pv)) => {
                let eg = pv.extended_gcd(&v);
                let g = eg.gcd;
                let combined = (&eg.x * &pu + &eg.y * &u, g.clone());
                // (v/g) * pivot - (pv/g) * (u, v) has zero second coordinate
                let eliminated = (&v / &g) * &pu - (&pv / &g) * &u;
                first = first.gcd(&eliminated);
                pivot = Some(combined);
            }
        }
    }
    let (mut pu, mut pv) = pivot?;
    if first.is_zero() {
        return None;
    }
    if pv.is_negative() {
        pu = -pu;
        pv = -pv;
    }
    let pu = pu.mod_floor(&first);
    Some(Hermite { a: first, b: pu, c: pv })
}

impl QuadIdeal {
    pub fn zero(field: &QuadraticField) -> Self {
        Self { m: field.m(), a: BigInt::zero(), b: BigInt::zero(), c: BigInt::zero() }
    }

    /// The unit ideal `(1)`: `a = 1, b = 0, c = 1`.
    pub fn unit(field: &QuadraticField) -> Self {
        Self { m: field.m(), a: BigInt::one(), b: BigInt::zero(), c: BigInt::one() }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.a.is_one() && self.c.is_one()
    }

    fn check(&self, field: &QuadraticField) -> Result<()> {
        if self.m == field.m() {
            Ok(())
        } else {
            Err(Error::IdealFieldMismatch(field.m()))
        }
    }

    /// Standard form from a lattice that is known to be an ideal.
    fn from_lattice(field: &QuadraticField, vectors: Vec<(BigInt, BigInt)>) -> Self {
        let Some(h) = hermite(vectors) else {
            return Self::zero(field);
        };
        let c = h.c;
        debug_assert!((&h.a % &c).is_zero() && (&h.b % &c).is_zero(), "lattice is not an ideal");
        let a = &h.a / &c;
        let b = (&h.b / &c).mod_floor(&a);
        let ideal = Self { m: field.m(), a, b, c };
        debug_assert!((field.norm(&QuadInt::new(ideal.b.clone(), 1)) % &ideal.a).is_zero());
        ideal
    }

    /// The ideal generated by `gens`: the Z-span of every `g` and `g w`.
    pub fn from_generators(field: &QuadraticField, gens: &[QuadInt]) -> Self {
        let omega = QuadInt::omega();
        let vectors = gens
            .iter()
            .flat_map(|g| {
                let gw = field.mul(g, &omega);
                [(g.a.clone(), g.b.clone()), (gw.a, gw.b)]
            })
            .collect();
        Self::from_lattice(field, vectors)
    }

    pub fn principal(field: &QuadraticField, g: &QuadInt) -> Self {
        Self::from_generators(field, std::slice::from_ref(g))
    }

    pub fn from_int(field: &QuadraticField, n: i64) -> Self {
        Self::principal(field, &QuadInt::from_int(n))
    }

    /// Validates and builds an ideal from raw standard-form parameters.
    pub fn from_parts(field: &QuadraticField, a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Ok(Self::zero(field));
        }
        if !a.is_positive() || !c.is_positive() || b.is_negative() || b >= a {
            return Err(Error::Invalid(format!(
                "({a}, {b}, {c}) violates a > 0, c > 0, 0 <= b < a"
            )));
        }
        if !(field.norm(&QuadInt::new(b.clone(), 1)) % &a).is_zero() {
            return Err(Error::Invalid(format!("{a} does not divide N({b} + w)")));
        }
        Ok(Self { m: field.m(), a, b, c })
    }

    /// The Z-basis `{c a, c (b + w)}`.
    pub fn basis(&self) -> [QuadInt; 2] {
        [
            QuadInt::new(&self.c * &self.a, 0),
            QuadInt::new(&self.c * &self.b, self.c.clone()),
        ]
    }

    /// `|R / I| = a c^2`.
    pub fn norm(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Ok(&self.a * &self.c * &self.c)
    }

    pub fn contains(&self, x: &QuadInt) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        if !(&x.b % &self.c).is_zero() {
            return false;
        }
        let y = &x.b / &self.c;
        let rest = &x.a - &y * &self.c * &self.b;
        (rest % (&self.c * &self.a)).is_zero()
    }

    /// `other ⊆ self`, i.e. `self` divides `other`.
    pub fn contains_ideal(&self, other: &Self) -> bool {
        other.is_zero() || other.basis().iter().all(|x| self.contains(x))
    }

    pub fn product(&self, field: &QuadraticField, other: &Self) -> Result<Self> {
        self.check(field)?;
        other.check(field)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(field));
        }
        let mut vectors = Vec::with_capacity(4);
        for x in self.basis() {
            for y in other.basis() {
                let p = field.mul(&x, &y);
                vectors.push((p.a, p.b));
            }
        }
        Ok(Self::from_lattice(field, vectors))
    }

    pub fn pow(&self, field: &QuadraticField, k: u32) -> Result<Self> {
        let mut acc = Self::unit(field);
        for _ in 0..k {
            acc = acc.product(field, self)?;
        }
        Ok(acc)
    }

    /// Image under `sqrt m -> -sqrt m`.
    pub fn conjugate(&self, field: &QuadraticField) -> Result<Self> {
        self.check(field)?;
        if self.is_zero() {
            return Ok(self.clone());
        }
        let gens: Vec<QuadInt> = self.basis().iter().map(|x| field.conj(x)).collect();
        Ok(Self::from_generators(field, &gens))
    }

    /// `gcd(I, J) = I + J`; a zero argument yields the other ideal.
    pub fn gcd(&self, field: &QuadraticField, other: &Self) -> Result<Self> {
        self.check(field)?;
        other.check(field)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let gens: Vec<QuadInt> = self.basis().into_iter().chain(other.basis()).collect();
        Ok(Self::from_generators(field, &gens))
    }

    /// The ideal `K` with `other = self * K`, when `other ⊆ self`.
    ///
    /// Uses `self * conj(self) = (N(self))`, so `K = other * conj(self) / N(self)`.
    pub fn divide_into(&self, field: &QuadraticField, other: &Self) -> Result<Option<Self>> {
        self.check(field)?;
        other.check(field)?;
        let n = self.norm()?;
        if !self.contains_ideal(other) {
            return Ok(None);
        }
        if other.is_zero() {
            return Ok(Some(other.clone()));
        }
        let p = other.product(field, &self.conjugate(field)?)?;
        debug_assert!((&p.c % &n).is_zero());
        Ok(Some(Self { m: p.m, a: p.a, b: p.b, c: &p.c / &n }))
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            m: self.m,
            a: self.a.to_string(),
            b: self.b.to_string(),
            c: self.c.to_string(),
        }
    }

    pub fn from_json(field: &QuadraticField, j: &IdealJson) -> Result<Self> {
        if j.m != field.m() {
            return Err(Error::IdealFieldMismatch(field.m()));
        }
        let parse = |s: &str| {
            s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer `{s}`")))
        };
        Self::from_parts(field, parse(&j.a)?, parse(&j.b)?, parse(&j.c)?)
    }

    /// Two-generator text `(c a, c (b + w))`, or `(c)` when `a = 1`.
    pub fn format(&self, field: &QuadraticField) -> String {
        if self.is_zero() {
            return "(0)".into();
        }
        if self.a.is_one() {
            return format!("({})", self.c);
        }
        let [x, y] = self.basis();
        format!("({}, {})", field.format(&x), field.format(&y))
    }

    /// Parses `(g1, g2, ...)` with generators in [`QuadraticField::parse`] syntax.
    pub fn parse(field: &QuadraticField, s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("ideal `{s}` must look like (g1, g2, ...)")))?;
        let mut gens = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    gens.push(field.parse(&inner[start..i])?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        gens.push(field.parse(&inner[start..])?);
        Ok(Self::from_generators(field, &gens))
    }
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[a={}, b={}, c={}]", self.a, self.b, self.c)
    }
}
