//! Decomposition of rational primes and prime factorization of ideals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ideal::{IdealJson, QuadIdeal};
use super::ring::{QuadInt, QuadraticField};
use crate::arith;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
}

impl SplitKind {
    /// `(e, f, g)` in a quadratic field.
    pub fn efg(self) -> (u32, u32, u32) {
        match self {
            SplitKind::Split => (1, 1, 2),
            SplitKind::Inert => (1, 2, 1),
            SplitKind::Ramified => (2, 1, 1),
        }
    }
}

/// How `(q)` decomposes in a quadratic ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub m: i64,
    pub q: u64,
    pub kind: SplitKind,
    pub e: u32,
    pub f: u32,
    pub g: u32,
    pub factors: Vec<(QuadIdeal, u32)>,
}

#[derive(Serialize)]
struct FactorJson {
    ideal: IdealJson,
    generators: String,
    norm: String,
    multiplicity: u32,
}

impl SplittingReport {
    pub fn to_json(&self, field: &QuadraticField) -> serde_json::Value {
        serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "m": self.m,
            "q": self.q,
            "type": self.kind,
            "e": self.e,
            "f": self.f,
            "g": self.g,
            "factors": factors_json(field, &self.factors),
        })
    }
}

pub fn factors_json(field: &QuadraticField, factors: &[(QuadIdeal, u32)]) -> serde_json::Value {
    let list: Vec<FactorJson> = factors
        .iter()
        .map(|(p, k)| FactorJson {
            ideal: p.to_json(),
            generators: p.format(field),
            norm: p.norm().map(|n| n.to_string()).unwrap_or_default(),
            multiplicity: *k,
        })
        .collect();
    serde_json::to_value(list).expect("plain data serializes")
}

/// The splitting type of `q` read off from `d` alone.
pub fn splitting_type(field: &QuadraticField, q: u64) -> SplitKind {
    let m = field.m();
    if q == 2 {
        return match m.rem_euclid(8) {
            1 => SplitKind::Split,
            5 => SplitKind::Inert,
            _ => SplitKind::Ramified,
        };
    }
    let r = arith::residue_i64(m, q);
    if r == 0 {
        SplitKind::Ramified
    } else if arith::is_quadratic_residue(r, q) {
        SplitKind::Split
    } else {
        SplitKind::Inert
    }
}

/// Prime ideals above `q` with their multiplicities in `(q)`.
pub fn split_prime(field: &QuadraticField, q: u64) -> Result<SplittingReport> {
    if !arith::is_prime(q) {
        return Err(Error::NotPrime(q.to_string()));
    }
    let m = field.m();
    let kind = splitting_type(field, q);
    let qq = QuadInt::from_int(q);
    // sqrt m in the integral basis
    let sqrt_m = field
        .from_sqrt_coords(&BigRational::zero(), &BigRational::one())
        .expect("sqrt m is integral");
    let with = |g: QuadInt| QuadIdeal::from_generators(field, &[qq.clone(), g]);
    let plus = |a: &BigInt| QuadInt::from_int(a.clone()).add(&sqrt_m);
    let minus = |a: &BigInt| QuadInt::from_int(a.clone()).sub(&sqrt_m);

    let mut factors = match (q, kind) {
        (_, SplitKind::Inert) => vec![(QuadIdeal::from_int(field, q as i64), 1)],
        (2, SplitKind::Split) => {
            // (2, (1 + sqrt m)/2) (2, (1 - sqrt m)/2)
            let w = QuadInt::omega();
            let w_conj = field.conj(&w);
            vec![(with(w), 1), (with(w_conj), 1)]
        }
        (2, SplitKind::Ramified) => {
            let g = if m.rem_euclid(4) == 2 { sqrt_m.clone() } else { plus(&BigInt::one()) };
            vec![(with(g), 2)]
        }
        (_, SplitKind::Ramified) => vec![(with(sqrt_m.clone()), 2)],
        (_, SplitKind::Split) => {
            let r = arith::sqrt_mod_prime(arith::residue_i64(m, q), q).expect("m is a residue");
            let r = BigInt::from(r);
            vec![(with(plus(&r)), 1), (with(minus(&r)), 1)]
        }
    };
    factors.sort();

    let product = multiply_out(field, &factors)?;
    if product != QuadIdeal::from_int(field, q as i64) {
        return Err(Error::Invalid(format!("factors of ({q}) do not multiply back to ({q})")));
    }
    let (e, f, g) = kind.efg();
    Ok(SplittingReport { m, q, kind, e, f, g, factors })
}

/// Product of `p^k` over a factor list.
pub fn multiply_out(field: &QuadraticField, factors: &[(QuadIdeal, u32)]) -> Result<QuadIdeal> {
    factors.iter().try_fold(QuadIdeal::unit(field), |acc, (p, k)| {
        acc.product(field, &p.pow(field, *k)?)
    })
}

/// Unique factorization into prime ideals, sorted by norm then standard form.
///
/// Rational primes come from factoring `N(I)`; each prime above them is
/// divided out as long as it still contains the remaining ideal.
pub fn factor_ideal(field: &QuadraticField, ideal: &QuadIdeal) -> Result<Vec<(QuadIdeal, u32)>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let norm = ideal.norm()?;
    let mut rest = ideal.clone();
    let mut out = Vec::new();
    for (q, _) in arith::factor_big(norm.magnitude())? {
        for (p, _) in split_prime(field, q)?.factors {
            let mut k = 0;
            while let Some(quotient) = p.divide_into(field, &rest)? {
                rest = quotient;
                k += 1;
            }
            if k > 0 {
                out.push((p, k));
            }
        }
    }
    if !rest.is_unit() {
        return Err(Error::Invalid("ideal factorization left a non-unit cofactor".into()));
    }
    out.sort_by(|(p, _), (q, _)| {
        let np = p.norm().unwrap_or_else(|_| BigInt::zero());
        let nq = q.norm().unwrap_or_else(|_| BigInt::zero());
        np.cmp(&nq).then_with(|| p.cmp(q))
    });
    debug_assert_eq!(&multiply_out(field, &out)?, ideal);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(m: i64) -> QuadraticField {
        QuadraticField::new(m).unwrap()
    }

    #[test]
    fn split_examples() {
        let f = field(-5);
        let r = split_prime(&f, 2).unwrap();
        assert_eq!(r.kind, SplitKind::Ramified);
        assert_eq!(r.factors, vec![(QuadIdeal::parse(&f, "(2, 1+sqrt(-5))").unwrap(), 2)]);

        let g = field(-23);
        let r = split_prime(&g, 2).unwrap();
        assert_eq!(r.kind, SplitKind::Split);
        let mut expected = vec![
            (QuadIdeal::parse(&g, "(2, (1+sqrt(-23))/2)").unwrap(), 1),
            (QuadIdeal::parse(&g, "(2, (1-sqrt(-23))/2)").unwrap(), 1),
        ];
        expected.sort();
        assert_eq!(r.factors, expected);

        // the squares mod 11 are 1, 3, 4, 5, 9 and -5 = 6
        assert_eq!(split_prime(&f, 11).unwrap().kind, SplitKind::Inert);
        assert_eq!(split_prime(&f, 7).unwrap().kind, SplitKind::Split);
        assert_eq!(split_prime(&f, 13).unwrap().kind, SplitKind::Inert);
        assert_eq!(split_prime(&f, 5).unwrap().kind, SplitKind::Ramified);
        assert_eq!(split_prime(&f, 9), Err(Error::NotPrime("9".into())));
    }

    #[test]
    fn two_in_every_residue_class() {
        // m = 1 mod 8 split, 5 mod 8 inert, 2 mod 4 via (2, sqrt m), 3 mod 4 via (2, 1 + sqrt m)
        assert_eq!(split_prime(&field(17), 2).unwrap().kind, SplitKind::Split);
        assert_eq!(split_prime(&field(5), 2).unwrap().kind, SplitKind::Inert);
        let f = field(2);
        assert_eq!(
            split_prime(&f, 2).unwrap().factors,
            vec![(QuadIdeal::parse(&f, "(2, sqrt(2))").unwrap(), 2)]
        );
        let f = field(3);
        assert_eq!(
            split_prime(&f, 2).unwrap().factors,
            vec![(QuadIdeal::parse(&f, "(2, 1+sqrt(3))").unwrap(), 2)]
        );
    }

    #[test]
    fn factor_examples() {
        let f = field(-5);
        let fac = factor_ideal(&f, &QuadIdeal::from_int(&f, 21)).unwrap();
        assert_eq!(fac.len(), 4);
        assert!(fac.iter().all(|(_, k)| *k == 1));
        let norms: Vec<BigInt> = fac.iter().map(|(p, _)| p.norm().unwrap()).collect();
        assert_eq!(norms, [3, 3, 7, 7].map(BigInt::from));

        let p = QuadIdeal::parse(&f, "(3, 1+sqrt(-5))").unwrap();
        assert_eq!(factor_ideal(&f, &p).unwrap(), vec![(p.clone(), 1)]);

        let g = field(2);
        let fac = factor_ideal(&g, &QuadIdeal::from_int(&g, 8)).unwrap();
        assert_eq!(fac, vec![(QuadIdeal::parse(&g, "(sqrt(2))").unwrap(), 6)]);

        assert_eq!(factor_ideal(&f, &QuadIdeal::unit(&f)), Err(Error::UnitIdeal));
        assert_eq!(factor_ideal(&f, &QuadIdeal::zero(&f)), Err(Error::ZeroIdeal));
    }
}
