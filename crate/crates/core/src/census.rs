//! Counting ideals by norm and comparing with the asymptotic density.
//!
//! The number of ideals of norm `n` is multiplicative in `n`, with local
//! factors read off from the splitting type of each rational prime:
//! `j + 1` for split `q^j`, `[j even]` for inert, `1` for ramified.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{Fixed, Precision};
use crate::quad::classgroup::{class_group, ClassGroupReport};
use crate::quad::split::{split_prime, splitting_type, SplitKind};
use crate::quad::QuadraticField;
use crate::units;

/// Largest accepted cutoff.
pub const MAX_CUTOFF: u64 = 10_000_000;

/// Decimal digits of `σ` and the derived statistics.
pub const SIGMA_DIGITS: u32 = 30;

fn check_cutoff(k: u64) -> Result<()> {
    if k == 0 || k > MAX_CUTOFF {
        return Err(Error::Invalid(format!("cutoff must lie in 1..={MAX_CUTOFF}, got {k}")));
    }
    Ok(())
}

/// Smallest prime factor of every `n <= k` (0 and 1 map to 0).
fn smallest_prime_factors(k: usize) -> Vec<u32> {
    let mut spf = vec![0u32; k + 1];
    for i in 2..=k {
        if spf[i] == 0 {
            for j in (i..=k).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    spf
}

/// Splits `n` as `(p, j, r)` with `n = p^j r` and `p = spf(n) ∤ r`.
fn peel(spf: &[u32], n: usize) -> (u64, u32, usize) {
    let p = spf[n] as usize;
    let mut r = n;
    let mut j = 0;
    while r.is_multiple_of(p) {
        r /= p;
        j += 1;
    }
    (p as u64, j, r)
}

fn local_count(kind: SplitKind, j: u32) -> u64 {
    match kind {
        SplitKind::Split => u64::from(j) + 1,
        SplitKind::Inert => u64::from(j.is_multiple_of(2)),
        SplitKind::Ramified => 1,
    }
}

/// `a[n]` = number of ideals of norm exactly `n`, for `0 <= n <= k` (`a[0] = 0`).
pub fn ideal_count_sieve(field: &QuadraticField, k: u64) -> Result<Vec<u64>> {
    check_cutoff(k)?;
    let k = k as usize;
    let spf = smallest_prime_factors(k);
    let mut kinds: Vec<Option<SplitKind>> = vec![None; k + 1];
    let mut a = vec![0u64; k + 1];
    a[1] = 1;
    for n in 2..=k {
        let (p, j, r) = peel(&spf, n);
        let kind = *kinds[p as usize].get_or_insert_with(|| splitting_type(field, p));
        a[n] = local_count(kind, j) * a[r];
    }
    Ok(a)
}

/// Running totals `Z(n) = a[1] + ... + a[n]`.
pub fn cumulative(a: &[u64]) -> Vec<u64> {
    a.iter()
        .scan(0u64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// `2^(r+1) π^s ρ / (w sqrt|d|)` at the given precision.
pub fn sigma_theoretical_fixed(field: &QuadraticField, prec: &Precision) -> Result<Fixed> {
    let (_, s) = field.signature();
    let r = u32::from(field.is_real());
    let rho = units::regulator(field, prec)?;
    let mut num = prec.mul(&prec.from_int(&BigInt::from(2u32.pow(r + 1))), &rho);
    if s == 1 {
        num = prec.mul(&num, &prec.pi());
    }
    let w = BigInt::from(units::torsion_order(field));
    let abs_d = BigInt::from(field.discriminant().unsigned_abs());
    let den = prec.mul(&prec.from_int(&w), &prec.sqrt(&prec.from_int(&abs_d)));
    Ok(prec.div(&num, &den))
}

pub fn sigma_theoretical(field: &QuadraticField) -> Result<String> {
    let prec = Precision::with_guard(SIGMA_DIGITS);
    Ok(prec.to_decimal_string(&sigma_theoretical_fixed(field, &prec)?, SIGMA_DIGITS))
}

/// Per-class ideal counts `Z_C(k)` by a dynamic program over prime ideals.
///
/// Each prime ideal is labelled with its class; the ideals of norm `q^j`
/// above a rational prime are enumerated with their classes and convolved
/// multiplicatively with the counts for the cofactor.
pub fn per_class_counts(field: &QuadraticField, group: &ClassGroupReport, k: u64) -> Result<Vec<u64>> {
    check_cutoff(k)?;
    let h = group.h;
    if (k as usize).saturating_mul(h) > 50_000_000 {
        return Err(Error::Invalid(format!("per-class census too large: k = {k}, h = {h}")));
    }
    let k = k as usize;
    let spf = smallest_prime_factors(k);
    let power = |c: usize, e: u32| (0..e).fold(0, |acc, _| group.table[acc][c]);

    // class of the prime ideal(s) above each prime p <= k, if split or ramified
    let mut prime_class: Vec<Option<(SplitKind, usize)>> = vec![None; k + 1];
    let mut counts = vec![0u64; (k + 1) * h];
    counts[h] = 1;
    for n in 2..=k {
        let (p, j, r) = peel(&spf, n);
        let (kind, c) = match prime_class[p as usize] {
            Some(x) => x,
            None => {
                let report = split_prime(field, p)?;
                let c = if h == 1 { 0 } else { group.class_of(field, &report.factors[0].0)? };
                prime_class[p as usize] = Some((report.kind, c));
                (report.kind, c)
            }
        };
        // class distribution of ideals of norm p^j
        let mut local = vec![0u64; h];
        match kind {
            SplitKind::Split => {
                let c_inv = group.inverse(c);
                for i in 0..=j {
                    local[group.table[power(c, i)][power(c_inv, j - i)]] += 1;
                }
            }
            SplitKind::Inert if j % 2 == 0 => local[0] += 1,
            SplitKind::Inert => {}
            SplitKind::Ramified => local[power(c, j)] += 1,
        }
        for (x, &lx) in local.iter().enumerate().filter(|(_, &l)| l > 0) {
            for y in 0..h {
                let ry = counts[r * h + y];
                if ry > 0 {
                    counts[n * h + group.table[x][y]] += lx * ry;
                }
            }
        }
    }
    let mut totals = vec![0u64; h];
    for n in 1..=k {
        for c in 0..h {
            totals[c] += counts[n * h + c];
        }
    }
    Ok(totals)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub class: usize,
    pub count: u64,
    pub density: String,
    pub deviation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    pub m: i64,
    pub k: u64,
    pub z_k: u64,
    pub h: usize,
    pub sigma_theoretical: String,
    pub sigma_h: String,
    pub sigma_empirical: String,
    /// `|Z(k)/k - σ h|`.
    pub deviation: String,
    /// `deviation * sqrt(k)`.
    pub normalized_deviation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_class: Option<Vec<ClassCount>>,
    /// Largest per-class `|Z_C(k)/k - σ| sqrt(k)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_class_normalized_deviation: Option<String>,
}

impl CensusResult {
    pub fn normalized_deviation_f64(&self) -> f64 {
        self.normalized_deviation.parse().unwrap_or(f64::NAN)
    }

    pub fn density_f64(&self) -> f64 {
        self.sigma_empirical.parse().unwrap_or(f64::NAN)
    }
}

fn abs(x: Fixed) -> Fixed {
    Fixed(x.0.magnitude().clone().into())
}

pub fn census_check(field: &QuadraticField, k: u64, per_class: bool) -> Result<CensusResult> {
    let group = class_group(field)?;
    census_check_with_group(field, &group, k, per_class)
}

pub fn census_check_with_group(
    field: &QuadraticField,
    group: &ClassGroupReport,
    k: u64,
    per_class: bool,
) -> Result<CensusResult> {
    let a = ideal_count_sieve(field, k)?;
    let z_k: u64 = a.iter().sum();
    let prec = Precision::with_guard(SIGMA_DIGITS);
    let places = SIGMA_DIGITS;
    let sigma = sigma_theoretical_fixed(field, &prec)?;
    let h = group.h;
    let sigma_h = prec.mul(&sigma, &prec.from_int(&BigInt::from(h)));
    let density_of = |count: u64| prec.from_rational(&BigRational::new(count.into(), k.into()));
    let sqrt_k = prec.sqrt(&prec.from_int(&BigInt::from(k)));
    let empirical = density_of(z_k);
    let deviation = abs(Fixed(&empirical.0 - &sigma_h.0));
    let normalized = prec.mul(&deviation, &sqrt_k);

    let (per_class, max_class) = if per_class {
        let totals = per_class_counts(field, group, k)?;
        debug_assert_eq!(totals.iter().sum::<u64>(), z_k);
        let mut worst = prec.zero();
        let rows = totals
            .iter()
            .enumerate()
            .map(|(class, &count)| {
                let density = density_of(count);
                let dev = abs(Fixed(&density.0 - &sigma.0));
                let norm_dev = prec.mul(&dev, &sqrt_k);
                if norm_dev.0 > worst.0 {
                    worst = norm_dev;
                }
                ClassCount {
                    class,
                    count,
                    density: prec.to_decimal_string(&density, places),
                    deviation: prec.to_decimal_string(&dev, places),
                }
            })
            .collect();
        (Some(rows), Some(prec.to_decimal_string(&worst, places)))
    } else {
        (None, None)
    };

    Ok(CensusResult {
        m: field.m(),
        k,
        z_k,
        h,
        sigma_theoretical: prec.to_decimal_string(&sigma, places),
        sigma_h: prec.to_decimal_string(&sigma_h, places),
        sigma_empirical: prec.to_decimal_string(&empirical, places),
        deviation: prec.to_decimal_string(&deviation, places),
        normalized_deviation: prec.to_decimal_string(&normalized, places),
        per_class,
        max_class_normalized_deviation: max_class,
    })
}

/// Checkpoints `1, 2, 5, 10, 20, 50, ...` up to `k`, always including `k`.
pub fn log_checkpoints(k: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut decade = 1u64;
    'outer: loop {
        for step in [1, 2, 5] {
            let c = decade * step;
            if c > k {
                break 'outer;
            }
            out.push(c);
        }
        decade *= 10;
    }
    if out.last() != Some(&k) {
        out.push(k);
    }
    out
}

/// CSV rows `k,z_k,ratio` at logarithmic checkpoints.
pub fn checkpoint_csv(field: &QuadraticField, k: u64) -> Result<String> {
    let z = cumulative(&ideal_count_sieve(field, k)?);
    let mut out = String::from("k,z_k,ratio\n");
    for c in log_checkpoints(k) {
        let zc = z[c as usize];
        writeln!(out, "{c},{zc},{:.12}", zc as f64 / c as f64).expect("writing to a String");
    }
    Ok(out)
}
