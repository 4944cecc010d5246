//! Ideal class groups of quadratic rings.

use serde::Serialize;

use super::ideal::{IdealJson, QuadIdeal};
use super::minkowski::{minkowski_bound, MinkowskiBound};
use super::principal::{equivalent, is_principal};
use super::ring::QuadraticField;
use super::split::{split_prime, SCHEMA_VERSION};
use crate::arith;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupReport {
    pub m: i64,
    pub h: usize,
    /// One ideal per class, the principal class first.
    pub representatives: Vec<QuadIdeal>,
    /// `table[i][j]` is the class of `representatives[i] * representatives[j]`.
    pub table: Vec<Vec<usize>>,
    /// Invariant factors `d1 | d2 | ...`; empty for the trivial group.
    pub structure: Vec<u64>,
    pub bound: MinkowskiBound,
}

#[derive(Serialize)]
struct RepJson {
    ideal: IdealJson,
    generators: String,
    norm: String,
}

impl ClassGroupReport {
    pub fn to_json(&self, field: &QuadraticField) -> serde_json::Value {
        let reps: Vec<RepJson> = self
            .representatives
            .iter()
            .map(|r| RepJson {
                ideal: r.to_json(),
                generators: r.format(field),
                norm: r.norm().map(|n| n.to_string()).unwrap_or_default(),
            })
            .collect();
        serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "m": self.m,
            "h": self.h,
            "representatives": reps,
            "table": self.table,
            "structure": self.structure,
            "minkowski": self.bound,
        })
    }

    /// Index of the class containing `ideal`.
    pub fn class_of(&self, field: &QuadraticField, ideal: &QuadIdeal) -> Result<usize> {
        class_index(field, &self.representatives, ideal)?
            .ok_or_else(|| Error::Invalid("ideal lies in no known class".into()))
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.table[i].iter().position(|&k| k == 0).expect("group table has inverses")
    }

    pub fn order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut acc = i;
        while acc != 0 {
            acc = self.table[acc][i];
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        self.structure.len() <= 1
    }
}

fn class_index(field: &QuadraticField, reps: &[QuadIdeal], ideal: &QuadIdeal) -> Result<Option<usize>> {
    for (k, r) in reps.iter().enumerate() {
        if equivalent(field, ideal, r)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// All nonzero ideals of norm at most `limit`, as products of prime ideals.
pub fn ideals_up_to(field: &QuadraticField, limit: u64) -> Result<Vec<QuadIdeal>> {
    let mut primes: Vec<(QuadIdeal, u64)> = Vec::new();
    for q in arith::primes_up_to(limit) {
        for (p, _) in split_prime(field, q)?.factors {
            let n: u64 = p.norm()?.try_into().map_err(|_| Error::Invalid("norm overflow".into()))?;
            if n <= limit {
                primes.push((p, n));
            }
        }
    }
    let mut out = vec![(QuadIdeal::unit(field), 1u64)];
    for (p, n) in &primes {
        let mut next = Vec::new();
        for (ideal, norm) in &out {
            let mut acc = ideal.clone();
            let mut acc_norm = *norm;
            while acc_norm * n <= limit {
                acc = acc.product(field, p)?;
                acc_norm *= n;
                next.push((acc.clone(), acc_norm));
            }
        }
        out.extend(next);
    }
    out.sort_by(|(x, nx), (y, ny)| nx.cmp(ny).then_with(|| x.cmp(y)));
    Ok(out.into_iter().map(|(i, _)| i).collect())
}

/// The class group, from the ideals of norm at most the Minkowski bound.
pub fn class_group(field: &QuadraticField) -> Result<ClassGroupReport> {
    let bound = minkowski_bound(field);
    let mut reps: Vec<QuadIdeal> = Vec::new();
    for ideal in ideals_up_to(field, bound.norm_limit)? {
        if class_index(field, &reps, &ideal)?.is_none() {
            reps.push(ideal);
        }
    }
    debug_assert!(reps.first().is_some_and(|r| r.is_unit()));
    let h = reps.len();
    let mut table = vec![vec![0; h]; h];
    for i in 0..h {
        for j in i..h {
            let prod = reps[i].product(field, &reps[j])?;
            let k = class_index(field, &reps, &prod)?
                .ok_or_else(|| Error::Invalid("class group failed to close".into()))?;
            table[i][j] = k;
            table[j][i] = k;
        }
    }
    let structure = invariant_factors(&table);
    Ok(ClassGroupReport { m: field.m(), h, representatives: reps, table, structure, bound })
}

/// Checks that every class product times its inverse is principal.
pub fn verify_inverses(field: &QuadraticField, report: &ClassGroupReport) -> Result<bool> {
    for (i, r) in report.representatives.iter().enumerate() {
        let inv = &report.representatives[report.inverse(i)];
        if is_principal(field, &r.product(field, inv)?)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn power(table: &[Vec<usize>], x: usize, mut k: u64) -> usize {
    let mut acc = 0;
    let mut base = x;
    while k > 0 {
        if k & 1 == 1 {
            acc = table[acc][base];
        }
        base = table[base][base];
        k >>= 1;
    }
    acc
}

/// Invariant factors of a finite abelian group given by its table (identity 0).
///
/// For each prime `p | h`, the number of `x` with `x^(p^k) = 1` is
/// `p^(sum_i min(k, e_i))`, which recovers the exponents `e_i` of the
/// `p`-primary part. Factors are then assembled largest-with-largest.
pub fn invariant_factors(table: &[Vec<usize>]) -> Vec<u64> {
    let h = table.len() as u64;
    let mut primary: Vec<Vec<(u64, u32)>> = Vec::new();
    for (p, e_total) in arith::factor_u64(h).expect("group order factors") {
        let log_count = |k: u32| -> u32 {
            let pk = p.pow(k);
            let c = (0..table.len()).filter(|&x| power(table, x, pk) == 0).count() as u64;
            let mut l = 0;
            let mut c = c;
            while c > 1 {
                c /= p;
                l += 1;
            }
            l
        };
        // r_k = number of cyclic factors of exponent >= k
        let mut exps = Vec::new();
        let mut prev = 0;
        for k in 1..=e_total {
            let cur = log_count(k);
            let r_k = cur - prev;
            if r_k == 0 {
                break;
            }
            while exps.len() < r_k as usize {
                exps.push(0u32);
            }
            for e in exps.iter_mut().take(r_k as usize) {
                *e += 1;
            }
            prev = cur;
        }
        primary.push(exps.into_iter().map(|e| (p, e)).collect());
    }
    let width = primary.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..width)
        .map(|i| primary.iter().filter_map(|v| v.get(i)).map(|&(p, e)| p.pow(e)).product())
        .collect();
    out.sort_unstable();
    out
}

/// Class number only.
pub fn class_number(field: &QuadraticField) -> Result<usize> {
    Ok(class_group(field)?.h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(m: i64) -> ClassGroupReport {
        class_group(&QuadraticField::new(m).unwrap()).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(group(2).h, 1);
        assert_eq!(group(2).structure, Vec::<u64>::new());
        let g = group(-5);
        assert_eq!((g.h, g.structure.clone()), (2, vec![2]));
        let g = group(-23);
        assert_eq!((g.h, g.structure.clone()), (3, vec![3]));
        assert_eq!(g.order(1), 3);
        assert_eq!(g.order(2), 3);
    }

    #[test]
    fn known_class_numbers() {
        for (m, h) in [(-1, 1), (-14, 4), (-17, 4), (-21, 4), (-26, 6), (-47, 5), (-71, 7), (10, 2), (15, 2), (79, 3)] {
            assert_eq!(group(m).h, h, "m = {m}");
        }
        // Z/2 x Z/2
        assert_eq!(group(-21).structure, vec![2, 2]);
        assert_eq!(group(-14).structure, vec![4]);
    }

    #[test]
    fn invariant_factor_examples() {
        let cyclic = |n: usize| (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect::<Vec<_>>();
        assert_eq!(invariant_factors(&cyclic(1)), Vec::<u64>::new());
        assert_eq!(invariant_factors(&cyclic(12)), vec![12]);
        // Z/2 x Z/6 encoded as pairs
        let elems: Vec<(usize, usize)> = (0..2).flat_map(|a| (0..6).map(move |b| (a, b))).collect();
        let idx = |e: (usize, usize)| elems.iter().position(|&x| x == e).unwrap();
        let t: Vec<Vec<usize>> = elems
            .iter()
            .map(|&(a, b)| elems.iter().map(|&(c, d)| idx(((a + c) % 2, (b + d) % 6))).collect())
            .collect();
        assert_eq!(invariant_factors(&t), vec![2, 6]);
    }
}
