//! Small dense exact matrices: determinants, characteristic polynomials,
//! companion matrices and Kronecker constructions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{denominator_lcm, IntegerPolynomial, Rational, RationalPolynomial};

/// Row-major square matrix over Q.
pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Rational::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn trace(a: &Matrix) -> Rational {
    (0..a.len()).fold(Rational::zero(), |acc, i| acc + &a[i][i])
}

/// Fraction-free Gaussian elimination over Z.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact determinant of a rational matrix: rows are scaled to integers,
/// the integer determinant is taken by Bareiss, then the scaling undone.
pub fn det(a: &Matrix) -> Rational {
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            let l = denominator_lcm(row);
            scale *= &l;
            row.iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    Rational::new(bareiss_det(rows), scale)
}

/// Characteristic polynomial `det(xI - A)` by the Faddeev-LeVerrier recursion.
pub fn char_poly(a: &Matrix) -> RationalPolynomial {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = identity(n);
    let mut am;
    for k in 1..=n {
        am = mat_mul(a, &m);
        let c = -trace(&am) / Rational::from_integer(BigInt::from(k));
        coeffs[n - k] = c.clone();
        for (i, row) in am.iter_mut().enumerate() {
            row[i] += &c;
        }
        m = am;
    }
    RationalPolynomial::new(coeffs)
}

/// Companion matrix of a monic polynomial: multiplication by `x` on the
/// power basis, column `j` holding the coordinates of `x * x^j`.
pub fn companion(p: &RationalPolynomial) -> Matrix {
    let n = p.degree().unwrap_or(0);
    let mut c = vec![vec![Rational::zero(); n]; n];
    for i in 1..n {
        c[i][i - 1] = Rational::one();
    }
    for (i, row) in c.iter_mut().enumerate() {
        row[n - 1] = -p.coeff(i);
    }
    c
}

pub fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![Rational::zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

/// `A (x) I + I (x) B`, whose eigenvalues are all pairwise sums.
pub fn kronecker_sum(a: &Matrix, b: &Matrix) -> Matrix {
    let left = kronecker(a, &identity(b.len()));
    let right = kronecker(&identity(a.len()), b);
    left.iter()
        .zip(&right)
        .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn scale(a: &Matrix, c: &Rational) -> Matrix {
    a.iter().map(|row| row.iter().map(|x| x * c).collect()).collect()
}

pub fn from_integer_poly_companion(p: &IntegerPolynomial) -> Matrix {
    companion(&p.to_rational())
}
