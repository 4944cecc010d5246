//! Decimal fixed-point arithmetic for approximate cross-checks.
//!
//! A real number `r` is held as the integer `round(r * 10^digits)`. Nothing
//! computed here feeds back into an exact result; it is used for root
//! isolation, conjugate ordering, logarithms and numeric verification.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::{Rational, RationalPolynomial};

/// Extra digits carried internally beyond what callers ask for.
const GUARD_DIGITS: u32 = 12;

/// A working precision: `digits` decimal places after the point.
#[derive(Clone, Debug)]
pub struct Precision {
    digits: u32,
    scale: BigInt,
}

/// A fixed-point real at some [`Precision`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(pub BigInt);

/// A fixed-point complex number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFixed {
    pub re: Fixed,
    pub im: Fixed,
}

impl Precision {
    pub fn new(digits: u32) -> Self {
        Self { digits, scale: BigInt::from(10u32).pow(digits) }
    }

    /// A context with guard digits on top of `digits`.
    pub fn with_guard(digits: u32) -> Self {
        Self::new(digits + GUARD_DIGITS)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn zero(&self) -> Fixed {
        Fixed(BigInt::zero())
    }

    pub fn one(&self) -> Fixed {
        Fixed(self.scale.clone())
    }

    pub fn from_int(&self, n: &BigInt) -> Fixed {
        Fixed(n * &self.scale)
    }

    pub fn from_rational(&self, r: &Rational) -> Fixed {
        Fixed(round_div(&(r.numer() * &self.scale), r.denom()))
    }

    pub fn from_f64(&self, x: f64) -> Fixed {
        // exact binary expansion of the double, then rounded into scale
        let r = Rational::from_float(x).unwrap_or_else(Rational::zero);
        self.from_rational(&r)
    }

    pub fn to_f64(&self, x: &Fixed) -> f64 {
        let digits = self.digits as i32;
        // keep 17 significant digits
        let shift = (x.0.bits() as i32 - 60).max(0);
        let head = &x.0 >> shift as usize;
        head.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift) / 10f64.powi(digits)
    }

    pub fn mul(&self, a: &Fixed, b: &Fixed) -> Fixed {
        Fixed(round_div(&(&a.0 * &b.0), &self.scale))
    }

    pub fn div(&self, a: &Fixed, b: &Fixed) -> Fixed {
        Fixed(round_div(&(&a.0 * &self.scale), &b.0))
    }

    pub fn sqrt(&self, a: &Fixed) -> Fixed {
        Fixed((&a.0 * &self.scale).sqrt())
    }

    /// `atan(1/x)` for an integer `x > 1`.
    fn atan_inv(&self, x: u64) -> Fixed {
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut power = &self.scale / &x;
        let mut sum = power.clone();
        let mut k = 1u64;
        while !power.is_zero() {
            power /= &x2;
            let term = &power / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= term;
            } else {
                sum += term;
            }
            k += 1;
        }
        Fixed(sum)
    }

    /// Machin's formula.
    pub fn pi(&self) -> Fixed {
        let a = self.atan_inv(5);
        let b = self.atan_inv(239);
        Fixed(a.0 * 16 - b.0 * 4)
    }

    /// `2 atanh(z)` for small `|z|` given as a fixed-point value.
    fn two_atanh(&self, z: &Fixed) -> Fixed {
        let z2 = self.mul(z, z);
        let mut power = z.clone();
        let mut sum = z.0.clone();
        let mut k = 1u64;
        loop {
            power = self.mul(&power, &z2);
            if power.0.is_zero() {
                break;
            }
            sum += &power.0 / BigInt::from(2 * k + 1);
            k += 1;
        }
        Fixed(sum * 2)
    }

    pub fn ln2(&self) -> Fixed {
        self.two_atanh(&Fixed(&self.scale / 3))
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&self, x: &Fixed) -> Fixed {
        assert!(x.0.is_positive(), "logarithm of a non-positive number");
        // x = 2^k * y with y in [1, 2)
        let mut k: i64 = 0;
        let mut y = x.0.clone();
        let two = &self.scale * 2;
        while y >= two {
            y = (&y + 1) >> 1usize;
            k += 1;
        }
        while y < self.scale {
            y <<= 1usize;
            k -= 1;
        }
        let y = Fixed(y);
        let z = self.div(&Fixed(&y.0 - &self.scale), &Fixed(&y.0 + &self.scale));
        let ln_y = self.two_atanh(&z);
        Fixed(ln_y.0 + self.ln2().0 * k)
    }

    /// Decimal text with `places` digits after the point, rounded half away from zero.
    pub fn to_decimal_string(&self, x: &Fixed, places: u32) -> String {
        let places = places.min(self.digits);
        let drop = BigInt::from(10u32).pow(self.digits - places);
        let v = round_div(&x.0, &drop);
        let neg = v.is_negative();
        let s = v.abs().to_string();
        let s = if s.len() <= places as usize {
            format!("{}{}", "0".repeat(places as usize + 1 - s.len()), s)
        } else {
            s
        };
        let (int, frac) = s.split_at(s.len() - places as usize);
        let sign = if neg { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    pub fn abs_le(&self, x: &Fixed, bound: &Fixed) -> bool {
        x.0.abs() <= bound.0
    }

    /// `10^-k` at this precision.
    pub fn epsilon(&self, k: u32) -> Fixed {
        if k >= self.digits {
            Fixed(BigInt::one())
        } else {
            Fixed(BigInt::from(10u32).pow(self.digits - k))
        }
    }

    pub fn cmul(&self, a: &CFixed, b: &CFixed) -> CFixed {
        let rr = &a.re.0 * &b.re.0 - &a.im.0 * &b.im.0;
        let ii = &a.re.0 * &b.im.0 + &a.im.0 * &b.re.0;
        CFixed {
            re: Fixed(round_div(&rr, &self.scale)),
            im: Fixed(round_div(&ii, &self.scale)),
        }
    }

    pub fn cadd(&self, a: &CFixed, b: &CFixed) -> CFixed {
        CFixed { re: Fixed(&a.re.0 + &b.re.0), im: Fixed(&a.im.0 + &b.im.0) }
    }

    pub fn csub(&self, a: &CFixed, b: &CFixed) -> CFixed {
        CFixed { re: Fixed(&a.re.0 - &b.re.0), im: Fixed(&a.im.0 - &b.im.0) }
    }

    pub fn cdiv(&self, a: &CFixed, b: &CFixed) -> CFixed {
        let den = &b.re.0 * &b.re.0 + &b.im.0 * &b.im.0;
        let rr = (&a.re.0 * &b.re.0 + &a.im.0 * &b.im.0) * &self.scale;
        let ii = (&a.im.0 * &b.re.0 - &a.re.0 * &b.im.0) * &self.scale;
        CFixed { re: Fixed(round_div(&rr, &den)), im: Fixed(round_div(&ii, &den)) }
    }

    pub fn creal(&self, r: &Rational) -> CFixed {
        CFixed { re: self.from_rational(r), im: self.zero() }
    }

    /// Squared modulus.
    pub fn cnorm2(&self, a: &CFixed) -> Fixed {
        Fixed(round_div(&(&a.re.0 * &a.re.0 + &a.im.0 * &a.im.0), &self.scale))
    }

    /// Modulus.
    pub fn cabs(&self, a: &CFixed) -> Fixed {
        self.sqrt(&self.cnorm2(a))
    }

    pub fn to_complex64(&self, a: &CFixed) -> Complex64 {
        Complex64::new(self.to_f64(&a.re), self.to_f64(&a.im))
    }

    /// Horner evaluation of a rational polynomial.
    pub fn eval_poly(&self, p: &RationalPolynomial, z: &CFixed) -> CFixed {
        let mut acc = CFixed { re: self.zero(), im: self.zero() };
        for c in p.coeffs().iter().rev() {
            acc = self.cadd(&self.cmul(&acc, z), &self.creal(c));
        }
        acc
    }
}

fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    // r has the sign of d
    if (r * BigInt::from(2)).abs() >= d.abs() {
        if d.is_positive() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Durand-Kerner iteration in double precision, used only to seed refinement.
fn seed_roots(p: &RationalPolynomial) -> Vec<Complex64> {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let lc = crate::poly::rational_to_f64(p.leading().unwrap());
    let c: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|x| Complex64::new(crate::poly::rational_to_f64(x) / lc, 0.0))
        .collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a);
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    z
}

/// All complex roots of a squarefree polynomial at `digits` decimal places,
/// ordered real roots ascending, then complex roots by real part with the
/// positive imaginary part first.
pub fn polynomial_roots(p: &RationalPolynomial, digits: u32) -> Vec<CFixed> {
    let prec = Precision::with_guard(digits);
    let dp = p.derivative();
    let tol = prec.epsilon(digits + GUARD_DIGITS / 2);
    let mut roots: Vec<CFixed> = seed_roots(p)
        .into_iter()
        .map(|z| {
            let mut w = CFixed { re: prec.from_f64(z.re), im: prec.from_f64(z.im) };
            for _ in 0..200 {
                let f = prec.eval_poly(p, &w);
                let fp = prec.eval_poly(&dp, &w);
                if fp.re.0.is_zero() && fp.im.0.is_zero() {
                    break;
                }
                let step = prec.cdiv(&f, &fp);
                w = prec.csub(&w, &step);
                if step.re.0.abs() <= tol.0 && step.im.0.abs() <= tol.0 {
                    break;
                }
            }
            w
        })
        .collect();
    // snap numerically real roots onto the real axis
    let real_tol = prec.epsilon(digits / 2);
    for r in &mut roots {
        if r.im.0.abs() <= real_tol.0 {
            r.im = prec.zero();
        }
    }
    roots.sort_by(|a, b| {
        let a_real = a.im.0.is_zero();
        let b_real = b.im.0.is_zero();
        b_real
            .cmp(&a_real)
            .then_with(|| a.re.cmp(&b.re))
            .then_with(|| b.im.0.is_positive().cmp(&a.im.0.is_positive()))
    });
    roots
        .into_iter()
        .map(|r| {
            let shrink = BigInt::from(10u32).pow(GUARD_DIGITS);
            CFixed { re: Fixed(round_div(&r.re.0, &shrink)), im: Fixed(round_div(&r.im.0, &shrink)) }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_and_logs() {
        let p = Precision::with_guard(50);
        let pi = p.to_decimal_string(&p.pi(), 50);
        assert_eq!(pi, "3.14159265358979323846264338327950288419716939937511");
        let ln2 = p.to_decimal_string(&p.ln2(), 30);
        assert_eq!(ln2, "0.693147180559945309417232121458");
        let ln10 = p.to_decimal_string(&p.ln(&p.from_int(&BigInt::from(10))), 30);
        assert_eq!(ln10, "2.302585092994045684017991454684");
        let half = p.from_rational(&Rational::new(1.into(), 2.into()));
        assert_eq!(p.to_decimal_string(&p.ln(&half), 20), "-0.69314718055994530942");
    }

    #[test]
    fn roots_of_x2_minus_2() {
        let poly: RationalPolynomial = "x^2 - 2".parse().unwrap();
        let roots = polynomial_roots(&poly, 60);
        let p = Precision::new(60);
        assert_eq!(
            p.to_decimal_string(&roots[1].re, 40),
            "1.4142135623730950488016887242096980785697"
        );
        assert!(roots[0].re < roots[1].re);
    }

    #[test]
    fn ordering_real_then_complex() {
        // (x - 1)(x^2 + 1)(x + 3)
        let poly: RationalPolynomial = "x^4 + 2x^3 - 2x^2 + 2x - 3".parse().unwrap();
        let roots = polynomial_roots(&poly, 30);
        let p = Precision::new(30);
        let shown: Vec<(f64, f64)> = roots.iter().map(|r| (p.to_f64(&r.re), p.to_f64(&r.im))).collect();
        assert!((shown[0].0 + 3.0).abs() < 1e-12 && shown[0].1 == 0.0);
        assert!((shown[1].0 - 1.0).abs() < 1e-12 && shown[1].1 == 0.0);
        assert!((shown[2].1 - 1.0).abs() < 1e-12);
        assert!((shown[3].1 + 1.0).abs() < 1e-12);
    }
}
