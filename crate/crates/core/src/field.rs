//! Number fields `Q(theta)` given by a monic integer polynomial.
//!
//! An element is the unique rational polynomial `q` of degree below the
//! field degree with `alpha = q(theta)`. Trace, norm and the field
//! polynomial come from the matrix of multiplication by `alpha` on the
//! power basis, which for `alpha = theta` is the companion matrix.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::numeric::{polynomial_roots, CFixed, Precision};
use crate::poly::{self, IntegerPolynomial, Rational, RationalPolynomial};

/// Decimal digits used for the cached complex embeddings.
pub const EMBEDDING_DIGITS: u32 = 60;

/// `Q(theta)` for a root `theta` of a monic polynomial assumed irreducible.
#[derive(Debug)]
pub struct NumberField {
    minpoly: IntegerPolynomial,
    modulus: RationalPolynomial,
    degree: usize,
    embeddings: OnceLock<Vec<CFixed>>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}

impl Eq for NumberField {}

/// JSON form `{"minpoly": [c0, c1, ..., 1]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub minpoly: IntegerPolynomial,
}

/// JSON form `{"coords": ["num/den", ...]}` of an element on the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementCoords {
    pub coords: Vec<String>,
}

impl NumberField {
    /// Builds the field, rejecting non-monic or constant polynomials and
    /// polynomials with a rational root (the only irreducibility check made).
    pub fn new(minpoly: IntegerPolynomial) -> Result<Arc<Self>> {
        let degree = match minpoly.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::Invalid("defining polynomial must be nonconstant".into())),
        };
        if !minpoly.is_monic() {
            return Err(Error::NotMonic);
        }
        if degree > 1 {
            if let Some(r) = integer_root(&minpoly)? {
                return Err(Error::Invalid(format!(
                    "defining polynomial {minpoly} has the rational root {r}"
                )));
            }
        }
        Ok(Arc::new(Self {
            modulus: minpoly.to_rational(),
            minpoly,
            degree,
            embeddings: OnceLock::new(),
        }))
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Arc<Self>> {
        Self::new(d.minpoly.clone())
    }

    pub fn minpoly(&self) -> &IntegerPolynomial {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Complex roots `theta_1..theta_n` at [`EMBEDDING_DIGITS`], computed once.
    pub fn embeddings(&self) -> &[CFixed] {
        self.embeddings
            .get_or_init(|| polynomial_roots(&self.modulus, EMBEDDING_DIGITS))
    }

    /// An Eisenstein prime for the defining polynomial, when one exists.
    pub fn eisenstein_witness(&self) -> Result<Option<BigInt>> {
        self.minpoly.eisenstein_witness()
    }

    pub fn element(self: &Arc<Self>, repr: RationalPolynomial) -> Result<FieldElement> {
        let repr = repr.rem(&self.modulus)?;
        Ok(FieldElement { field: Arc::clone(self), repr })
    }

    /// The element with power-basis coordinates `coords`.
    pub fn from_coords(self: &Arc<Self>, coords: &[Rational]) -> Result<FieldElement> {
        if coords.len() != self.degree {
            return Err(Error::LengthMismatch { expected: self.degree, got: coords.len() });
        }
        self.element(RationalPolynomial::new(coords.to_vec()))
    }

    pub fn from_json_coords(self: &Arc<Self>, e: &ElementCoords) -> Result<FieldElement> {
        let coords = e
            .coords
            .iter()
            .map(|s| poly::parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        self.from_coords(&coords)
    }

    pub fn rational(self: &Arc<Self>, c: Rational) -> FieldElement {
        FieldElement { field: Arc::clone(self), repr: RationalPolynomial::constant(c) }
    }

    pub fn integer(self: &Arc<Self>, c: i64) -> FieldElement {
        self.rational(Rational::from_integer(c.into()))
    }

    /// The generator `theta`.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        if self.degree == 1 {
            let root = -self.modulus.coeff(0);
            return self.rational(root);
        }
        FieldElement { field: Arc::clone(self), repr: RationalPolynomial::x() }
    }

    /// Discriminant of a tuple of `n` elements: `det [T(a_i a_j)]`.
    pub fn tuple_discriminant(&self, tuple: &[FieldElement]) -> Result<Rational> {
        if tuple.len() != self.degree {
            return Err(Error::LengthMismatch { expected: self.degree, got: tuple.len() });
        }
        if tuple.iter().any(|a| *a.field != *self) {
            return Err(Error::FieldMismatch);
        }
        let traces: Matrix = tuple
            .iter()
            .map(|a| {
                tuple
                    .iter()
                    .map(|b| a.mul(b).map(|ab| ab.trace()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(linalg::det(&traces))
    }
}

/// An integer root of a monic integer polynomial, if any (these are its only rational roots).
fn integer_root(p: &IntegerPolynomial) -> Result<Option<BigInt>> {
    let c0 = &p.coeffs()[0];
    if c0.is_zero() {
        return Ok(Some(BigInt::zero()));
    }
    for d in arith::divisors_big(c0.magnitude())? {
        let d = BigInt::from(d);
        for cand in [d.clone(), -d] {
            if p.eval(&cand).is_zero() {
                return Ok(Some(cand));
            }
        }
    }
    Ok(None)
}

/// `alpha = q(theta)` in a [`NumberField`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Arc<NumberField>,
    repr: RationalPolynomial,
}

impl FieldElement {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn repr(&self) -> &RationalPolynomial {
        &self.repr
    }

    /// Power-basis coordinates, padded to the field degree.
    pub fn coords(&self) -> Vec<Rational> {
        (0..self.field.degree).map(|i| self.repr.coeff(i)).collect()
    }

    pub fn to_json_coords(&self) -> ElementCoords {
        ElementCoords { coords: self.coords().iter().map(poly::rational_to_string).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with_repr(&self, repr: RationalPolynomial) -> Self {
        Self { field: Arc::clone(&self.field), repr }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.with_repr(&self.repr + &other.repr))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(self.with_repr(&self.repr - &other.repr))
    }

    pub fn neg(&self) -> Self {
        self.with_repr(-&self.repr)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let product = (&self.repr * &other.repr).rem(&self.field.modulus)?;
        Ok(self.with_repr(product))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.with_repr(self.repr.scale(c))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.field.integer(1);
        for _ in 0..k {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// `s(theta)` where `s * repr + t * minpoly = 1`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let (g, s, _) = self.repr.ext_gcd(&self.field.modulus)?;
        if g != RationalPolynomial::one() {
            return Err(Error::Invalid(format!(
                "{} shares the factor {g} with the defining polynomial, which is reducible",
                self.repr
            )));
        }
        Ok(self.with_repr(s.rem(&self.field.modulus)?))
    }

    /// Matrix of `x -> alpha * x` on the power basis; column `j` holds `alpha * theta^j`.
    pub fn multiplication_matrix(&self) -> Matrix {
        let n = self.field.degree;
        let mut m = vec![vec![Rational::zero(); n]; n];
        let mut col = self.clone();
        let theta = self.field.generator();
        for j in 0..n {
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.repr.coeff(i);
            }
            if j + 1 < n {
                col = col.mul(&theta).expect("same field");
            }
        }
        m
    }

    pub fn trace(&self) -> Rational {
        linalg::trace(&self.multiplication_matrix())
    }

    pub fn norm(&self) -> Rational {
        linalg::det(&self.multiplication_matrix())
    }

    pub fn trace_and_norm(&self) -> (Rational, Rational) {
        let m = self.multiplication_matrix();
        (linalg::trace(&m), linalg::det(&m))
    }

    /// Characteristic polynomial of the multiplication matrix, i.e. the
    /// product of `x - alpha^(i)` over all conjugates.
    pub fn field_polynomial(&self) -> RationalPolynomial {
        linalg::char_poly(&self.multiplication_matrix())
    }

    /// Monic minimal polynomial over Q: the squarefree part of the field
    /// polynomial, checked to satisfy `f = p^s`.
    pub fn minimal_polynomial(&self) -> RationalPolynomial {
        let f = self.field_polynomial();
        let g = f.gcd(&f.derivative()).expect("field polynomial is nonzero");
        let p = f.div_rem(&g).expect("gcd is nonzero").0.monic();
        let m = p.degree().expect("nonconstant");
        let s = self.field.degree / m;
        debug_assert_eq!(p.pow(s as u32), f, "field polynomial is not a power of its squarefree part");
        p
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.minimal_polynomial().to_integer().is_some()
    }

    /// The least `n >= 1` making `n * alpha` an algebraic integer, with `n * alpha`.
    ///
    /// With minimal polynomial `x^k + c_{k-1} x^{k-1} + ... + c_0`, the minimal
    /// polynomial of `n * alpha` has coefficients `c_i n^(k-i)`. The least valid
    /// `n` divides the lcm of the denominators, so the divisors are scanned in order.
    pub fn denominator_clearing(&self) -> Result<(BigInt, FieldElement)> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let p = self.minimal_polynomial();
        let k = p.degree().expect("nonconstant");
        let lcm = poly::denominator_lcm(p.coeffs());
        let works = |n: &BigInt| {
            (0..k).all(|i| {
                let scaled = p.coeff(i) * Rational::from_integer(n.pow((k - i) as u32));
                scaled.is_integer()
            })
        };
        let n = arith::divisors_big(lcm.magnitude())?
            .into_iter()
            .map(BigInt::from)
            .find(|n| works(n))
            .expect("the lcm itself always works");
        let b = self.scale(&Rational::from_integer(n.clone()));
        Ok((n, b))
    }

    /// Numerical conjugates `q(theta_i)` at [`EMBEDDING_DIGITS`], in embedding order.
    pub fn conjugates(&self) -> Vec<CFixed> {
        let prec = Precision::new(EMBEDDING_DIGITS);
        self.field
            .embeddings()
            .iter()
            .map(|theta| prec.eval_poly(&self.repr, theta))
            .collect()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr.to_text().replace('x', "t"))
    }
}

/// Which symmetric combination of roots [`composed_min_poly`] builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Composition {
    Sum,
    Product,
}

/// Monic integer polynomial of degree `deg p * deg q` whose roots are all
/// `alpha_i + beta_j` (or `alpha_i * beta_j`): the characteristic polynomial
/// of the Kronecker sum (or product) of the two companion matrices.
pub fn composed_min_poly(
    op: Composition,
    p: &IntegerPolynomial,
    q: &IntegerPolynomial,
) -> Result<IntegerPolynomial> {
    for f in [p, q] {
        if f.degree().unwrap_or(0) == 0 {
            return Err(Error::Invalid("composition needs nonconstant polynomials".into()));
        }
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
    }
    let a = linalg::from_integer_poly_companion(p);
    let b = linalg::from_integer_poly_companion(q);
    let m = match op {
        Composition::Sum => linalg::kronecker_sum(&a, &b),
        Composition::Product => linalg::kronecker(&a, &b),
    };
    Ok(linalg::char_poly(&m)
        .to_integer()
        .expect("integer matrix has an integer characteristic polynomial"))
}

/// Digits below which two conjugate combinations count as equal.
const SEPARATION_DIGITS: u32 = 40;

/// Least `c >= 0` with `alpha_i + c beta_j != alpha + c beta` for every `i`
/// and every `j` other than the first, where `alpha = alpha_1`, `beta = beta_1`
/// in embedding order. Then `Q(alpha, beta) = Q(alpha + c beta)`.
///
/// A squarefree characteristic polynomial of `A (+) cB` certifies `c` exactly;
/// otherwise the inequalities are checked at [`EMBEDDING_DIGITS`].
pub fn primitive_element_search(p: &IntegerPolynomial, q: &IntegerPolynomial) -> Result<u64> {
    let fp = NumberField::new(p.clone())?;
    let fq = NumberField::new(q.clone())?;
    if fq.degree() == 1 {
        return Ok(0);
    }
    let a = linalg::from_integer_poly_companion(p);
    let b = linalg::from_integer_poly_companion(q);
    let prec = Precision::new(EMBEDDING_DIGITS);
    let tol = prec.epsilon(SEPARATION_DIGITS);
    let alphas = fp.embeddings();
    let betas = fq.embeddings();
    for c in 0u64.. {
        let cq = Rational::from_integer(c.into());
        let sum = linalg::char_poly(&linalg::kronecker_sum(&a, &linalg::scale(&b, &cq)));
        let squarefree = sum.gcd(&sum.derivative())?.degree() == Some(0);
        if squarefree {
            return Ok(c);
        }
        let cc = prec.creal(&cq);
        let target = prec.cadd(&alphas[0], &prec.cmul(&cc, &betas[0]));
        let separated = alphas.iter().all(|ai| {
            betas[1..].iter().all(|bj| {
                let v = prec.csub(&prec.cadd(ai, &prec.cmul(&cc, bj)), &target);
                v.re.0.abs() > tol.0 || v.im.0.abs() > tol.0
            })
        });
        if separated {
            return Ok(c);
        }
    }
    unreachable!("only finitely many c violate the separation conditions")
}

/// Evaluates `|f(z)|` for numeric root-containment checks.
pub fn residual(f: &RationalPolynomial, z: &CFixed) -> f64 {
    let prec = Precision::new(EMBEDDING_DIGITS);
    let v = prec.eval_poly(f, z);
    prec.to_f64(&prec.cabs(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn field(s: &str) -> Arc<NumberField> {
        NumberField::new(s.parse().unwrap()).unwrap()
    }

    fn elem(f: &Arc<NumberField>, coords: &[(i64, i64)]) -> FieldElement {
        f.from_coords(&coords.iter().map(|&(n, d)| q(n, d)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let k = field("x^2 - 2");
        let a = elem(&k, &[(1, 1), (1, 1)]);
        let b = elem(&k, &[(1, 1), (-1, 1)]);
        assert_eq!(a.mul(&b).unwrap(), k.integer(-1));
        assert_eq!(a.add(&k.integer(0)).unwrap(), a);

        let w = field("x^2 + x + 1");
        let t = w.generator();
        assert_eq!(t.mul(&t).unwrap(), elem(&w, &[(-1, 1), (-1, 1)]));
        assert_eq!(a.mul(&t), Err(Error::FieldMismatch));
    }

    #[test]
    fn inverse_examples() {
        let k = field("x^2 - 2");
        let t = k.generator();
        assert_eq!(t.inverse().unwrap(), elem(&k, &[(0, 1), (1, 2)]));
        assert_eq!(k.integer(1).inverse().unwrap(), k.integer(1));
        assert_eq!(elem(&k, &[(1, 1), (1, 1)]).inverse().unwrap(), elem(&k, &[(-1, 1), (1, 1)]));
        assert_eq!(k.integer(0).inverse(), Err(Error::ZeroInverse));
    }

    #[test]
    fn trace_norm_examples() {
        let cubic = field("x^3 - 3");
        let c = cubic.rational(q(5, 7));
        assert_eq!(c.trace_and_norm(), (q(15, 7), q(125, 343)));

        let k = field("x^2 - 2");
        assert_eq!(k.generator().trace_and_norm(), (q(0, 1), q(-2, 1)));

        let m5 = field("x^2 + 5");
        assert_eq!(elem(&m5, &[(1, 1), (2, 1)]).trace_and_norm(), (q(2, 1), q(21, 1)));
    }

    #[test]
    fn discriminant_examples() {
        for m in [2i64, 3, -5, 7, -1] {
            let k = NumberField::new(IntegerPolynomial::from_i64s(&[-m, 0, 1])).unwrap();
            let d = k.tuple_discriminant(&[k.integer(1), k.generator()]).unwrap();
            assert_eq!(d, q(4 * m, 1));
        }
        let k = field("x^2 - 2");
        assert!(k.tuple_discriminant(&[k.generator(), k.generator()]).unwrap().is_zero());
        let p5 = NumberField::new(IntegerPolynomial::cyclotomic_prime(5).unwrap()).unwrap();
        let w = p5.generator();
        let tuple: Vec<_> = (0..4).map(|i| w.pow(i)).collect();
        assert_eq!(p5.tuple_discriminant(&tuple).unwrap(), q(125, 1));
        assert_eq!(
            k.tuple_discriminant(&[k.generator()]),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn field_and_minimal_polynomials() {
        let k = field("x^2 - 2");
        let c = k.rational(q(3, 1));
        assert_eq!(c.field_polynomial(), "x^2 - 6x + 9".parse().unwrap());
        assert_eq!(c.minimal_polynomial(), "x - 3".parse().unwrap());
        assert_eq!(k.generator().field_polynomial(), "x^2 - 2".parse().unwrap());
        assert_eq!(elem(&k, &[(1, 1), (1, 1)]).field_polynomial(), "x^2 - 2x - 1".parse().unwrap());

        let cube = field("x^3 - 3");
        let t2 = cube.generator().pow(2);
        assert_eq!(t2.minimal_polynomial(), "x^3 - 9".parse().unwrap());
        assert_eq!(cube.generator().minimal_polynomial(), "x^3 - 3".parse().unwrap());
    }

    #[test]
    fn integrality_examples() {
        let k5 = field("x^2 - 5");
        assert!(elem(&k5, &[(1, 2), (1, 2)]).is_algebraic_integer());
        let k3 = field("x^2 - 3");
        assert!(!elem(&k3, &[(1, 2), (1, 2)]).is_algebraic_integer());
        assert!(!k3.rational(q(1, 2)).is_algebraic_integer());
        assert!(k3.rational(q(-4, 1)).is_algebraic_integer());
    }

    #[test]
    fn denominator_clearing_examples() {
        let k = field("x^2 - 2");
        let (n, b) = k.rational(q(1, 2)).denominator_clearing().unwrap();
        assert_eq!((n, b), (BigInt::from(2), k.integer(1)));
        let (n, b) = elem(&k, &[(0, 1), (1, 3)]).denominator_clearing().unwrap();
        assert_eq!((n, b), (BigInt::from(3), k.generator()));
        let a = elem(&k, &[(4, 1), (-1, 1)]);
        assert_eq!(a.denominator_clearing().unwrap(), (BigInt::one(), a.clone()));
        assert_eq!(k.integer(0).denominator_clearing(), Err(Error::ZeroElement));
        // (1 + sqrt 5)/4: minimal polynomial x^2 - x/2 - 1/4 needs n = 2
        let k5 = field("x^2 - 5");
        let (n, _) = elem(&k5, &[(1, 4), (1, 4)]).denominator_clearing().unwrap();
        assert_eq!(n, BigInt::from(2));
    }

    #[test]
    fn composed_examples() {
        let p: IntegerPolynomial = "x^2 - 2".parse().unwrap();
        let q3: IntegerPolynomial = "x^2 - 3".parse().unwrap();
        assert_eq!(
            composed_min_poly(Composition::Sum, &p, &q3).unwrap(),
            "x^4 - 10x^2 + 1".parse().unwrap()
        );
        let one: IntegerPolynomial = "x - 1".parse().unwrap();
        assert_eq!(composed_min_poly(Composition::Product, &p, &one).unwrap(), p);
        let x: IntegerPolynomial = "x".parse().unwrap();
        assert_eq!(composed_min_poly(Composition::Sum, &p, &x).unwrap(), p);
        let bad: IntegerPolynomial = "2x^2 - 1".parse().unwrap();
        assert_eq!(composed_min_poly(Composition::Sum, &p, &bad), Err(Error::NotMonic));
    }

    #[test]
    fn primitive_element_examples() {
        let ip = |s: &str| s.parse::<IntegerPolynomial>().unwrap();
        assert_eq!(primitive_element_search(&ip("x^2 - 2"), &ip("x^3 - 3")).unwrap(), 1);
        assert_eq!(primitive_element_search(&ip("x^2 - 2"), &ip("x - 5")).unwrap(), 0);
        assert_eq!(primitive_element_search(&ip("x^2 - 2"), &ip("x^2 - 2")).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(NumberField::new("x^2 - 4".parse().unwrap()).is_err());
        assert_eq!(NumberField::new("2x^2 - 1".parse().unwrap()).unwrap_err(), Error::NotMonic);
        assert!(NumberField::new("5".parse().unwrap()).is_err());
    }

    #[test]
    fn json_forms() {
        let d: FieldDescriptor = serde_json::from_str(r#"{"minpoly": [-2, 0, 1]}"#).unwrap();
        let k = NumberField::from_descriptor(&d).unwrap();
        let e: ElementCoords = serde_json::from_str(r#"{"coords": ["1/2", "3"]}"#).unwrap();
        let a = k.from_json_coords(&e).unwrap();
        assert_eq!(a.to_json_coords(), e);
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"{"minpoly":["-2","0","1"]}"#);
    }

    #[test]
    fn embeddings_are_sorted_and_accurate() {
        let k = field("x^2 - 2");
        let e = k.embeddings();
        assert!(e[0].re < e[1].re);
        assert!(residual(&"x^2 - 2".parse().unwrap(), &e[1]) < 1e-50);
    }
}
