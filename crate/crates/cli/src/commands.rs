use std::path::Path;

use serde_json::{json, Value};

use quadrantal::census;
use quadrantal::cyclo;
use quadrantal::field::{self, Composition, ElementCoords, FieldDescriptor, FieldElement, NumberField};
use quadrantal::poly::{rational_to_string, IntegerPolynomial, RationalPolynomial};
use quadrantal::quad::classgroup::verify_inverses;
use quadrantal::quad::split::{factors_json, multiply_out};
use quadrantal::quad::{
    class_group, factor_ideal, is_principal, minkowski_bound, split_prime, OmegaKind, QuadIdeal,
    QuadInt, QuadraticField,
};
use quadrantal::units::{self, PellKind};
use quadrantal::Error;

pub const PRECISION_ENV: &str = "QUADRANTAL_PRECISION";
pub const MIN_PRECISION: u32 = 30;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_precondition() => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Out = Result<Value, CliError>;

fn precision(default: u32) -> Result<u32, CliError> {
    match std::env::var(PRECISION_ENV) {
        Err(_) => Ok(default),
        Ok(s) => match s.trim().parse::<u32>() {
            Ok(d) if (MIN_PRECISION..=10_000).contains(&d) => Ok(d),
            _ => Err(CliError::Usage(format!(
                "{PRECISION_ENV} must be an integer between {MIN_PRECISION} and 10000, got `{s}`"
            ))),
        },
    }
}

fn int_poly(s: &str) -> Result<IntegerPolynomial, CliError> {
    let t = s.trim();
    if t.starts_with('{') {
        let d: FieldDescriptor =
            serde_json::from_str(t).map_err(|e| CliError::Usage(format!("bad field descriptor: {e}")))?;
        return Ok(d.minpoly);
    }
    Ok(t.parse()?)
}

fn rat_poly(s: &str) -> Result<RationalPolynomial, CliError> {
    Ok(s.trim().parse()?)
}

fn number_field(minpoly: &str) -> Result<std::sync::Arc<NumberField>, CliError> {
    Ok(NumberField::new(int_poly(minpoly)?)?)
}

fn element(k: &std::sync::Arc<NumberField>, s: &str) -> Result<FieldElement, CliError> {
    let t = s.trim();
    if t.starts_with('{') {
        let c: ElementCoords =
            serde_json::from_str(t).map_err(|e| CliError::Usage(format!("bad element coordinates: {e}")))?;
        return Ok(k.from_json_coords(&c)?);
    }
    Ok(k.element(rat_poly(t)?)?)
}

fn poly_value(p: &RationalPolynomial) -> Value {
    json!({ "coeffs": p, "text": p.to_text() })
}

pub fn poly_divrem(a: &str, b: &str) -> Out {
    let (q, r) = rat_poly(a)?.div_rem(&rat_poly(b)?)?;
    Ok(json!({ "quotient": poly_value(&q), "remainder": poly_value(&r) }))
}

pub fn poly_gcd(a: &str, b: &str) -> Out {
    let (g, s, t) = rat_poly(a)?.ext_gcd(&rat_poly(b)?)?;
    Ok(json!({ "gcd": poly_value(&g), "s": poly_value(&s), "t": poly_value(&t) }))
}

pub fn poly_eisenstein(p: &str) -> Out {
    let f = int_poly(p)?;
    let (content, primitive) = f.content_and_primitive_part()?;
    let witness = f.eisenstein_witness()?;
    Ok(json!({
        "polynomial": f.to_text(),
        "content": content.to_string(),
        "primitive_part": primitive.to_text(),
        "witness": witness.map(|w| w.to_string()),
    }))
}

pub fn poly_cyclotomic(p: u64) -> Out {
    let f = IntegerPolynomial::cyclotomic_prime(p)?;
    Ok(json!({ "p": p, "coeffs": f, "text": f.to_text() }))
}

pub fn field_trace_norm(minpoly: &str, elem: &str) -> Out {
    let k = number_field(minpoly)?;
    let x = element(&k, elem)?;
    let (t, n) = x.trace_and_norm();
    Ok(json!({
        "element": x.to_json_coords(),
        "trace": rational_to_string(&t),
        "norm": rational_to_string(&n),
        "algebraic_integer": x.is_algebraic_integer(),
    }))
}

pub fn field_discriminant(minpoly: &str, elems: &[String]) -> Out {
    let k = number_field(minpoly)?;
    let tuple: Vec<FieldElement> = if elems.is_empty() {
        (0..k.degree()).map(|i| k.generator().pow(i as u32)).collect()
    } else {
        elems.iter().map(|e| element(&k, e)).collect::<Result<_, _>>()?
    };
    let disc = k.tuple_discriminant(&tuple)?;
    Ok(json!({
        "minpoly": k.minpoly(),
        "tuple": tuple.iter().map(|e| e.to_json_coords()).collect::<Vec<_>>(),
        "discriminant": rational_to_string(&disc),
    }))
}

pub fn field_minpoly_of(minpoly: &str, elem: &str) -> Out {
    let k = number_field(minpoly)?;
    let x = element(&k, elem)?;
    let mp = x.minimal_polynomial();
    let fp = x.field_polynomial();
    let clearing = if x.is_zero() {
        Value::Null
    } else {
        let (n, b) = x.denominator_clearing()?;
        json!({ "n": n.to_string(), "element": b.to_json_coords() })
    };
    Ok(json!({
        "element": x.to_json_coords(),
        "minimal_polynomial": poly_value(&mp),
        "field_polynomial": poly_value(&fp),
        "algebraic_integer": x.is_algebraic_integer(),
        "denominator_clearing": clearing,
    }))
}

pub fn field_compose(p: &str, q: &str, product: bool) -> Out {
    let op = if product { Composition::Product } else { Composition::Sum };
    let r = field::composed_min_poly(op, &int_poly(p)?, &int_poly(q)?)?;
    Ok(json!({ "op": op, "coeffs": r, "text": r.to_text() }))
}

pub fn field_primitive_element(p: &str, q: &str) -> Out {
    let (p, q) = (int_poly(p)?, int_poly(q)?);
    let c = field::primitive_element_search(&p, &q)?;
    Ok(json!({ "c": c, "p": p.to_text(), "q": q.to_text() }))
}

fn quad_field(m: i64) -> Result<QuadraticField, CliError> {
    Ok(QuadraticField::new(m)?)
}

fn ideal_value(f: &QuadraticField, i: &QuadIdeal) -> Value {
    json!({
        "ideal": i.to_json(),
        "generators": i.format(f),
        "norm": i.norm().map(|n| n.to_string()).ok(),
    })
}

fn quad_value(f: &QuadraticField, x: &QuadInt) -> Value {
    json!({ "a": x.a.to_string(), "b": x.b.to_string(), "text": f.format(x) })
}

pub fn quad_ring(m: i64) -> Out {
    let f = quad_field(m)?;
    let omega = match f.omega_kind() {
        OmegaKind::Sqrtm => "sqrtm",
        OmegaKind::HalfOnePlusSqrtm => "half_one_plus_sqrtm",
    };
    let (r1, s) = f.signature();
    Ok(json!({
        "m": m,
        "discriminant": f.discriminant().to_string(),
        "omega_kind": omega,
        "omega": f.format(&QuadInt::omega()),
        "signature": [r1, s],
    }))
}

pub fn quad_element(m: i64, x: &str) -> Out {
    let f = quad_field(m)?;
    let v = f.parse(x)?;
    Ok(json!({
        "element": quad_value(&f, &v),
        "norm": f.norm(&v).to_string(),
        "trace": f.trace(&v).to_string(),
        "conjugate": quad_value(&f, &f.conj(&v)),
        "is_unit": f.is_unit(&v),
    }))
}

pub fn quad_split(m: i64, q: u64) -> Out {
    let f = quad_field(m)?;
    Ok(split_prime(&f, q)?.to_json(&f))
}

pub fn quad_factor(m: i64, ideal: &str, verify: bool) -> Out {
    let f = quad_field(m)?;
    let i = QuadIdeal::parse(&f, ideal)?;
    let factors = factor_ideal(&f, &i)?;
    let mut out = json!({
        "schema_version": quadrantal::quad::split::SCHEMA_VERSION,
        "m": m,
        "ideal": ideal_value(&f, &i),
        "factors": factors_json(&f, &factors),
    });
    if verify {
        let product = multiply_out(&f, &factors)?;
        let refactored = factor_ideal(&f, &product)?;
        out["verification"] = json!({
            "product": ideal_value(&f, &product),
            "product_equals_input": product == i,
            "refactorization_matches": refactored == factors,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug)]
pub enum IdealOperation {
    Norm,
    Product,
    Gcd,
    Quotient,
    Conjugate,
    Contains,
}

pub fn quad_ideal(m: i64, op: IdealOperation, ideal: &str, other: Option<&str>) -> Out {
    let f = quad_field(m)?;
    let i = QuadIdeal::parse(&f, ideal)?;
    let need_other = || {
        other.ok_or_else(|| CliError::Usage("this operation needs --other".into()))
    };
    let other_ideal = || -> Result<QuadIdeal, CliError> { Ok(QuadIdeal::parse(&f, need_other()?)?) };
    let result = match op {
        IdealOperation::Norm => json!(i.norm()?.to_string()),
        IdealOperation::Conjugate => ideal_value(&f, &i.conjugate(&f)?),
        IdealOperation::Product => ideal_value(&f, &i.product(&f, &other_ideal()?)?),
        IdealOperation::Gcd => ideal_value(&f, &i.gcd(&f, &other_ideal()?)?),
        // K with other = ideal * K
        IdealOperation::Quotient => match i.divide_into(&f, &other_ideal()?)? {
            Some(k) => ideal_value(&f, &k),
            None => Value::Null,
        },
        IdealOperation::Contains => json!(i.contains(&f.parse(need_other()?)?)),
    };
    Ok(json!({
        "m": m,
        "op": format!("{op:?}").to_lowercase(),
        "ideal": ideal_value(&f, &i),
        "result": result,
    }))
}

pub fn quad_principal(m: i64, ideal: &str) -> Out {
    let f = quad_field(m)?;
    let i = QuadIdeal::parse(&f, ideal)?;
    let g = is_principal(&f, &i)?;
    Ok(json!({
        "m": m,
        "ideal": ideal_value(&f, &i),
        "principal": g.is_some(),
        "generator": g.map(|g| quad_value(&f, &g)),
    }))
}

pub fn quad_minkowski(m: i64) -> Out {
    let f = quad_field(m)?;
    Ok(serde_json::to_value(minkowski_bound(&f)).expect("plain data serializes"))
}

pub fn quad_classgroup(m: i64, verify: bool) -> Out {
    let f = quad_field(m)?;
    let g = class_group(&f)?;
    let mut out = g.to_json(&f);
    if verify {
        let h = g.h;
        let t = &g.table;
        let identity = (0..h).all(|i| t[0][i] == i);
        let commutative = (0..h).all(|i| (0..h).all(|j| t[i][j] == t[j][i]));
        let associative =
            (0..h).all(|i| (0..h).all(|j| (0..h).all(|k| t[t[i][j]][k] == t[i][t[j][k]])));
        let inverses = (0..h).all(|i| t[i].contains(&0));
        out["verification"] = json!({
            "identity": identity,
            "commutative": commutative,
            "associative": associative,
            "inverses": inverses,
            "inverse_products_principal": verify_inverses(&f, &g)?,
        });
    }
    Ok(out)
}

pub fn units(m: i64, pell: Option<PellKind>, member: Option<&str>, cf: bool) -> Out {
    let f = quad_field(m)?;
    let digits = precision(units::REGULATOR_DIGITS)?;
    let report = units::unit_group_report_with_precision(&f, digits)?;
    let mut out = serde_json::to_value(&report).expect("plain data serializes");
    if let Some(kind) = pell {
        let sol = units::pell_solve(m, kind)?;
        out["pell"] = json!({
            "kind": kind,
            "rhs": kind.rhs(),
            "solution": sol.map(|s| json!({ "x": s.x.to_string(), "y": s.y.to_string() })),
        });
    }
    if let Some(u) = member {
        let u = f.parse(u)?;
        let (k, a) = units::unit_membership(&f, &u)?;
        out["membership"] = json!({ "unit": quad_value(&f, &u), "k": k, "a": a });
    }
    if cf {
        let c = units::continued_fraction_of_omega(&f, units::DEFAULT_PERIOD_CAP)?;
        out["continued_fraction"] = json!({
            "quotients": c.quotients.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "preperiod": c.preperiod,
            "period": c.period,
        });
    }
    Ok(out)
}

pub fn cyclo_split(m: u64, q: u64) -> Out {
    Ok(serde_json::to_value(cyclo::split_prime_cyclotomic(m, q)?).expect("plain data serializes"))
}

pub fn cyclo_info(m: u64) -> Out {
    Ok(serde_json::to_value(cyclo::cyclotomic_descriptor(m)?).expect("plain data serializes"))
}

pub fn cyclo_class_number_one() -> Out {
    let (cyc, imag) = cyclo::class_number_one_lists();
    Ok(json!({ "cyclotomic": cyc, "imaginary_quadratic": imag }))
}

pub fn census(m: i64, k: u64, per_class: bool, csv: Option<&Path>) -> Out {
    let f = quad_field(m)?;
    let result = census::census_check(&f, k, per_class)?;
    if let Some(path) = csv {
        let body = census::checkpoint_csv(&f, k)?;
        std::fs::write(path, body)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(serde_json::to_value(result).expect("plain data serializes"))
}
