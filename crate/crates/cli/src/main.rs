use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

mod commands;
mod render;

use render::Format;

/// Exact algebraic number theory: polynomials, number fields, quadratic
/// rings, units, cyclotomic splitting and ideal counts.
#[derive(Parser, Debug)]
#[command(name = "quadrantal", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polynomials over Z and Q.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Number fields Q(θ) given by a monic minimal polynomial.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Quadratic rings of integers.
    #[command(subcommand)]
    Quad(QuadCmd),
    /// Unit group of a quadratic ring.
    Units(UnitsArgs),
    /// Cyclotomic fields.
    #[command(subcommand)]
    Cyclo(CycloCmd),
    /// Ideal counts by norm against the predicted density.
    Census(CensusArgs),
}

#[derive(Subcommand, Debug)]
enum PolyCmd {
    /// Quotient and remainder of a by b over Q.
    Divrem {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Monic gcd with Bezout cofactors.
    Gcd {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Search for a prime making the Eisenstein criterion apply.
    Eisenstein {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// The cyclotomic polynomial of a prime.
    Cyclotomic {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
enum FieldCmd {
    /// Trace and norm of an element.
    TraceNorm(FieldElementArgs),
    /// Discriminant of the power basis, or of the given elements.
    Discriminant {
        #[arg(long, allow_hyphen_values = true)]
        minpoly: String,
        /// Element of the tuple; repeat once per element.
        #[arg(long = "element", allow_hyphen_values = true)]
        elements: Vec<String>,
    },
    /// Minimal and field polynomial of an element.
    MinpolyOf(FieldElementArgs),
    /// Polynomial whose roots are the sums or products of roots of p and q.
    Compose {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value_t = ComposeOp::Sum)]
        op: ComposeOp,
    },
    /// Least c >= 0 with Q(α, β) = Q(α + cβ).
    PrimitiveElement {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
}

#[derive(Args, Debug)]
struct FieldElementArgs {
    /// Minimal polynomial, as text or a JSON array or descriptor.
    #[arg(long, allow_hyphen_values = true)]
    minpoly: String,
    /// Element as a polynomial in x = θ, or `{"coords": [...]}`.
    #[arg(long, allow_hyphen_values = true)]
    element: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ComposeOp {
    Sum,
    Product,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum IdealOp {
    Norm,
    Product,
    Gcd,
    Quotient,
    Conjugate,
    Contains,
}

#[derive(Subcommand, Debug)]
enum QuadCmd {
    /// Ring of integers of Q(sqrt m).
    Ring(MArgs),
    /// Norm, trace, conjugate and unit test of an element.
    Element {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Decomposition of a rational prime.
    Split {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        q: u64,
    },
    /// Prime ideal factorization.
    Factor {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
        /// Multiply the factors back and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Ideal arithmetic.
    Ideal {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, value_enum)]
        op: IdealOp,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
        /// Second operand (an ideal, or an element for `contains`).
        #[arg(long, allow_hyphen_values = true)]
        other: Option<String>,
    },
    /// Generator of a principal ideal.
    Principal {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
    },
    /// Minkowski bound.
    Minkowski(MArgs),
    /// Ideal class group.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Recheck the group axioms and inverse principality.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Args, Debug)]
struct MArgs {
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PellArg {
    PlusOne,
    MinusOne,
    PlusFour,
    MinusFour,
}

#[derive(Args, Debug)]
struct UnitsArgs {
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    /// Also solve x^2 - m y^2 = N for the chosen N.
    #[arg(long, value_enum)]
    pell: Option<PellArg>,
    /// Decompose this unit as ζ^k λ^a.
    #[arg(long, allow_hyphen_values = true)]
    member: Option<String>,
    /// Also print the continued fraction of w.
    #[arg(long)]
    continued_fraction: bool,
}

#[derive(Subcommand, Debug)]
enum CycloCmd {
    /// Splitting parameters (e, f, g) of q in Q(ζ_m).
    Split {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        q: u64,
    },
    /// Degree and prime-case discriminant of Q(ζ_m).
    Info {
        #[arg(long)]
        m: u64,
    },
    /// Reference lists of class number one fields.
    ClassNumberOne,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    #[arg(long)]
    k: u64,
    /// Count ideals in each class separately.
    #[arg(long)]
    per_class: bool,
    /// Write `k,z_k,ratio` rows at logarithmic checkpoints to this file.
    #[arg(long)]
    csv: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(value) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", render::render(&value, cli.format));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<Value, commands::CliError> {
    use commands::*;
    match command {
        Command::Poly(cmd) => match cmd {
            PolyCmd::Divrem { a, b } => poly_divrem(&a, &b),
            PolyCmd::Gcd { a, b } => poly_gcd(&a, &b),
            PolyCmd::Eisenstein { p } => poly_eisenstein(&p),
            PolyCmd::Cyclotomic { p } => poly_cyclotomic(p),
        },
        Command::Field(cmd) => match cmd {
            FieldCmd::TraceNorm(a) => field_trace_norm(&a.minpoly, &a.element),
            FieldCmd::Discriminant { minpoly, elements } => field_discriminant(&minpoly, &elements),
            FieldCmd::MinpolyOf(a) => field_minpoly_of(&a.minpoly, &a.element),
            FieldCmd::Compose { p, q, op } => field_compose(&p, &q, matches!(op, ComposeOp::Product)),
            FieldCmd::PrimitiveElement { p, q } => field_primitive_element(&p, &q),
        },
        Command::Quad(cmd) => match cmd {
            QuadCmd::Ring(a) => quad_ring(a.m),
            QuadCmd::Element { m, x } => quad_element(m, &x),
            QuadCmd::Split { m, q } => quad_split(m, q),
            QuadCmd::Factor { m, ideal, verify } => quad_factor(m, &ideal, verify),
            QuadCmd::Ideal { m, op, ideal, other } => {
                let op = match op {
                    IdealOp::Norm => IdealOperation::Norm,
                    IdealOp::Product => IdealOperation::Product,
                    IdealOp::Gcd => IdealOperation::Gcd,
                    IdealOp::Quotient => IdealOperation::Quotient,
                    IdealOp::Conjugate => IdealOperation::Conjugate,
                    IdealOp::Contains => IdealOperation::Contains,
                };
                quad_ideal(m, op, &ideal, other.as_deref())
            }
            QuadCmd::Principal { m, ideal } => quad_principal(m, &ideal),
            QuadCmd::Minkowski(a) => quad_minkowski(a.m),
            QuadCmd::Classgroup { m, verify } => quad_classgroup(m, verify),
        },
        Command::Units(a) => {
            let pell = a.pell.map(|p| match p {
                PellArg::PlusOne => quadrantal::units::PellKind::PlusOne,
                PellArg::MinusOne => quadrantal::units::PellKind::MinusOne,
                PellArg::PlusFour => quadrantal::units::PellKind::PlusFour,
                PellArg::MinusFour => quadrantal::units::PellKind::MinusFour,
            });
            units(a.m, pell, a.member.as_deref(), a.continued_fraction)
        }
        Command::Cyclo(cmd) => match cmd {
            CycloCmd::Split { m, q } => cyclo_split(m, q),
            CycloCmd::Info { m } => cyclo_info(m),
            CycloCmd::ClassNumberOne => cyclo_class_number_one(),
        },
        Command::Census(a) => census(a.m, a.k, a.per_class, a.csv.as_deref()),
    }
}
