//! Command-line front-end over `commpoly-core`.
//!
//! Every command produces a [`Report`] holding both a JSON value (with a
//! top-level `"schema": 1`) and a human-readable rendering; `main` picks one.

pub mod parse;
pub mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commpoly_core::chains::{check_conditions, classify_quadratic, ChainSpec, ChainType, ConditionCheck};
use commpoly_core::division::{divrem_chain, divrem_cheb_raw, oracle};
use commpoly_core::exactnum::{euler_phi, parse_rational, PrimeField};
use commpoly_core::factor::{
    cyclotomic, factor_cheb_chain, factor_mono_chain, factored_chain, gcd_closed, psi,
    Factorization, GcdClosed,
};
use commpoly_core::modp::{
    ddf, enumerate_commuting, frobenius_identity, measure_phi_shape, measure_psi_shape,
    predict_phi_shape, predict_psi_shape, squarefree_part, FactorShape,
};
use commpoly_core::{chebyshev, FpPoly, Poly, Rational};

pub use parse::{parse_poly, parse_poly_with_limit, ParseError};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_DEGREE_ENV: &str = "COMMPOLY_MAX_DEGREE";
pub const DEFAULT_MAX_DEGREE: usize = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] commpoly_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("degree {requested} exceeds the limit {limit} (set {MAX_DEGREE_ENV} to raise it)")]
    Limit { requested: u64, limit: usize },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Parse(_) => "parse",
            Self::Core(_) => "invalid_input",
            Self::Usage(_) => "usage",
            Self::Limit { .. } => "limit",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut err = json!({ "kind": self.kind(), "message": self.to_string() });
        if let Self::Parse(p) = self {
            err["offset"] = json!(p.offset);
        }
        json!({ "schema": SCHEMA_VERSION, "error": err })
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Output of one command. `success` is false when a verification failed.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub success: bool,
}

impl Report {
    fn ok(mut json: Value, text: String) -> Self {
        json["schema"] = json!(SCHEMA_VERSION);
        Self {
            json,
            text,
            success: true,
        }
    }

    fn checked(json: Value, text: String, success: bool) -> Self {
        Self {
            success,
            ..Self::ok(json, text)
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "commpoly", version, about = "Exact computations on chains of commuting polynomials")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate or check chain members.
    #[command(subcommand)]
    Chain(ChainCommand),
    /// Closed-form Euclidean division f_n / f_m, compared against long division.
    Div(DivArgs),
    /// Factor an integral chain member at a special value of b.
    #[command(subcommand)]
    Factor(FactorCommand),
    /// Closed-form gcd(f_m, f_n), compared against the Euclidean algorithm.
    Gcd(GcdArgs),
    /// Cyclotomic polynomial Phi_n.
    Cyclo {
        #[arg(long)]
        n: u64,
    },
    /// Minimal polynomial Psi_n of 2cos(2pi/n).
    Psi {
        #[arg(long)]
        n: u64,
    },
    /// Structure modulo a prime.
    #[command(subcommand)]
    Modp(ModpCommand),
    /// Run every verification suite and print a pass/fail table.
    VerifyAll {
        #[arg(long, default_value_t = 20)]
        max_n: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7")]
        primes: Vec<u64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TypeArg {
    #[value(alias = "cheb")]
    Chebyshev,
    #[value(alias = "mono")]
    Monomial,
}

impl From<TypeArg> for ChainType {
    fn from(t: TypeArg) -> Self {
        match t {
            TypeArg::Chebyshev => ChainType::Chebyshev,
            TypeArg::Monomial => ChainType::Monomial,
        }
    }
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long = "type", value_enum)]
    pub ctype: TypeArg,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub a: Rational,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub b: Rational,
}

impl SpecArgs {
    fn spec(&self) -> CliResult<ChainSpec> {
        Ok(ChainSpec::new(self.ctype.into(), self.a.clone(), self.b.clone())?)
    }
}

#[derive(Debug, Subcommand)]
pub enum ChainCommand {
    /// Print f_n.
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: usize,
    },
    /// Check the monic, integral, divisibility and gcd conditions up to max-n.
    Check {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Find the chains whose degree-2 member is the given quadratic.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

#[derive(Debug, Args)]
pub struct DivArgs {
    /// Divide T_n by T_m instead of chain members.
    #[arg(long)]
    pub raw: bool,
    #[arg(long = "type", value_enum, required_unless_present = "raw")]
    pub ctype: Option<TypeArg>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, required_unless_present = "raw")]
    pub a: Option<Rational>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, required_unless_present = "raw")]
    pub b: Option<Rational>,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum FactorCommand {
    /// 2T_n(x/2 + b) - 2b for b in {0, 1, -1, 1/2, -1/2}.
    Cheb {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        b: Rational,
        #[arg(long)]
        n: u64,
    },
    /// (x + b)^n - b for b in {1, -1}.
    Mono {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        b: Rational,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Args)]
pub struct GcdArgs {
    #[arg(long = "type", value_enum)]
    pub ctype: TypeArg,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true, default_value = "1")]
    pub a: Rational,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub b: Rational,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ShapeKind {
    Phi,
    Psi,
}

#[derive(Debug, Subcommand)]
pub enum ModpCommand {
    /// Predicted factor shape of Phi_n or Psi_n mod p.
    Predict {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "phi")]
        kind: ShapeKind,
    },
    /// Measured factor shape by distinct-degree factorization.
    Measure {
        #[arg(long)]
        p: u64,
        #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
        n: Option<u64>,
        #[arg(long, value_enum, default_value = "phi")]
        kind: ShapeKind,
        /// Measure the squarefree part of this polynomial instead.
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Check F_q = F~_q = x^q mod p for q = p^r.
    Frobenius {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
    },
    /// Enumerate all degree-k polynomials over F_p commuting with f.
    Commuting {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        k: usize,
    },
}

/// Reads the degree cap from the environment value, if any.
pub fn max_degree_from(value: Option<&str>) -> CliResult<usize> {
    match value {
        None => Ok(DEFAULT_MAX_DEGREE),
        Some(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| CliError::Usage(format!("{MAX_DEGREE_ENV} must be a positive integer, got {v:?}"))),
    }
}

struct Ctx {
    max_degree: usize,
}

impl Ctx {
    fn cap(&self, requested: u64) -> CliResult<()> {
        if requested > self.max_degree as u64 {
            return Err(CliError::Limit {
                requested,
                limit: self.max_degree,
            });
        }
        Ok(())
    }

    fn parse(&self, text: &str) -> CliResult<Poly<Rational>> {
        Ok(parse_poly_with_limit(text, self.max_degree)?)
    }
}

fn positive(name: &str, v: u64) -> CliResult<()> {
    if v == 0 {
        return Err(CliError::Usage(format!("--{name} must be positive")));
    }
    Ok(())
}

/// Ascending coefficients as exact `"p/q"` strings.
pub fn poly_json(p: &Poly<Rational>) -> Value {
    json!(p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn int_poly_json(p: &Poly<commpoly_core::Integer>) -> Value {
    json!(p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn fp_json(p: &FpPoly) -> Value {
    json!(p.coeffs())
}

fn spec_json(s: &ChainSpec) -> Value {
    serde_json::to_value(s).expect("chain spec serializes")
}

fn shape_json(s: &FactorShape) -> Value {
    json!(s
        .entries
        .iter()
        .map(|&(d, c)| json!({ "degree": d, "count": c }))
        .collect::<Vec<_>>())
}

pub fn run(cli: &Cli, max_degree: usize) -> CliResult<Report> {
    let ctx = Ctx { max_degree };
    match &cli.command {
        Command::Chain(c) => chain(&ctx, c),
        Command::Div(d) => div(&ctx, d),
        Command::Factor(f) => factor(&ctx, f),
        Command::Gcd(g) => gcd(&ctx, g),
        Command::Cyclo { n } => cyclo(&ctx, *n),
        Command::Psi { n } => psi_cmd(&ctx, *n),
        Command::Modp(m) => modp(&ctx, m),
        Command::VerifyAll { max_n, primes } => {
            ctx.cap(*max_n as u64)?;
            Ok(verify::verify_all(*max_n, primes, max_degree)?)
        }
    }
}

fn condition_json(c: &ConditionCheck) -> Value {
    json!({
        "holds": c.holds,
        "first_failure": c.first_failure(),
        "failures": c.failures,
    })
}

fn condition_text(c: &ConditionCheck) -> String {
    if c.holds {
        return "holds".into();
    }
    const SHOWN: usize = 8;
    let listed: Vec<String> = c
        .failures
        .iter()
        .take(SHOWN)
        .map(|(m, n)| format!("({m},{n})"))
        .collect();
    let more = c.failures.len().saturating_sub(SHOWN);
    let tail = if more > 0 { format!(" and {more} more") } else { String::new() };
    format!("fails at (m,n)={}{tail}", listed.join(", "))
}

fn chain(ctx: &Ctx, c: &ChainCommand) -> CliResult<Report> {
    match c {
        ChainCommand::Gen { spec, n } => {
            ctx.cap(*n as u64)?;
            let spec = spec.spec()?;
            let f = spec.member(*n)?;
            Ok(Report::ok(
                json!({ "spec": spec_json(&spec), "n": n, "poly": poly_json(&f), "pretty": f.to_string() }),
                format!("f_{n} = {f}"),
            ))
        }
        ChainCommand::Check { spec, max_n } => {
            ctx.cap(*max_n as u64)?;
            let spec = spec.spec()?;
            let r = check_conditions(&spec, *max_n)?;
            let yes_no = |b: bool| if b { "holds" } else { "fails" };
            let text = [
                format!("chain {spec}, 1 <= m < n <= {max_n}"),
                format!("Condition (i)   monic:        {}", yes_no(r.monic)),
                format!("Condition (ii)  integral:     {}", yes_no(r.integral)),
                format!("Condition (iii) divisibility: {}", condition_text(&r.divisibility)),
                format!("Condition (iv)  gcd:          {}", condition_text(&r.gcd)),
                format!(
                    "closed-form tables agree: divisibility {}, gcd {}",
                    r.divisibility_predicted == r.divisibility,
                    r.gcd_predicted == r.gcd
                ),
            ]
            .join("\n");
            Ok(Report::ok(
                json!({
                    "spec": spec_json(&spec),
                    "max_n": max_n,
                    "conditions": {
                        "i": { "holds": r.monic },
                        "ii": { "holds": r.integral },
                        "iii": condition_json(&r.divisibility),
                        "iv": condition_json(&r.gcd),
                    },
                    "predicted": {
                        "iii": condition_json(&r.divisibility_predicted),
                        "iv": condition_json(&r.gcd_predicted),
                    },
                    "all_hold": r.all_hold(),
                }),
                text,
            ))
        }
        ChainCommand::Classify { poly } => {
            let f = ctx.parse(poly)?;
            let found = classify_quadratic(&f)?;
            let text = if found.is_empty() {
                format!("{f} is not the degree-2 member of any chain over Q")
            } else {
                found
                    .iter()
                    .map(|s| format!("{f} = f_2 of {s}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(Report::ok(
                json!({ "poly": poly_json(&f), "chains": found.iter().map(spec_json).collect::<Vec<_>>() }),
                text,
            ))
        }
    }
}

fn div(ctx: &Ctx, d: &DivArgs) -> CliResult<Report> {
    ctx.cap(d.n as u64)?;
    let (closed, dividend, divisor, what) = if d.raw {
        let t = |k| chebyshev::cheb(chebyshev::ChebKind::First, k);
        (divrem_cheb_raw(d.m, d.n)?, t(d.n), t(d.m), format!("T_{} / T_{}", d.n, d.m))
    } else {
        let (Some(ctype), Some(a), Some(b)) = (d.ctype, d.a.clone(), d.b.clone()) else {
            return Err(CliError::Usage("--type, --a and --b are required without --raw".into()));
        };
        let spec = ChainSpec::new(ctype.into(), a, b)?;
        let r = divrem_chain(&spec, d.m, d.n)?;
        (r, spec.member(d.n)?, spec.member(d.m)?, format!("f_{} / f_{} in {spec}", d.n, d.m))
    };
    let reference = oracle(&dividend, &divisor)?;
    let matches = closed.agrees_with(&reference);
    Ok(Report::checked(
        json!({
            "quot": poly_json(&closed.quot),
            "rem": poly_json(&closed.rem),
            "matches_oracle": matches,
        }),
        format!(
            "{what}\nquotient:  {}\nremainder: {}\nmatches long division: {matches}",
            closed.quot, closed.rem
        ),
        matches,
    ))
}

fn factorization_report(f: &Factorization, target: &Poly<Rational>, what: String) -> Report {
    let verified = f.certifies(target);
    let factors: Vec<Value> = f
        .factors
        .iter()
        .map(|x| json!({ "poly": int_poly_json(&x.poly), "mult": x.mult, "label": x.label }))
        .collect();
    let product: Vec<String> = f
        .factors
        .iter()
        .map(|x| match x.mult {
            1 => format!("({})", x.poly),
            m => format!("({})^{m}", x.poly),
        })
        .collect();
    let labels: Vec<String> = f
        .factors
        .iter()
        .map(|x| match x.mult {
            1 => x.label.clone(),
            m => format!("{}^{m}", x.label),
        })
        .collect();
    let text = format!(
        "{what} = {target}\n  = {}\n  = {}\nverified: {verified}",
        labels.join(" * "),
        product.join("")
    );
    Report::checked(
        json!({ "unit": f.unit.to_string(), "factors": factors, "verified": verified }),
        text,
        verified,
    )
}

fn factor(ctx: &Ctx, f: &FactorCommand) -> CliResult<Report> {
    let (ctype, b, n) = match f {
        FactorCommand::Cheb { b, n } => (ChainType::Chebyshev, b, *n),
        FactorCommand::Mono { b, n } => (ChainType::Monomial, b, *n),
    };
    positive("n", n)?;
    ctx.cap(n)?;
    let fac = match ctype {
        ChainType::Chebyshev => factor_cheb_chain(b, n)?,
        ChainType::Monomial => factor_mono_chain(b, n)?,
    };
    let spec = factored_chain(ctype, b)?;
    let target = spec.member(n as usize)?;
    Ok(factorization_report(&fac, &target, format!("f_{n} of {spec}")))
}

fn gcd(ctx: &Ctx, g: &GcdArgs) -> CliResult<Report> {
    ctx.cap(g.m.max(g.n) as u64)?;
    let spec = ChainSpec::new(g.ctype.into(), g.a.clone(), g.b.clone())?;
    let closed = gcd_closed(spec.ctype(), spec.b(), g.m, g.n)?;
    let poly = closed.to_poly(&spec)?;
    let reference = spec.member(g.m)?.gcd_monic(&spec.member(g.n)?)?;
    let matches = poly == reference;
    let (verdict, d) = match closed {
        GcdClosed::Member(d) => ("member", Some(d)),
        GcdClosed::Coprime => ("coprime", None),
    };
    let text = match d {
        Some(d) => format!("gcd(f_{}, f_{}) = f_{d} (monic: {poly})", g.m, g.n),
        None => format!("f_{} and f_{} are coprime", g.m, g.n),
    };
    Ok(Report::checked(
        json!({
            "spec": spec_json(&spec),
            "closed": verdict,
            "d": d,
            "gcd": poly_json(&poly),
            "matches_oracle": matches,
        }),
        format!("{text}\nmatches Euclidean algorithm: {matches}"),
        matches,
    ))
}

fn cyclo(ctx: &Ctx, n: u64) -> CliResult<Report> {
    positive("n", n)?;
    ctx.cap(euler_phi(n)?)?;
    let p = cyclotomic(n)?;
    Ok(Report::ok(
        json!({ "n": n, "poly": int_poly_json(&p), "pretty": p.to_string() }),
        format!("Phi_{n} = {p}"),
    ))
}

fn psi_cmd(ctx: &Ctx, n: u64) -> CliResult<Report> {
    positive("n", n)?;
    ctx.cap(euler_phi(n)? / 2)?;
    let p = psi(n)?;
    let root = 2.0 * (2.0 * std::f64::consts::PI / n as f64).cos();
    let residual = p.eval_numeric(root).abs();
    Ok(Report::ok(
        json!({
            "n": n,
            "poly": int_poly_json(&p.poly),
            "dickson": p.dickson.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "pretty": p.poly.to_string(),
            "residual_at_root": residual,
        }),
        format!("Psi_{n} = {}\n|Psi_{n}(2cos(2pi/{n}))| = {residual:.3e}", p.poly),
    ))
}

fn modp(ctx: &Ctx, m: &ModpCommand) -> CliResult<Report> {
    match m {
        ModpCommand::Predict { p, n, kind } => {
            let shape = match kind {
                ShapeKind::Phi => predict_phi_shape(*p, *n)?,
                ShapeKind::Psi => predict_psi_shape(*p, *n)?,
            };
            let name = kind_name(*kind);
            Ok(Report::ok(
                json!({ "p": p, "n": n, "kind": name, "shape": shape_json(&shape), "source": "predicted" }),
                format!("{name}_{n} mod {p}: {shape} (predicted)"),
            ))
        }
        ModpCommand::Measure { p, n, kind, poly } => match (n, poly) {
            (Some(n), _) => {
                positive("n", *n)?;
                ctx.cap(euler_phi(*n)?)?;
                let shape = match kind {
                    ShapeKind::Phi => measure_phi_shape(*p, *n)?,
                    ShapeKind::Psi => measure_psi_shape(*p, *n)?,
                };
                let name = kind_name(*kind);
                Ok(Report::ok(
                    json!({ "p": p, "n": n, "kind": name, "shape": shape_json(&shape), "source": "measured" }),
                    format!("{name}_{n} mod {p}: {shape} (measured)"),
                ))
            }
            (None, Some(text)) => {
                let field = PrimeField::new(*p)?;
                let f = ctx.parse(text)?.reduce_mod_p(field)?;
                let rad = squarefree_part(&f)?;
                let shape = ddf(&rad)?;
                Ok(Report::ok(
                    json!({
                        "p": p,
                        "poly": fp_json(&f),
                        "squarefree_part": fp_json(&rad),
                        "shape": shape_json(&shape),
                        "source": "measured",
                    }),
                    format!("{f} mod {p}: squarefree part {rad}, shape {shape}"),
                ))
            }
            (None, None) => Err(CliError::Usage("one of --n or --poly is required".into())),
        },
        ModpCommand::Frobenius { p, r } => {
            let q = p.checked_pow(*r).unwrap_or(u64::MAX);
            ctx.cap(q)?;
            let holds = frobenius_identity(*p, *r)?;
            Ok(Report::checked(
                json!({ "p": p, "r": r, "holds": holds }),
                format!("F_{q} = F~_{q} = x^{q} mod {p}: {holds}"),
                holds,
            ))
        }
        ModpCommand::Commuting { p, f, k } => {
            ctx.cap(*k as u64)?;
            let field = PrimeField::new(*p)?;
            let f = ctx.parse(f)?.reduce_mod_p(field)?;
            let found = enumerate_commuting(&f, *k)?;
            let text = std::iter::once(format!(
                "{} polynomial(s) of degree {k} over F_{p} commute with {f}",
                found.len()
            ))
            .chain(found.iter().map(|g| format!("  {g}")))
            .collect::<Vec<_>>()
            .join("\n");
            Ok(Report::ok(
                json!({
                    "p": p,
                    "f": fp_json(&f),
                    "k": k,
                    "count": found.len(),
                    "polys": found.iter().map(fp_json).collect::<Vec<_>>(),
                    "pretty": found.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }),
                text,
            ))
        }
    }
}

fn kind_name(k: ShapeKind) -> &'static str {
    match k {
        ShapeKind::Phi => "Phi",
        ShapeKind::Psi => "Psi",
    }
}
