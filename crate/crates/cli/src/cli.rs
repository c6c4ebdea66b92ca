use crate::config::{self, Overrides, RunConfig};
use crate::dsl::{self, DomainFile};
use crate::output::{BoundsOutput, GroebnerOutput, RunOutput};
use crate::render;
use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;
use subelliptic_core::bounds::{self, GradedMonomialRing, MatsusakaInput};
use subelliptic_core::finite_type::type_report;
use subelliptic_core::groebner::{is_member, is_radical_member, normal_form};
use subelliptic_core::kohn::{self, Outcome};
use subelliptic_core::{rational, Ideal, MonomialOrder, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;
pub const EXIT_REPLAY_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "subelliptic", version, about = "Kohn's multiplier procedure, finite type, and effective bounds")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Print every level's generators, not just the witness derivation.
    #[arg(long, global = true)]
    trace: bool,
    /// Record wall-clock time in the output (JSON reruns are then no longer byte-identical).
    #[arg(long, global = true)]
    timing: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    max_level: Option<u32>,
    #[arg(long, global = true)]
    degree_cap: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the multiplier procedure and print the certificate.
    Kohn { file: PathBuf },
    /// Finite-type order, type estimate and the relations between them.
    FiniteType { file: PathBuf },
    /// Groebner queries on the ideal generated by the h_j.
    Groebner {
        #[command(subcommand)]
        query: GroebnerQuery,
    },
    /// Effective bounds.
    Bounds {
        #[command(subcommand)]
        bound: BoundQuery,
    },
    /// Audit a `--json` output of `kohn` against its domain file.
    Replay { output: PathBuf, domain: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
}

#[derive(Debug, Args)]
struct GroebnerTarget {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "grevlex")]
    order: OrderArg,
}

#[derive(Debug, Args)]
struct PolyTarget {
    #[command(flatten)]
    target: GroebnerTarget,
    /// Polynomial over the file's variables.
    #[arg(long)]
    poly: String,
}

#[derive(Debug, Subcommand)]
enum GroebnerQuery {
    /// Reduced Groebner basis.
    Gb(GroebnerTarget),
    /// Normal form of --poly.
    Nf(PolyTarget),
    /// Ideal membership of --poly.
    Member(PolyTarget),
    /// Radical membership of --poly.
    RadicalMember(PolyTarget),
}

#[derive(Debug, Subcommand)]
enum BoundQuery {
    /// Very-ampleness bound from intersection numbers.
    Matsusaka {
        #[arg(long)]
        n: u32,
        /// L^{n-1} . K~_X
        #[arg(long, allow_hyphen_values = true)]
        lk: i64,
        /// L^n
        #[arg(long)]
        ln: i64,
    },
    /// Certified enclosure of 8 pi e sqrt(2 + 1/e).
    Ot {
        /// Target width, as `p/q` or a decimal such as `1e-6`.
        #[arg(long, default_value = "1e-6")]
        precision: String,
    },
    /// Exponents of the division theorem.
    Skoda {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Number of generators before padding.
        #[arg(long)]
        p: Option<u32>,
    },
    /// Generation degree of a graded monomial model.
    Generation {
        /// Numerical semigroup generators, e.g. `2,3`.
        #[arg(long, value_delimiter = ',', group = "model")]
        semigroup: Option<Vec<u32>>,
        /// Polynomial ring in this many variables.
        #[arg(long, group = "model")]
        polynomial_ring: Option<usize>,
        /// Veronese subring `VARS,DEGREE`.
        #[arg(long, value_delimiter = ',', group = "model")]
        veronese: Option<Vec<u32>>,
        #[arg(long, default_value_t = 12)]
        truncation: usize,
        /// Check against (n + 2) a + b - 1; requires --a and --b too.
        #[arg(long, requires_all = ["a", "b"])]
        n: Option<u64>,
        #[arg(long, requires = "n")]
        a: Option<u64>,
        #[arg(long, requires = "n")]
        b: Option<u64>,
    },
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn core(e: subelliptic_core::Error) -> Failure {
    usage(e.to_string())
}

pub struct Context<'a> {
    pub env: &'a dyn Fn(&str) -> Option<String>,
    pub out: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run_cli<I, T>(args: I, env: &dyn Fn(&str) -> Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let mut ctx = Context { env, out };
    match execute(&cli, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_domain(path: &Path) -> Result<DomainFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    dsl::parse_domain(&text).map_err(|e| usage(format!("{}:{e}", path.display())))
}

pub fn input_digest(file: &DomainFile) -> String {
    hex::encode(Sha256::digest(dsl::print_domain(file).as_bytes()))
}

impl Cli {
    fn overrides(&self) -> Overrides {
        Overrides { seed: self.seed, max_level: self.max_level, degree_cap: self.degree_cap }
    }

    fn resolve(&self, file: &DomainFile, env: &dyn Fn(&str) -> Option<String>) -> Result<RunConfig, Failure> {
        config::resolve(&file.config, env, &self.overrides()).map_err(usage)
    }

    fn emit(&self, ctx: &mut Context, doc: &RunOutput, human: impl FnOnce() -> String) -> Result<(), Failure> {
        let text = if self.json {
            let mut s = serde_json::to_string_pretty(doc).expect("output serializes");
            s.push('\n');
            s
        } else {
            human()
        };
        ctx.out.write_all(text.as_bytes()).map_err(|e| usage(e.to_string()))
    }
}

fn domain_output(command: &str, file: &DomainFile, config: &RunConfig) -> RunOutput {
    let mut doc = RunOutput::new(command);
    doc.input_digest = Some(input_digest(file));
    doc.vars = Some(file.vars.clone());
    doc.config = Some(config.clone());
    doc
}

fn execute(cli: &Cli, ctx: &mut Context) -> Result<i32, Failure> {
    let started = Instant::now();
    let elapsed = |doc: &mut RunOutput| {
        if cli.timing {
            doc.timing_ms = Some(started.elapsed().as_millis() as u64);
        }
    };
    match &cli.command {
        Command::Kohn { file } => {
            let file = read_domain(file)?;
            let config = cli.resolve(&file, ctx.env)?;
            let cert = kohn::run(&file.domain(), &config.kohn).map_err(core)?;
            let code = match cert.outcome {
                Outcome::Subelliptic { .. } => EXIT_OK,
                Outcome::Exhausted { .. } => EXIT_EXHAUSTED,
            };
            let mut doc = domain_output("kohn", &file, &config);
            doc.certificate = Some(cert);
            elapsed(&mut doc);
            let cert = doc.certificate.as_ref().unwrap();
            cli.emit(ctx, &doc, || render::certificate(cert, &file.vars, cli.trace))?;
            Ok(code)
        }
        Command::FiniteType { file } => {
            let file = read_domain(file)?;
            let config = cli.resolve(&file, ctx.env)?;
            let report = type_report(&file.domain(), &config.finite_type).map_err(core)?;
            let mut doc = domain_output("finite-type", &file, &config);
            doc.type_report = Some(report);
            elapsed(&mut doc);
            let report = doc.type_report.as_ref().unwrap();
            cli.emit(ctx, &doc, || render::type_report(report, &file.vars))?;
            Ok(EXIT_OK)
        }
        Command::Groebner { query } => groebner(cli, ctx, query, started),
        Command::Bounds { bound } => {
            let result = evaluate_bound(bound)?;
            let mut doc = RunOutput::new("bounds");
            doc.bounds = Some(result);
            elapsed(&mut doc);
            let b = doc.bounds.as_ref().unwrap();
            cli.emit(ctx, &doc, || render::bounds(b))?;
            Ok(EXIT_OK)
        }
        Command::Replay { output, domain } => replay(cli, ctx, output, domain),
    }
}

fn groebner(cli: &Cli, ctx: &mut Context, query: &GroebnerQuery, started: Instant) -> Result<i32, Failure> {
    let (name, target, poly_text) = match query {
        GroebnerQuery::Gb(t) => ("gb", t, None),
        GroebnerQuery::Nf(p) => ("nf", &p.target, Some(&p.poly)),
        GroebnerQuery::Member(p) => ("member", &p.target, Some(&p.poly)),
        GroebnerQuery::RadicalMember(p) => ("radical-member", &p.target, Some(&p.poly)),
    };
    let file = read_domain(&target.file)?;
    let config = cli.resolve(&file, ctx.env)?;
    let (order, order_name) = match target.order {
        OrderArg::Grevlex => (MonomialOrder::GrevLex, "grevlex"),
        OrderArg::Lex => (MonomialOrder::Lex, "lex"),
    };
    let ideal = Ideal::new(file.vars.len(), file.h.clone())
        .map_err(core)?
        .with_order(order)
        .with_degree_cap(config.kohn.degree_cap);
    let names = &file.vars;
    let show = |p: &subelliptic_core::Polynomial| p.display_with(names).to_string();
    let basis = ideal.groebner_basis().map_err(core)?.polynomials().iter().map(show).collect();
    let mut result = GroebnerOutput {
        query: name.to_string(),
        order: order_name.to_string(),
        basis,
        poly: None,
        normal_form: None,
        member: None,
    };
    if let Some(text) = poly_text {
        let p = dsl::parse_polynomial(text, names).map_err(|e| usage(format!("--poly {e}")))?;
        result.poly = Some(show(&p));
        match name {
            "nf" => result.normal_form = Some(show(&normal_form(&p, &ideal).map_err(core)?)),
            "member" => result.member = Some(is_member(&p, &ideal).map_err(core)?),
            _ => result.member = Some(is_radical_member(&p, &ideal).map_err(core)?),
        }
    }
    let mut doc = domain_output("groebner", &file, &config);
    doc.groebner = Some(result);
    if cli.timing {
        doc.timing_ms = Some(started.elapsed().as_millis() as u64);
    }
    let g = doc.groebner.as_ref().unwrap();
    cli.emit(ctx, &doc, || render::groebner(g))?;
    Ok(EXIT_OK)
}

/// Accepts `p/q`, integers, and decimals with an optional exponent (`1e-6`, `0.01`).
pub fn parse_rational_arg(text: &str) -> Option<Rational> {
    if let Some(r) = rational::parse(text) {
        return Some(r);
    }
    let t = text.trim().to_ascii_lowercase();
    let (mantissa, exp) = match t.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i32>().ok()?),
        None => (t.clone(), 0),
    };
    let (int_part, frac) = mantissa.split_once('.').unwrap_or((&mantissa, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac}");
    let numer = rational::parse(&digits)?;
    let shift = exp - frac.len() as i32;
    let ten = rational::int(10);
    let scale = (0..shift.unsigned_abs()).fold(rational::int(1), |acc, _| acc * &ten);
    Some(if shift >= 0 { numer * scale } else { numer / scale })
}

fn evaluate_bound(q: &BoundQuery) -> Result<BoundsOutput, Failure> {
    Ok(match q {
        BoundQuery::Matsusaka { n, lk, ln } => {
            let input = MatsusakaInput { n: *n, lk: (*lk).into(), ln: (*ln).into() };
            BoundsOutput::Matsusaka(bounds::matsusaka_bound(&input).map_err(core)?)
        }
        BoundQuery::Ot { precision } => {
            let p = parse_rational_arg(precision).ok_or_else(|| usage(format!("invalid precision `{precision}`")))?;
            let enc = bounds::ot_constant(&p).map_err(core)?;
            let digits = decimal_digits(&p);
            BoundsOutput::Ot {
                precision: rational::to_string(&p),
                decimal: bounds::to_decimal(&enc.midpoint(), digits),
                width: rational::to_string(&enc.width()),
                interval: [rational::to_string(&enc.lower), rational::to_string(&enc.upper)],
            }
        }
        BoundQuery::Skoda { n, k, p } => BoundsOutput::Skoda(bounds::skoda_exponents(*n, *p, *k).map_err(core)?),
        BoundQuery::Generation { semigroup, polynomial_ring, veronese, truncation, n, a, b } => {
            let (model, ring) = match (semigroup, polynomial_ring, veronese) {
                (Some(g), None, None) => (
                    format!("semigroup <{}>", g.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
                    GradedMonomialRing::numerical_semigroup(g, *truncation),
                ),
                (None, Some(v), None) => {
                    (format!("polynomial ring in {v} variables"), GradedMonomialRing::polynomial_ring(*v, *truncation))
                }
                (None, None, Some(vd)) if vd.len() == 2 => (
                    format!("degree-{} Veronese in {} variables", vd[1], vd[0]),
                    GradedMonomialRing::veronese(vd[0] as usize, vd[1], *truncation),
                ),
                (None, None, Some(_)) => return Err(usage("--veronese takes VARS,DEGREE")),
                _ => return Err(usage("give exactly one of --semigroup, --polynomial-ring, --veronese")),
            };
            let ring = ring.map_err(core)?;
            let cert = bounds::generation_degree(&ring).map_err(core)?;
            let bound = match (n, a, b) {
                (Some(n), Some(a), Some(b)) => Some(bounds::generation_bound(*n, *a, *b).map_err(core)?),
                _ => None,
            };
            BoundsOutput::Generation {
                model,
                degree: cert.degree,
                truncation: cert.truncation,
                holds: bound.map(|b| cert.degree as u64 <= b),
                bound,
                factorizations: cert.factorizations,
            }
        }
    })
}

/// Fractional digits needed to resolve the requested precision.
fn decimal_digits(precision: &Rational) -> usize {
    let mut digits = 1;
    let mut scale = rational::int(10);
    while precision * &scale < rational::int(1) && digits < 60 {
        scale *= rational::int(10);
        digits += 1;
    }
    digits
}

fn replay(cli: &Cli, ctx: &mut Context, output: &Path, domain: &Path) -> Result<i32, Failure> {
    let text = std::fs::read_to_string(output).map_err(|e| usage(format!("{}: {e}", output.display())))?;
    let doc: RunOutput =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: not a run output: {e}", output.display())))?;
    let file = read_domain(domain)?;
    let Some(cert) = &doc.certificate else {
        return Err(usage(format!("{}: no certificate to replay", output.display())));
    };
    let mut problems = Vec::new();
    if doc.input_digest.as_deref() != Some(input_digest(&file).as_str()) {
        problems.push("input digest does not match the domain file".to_string());
    }
    if let Some(config) = &doc.config {
        if config.kohn != cert.config {
            problems.push("echoed config differs from the certificate's".to_string());
        }
    }
    if let Err(e) = kohn::verify(cert, &file.domain()) {
        problems.push(e.to_string());
    }
    let verdict = if problems.is_empty() { "ok" } else { "mismatch" };
    let report = if cli.json {
        let v = serde_json::json!({ "replay": verdict, "problems": problems });
        format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
    } else if problems.is_empty() {
        "replay: ok\n".to_string()
    } else {
        format!("replay: mismatch\n{}", problems.iter().map(|p| format!("  {p}\n")).collect::<String>())
    };
    ctx.out.write_all(report.as_bytes()).map_err(|e| usage(e.to_string()))?;
    Ok(if problems.is_empty() { EXIT_OK } else { EXIT_REPLAY_MISMATCH })
}

#[cfg(test)]
mod tests {
    use super::*;
    use subelliptic_core::rational::rat;

    #[test]
    fn rational_arguments() {
        assert_eq!(parse_rational_arg("1e-6"), Some(rat(1, 1_000_000)));
        assert_eq!(parse_rational_arg("0.01"), Some(rat(1, 100)));
        assert_eq!(parse_rational_arg("3/4"), Some(rat(3, 4)));
        assert_eq!(parse_rational_arg("2.5e1"), Some(rat(25, 1)));
        assert_eq!(parse_rational_arg("abc"), None);
    }

    #[test]
    fn digits_follow_precision() {
        assert_eq!(decimal_digits(&rat(1, 100)), 2);
        assert_eq!(decimal_digits(&rat(1, 1_000_000)), 6);
    }
}
