//! `g2daha`: verify fixed-locus claims, check mapping-class-group relations,
//! and compute Gröbner bases from the command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 input error, 3 resource limit.

use clap::{Args, Parser, Subcommand, ValueEnum};
use g2daha::daha::{relation_set, ParameterSpec};
use g2daha::fixlocus::{
    emit_report, equivalence_report, load_registry, verify_all, Fiber, Registry, ReportFormat, RunReport, Selection,
    VerifyConfig,
};
use g2daha::groebner::{buchberger, ideal_dimension, GbError, GbLimits};
use g2daha::mcg::{check_variety_preserved, compose_word, verify_on_samples, verify_symbolic, ActionReport, TwistWord};
use g2daha::poly::{parse_rational_poly, ParamMode, SubstLimits, TermOrder, Var};
use g2daha::scalar::{parse_rational, Rational};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(name = "g2daha", version, about = "Classical genus-two DAHA fixed-locus toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every registered component at t = 1 and at the t-deformed sample.
    VerifyAll(VerifyArgs),
    /// Compare the actions of two twist words, or check one word preserves the variety.
    Action(ActionArgs),
    /// Reduced Gröbner basis and dimension of an ideal read from a file (one expression per line).
    Gb(GbArgs),
    /// Print the 19 relations.
    Relations {
        /// Value of u = t^(1/12); omit to keep u symbolic.
        #[arg(long)]
        u0: Option<String>,
    },
    /// Print the substitution map of a twist word.
    Map {
        /// Comma-separated atoms, e.g. `d1,d2i,I`.
        word: String,
    },
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 100_000)]
    max_pairs: usize,
    #[arg(long, default_value_t = 64)]
    max_degree: u32,
    /// Per-basis wall-clock limit in seconds.
    #[arg(long, default_value_t = 600)]
    timeout: u64,
}

impl BudgetArgs {
    fn limits(&self) -> GbLimits {
        GbLimits {
            max_pairs: self.max_pairs,
            max_degree: self.max_degree,
            timeout: Duration::from_secs(self.timeout),
            ..GbLimits::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Md,
    Csv,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Md => ReportFormat::Markdown,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FiberArg {
    T1,
    Tdef,
}

#[derive(Args)]
struct VerifyArgs {
    /// Registry JSON; defaults to the bundled registry.
    #[arg(long)]
    registry: Option<PathBuf>,
    /// Sample value of u = t^(1/12) for t-deformed components.
    #[arg(long, default_value = "3/2")]
    u0: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value = "md")]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    subgroup: Option<String>,
    #[arg(long, value_enum)]
    fiber: Option<FiberArg>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Numeric,
    Symbolic,
}

#[derive(Args)]
struct ActionArgs {
    #[arg(long)]
    lhs: String,
    /// Word to compare against; without it, checks that `lhs` maps the variety to itself.
    #[arg(long)]
    rhs: Option<String>,
    #[arg(long, value_enum, default_value = "numeric")]
    mode: ModeArg,
    #[arg(long, default_value_t = 5)]
    samples: usize,
    #[arg(long, default_value = "1")]
    u0: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value = "md")]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Degrevlex,
    Lex,
}

#[derive(Args)]
struct GbArgs {
    /// File with one generator per line; `#` starts a comment.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "degrevlex")]
    order: OrderArg,
    /// Value of u = t^(1/12) substituted into the generators.
    #[arg(long, default_value = "1")]
    u0: String,
    #[command(flatten)]
    budget: BudgetArgs,
}

enum Failure {
    Input(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Resource(_) => 3,
        }
    }
}

fn input(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

fn parse_u0(text: &str) -> Result<Rational, Failure> {
    let u0 = parse_rational(text).ok_or_else(|| input(format!("--u0: `{text}` is not a rational p/q")))?;
    if u0 == Rational::from_integer(0.into()) {
        return Err(input("--u0 must be nonzero"));
    }
    Ok(u0)
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(input(format!("--tol must be positive, got {tol}")))
    }
}

fn parse_word(text: &str) -> Result<TwistWord, Failure> {
    text.parse().map_err(input)
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify_all_cmd(a: &VerifyArgs) -> Result<u8, Failure> {
    check_tol(a.tol)?;
    let reg = match &a.registry {
        Some(p) => load_registry(p).map_err(input)?,
        None => Registry::shipped(),
    };
    let cfg = VerifyConfig {
        u0_tdef: parse_u0(&a.u0)?,
        limits: a.budget.limits(),
        seed: a.seed,
        tol: a.tol,
        ..VerifyConfig::default()
    };
    let sel = Selection {
        subgroup: a.subgroup.clone(),
        fiber: a.fiber.map(|f| match f {
            FiberArg::T1 => Fiber::T1,
            FiberArg::Tdef => Fiber::Tdef,
        }),
    };
    let comps = verify_all(&reg, &sel, &cfg).map_err(input)?;
    let eqs = if sel.subgroup.is_none() {
        equivalence_report(&reg, &cfg)
    } else {
        Vec::new()
    };
    let rep = RunReport::new(&cfg, comps, eqs);
    write_out(a.out.as_ref(), &emit_report(&rep, a.format.into()).map_err(input)?)?;
    let s = rep.summary;
    eprintln!(
        "{} components: {} PASS, {} FAIL, {} NOT-VERIFIED, {} SKIPPED",
        s.total, s.pass, s.fail, s.not_verified, s.skipped
    );
    if s.not_verified > 0 {
        eprintln!("warning: {} components hit a resource budget", s.not_verified);
    }
    if s.fail > 0 {
        return Ok(1);
    }
    let attempted = s.total - s.skipped;
    if attempted > 0 && s.not_verified == attempted {
        return Err(Failure::Resource("every component hit a resource budget".into()));
    }
    Ok(0)
}

fn action_table(r: &ActionReport) -> String {
    let mut s = format!(
        "lhs: {}\nrhs: {}\nmode: {}  u0: {}  tol: {:e}\n",
        r.lhs,
        r.rhs.as_deref().unwrap_or("(variety preservation)"),
        r.mode,
        r.u0,
        r.tol
    );
    if !r.samples.is_empty() {
        s += "| seed | coordinate diff | lhs image residual | rhs image residual |\n|---|---|---|---|\n";
        for c in &r.samples {
            let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
            s += &format!(
                "| {} | {} | {:.3e} | {} |\n",
                c.seed,
                opt(c.coord_diff),
                c.lhs_image_residual,
                opt(c.rhs_image_residual)
            );
        }
    }
    s += &format!("verdict: {:?}\n", r.verdict).to_uppercase();
    s
}

fn action_cmd(a: &ActionArgs) -> Result<u8, Failure> {
    let lhs = parse_word(&a.lhs)?;
    let rhs = a.rhs.as_deref().map(parse_word).transpose()?;
    let rep = match a.mode {
        ModeArg::Symbolic => {
            let rhs = rhs.ok_or_else(|| input("--mode symbolic needs --rhs"))?;
            verify_symbolic(&lhs, &rhs, &SubstLimits::default()).map_err(|e| Failure::Resource(e.to_string()))?
        }
        ModeArg::Numeric => {
            check_tol(a.tol)?;
            let u0 = parse_u0(&a.u0)?;
            let res = match &rhs {
                Some(r) => verify_on_samples(&lhs, r, a.samples, &u0, a.seed, a.tol),
                None => check_variety_preserved(&lhs, a.samples, &u0, a.seed, a.tol),
            };
            res.map_err(|e| match e {
                g2daha::mcg::McgError::NoConvergence { .. } => Failure::Resource(e.to_string()),
                _ => input(e),
            })?
        }
    };
    match a.format {
        FormatArg::Json => println!("{}", serde_json::to_string_pretty(&rep).map_err(input)?),
        _ => print!("{}", action_table(&rep)),
    }
    Ok(if rep.passed() { 0 } else { 1 })
}

fn gb_cmd(a: &GbArgs) -> Result<u8, Failure> {
    let text = std::fs::read_to_string(&a.input).map_err(|e| input(format!("{}: {e}", a.input.display())))?;
    let u0 = parse_u0(&a.u0)?;
    let ord = match a.order {
        OrderArg::Degrevlex => TermOrder::degrevlex(),
        OrderArg::Lex => TermOrder::lex(),
    };
    let mut gens = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let expr = line.split('#').next().unwrap_or("").trim();
        if expr.is_empty() {
            continue;
        }
        let p = parse_rational_poly(expr, &ParamMode::Specialized(u0.clone()))
            .map_err(|e| input(format!("{}:{}: {e}", a.input.display(), n + 1)))?;
        gens.push(p.with_order(ord));
    }
    let gb = buchberger(&gens, ord, &a.budget.limits()).map_err(|e| Failure::Resource(e.to_string()))?;
    for g in gb.basis() {
        println!("{g}");
    }
    match ideal_dimension(&gb) {
        Ok(d) => println!("dimension: {d}"),
        Err(GbError::EmptyVariety) => println!("empty variety (the ideal contains 1)"),
        Err(e) => return Err(Failure::Resource(e.to_string())),
    }
    Ok(0)
}

fn relations_cmd(u0: Option<&str>) -> Result<u8, Failure> {
    let spec = match u0 {
        Some(t) => ParameterSpec::Specialized(parse_u0(t)?),
        None => ParamMode::Symbolic,
    };
    let rels = relation_set(&spec);
    for ((label, r), k) in rels.labels.iter().zip(&rels.relations).zip(&rels.multipliers) {
        if *k > 0 {
            println!("{label} [x u^{k}]: {r}");
        } else {
            println!("{label}: {r}");
        }
    }
    Ok(0)
}

fn map_cmd(word: &str) -> Result<u8, Failure> {
    let w = parse_word(word)?;
    let m = compose_word(&w, &SubstLimits::default()).map_err(|e| Failure::Resource(e.to_string()))?;
    for v in Var::generators() {
        println!("{} -> {}", v.name(), m.image(v));
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let res = match &cli.command {
        Command::VerifyAll(a) => verify_all_cmd(a),
        Command::Action(a) => action_cmd(a),
        Command::Gb(a) => gb_cmd(a),
        Command::Relations { u0 } => relations_cmd(u0.as_deref()),
        Command::Map { word } => map_cmd(word),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Resource(m) => eprintln!("resource limit: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
