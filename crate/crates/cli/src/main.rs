mod doc;
mod expr;
mod verify;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use quadloci::algebra::{expand_chern, parse_rational, param, Alphabet, Param, Polynomial, RationalFunction};
use quadloci::loci::{
    closed_divisor_class, fixed_point_restriction, localization_class_chern, pencil_class_chern, pencil_class_quot,
    pencil_class_sub, projectivize, residue_divisor_class, LociError, ScalarData, WeightSet,
};
use quadloci::moduli::{
    default_calibration, dp12_slope, hurwitz_report, k3_rank4_class, kosz_class, pelda_slope, petri_class,
    virtual_slope_from_pushforward, ModuliError, SeriesParams, SlopeForm,
};

use doc::{polynomial_map, taut_map, ClassDocument};
use expr::parse_class;

#[derive(Parser)]
#[command(name = "quadloci", version, about = "Classes of quadric-rank loci and divisors on moduli spaces")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classes of degeneracy loci in the equivariant ring.
    #[command(subcommand)]
    Class(ClassCmd),
    /// Divisor classes and slopes on moduli of curves.
    #[command(subcommand)]
    Moduli(ModuliCmd),
    /// Classes on moduli of polarized K3 surfaces.
    #[command(subcommand)]
    K3(K3Cmd),
    /// The rank-4 divisor on the Hurwitz space of degree-k covers.
    Hurwitz {
        /// Degree; symbolic when omitted.
        #[arg(long)]
        k: Option<i64>,
    },
    /// Recompute every worked value and print a concordance table.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Localization,
    Closed,
    Residue,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Roots,
    Chern,
}

#[derive(Clone, Copy, ValueEnum)]
enum Presentation {
    Sub,
    Quot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Closed,
    Deficit,
}

#[derive(Subcommand)]
enum ClassCmd {
    /// [Sigma^r_{e,f}]: maps Sym^2 E -> F of rank at most r.
    Sigma {
        #[arg(long)]
        e: u32,
        #[arg(long)]
        f: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "localization")]
        method: Method,
        #[arg(long, value_enum, default_value = "chern")]
        basis: Basis,
    },
    /// Locus of maps Sym^2 E -> det E whose quadric contains a pencil.
    Pencil {
        #[arg(long)]
        e: u32,
        #[arg(long, value_enum, default_value = "sub")]
        presentation: Presentation,
        #[arg(long, value_enum, default_value = "chern")]
        basis: Basis,
    },
    /// Projectivize a class given in a JSON file.
    Projectivize {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Evaluate a class expression.
    Eval {
        expr: String,
        /// Bind a symbol, as `name=value`.
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ModuliCmd {
    /// Class of the Petri divisor.
    Petri {
        #[arg(long)]
        g: u32,
    },
    /// Slope of a quadric-rank divisor.
    Slope(SlopeArgs),
    /// The degenerate-pencil divisor on M_12.
    Dp12,
}

#[derive(Args)]
struct SlopeArgs {
    /// Series index (1 or 2).
    #[arg(long, conflicts_with = "custom", required_unless_present = "custom")]
    series: Option<u8>,
    #[arg(long, requires = "series")]
    ell: Option<i64>,
    #[arg(long, value_enum, default_value = "deficit")]
    form: Form,
    /// Virtual slope for arbitrary (r, s, a); uses a fitted calibration.
    #[arg(long, requires_all = ["r", "s", "a"])]
    custom: bool,
    #[arg(long)]
    r: Option<i64>,
    #[arg(long)]
    s: Option<i64>,
    #[arg(long)]
    a: Option<i64>,
}

#[derive(Subcommand)]
enum K3Cmd {
    /// Rank-4 class divided by A_{g+1}^{g-3}.
    Rank4 {
        /// Genus; symbolic when omitted.
        #[arg(long)]
        g: Option<i64>,
    },
    /// Koszul divisor in genus 2i + 3.
    Kosz {
        #[arg(long)]
        i: u32,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Every check.
    All {
        /// Largest e for the localization property sweep.
        #[arg(long, default_value_t = 5)]
        max_e: u32,
        /// Worker threads.
        #[arg(long, env = "QUADLOCI_JOBS")]
        jobs: Option<usize>,
    },
}

enum Failure {
    /// Bad input or parameters outside the supported domain (exit 2).
    Usage(String),
    /// A computation or a verification failed (exit 1).
    Compute(String),
}

impl From<ModuliError> for Failure {
    fn from(e: ModuliError) -> Self {
        match e {
            ModuliError::UnsupportedParam(_) | ModuliError::InvariantViolated(_) | ModuliError::NotPartitionOfK => {
                Failure::Usage(e.to_string())
            }
            ModuliError::Loci(l) => l.into(),
            other => Failure::Compute(other.to_string()),
        }
    }
}

impl From<LociError> for Failure {
    fn from(e: LociError) -> Self {
        match e {
            LociError::InvalidParameters(_) | LociError::NotDivisorial { .. } | LociError::ScalarMismatch { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Compute(other.to_string()),
        }
    }
}

impl From<expr::ExprError> for Failure {
    fn from(e: expr::ExprError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// What a command produced, before formatting.
enum Output {
    Doc(ClassDocument),
    Verify(verify::Report),
}

#[derive(Deserialize)]
struct ProjectiveInput {
    /// `s[j][i]`: coefficient of `alpha_{i+1}` in weight `j`.
    s: Vec<Vec<i64>>,
    r_i: Vec<i64>,
    r: i64,
    class: String,
}

fn sigma(e: u32, f: u32, r: u32, method: Method, basis: Basis) -> Result<ClassDocument, Failure> {
    let cls = match method {
        Method::Localization => localization_class_chern(e, f, r)?,
        Method::Closed | Method::Residue => {
            let fd = quadloci::loci::divisorial_f(e, r)?;
            if fd != f {
                return Err(Failure::Usage(format!("closed and residue methods need the divisorial f = {fd}, got {f}")));
            }
            match method {
                Method::Closed => closed_divisor_class(e, r)?,
                _ => residue_divisor_class(e, r)?,
            }
        }
    };
    let cls = match basis {
        Basis::Chern => cls,
        Basis::Roots => expand_chern(&expand_chern(&cls, Alphabet::Alpha, e), Alphabet::Beta, f),
    };
    Ok(ClassDocument::polynomial("class sigma", &cls).param("e", e).param("f", f).param("r", r))
}

fn pencil(e: u32, presentation: Presentation, basis: Basis) -> Result<ClassDocument, Failure> {
    if e < 2 {
        return Err(Failure::Usage(format!("pencil loci need e >= 2, got {e}")));
    }
    let cls = match (basis, presentation) {
        (Basis::Chern, _) => pencil_class_chern(e).map_err(|x| Failure::Compute(x.to_string()))?,
        (Basis::Roots, Presentation::Sub) => pencil_class_sub(e),
        (Basis::Roots, Presentation::Quot) => pencil_class_quot(e),
    };
    Ok(ClassDocument::polynomial("class pencil", &cls).param("e", e))
}

fn projective(input: &PathBuf) -> Result<ClassDocument, Failure> {
    let text = std::fs::read_to_string(input).map_err(|x| Failure::Usage(format!("{}: {x}", input.display())))?;
    let data: ProjectiveInput =
        serde_json::from_str(&text).map_err(|x| Failure::Usage(format!("{}: {x}", input.display())))?;
    let weights = WeightSet::from_matrix(&data.s);
    let scalars = ScalarData::new(data.r_i, data.r);
    let cls = parse_class(&data.class)?.evaluate(&BTreeMap::new())?;
    let cls: Polynomial = cls
        .as_polynomial()
        .cloned()
        .ok_or_else(|| Failure::Usage(format!("class is not a polynomial: {}", data.class)))?;
    let mut d = ClassDocument::polynomial("class projectivize", &projectivize(&cls, &weights, &scalars)?);
    for j in 0..weights.len() {
        let r = fixed_point_restriction(&cls, &weights, j, &scalars)?;
        d = d.related(&format!("restriction{j}"), polynomial_map(&r));
    }
    Ok(d)
}

fn eval(text: &str, set: &[String]) -> Result<ClassDocument, Failure> {
    let mut bindings = BTreeMap::new();
    for s in set {
        let (name, value) = s.split_once('=').ok_or_else(|| Failure::Usage(format!("expected NAME=VALUE, got {s}")))?;
        let q = parse_rational(value.trim()).ok_or_else(|| Failure::Usage(format!("not a rational number: {value}")))?;
        bindings.insert(name.trim().to_string(), q);
    }
    let e = parse_class(text)?;
    let v = e.evaluate(&bindings)?;
    let mut d = ClassDocument::new("class eval").param("expr", &e);
    for (k, q) in &bindings {
        d = d.param(k, q);
    }
    Ok(match v.as_polynomial() {
        Some(p) => d.with_coefficients(polynomial_map(p)),
        None => d.value(&v),
    })
}

fn rf_or(v: Option<i64>, p: Param) -> RationalFunction {
    v.map_or_else(|| param(p), RationalFunction::int)
}

fn slope(args: &SlopeArgs) -> Result<ClassDocument, Failure> {
    if args.custom {
        let (r, s, a) = (args.r.unwrap_or_default(), args.s.unwrap_or_default(), args.a.unwrap_or_default());
        let p = SeriesParams::new(r, s, a)?;
        let v = virtual_slope_from_pushforward(&p, &default_calibration()?)?;
        return Ok(ClassDocument::new("moduli slope")
            .value(&v.slope)
            .param("r", r)
            .param("s", s)
            .param("a", a)
            .param("g", p.g)
            .note("WARN: virtual slope with N/beta fitted on the genus-24 value; the fit does not reproduce the other known slopes"));
    }
    let series = args.series.unwrap_or(1);
    let form = match args.form {
        Form::Closed => SlopeForm::Closed,
        Form::Deficit => SlopeForm::Deficit,
    };
    let ell = rf_or(args.ell, Param::Ell);
    let s = pelda_slope(series, &ell, form)?;
    let mut d = ClassDocument::new("moduli slope").value(&s).param("series", series);
    if let Some(l) = args.ell {
        d = d.param("ell", l);
    }
    Ok(d)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let doc = match &cli.command {
        Command::Class(ClassCmd::Sigma { e, f, r, method, basis }) => sigma(*e, *f, *r, *method, *basis)?,
        Command::Class(ClassCmd::Pencil { e, presentation, basis }) => pencil(*e, *presentation, *basis)?,
        Command::Class(ClassCmd::Projectivize { input }) => projective(input)?,
        Command::Class(ClassCmd::Eval { expr, set }) => eval(expr, set)?,
        Command::Moduli(ModuliCmd::Petri { g }) => {
            let d = petri_class(*g)?;
            ClassDocument::taut("moduli petri", &d.to_taut()).value(d.slope()?).param("g", g)
        }
        Command::Moduli(ModuliCmd::Slope(args)) => slope(args)?,
        Command::Moduli(ModuliCmd::Dp12) => {
            let r = dp12_slope();
            let mut d = ClassDocument::polynomial("moduli dp12", &r.pencil_class)
                .value(&r.slope)
                .param("bound", &r.bound)
                .note(format!("class over (e-1): ({}, {})", r.f_coeff, r.e_coeff));
            if !r.prefactors_agree() {
                d = d.note(format!(
                    "WARN: prefactor {} from the pencil class, {} in the virtual class",
                    r.theorem_prefactor, r.proof_prefactor
                ));
            }
            d
        }
        Command::K3(K3Cmd::Rank4 { g }) => {
            let r = k3_rank4_class(&rf_or(*g, Param::G))?;
            let mut d = ClassDocument::taut("k3 rank4", &r.class).related("c1U1", taut_map(&r.c1u1)).related("c1U2", taut_map(&r.c1u2));
            if let Some(g) = g {
                d = d.param("g", g);
            }
            d
        }
        Command::K3(K3Cmd::Kosz { i }) => {
            let r = kosz_class(*i)?;
            let mut d = ClassDocument::taut("k3 kosz", &r.theorem)
                .param("i", i)
                .param("g", r.g)
                .related("in terms of g", taut_map(&r.intro));
            if !r.theorem_matches_intro() {
                let f = r.intro_over_theorem().map_or_else(|| "non-constant".into(), |q| q.to_string());
                d = d.note(format!("WARN: the form in terms of g differs by the factor {f}"));
            }
            d
        }
        Command::Hurwitz { k } => {
            if k.is_some_and(|k| k < 4) {
                return Err(Failure::Usage(format!("the rank-4 locus needs k >= 4, got {}", k.unwrap_or_default())));
            }
            let kk = rf_or(*k, Param::K);
            let r = hurwitz_report(&kk)?;
            if !r.identity_holds() {
                return Err(Failure::Compute(format!("canonical class identity fails: residual {}", r.identity_residual)));
            }
            let mut d = ClassDocument::taut("hurwitz", &r.partclass)
                .related("canonical", taut_map(&r.canonical))
                .related("hodge (derived)", taut_map(&r.hodge.derived))
                .related("hodge (printed)", taut_map(&r.hodge.printed))
                .param("alpha", &r.alpha);
            if let Some(k) = k {
                d = d.param("k", k);
            }
            match r.h_coefficient() {
                Some(c) => d = d.param("h coefficient", c),
                None => d = d.param("h coefficient", format!("({})/A_k^{{k-4}}", r.h_coefficient_times_a)),
            }
            if r.h_coefficient_matches_printed() != Some(true) {
                d = d.note(format!("WARN: printed coefficient of [H^rk4] is {}", r.printed_h_coefficient));
            }
            d
        }
        Command::Verify(VerifyCmd::All { max_e, jobs }) => {
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            return Ok(Output::Verify(verify::verify_all(*max_e, jobs)));
        }
    };
    Ok(Output::Doc(doc))
}

fn render(out: &Output, json: bool) -> String {
    let mut s = match (out, json) {
        (Output::Doc(d), true) => serde_json::to_string_pretty(d).expect("serializable"),
        (Output::Doc(d), false) => d.render_text(),
        (Output::Verify(r), true) => serde_json::to_string_pretty(r).expect("serializable"),
        (Output::Verify(r), false) => r.render_text(),
    };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(out) => {
            let failed = matches!(&out, Output::Verify(r) if !r.failures.is_empty());
            (render(&out, cli.json), if failed { 1 } else { 0 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
