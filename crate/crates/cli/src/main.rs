//! Command-line front end: characteristic polynomials of the weak order on
//! classical and affine Coxeter groups, with cross-checked computation
//! routes and batch verification suites.
//!
//! Results go to stdout; route diagnostics and errors go to stderr. Errors
//! are single machine-parseable lines of the form `error: <code>: <message>`.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use coxchar::charpoly::{
    affine_modified_char_poly_direct, affine_modified_char_poly_recurrence, alternating_char_poly,
    alternating_descent_set, char_poly_interval_decomposed, char_poly_subset_sum,
    descent_class_char_poly, fixed_descent_formula, interior_condition_holds, modified_char_poly,
};
use coxchar::series::{extract_modified_charpoly, series_dump_json, series_t};
use coxchar::verify::{run_suite, VerifyConfig, SUITE_NAMES};
use coxchar::{Family, GenSet, GroupElement, IntPolynomial, Model, WeakOrderPoset};

/// Auto mode only enumerates a group when it is at most this large.
const AUTO_POSET_LIMIT: usize = 10_080;
/// Explicit poset requests refuse groups whose reachability matrix would
/// not fit comfortably in memory.
const POSET_METHOD_LIMIT: usize = 65_536;

const CAP_ENV_VAR: &str = "COXCHAR_MAX_ELEMENTS";

#[derive(Parser)]
#[command(
    name = "coxchar",
    version,
    about = "Characteristic polynomials of the weak order on classical and affine Coxeter groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial of a finite family (A, B or D)
    Charpoly(FamilyArgs),
    /// Modified characteristic polynomial of a finite family
    Modified(FamilyArgs),
    /// Modified characteristic polynomial of an affine family
    Affine(FamilyArgs),
    /// Characteristic polynomial of a descent class in type A
    #[command(name = "descent-class")]
    DescentClass(DescentArgs),
    /// Characteristic polynomial of the alternating permutations Alt_n
    Alt(AltArgs),
    /// Generating-function coefficients (modified characteristic polynomials)
    Series(SeriesArgs),
    /// Run oracle-equivalence verification suites
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family: A, B, D (charpoly/modified) or AffA, AffB, AffC, AffD (affine)
    #[arg(short = 'f', long)]
    family: String,
    /// Rank, or an inclusive range lo:hi (ranges need --format csv)
    #[arg(short = 'n', long)]
    rank: String,
    /// Computation route; auto cross-checks every route the rank permits
    #[arg(long, default_value = "auto")]
    method: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Enumeration cap override (also settable via COXCHAR_MAX_ELEMENTS)
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct DescentArgs {
    /// Coxeter rank n of A_n
    #[arg(short = 'n', long)]
    rank: usize,
    /// Descent lower bound I as comma-separated generator indices
    #[arg(short = 'I', long, default_value = "")]
    lower: String,
    /// Descent upper bound J; defaults to I (fixed descent set)
    #[arg(short = 'J', long)]
    upper: Option<String>,
    #[arg(long, default_value = "auto")]
    method: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct AltArgs {
    /// Number of letters n of Alt_n
    #[arg(short = 'n', long)]
    rank: usize,
    #[arg(long, default_value = "auto")]
    method: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Args)]
struct SeriesArgs {
    /// Family: A, B or D
    #[arg(short = 'f', long)]
    family: String,
    /// Truncation order N (coefficients of x^0 .. x^{N-1})
    #[arg(short = 'N', long)]
    order: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest A-rank exercised by rank-configurable suites
    #[arg(long, default_value_t = 4)]
    max_a: usize,
    /// Largest B/D-rank exercised by rank-configurable suites
    #[arg(long, default_value_t = 4)]
    max_bd: usize,
    /// Sample count for the interval-decomposition suite
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// RNG seed for sampled suites
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long)]
    cap: Option<usize>,
}

/// A CLI failure: a stable code, a message and the exit status.
struct Failure {
    code: String,
    message: String,
    usage: bool,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: "usage".into(),
            message: message.into(),
            usage: true,
        }
    }

    fn check(code: &str, message: impl Into<String>) -> Self {
        Failure {
            code: code.into(),
            message: message.into(),
            usage: false,
        }
    }
}

impl From<coxchar::Error> for Failure {
    fn from(e: coxchar::Error) -> Self {
        Failure {
            code: e.code().into(),
            message: e.to_string(),
            usage: false,
        }
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    match dispatch(cli, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}: {}", f.code, f.message);
            ExitCode::from(if f.usage { 2 } else { 1 })
        }
    }
}

fn dispatch(cli: Cli, out: &mut impl Write, err: &mut impl Write) -> CliResult {
    match cli.command {
        Command::Charpoly(args) => finite_family_cmd(args, false, out, err),
        Command::Modified(args) => finite_family_cmd(args, true, out, err),
        Command::Affine(args) => affine_cmd(args, out, err),
        Command::DescentClass(args) => descent_class_cmd(args, out, err),
        Command::Alt(args) => alt_cmd(args, out, err),
        Command::Series(args) => series_cmd(args, out),
        Command::Verify(args) => verify_cmd(args, out),
    }
}

fn parse_family(text: &str) -> Result<Family, Failure> {
    Family::parse(text).ok_or_else(|| {
        Failure::usage(format!(
            "unknown family {text:?}; expected A, B, D, AffA, AffB, AffC or AffD"
        ))
    })
}

/// A rank argument: a single value or an inclusive `lo:hi` range.
fn parse_ranks(text: &str) -> Result<Vec<usize>, Failure> {
    let parse_one = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Failure::usage(format!("cannot parse rank {s:?}")))
    };
    match text.split_once(':') {
        None => Ok(vec![parse_one(text)?]),
        Some((lo, hi)) => {
            let (lo, hi) = (parse_one(lo)?, parse_one(hi)?);
            if lo > hi {
                return Err(Failure::usage(format!("empty rank range {text:?}")));
            }
            Ok((lo..=hi).collect())
        }
    }
}

fn parse_genset(text: &str, what: &str) -> Result<GenSet, Failure> {
    GenSet::parse(text)
        .ok_or_else(|| Failure::usage(format!("cannot parse {what} {text:?} as index list")))
}

fn resolve_cap(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| std::env::var(CAP_ENV_VAR).ok().and_then(|s| s.parse().ok()))
}

fn validate_method(method: &str, allowed: &[&str]) -> Result<(), Failure> {
    if allowed.contains(&method) {
        Ok(())
    } else {
        Err(Failure::usage(format!(
            "method {method:?} does not apply here; expected one of: {}",
            allowed.join(", ")
        )))
    }
}

/// Check that every computed route produced the same polynomial, report the
/// routes on stderr, and hand back the agreed value.
fn reconcile(
    routes: Vec<(&'static str, IntPolynomial)>,
    err: &mut impl Write,
) -> Result<IntPolynomial, Failure> {
    let (first_name, first) = routes[0].clone();
    for (name, poly) in &routes[1..] {
        if *poly != first {
            return Err(Failure::check(
                "route-disagreement",
                format!("{first_name} gives {first}, {name} gives {poly}"),
            ));
        }
    }
    let names: Vec<&str> = routes.iter().map(|(n, _)| *n).collect();
    let _ = writeln!(err, "routes: {} (agree)", names.join(", "));
    Ok(first)
}

fn emit_rows(
    rows: Vec<(String, usize, IntPolynomial)>,
    format: OutputFormat,
    out: &mut impl Write,
) -> CliResult {
    if rows.len() > 1 && format != OutputFormat::Csv {
        return Err(Failure::usage("rank ranges need --format csv"));
    }
    match format {
        OutputFormat::Text => {
            let _ = writeln!(out, "{}", rows[0].2);
        }
        OutputFormat::Json => {
            let _ = writeln!(out, "{}", rows[0].2.to_json());
        }
        OutputFormat::Csv => {
            let _ = writeln!(out, "family,rank,polynomial,degree");
            for (family, rank, poly) in rows {
                let _ = writeln!(out, "{family},{rank},{poly},{}", poly.degree().unwrap_or(0));
            }
        }
    }
    Ok(())
}

fn finite_family_cmd(
    args: FamilyArgs,
    modified: bool,
    out: &mut impl Write,
    err: &mut impl Write,
) -> CliResult {
    let family = parse_family(&args.family)?;
    if family.is_affine() {
        return Err(Failure::usage(format!(
            "{family} is affine; use the `affine` subcommand"
        )));
    }
    let allowed: &[&str] = if modified {
        &["auto", "subset", "series"]
    } else {
        &["auto", "subset", "poset", "decompose"]
    };
    validate_method(&args.method, allowed)?;
    let cap = resolve_cap(args.cap);

    let mut rows = Vec::new();
    for rank in parse_ranks(&args.rank)? {
        let mut routes: Vec<(&'static str, IntPolynomial)> = Vec::new();
        let method = args.method.as_str();
        if modified {
            if method == "auto" || method == "subset" {
                routes.push(("subset", modified_char_poly(family, rank)?));
            }
            if method == "auto" || method == "series" {
                if family == Family::D && rank < 2 {
                    if method == "series" {
                        return Err(coxchar::Error::DSeriesRange { rank }.into());
                    }
                } else {
                    routes.push(("series", extract_modified_charpoly(family, rank)?));
                }
            }
        } else {
            if method == "auto" || method == "subset" {
                routes.push(("subset", char_poly_subset_sum(family, rank)?));
            }
            if method == "auto" || method == "decompose" {
                if let Ok(model) = Model::new(family, rank) {
                    let graph = model.graph();
                    let e = GroupElement::identity(model);
                    let w0 = coxchar::longest_element_of_parabolic(model, model.generators())?;
                    routes.push(("decompose", char_poly_interval_decomposed(&graph, &e, &w0)?));
                } else if method == "decompose" {
                    return Err(Failure::usage(format!(
                        "no group model for {family} rank {rank}"
                    )));
                }
            }
            let poset_requested = method == "poset";
            let poset_auto = method == "auto"
                && Model::new(family, rank)
                    .map(|m| m.order() <= AUTO_POSET_LIMIT as u128)
                    .unwrap_or(false);
            if poset_requested || poset_auto {
                let model = Model::new(family, rank)?;
                if poset_requested && model.order() > POSET_METHOD_LIMIT as u128 {
                    return Err(Failure::check(
                        "poset-oracle-too-large",
                        format!(
                            "group of order {} exceeds the poset oracle limit {}",
                            model.order(),
                            POSET_METHOD_LIMIT
                        ),
                    ));
                }
                let poset = WeakOrderPoset::build(model, cap)?;
                routes.push(("poset", poset.char_poly()));
            }
        }
        let poly = reconcile(routes, err)?;
        rows.push((family.to_string(), rank, poly));
    }
    emit_rows(rows, args.format, out)
}

fn affine_cmd(args: FamilyArgs, out: &mut impl Write, err: &mut impl Write) -> CliResult {
    let family = parse_family(&args.family)?;
    if !family.is_affine() {
        return Err(Failure::usage(format!(
            "{family} is finite; use `charpoly` or `modified`"
        )));
    }
    validate_method(&args.method, &["auto", "both", "direct", "recurrence"])?;
    let both = args.method == "auto" || args.method == "both";
    let ranks = parse_ranks(&args.rank)?;
    if ranks.len() > 1 && args.format != OutputFormat::Csv {
        return Err(Failure::usage("rank ranges need --format csv"));
    }

    if both && args.format == OutputFormat::Text {
        // text output in `both` mode shows the comparison
        let rank = ranks[0];
        let direct = affine_modified_char_poly_direct(family, rank)?;
        let recurred = affine_modified_char_poly_recurrence(family, rank)?;
        let agree = direct == recurred;
        let _ = writeln!(out, "direct:     {direct}");
        let _ = writeln!(out, "recurrence: {recurred}");
        let _ = writeln!(out, "agree:      {}", if agree { "yes" } else { "NO" });
        return if agree {
            Ok(())
        } else {
            Err(Failure::check(
                "route-disagreement",
                format!("direct gives {direct}, recurrence gives {recurred}"),
            ))
        };
    }

    let mut rows = Vec::new();
    for rank in ranks {
        let mut routes = Vec::new();
        if both || args.method == "direct" {
            routes.push(("direct", affine_modified_char_poly_direct(family, rank)?));
        }
        if both || args.method == "recurrence" {
            routes.push((
                "recurrence",
                affine_modified_char_poly_recurrence(family, rank)?,
            ));
        }
        rows.push((family.to_string(), rank, reconcile(routes, err)?));
    }
    emit_rows(rows, args.format, out)
}

fn descent_class_cmd(args: DescentArgs, out: &mut impl Write, err: &mut impl Write) -> CliResult {
    validate_method(&args.method, &["auto", "decompose", "formula", "poset"])?;
    let n = args.rank;
    let i_set = parse_genset(&args.lower, "-I")?;
    let j_set = match &args.upper {
        Some(text) => parse_genset(text, "-J")?,
        None => i_set,
    };
    let cap = resolve_cap(args.cap);
    let method = args.method.as_str();

    let mut routes = Vec::new();
    if method == "auto" || method == "decompose" {
        routes.push(("decompose", descent_class_char_poly(n, i_set, j_set)?));
    }
    if method == "formula"
        || (method == "auto" && i_set == j_set && interior_condition_holds(n, i_set))
    {
        if i_set != j_set {
            return Err(Failure::usage(
                "the product formula applies to fixed descent sets only (J = I)",
            ));
        }
        routes.push(("formula", fixed_descent_formula(n, i_set)?));
    }
    let group_order = Model::A(n).order();
    let poset_wanted =
        method == "poset" || (method == "auto" && group_order <= AUTO_POSET_LIMIT as u128);
    if poset_wanted {
        if group_order > POSET_METHOD_LIMIT as u128 {
            return Err(Failure::check(
                "poset-oracle-too-large",
                format!("S_{} has {group_order} elements", n + 1),
            ));
        }
        routes.push((
            "poset",
            descent_class_poset_char_poly(n, i_set, j_set, cap)?,
        ));
    }
    let poly = reconcile(routes, err)?;
    emit_rows(vec![("A".into(), n, poly)], args.format, out)
}

/// Oracle route: extract the interval [w0(I), w0·w0(J^c)] from the full
/// weak order and take its characteristic polynomial.
fn descent_class_poset_char_poly(
    n: usize,
    i_set: GenSet,
    j_set: GenSet,
    cap: Option<usize>,
) -> Result<IntPolynomial, Failure> {
    let model = Model::A(n);
    if !i_set.is_subset_of(j_set) || !j_set.is_subset_of(model.generators()) {
        return Err(coxchar::Error::DescentSetsNotNested { i_set, j_set }.into());
    }
    let poset = WeakOrderPoset::build(model, cap)?;
    let bottom = poset.longest_parabolic(i_set)?;
    let jc = model.generators().difference(j_set);
    let top_elt = poset
        .element(poset.top().expect("full group"))
        .multiply(poset.element(poset.longest_parabolic(jc)?))
        .unwrap();
    let top = poset.index_of(&top_elt).unwrap();
    Ok(poset.interval(bottom, top)?.char_poly())
}

fn alt_cmd(args: AltArgs, out: &mut impl Write, err: &mut impl Write) -> CliResult {
    validate_method(&args.method, &["auto", "formula", "poset"])?;
    let n = args.rank;
    let method = args.method.as_str();
    let cap = resolve_cap(args.cap);

    let mut routes = Vec::new();
    if method == "auto" || method == "formula" {
        routes.push(("formula", alternating_char_poly(n)?));
    }
    let group_order = if n >= 1 {
        Model::A(n.max(2) - 1).order()
    } else {
        0
    };
    let poset_wanted =
        method == "poset" || (method == "auto" && group_order <= AUTO_POSET_LIMIT as u128);
    if poset_wanted {
        if n < 2 {
            return Err(coxchar::Error::AlternatingRange { n }.into());
        }
        if group_order > POSET_METHOD_LIMIT as u128 {
            return Err(Failure::check(
                "poset-oracle-too-large",
                format!("S_{n} has {group_order} elements"),
            ));
        }
        let i_set = alternating_descent_set(n);
        routes.push((
            "poset",
            descent_class_poset_char_poly(n - 1, i_set, i_set, cap)?,
        ));
    }
    let poly = reconcile(routes, err)?;
    emit_rows(vec![("Alt".into(), n, poly)], args.format, out)
}

fn series_cmd(args: SeriesArgs, out: &mut impl Write) -> CliResult {
    let family = parse_family(&args.family)?;
    if family.is_affine() {
        return Err(Failure::usage(
            "series are defined for the finite families A, B, D",
        ));
    }
    if args.order == 0 {
        return Err(Failure::usage("truncation order must be at least 1"));
    }
    let start = if family == Family::D { 2 } else { 0 };
    match args.format {
        OutputFormat::Json => {
            let t = series_t(family, args.order)?;
            let _ = writeln!(out, "{}", series_dump_json(&t));
        }
        OutputFormat::Text => {
            for n in start..args.order {
                let _ = writeln!(out, "x^{n}: {}", extract_modified_charpoly(family, n)?);
            }
        }
        OutputFormat::Csv => {
            let _ = writeln!(out, "family,rank,polynomial,degree");
            for n in start..args.order {
                let poly = extract_modified_charpoly(family, n)?;
                let _ = writeln!(out, "{family},{n},{poly},{}", poly.degree().unwrap_or(0));
            }
        }
    }
    Ok(())
}

fn verify_cmd(args: VerifyArgs, out: &mut impl Write) -> CliResult {
    let cfg = VerifyConfig {
        max_a: args.max_a,
        max_bd: args.max_bd,
        samples: args.samples,
        seed: args.seed,
        cap: resolve_cap(args.cap),
    };
    let suites: Vec<&str> = if args.suite == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![args.suite.as_str()]
    };
    let mut all_passed = true;
    let mut failed = Vec::new();
    for name in suites {
        let report = run_suite(name, &cfg)?;
        let _ = writeln!(out, "{}", report.summary_line());
        if !report.passed {
            all_passed = false;
            failed.push(name.to_string());
        }
    }
    if all_passed {
        let _ = writeln!(out, "all requested suites passed");
        Ok(())
    } else {
        Err(Failure::check(
            "verification-failed",
            format!("suites failed: {}", failed.join(", ")),
        ))
    }
}
