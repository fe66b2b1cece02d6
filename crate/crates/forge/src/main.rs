use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use kummer_core::constructions::{self, Family, FamilyCurve};
use kummer_core::{Error, Field, KummerCurve, Poly, RatFun};
use kummer_forge::parse::{parse_element, parse_field, parse_poly};
use kummer_forge::search::{run_search, RankKey, SearchConfig, Strategy};
use kummer_forge::verify::verify_paper;

#[derive(Parser)]
#[command(
    name = "forge",
    version,
    about = "Kummer covers with many rational points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Genus, point count and divisor profile of y^n = num/den.
    Analyze(AnalyzeArgs),
    /// Build a curve from a named family.
    Family(FamilyArgs),
    /// Enumerate, analyze and rank candidate curves.
    Search(SearchArgs),
    /// Reproduce the reference genus and point counts.
    VerifyPaper(VerifyArgs),
    /// Describe a finite field.
    FieldInfo(FieldInfoArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    field_pos: Option<String>,
    n_pos: Option<u64>,
    num_pos: Option<String>,
    den_pos: Option<String>,
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    num: Option<String>,
    #[arg(long)]
    den: Option<String>,
}

#[derive(Args)]
struct FamilyArgs {
    /// prop2.1, prop2.3, prop2.5, prop3.1, prop3.5, xfp or quotient
    tag: String,
    field_pos: Option<String>,
    #[arg(long)]
    field: Option<String>,
    /// Element encoding, or a negative integer.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    /// Base cover degree for `quotient`.
    #[arg(long)]
    n: Option<u64>,
    /// `f` for `xfp`; base numerator for `quotient`.
    #[arg(long, allow_hyphen_values = true)]
    num: Option<String>,
    #[arg(long)]
    den: Option<String>,
}

#[derive(Args)]
struct SearchArgs {
    /// full, trace-zero, subspace, xfp or quotient-closure
    strategy: String,
    field_pos: Option<String>,
    #[arg(long)]
    field: Option<String>,
    /// Comma-separated element encodings spanning the subspace.
    #[arg(long)]
    basis: Option<String>,
    /// Degree bound for `xfp`.
    #[arg(long, default_value_t = 4)]
    max_deg: usize,
    #[arg(long, default_value = "ratio")]
    rank: String,
    /// Keep only curves reaching floor(upper/sqrt(2)) of a known reference bound.
    #[arg(long)]
    qualify: bool,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// JSON-lines output file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Rows in the summary table.
    #[arg(long, default_value_t = 10)]
    top: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Field descriptor whose modulus replaces the default one, unchecked.
    #[arg(long)]
    override_modulus: Option<String>,
}

#[derive(Args)]
struct FieldInfoArgs {
    field_pos: Option<String>,
    #[arg(long)]
    field: Option<String>,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Core(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn pick<T>(flag: Option<T>, pos: Option<T>, name: &str) -> std::result::Result<T, Failure> {
    flag.or(pos)
        .ok_or_else(|| Failure::Input(format!("missing {name}")))
}

fn field_arg(
    flag: Option<String>,
    pos: Option<String>,
) -> std::result::Result<Arc<Field>, Failure> {
    Ok(Arc::new(parse_field(&pick(flag, pos, "field")?)?))
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn analyze(args: AnalyzeArgs) -> Outcome {
    let field = field_arg(args.field, args.field_pos)?;
    let n = pick(args.n, args.n_pos, "n")?;
    let num = parse_poly(&pick(args.num, args.num_pos, "num")?, &field)?;
    let den = match args.den.or(args.den_pos) {
        Some(d) => parse_poly(&d, &field)?,
        None => Poly::one(),
    };
    let curve = KummerCurve::new(field.clone(), n, RatFun::new(num, den, &field)?)?;
    print_json(&curve.report(None, None)?);
    Ok(())
}

fn family(args: FamilyArgs) -> Outcome {
    let family = Family::from_tag(&args.tag)
        .ok_or_else(|| Failure::Input(format!("unknown family {:?}", args.tag)))?;
    let field = field_arg(args.field, args.field_pos)?;
    let a = args.a.map(|a| parse_element(&a, &field)).transpose()?;
    let need = |v: Option<u64>, name: &str| {
        v.ok_or_else(|| Failure::Input(format!("{} needs --{name}", args.tag)))
    };
    let fc: FamilyCurve = match family {
        Family::Prop21 => constructions::family_2_1(&field, a.unwrap_or(field.one()))?,
        Family::Prop23 => constructions::family_2_3(&field, a.unwrap_or(field.from_int(-1)))?,
        Family::Prop25 => constructions::family_2_5(&field, a)?,
        Family::Prop31 => constructions::family_3_1(&field, need(args.s, "s")? as u32)?,
        Family::Prop35 => constructions::family_3_5(&field)?,
        Family::Xfp => {
            let f = parse_poly(&pick(args.num, None, "--num")?, &field)?;
            constructions::variant_4_1(&field, &f)?
        }
        Family::Quotient => {
            let num = parse_poly(&pick(args.num, None, "--num")?, &field)?;
            let den = match args.den {
                Some(d) => parse_poly(&d, &field)?,
                None => Poly::one(),
            };
            let n = args.n.unwrap_or(field.q() as u64 - 1);
            let base = KummerCurve::new(field.clone(), n, RatFun::new(num, den, &field)?)?;
            constructions::quotient(&base, need(args.s, "s")?, args.t.unwrap_or(1))?
        }
    };
    let report = fc
        .curve
        .report(fc.predicted, Some(family.tag().to_string()))?;
    if report.genus == 0 {
        eprintln!("note: genus 0, ratio undefined");
    }
    print_json(&report);
    Ok(())
}

fn search(args: SearchArgs) -> Outcome {
    let field = field_arg(args.field, args.field_pos)?;
    let strategy = match args.strategy.as_str() {
        "full" => Strategy::Full,
        "trace-zero" => Strategy::TraceZero,
        "subspace" => {
            let list = args
                .basis
                .ok_or_else(|| Failure::Input("subspace needs --basis".into()))?;
            let basis = list
                .split(',')
                .map(|e| parse_element(e, &field))
                .collect::<kummer_core::Result<Vec<_>>>()?;
            Strategy::Subspace(basis)
        }
        "xfp" => Strategy::Xfp {
            max_deg: args.max_deg,
        },
        "quotient-closure" => Strategy::QuotientClosure,
        other => return Err(Failure::Input(format!("unknown strategy {other:?}"))),
    };
    if args.workers == 0 {
        return Err(Failure::Input("--workers must be positive".into()));
    }
    let config = SearchConfig {
        field,
        strategy,
        rank: args.rank.parse::<RankKey>()?,
        qualify: args.qualify,
        workers: args.workers,
    };
    let outcome = run_search(&config)?;
    if let Some(path) = &args.out {
        std::fs::write(path, outcome.to_jsonl())
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    print!("{}", outcome.table(args.top));
    Ok(())
}

fn verify(args: VerifyArgs) -> Outcome {
    let replacement = match args.override_modulus {
        Some(desc) => {
            let (head, list) = desc
                .split_once('/')
                .ok_or_else(|| Failure::Input("override needs the p^m/c0,...,1 form".into()))?;
            let (p, m) = head
                .split_once('^')
                .and_then(|(p, m)| Some((p.parse().ok()?, m.parse().ok()?)))
                .ok_or_else(|| Failure::Input(format!("bad descriptor {desc:?}")))?;
            let coeffs = list
                .split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Failure::Input(format!("bad descriptor {desc:?}")))?;
            Some(Field::with_unchecked_modulus(p, m, &coeffs)?)
        }
        None => None,
    };
    if replacement.is_some() {
        // panics inside the corrupted ring are reported as case failures
        std::panic::set_hook(Box::new(|_| {}));
    }
    let report = verify_paper(replacement);
    print!("{}", report.render());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

#[derive(Serialize)]
struct FieldInfo {
    descriptor: String,
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
}

fn field_info(args: FieldInfoArgs) -> Outcome {
    let field = field_arg(args.field, args.field_pos)?;
    print_json(&FieldInfo {
        descriptor: field.descriptor(),
        p: field.p(),
        m: field.m(),
        q: field.q(),
        modulus: field.modulus().to_vec(),
    });
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Family(a) => family(a),
        Command::Search(a) => search(a),
        Command::VerifyPaper(a) => verify(a),
        Command::FieldInfo(a) => field_info(a),
    };
    let _ = std::io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(if e.is_internal() { 3 } else { 2 })
        }
    }
}
