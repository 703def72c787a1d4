//! The `gradedpi` command line.

pub mod specfile;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebras::{catalog, GradedAlgebra, Regularity};
use crate::error::{Error, Result};
use crate::freealg::parse::parse_polynomial;
use crate::pitool::spaces::Engine;
use crate::pitool::{
    families, pauli, transfer, verify_basis, GeneratorSet, Mode, VerificationReport, VerifyOptions,
};

#[derive(Parser, Debug)]
#[command(
    name = "gradedpi",
    version,
    about = "Graded polynomial identities of real graded-division algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an algebra and print its structure summary or spec file.
    Build(BuildArgs),
    /// Check membership and completeness of a generating set.
    Verify(VerifyArgs),
    /// Print a generating set.
    Families(FamilyArgs),
    /// Move a generating set for A onto A⊗R for a regularly graded R.
    Transfer(TransferArgs),
    /// Run the Pauli reducer on one polynomial and print its certificate.
    Reduce(ReduceArgs),
    /// Re-render a saved JSON report.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Spec,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// Catalog id such as m2-4 or pauli(3), or a path to a spec file.
    #[arg(long)]
    algebra: String,
    /// Parameter for a catalog family given without one (`--algebra pauli --n 3`).
    #[arg(long)]
    n: Option<i64>,
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Write to this file (atomically) instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct BasisArgs {
    /// drensky, okhitin, m2, dv-lemma, bp-central, elementary, regular, pauli,
    /// corollary, corollary-literal, a set named in the algebra file, or a path.
    #[arg(long)]
    basis: String,
    #[arg(long, default_value = "identities")]
    mode: String,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[command(flatten)]
    basis: BasisArgs,
    #[command(flatten)]
    out: OutArgs,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// With the pauli basis, also run the degree-7 check.
    #[arg(long)]
    long_running: bool,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[command(flatten)]
    basis: BasisArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct TransferArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[command(flatten)]
    basis: BasisArgs,
    /// The regularly graded factor R.
    #[arg(long)]
    regular: String,
    #[command(flatten)]
    out: OutArgs,
    /// Verify the transferred set on A⊗R up to --max-degree.
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Polynomial literal, e.g. "x1:a*x2:a - x2:a*x1:a".
    #[arg(long)]
    poly: String,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// JSON report written by `verify`.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    out: OutArgs,
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Build(a) => build(a),
        Command::Verify(a) => verify(a),
        Command::Families(a) => list_families(a),
        Command::Transfer(a) => run_transfer(a),
        Command::Reduce(a) => reduce(a),
        Command::Report(a) => report(a),
    }
}

fn io_error(p: &Path, e: std::io::Error) -> Error {
    Error::Io(std::io::Error::new(
        e.kind(),
        format!("{}: {e}", p.display()),
    ))
}

/// Writes to a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::parse(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    let io = |e: std::io::Error| io_error(path, e);
    {
        let mut f = std::fs::File::create(&tmp).map_err(io)?;
        f.write_all(text.as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
    }
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io(e)
    })
}

fn emit(out: &OutArgs, text: &str) -> Result<()> {
    match &out.out {
        Some(p) => write_atomic(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_file(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| io_error(p, e))
}

fn load(args: &AlgebraArgs) -> Result<specfile::AlgebraFile> {
    let path = Path::new(&args.algebra);
    if path.is_file() {
        return specfile::parse_algebra(&read_file(path)?);
    }
    let id = match args.n {
        Some(n) if !args.algebra.contains('(') => format!("{}({n})", args.algebra),
        _ => args.algebra.clone(),
    };
    Ok(specfile::AlgebraFile {
        algebra: catalog::build(&id)?,
        generators: Vec::new(),
    })
}

fn fixed(name: &str, want: Mode, mode: Mode, s: GeneratorSet) -> Result<GeneratorSet> {
    if want != mode {
        return Err(Error::precondition(format!(
            "basis '{name}' is a {want:?} basis; use --mode {}",
            mode_name(want)
        )));
    }
    Ok(s)
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Identities => "identities",
        Mode::Centrals => "centrals",
    }
}

/// Resolves a basis name against an algebra.
pub fn resolve_basis(
    name: &str,
    file: &specfile::AlgebraFile,
    mode: Mode,
    max_degree: usize,
) -> Result<GeneratorSet> {
    let a = &file.algebra;
    let s = match name {
        "drensky" => fixed(name, Mode::Identities, mode, families::drensky())?,
        "okhitin" => fixed(name, Mode::Centrals, mode, families::okhitin())?,
        "m2" => match mode {
            Mode::Identities => families::drensky(),
            Mode::Centrals => families::okhitin(),
        },
        "dv-lemma" => fixed(name, Mode::Identities, mode, families::dv_lemma())?,
        "bp-central" => fixed(name, Mode::Centrals, mode, families::bp_central())?,
        "elementary" => match mode {
            Mode::Identities => families::dv_lemma(),
            Mode::Centrals => families::bp_central(),
        },
        "regular" => match a.detect_regular() {
            Regularity::Regular(b) => families::regular(&b.with_group(a.group().clone())?, mode),
            Regularity::NotRegular(w) => {
                return Err(Error::precondition(format!(
                    "{} is not regularly graded: {} at ({}, {})",
                    a.name(),
                    w.reason,
                    w.degrees.0,
                    w.degrees.1
                )))
            }
        },
        "pauli" => pauli::family_pauli(a, max_degree, mode)?,
        "corollary" => families::cyclic_corollary(a, mode)?,
        "corollary-literal" => {
            if a.group().rank() != 1 {
                return Err(Error::precondition(
                    "corollary-literal needs a cyclic grading group",
                ));
            }
            families::cyclic_corollary_literal(a.group().orders()[0], mode)?
        }
        other => {
            if let Some(s) = file.generators.iter().find(|s| s.name == other) {
                if s.mode != mode {
                    return Err(Error::precondition(format!(
                        "generator set '{other}' is a {:?} set",
                        s.mode
                    )));
                }
                s.clone()
            } else if Path::new(other).is_file() {
                let s = specfile::parse_generators(
                    &read_file(Path::new(other))?,
                    a.group(),
                    a.order(),
                )?;
                if s.mode != mode {
                    return Err(Error::precondition(format!(
                        "generator file '{other}' is a {:?} set",
                        s.mode
                    )));
                }
                s
            } else {
                return Err(Error::parse(format!("unknown basis '{other}'")));
            }
        }
    };
    if s.group.orders() != a.group().orders() {
        return Err(Error::precondition(format!(
            "basis '{name}' is graded by {} but {} by {}",
            s.group,
            a.name(),
            a.group()
        )));
    }
    Ok(families::with_off_support(s, a))
}

#[derive(Serialize)]
struct Summary {
    name: String,
    dim: usize,
    group: String,
    order: u32,
    labels: Vec<String>,
    degrees: Vec<String>,
    support: Vec<String>,
    associative: bool,
    graded_division: bool,
    division_failure: Option<String>,
    center_dim: usize,
    regular: bool,
    /// β(g,h) = ζ^k for the row/column order of the group elements.
    bicharacter_exponents: Option<Vec<Vec<u32>>>,
    regularity_failure: Option<String>,
    notes: Vec<String>,
}

fn summary(a: &GradedAlgebra) -> Summary {
    let g = a.group();
    let div = a.check_graded_division();
    let (bichar, reg_fail) = match a.detect_regular() {
        Regularity::Regular(b) => (Some(b.table().to_vec()), None),
        Regularity::NotRegular(w) => (
            None,
            Some(format!(
                "{} at ({}, {})",
                w.reason, w.degrees.0, w.degrees.1
            )),
        ),
    };
    Summary {
        name: a.name().to_string(),
        dim: a.dim(),
        group: g.to_string(),
        order: a.order(),
        labels: a.labels().to_vec(),
        degrees: (0..a.dim()).map(|i| g.format(&a.degree(i))).collect(),
        support: a
            .support()
            .into_iter()
            .map(|d| g.format(&g.element(d)))
            .collect(),
        associative: a.check_associative().is_ok(),
        graded_division: div.is_division,
        division_failure: div.failure,
        center_dim: a.center().len(),
        regular: bichar.is_some(),
        bicharacter_exponents: bichar,
        regularity_failure: reg_fail,
        notes: a.notes().to_vec(),
    }
}

fn build(args: BuildArgs) -> Result<i32> {
    let f = load(&args.algebra)?;
    let a = &f.algebra;
    let text = match args.out.format.unwrap_or(Format::Json) {
        Format::Spec => specfile::export_algebra(a),
        Format::Json => serde_json::to_string_pretty(&summary(a)).expect("serializable") + "\n",
        Format::Tsv => {
            let s = summary(a);
            let mut t = String::new();
            t.push_str(&format!(
                "name\t{}\ndim\t{}\ngroup\t{}\norder\t{}\n",
                s.name, s.dim, s.group, s.order
            ));
            t.push_str(&format!("support\t{}\n", s.support.join(",")));
            t.push_str(&format!(
                "associative\t{}\ngraded_division\t{}\n",
                s.associative, s.graded_division
            ));
            t.push_str(&format!(
                "center_dim\t{}\nregular\t{}\n",
                s.center_dim, s.regular
            ));
            for (l, d) in s.labels.iter().zip(&s.degrees) {
                t.push_str(&format!("basis\t{l}\t{d}\n"));
            }
            t
        }
    };
    emit(&args.out, &text)?;
    Ok(0)
}

fn render_report(r: &VerificationReport, format: Option<Format>) -> Result<String> {
    match format.unwrap_or(Format::Json) {
        Format::Json => Ok(r.to_json() + "\n"),
        Format::Tsv => Ok(r.to_tsv()),
        Format::Spec => Err(Error::parse("reports are written as json or tsv")),
    }
}

fn verify(args: VerifyArgs) -> Result<i32> {
    let f = load(&args.algebra)?;
    let mode: Mode = args.basis.mode.parse()?;
    let s = resolve_basis(&args.basis.basis, &f, mode, args.basis.max_degree)?;
    let opts = VerifyOptions {
        max_degree: args.basis.max_degree,
        jobs: args.jobs,
        ..Default::default()
    };
    let mut r = verify_basis(&f.algebra, &s, &opts)?;
    if args.long_running {
        if args.basis.basis != "pauli" {
            return Err(Error::precondition(
                "--long-running applies to --basis pauli",
            ));
        }
        let seven = pauli::verify_seven(&f.algebra, &opts)?;
        r.assumptions.push(format!(
            "degree-7 check with {} generators",
            seven.generators
        ));
        for a in seven.assumptions {
            if !r.assumptions.contains(&a) {
                r.assumptions.push(a);
            }
        }
        r.members_checked += seven.members_checked;
        r.membership_failures.extend(seven.membership_failures);
        r.multidegrees.extend(seven.multidegrees);
        r.passed &= seven.passed;
        r.wall_clock_ms += seven.wall_clock_ms;
    }
    emit(&args.out, &render_report(&r, args.out.format)?)?;
    Ok(if r.passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct SetView<'a> {
    name: &'a str,
    mode: Mode,
    group: String,
    assumptions: &'a [String],
    s1: Vec<(&'a str, String)>,
    s2: Vec<(&'a str, String)>,
}

fn render_set(s: &GeneratorSet, order: u32, format: Option<Format>) -> String {
    match format.unwrap_or(Format::Spec) {
        Format::Spec => specfile::export_generators(s, order),
        Format::Tsv => s.to_text(),
        Format::Json => {
            let view = |p: &'_ [crate::pitool::Member]| -> Vec<(String, String)> {
                p.iter()
                    .map(|m| (m.family.clone(), m.poly.to_string()))
                    .collect()
            };
            let (s1, s2) = (view(&s.s1), view(&s.s2));
            let v = SetView {
                name: &s.name,
                mode: s.mode,
                group: s.group.to_string(),
                assumptions: &s.assumptions,
                s1: s1.iter().map(|(f, p)| (f.as_str(), p.clone())).collect(),
                s2: s2.iter().map(|(f, p)| (f.as_str(), p.clone())).collect(),
            };
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    }
}

fn list_families(args: FamilyArgs) -> Result<i32> {
    let f = load(&args.algebra)?;
    let mode: Mode = args.basis.mode.parse()?;
    let s = resolve_basis(&args.basis.basis, &f, mode, args.basis.max_degree)?;
    emit(
        &args.out,
        &render_set(&s, f.algebra.order(), args.out.format),
    )?;
    Ok(0)
}

fn run_transfer(args: TransferArgs) -> Result<i32> {
    let f = load(&args.algebra)?;
    let r = load(&AlgebraArgs {
        algebra: args.regular.clone(),
        n: None,
    })?
    .algebra;
    let mode: Mode = args.basis.mode.parse()?;
    let s = resolve_basis(&args.basis.basis, &f, mode, args.basis.max_degree)?;
    let t = transfer::transfer_basis(&s, &r)?;
    if !args.verify {
        let order = crate::scalars::lcm(f.algebra.order(), r.order());
        emit(&args.out, &render_set(&t, order, args.out.format))?;
        return Ok(0);
    }
    let ar = f.algebra.tensor(&r);
    let t = families::with_off_support(t, &ar);
    let opts = VerifyOptions {
        max_degree: args.basis.max_degree,
        jobs: args.jobs,
        ..Default::default()
    };
    let rep = verify_basis(&ar, &t, &opts)?;
    emit(&args.out, &render_report(&rep, args.out.format)?)?;
    Ok(if rep.passed { 0 } else { 1 })
}

fn reduce(args: ReduceArgs) -> Result<i32> {
    let a = load(&args.algebra)?.algebra;
    let p = parse_polynomial(&args.poly, a.group(), a.order())?;
    let red = pauli::pauli_reduce(&a, &p)?;
    let engine = Engine::new(&a, Default::default());
    pauli::replay(&red, Some(&engine))?;
    let text = match args.out.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut v = red.to_json();
            v["replayed"] = serde_json::Value::Bool(true);
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Tsv => {
            let mut t = format!(
                "# input\t{}\n# reduced\t{}\nround\tdegree\tmerged\tbefore\tafter\n",
                red.input(),
                red.polynomial
            );
            for (k, r) in red.rounds.iter().enumerate() {
                t.push_str(&format!(
                    "{k}\t{}\tx{},x{}\t{}\t{}\n",
                    a.group().format(&a.group().element(r.degree)),
                    r.merged.0,
                    r.merged.1,
                    r.before,
                    r.after
                ));
            }
            t
        }
        Format::Spec => return Err(Error::parse("reduce writes json or tsv")),
    };
    emit(&args.out, &text)?;
    Ok(0)
}

fn report(args: ReportArgs) -> Result<i32> {
    let r = VerificationReport::from_json(&read_file(&args.input)?)?;
    emit(&args.out, &render_report(&r, args.out.format)?)?;
    Ok(if r.passed { 0 } else { 1 })
}
