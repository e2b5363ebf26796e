use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use dpt_core::catalog;
use dpt_core::compound::Policy;
use dpt_core::format::{self, MotifFile};
use dpt_core::lattice::{Matrix2, WrapVector};
use dpt_core::motif::{validate, CrossingId, TorusDiagram};
use dpt_core::moves::{self, FuzzConfig, GaugeAssignment, MoveSite, Verdict};
use dpt_core::report::invariant_report;
use dpt_core::svg::axis_svg;
use dpt_core::DptError;

const USAGE: u8 = 1;
const INVALID: u8 = 2;
const INAPPLICABLE: u8 = 3;
const FUZZ_FAILURE: u8 = 4;

#[derive(Parser)]
#[command(name = "dpt", version, about = "Doubly periodic tangle motifs on the flat torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a motif file; violations go to standard error.
    Validate { file: String },
    /// Print the invariant report of a motif file or catalog entry.
    Report {
        file: String,
        #[arg(long, value_enum, default_value_t = PolicyArg::Linking)]
        policy: PolicyArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Render the axis-motif as SVG.
    Axis {
        file: String,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, value_enum, default_value_t = PolicyArg::Linking)]
        policy: PolicyArg,
    },
    /// Apply one equivalence move and write the result.
    Transform(TransformArgs),
    /// Random walks of equivalence moves, checking the invariants after each step.
    Fuzz {
        /// A motif file, a catalog entry, or `catalog` for every entry.
        target: String,
        #[arg(long, default_value_t = 100)]
        walks: usize,
        #[arg(long, default_value_t = 20)]
        length: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = PolicyArg::Linking)]
        policy: PolicyArg,
    },
    /// Built-in motifs.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args)]
#[command(group(ArgGroup::new("op").required(true).args(["rebase", "cover", "gauge", "site"])))]
struct TransformArgs {
    file: String,
    /// Basis change "m11 m12 m21 m22".
    #[arg(long)]
    rebase: Option<String>,
    /// Sublattice "l11 l12 l21 l22" (columns span it).
    #[arg(long)]
    cover: Option<String>,
    /// Crossing shifts, e.g. "c0=1,0 c3=0,-1".
    #[arg(long)]
    gauge: Option<String>,
    /// Reidemeister move site, e.g. "r1+:e0:left:1" or "r2-:c0:c1".
    #[arg(long = "move")]
    site: Option<String>,
    /// Permit orientation-reversing basis changes.
    #[arg(long)]
    allow_reflection: bool,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Show { name: String },
    Export { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Linking,
    Crossing,
}

impl From<PolicyArg> for Policy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Linking => Policy::LinkingAdjacency,
            PolicyArg::Crossing => Policy::CrossingAdjacency,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: USAGE, message: message.into() }
    }
}

impl From<DptError> for Failure {
    fn from(e: DptError) -> Self {
        let code = match e {
            DptError::Inapplicable(_)
            | DptError::NotUnimodular(_)
            | DptError::OrientationReversing(_)
            | DptError::InvalidCover(_) => INAPPLICABLE,
            _ => INVALID,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            // The reader went away; nothing left to report.
            return Failure { code: 0, message: String::new() };
        }
        DptError::from(e).into()
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            if !f.message.is_empty() {
                eprintln!("dpt: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Validate { file } => {
            let text = read(&file)?;
            let parsed = format::parse_unchecked(&text)?;
            let report = validate(&parsed.diagram);
            if report.is_ok() {
                writeln!(out, "ok")?;
                Ok(())
            } else {
                for v in &report.violations {
                    eprintln!("{v}");
                }
                Err(Failure { code: INVALID, message: format!("{} violation(s)", report.violations.len()) })
            }
        }
        Command::Report { file, policy, format } => {
            let d = load(&file)?.diagram;
            let report = invariant_report(&d, policy.into())?;
            match format {
                FormatArg::Text => write!(out, "{}", report.to_text())?,
                FormatArg::Structured => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"))?
                }
            }
            Ok(())
        }
        Command::Axis { file, svg, policy } => {
            let d = load(&file)?.diagram;
            let report = invariant_report(&d, policy.into())?;
            let axis = report
                .axis_motif
                .ok_or_else(|| Failure { code: INVALID, message: "axis-motif undetermined".into() })?;
            fs::write(&svg, axis_svg(&d.name, &axis))?;
            writeln!(out, "{}", axis.describe())?;
            Ok(())
        }
        Command::Transform(args) => transform(args),
        Command::Fuzz { target, walks, length, seed, policy } => fuzz(&target, walks, length, seed, policy, out),
        Command::Catalog(c) => catalog_command(c, out),
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { code: INVALID, message: format!("cannot read {path}: {e}") })
}

/// A path on disk, or else the name of a catalog entry.
fn load(target: &str) -> Result<MotifFile, Failure> {
    if Path::new(target).exists() {
        return Ok(format::parse_file(&read(target)?)?);
    }
    match catalog::entry(target) {
        Ok(e) => Ok(MotifFile { diagram: e.diagram(), source: Some(e.source.to_string()) }),
        Err(_) => Err(Failure { code: INVALID, message: format!("{target}: no such file or catalog entry") }),
    }
}

fn parse_matrix(text: &str) -> Result<Matrix2, Failure> {
    let v: Vec<i64> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::usage(format!("matrix {text:?}: expected four integers")))?;
    match v.as_slice() {
        &[a, b, c, d] => Ok(Matrix2::new(a, b, c, d)),
        _ => Err(Failure::usage(format!("matrix {text:?}: expected four integers"))),
    }
}

/// `c0=1,0 c3=0,-1`; entries may also be separated by `;`.
fn parse_gauge(text: &str) -> Result<GaugeAssignment, Failure> {
    let bad = || Failure::usage(format!("gauge {text:?}: expected entries like c0=1,-1"));
    let mut g = GaugeAssignment::new();
    for item in text.split(|c: char| c.is_whitespace() || c == ';').filter(|s| !s.is_empty()) {
        let (id, shift) = item.split_once('=').ok_or_else(bad)?;
        let id: u32 = id.strip_prefix('c').unwrap_or(id).parse().map_err(|_| bad())?;
        let (du, dv) = shift.split_once(',').ok_or_else(bad)?;
        let w = WrapVector::new(du.trim().parse().map_err(|_| bad())?, dv.trim().parse().map_err(|_| bad())?);
        g.insert(CrossingId(id), w);
    }
    Ok(g)
}

fn transform(args: TransformArgs) -> Outcome {
    let file = load(&args.file)?;
    let d = &file.diagram;
    let result: TorusDiagram = if let Some(m) = &args.rebase {
        moves::rebase(d, &parse_matrix(m)?, args.allow_reflection)?
    } else if let Some(l) = &args.cover {
        moves::cover(d, &parse_matrix(l)?)?.diagram
    } else if let Some(g) = &args.gauge {
        moves::gauge_shift(d, &parse_gauge(g)?)
    } else if let Some(s) = &args.site {
        let site: MoveSite = s.parse().map_err(Failure::usage)?;
        moves::apply_move(d, &site)?
    } else {
        return Err(Failure::usage("one of --rebase, --cover, --gauge, --move is required"));
    };
    let out = MotifFile { diagram: result, source: file.source };
    fs::write(&args.output, format::serialize_file(&out))?;
    Ok(())
}

fn fuzz(target: &str, walks: usize, length: usize, seed: u64, policy: PolicyArg, out: &mut impl Write) -> Outcome {
    let runs: Vec<(String, TorusDiagram)> = if target == "catalog" && !Path::new(target).exists() {
        catalog::entries().iter().map(|e| (e.name.to_string(), e.diagram())).collect()
    } else {
        vec![(target.to_string(), load(target)?.diagram)]
    };
    let cfg = FuzzConfig { policy: policy.into(), ..FuzzConfig::default() };
    let policy_flag = match policy {
        PolicyArg::Linking => "",
        PolicyArg::Crossing => " --policy crossing",
    };
    let mut failures = 0;
    for (name, d) in &runs {
        let outcomes = moves::fuzz_many(d, walks, length, seed, &cfg)?;
        let count = |f: fn(&Verdict) -> bool| outcomes.iter().filter(|o| f(&o.verdict)).count();
        let failed = count(Verdict::is_fail);
        let excluded = count(|v| matches!(v, Verdict::Excluded { .. }));
        writeln!(out, "{name}: {walks} walks, {} pass, {failed} fail, {excluded} excluded", walks - failed - excluded)?;
        for o in outcomes.iter().filter(|o| o.verdict.is_fail()) {
            writeln!(out, "  seed {}: {}", o.seed, o.verdict)?;
            for line in &o.log {
                writeln!(out, "    {line}")?;
            }
            writeln!(out, "  reproduce: dpt fuzz {name} --walks 1 --length {length} --seed {}{policy_flag}", o.seed)?;
        }
        failures += failed;
    }
    if failures > 0 {
        return Err(Failure { code: FUZZ_FAILURE, message: format!("{failures} walk(s) failed") });
    }
    Ok(())
}

fn catalog_command(c: CatalogCommand, out: &mut impl Write) -> Outcome {
    match c {
        CatalogCommand::List => {
            writeln!(out, "catalog version {}", catalog::CATALOG_VERSION)?;
            for e in catalog::entries() {
                writeln!(out, "{:<10} {}", e.name, e.source)?;
            }
        }
        CatalogCommand::Show { name } => {
            let e = catalog::entry(&name)?;
            let file = MotifFile { diagram: e.diagram(), source: Some(e.source.to_string()) };
            write!(out, "{}", format::serialize_file(&file))?;
        }
        CatalogCommand::Export { dir } => {
            fs::create_dir_all(&dir)?;
            for e in catalog::entries() {
                let file = MotifFile { diagram: e.diagram(), source: Some(e.source.to_string()) };
                fs::write(dir.join(format!("{}.json", e.name)), format::serialize_file(&file))?;
            }
            writeln!(out, "wrote {} motifs to {}", catalog::entries().len(), dir.display())?;
        }
    }
    Ok(())
}
