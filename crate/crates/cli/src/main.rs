use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use fca_core::families::{contranominal, family_cover, family_k1, family_kk, predicted_counts_kk};
use fca_core::generalization::parse_scheme_blocks;
use fca_core::{
    count_concepts, enumerate_concepts, export_dot, generalize, merge_exists, pair_increase_report,
    parse_cxt, write_cxt, BitSet, FcaError, FormalContext, GeneralizationScheme, Mode, ObjectSet,
};

/// Largest table2 row computed without `--big`.
const SMALL_TABLE_MAX: usize = 16;
const BIG_TABLE_MAX: usize = 24;

/// Reference rows `(n, |B(K)|, |B(K ge)|, increase)` of the K1 family counts.
const REFERENCE_ROWS: [(usize, u64, u64, u64); 6] = [
    (2, 7, 8, 1),
    (3, 13, 16, 3),
    (4, 25, 32, 7),
    (5, 49, 64, 15),
    (10, 1537, 2048, 511),
    (20, 1572865, 2097152, 524287),
];

#[derive(Parser)]
#[command(
    name = "fca",
    version,
    about = "Concept lattices and attribute generalization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the number of concepts of a context (`-` reads stdin).
    Count { context: PathBuf },
    /// List concepts in lectic order of extents.
    Concepts {
        context: PathBuf,
        /// Also write the Hasse diagram as Graphviz DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Apply a generalization scheme and print the resulting context.
    Generalize {
        context: PathBuf,
        /// Lines `name = m1, m2, ...`; attributes not listed are kept as they are.
        #[arg(long)]
        scheme: PathBuf,
        /// exists, forall or alpha:p/q
        #[arg(long, default_value = "exists")]
        mode: Mode,
    },
    /// Account for the concepts gained by merging two attributes with exists.
    AnalyzePair {
        context: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Print a family context in .cxt form.
    Family {
        #[command(subcommand)]
        kind: FamilyKind,
    },
    /// Recompute the K1 family counts for n = 2..=max-n and check every row.
    Table2 {
        #[arg(long)]
        max_n: usize,
        /// Allow rows beyond n = 16 (up to 24).
        #[arg(long)]
        big: bool,
    },
}

#[derive(Subcommand)]
enum FamilyKind {
    K1 {
        #[arg(long)]
        n: usize,
    },
    Kk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Columns m1, m2 given as comma-separated object numbers in 1..n.
    Cover {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        m1: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        m2: Vec<usize>,
    },
    Contranominal {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(PathBuf, io::Error),
    Core(FcaError),
    /// Rows already printed; details went to stderr.
    Mismatch,
}

impl From<FcaError> for CliError {
    fn from(e: FcaError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(FcaError::Verification(_)) | CliError::Mismatch => 2,
            _ => 1,
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io(path.into(), e))?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.into(), e))
}

fn load(path: &Path) -> Result<FormalContext, CliError> {
    Ok(parse_cxt(&read_input(path)?)?)
}

fn braces(names: Vec<&str>) -> String {
    format!("{{{}}}", names.join(", "))
}

fn list_concepts(path: &Path, dot: Option<&Path>) -> Result<String, CliError> {
    let ctx = load(path)?;
    let lat = enumerate_concepts(&ctx)?;
    let mut out = String::new();
    for c in lat.concepts() {
        let _ = writeln!(
            out,
            "{} {}",
            braces(ctx.object_labels(c.extent())),
            braces(ctx.attribute_labels(c.intent()))
        );
    }
    if let Some(dot) = dot {
        std::fs::write(dot, export_dot(&lat)).map_err(|e| CliError::Io(dot.into(), e))?;
    }
    Ok(out)
}

fn run_generalize(path: &Path, scheme: &Path, mode: Mode) -> Result<String, CliError> {
    let ctx = load(path)?;
    let blocks = parse_scheme_blocks(&read_input(scheme)?)?;
    let scheme = GeneralizationScheme::merging(&ctx, blocks, mode)?;
    Ok(write_cxt(&generalize(&ctx, &scheme)?))
}

fn analyze_pair(path: &Path, a: &str, b: &str) -> Result<String, CliError> {
    let ctx = load(path)?;
    let r = pair_increase_report(&ctx, a, b)?;
    let mut out = String::new();
    let _ = writeln!(out, "pair            {} + {}", r.a, r.b);
    let _ = writeln!(out, "extent sizes    {} {}", r.size_a, r.size_b);
    let _ = writeln!(out, "concepts K00    {}", r.count_k00);
    let _ = writeln!(out, "concepts K12    {}", r.count_k12);
    let _ = writeln!(out, "concepts merged {}", r.count_k0s);
    let _ = writeln!(out, "h(a) h(b)       {} {}", r.h_a, r.h_b);
    let _ = writeln!(out, "h(a∩b) h(a∪b)   {} {}", r.h_a_and_b, r.h_a_or_b);
    let _ = writeln!(
        out,
        "h(a,b)          {} (inclusion-exclusion {})",
        r.h_pair, r.h_pair_formula
    );
    let _ = writeln!(
        out,
        "increase        {} (bound {})",
        r.realized_increase, r.upper_bound
    );
    let _ = writeln!(out, "d0 d1 d2        {} {} {}", r.d0, r.d1, r.d2);
    out.push('\n');
    for (key, value) in r.key_values() {
        let _ = writeln!(out, "{key}={value}");
    }
    Ok(out)
}

fn object_numbers(n: usize, numbers: &[usize]) -> Result<ObjectSet, CliError> {
    if let Some(bad) = numbers.iter().find(|&&i| i == 0 || i > n) {
        return Err(CliError::Usage(format!("object number {bad} outside 1..{n}")));
    }
    Ok(ObjectSet::from_bits(BitSet::from_indices(
        n,
        numbers.iter().map(|i| i - 1),
    )))
}

fn family(kind: &FamilyKind) -> Result<String, CliError> {
    let ctx = match kind {
        FamilyKind::K1 { n } => family_k1(*n)?,
        FamilyKind::Kk { n, k } => family_kk(*n, *k)?,
        FamilyKind::Cover { n, m1, m2 } => {
            let family = family_cover(*n, &object_numbers(*n, m1)?, &object_numbers(*n, m2)?)?;
            if family.comparable {
                eprintln!("warning: m1 and m2 are comparable");
            }
            family.context
        }
        FamilyKind::Contranominal { n } => contranominal(*n)?,
    };
    Ok(write_cxt(&ctx))
}

fn table2(max_n: usize, big: bool, out: &mut impl Write) -> Result<(), CliError> {
    let limit = if big { BIG_TABLE_MAX } else { SMALL_TABLE_MAX };
    if !(2..=limit).contains(&max_n) {
        let hint = if big { "" } else { " (use --big for larger n)" };
        return Err(CliError::Usage(format!("--max-n must be in 2..={limit}{hint}")));
    }
    let mut mismatches = 0;
    let _ = writeln!(
        out,
        "{:>3} {:>10} {:>10} {:>10}",
        "n", "|B(K)|", "|B(Kge)|", "increase"
    );
    for n in 2..=max_n {
        let k = family_k1(n)?;
        let initial = count_concepts(&k);
        let generalized = count_concepts(&merge_exists(&k, "m1", "m2", "m12")?);
        let increase = generalized as i64 - initial as i64;
        let _ = writeln!(out, "{n:>3} {initial:>10} {generalized:>10} {increase:>10}");
        let _ = out.flush();
        let p = predicted_counts_kk(n, 1)?;
        let mut expected = vec![(
            p.initial_count,
            p.generalized_count,
            p.increase as i64,
            "closed form",
        )];
        if let Some(&(_, i, g, d)) = REFERENCE_ROWS.iter().find(|row| row.0 == n) {
            expected.push((i, g, d as i64, "reference row"));
        }
        for (i, g, d, source) in expected {
            if (initial, generalized, increase) != (i, g, d) {
                eprintln!("mismatch at n={n}: {source} says {i} {g} {d}");
                mismatches += 1;
            }
        }
    }
    if mismatches > 0 {
        return Err(CliError::Mismatch);
    }
    Ok(())
}

fn run(command: Command) -> Result<(), CliError> {
    let mut stdout = io::stdout().lock();
    let text = match command {
        Command::Count { context } => format!("{}\n", count_concepts(&load(&context)?)),
        Command::Concepts { context, dot } => list_concepts(&context, dot.as_deref())?,
        Command::Generalize {
            context,
            scheme,
            mode,
        } => run_generalize(&context, &scheme, mode)?,
        Command::AnalyzePair { context, a, b } => analyze_pair(&context, &a, &b)?,
        Command::Family { kind } => family(&kind)?,
        Command::Table2 { max_n, big } => return table2(max_n, big, &mut stdout),
    };
    let _ = stdout.write_all(text.as_bytes());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Io(path, err) => eprintln!("error: {}: {err}", path.display()),
                CliError::Core(err) => eprintln!("error: {err}"),
                CliError::Mismatch => eprintln!("error: table does not match"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
