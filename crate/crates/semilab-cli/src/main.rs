//! Command-line surface for the semilab toolkit.
//!
//! Exit codes: 0 on success, 1 when a verification command finds a
//! counterexample, 2 on input errors (unreadable files, parse failures,
//! invalid flags or ranges). JSON output is deterministic apart from the
//! timing fields, which consumers must ignore when comparing runs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use semilab::census::{self, CensusSpec, DedupMode, FilterExpr};
use semilab::classify::{classify_with_profile, ClassificationReport, Flag};
use semilab::fword::{self, FWord, Mat2};
use semilab::green::GreenProfile;
use semilab::pattern::{self, EmbeddingWitness};
use semilab::sgt;

const SCHEMA_VERSION: u32 = 1;

/// Above this length the matrix image of a word is not computed: entries
/// grow as 2^(len/2) and stop being printable long before they stop being
/// representable.
const MATRIX_LEN_LIMIT: u64 = 1 << 20;

/// Ceiling for `f classes --max-len`, which materializes two words per
/// length.
const CLASSES_LEN_LIMIT: u64 = 1 << 16;

#[derive(Parser)]
#[command(
    name = "semilab",
    version,
    about = "Green's relations, amiability analysis, and small-order censuses for finite semigroups"
)]
struct Cli {
    /// Worker threads for parallel census work. The SEMILAB_WORKERS
    /// environment variable, when set, overrides this flag.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one .sgt table: Green partitions, flags, witnesses.
    Analyze {
        /// Path to a .sgt multiplication table.
        path: PathBuf,
        /// Emit the full report as JSON instead of a text summary.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all semigroups of one order, up to isomorphism.
    Enumerate {
        /// Order to enumerate (1 through 7; 6 and up take a long time).
        #[arg(long)]
        order: usize,
        /// Equivalence used for deduplication.
        #[arg(long, value_enum, default_value_t = DedupArg::IsoAndAnti)]
        dedup: DedupArg,
        /// Conjunction of flag names, each optionally negated with '!',
        /// e.g. "amiable,!adequate". Unfiltered when absent.
        #[arg(long)]
        filter: Option<String>,
        /// Retain at most this many matching tables.
        #[arg(long)]
        limit: Option<usize>,
        /// Emit one JSON record per retained table, then a summary record.
        #[arg(long)]
        json: bool,
        /// Write each retained table to this directory as a .sgt file.
        #[arg(long, value_name = "DIR")]
        export_sgt: Option<PathBuf>,
    },
    /// Re-verify the structural guarantees over the full census.
    Verify {
        /// Largest order to enumerate (default 5; 7 needs --long).
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        /// Permit the enormous order-7 run.
        #[arg(long)]
        long: bool,
        /// Emit the verification report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Operations on the infinite two-generator model F.
    #[command(subcommand)]
    F(FCommand),
}

#[derive(Subcommand)]
enum FCommand {
    /// Multiply two words given in the (xy)^n grammar and show the
    /// normal-form product with its matrix image.
    Mul {
        x: String,
        y: String,
        #[arg(long)]
        json: bool,
    },
    /// List every word up to a length bound with its one-sided identity
    /// idempotents (the class invariants of the starred relations).
    Classes {
        #[arg(long, default_value_t = 6)]
        max_len: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the distinctness, star-window, and power suites.
    Verify {
        /// Window bound passed to all three suites (at least 4).
        #[arg(long, default_value_t = 12)]
        window: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DedupArg {
    Iso,
    IsoAndAnti,
}

impl From<DedupArg> for DedupMode {
    fn from(d: DedupArg) -> DedupMode {
        match d {
            DedupArg::Iso => DedupMode::Iso,
            DedupArg::IsoAndAnti => DedupMode::IsoAndAnti,
        }
    }
}

/// Failure carrying its process exit code: 1 for a found counterexample,
/// 2 for input problems.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(workers) = effective_workers(cli.workers)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| Failure::input(format!("cannot size the worker pool: {e}")))?;
    }
    match cli.command {
        Command::Analyze { path, json } => cmd_analyze(&path, json),
        Command::Enumerate {
            order,
            dedup,
            filter,
            limit,
            json,
            export_sgt,
        } => cmd_enumerate(order, dedup.into(), filter, limit, json, export_sgt),
        Command::Verify {
            max_order,
            long,
            json,
        } => cmd_verify(max_order, long, json),
        Command::F(sub) => match sub {
            FCommand::Mul { x, y, json } => cmd_f_mul(&x, &y, json),
            FCommand::Classes { max_len, json } => cmd_f_classes(max_len, json),
            FCommand::Verify { window, json } => cmd_f_verify(window, json),
        },
    }
}

fn effective_workers(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    let chosen = match std::env::var("SEMILAB_WORKERS") {
        Ok(raw) => Some(raw.parse::<usize>().map_err(|_| {
            Failure::input(format!("SEMILAB_WORKERS must be a positive integer, got {raw:?}"))
        })?),
        Err(_) => flag,
    };
    if chosen == Some(0) {
        return Err(Failure::input("worker count must be at least 1"));
    }
    Ok(chosen)
}

// ---- analyze ---------------------------------------------------------

#[derive(serde::Serialize)]
struct InputDescriptor {
    path: String,
    name: Option<String>,
    order: usize,
}

#[derive(serde::Serialize)]
struct Timings {
    analyze_ms: u128,
}

/// Everything `analyze` knows about one table. Field order is the output
/// order and is part of the interface; `timings` is excluded from golden
/// comparisons.
#[derive(serde::Serialize)]
struct AnalysisReport<'a> {
    schema_version: u32,
    input: InputDescriptor,
    green: &'a GreenProfile,
    classification: &'a ClassificationReport,
    m_embedding: Option<&'a EmbeddingWitness>,
    timings: Timings,
}

fn cmd_analyze(path: &Path, json: bool) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let table = sgt::parse_table(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;

    let started = Instant::now();
    let profile = GreenProfile::compute(&table);
    let classification = classify_with_profile(&table, &profile);
    let m_embedding = pattern::find_m_relaxed(&table);
    let elapsed = started.elapsed();

    if json {
        let report = AnalysisReport {
            schema_version: SCHEMA_VERSION,
            input: InputDescriptor {
                path: path.display().to_string(),
                name: table.name().map(str::to_owned),
                order: table.order(),
            },
            green: &profile,
            classification: &classification,
            m_embedding: m_embedding.as_ref(),
            timings: Timings {
                analyze_ms: elapsed.as_millis(),
            },
        };
        println!("{}", serde_json::to_string(&report).expect("serializable report"));
        return Ok(());
    }

    match table.name() {
        Some(name) => println!("table \"{name}\" of order {}", table.order()),
        None => println!("table of order {}", table.order()),
    }
    println!("idempotents: {:?}", table.idempotents());
    println!("L:  {}", profile.l);
    println!("R:  {}", profile.r);
    println!("L*: {}", profile.l_star);
    println!("R*: {}", profile.r_star);
    println!("L~: {}", profile.l_tilde);
    println!("R~: {}", profile.r_tilde);
    if let Some(maps) = &profile.maps {
        println!("x_l: {:?}", maps.ell);
        println!("x_r: {:?}", maps.r);
    }
    let (set, clear): (Vec<Flag>, Vec<Flag>) = Flag::ALL
        .into_iter()
        .partition(|&f| classification.flags.get(f));
    println!("flags set:   {}", flag_list(&set));
    println!("flags clear: {}", flag_list(&clear));
    for fw in &classification.witnesses {
        println!("why not {}: {}", fw.flag, fw.witness);
    }
    match &m_embedding {
        Some(w) => println!("contains M via {:?}", w.map),
        None => println!("avoids M"),
    }
    Ok(())
}

fn flag_list(flags: &[Flag]) -> String {
    if flags.is_empty() {
        return "(none)".into();
    }
    let mut out = String::new();
    for (i, f) in flags.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{f}");
    }
    out
}

// ---- enumerate -------------------------------------------------------

/// Trailing record after the per-table NDJSON lines.
#[derive(serde::Serialize)]
struct EnumerateSummary<'a> {
    schema_version: u32,
    order: usize,
    dedup: DedupMode,
    filter: String,
    total_tables: usize,
    matched: usize,
    per_filter: &'a [census::FilterCount],
    examples_emitted: usize,
    elapsed_ms: u128,
}

fn cmd_enumerate(
    order: usize,
    dedup: DedupMode,
    filter: Option<String>,
    limit: Option<usize>,
    json: bool,
    export_sgt: Option<PathBuf>,
) -> Result<(), Failure> {
    let filter: FilterExpr = match &filter {
        Some(text) => text
            .parse()
            .map_err(|e| Failure::input(format!("bad --filter: {e}")))?,
        None => FilterExpr::default(),
    };
    let spec = CensusSpec {
        order,
        dedup,
        filter,
        limit,
    };
    let result = census::run_census(&spec).map_err(|e| Failure::input(e.to_string()))?;

    if let Some(dir) = &export_sgt {
        std::fs::create_dir_all(dir)
            .map_err(|e| Failure::input(format!("cannot create {}: {e}", dir.display())))?;
        for (k, example) in result.examples.iter().enumerate() {
            let named = example
                .table
                .clone()
                .with_name(format!("order{order}-{k:04}"));
            let path = dir.join(format!("order{order}-{k:04}.sgt"));
            std::fs::write(&path, sgt::format(&named))
                .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
        }
    }

    if json {
        for example in &result.examples {
            println!(
                "{}",
                serde_json::to_string(example).expect("serializable table record")
            );
        }
        let summary = EnumerateSummary {
            schema_version: SCHEMA_VERSION,
            order,
            dedup,
            filter: result.spec.filter.to_string(),
            total_tables: result.total_tables,
            matched: result.matched,
            per_filter: &result.per_filter,
            examples_emitted: result.examples.len(),
            elapsed_ms: result.elapsed_ms,
        };
        println!("{}", serde_json::to_string(&summary).expect("serializable summary"));
        return Ok(());
    }

    let filter_text = if result.spec.filter.atoms.is_empty() {
        "(none)".to_string()
    } else {
        result.spec.filter.to_string()
    };
    println!(
        "order {order}, dedup {dedup}, filter {filter_text}: {} of {} tables match ({} ms)",
        result.matched, result.total_tables, result.elapsed_ms
    );
    for fc in &result.per_filter {
        println!("  {}: {} tables", fc.atom, fc.count);
    }
    for (k, example) in result.examples.iter().enumerate() {
        let flags: Vec<Flag> = Flag::ALL
            .into_iter()
            .filter(|&f| example.report.flags.get(f))
            .collect();
        println!("match {k}: flags {}", flag_list(&flags));
        print!("{}", sgt::format(&example.table));
    }
    Ok(())
}

// ---- verify ----------------------------------------------------------

#[derive(serde::Serialize)]
struct VerifyOutput<'a> {
    schema_version: u32,
    report: &'a census::VerifyReport,
    elapsed_ms: u128,
}

fn cmd_verify(max_order: usize, long: bool, json: bool) -> Result<(), Failure> {
    let started = Instant::now();
    let report = census::verify(max_order, long).map_err(|e| Failure::input(e.to_string()))?;
    let elapsed = started.elapsed();

    if json {
        let out = VerifyOutput {
            schema_version: SCHEMA_VERSION,
            report: &report,
            elapsed_ms: elapsed.as_millis(),
        };
        println!("{}", serde_json::to_string(&out).expect("serializable report"));
    } else {
        for s in &report.stats {
            println!(
                "order {}: {} tables, {} amiable, {} amiable and not adequate",
                s.order, s.tables, s.amiable, s.amiable_not_adequate
            );
        }
        match &report.failure {
            None => println!(
                "all suites passed on every semigroup up to order {max_order} ({} ms)",
                elapsed.as_millis()
            ),
            Some(f) => println!("{f}"),
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::verification("a verification suite found a counterexample"))
    }
}

// ---- f ---------------------------------------------------------------

fn parse_word(text: &str) -> Result<FWord, Failure> {
    text.parse()
        .map_err(|e| Failure::input(format!("cannot parse {text:?}: {e}")))
}

fn matrix_strings(m: &Mat2) -> [[String; 2]; 2] {
    [
        [m.e11.to_string(), m.e12.to_string()],
        [m.e21.to_string(), m.e22.to_string()],
    ]
}

#[derive(serde::Serialize)]
struct MulOutput {
    schema_version: u32,
    x: String,
    y: String,
    product: String,
    length: u64,
    /// Omitted (null) when the factors are too long for the matrix image
    /// to be worth materializing.
    matrix: Option<[[String; 2]; 2]>,
}

fn cmd_f_mul(x: &str, y: &str, json: bool) -> Result<(), Failure> {
    let xw = parse_word(x)?;
    let yw = parse_word(y)?;
    let product = xw * yw;
    let matrix = (product.len() <= MATRIX_LEN_LIMIT).then(|| product.to_matrix());

    if json {
        let out = MulOutput {
            schema_version: SCHEMA_VERSION,
            x: xw.to_string(),
            y: yw.to_string(),
            product: product.to_string(),
            length: product.len(),
            matrix: matrix.as_ref().map(matrix_strings),
        };
        println!("{}", serde_json::to_string(&out).expect("serializable product"));
        return Ok(());
    }
    println!("{xw} * {yw} = {product}");
    match &matrix {
        Some(m) => println!("matrix: {m}"),
        None => println!(
            "matrix: omitted, length {} exceeds {MATRIX_LEN_LIMIT}",
            product.len()
        ),
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct ClassRow {
    word: String,
    ell: String,
    r: String,
}

#[derive(serde::Serialize)]
struct ClassesOutput {
    schema_version: u32,
    max_len: u64,
    classes: Vec<ClassRow>,
}

fn cmd_f_classes(max_len: u64, json: bool) -> Result<(), Failure> {
    if max_len == 0 || max_len > CLASSES_LEN_LIMIT {
        return Err(Failure::input(format!(
            "--max-len must be in 1..={CLASSES_LEN_LIMIT}"
        )));
    }
    let words = fword::window(max_len);
    let rows: Vec<ClassRow> = words
        .iter()
        .map(|w| ClassRow {
            word: w.to_string(),
            ell: w.ell().to_string(),
            r: w.r().to_string(),
        })
        .collect();
    if json {
        let out = ClassesOutput {
            schema_version: SCHEMA_VERSION,
            max_len,
            classes: rows,
        };
        println!("{}", serde_json::to_string(&out).expect("serializable classes"));
        return Ok(());
    }
    println!("{:<16} {:<8} {:<8}", "word", "x_l", "x_r");
    for row in &rows {
        println!("{:<16} {:<8} {:<8}", row.word, row.ell, row.r);
    }
    println!("words of equal x_l share an L*-class; of equal x_r, an R*-class");
    Ok(())
}

#[derive(serde::Serialize)]
struct FVerifyOutput {
    schema_version: u32,
    window: u64,
    distinctness: bool,
    star_window: bool,
    power_distinctness: bool,
    matrix_homomorphism: bool,
    elapsed_ms: u128,
}

fn cmd_f_verify(window: u64, json: bool) -> Result<(), Failure> {
    if window < 4 {
        return Err(Failure::input("--window must be at least 4"));
    }
    let started = Instant::now();
    let mut failures = Vec::new();
    let distinctness = fword::verify_f_distinct(window);
    if let Err(e) = &distinctness {
        failures.push(format!("distinctness: {e}"));
    }
    let star = fword::verify_f_star_window(window);
    if let Err(e) = &star {
        failures.push(format!("star window: {e}"));
    }
    let power = fword::verify_power_distinctness(window.max(2));
    if let Err(e) = &power {
        failures.push(format!("power distinctness: {e}"));
    }
    let hom = fword::verify_matrix_homomorphism(window);
    if let Err(e) = &hom {
        failures.push(format!("matrix homomorphism: {e}"));
    }
    let elapsed = started.elapsed();

    if json {
        let out = FVerifyOutput {
            schema_version: SCHEMA_VERSION,
            window,
            distinctness: distinctness.is_ok(),
            star_window: star.is_ok(),
            power_distinctness: power.is_ok(),
            matrix_homomorphism: hom.is_ok(),
            elapsed_ms: elapsed.as_millis(),
        };
        println!("{}", serde_json::to_string(&out).expect("serializable outcome"));
    } else {
        println!(
            "window {window}: distinctness {}, star window {}, power distinctness {}, matrix homomorphism {} ({} ms)",
            verdict(distinctness.is_ok()),
            verdict(star.is_ok()),
            verdict(power.is_ok()),
            verdict(hom.is_ok()),
            elapsed.as_millis()
        );
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::verification(failures.join("; ")))
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The exit-code mapping for verification failures cannot be driven
    /// end to end (the suites hold on real input), so the classification
    /// of failures is pinned here.
    #[test]
    fn failure_codes() {
        assert_eq!(Failure::input("x").code, 2);
        assert_eq!(Failure::verification("x").code, 1);
    }

    #[test]
    fn worker_zero_is_rejected() {
        assert!(effective_workers(Some(0)).is_err());
        assert!(matches!(effective_workers(Some(3)), Ok(Some(3))));
        assert!(matches!(effective_workers(None), Ok(None)));
    }
}
