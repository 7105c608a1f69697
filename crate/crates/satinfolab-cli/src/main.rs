//! Command-line front end: brute-force solving, relation enumeration,
//! lookup-table builds, bit-string/instance-family round trips and the
//! bit-budget formulas, each with an optional JSON run report.
//!
//! Exit codes: 0 success for non-solve commands, 10 satisfiable, 20
//! unsatisfiable, 1 usage/parse/other errors, 2 resource caps.

use std::env;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use satinfolab::codec::{
    accessible_info, bound15, content_exceeds, crossover, decode_instance, info_production,
    lambert_w, logarithmic_length, n_lower_bound, paper_bit_length, permutation_info, sat_content,
    smallest_stable_bound15_n, uniform_length, Decoded, PermutationInfo,
};
use satinfolab::dimacs::parse_dimacs;
use satinfolab::machines::{dump_tape5, enumerate_relation, EnumerationLimits};
use satinfolab::oracle::OracleError;
use satinfolab::table::{
    build_table_with_cap, read_table, write_table, LeafValue, Table, TableError, TableStats,
    DEFAULT_TABLE_DEPTH_CAP,
};
use satinfolab::trbs::{
    census, decode_trbs, encode_trbs, random_bits, read_batch, write_batch, CensusReport,
    FlipPattern, TrbsError, TrbsMode, CENSUS_HEADER, PATTERN_FAMILY, TRBS_MAX_N,
};
use satinfolab::{BitString, Oracle, SolveResult};

const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;
const EXIT_ERROR: u8 = 1;
const EXIT_CAP: u8 = 2;

/// Bumped whenever the shape of the JSON report changes.
const ARTIFACT_VERSION: u32 = 1;

/// Overrides the brute-force solver's variable-count ceiling.
const ORACLE_CAP_ENV: &str = "SATINFOLAB_ORACLE_CAP";

#[derive(Parser)]
#[command(
    name = "satinfolab",
    version,
    about = "Measure the information content of small SAT instances",
    propagate_version = true
)]
struct Cli {
    /// Emit a JSON run report on stdout instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance by brute force (exit 10 sat, 20 unsat).
    Solve(SolveArgs),
    /// Stream the instance/assignment relation as five-symbol lines.
    Enumerate(EnumerateArgs),
    /// Build, query or summarize a complete lookup table.
    Table {
        #[command(subcommand)]
        action: TableAction,
    },
    /// Encode bit strings as instance families and read them back.
    Trbs {
        #[command(subcommand)]
        action: TrbsAction,
    },
    /// Evaluate one of the bit-budget formulas.
    Metrics {
        #[command(subcommand)]
        metric: Metric,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // --help and --version arrive here too; only real usage
            // errors should exit nonzero.
            let code = if err.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err))
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    match cli.command {
        Command::Solve(args) => cmd_solve(args, json),
        Command::Enumerate(args) => cmd_enumerate(args, json),
        Command::Table { action } => match action {
            TableAction::Build(args) => cmd_table_build(args, json),
            TableAction::Lookup(args) => cmd_table_lookup(args, json),
            TableAction::Stats(args) => cmd_table_stats(args, json),
        },
        Command::Trbs { action } => match action {
            TrbsAction::Encode(args) => cmd_trbs_encode(args, json),
            TrbsAction::Decode(args) => cmd_trbs_decode(args, json),
            TrbsAction::Census(args) => cmd_trbs_census(args, json),
            TrbsAction::Roundtrip(args) => cmd_trbs_roundtrip(args, json),
        },
        Command::Metrics { metric } => cmd_metrics(metric, json),
    }
}

/// Resource-cap errors exit 2; everything else exits 1.
fn classify(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(oracle) = cause.downcast_ref::<OracleError>() {
            if matches!(oracle, OracleError::CapExceeded { .. }) {
                return EXIT_CAP;
            }
        }
        if let Some(table) = cause.downcast_ref::<TableError>() {
            if matches!(
                table,
                TableError::DepthOutOfRange { .. }
                    | TableError::Oracle(OracleError::CapExceeded { .. })
            ) {
                return EXIT_CAP;
            }
        }
        if let Some(trbs) = cause.downcast_ref::<TrbsError>() {
            if matches!(
                trbs,
                TrbsError::FamilyTooLarge { .. }
                    | TrbsError::Oracle(OracleError::CapExceeded { .. })
            ) {
                return EXIT_CAP;
            }
        }
    }
    EXIT_ERROR
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    parameters: Value,
    outputs: Value,
    /// Excluded from the reproducibility contract: identical parameters
    /// and seed give identical `outputs`, while timings vary freely.
    timings: Value,
    artifact_version: u32,
    seed: Option<u64>,
}

fn emit_report(
    command: &str,
    parameters: Value,
    outputs: Value,
    seed: Option<u64>,
    started: Instant,
) -> Result<()> {
    let report = RunReport {
        command: command.to_string(),
        parameters,
        outputs,
        timings: json!({ "total_ms": started.elapsed().as_millis() as u64 }),
        artifact_version: ARTIFACT_VERSION,
        seed,
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn oracle_from_env() -> Result<Oracle> {
    match env::var(ORACLE_CAP_ENV) {
        Ok(raw) => {
            let cap: u32 = raw.trim().parse().with_context(|| {
                format!("{ORACLE_CAP_ENV} must be a variable-count limit, got {raw:?}")
            })?;
            Ok(Oracle::with_cap(cap))
        }
        Err(env::VarError::NotPresent) => Ok(Oracle::new()),
        Err(err) => Err(err).context(format!("{ORACLE_CAP_ENV} is not valid unicode")),
    }
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .context("reading stdin")?;
            Ok(text)
        }
    }
}

fn bit_text(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

// ---------------------------------------------------------------- solve

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// DIMACS CNF text.
    Dimacs,
    /// The canonical bit-pair encoding, as an ASCII 0/1 string.
    Canonical,
}

impl InputFormat {
    fn name(self) -> &'static str {
        match self {
            InputFormat::Dimacs => "dimacs",
            InputFormat::Canonical => "canonical",
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Input file; stdin when omitted or `-`.
    file: Option<PathBuf>,
    /// Input syntax.
    #[arg(long, value_enum, default_value_t = InputFormat::Dimacs)]
    format: InputFormat,
}

fn cmd_solve(args: SolveArgs, json: bool) -> Result<u8> {
    let started = Instant::now();
    let text = read_input(args.file.as_deref())?;
    let instance = match args.format {
        InputFormat::Dimacs => parse_dimacs(&text)?,
        InputFormat::Canonical => {
            let bits = BitString::from_ascii(text.trim())?;
            match decode_instance(&bits) {
                Decoded::Instance(inst) => inst,
                Decoded::Invalid => bail!("input is not a canonical instance encoding"),
            }
        }
    };
    let oracle = oracle_from_env()?;
    let result = oracle.solve_brute(&instance)?;
    if json {
        let outputs = match &result {
            SolveResult::Sat(model) => json!({
                "verdict": "sat",
                "model": model.to_string(),
                "model_line": model.to_dimacs_model_line(),
            }),
            SolveResult::Unsat => json!({
                "verdict": "unsat",
                "model": null,
                "model_line": null,
            }),
        };
        let parameters = json!({
            "file": args.file,
            "format": args.format.name(),
            "vars": instance.num_vars(),
            "clauses": instance.num_clauses(),
        });
        emit_report("solve", parameters, outputs, None, started)?;
    } else {
        match &result {
            SolveResult::Sat(model) => {
                println!("s SATISFIABLE");
                println!("{}", model.to_dimacs_model_line());
            }
            SolveResult::Unsat => println!("s UNSATISFIABLE"),
        }
    }
    Ok(if result.is_sat() { EXIT_SAT } else { EXIT_UNSAT })
}

// ------------------------------------------------------------ enumerate

#[derive(Args)]
struct EnumerateArgs {
    /// Largest variable count to sweep.
    #[arg(long, default_value_t = 2)]
    max_n: u32,
    /// Largest clause count per variable count (clamped to 2^(2n)).
    #[arg(long, default_value_t = 3)]
    max_m: u64,
    /// Stop after this many relation records.
    #[arg(long, default_value_t = 100_000)]
    max_records: u64,
    /// Write the dump here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn cmd_enumerate(args: EnumerateArgs, json: bool) -> Result<u8> {
    let started = Instant::now();
    let limits = EnumerationLimits {
        max_n: args.max_n,
        max_m: args.max_m,
        max_records: args.max_records,
    };
    let mut record_count = 0u64;
    let records = enumerate_relation(limits).inspect(|_| record_count += 1);
    let mut dump = Vec::new();
    let block_count = dump_tape5(records, &mut dump)?;
    let dump = String::from_utf8(dump).expect("dump is ASCII");
    if let Some(path) = &args.out {
        fs::write(path, &dump).with_context(|| format!("writing {}", path.display()))?;
    }
    if json {
        let parameters = json!({
            "max_n": args.max_n,
            "max_m": args.max_m,
            "max_records": args.max_records,
            "out": args.out,
        });
        let outputs = json!({
            "record_count": record_count,
            "block_count": block_count,
            "dump": dump,
        });
        emit_report("enumerate", parameters, outputs, None, started)?;
    } else {
        if args.out.is_none() {
            print!("{dump}");
        }
        eprintln!("{record_count} records in {block_count} blocks");
    }
    Ok(0)
}

// ---------------------------------------------------------------- table

#[derive(Subcommand)]
enum TableAction {
    /// Classify every key of a fixed length and write the trie to disk.
    Build(TableBuildArgs),
    /// Follow the stored pointers for one key and print the leaf.
    Lookup(TableLookupArgs),
    /// Print the shape and content summary of a stored table.
    Stats(TableStatsArgs),
}

#[derive(Args)]
struct TableBuildArgs {
    /// Key length in bits.
    #[arg(long)]
    depth: u32,
    /// Refuse depths above this guard.
    #[arg(long, default_value_t = DEFAULT_TABLE_DEPTH_CAP)]
    depth_cap: u32,
    /// Destination file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TableLookupArgs {
    /// Table file written by `table build`.
    file: PathBuf,
    /// The key, as an ASCII 0/1 string exactly `depth` bits long.
    #[arg(long)]
    key: String,
}

#[derive(Args)]
struct TableStatsArgs {
    /// Table file written by `table build`.
    file: PathBuf,
}

fn load_table(path: &Path) -> Result<Table> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(read_table(io::BufReader::new(file))?)
}

fn print_stats(stats: &TableStats) {
    println!("depth: {}", stats.depth);
    println!(
        "nodes: {} internal, {} leaves",
        stats.internal_count, stats.leaf_count
    );
    println!(
        "leaves: {} yes, {} no, {} invalid",
        stats.yes_count, stats.no_count, stats.invalid_count
    );
    println!("pointer storage bits: {}", stats.total_bits);
    println!("serialized bytes: {}", stats.serialized_bytes);
    println!("entropy: {:.3} bits/byte", stats.entropy_bits_per_byte);
    println!("mean lookup steps: {:.1}", stats.mean_lookup_steps);
}

fn cmd_table_build(args: TableBuildArgs, json: bool) -> Result<u8> {
    let started = Instant::now();
    let oracle = oracle_from_env()?;
    let table = build_table_with_cap(args.depth, args.depth_cap, &oracle)?;
    let mut bytes = Vec::new();
    write_table(&table, &mut bytes)?;
    fs::write(&args.out, &bytes).with_context(|| format!("writing {}", args.out.display()))?;
    let stats = table.stats();
    if json {
        let parameters = json!({
            "depth": args.depth,
            "depth_cap": args.depth_cap,
            "out": args.out,
        });
        emit_report("table build", parameters, json!({ "stats": stats }), None, started)?;
    } else {
        print_stats(&stats);
        eprintln!("wrote {} ({} bytes)", args.out.display(), bytes.len());
    }
    Ok(0)
}

fn cmd_table_lookup(args: TableLookupArgs, json: bool) -> Result<u8> {
    let started = Instant::now();
    let table = load_table(&args.file)?;
    let key = BitString::from_ascii(&args.key)?;
    let outcome = table.lookup(&key)?;
    if json {
        let (verdict, model) = match &outcome.value {
            LeafValue::Invalid => ("invalid", None),
            LeafValue::Unsat => ("unsat", None),
            LeafValue::Sat { .. } => ("sat", outcome.value.model().map(|a| a.to_string())),
        };
        let parameters = json!({ "file": args.file, "key": args.key });
        let outputs = json!({
            "verdict": verdict,
            "model": model,
            "steps": outcome.steps,
            "bit_ops": outcome.bit_ops,
        });
        emit_report("table lookup", parameters, outputs, None, started)?;
    } else {
        let described = match &outcome.value {
            LeafValue::Invalid => "invalid".to_string(),
            LeafValue::Unsat => "unsat".to_string(),
            LeafValue::Sat { n, counter } => {
                let model = outcome.value.model().expect("sat leaf has a model");
                format!("sat (n={n}, counter={counter}, model {model})")
            }
        };
        println!("value: {described}");
        println!("steps: {}", outcome.steps);
        println!("bit operations: {}", outcome.bit_ops);
    }
    Ok(0)
}

fn cmd_table_stats(args: TableStatsArgs, json: bool) -> Result<u8> {
    let started = Instant::now();
    let table = load_table(&args.file)?;
    let stats = table.stats();
    if json {
        let parameters = json!({ "file": args.file });
        emit_report("table stats", parameters, json!({ "stats": stats }), None, started)?;
    } else {
        print_stats(&stats);
    }
    Ok(0)
}

// ----------------------------------------------------------------- trbs

#[derive(Subcommand)]
enum TrbsAction {
    /// Embed a bit string as one instance per index.
    Encode(TrbsEncodeArgs),
    /// Solve a batch file back into its bit string.
    Decode(TrbsDecodeArgs),
    /// Oracle verdict for every (index, flip pattern) pair.
    Census(TrbsCensusArgs),
    /// Encode a seeded random bit string, decode it, compare.
    Roundtrip(TrbsRoundtripArgs),
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["bits", "seed"]))]
struct TrbsEncodeArgs {
    /// Variable count; the batch covers indices 0..2^n.
    #[arg(long)]
    n: u32,
    /// `literal` flips {2,3} blindly; `verified` certifies each zero.
    #[arg(long, default_value = "verified")]
    mode: TrbsMode,
    /// The exact bits to embed, as an ASCII 0/1 string of length 2^n.
    #[arg(long)]
    bits: Option<String>,
    /// Draw the bits from this seed instead.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the batch file here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TrbsDecodeArgs {
    /// Batch file written by `trbs encode`.
    file: PathBuf,
}

#[derive(Args)]
struct TrbsCensusArgs {
    /// Variable count; indices 0..2^n are probed.
    #[arg(long)]
    n: u32,
    /// Restrict the table to these patterns (digit form, e.g. `23,4`).
    #[arg(long, value_delimiter = ',')]
    pattern_family: Option<Vec<FlipPattern>>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TrbsRoundtripArgs {
    /// Variable count; the random string has 2^n bits.
    #[arg(long)]
    n: u32,
    /// `literal` flips {2,3} blindly; `verified` certifies each zero.
    #[arg(long, default_value = "verified")]
    mode: TrbsMode,
    /// Seed for the random bit string.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Rejects family sizes past the hard ceiling before `1 << n` can wrap.
fn check_trbs_n(n: u32) -> Result<()> {
    if n > TRBS_MAX_N {
        return Err(TrbsError::FamilyTooLarge { n, cap: TRBS_MAX_N }.into());
    }
    Ok(())
}

fn parse_bit_string(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(anyhow!("bit strings are 0s and 1s, got {other:?}")),
        })
        .collect()
}

fn family_slot(pattern: FlipPattern) -> usize {
    PATTERN_FAMILY
        .iter()
        .position(|&p| p == pattern)
        .expect("every parseable pattern is in the family")
}

/// The census as CSV, restricted to `patterns` but in canonical order
/// otherwise. With the full family this matches the library's format.
fn census_csv(report: &CensusReport, patterns: &[FlipPattern]) -> String {
    let mut out = String::from(CENSUS_HEADER);
    out.push('\n');
    for row in &report.rows {
        for &pattern in patterns {
            let verdict = if row.unsat_by_pattern[family_slot(pattern)] {
                "unsat"
            } else {
                "sat"
            };
            out.push_str(&format!(
                "{},{},{},{}\n",
                report.n,
                row.index,
                pattern.digits(),
                verdict
            ));
        }
    }
    out
}

fn census_summary_lines(report: &CensusReport, patterns: &[FlipPattern]) -> Vec<String> {
    let pairs = report.rows.len() * PATTERN_FAMILY.len();
    let unsat: usize = report
        .rows
        .iter()
        .map(|row| row.unsat_by_pattern.iter().filter(|&&u| u).count())
        .sum();
    let mut lines = vec![format!(
        "census n={}: {}/{} (index, pattern) pairs unsat ({:.1}%)",
        report.n,
        unsat,
        pairs,
        100.0 * report.unsat_fraction()
    )];
    for &pattern in patterns {
        let always = report.pattern_always_unsat[family_slot(pattern)];
        lines.push(format!(
            "pattern {pattern}: unsat for every index: {}",
            if always { "yes" } else { "no" }
        ));
    }
    let exhausted = if report.exhausted_indices.is_empty() {
        "none".to_string()
    } else {
        report
            .exhausted_indices
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    lines.push(format!("exhausted indices (no pattern works): {exhausted}"));
    lines
}

fn census_summary_json(report: &CensusReport, patterns: &[FlipPattern]) -> Value {
    let per_pattern: Vec<Value> = patterns
        .iter()
        .map(|&p| {
            json!({
                "pattern": p.digits(),
                "always_unsat": report.pattern_always_unsat[family_slot(p)],
            })
        })
        .collect();
    json!({
        "unsat_fraction": report.unsat_fraction(),
        "patterns": per_pattern,
        "exhausted_indices": report.exhausted_indices,
    })
}

fn cmd_trbs_encode(args: TrbsEncodeArgs, json: bool) -> Result<u8> {
    let started = Instant::now();
    check_trbs_n(args.n)?;
    let bits = match &args.bits {
        Some(s) => parse_bit_string(s.trim())?,
        None => random_bits(1usize << args.n, args.seed),
    };
    let oracle = oracle_from_env()?;
    let batch = encode_trbs(&bits, args.n, args.mode, &oracle)?;
    let mut text = Vec::new();
    write_batch(&batch, &mut text)?;
    let text = String::from_utf8(text).expect("batch text is ASCII");
    if let Some(path) = &args.out {
        fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    if json {
        let parameters = json!({
            "n": args.n,
            "mode": args.mode,
            "bits_given": args.bits.is_some(),
            "out": args.out,
        });
        let outputs = json!({
            "bits": bit_text(&bits),
            "instance_count": batch.instances.len(),
            "batch": text,
        });
        emit_report("trbs encode", parameters, outputs, args.seed, started)?;
    } else {
        if args.out.is_none() {
            print!("{text}");
        }
        eprintln!(
            "encoded {} bits as {} instances ({} mode)",
            bits.len(),
            batch.instances.len(),
            batch.mode
        );
    }
    Ok(0)
}

fn cmd_trbs_decode(args: TrbsDecodeArgs, json: bool) -> Result<u8> {
    let started = Instant::now();
    let file =
        fs::File::open(&args.file).with_context(|| format!("opening {}", args.file.display()))?;
    let batch = read_batch(io::BufReader::new(file))?;
    let oracle = oracle_from_env()?;
    let decode = decode_trbs(&batch, &oracle)?;
    if json {
        let parameters = json!({ "file": args.file });
        let outputs = json!({
            "n": batch.n,
            "mode": batch.mode,
            "bits": bit_text(&decode.bits),
            "violations": decode.violations,
        });
        emit_report("trbs decode", parameters, outputs, None, started)?;
    } else {
        println!("{}", bit_text(&decode.bits));
        for violation in &decode.violations {
            eprintln!(
                "violation at index {}: expected {}, found {}",
                violation.index, violation.expected, violation.found
            );
        }
    }
    Ok(0)
}

fn cmd_trbs_census(args: TrbsCensusArgs, json: bool) -> Result<u8> {
    let started = Instant::now();
    check_trbs_n(args.n)?;
    let patterns: Vec<FlipPattern> = match &args.pattern_family {
        Some(list) => {
            let mut unique = Vec::new();
            for &p in list {
                if !unique.contains(&p) {
                    unique.push(p);
                }
            }
            unique
        }
        None => PATTERN_FAMILY.to_vec(),
    };
    let oracle = oracle_from_env()?;
    let report = census(args.n, &oracle)?;
    let csv = census_csv(&report, &patterns);
    if let Some(path) = &args.out {
        fs::write(path, &csv).with_context(|| format!("writing {}", path.display()))?;
    }
    if json {
        let family: Vec<String> = patterns.iter().map(|p| p.digits()).collect();
        let parameters = json!({
            "n": args.n,
            "pattern_family": family,
            "out": args.out,
        });
        let mut outputs = census_summary_json(&report, &patterns);
        outputs["n"] = json!(report.n);
        outputs["csv"] = json!(csv);
        emit_report("trbs census", parameters, outputs, None, started)?;
    } else {
        if args.out.is_none() {
            print!("{csv}");
        }
        for line in census_summary_lines(&report, &patterns) {
            eprintln!("{line}");
        }
    }
    Ok(0)
}

fn cmd_trbs_roundtrip(args: TrbsRoundtripArgs, json: bool) -> Result<u8> {
    let started = Instant::now();
    check_trbs_n(args.n)?;
    let oracle = oracle_from_env()?;
    let bits = random_bits(1usize << args.n, Some(args.seed));
    let report = census(args.n, &oracle)?;
    enum Outcome {
        Pass(String),
        Mismatch(String, Vec<satinfolab::trbs::TrbsViolation>),
        Exhausted(satinfolab::trbs::CensusRow),
    }
    let outcome = match encode_trbs(&bits, args.n, args.mode, &oracle) {
        Ok(batch) => {
            let decode = decode_trbs(&batch, &oracle)?;
            let readback = bit_text(&decode.bits);
            if decode.bits == bits && decode.violations.is_empty() {
                Outcome::Pass(readback)
            } else {
                Outcome::Mismatch(readback, decode.violations)
            }
        }
        Err(TrbsError::PatternExhausted { row }) => Outcome::Exhausted(row),
        Err(other) => return Err(other.into()),
    };
    if json {
        let parameters = json!({ "n": args.n, "mode": args.mode });
        let (tag, readback, violations, exhausted_index) = match &outcome {
            Outcome::Pass(r) => ("pass", Some(r.clone()), Vec::new(), None),
            Outcome::Mismatch(r, v) => ("mismatch", Some(r.clone()), v.clone(), None),
            Outcome::Exhausted(row) => ("exhausted", None, Vec::new(), Some(row.index)),
        };
        let outputs = json!({
            "n": args.n,
            "mode": args.mode,
            "bits": bit_text(&bits),
            "outcome": tag,
            "readback": readback,
            "violations": violations,
            "exhausted_index": exhausted_index,
            "census": census_summary_json(&report, &PATTERN_FAMILY),
        });
        emit_report("trbs roundtrip", parameters, outputs, Some(args.seed), started)?;
    } else {
        println!("bits:     {}", bit_text(&bits));
        match &outcome {
            Outcome::Pass(readback) => {
                println!("readback: {readback}");
                println!("round-trip: PASS");
            }
            Outcome::Mismatch(readback, violations) => {
                println!("readback: {readback}");
                println!("round-trip: FAIL (readback differs)");
                for violation in violations {
                    println!(
                        "violation at index {}: expected {}, found {}",
                        violation.index, violation.expected, violation.found
                    );
                }
            }
            Outcome::Exhausted(row) => {
                println!(
                    "round-trip: FAIL (no pattern in the family certifies index {})",
                    row.index
                );
            }
        }
        for line in census_summary_lines(&report, &PATTERN_FAMILY) {
            println!("{line}");
        }
    }
    Ok(0)
}

// -------------------------------------------------------------- metrics

#[derive(Subcommand)]
enum Metric {
    /// Exact encoded length in bits: floor(log2 n) + 1 + 2n + 2nm.
    #[command(name = "paper_bit_length")]
    PaperBitLength { n: u64, m: u64 },
    /// Uniform-cost instance budget: (12n + 1) * ceil(log2 K) bits.
    #[command(name = "uniform_length")]
    UniformLength { n: u64, k: u64 },
    /// Logarithmic-cost instance budget for a 4n-clause family.
    #[command(name = "logarithmic_length")]
    LogarithmicLength { n: u64 },
    /// The 15 n log2 n clause-budget ceiling.
    #[command(name = "bound15")]
    Bound15 { n: u64 },
    /// Smallest n from which the ceiling holds through the horizon.
    #[command(name = "smallest_stable_bound15_n")]
    SmallestStableBound15N {
        #[arg(default_value_t = 4096)]
        horizon: u64,
    },
    /// T log2 T: bits produced by T enumeration steps.
    #[command(name = "info_production")]
    InfoProduction { t: u64 },
    /// L * 2^L: total answer bits over all L-bit instances.
    #[command(name = "sat_content")]
    SatContent { l: u64 },
    /// L + |A| + rho * q(L) for a fixed program in polynomial time.
    #[command(name = "accessible_info")]
    AccessibleInfo {
        /// Instance length L in bits.
        l: u64,
        /// Program length |A| in bits.
        #[arg(long)]
        alg_bits: u64,
        /// Word size rho in bits.
        #[arg(long)]
        rho: u64,
        /// Step polynomial coefficients, ascending (e.g. `0,0,0,1` for x^3).
        #[arg(long)]
        poly: String,
    },
    /// Smallest L where sat_content outgrows accessible_info.
    #[command(name = "crossover")]
    Crossover {
        /// Program length |A| in bits.
        #[arg(long)]
        alg_bits: u64,
        /// Word size rho in bits.
        #[arg(long)]
        rho: u64,
        /// Step polynomial coefficients, ascending (e.g. `0,0,0,1` for x^3).
        #[arg(long)]
        poly: String,
    },
    /// Principal Lambert W, for arguments >= e.
    #[command(name = "lambert_w")]
    LambertW { x: f64 },
    /// Largest n whose logarithmic-cost encoding fits the bit budget.
    #[command(name = "n_lower_bound")]
    NLowerBound { encoded_bits: u64 },
    /// Bits to name one permutation of all 2^n assignment outcomes.
    #[command(name = "permutation_info")]
    PermutationInfo { n: u32 },
}

fn parse_poly(s: &str) -> Result<Vec<BigUint>> {
    let coeffs: Vec<BigUint> = s
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<BigUint>()
                .map_err(|_| anyhow!("bad polynomial coefficient {part:?}"))
        })
        .collect::<Result<_>>()?;
    if coeffs.len() > 1 && *coeffs.last().expect("nonempty") == BigUint::from(0u32) {
        bail!("leading polynomial coefficient must be nonzero");
    }
    Ok(coeffs)
}

fn cmd_metrics(metric: Metric, json: bool) -> Result<u8> {
    let started = Instant::now();
    let big = BigUint::from;
    let (name, parameters, lines, outputs): (&str, Value, Vec<String>, Value) = match metric {
        Metric::PaperBitLength { n, m } => {
            if n < 1 {
                bail!("paper_bit_length needs n >= 1");
            }
            if m < 1 {
                bail!("paper_bit_length needs m >= 1");
            }
            let value = paper_bit_length(&big(n), &big(m));
            (
                "paper_bit_length",
                json!({ "n": n, "m": m }),
                vec![value.to_string()],
                json!({ "value": value.to_string() }),
            )
        }
        Metric::UniformLength { n, k } => {
            if n < 3 {
                bail!("uniform_length needs n >= 3");
            }
            if k < 2 {
                bail!("uniform_length needs K >= 2");
            }
            let value = uniform_length(&big(n), &big(k));
            (
                "uniform_length",
                json!({ "n": n, "k": k }),
                vec![value.to_string()],
                json!({ "value": value.to_string() }),
            )
        }
        Metric::LogarithmicLength { n } => {
            if n < 3 {
                bail!("logarithmic_length needs n >= 3");
            }
            let value = logarithmic_length(&big(n));
            (
                "logarithmic_length",
                json!({ "n": n }),
                vec![value.to_string()],
                json!({ "value": value.to_string() }),
            )
        }
        Metric::Bound15 { n } => {
            if n < 1 {
                bail!("bound15 needs n >= 1");
            }
            let value = bound15(&big(n));
            (
                "bound15",
                json!({ "n": n }),
                vec![value.to_string()],
                json!({ "value": value.to_string() }),
            )
        }
        Metric::SmallestStableBound15N { horizon } => {
            if horizon < 3 {
                bail!("smallest_stable_bound15_n needs a horizon >= 3");
            }
            let value = smallest_stable_bound15_n(horizon);
            let line = match value {
                Some(v) => v.to_string(),
                None => format!("none below {horizon}"),
            };
            (
                "smallest_stable_bound15_n",
                json!({ "horizon": horizon }),
                vec![line],
                json!({ "value": value }),
            )
        }
        Metric::InfoProduction { t } => {
            if t < 2 {
                bail!("info_production needs T >= 2");
            }
            let value = info_production(&big(t));
            (
                "info_production",
                json!({ "t": t }),
                vec![value.to_string()],
                json!({ "value": value.to_string() }),
            )
        }
        Metric::SatContent { l } => {
            if l < 1 {
                bail!("sat_content needs L >= 1");
            }
            let value = sat_content(l);
            (
                "sat_content",
                json!({ "l": l }),
                vec![value.to_string()],
                json!({ "value": value.to_string() }),
            )
        }
        Metric::AccessibleInfo {
            l,
            alg_bits,
            rho,
            poly,
        } => {
            if rho < 1 {
                bail!("accessible_info needs rho >= 1");
            }
            let coeffs = parse_poly(&poly)?;
            let value = accessible_info(l, &big(alg_bits), &big(rho), &coeffs);
            (
                "accessible_info",
                json!({ "l": l, "alg_bits": alg_bits, "rho": rho, "poly": poly }),
                vec![value.to_string()],
                json!({ "value": value.to_string() }),
            )
        }
        Metric::Crossover {
            alg_bits,
            rho,
            poly,
        } => {
            if rho < 1 {
                bail!("crossover needs rho >= 1");
            }
            let coeffs = parse_poly(&poly)?;
            let (alg, rho_big) = (big(alg_bits), big(rho));
            let value = crossover(&alg, &rho_big, &coeffs);
            let predecessor_within_budget = if value > 1 {
                Some(!content_exceeds(value - 1, &alg, &rho_big, &coeffs))
            } else {
                None
            };
            let mut lines = vec![value.to_string()];
            match predecessor_within_budget {
                Some(ok) => lines.push(format!(
                    "content at {} bits stays within the accessible budget: {}",
                    value - 1,
                    if ok { "yes" } else { "no" }
                )),
                None => lines.push("no predecessor: crossover at the smallest length".into()),
            }
            (
                "crossover",
                json!({ "alg_bits": alg_bits, "rho": rho, "poly": poly }),
                lines,
                json!({
                    "value": value,
                    "predecessor_within_budget": predecessor_within_budget,
                }),
            )
        }
        Metric::LambertW { x } => {
            let value = lambert_w(x)?;
            (
                "lambert_w",
                json!({ "x": x }),
                vec![value.to_string()],
                json!({ "value": value }),
            )
        }
        Metric::NLowerBound { encoded_bits } => {
            let value = n_lower_bound(encoded_bits)?;
            (
                "n_lower_bound",
                json!({ "encoded_bits": encoded_bits }),
                vec![value.to_string()],
                json!({ "value": value }),
            )
        }
        Metric::PermutationInfo { n } => {
            if n < 1 {
                bail!("permutation_info needs n >= 1");
            }
            if n > 1 << 20 {
                bail!("permutation_info supports n up to 2^20");
            }
            let value = permutation_info(n);
            let line = match &value {
                PermutationInfo::Exact(v) => v.to_string(),
                PermutationInfo::Bracket { lo, hi } => format!("between {lo} and {hi}"),
            };
            (
                "permutation_info",
                json!({ "n": n }),
                vec![line],
                json!({ "value": value }),
            )
        }
    };
    if json {
        emit_report(&format!("metrics {name}"), parameters, outputs, None, started)?;
    } else {
        for line in lines {
            println!("{line}");
        }
    }
    Ok(0)
}
