//! `msum`: command-line front end for the multisum library.
//!
//! Exit codes: 0 success, 1 a well-formed input with a negative outcome
//! (not linear, conditions violated), 2 usage or input errors, 3 a resource
//! cap was exceeded.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multisum::census::{self, CensusRecord, Family, Mode};
use multisum::format::{parse_seed_list, parse_set, write_set, ParseError};
use multisum::schmerl::{extract_modulus_with, SequencePrefix};
use multisum::{
    closure, detect_linear, ClosureKind, ClosureOptions, Error, IntSet, Limits, Linearity,
    LinearityRecord, DEFAULT_B_MAX, DEFAULT_MIN_WINDOW,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "msum",
    version,
    about = "Multisum sets: classification, closure, linearity, census"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a set: multisum / sum closed or free.
    Classify(SetArgs),
    /// Close a seed under multisums (or sums) up to --bound.
    Close {
        #[command(flatten)]
        set: SetArgs,
        /// Closure operator.
        #[arg(long, value_enum, default_value_t = CloseMode::Multisum)]
        mode: CloseMode,
    },
    /// List sums, multisums and strict multisums with representation counts.
    Multisums(SetArgs),
    /// Look for a tail of multiples of some k reaching the horizon.
    DetectLinear {
        #[command(flatten)]
        set: SetArgs,
        /// Least number of multiples of k the tail must span.
        #[arg(long, default_value_t = DEFAULT_MIN_WINDOW)]
        min_window: u64,
    },
    /// Run the constructive proof on the first 6n-4 elements of the set.
    Schmerl {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_MIN_WINDOW)]
        min_window: u64,
    },
    /// Count a family of subsets of {1..B}.
    Census {
        /// multisum_set, multisum_free, sum_free, sum_closed, or all.
        #[arg(long, default_value = "all")]
        family: String,
        /// B.
        #[arg(long)]
        bound: u32,
        /// exhaustive or dfs_pruned.
        #[arg(long, default_value = "dfs_pruned")]
        mode: String,
        /// Largest number of maximum-size members to print.
        #[arg(long, default_value_t = 10)]
        witnesses: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SetArgs {
    /// Comma-separated ascending integers.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    seed: Option<String>,
    /// Set file (one integer per line, optional `!horizon B` header).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Horizon B.
    #[arg(long)]
    bound: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CloseMode {
    Multisum,
    Sum,
}

/// A failed run: exit code plus what to print on stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceCap { .. } => 3,
            Error::ConditionsFailed(_) | Error::ConditionViolation(_) | Error::Witness(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure {
            code: if e.over_cap { 3 } else { 2 },
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn b_max() -> Result<u64, Failure> {
    match std::env::var("MSUM_BMAX") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("MSUM_BMAX must be an integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_B_MAX),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::usage(format!("cannot write output: {e}")))
        }
    }
}

fn json_text(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

fn join(values: impl IntoIterator<Item = u64>) -> String {
    let parts: Vec<String> = values.into_iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl SetArgs {
    /// The set as given, with `--bound` as horizon when present.
    fn load(&self, cap: u64) -> Result<IntSet, Failure> {
        if let Some(b) = self.bound {
            Limits { b_max: cap }.check(b)?;
        }
        match (&self.seed, &self.input) {
            (Some(list), None) => Ok(parse_seed_list(list, self.bound, cap)?),
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
                let set = parse_set(&text, cap)?;
                match self.bound {
                    Some(b) if b != set.horizon() => Ok(set.with_horizon(b)?),
                    _ => Ok(set),
                }
            }
            _ => Err(Failure::usage("give exactly one of --seed and --input")),
        }
    }

    fn reject_csv(&self, command: &str) -> Result<(), Failure> {
        if self.format == Format::Csv {
            return Err(Failure::usage(format!("{command} has no csv output")));
        }
        Ok(())
    }
}

fn classify(args: &SetArgs, cap: u64) -> Outcome {
    args.reject_csv("classify")?;
    let set = args.load(cap)?;
    let class = set.classify();
    let multisums: Vec<u64> = set
        .multisums()
        .into_iter()
        .filter(|&m| m <= set.horizon())
        .collect();
    let text = match args.format {
        Format::Json => json_text(&json!({
            "set": &set,
            "classification": class,
            "summary": class.summary(),
            "multisums": multisums,
        })),
        _ => {
            let mut s = format!("{}\n{}\n", set, class.summary());
            s.push_str(&format!(
                "multisums within horizon {}: {}\n",
                set.horizon(),
                join(multisums)
            ));
            if let Some(t) = class.complete_from {
                s.push_str(&format!("every element above {t} is a multisum\n"));
            }
            s
        }
    };
    emit(&args.out, &text)?;
    Ok(0)
}

fn close(args: &SetArgs, mode: CloseMode, cap: u64) -> Outcome {
    args.reject_csv("close")?;
    let Some(bound) = args.bound else {
        return Err(Failure::usage("close needs --bound"));
    };
    let seed = args.load(cap)?;
    let kind = match mode {
        CloseMode::Multisum => ClosureKind::Multisum,
        CloseMode::Sum => ClosureKind::Sum,
    };
    let options = ClosureOptions {
        limits: Limits { b_max: cap },
        max_rounds: None,
    };
    let result = closure(&seed, bound, kind, &options)?;
    let text = match args.format {
        Format::Json => json_text(&json!({ "stats": result.stats(), "set": &result.result })),
        _ => {
            let stats = result.stats();
            let mut s = format!(
                "# rounds {}, added per round {:?}, saturated {}\n",
                stats.rounds, stats.added_per_round, stats.saturated
            );
            s.push_str(&write_set(&result.result));
            s
        }
    };
    emit(&args.out, &text)?;
    Ok(if result.saturated { 0 } else { 1 })
}

fn multisums(args: &SetArgs, cap: u64) -> Outcome {
    let set = args.load(cap)?;
    let profile = set.sum_profile();
    let text = match args.format {
        Format::Csv => {
            let mut s = String::from("m,r,r_strict\n");
            for (m, r, rs) in profile.nonzero() {
                s.push_str(&format!("{m},{r},{rs}\n"));
            }
            s
        }
        Format::Json => json_text(&json!({
            "set": &set,
            "sums": set.sums(),
            "multisums": set.multisums(),
            "strict_multisums": set.strict_multisums(),
            "unisums": set.unisums(),
        })),
        Format::Text => format!(
            "sums: {}\nmultisums: {}\nstrict multisums: {}\nunisums: {}\n",
            join(set.sums()),
            join(set.multisums()),
            join(set.strict_multisums()),
            join(set.unisums()),
        ),
    };
    emit(&args.out, &text)?;
    Ok(0)
}

fn detect(args: &SetArgs, min_window: u64, cap: u64) -> Outcome {
    args.reject_csv("detect-linear")?;
    let set = args.load(cap)?;
    let outcome = detect_linear(&set, min_window)?;
    let record = LinearityRecord::new(&outcome, set.horizon());
    let text = match args.format {
        Format::Json => json_text(&record),
        _ => match &outcome {
            Linearity::Certificate(c) => format!(
                "certificate: n > {} is in the set iff {} divides n (horizon {}, {} multiples)\n",
                c.n, c.k, c.horizon, c.window_count
            ),
            Linearity::Finite => format!(
                "finite: no element in the top quarter of [1, {}]\n",
                set.horizon()
            ),
            Linearity::Unknown => format!(
                "unknown: no linear tail of {min_window} multiples below {}\n",
                set.horizon()
            ),
        },
    };
    emit(&args.out, &text)?;
    Ok(if outcome.certificate().is_some() {
        0
    } else {
        1
    })
}

fn schmerl(args: &SetArgs, n: usize, min_window: u64, cap: u64) -> Outcome {
    args.reject_csv("schmerl")?;
    let given = args.load(cap)?;
    // a horizon past the last element means: close up to it first
    let set = if given.horizon() > given.max() {
        let options = ClosureOptions {
            limits: Limits { b_max: cap },
            max_rounds: None,
        };
        closure(&given, given.horizon(), ClosureKind::Multisum, &options)?.result
    } else {
        given
    };
    let prefix = SequencePrefix::from_set(&set, n)?;
    match extract_modulus_with(&prefix, &set, min_window) {
        Ok(extraction) => {
            let text = match args.format {
                Format::Json => json_text(&extraction),
                _ => {
                    let p1 = &extraction.part_one;
                    let mut s = format!(
                        "conditions hold for n = {} (M = {})\nwitness d = {}, a = {}, b = {}, k = {}\n",
                        n, extraction.conditions.m, p1.witness.d, p1.witness.a, p1.witness.b, p1.k
                    );
                    for step in &extraction.part_two.steps {
                        s.push_str(&format!(
                            "x = {} (r = {}, s = {}, c = {}): k -> {}\n",
                            step.x, step.r, step.s, step.c, step.k_next
                        ));
                    }
                    s.push_str(&format!(
                        "least period k = {}\n",
                        extraction.part_two.k_final
                    ));
                    s
                }
            };
            emit(&args.out, &text)?;
            Ok(0)
        }
        Err(Error::ConditionsFailed(report)) => {
            let text = match args.format {
                Format::Json => json_text(&json!({ "conditions": report })),
                _ => format!(
                    "conditions fail: C1 violations at {:?}, C2 violations {:?}\n",
                    report.c1_violations, report.c2_violations
                ),
            };
            emit(&args.out, &text)?;
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn run_census(
    family: &str,
    bound: u32,
    mode: &str,
    witnesses: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> Outcome {
    let families: Vec<Family> = if family == "all" {
        Family::ALL.to_vec()
    } else {
        vec![Family::parse(family)
            .ok_or_else(|| Failure::usage(format!("unknown family `{family}`")))?]
    };
    let mode = Mode::parse(mode).ok_or_else(|| Failure::usage(format!("unknown mode `{mode}`")))?;
    let records = families
        .into_iter()
        .map(|f| census::enumerate(f, bound, mode, witnesses))
        .collect::<Result<Vec<CensusRecord>, Error>>()?;
    let text = match format {
        Format::Json => json_text(&records),
        Format::Csv => {
            let mut s = format!("{}\n", CensusRecord::CSV_HEADER);
            for r in &records {
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                s.push_str(&format!(
                    "{} B={}: {} sets, largest size {}\n",
                    r.family, r.b, r.count, r.max_size
                ));
                for w in &r.witnesses {
                    s.push_str(&format!("  {}\n", join(w.iter().copied())));
                }
            }
            s
        }
    };
    emit(out, &text)?;
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    let cap = b_max()?;
    match &cli.command {
        Command::Classify(args) => classify(args, cap),
        Command::Close { set, mode } => close(set, *mode, cap),
        Command::Multisums(args) => multisums(args, cap),
        Command::DetectLinear { set, min_window } => detect(set, *min_window, cap),
        Command::Schmerl { set, n, min_window } => schmerl(set, *n, *min_window, cap),
        Command::Census {
            family,
            bound,
            mode,
            witnesses,
            format,
            out,
        } => run_census(family, *bound, mode, *witnesses, *format, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("msum: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
