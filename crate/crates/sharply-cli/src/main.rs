//! Command-line front end: build runs, verify states, reduce words,
//! inspect connectivity, and export pair graphs.
//!
//! Exit codes: 0 success, 2 parse/config, 3 hypothesis failure,
//! 4 goodness violation, 5 I/O.

use clap::{Parser, Subcommand, ValueEnum};
use sharply::group::GroupDoc;
use sharply::{
    check_goodness_bounded, check_hypotheses, export_dot, normalize, parse_pair, parse_word,
    regular_action, run, ActionState, BaseGroup, EngineConfig, EngineError, Letter, PairRef,
    StateDoc,
};
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::{fs, process};

const EXIT_PARSE: i32 = 2;
const EXIT_HYPOTHESIS: i32 = 3;
const EXIT_GOODNESS: i32 = 4;
const EXIT_IO: i32 = 5;

#[derive(Parser)]
#[command(name = "sharply", version, about = "Build and inspect staged partial group actions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the construction engine from a base-group file.
    Build {
        /// JSON file holding the base group.
        group: PathBuf,
        /// Extension steps to execute.
        #[arg(long, default_value_t = 100)]
        steps: u32,
        /// Verify after every this many steps (0: only at the end).
        #[arg(long, default_value_t = 0)]
        verify_every: u32,
        /// Word-length bound for verification.
        #[arg(long, default_value_t = 6)]
        length: usize,
        /// Write the final state to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// How many ordered pairs the progress report covers.
        #[arg(long, default_value_t = 20)]
        window: usize,
    },
    /// Check a saved state against the bounded goodness conditions.
    Verify {
        state: PathBuf,
        /// Word-length bound.
        #[arg(long, default_value_t = 6)]
        length: usize,
    },
    /// Print the canonical form of a word.
    Reduce {
        group: PathBuf,
        /// Word such as "s0 g1 S0"; `e` is the empty word.
        word: String,
        /// Also print element labels for the base letters in the result.
        #[arg(long)]
        legend: bool,
    },
    /// Find a word carrying one ordered pair to another.
    Connect {
        state: PathBuf,
        /// First pair, written like "b0,b1".
        pair_a: String,
        /// Second pair.
        pair_b: String,
    },
    /// Emit a state as a DOT pair graph or as raw JSON.
    Export {
        state: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a group file and the construction hypotheses.
    CheckGroup { group: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<BaseGroup, Failure> {
    let text = read_file(path)?;
    let doc: GroupDoc = serde_json::from_str(&text)
        .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    BaseGroup::from_doc(&doc).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_state(path: &Path) -> Result<ActionState, Failure> {
    let text = read_file(path)?;
    let doc: StateDoc = serde_json::from_str(&text)
        .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    ActionState::from_doc(&doc).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

/// The one serialization used for state files, shared by `build --out`
/// and `export --format json` so the two are byte-identical.
fn state_json(st: &ActionState) -> String {
    let mut text = serde_json::to_string_pretty(&st.to_doc()).expect("states always serialize");
    text.push('\n');
    text
}

fn parse_pair_arg(st: &ActionState, text: &str) -> Result<PairRef, Failure> {
    let (a, b) = parse_pair(text).map_err(|e| fail(EXIT_PARSE, e))?;
    let pair = PairRef::new(a, b).map_err(|e| fail(EXIT_PARSE, e))?;
    for point in [pair.first(), pair.second()] {
        if !st.is_live(point) {
            return Err(fail(EXIT_PARSE, format!("point {point} is not in the state")));
        }
    }
    Ok(pair)
}

/// Writes to standard output, treating a closed pipe (e.g. `| head`) as
/// a request to stop rather than an error.
fn print_out(contents: &str) -> Result<(), Failure> {
    use std::io::Write as _;
    match std::io::stdout().lock().write_all(contents.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => process::exit(0),
        Err(e) => Err(fail(EXIT_IO, e)),
    }
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, contents),
        None => print_out(contents),
    }
}

fn cmd_build(
    group: &Path,
    steps: u32,
    verify_every: u32,
    length: usize,
    out: Option<&Path>,
    window: usize,
) -> Result<(), Failure> {
    let g0 = load_group(group)?;
    let cfg = EngineConfig {
        step_budget: steps,
        verify_every,
        verify_length: length,
        progress_window: window,
        anchor: None,
    };
    match run(regular_action(&g0), &cfg) {
        Ok((st, report)) => {
            if let Some(path) = out {
                write_file(path, &state_json(&st))?;
            }
            let json = serde_json::to_string_pretty(&report).expect("reports always serialize");
            print_out(&format!("{json}\n"))
        }
        Err(e @ EngineError::Hypotheses(_)) => Err(fail(EXIT_HYPOTHESIS, e)),
        Err(e @ EngineError::BadAnchor { .. }) => Err(fail(EXIT_PARSE, e)),
        Err(e @ EngineError::Goodness { .. }) => Err(fail(EXIT_GOODNESS, e)),
    }
}

fn cmd_verify(state: &Path, length: usize) -> Result<(), Failure> {
    let st = load_state(state)?;
    let issues = st.scan_invariants();
    if !issues.is_empty() {
        let listed = issues
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("\n");
        return Err(fail(EXIT_GOODNESS, listed));
    }
    let report = check_goodness_bounded(&st, length);
    if report.passed() {
        print_out(&format!(
            "good up to length {length} ({} words checked)\n",
            report.words_checked
        ))
    } else {
        Err(fail(EXIT_GOODNESS, report))
    }
}

fn cmd_reduce(group: &Path, word: &str, legend: bool) -> Result<(), Failure> {
    let g0 = load_group(group)?;
    let w = parse_word(word).map_err(|e| fail(EXIT_PARSE, e))?;
    let nf = normalize(&w, &g0).map_err(|e| fail(EXIT_PARSE, e))?;
    let mut out = format!("{nf}\n");
    if legend {
        let mut seen = Vec::new();
        for l in nf.letters() {
            if let Letter::Base(id) = *l {
                if !seen.contains(&id) {
                    seen.push(id);
                    let label = g0.label(id);
                    if label != format!("g{id}") {
                        out.push_str(&format!("# g{id} = {label}\n"));
                    }
                }
            }
        }
    }
    print_out(&out)
}

fn cmd_connect(state: &Path, pair_a: &str, pair_b: &str) -> Result<(), Failure> {
    let st = load_state(state)?;
    let a = parse_pair_arg(&st, pair_a)?;
    let b = parse_pair_arg(&st, pair_b)?;
    match st.connected(a, b) {
        Some(witness) => print_out(&format!("{witness}\n")),
        None => print_out("not connected\n"),
    }
}

fn cmd_export(state: &Path, format: Format, out: Option<&Path>) -> Result<(), Failure> {
    let st = load_state(state)?;
    let contents = match format {
        Format::Dot => export_dot(&st),
        Format::Json => state_json(&st),
    };
    emit(out, &contents)
}

fn cmd_check_group(group: &Path) -> Result<(), Failure> {
    let g0 = load_group(group)?;
    let report = check_hypotheses(&regular_action(&g0));
    if report.passed() {
        print_out(&format!(
            "group of order {} with t = {} passes all hypotheses\n",
            g0.order(),
            g0.label(g0.t())
        ))
    } else {
        Err(fail(EXIT_HYPOTHESIS, report))
    }
}

fn real_main(cli: Cli) -> i32 {
    let outcome = match cli.cmd {
        Cmd::Build {
            group,
            steps,
            verify_every,
            length,
            out,
            window,
        } => cmd_build(&group, steps, verify_every, length, out.as_deref(), window),
        Cmd::Verify { state, length } => cmd_verify(&state, length),
        Cmd::Reduce {
            group,
            word,
            legend,
        } => cmd_reduce(&group, &word, legend),
        Cmd::Connect {
            state,
            pair_a,
            pair_b,
        } => cmd_connect(&state, &pair_a, &pair_b),
        Cmd::Export { state, format, out } => cmd_export(&state, format, out.as_deref()),
        Cmd::CheckGroup { group } => cmd_check_group(&group),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure { code, message }) => {
            eprintln!("{message}");
            code
        }
    }
}

fn main() {
    process::exit(real_main(Cli::parse()));
}
