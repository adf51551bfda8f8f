mod analyze;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use unifac::acceptance;
use unifac::automata::dot;
use unifac::families::{self, ClaimOutcome, FamilyInstance};
use unifac::oracle::DEFAULT_FACTORIZATION_CAP;
use unifac::su::build_su_counter_machine;
use unifac::uf::{build_double_nfa, lstar_dfa, uf_dfa};
use unifac::ufp::build_ufp_counter_machine;
use unifac::ufs::build_ufs_nfa;
use unifac::{Error, Language, LanguageSpec};

use analyze::Kind;

#[derive(Parser)]
#[command(
    name = "unifac",
    version,
    about = "Factorization analysis for regular and finite languages"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one construction and cross-check it against the brute-force oracle.
    Analyze {
        spec: PathBuf,
        #[arg(value_enum)]
        predicate: Kind,
        /// Longest word of L* to check; same as --max-len.
        #[arg(conflicts_with = "max_len_flag")]
        max_len: Option<usize>,
        #[arg(long = "max-len", id = "max_len_flag")]
        max_len_flag: Option<usize>,
        /// Limit on enumerated words and factorizations.
        #[arg(long, default_value_t = DEFAULT_FACTORIZATION_CAP)]
        cap: usize,
    },
    /// Check the claims of a witness family over a parameter range such as 2..5.
    Family {
        name: String,
        /// Inclusive range `a..b`, or a single value.
        range: Option<String>,
    },
    /// Write a construction as a Graphviz digraph. `-` writes to stdout.
    ExportDot {
        spec: PathBuf,
        #[arg(value_enum)]
        construction: Construction,
        out: PathBuf,
    },
    /// Run the acceptance suite.
    Accept,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    /// Minimal DFA of L.
    Dfa,
    /// Minimal DFA of L*.
    Star,
    /// Doubled-state NFA accepting the words with two factorizations.
    Double,
    /// Minimal DFA of uf(L).
    Uf,
    /// One-counter machine accepting L* − su(L).
    Su,
    /// One-counter machine accepting L* − ufp(L); finite L only.
    Ufp,
    /// NFA accepting L* − ufs(L); finite L only.
    Ufs,
}

pub enum Failure {
    Violation(String),
    Input(String),
    Epsilon,
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violation(_) => 2,
            Failure::Input(_) => 3,
            Failure::Epsilon => 4,
            Failure::Io(_) => 5,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EpsilonInLanguage => Failure::Epsilon,
            Error::Overflow { .. } | Error::FactorizationCapExceeded { .. } => {
                Failure::Input(format!("{e}; raise --cap or lower --max-len"))
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Violation(m) => eprintln!("property violation: {m}"),
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Epsilon => eprintln!(
                    "note: ε ∈ L, so every word of L* has infinitely many factorizations and uf(L) = ∅"
                ),
                Failure::Io(m) => eprintln!("I/O error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Analyze {
            spec,
            predicate,
            max_len,
            max_len_flag,
            cap,
        } => {
            let lang = load(spec)?;
            let start = Instant::now();
            let report = analyze::analyze(
                &lang,
                *predicate,
                max_len.or(*max_len_flag).unwrap_or(8),
                *cap,
            )?;
            eprintln!("elapsed: {} ms", start.elapsed().as_millis());
            if cli.json {
                print_json(&report);
            } else {
                emit(&report.render());
            }
            report.verdict()
        }
        Command::Family { name, range } => family(name, range.as_deref(), cli.json),
        Command::ExportDot {
            spec,
            construction,
            out,
        } => export_dot(&load(spec)?, *construction, out),
        Command::Accept => accept(cli.json),
    }
}

/// Writes to stdout, ignoring a reader that has gone away.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    emit(&serde_json::to_string_pretty(value).expect("report serializes"));
    emit("\n");
}

fn load(path: &Path) -> Result<Language, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let lang = LanguageSpec::from_json(&text)?.load()?;
    if lang.contains_empty() {
        return Err(Failure::Epsilon);
    }
    Ok(lang)
}

fn parse_range(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Input(format!("bad range {text:?}; expected a..b or n"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![num(text)?]),
    }
}

#[derive(Serialize)]
struct FamilyRun {
    instance: FamilyInstance,
    outcomes: Vec<ClaimOutcome>,
}

fn family(name: &str, range: Option<&str>, json: bool) -> Result<(), Failure> {
    if !families::FAMILY_NAMES.contains(&name) {
        return Err(Failure::Input(format!(
            "unknown family {name:?}; expected one of {}",
            families::FAMILY_NAMES.join(", ")
        )));
    }
    let params: Vec<Option<usize>> = match range {
        Some(r) => parse_range(r)?.into_iter().map(Some).collect(),
        None => vec![None],
    };
    let mut runs = Vec::new();
    for n in params {
        let instance = families::family(name, n)?;
        if instance.parameter.is_none() && !runs.is_empty() {
            break;
        }
        let outcomes = instance.check()?;
        runs.push(FamilyRun { instance, outcomes });
    }
    let failed: Vec<String> = runs
        .iter()
        .flat_map(|r| {
            r.outcomes.iter().filter(|o| !o.holds).map(move |o| {
                format!(
                    "{} n={:?}: {}",
                    r.instance.name, r.instance.parameter, o.description
                )
            })
        })
        .collect();
    if json {
        print_json(&runs);
    } else {
        let mut out = String::new();
        for r in &runs {
            out.push_str(&r.instance.name);
            if let Some(n) = r.instance.parameter {
                out.push_str(&format!(" n={n}"));
            }
            out.push('\n');
            for o in &r.outcomes {
                let mark = if o.holds { "ok" } else { "FAIL" };
                out.push_str(&format!(
                    "  [{mark}] {}: expected {}, got {}\n",
                    o.description, o.expected, o.actual
                ));
            }
        }
        emit(&out);
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(failed.join("; ")))
    }
}

fn export_dot(lang: &Language, construction: Construction, out: &Path) -> Result<(), Failure> {
    let text = match construction {
        Construction::Dfa => dot::dfa_to_dot(lang.dfa(), "L"),
        Construction::Star => dot::dfa_to_dot(&lstar_dfa(lang.dfa())?, "L*"),
        Construction::Double => dot::nfa_to_dot(&build_double_nfa(lang.dfa())?, "double"),
        Construction::Uf => dot::dfa_to_dot(&uf_dfa(lang.dfa())?, "uf"),
        Construction::Su => dot::pda_to_dot(&build_su_counter_machine(lang.dfa())?, "su"),
        Construction::Ufp => dot::pda_to_dot(&build_ufp_counter_machine(lang)?, "ufp"),
        Construction::Ufs => dot::nfa_to_dot(&build_ufs_nfa(lang)?, "ufs"),
    };
    if out == Path::new("-") {
        emit(&text);
        return Ok(());
    }
    fs::write(out, text).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))
}

fn accept(json: bool) -> Result<(), Failure> {
    let reports = acceptance::run_all();
    if json {
        print_json(&reports);
    } else {
        for r in &reports {
            emit(&format!("{}\n", r.line()));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if !json {
        emit(&format!(
            "{} passed, {failed} failed\n",
            reports.len() - failed
        ));
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Violation(format!(
            "{failed} acceptance criteria failed"
        )))
    }
}
