//! Command-line front door: verification suite, structure-relative
//! classification, projector tables, and decay-experiment simulation.
//!
//! Exit codes: 0 success (and all checks passed), 1 verification failure,
//! 2 usage or input error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use tps_core::entanglement::{classify_all, TpsClassification};
use tps_core::linalg::{StateVec, C64};
use tps_core::sim::{
    analytic_probs, correlation_stats, sample_counts, CorrelationStats, CountsTable,
    ExperimentConfig,
};
use tps_core::states::{bell, color_ket, BellKind, ColorChannel};
use tps_core::tps::{subsystem_projector, Side, TpsLabel};
use tps_core::verify::{run_all_with, VerificationReport, DEFAULT_SAMPLES};

#[derive(Parser)]
#[command(
    name = "tps",
    version,
    about = "Six tensor product structures of two qubits: verify, classify, simulate"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity verification suite and emit a report.
    Verify {
        /// Seed for the Haar-sampled checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Haar sample count per sampled check.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Write the report here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Schmidt-classify a state against all six structures (or one).
    #[command(group(ArgGroup::new("input").required(true).args(["state", "file"])))]
    Classify {
        /// Built-in state: singlet, psi+, phi+, phi-, c, m, y, g, uniform.
        #[arg(long)]
        state: Option<String>,
        /// JSON state file with four (re, im) amplitude pairs.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Restrict the output to one structure (e.g. 321).
        #[arg(long)]
        label: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sample the four-channel decay experiment under one wiring.
    #[command(group(ArgGroup::new("input").required(true).args(["state", "file"])))]
    Simulate {
        /// Built-in state: singlet, psi+, phi+, phi-, c, m, y, g, uniform.
        #[arg(long)]
        state: Option<String>,
        /// JSON state file with four (re, im) amplitude pairs.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Wiring label: one of 123, 132, 213, 231, 312, 321.
        #[arg(long)]
        label: String,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print one structure's subsystem projectors as color sums.
    Table {
        /// Structure label: one of 123, 132, 213, 231, 312, 321.
        label: String,
    },
}

/// Input error: message on stderr, exit code 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, InputError> {
    match command {
        Command::Verify {
            seed,
            samples,
            output,
            format,
        } => cmd_verify(seed, samples, output, format),
        Command::Classify {
            state,
            file,
            label,
            format,
        } => {
            let psi = load_state(state.as_deref(), file.as_deref())?;
            let label = label.map(|l| parse_label(&l)).transpose()?;
            cmd_classify(&psi, label, format)
        }
        Command::Simulate {
            state,
            file,
            label,
            shots,
            seed,
            format,
        } => {
            let psi = load_state(state.as_deref(), file.as_deref())?;
            let label = parse_label(&label)?;
            cmd_simulate(psi, label, shots, seed, format)
        }
        Command::Table { label } => {
            let label = parse_label(&label)?;
            print!("{}", render_table(label));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_label(s: &str) -> Result<TpsLabel, InputError> {
    TpsLabel::from_digits(s).map_err(InputError::from)
}

// ── state input ─────────────────────────────────────────────────────

/// On-disk state document.
#[derive(Deserialize)]
struct StateFile {
    amplitudes: Vec<[f64; 2]>,
    #[serde(default)]
    normalize: Option<bool>,
}

fn builtin_state(name: &str) -> Result<StateVec, InputError> {
    let state = match name.to_ascii_lowercase().as_str() {
        "singlet" | "psi-" => bell(BellKind::PsiMinus),
        "psi+" => bell(BellKind::PsiPlus),
        "phi+" => bell(BellKind::PhiPlus),
        "phi-" => bell(BellKind::PhiMinus),
        "c" => color_ket(ColorChannel::C),
        "m" => color_ket(ColorChannel::M),
        "y" => color_ket(ColorChannel::Y),
        "g" => color_ket(ColorChannel::G),
        "uniform" => StateVec::new([C64::new(0.5, 0.0); 4]).expect("unit norm"),
        other => {
            return Err(InputError(format!(
                "unknown built-in state {other:?}; expected one of singlet, psi+, phi+, phi-, \
                 c, m, y, g, uniform"
            )))
        }
    };
    Ok(state)
}

fn load_state(name: Option<&str>, file: Option<&std::path::Path>) -> Result<StateVec, InputError> {
    match (name, file) {
        (Some(n), None) => builtin_state(n),
        (None, Some(path)) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
            let doc: StateFile = serde_json::from_str(&raw)
                .map_err(|e| InputError(format!("invalid state file JSON: {e}")))?;
            state_from_doc(doc)
        }
        _ => unreachable!("clap enforces exactly one input source"),
    }
}

fn state_from_doc(doc: StateFile) -> Result<StateVec, InputError> {
    if doc.amplitudes.len() != 4 {
        return Err(InputError(format!(
            "field \"amplitudes\": expected 4 amplitudes, got {}",
            doc.amplitudes.len()
        )));
    }
    let amps: [C64; 4] = std::array::from_fn(|k| {
        let [re, im] = doc.amplitudes[k];
        C64::new(re, im)
    });
    if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(InputError(
            "field \"amplitudes\": entries must be finite numbers".to_string(),
        ));
    }
    if doc.normalize.unwrap_or(false) {
        StateVec::normalized(amps).map_err(|e| InputError(format!("field \"amplitudes\": {e}")))
    } else {
        StateVec::new(amps).map_err(|e| {
            InputError(format!(
                "field \"amplitudes\": {e}; set \"normalize\": true to rescale"
            ))
        })
    }
}

// ── verify ──────────────────────────────────────────────────────────

/// Report document: the verification report plus tool version and a
/// timestamp. Everything except the timestamp is deterministic per seed.
#[derive(Serialize)]
struct ReportDoc {
    version: &'static str,
    timestamp: u64,
    #[serde(flatten)]
    report: VerificationReport,
}

fn cmd_verify(
    seed: u64,
    samples: usize,
    output: Option<PathBuf>,
    format: Format,
) -> Result<ExitCode, InputError> {
    let report = run_all_with(seed, samples);
    let all_passed = report.all_passed();

    let rendered = match format {
        Format::Json => {
            let doc = ReportDoc {
                version: env!("CARGO_PKG_VERSION"),
                timestamp: std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .unwrap_or_default()
                    .as_secs(),
                report,
            };
            let mut s = serde_json::to_string_pretty(&doc)
                .map_err(|e| InputError(format!("report serialization failed: {e}")))?;
            s.push('\n');
            s
        }
        Format::Text => render_report_text(&report),
    };

    match output {
        // Serialize fully before touching the path: an unwritable target
        // leaves no partial file behind.
        Some(path) => std::fs::write(&path, &rendered)
            .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }

    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn render_report_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "verification: seed={} samples={} (exact tol {:.0e}, sampled tol {:.0e})",
        report.seed, report.samples, report.tolerance_exact, report.tolerance_sampled
    );
    for check in &report.checks {
        let _ = writeln!(
            out,
            "[{}] {:<28} max_dev={:<10.3e} tol={:.0e}",
            if check.passed { "PASS" } else { "FAIL" },
            check.id,
            check.max_deviation,
            check.tolerance,
        );
        let _ = writeln!(out, "       {}", check.details);
    }
    let _ = writeln!(
        out,
        "{}/{} checks passed",
        report.summary.passed, report.summary.total
    );
    out
}

// ── classify ────────────────────────────────────────────────────────

#[derive(Serialize)]
struct ClassifyDoc {
    state: [[f64; 2]; 4],
    rank_threshold: f64,
    entries: Vec<tps_core::entanglement::ClassEntry>,
}

fn cmd_classify(
    psi: &StateVec,
    label: Option<TpsLabel>,
    format: Format,
) -> Result<ExitCode, InputError> {
    let cls = classify_all(psi);
    let entries: Vec<_> = cls
        .entries
        .iter()
        .filter(|e| label.is_none_or(|l| e.label == l))
        .copied()
        .collect();

    match format {
        Format::Json => {
            let doc = ClassifyDoc {
                state: psi.amplitudes().map(|z| [z.re, z.im]),
                rank_threshold: cls.rank_threshold,
                entries,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).map_err(InputError::from)?
            );
        }
        Format::Text => print!("{}", render_classification_text(&cls, &entries)),
    }
    Ok(ExitCode::SUCCESS)
}

fn render_classification_text(
    cls: &TpsClassification,
    entries: &[tps_core::entanglement::ClassEntry],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "TPS   class       c0            c1            flags");
    for e in entries {
        let _ = writeln!(
            out,
            "{}   {:<11} {:<13.10} {:<13.10} {}",
            e.label,
            format!("{:?}", e.separability),
            e.coefficients[0],
            e.coefficients[1],
            if e.near_degenerate {
                "near-degenerate"
            } else {
                ""
            }
        );
    }
    let _ = writeln!(out, "rank threshold = {:.0e}", cls.rank_threshold);
    out
}

// ── simulate ────────────────────────────────────────────────────────

#[derive(Serialize)]
struct SimulateDoc {
    label: TpsLabel,
    shots: u64,
    seed: u64,
    analytic: [f64; 4],
    counts: CountsTable,
    stats: CorrelationStats,
}

fn cmd_simulate(
    state: StateVec,
    label: TpsLabel,
    shots: u64,
    seed: u64,
    format: Format,
) -> Result<ExitCode, InputError> {
    let analytic = analytic_probs(&state, label);
    let counts = sample_counts(&ExperimentConfig {
        state,
        label,
        shots,
        seed,
    });
    let stats = correlation_stats(&counts);

    match format {
        Format::Json => {
            let doc = SimulateDoc {
                label,
                shots,
                seed,
                analytic,
                counts,
                stats,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).map_err(InputError::from)?
            );
        }
        Format::Text => {
            println!("wiring {label}, {shots} shots, seed {seed}");
            println!();
            println!("outcome   analytic    empirical   count");
            for (k, name) in ["00", "01", "10", "11"].iter().enumerate() {
                println!(
                    "{name}        {:<11.6} {:<11.6} {}",
                    analytic[k], counts.empirical_joint[k], counts.joint[k]
                );
            }
            println!();
            println!(
                "left marginal  P(0)={:.6} P(1)={:.6}",
                counts.left_marginal[0], counts.left_marginal[1]
            );
            println!(
                "right marginal P(0)={:.6} P(1)={:.6}",
                counts.right_marginal[0], counts.right_marginal[1]
            );
            println!(
                "IFF={:.6} XOR={:.6} left bias={:.6} right bias={:.6}",
                stats.iff_freq, stats.xor_freq, stats.left_bias, stats.right_bias
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ── table ───────────────────────────────────────────────────────────

fn render_table(label: TpsLabel) -> String {
    let mut out = String::new();
    for (side, alpha, lhs) in [
        (Side::Left, 0u8, format!("P_0 ⊗_{label} I  ")),
        (Side::Left, 1, format!("P_1 ⊗_{label} I  ")),
        (Side::Right, 0, format!("I ⊗_{label} P_0  ")),
        (Side::Right, 1, format!("I ⊗_{label} P_1  ")),
    ] {
        let p = subsystem_projector(label, side, alpha);
        let colors: Vec<String> = p
            .indices
            .iter()
            .map(|&k| format!("P_{}", ColorChannel::from_index(k).letter()))
            .collect();
        let _ = writeln!(out, "{lhs}= {}   ({})", colors.join(" + "), p.kind);
    }
    out
}
