//! Command-line front end: validate machine files, run single words, export
//! the zoo machines, and sweep machines against brute-force oracles.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use affine_automata::format::{self, MachineSpec};
use affine_automata::rational::display_prob;
use affine_automata::sweep::{sweep, OracleKind, SweepOptions};
use affine_automata::zoo;

#[derive(Parser)]
#[command(name = "afsim", version, about = "Exact simulator for affine (counter) automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a machine file and check well-formedness.
    Validate { path: PathBuf },
    /// Run a machine on a single word and print exact probabilities.
    Run {
        path: PathBuf,
        #[arg(long)]
        word: String,
        /// Also print the final affine state.
        #[arg(long)]
        show_state: bool,
    },
    /// Write one of the built-in machines to a file.
    ///
    /// Names: end, pal-npal, pal-npal-restart, manytwins. The pal-npal and
    /// manytwins machines require --k.
    Zoo {
        name: String,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Enumerate all words up to a length bound, compare the machine against
    /// a brute-force oracle, and write a TSV report.
    Sweep {
        path: PathBuf,
        /// end | pal | pal-npal | manytwins | twin-t:<t>
        #[arg(long)]
        oracle: String,
        /// The sweep alphabet as one string, e.g. "012".
        #[arg(long)]
        alphabet: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        out: PathBuf,
        /// Amplification parameter for the one-sided bounds.
        #[arg(long, default_value_t = 1)]
        k: i64,
        /// Allow sweeps over more than 10^6 words.
        #[arg(long)]
        force: bool,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Validate { path } => {
            let text = std::fs::read_to_string(&path)?;
            match format::parse(&text) {
                Ok(spec) => {
                    println!("ok: {} machine is well-formed", spec.kind());
                    Ok(ExitCode::SUCCESS)
                }
                Err(err) => {
                    eprintln!("{err}");
                    Ok(ExitCode::from(EXIT_FAIL))
                }
            }
        }
        Command::Run {
            path,
            word,
            show_state,
        } => {
            let text = std::fs::read_to_string(&path)?;
            let spec = format::parse(&text)?;
            run_word(&spec, &word, show_state)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Zoo { name, k, out } => {
            let spec = match build_zoo(&name, k) {
                Ok(spec) => spec,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return Ok(ExitCode::from(EXIT_USAGE));
                }
            };
            std::fs::write(&out, format::serialize(&spec))?;
            println!("wrote {} machine to {}", spec.kind(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            path,
            oracle,
            alphabet,
            max_len,
            out,
            k,
            force,
        } => {
            let text = std::fs::read_to_string(&path)?;
            let spec = format::parse(&text)?;
            let oracle = OracleKind::parse(&oracle)?;
            let opts = SweepOptions {
                oracle,
                alphabet: alphabet.chars().collect(),
                max_len,
                k,
                force,
            };
            let report = sweep(&spec, &opts)?;
            std::fs::write(&out, report.to_tsv())?;
            println!(
                "{} words: {} pass, {} fail, {} unpromised, max error {}",
                report.rows.len(),
                report.passes,
                report.failures,
                report.unpromised,
                display_prob(&report.max_error)
            );
            Ok(if report.is_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            })
        }
    }
}

fn run_word(spec: &MachineSpec, word: &str, show_state: bool) -> anyhow::Result<()> {
    match spec {
        MachineSpec::Afa(m) => {
            println!("accept {}", display_prob(&m.accept_prob(word)?));
            if show_state {
                print_vector(&m.core.states, m.run(word)?.entries());
            }
        }
        MachineSpec::LasVegas(m) => {
            let o = m.outcome(word)?;
            println!(
                "accept {}  reject {}  neutral {}",
                display_prob(&o.accept),
                display_prob(&o.reject),
                display_prob(&o.neutral)
            );
            if show_state {
                print_vector(&m.core.states, m.run(word)?.entries());
            }
        }
        MachineSpec::Restart(m) => {
            let a = m.analyze(word)?;
            println!(
                "accept {}  reject {}  restart {}",
                display_prob(&a.single_round.accept),
                display_prob(&a.single_round.reject),
                display_prob(&a.single_round.neutral)
            );
            println!(
                "overall_accept {}  expected_rounds {}  expected_steps {}",
                display_prob(&a.overall_accept),
                affine_automata::rational::display_rational(&a.expected_rounds),
                affine_automata::rational::display_rational(&a.expected_steps)
            );
            if show_state {
                print_vector(&m.core.states, m.run(word)?.entries());
            }
        }
        MachineSpec::Afca(m) => {
            println!("accept {}", display_prob(&m.accept_prob(word)?));
            if show_state {
                println!("state: {}", m.render_config_vector(&m.run(word)?));
            }
        }
    }
    Ok(())
}

fn print_vector(states: &[String], entries: &[affine_automata::Rational]) {
    for (name, value) in states.iter().zip(entries) {
        println!("  {name}: {}", affine_automata::rational::display_rational(value));
    }
}

fn build_zoo(name: &str, k: Option<i64>) -> Result<MachineSpec, String> {
    let need_k = || -> Result<i64, String> {
        let k = k.ok_or_else(|| format!("machine '{name}' requires --k"))?;
        if k < 1 {
            return Err("--k must be at least 1".to_string());
        }
        Ok(k)
    };
    match name {
        "end" => {
            if k.is_some() {
                return Err("machine 'end' takes no --k".to_string());
            }
            Ok(MachineSpec::Afca(zoo::build_end()))
        }
        "pal-npal" => Ok(MachineSpec::LasVegas(zoo::build_pal_npal(need_k()?))),
        "pal-npal-restart" => Ok(MachineSpec::Restart(zoo::build_pal_npal_restart(need_k()?))),
        "manytwins" => Ok(MachineSpec::Afca(zoo::build_manytwins(need_k()?))),
        other => Err(format!(
            "unknown zoo machine '{other}' (expected end, pal-npal, pal-npal-restart or manytwins)"
        )),
    }
}
