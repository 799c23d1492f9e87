//! Line-oriented machine definition files.
//!
//! A file is a sequence of directives; `#` starts a comment and blank lines
//! are ignored. Rationals are written `p/q` or as a bare integer, and the
//! end-markers appear as `^` and `$`.
//!
//! ```text
//! type lasvegas            # afa | afca | lasvegas | restart
//! states s1 s2 s3 s4 s5
//! alphabet 0 1 2
//! initial s1
//! accepting s1 s2
//! rejecting s3 s4
//! neutral s5               # restart machines use `restarting` instead
//! matrix ^                 # followed by one line per matrix row
//! 0 0 0 0 0
//! ...
//! ```
//!
//! Counter machines declare `counters <k>` and `accept-mode states|blind`,
//! and list transitions as
//! `t <from> <symbol> <status> <to> <moves...> <value>`, where the status is
//! one character per counter out of `Z`, `N` and `*` and each move is `-1`,
//! `0` or `+1`.
//!
//! Parsing always runs well-formedness validation; serializing a machine and
//! parsing the result reproduces it exactly.

use std::collections::{BTreeMap, BTreeSet};

use crate::afa::{AfaCore, AfaSpec, LasVegasAfaSpec, RestartAfaSpec};
use crate::afca::{AcceptMode, AfcaSpec, AfcaTransition, StatusPattern};
use crate::error::{Error, ValidationReport};
use crate::linalg::AffineMatrix;
use crate::rational::{display_rational, parse_rational, Rational};
use crate::tape::MarkedSymbol;

/// Any machine the file format can describe.
#[derive(Debug, Clone, PartialEq)]
pub enum MachineSpec {
    Afa(AfaSpec),
    LasVegas(LasVegasAfaSpec),
    Restart(RestartAfaSpec),
    Afca(AfcaSpec),
}

impl MachineSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            MachineSpec::Afa(_) => "afa",
            MachineSpec::LasVegas(_) => "lasvegas",
            MachineSpec::Restart(_) => "restart",
            MachineSpec::Afca(_) => "afca",
        }
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            MachineSpec::Afa(m) => m.validate(),
            MachineSpec::LasVegas(m) => m.validate(),
            MachineSpec::Restart(m) => m.validate(),
            MachineSpec::Afca(m) => m.validate(),
        }
    }

    pub fn alphabet(&self) -> &BTreeSet<char> {
        match self {
            MachineSpec::Afa(m) => &m.core.alphabet,
            MachineSpec::LasVegas(m) => &m.core.alphabet,
            MachineSpec::Restart(m) => &m.core.alphabet,
            MachineSpec::Afca(m) => &m.alphabet,
        }
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses a machine file and validates the result. Diagnostics carry the
/// 1-based line number of the offending directive.
pub fn parse(text: &str) -> Result<MachineSpec, Error> {
    let spec = parse_unvalidated(text)?;
    spec.validate().into_result()?;
    Ok(spec)
}

struct Lines<'a> {
    // (1-based line number, content with comments stripped)
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, line)| {
                let content = line.split('#').next().unwrap_or("").trim();
                (!content.is_empty()).then_some((i + 1, content))
            })
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.items.get(self.pos).copied();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }
}

#[derive(Default)]
struct Builder {
    machine_type: Option<(usize, String)>,
    states: Option<Vec<String>>,
    alphabet: Option<Vec<char>>,
    counters: Option<usize>,
    initial: Option<(usize, String)>,
    accept_mode: Option<(usize, String)>,
    sets: BTreeMap<&'static str, (usize, Vec<String>)>,
    matrices: Vec<(usize, MarkedSymbol, AffineMatrix)>,
    transitions: Vec<(usize, RawTransition)>,
}

struct RawTransition {
    from: String,
    symbol: MarkedSymbol,
    status: Vec<StatusPattern>,
    to: String,
    moves: Vec<i8>,
    value: Rational,
}

/// Parses without running validation; used internally and by tests that
/// want to inspect deliberately broken machines.
pub fn parse_unvalidated(text: &str) -> Result<MachineSpec, Error> {
    let mut lines = Lines::new(text);
    let mut b = Builder::default();

    while let Some((line, content)) = lines.next() {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "type" => {
                expect_args(line, &tokens, 1)?;
                b.machine_type = Some((line, tokens[1].to_string()));
            }
            "states" => {
                b.states = Some(tokens[1..].iter().map(|s| s.to_string()).collect());
            }
            "alphabet" => {
                let mut alphabet = Vec::new();
                for token in &tokens[1..] {
                    let mut chars = token.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) if c != '^' && c != '$' && c != '#' => alphabet.push(c),
                        _ => return Err(perr(line, format!("bad alphabet symbol '{token}'"))),
                    }
                }
                b.alphabet = Some(alphabet);
            }
            "counters" => {
                expect_args(line, &tokens, 1)?;
                let k: usize = tokens[1]
                    .parse()
                    .map_err(|_| perr(line, format!("bad counter count '{}'", tokens[1])))?;
                b.counters = Some(k);
            }
            "initial" => {
                expect_args(line, &tokens, 1)?;
                b.initial = Some((line, tokens[1].to_string()));
            }
            "accept-mode" => {
                expect_args(line, &tokens, 1)?;
                b.accept_mode = Some((line, tokens[1].to_string()));
            }
            key @ ("accepting" | "rejecting" | "neutral" | "restarting") => {
                let key = match key {
                    "accepting" => "accepting",
                    "rejecting" => "rejecting",
                    "neutral" => "neutral",
                    _ => "restarting",
                };
                let names = tokens[1..].iter().map(|s| s.to_string()).collect();
                b.sets.insert(key, (line, names));
            }
            "matrix" => {
                expect_args(line, &tokens, 1)?;
                let symbol = MarkedSymbol::parse(tokens[1])
                    .map_err(|_| perr(line, format!("bad matrix symbol '{}'", tokens[1])))?;
                let n = b
                    .states
                    .as_ref()
                    .ok_or_else(|| perr(line, "matrix block before the states directive"))?
                    .len();
                let mut rows = Vec::with_capacity(n);
                for _ in 0..n {
                    let Some((row_line, row)) = lines.next() else {
                        return Err(perr(line, format!("matrix for '{}' is missing rows", tokens[1])));
                    };
                    let entries: Result<Vec<Rational>, Error> = row
                        .split_whitespace()
                        .map(|t| {
                            parse_rational(t)
                                .map_err(|_| perr(row_line, format!("bad rational '{t}'")))
                        })
                        .collect();
                    let entries = entries?;
                    if entries.len() != n {
                        return Err(perr(
                            row_line,
                            format!("matrix row has {} entries, expected {n}", entries.len()),
                        ));
                    }
                    rows.push(entries);
                }
                let matrix = AffineMatrix::from_rows(rows)
                    .map_err(|e| perr(line, e.to_string()))?;
                b.matrices.push((line, symbol, matrix));
            }
            "t" => {
                let k = b.counters.unwrap_or(1);
                if tokens.len() != 5 + k + 1 {
                    return Err(perr(
                        line,
                        format!(
                            "transition needs {} tokens for {k} counter(s), got {}",
                            5 + k + 1,
                            tokens.len()
                        ),
                    ));
                }
                let symbol = MarkedSymbol::parse(tokens[2])
                    .map_err(|_| perr(line, format!("bad symbol '{}'", tokens[2])))?;
                let status_token = tokens[3];
                if status_token.chars().count() != k {
                    return Err(perr(
                        line,
                        format!("status '{status_token}' must have one flag per counter ({k})"),
                    ));
                }
                let status: Result<Vec<StatusPattern>, Error> = status_token
                    .chars()
                    .map(|c| match c {
                        'Z' => Ok(StatusPattern::Zero),
                        'N' => Ok(StatusPattern::NonZero),
                        '*' => Ok(StatusPattern::Any),
                        other => Err(perr(line, format!("bad status flag '{other}'"))),
                    })
                    .collect();
                let moves: Result<Vec<i8>, Error> = tokens[5..5 + k]
                    .iter()
                    .map(|t| match *t {
                        "-1" => Ok(-1),
                        "0" => Ok(0),
                        "+1" | "1" => Ok(1),
                        other => Err(perr(line, format!("bad counter move '{other}'"))),
                    })
                    .collect();
                let value = parse_rational(tokens[5 + k])
                    .map_err(|_| perr(line, format!("bad rational '{}'", tokens[5 + k])))?;
                b.transitions.push((
                    line,
                    RawTransition {
                        from: tokens[1].to_string(),
                        symbol,
                        status: status?,
                        to: tokens[4].to_string(),
                        moves: moves?,
                        value,
                    },
                ));
            }
            other => return Err(perr(line, format!("unknown directive '{other}'"))),
        }
    }

    build(b)
}

fn expect_args(line: usize, tokens: &[&str], n: usize) -> Result<(), Error> {
    if tokens.len() != n + 1 {
        Err(perr(
            line,
            format!("'{}' takes {n} argument(s), got {}", tokens[0], tokens.len() - 1),
        ))
    } else {
        Ok(())
    }
}

fn build(b: Builder) -> Result<MachineSpec, Error> {
    let Builder {
        machine_type,
        states,
        alphabet,
        counters,
        initial,
        accept_mode,
        sets,
        matrices: raw_matrices,
        transitions: raw_transitions,
    } = b;
    let Some((type_line, machine_type)) = machine_type else {
        return Err(perr(1, "missing 'type' directive"));
    };
    let states = states.ok_or_else(|| perr(type_line, "missing 'states' directive"))?;
    let alphabet: BTreeSet<char> = alphabet
        .ok_or_else(|| perr(type_line, "missing 'alphabet' directive"))?
        .into_iter()
        .collect();
    let (initial_line, initial_name) =
        initial.ok_or_else(|| perr(type_line, "missing 'initial' directive"))?;
    let initial = resolve(&states, &initial_name, initial_line)?;

    let states_for_sets = states.clone();
    let resolve_set = |key: &str| -> Result<BTreeSet<usize>, Error> {
        match sets.get(key) {
            Some((line, names)) => names
                .iter()
                .map(|name| resolve(&states_for_sets, name, *line))
                .collect(),
            None => Err(perr(type_line, format!("missing '{key}' directive"))),
        }
    };

    match machine_type.as_str() {
        "afa" | "lasvegas" | "restart" => {
            if let Some((line, _)) = raw_transitions.first() {
                return Err(perr(*line, "transition records are only valid for type afca"));
            }
            let mut matrices = BTreeMap::new();
            for (line, symbol, matrix) in raw_matrices {
                if matrices.insert(symbol, matrix).is_some() {
                    return Err(perr(line, format!("duplicate matrix for '{symbol}'")));
                }
            }
            let core = AfaCore {
                states,
                alphabet,
                matrices,
                initial,
            };
            match machine_type.as_str() {
                "afa" => Ok(MachineSpec::Afa(AfaSpec {
                    accepting: resolve_set("accepting")?,
                    core,
                })),
                "lasvegas" => Ok(MachineSpec::LasVegas(LasVegasAfaSpec {
                    accepting: resolve_set("accepting")?,
                    rejecting: resolve_set("rejecting")?,
                    neutral: resolve_set("neutral")?,
                    core,
                })),
                _ => Ok(MachineSpec::Restart(RestartAfaSpec {
                    accepting: resolve_set("accepting")?,
                    rejecting: resolve_set("rejecting")?,
                    restarting: resolve_set("restarting")?,
                    core,
                })),
            }
        }
        "afca" => {
            if let Some((line, _, _)) = raw_matrices.first() {
                return Err(perr(*line, "matrix blocks are only valid for afa-like types"));
            }
            let mut transitions = Vec::with_capacity(raw_transitions.len());
            for (line, raw) in raw_transitions {
                transitions.push(AfcaTransition {
                    from: resolve(&states, &raw.from, line)?,
                    symbol: raw.symbol,
                    status: raw.status,
                    to: resolve(&states, &raw.to, line)?,
                    moves: raw.moves,
                    value: raw.value,
                });
            }
            let accept_mode = match accept_mode {
                Some((_, mode)) if mode == "states" => AcceptMode::StateOnly,
                Some((_, mode)) if mode == "blind" => AcceptMode::Blind,
                Some((line, mode)) => {
                    return Err(perr(line, format!("bad accept-mode '{mode}'")))
                }
                None => AcceptMode::StateOnly,
            };
            Ok(MachineSpec::Afca(AfcaSpec {
                accepting: resolve_set("accepting")?,
                states,
                alphabet,
                counters: counters.unwrap_or(1),
                transitions,
                initial,
                accept_mode,
            }))
        }
        other => Err(perr(type_line, format!("unknown machine type '{other}'"))),
    }
}

fn resolve(states: &[String], name: &str, line: usize) -> Result<usize, Error> {
    states
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| perr(line, format!("unknown state '{name}'")))
}

/// Serializes a machine; the output parses back to a structurally identical
/// spec.
pub fn serialize(spec: &MachineSpec) -> String {
    let mut out = String::new();
    let push_line = |out: &mut String, line: String| {
        out.push_str(&line);
        out.push('\n');
    };

    push_line(&mut out, format!("type {}", spec.kind()));
    match spec {
        MachineSpec::Afa(m) => {
            serialize_core(&mut out, &m.core);
            serialize_set(&mut out, "accepting", &m.accepting, &m.core.states);
            serialize_matrices(&mut out, &m.core);
        }
        MachineSpec::LasVegas(m) => {
            serialize_core(&mut out, &m.core);
            serialize_set(&mut out, "accepting", &m.accepting, &m.core.states);
            serialize_set(&mut out, "rejecting", &m.rejecting, &m.core.states);
            serialize_set(&mut out, "neutral", &m.neutral, &m.core.states);
            serialize_matrices(&mut out, &m.core);
        }
        MachineSpec::Restart(m) => {
            serialize_core(&mut out, &m.core);
            serialize_set(&mut out, "accepting", &m.accepting, &m.core.states);
            serialize_set(&mut out, "rejecting", &m.rejecting, &m.core.states);
            serialize_set(&mut out, "restarting", &m.restarting, &m.core.states);
            serialize_matrices(&mut out, &m.core);
        }
        MachineSpec::Afca(m) => {
            push_line(&mut out, format!("counters {}", m.counters));
            push_line(&mut out, format!("states {}", m.states.join(" ")));
            let alphabet: Vec<String> = m.alphabet.iter().map(|c| c.to_string()).collect();
            push_line(&mut out, format!("alphabet {}", alphabet.join(" ")));
            push_line(&mut out, format!("initial {}", m.states[m.initial]));
            serialize_set(&mut out, "accepting", &m.accepting, &m.states);
            let mode = match m.accept_mode {
                AcceptMode::StateOnly => "states",
                AcceptMode::Blind => "blind",
            };
            push_line(&mut out, format!("accept-mode {mode}"));
            for t in &m.transitions {
                let status: String = t
                    .status
                    .iter()
                    .map(|p| match p {
                        StatusPattern::Zero => 'Z',
                        StatusPattern::NonZero => 'N',
                        StatusPattern::Any => '*',
                    })
                    .collect();
                let moves: Vec<String> = t
                    .moves
                    .iter()
                    .map(|d| match d {
                        1 => "+1".to_string(),
                        d => d.to_string(),
                    })
                    .collect();
                push_line(
                    &mut out,
                    format!(
                        "t {} {} {} {} {} {}",
                        m.states[t.from],
                        t.symbol,
                        status,
                        m.states[t.to],
                        moves.join(" "),
                        display_rational(&t.value)
                    ),
                );
            }
        }
    }
    out
}

fn serialize_core(out: &mut String, core: &AfaCore) {
    out.push_str(&format!("states {}\n", core.states.join(" ")));
    let alphabet: Vec<String> = core.alphabet.iter().map(|c| c.to_string()).collect();
    out.push_str(&format!("alphabet {}\n", alphabet.join(" ")));
    out.push_str(&format!("initial {}\n", core.states[core.initial]));
}

fn serialize_set(out: &mut String, key: &str, set: &BTreeSet<usize>, states: &[String]) {
    let names: Vec<&str> = set.iter().map(|&i| states[i].as_str()).collect();
    if names.is_empty() {
        out.push_str(&format!("{key}\n"));
    } else {
        out.push_str(&format!("{key} {}\n", names.join(" ")));
    }
}

fn serialize_matrices(out: &mut String, core: &AfaCore) {
    for (symbol, matrix) in &core.matrices {
        out.push_str(&format!("matrix {symbol}\n"));
        for row in matrix.rows() {
            let entries: Vec<String> = row.iter().map(display_rational).collect();
            out.push_str(&format!("{}\n", entries.join(" ")));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;
    use crate::zoo;

    #[test]
    fn zoo_machines_round_trip() {
        let machines = vec![
            MachineSpec::Afca(zoo::build_end()),
            MachineSpec::LasVegas(zoo::build_pal_npal(1)),
            MachineSpec::LasVegas(zoo::build_pal_npal(5)),
            MachineSpec::Restart(zoo::build_pal_npal_restart(2)),
            MachineSpec::Afca(zoo::build_manytwins(3)),
        ];
        for spec in machines {
            let text = serialize(&spec);
            let reparsed = parse(&text).expect("serialized zoo machine must parse");
            assert_eq!(reparsed, spec);
            // and serialization itself is stable
            assert_eq!(serialize(&reparsed), text);
        }
    }

    #[test]
    fn round_tripped_end_behaves_identically() {
        let original = zoo::build_end();
        let MachineSpec::Afca(reparsed) =
            parse(&serialize(&MachineSpec::Afca(original.clone()))).unwrap()
        else {
            panic!("expected an afca back");
        };
        for word in crate::oracle::enumerate_words(&['0', '1', '2'], 4) {
            assert_eq!(
                original.accept_prob(&word).unwrap(),
                reparsed.accept_prob(&word).unwrap(),
                "behavior diverged on {word:?}"
            );
        }
    }

    #[test]
    fn empty_file_is_a_syntax_error() {
        assert!(matches!(parse(""), Err(Error::Parse { .. })));
        assert!(matches!(parse("# only a comment\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn column_sum_violation_names_symbol_and_column() {
        let text = "\
type afa
states a b
alphabet x
initial a
accepting a
matrix ^
1 0
0 1
matrix $
1 0
0 1
matrix x
1 0
1 1
";
        let err = parse(text).unwrap_err();
        let Error::Invalid(report) = err else {
            panic!("expected a validation failure, got {err}");
        };
        assert!(report
            .problems
            .iter()
            .any(|p| p.contains("'x'") && p.contains("column 1")));
    }

    #[test]
    fn unknown_state_has_line_number() {
        let text = "\
type afa
states a b
alphabet x
initial nope
accepting a
";
        match parse(text) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("nope"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn blind_mode_requires_blind_transitions() {
        let mut m = zoo::build_end();
        m.accept_mode = crate::afca::AcceptMode::Blind;
        let text = serialize(&MachineSpec::Afca(m));
        let err = parse(&text).unwrap_err();
        let Error::Invalid(report) = err else {
            panic!("expected a validation failure");
        };
        assert!(report
            .problems
            .iter()
            .any(|p| p.contains("status-dependent")));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "\n\
# a trivial one-state machine
type afca   # one counter
counters 1
states q
alphabet a
initial q
accepting q
accept-mode states
t q a * q 0 1   # self loop
";
        let MachineSpec::Afca(m) = parse(text).unwrap() else {
            panic!()
        };
        assert_eq!(m.accept_prob("aaa").unwrap(), rat_int(1));
    }
}
