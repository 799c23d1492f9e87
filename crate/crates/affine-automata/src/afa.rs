//! Realtime affine finite automata.
//!
//! A machine is a state set, an alphabet, one affine matrix per tape symbol
//! (including both end-markers), an initial state and an acceptance
//! structure. Running a word folds the matrices over `¢ w $` starting from
//! the basis vector of the initial state; acceptance probabilities come from
//! the weighting operator on the final vector.
//!
//! Three acceptance structures exist: a plain accepting set, a Las Vegas
//! partition (accepting / rejecting / neutral) and a restart partition
//! (accepting / rejecting / restarting). Restart machines are analyzed in
//! closed form: the overall accept probability is the single-round accept
//! probability normalized by the per-round halting probability.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, ValidationReport};
use crate::linalg::{AffineMatrix, AffineVector};
use crate::rational::Rational;
use crate::tape::{check_word, frame_word, MarkedSymbol};

/// States, alphabet, matrices and initial state; everything except the
/// acceptance structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AfaCore {
    pub states: Vec<String>,
    pub alphabet: BTreeSet<char>,
    pub matrices: BTreeMap<MarkedSymbol, AffineMatrix>,
    pub initial: usize,
}

impl AfaCore {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, name: &str) -> Result<usize, Error> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    fn matrix(&self, symbol: MarkedSymbol) -> Result<&AffineMatrix, Error> {
        self.matrices
            .get(&symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    /// Folds the per-symbol matrices over `¢ w $`.
    pub fn run(&self, word: &str) -> Result<AffineVector, Error> {
        check_word(word, &self.alphabet)?;
        let mut v = AffineVector::basis(self.state_count(), self.initial)?;
        for symbol in frame_word(word) {
            v = self.matrix(symbol)?.apply(&v)?;
        }
        Ok(v)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::ok();
        let n = self.state_count();
        if n == 0 {
            report.push("machine has no states");
        }
        if self.initial >= n {
            report.push(format!("initial state index {} out of range", self.initial));
        }
        for marker in [MarkedSymbol::LeftEnd, MarkedSymbol::RightEnd] {
            if !self.matrices.contains_key(&marker) {
                report.push(format!("missing matrix for end-marker '{marker}'"));
            }
        }
        for &c in &self.alphabet {
            if !self.matrices.contains_key(&MarkedSymbol::Input(c)) {
                report.push(format!("missing matrix for symbol '{c}'"));
            }
        }
        for (symbol, matrix) in &self.matrices {
            if let MarkedSymbol::Input(c) = symbol {
                if !self.alphabet.contains(c) {
                    report.push(format!("matrix for '{c}' but '{c}' is not in the alphabet"));
                }
            }
            if matrix.dim() != n {
                report.push(format!(
                    "matrix for '{symbol}' is {}x{} but the machine has {n} states",
                    matrix.dim(),
                    matrix.dim()
                ));
                continue;
            }
            for problem in matrix.validate().problems {
                report.push(format!("matrix for '{symbol}': {problem}"));
            }
        }
        report
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AfaSpec {
    pub core: AfaCore,
    pub accepting: BTreeSet<usize>,
}

impl AfaSpec {
    pub fn run(&self, word: &str) -> Result<AffineVector, Error> {
        self.core.run(word)
    }

    pub fn accept_prob(&self, word: &str) -> Result<Rational, Error> {
        let v = self.run(word)?;
        v.weigh(self.accepting.iter().copied())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = self.core.validate();
        check_state_set(&mut report, "accepting", &self.accepting, self.core.state_count());
        report
    }
}

/// Probabilities of the three Las Vegas answers; always sums to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeTriple {
    pub accept: Rational,
    pub reject: Rational,
    pub neutral: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LasVegasAfaSpec {
    pub core: AfaCore,
    pub accepting: BTreeSet<usize>,
    pub rejecting: BTreeSet<usize>,
    pub neutral: BTreeSet<usize>,
}

impl LasVegasAfaSpec {
    pub fn run(&self, word: &str) -> Result<AffineVector, Error> {
        self.core.run(word)
    }

    pub fn outcome(&self, word: &str) -> Result<OutcomeTriple, Error> {
        let v = self.run(word)?;
        outcome_of(&v, &self.accepting, &self.rejecting, &self.neutral)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = self.core.validate();
        check_partition(
            &mut report,
            &[
                ("accepting", &self.accepting),
                ("rejecting", &self.rejecting),
                ("neutral", &self.neutral),
            ],
            self.core.state_count(),
        );
        report
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestartAfaSpec {
    pub core: AfaCore,
    pub accepting: BTreeSet<usize>,
    pub rejecting: BTreeSet<usize>,
    pub restarting: BTreeSet<usize>,
}

/// Closed-form restart behavior derived from a single round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestartAnalysis {
    pub single_round: OutcomeTriple,
    /// Accept probability over all rounds, `p_a / (p_a + p_r)`.
    pub overall_accept: Rational,
    /// Expected number of rounds, `1 / (p_a + p_r)`.
    pub expected_rounds: Rational,
    /// Expected number of read symbols, rounds times `|w| + 2`.
    pub expected_steps: Rational,
}

impl RestartAfaSpec {
    pub fn run(&self, word: &str) -> Result<AffineVector, Error> {
        self.core.run(word)
    }

    pub fn single_round(&self, word: &str) -> Result<OutcomeTriple, Error> {
        let v = self.run(word)?;
        outcome_of(&v, &self.accepting, &self.rejecting, &self.restarting)
    }

    /// Expected values over the whole restart process, computed exactly from
    /// one round. Errors out if the machine can never halt on this word.
    pub fn analyze(&self, word: &str) -> Result<RestartAnalysis, Error> {
        let single_round = self.single_round(word)?;
        let halting = &single_round.accept + &single_round.reject;
        if halting.is_zero() {
            return Err(Error::Nonterminating);
        }
        let overall_accept = &single_round.accept / &halting;
        let expected_rounds = halting.recip();
        let framed_len = Rational::from_integer((word.chars().count() as i64 + 2).into());
        let expected_steps = &expected_rounds * framed_len;
        Ok(RestartAnalysis {
            single_round,
            overall_accept,
            expected_rounds,
            expected_steps,
        })
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = self.core.validate();
        check_partition(
            &mut report,
            &[
                ("accepting", &self.accepting),
                ("rejecting", &self.rejecting),
                ("restarting", &self.restarting),
            ],
            self.core.state_count(),
        );
        report
    }
}

fn outcome_of(
    v: &AffineVector,
    accepting: &BTreeSet<usize>,
    rejecting: &BTreeSet<usize>,
    neutral: &BTreeSet<usize>,
) -> Result<OutcomeTriple, Error> {
    Ok(OutcomeTriple {
        accept: v.weigh(accepting.iter().copied())?,
        reject: v.weigh(rejecting.iter().copied())?,
        neutral: v.weigh(neutral.iter().copied())?,
    })
}

fn check_state_set(
    report: &mut ValidationReport,
    label: &str,
    set: &BTreeSet<usize>,
    state_count: usize,
) {
    for &i in set {
        if i >= state_count {
            report.push(format!("{label} state index {i} out of range"));
        }
    }
}

fn check_partition(
    report: &mut ValidationReport,
    parts: &[(&str, &BTreeSet<usize>)],
    state_count: usize,
) {
    let mut seen: BTreeMap<usize, &str> = BTreeMap::new();
    let mut total = 0usize;
    for (label, set) in parts {
        check_state_set(report, label, set, state_count);
        total += set.len();
        for &i in set.iter() {
            if let Some(prev) = seen.insert(i, label) {
                report.push(format!(
                    "state {i} appears in both the {prev} and {label} sets"
                ));
            }
        }
    }
    if seen.len() == total && seen.len() != state_count {
        report.push(format!(
            "partition covers {} of {} states",
            seen.len(),
            state_count
        ));
    }
}
