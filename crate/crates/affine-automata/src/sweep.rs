//! Exhaustive machine-vs-oracle comparison.
//!
//! A sweep enumerates every word over a chosen alphabet up to a length
//! bound, runs the machine on each, queries a brute-force oracle for the
//! expected label, and checks the corresponding probability claim with
//! exact arithmetic: exactness for END, one-sided bounds with parameter `k`
//! for the others. Unpromised words are reported but never counted as
//! failures.

use num_traits::{One, Zero};

use crate::afa::OutcomeTriple;
use crate::error::Error;
use crate::format::MachineSpec;
use crate::oracle::{self, PromiseLabel};
use crate::rational::{display_prob, rat, Rational};

/// Sweeps beyond this many words need [`SweepOptions::force`].
pub const DEFAULT_WORD_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    End,
    Pal,
    PalNpal,
    ManyTwins,
    TwinT(usize),
}

impl OracleKind {
    pub fn parse(name: &str) -> Result<Self, Error> {
        match name {
            "end" => Ok(OracleKind::End),
            "pal" => Ok(OracleKind::Pal),
            "pal-npal" => Ok(OracleKind::PalNpal),
            "manytwins" => Ok(OracleKind::ManyTwins),
            _ => match name.strip_prefix("twin-t:") {
                Some(t) => {
                    let t: usize = t
                        .parse()
                        .map_err(|_| Error::Precondition(format!("bad twin-t parameter '{t}'")))?;
                    if t < 1 {
                        return Err(Error::Precondition("twin-t parameter must be >= 1".into()));
                    }
                    Ok(OracleKind::TwinT(t))
                }
                None => Err(Error::Precondition(format!("unknown oracle '{name}'"))),
            },
        }
    }

    pub fn name(&self) -> String {
        match self {
            OracleKind::End => "end".to_string(),
            OracleKind::Pal => "pal".to_string(),
            OracleKind::PalNpal => "pal-npal".to_string(),
            OracleKind::ManyTwins => "manytwins".to_string(),
            OracleKind::TwinT(t) => format!("twin-t:{t}"),
        }
    }

    fn alphabet(&self) -> &'static [char] {
        match self {
            OracleKind::End | OracleKind::PalNpal => &['0', '1', '2'],
            OracleKind::Pal => &['1', '2'],
            OracleKind::ManyTwins | OracleKind::TwinT(_) => &['0', '1', '2', '3'],
        }
    }

    fn label(&self, word: &str) -> Result<PromiseLabel, Error> {
        Ok(match self {
            OracleKind::End => bool_label(oracle::in_end(word)?),
            OracleKind::Pal => bool_label(oracle::in_pal(word)?),
            OracleKind::PalNpal => oracle::classify_pal_npal(word),
            OracleKind::ManyTwins => bool_label(oracle::in_manytwins(word)),
            OracleKind::TwinT(t) => bool_label(oracle::in_twin_t(word, *t)?),
        })
    }

    fn claim(&self) -> ClaimRule {
        match self {
            OracleKind::End => ClaimRule::Exact,
            // Las Vegas: never wrong, may answer "don't know".
            OracleKind::PalNpal => ClaimRule::LasVegas,
            // One-sided error: members accepted surely, nonmembers sneak
            // through with probability at most 1/(2k+1).
            OracleKind::Pal | OracleKind::ManyTwins | OracleKind::TwinT(_) => ClaimRule::OneSided,
        }
    }
}

/// Which probability statement a sweep checks per promised word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ClaimRule {
    /// Right answer has probability exactly 1.
    Exact,
    /// Wrong answer exactly 0, right answer >= 2k/(2k+1), neutral <= 1/(2k+1).
    LasVegas,
    /// Members accepted with probability exactly 1; nonmembers accepted with
    /// probability at most 1/(2k+1).
    OneSided,
}

fn bool_label(member: bool) -> PromiseLabel {
    if member {
        PromiseLabel::Yes
    } else {
        PromiseLabel::No
    }
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub oracle: OracleKind,
    pub alphabet: Vec<char>,
    pub max_len: usize,
    /// Amplification parameter used in the one-sided bound `1/(2k+1)`.
    pub k: i64,
    /// Allow sweeps over more than [`DEFAULT_WORD_LIMIT`] words.
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Unpromised word: reported, never counted.
    Info,
}

impl Verdict {
    fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub word: String,
    pub label: PromiseLabel,
    pub outcome: OutcomeTriple,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub oracle: OracleKind,
    pub rows: Vec<SweepRow>,
    pub passes: u64,
    pub failures: u64,
    pub unpromised: u64,
    /// Largest wrong-answer probability observed over promised words.
    pub max_error: Rational,
}

impl SweepReport {
    pub fn is_pass(&self) -> bool {
        self.failures == 0
    }

    /// Tab-separated rendering: a header, one row per word in enumeration
    /// order, and a summary footer. Probabilities are exact `p/q`; the
    /// output is byte-identical across runs.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("word\toracle\tp_accept\tp_reject\tp_neutral\tverdict\n");
        for row in &self.rows {
            let label = match row.label {
                PromiseLabel::Yes => "yes",
                PromiseLabel::No => "no",
                PromiseLabel::Unpromised => "unpromised",
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                row.word,
                label,
                display_prob(&row.outcome.accept),
                display_prob(&row.outcome.reject),
                display_prob(&row.outcome.neutral),
                row.verdict.as_str()
            ));
        }
        out.push_str(&format!(
            "# oracle {} words {} pass {} fail {} unpromised {} max_error {}\n",
            self.oracle.name(),
            self.rows.len(),
            self.passes,
            self.failures,
            self.unpromised,
            display_prob(&self.max_error)
        ));
        out
    }
}

fn outcome_of(spec: &MachineSpec, word: &str) -> Result<OutcomeTriple, Error> {
    match spec {
        MachineSpec::Afa(m) => {
            let accept = m.accept_prob(word)?;
            Ok(OutcomeTriple {
                reject: Rational::one() - &accept,
                accept,
                neutral: Rational::zero(),
            })
        }
        MachineSpec::Afca(m) => {
            let accept = m.accept_prob(word)?;
            Ok(OutcomeTriple {
                reject: Rational::one() - &accept,
                accept,
                neutral: Rational::zero(),
            })
        }
        MachineSpec::LasVegas(m) => m.outcome(word),
        MachineSpec::Restart(m) => m.single_round(word),
    }
}

/// Runs a sweep. Errors if the sweep alphabet is not covered by both the
/// machine and the oracle, or if the word count exceeds the limit without
/// `force`.
pub fn sweep(spec: &MachineSpec, opts: &SweepOptions) -> Result<SweepReport, Error> {
    let machine_alphabet = spec.alphabet();
    for &c in &opts.alphabet {
        if !machine_alphabet.contains(&c) {
            return Err(Error::Precondition(format!(
                "sweep symbol '{c}' is not in the machine alphabet"
            )));
        }
        if !opts.oracle.alphabet().contains(&c) {
            return Err(Error::Precondition(format!(
                "sweep symbol '{c}' is not in the {} oracle alphabet",
                opts.oracle.name()
            )));
        }
    }
    if opts.k < 1 {
        return Err(Error::Precondition("sweep parameter k must be >= 1".into()));
    }
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 0..=opts.max_len {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(opts.alphabet.len() as u64);
    }
    if total > DEFAULT_WORD_LIMIT && !opts.force {
        return Err(Error::Precondition(format!(
            "sweep would enumerate {total} words (> {DEFAULT_WORD_LIMIT}); pass force to allow"
        )));
    }

    let claim = opts.oracle.claim();
    let yes_floor = rat(2 * opts.k, 2 * opts.k + 1);
    let sneak_cap = rat(1, 2 * opts.k + 1);

    let mut rows = Vec::new();
    let (mut passes, mut failures, mut unpromised) = (0u64, 0u64, 0u64);
    let mut max_error = Rational::zero();
    for word in oracle::enumerate_words(&opts.alphabet, opts.max_len) {
        let label = opts.oracle.label(&word)?;
        let outcome = outcome_of(spec, &word)?;
        let verdict = match label {
            PromiseLabel::Unpromised => Verdict::Info,
            PromiseLabel::Yes | PromiseLabel::No => {
                let (right, wrong) = match label {
                    PromiseLabel::Yes => (&outcome.accept, &outcome.reject),
                    _ => (&outcome.reject, &outcome.accept),
                };
                if wrong > &max_error {
                    max_error = wrong.clone();
                }
                let ok = match claim {
                    ClaimRule::Exact => {
                        right.is_one() && wrong.is_zero() && outcome.neutral.is_zero()
                    }
                    ClaimRule::LasVegas => {
                        wrong.is_zero() && *right >= yes_floor && outcome.neutral <= sneak_cap
                    }
                    ClaimRule::OneSided => match label {
                        PromiseLabel::Yes => outcome.accept.is_one(),
                        _ => outcome.accept <= sneak_cap,
                    },
                };
                if ok {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
        };
        match verdict {
            Verdict::Pass => passes += 1,
            Verdict::Fail => failures += 1,
            Verdict::Info => unpromised += 1,
        }
        rows.push(SweepRow {
            word,
            label,
            outcome,
            verdict,
        });
    }
    Ok(SweepReport {
        oracle: opts.oracle,
        rows,
        passes,
        failures,
        unpromised,
        max_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::MachineSpec;
    use crate::zoo;

    #[test]
    fn end_sweep_is_exact_at_small_length() {
        let spec = MachineSpec::Afca(zoo::build_end());
        let report = sweep(
            &spec,
            &SweepOptions {
                oracle: OracleKind::End,
                alphabet: vec!['0', '1', '2'],
                max_len: 4,
                k: 1,
                force: false,
            },
        )
        .unwrap();
        assert!(report.is_pass());
        assert_eq!(report.rows.len(), 121);
        assert!(report.max_error.is_zero());
    }

    #[test]
    fn pal_npal_sweep_passes_and_is_deterministic() {
        let spec = MachineSpec::LasVegas(zoo::build_pal_npal(2));
        let opts = SweepOptions {
            oracle: OracleKind::PalNpal,
            alphabet: vec!['0', '1', '2'],
            max_len: 5,
            k: 2,
            force: false,
        };
        let a = sweep(&spec, &opts).unwrap();
        let b = sweep(&spec, &opts).unwrap();
        assert!(a.is_pass());
        assert!(a.unpromised > 0);
        assert_eq!(a.to_tsv(), b.to_tsv());
        assert!(!a.to_tsv().contains("0."));
    }

    #[test]
    fn manytwins_sweep_uses_the_one_sided_rule() {
        let spec = MachineSpec::Afca(zoo::build_manytwins(1));
        let report = sweep(
            &spec,
            &SweepOptions {
                oracle: OracleKind::ManyTwins,
                alphabet: vec!['0', '1', '2', '3'],
                max_len: 5,
                k: 1,
                force: false,
            },
        )
        .unwrap();
        // "132" is accepted with probability 1/3 = 1/(2k+1): allowed for a
        // nonmember, and the largest error the machine ever makes.
        assert!(report.is_pass());
        assert_eq!(report.max_error, rat(1, 3));
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let spec = MachineSpec::Afca(zoo::build_end());
        let err = sweep(
            &spec,
            &SweepOptions {
                oracle: OracleKind::End,
                alphabet: vec!['0', '3'],
                max_len: 2,
                k: 1,
                force: false,
            },
        );
        assert!(err.is_err());
    }

    #[test]
    fn word_limit_requires_force() {
        let spec = MachineSpec::Afca(zoo::build_end());
        let opts = SweepOptions {
            oracle: OracleKind::End,
            alphabet: vec!['0', '1', '2'],
            max_len: 14,
            k: 1,
            force: false,
        };
        assert!(sweep(&spec, &opts).is_err());
    }

    #[test]
    fn oracle_names_parse() {
        assert_eq!(OracleKind::parse("end").unwrap(), OracleKind::End);
        assert_eq!(OracleKind::parse("twin-t:3").unwrap(), OracleKind::TwinT(3));
        assert!(OracleKind::parse("twin-t:0").is_err());
        assert!(OracleKind::parse("nope").is_err());
    }
}
