//! The machine zoo: concrete exact constructions for the languages END and
//! MANYTWINS and the promise problem PAL-NPAL, together with the base-3
//! block encoder and closed-form mid-run state oracles.
//!
//! - [`build_end`]: a 10-state one-counter machine recognizing END exactly
//!   (a product of a 2-state classical part and a 5-state affine part).
//! - [`build_pal_npal`] / [`build_pal_npal_restart`]: the 5-state Las Vegas
//!   machine for PAL-NPAL with integer parameter `k`, and its restart twin.
//! - [`build_manytwins`]: a 10-state blind one-counter machine recognizing
//!   MANYTWINS with one-sided error at most `1/(2k+1)`.
//!
//! The mid-run oracles [`end_prestate`] and [`manytwins_midstate`] compute
//! the simulator-independent closed forms of intermediate superpositions and
//! exist purely so tests can cross-check the step-by-step simulation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::afa::{AfaCore, LasVegasAfaSpec, RestartAfaSpec};
use crate::afca::{AcceptMode, AfcaSpec, AfcaTransition, Config, ConfigVector, StatusPattern};
use crate::error::Error;
use crate::linalg::{matrix_from_i64, AffineMatrix};
use crate::rational::{rat, Rational};
use crate::tape::MarkedSymbol;

/// Base-3 encoding of a word over {1,2}: `e("") = 0`, `e(u sigma) = 3 e(u) + sigma`.
/// Injective on {1,2}* because neither digit is 0.
pub fn encode_base3(word: &str) -> Result<BigInt, Error> {
    let mut value = BigInt::zero();
    for c in word.chars() {
        let digit = match c {
            '1' => 1,
            '2' => 2,
            _ => return Err(Error::UnknownSymbol(c.to_string())),
        };
        value = value * 3 + digit;
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// END
// ---------------------------------------------------------------------------

const END_FLAGS: [&str; 2] = ["s1", "s2"];
const END_AFFINE: [&str; 5] = ["p0", "p1", "p2", "p3", "p4"];

fn end_state(flag: usize, affine: usize) -> usize {
    flag * END_AFFINE.len() + affine
}

/// The exact one-counter machine for END. States are pairs of a classical
/// flag (`s1` until a symbol 2 is read, `s2` afterwards) and an affine state
/// `p0..p4`; only `(s2, p3)` accepts.
pub fn build_end() -> AfcaSpec {
    let states: Vec<String> = END_FLAGS
        .iter()
        .flat_map(|f| END_AFFINE.iter().map(move |p| format!("{f}_{p}")))
        .collect();
    let mut transitions = Vec::new();

    let mut push = |from: usize, symbol: MarkedSymbol, status: StatusPattern, to: usize, d: i8, value: Rational| {
        transitions.push(AfcaTransition {
            from,
            symbol,
            status: vec![status],
            to,
            moves: vec![d],
            value,
        });
    };

    // Left end-marker: p0 fans out to p0, p1, p2 with values 1, 1, -1.
    for (p, value) in [(0, rat(1, 1)), (1, rat(1, 1)), (2, rat(-1, 1))] {
        push(
            end_state(0, 0),
            MarkedSymbol::LeftEnd,
            StatusPattern::Any,
            end_state(0, p),
            0,
            value,
        );
    }

    // Input symbols. The classical flag jumps to s2 on a 2 and is absorbing;
    // the affine transitions never look at the counter status.
    for symbol in ['0', '1', '2'] {
        // (affine from, affine to, counter move, value)
        let rules: Vec<(usize, usize, i8, Rational)> = match symbol {
            '0' => vec![
                (0, 0, 0, rat(1, 1)),
                (1, 1, 0, rat(1, 1)),
                (1, 3, 1, rat(-1, 2)),
                (1, 4, 1, rat(1, 2)),
                (2, 2, 0, rat(1, 1)),
                (3, 3, 1, rat(1, 1)),
                (4, 4, 1, rat(1, 1)),
            ],
            '1' => vec![
                (0, 0, 0, rat(1, 1)),
                (1, 1, 0, rat(1, 1)),
                (1, 3, 1, rat(1, 2)),
                (1, 4, 1, rat(-1, 2)),
                (2, 2, 0, rat(1, 1)),
                (3, 3, 1, rat(1, 1)),
                (4, 4, 1, rat(1, 1)),
            ],
            _ => vec![
                (0, 0, 0, rat(1, 1)),
                (1, 1, -1, rat(1, 1)),
                (1, 3, 0, rat(-1, 2)),
                (1, 4, 0, rat(1, 2)),
                (2, 2, -1, rat(1, 1)),
                (3, 3, 0, rat(1, 1)),
                (4, 4, 0, rat(1, 1)),
            ],
        };
        for flag in 0..2 {
            let next_flag = if symbol == '2' { 1 } else { flag };
            for (from, to, d, value) in &rules {
                push(
                    end_state(flag, *from),
                    MarkedSymbol::Input(symbol),
                    StatusPattern::Any,
                    end_state(next_flag, *to),
                    *d,
                    value.clone(),
                );
            }
        }
    }

    // Right end-marker: p1 and p2 merge into p1 (their pair cancels); with a
    // nonzero counter p3 and p4 collapse into p3; with a zero counter they
    // stay put and p0 splits evenly over p3 and p4.
    for flag in 0..2 {
        for from in [1, 2] {
            push(
                end_state(flag, from),
                MarkedSymbol::RightEnd,
                StatusPattern::Any,
                end_state(flag, 1),
                0,
                rat(1, 1),
            );
        }
        push(
            end_state(flag, 3),
            MarkedSymbol::RightEnd,
            StatusPattern::Any,
            end_state(flag, 3),
            0,
            rat(1, 1),
        );
        push(
            end_state(flag, 4),
            MarkedSymbol::RightEnd,
            StatusPattern::NonZero,
            end_state(flag, 3),
            0,
            rat(1, 1),
        );
        push(
            end_state(flag, 4),
            MarkedSymbol::RightEnd,
            StatusPattern::Zero,
            end_state(flag, 4),
            0,
            rat(1, 1),
        );
        push(
            end_state(flag, 0),
            MarkedSymbol::RightEnd,
            StatusPattern::Zero,
            end_state(flag, 3),
            0,
            rat(1, 2),
        );
        push(
            end_state(flag, 0),
            MarkedSymbol::RightEnd,
            StatusPattern::Zero,
            end_state(flag, 4),
            0,
            rat(1, 2),
        );
        // p0 with a nonzero counter is unreachable; completed as a self-loop
        // so the row is total.
        push(
            end_state(flag, 0),
            MarkedSymbol::RightEnd,
            StatusPattern::NonZero,
            end_state(flag, 0),
            0,
            rat(1, 1),
        );
    }

    AfcaSpec {
        states,
        alphabet: ['0', '1', '2'].into_iter().collect(),
        counters: 1,
        transitions,
        initial: end_state(0, 0),
        accepting: [end_state(1, 3)].into(),
        accept_mode: AcceptMode::StateOnly,
    }
}

/// Closed form of the END machine's superposition just before the right
/// end-marker, for a word containing at least one symbol 2:
/// `|p0,0> + |p1,-kappa> - |p2,-kappa>` plus, for each position `i` of the
/// reversed word `x`, the pair `(-1)^{x[i]} (-1/2 |p3,i-kappa> + 1/2 |p4,i-kappa>)`.
pub fn end_prestate(word: &str) -> Result<ConfigVector, Error> {
    let kappa = word.chars().filter(|&c| c == '2').count() as i64;
    if kappa == 0 {
        return Err(Error::Precondition(
            "word must contain at least one symbol 2".to_string(),
        ));
    }
    for c in word.chars() {
        if !matches!(c, '0' | '1' | '2') {
            return Err(Error::UnknownSymbol(c.to_string()));
        }
    }
    let flag = 1; // a symbol 2 was read, so the classical part sits in s2
    let cfg = |affine: usize, counter: i64| Config {
        state: end_state(flag, affine),
        counters: vec![BigInt::from(counter)],
    };
    let mut entries = vec![
        (cfg(0, 0), rat(1, 1)),
        (cfg(1, -kappa), rat(1, 1)),
        (cfg(2, -kappa), rat(-1, 1)),
    ];
    for (i, c) in word.chars().rev().enumerate() {
        let i = i as i64 + 1;
        let sign = if c == '1' { rat(-1, 1) } else { rat(1, 1) };
        entries.push((cfg(3, i - kappa), &sign * rat(-1, 2)));
        entries.push((cfg(4, i - kappa), &sign * rat(1, 2)));
    }
    Ok(ConfigVector::from_amplitudes(entries))
}

// ---------------------------------------------------------------------------
// PAL-NPAL
// ---------------------------------------------------------------------------

/// Transition matrix for symbol 1: extends the base-3 encodings of the
/// current block and its reverse held in the first two entries.
pub fn pal_npal_m1() -> AffineMatrix {
    matrix_from_i64(&[
        &[4, 1, 1, 1, 1],
        &[0, 1, 1, 0, 0],
        &[0, 0, 3, 0, 0],
        &[0, 0, 0, 1, 0],
        &[-3, -1, -4, -1, 0],
    ])
}

/// Transition matrix for symbol 2.
pub fn pal_npal_m2() -> AffineMatrix {
    matrix_from_i64(&[
        &[5, 2, 2, 2, 2],
        &[0, 1, 2, 0, 0],
        &[0, 0, 3, 0, 0],
        &[0, 0, 0, 1, 0],
        &[-4, -2, -6, -2, -1],
    ])
}

/// Transition matrix for the separator 0: stores `e(x) - e(x^r)` in the
/// fourth entry and resets the encoding registers for the second block.
pub fn pal_npal_m0() -> AffineMatrix {
    matrix_from_i64(&[
        &[0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0],
        &[1, 1, 1, 1, 1],
        &[1, -1, 0, 0, 0],
        &[-1, 1, 0, 0, 0],
    ])
}

/// Right end-marker matrix with amplification parameter `k`.
pub fn pal_npal_mdollar(k: i64) -> AffineMatrix {
    matrix_from_i64(&[
        &[k, -k, 0, 0, 0],
        &[-k, k, 0, 0, 0],
        &[0, 0, 0, k, 0],
        &[0, 0, 0, -k, 0],
        &[1, 1, 1, 1, 1],
    ])
}

/// Left end-marker matrix: sends the initial basis vector to
/// `(0,0,1,0,0)^T` and acts as the identity on the other columns.
pub fn pal_npal_mcent() -> AffineMatrix {
    matrix_from_i64(&[
        &[0, 0, 0, 0, 0],
        &[0, 1, 0, 0, 0],
        &[1, 0, 1, 0, 0],
        &[0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 1],
    ])
}

fn pal_npal_core(k: i64) -> AfaCore {
    assert!(k >= 1, "pal-npal parameter k must be at least 1");
    AfaCore {
        states: (1..=5).map(|i| format!("s{i}")).collect(),
        alphabet: ['0', '1', '2'].into_iter().collect(),
        matrices: BTreeMap::from([
            (MarkedSymbol::LeftEnd, pal_npal_mcent()),
            (MarkedSymbol::RightEnd, pal_npal_mdollar(k)),
            (MarkedSymbol::Input('0'), pal_npal_m0()),
            (MarkedSymbol::Input('1'), pal_npal_m1()),
            (MarkedSymbol::Input('2'), pal_npal_m2()),
        ]),
        initial: 0,
    }
}

/// Las Vegas machine for the PAL-NPAL promise problem. On promised inputs
/// the wrong answer has probability exactly 0 and "don't know" has
/// probability at most `1/(2k+1)`. Panics if `k < 1`.
pub fn build_pal_npal(k: i64) -> LasVegasAfaSpec {
    LasVegasAfaSpec {
        core: pal_npal_core(k),
        accepting: [0, 1].into(),
        rejecting: [2, 3].into(),
        neutral: [4].into(),
    }
}

/// Restart twin of [`build_pal_npal`]: same matrices, the neutral state
/// restarts instead. Promised inputs are decided exactly with expected
/// runtime `(2k+1)/(2k) * (|w| + 2)` or better.
pub fn build_pal_npal_restart(k: i64) -> RestartAfaSpec {
    let lv = build_pal_npal(k);
    RestartAfaSpec {
        core: lv.core,
        accepting: lv.accepting,
        rejecting: lv.rejecting,
        restarting: lv.neutral,
    }
}

// ---------------------------------------------------------------------------
// MANYTWINS
// ---------------------------------------------------------------------------

const MANYTWINS_STATES: [&str; 10] = [
    "s1", "s2", "s3", "s1p", "s2p", "s3p", "se", "sep", "sa", "sr",
];

fn mt(name: &str) -> usize {
    MANYTWINS_STATES.iter().position(|&s| s == name).unwrap()
}

/// Blind one-counter machine for MANYTWINS with amplification parameter `k`.
/// Members are accepted with probability exactly 1; nonmembers with
/// probability at most `1/(2k+1)`. Panics if `k < 1`.
///
/// Each block `w_i` before the unique 3 is encoded in base-3 into the value
/// of `s2` (helped by `s1` and `s3`); on each separator the encoding is
/// dumped as `+k e(w_i)` on `se` and `-k e(w_i)` on `sep` at the current
/// counter value, and the counter tracks the block index. After the 3 the
/// primed states mirror the construction with opposite signs and a
/// decreasing counter, so matching blocks cancel exactly.
pub fn build_manytwins(k: i64) -> AfcaSpec {
    assert!(k >= 1, "manytwins parameter k must be at least 1");
    let kv = rat(k, 1);
    let mut transitions = Vec::new();
    let mut push = |from: &str, symbol: MarkedSymbol, to: &str, d: i8, value: Rational| {
        transitions.push(AfcaTransition {
            from: mt(from),
            symbol,
            status: vec![StatusPattern::Any],
            to: mt(to),
            moves: vec![d],
            value,
        });
    };

    push("s1", MarkedSymbol::LeftEnd, "s1", 0, rat(1, 1));

    for symbol in ['1', '2'] {
        let digit = symbol as i64 - '0' as i64;
        let sym = MarkedSymbol::Input(symbol);
        // base-3 encoding into s2, mirrored on the primed side
        for (s1, s2, s3) in [("s1", "s2", "s3"), ("s1p", "s2p", "s3p")] {
            push(s1, sym, s1, 0, rat(1, 1));
            push(s1, sym, s2, 0, rat(digit, 1));
            push(s1, sym, s3, 0, rat(-digit, 1));
            push(s2, sym, s2, 0, rat(3, 1));
            push(s2, sym, s3, 0, rat(-2, 1));
            push(s3, sym, s3, 0, rat(1, 1));
        }
        push("se", sym, "se", 0, rat(1, 1));
        push("sep", sym, "sep", 0, rat(1, 1));
    }

    // Separator 0 before the 3: dump +k e(w_i) / -k e(w_i) onto the e-states
    // and advance the counter on s1. The s2 -> s3 value-1 branch zeroes s3,
    // which holds -e(w_i) at this point.
    push("s1", MarkedSymbol::Input('0'), "s1", 1, rat(1, 1));
    push("s2", MarkedSymbol::Input('0'), "se", 0, kv.clone());
    push("s2", MarkedSymbol::Input('0'), "sep", 0, -kv.clone());
    push("s2", MarkedSymbol::Input('0'), "s3", 0, rat(1, 1));
    push("s3", MarkedSymbol::Input('0'), "s3", 0, rat(1, 1));

    // Separator 0 after the 3: mirrored signs, counter moves down.
    push("s1p", MarkedSymbol::Input('0'), "s1p", -1, rat(1, 1));
    push("s2p", MarkedSymbol::Input('0'), "se", 0, -kv.clone());
    push("s2p", MarkedSymbol::Input('0'), "sep", 0, kv.clone());
    push("s2p", MarkedSymbol::Input('0'), "s3p", 0, rat(1, 1));
    push("s3p", MarkedSymbol::Input('0'), "s3p", 0, rat(1, 1));

    push("se", MarkedSymbol::Input('0'), "se", 0, rat(1, 1));
    push("sep", MarkedSymbol::Input('0'), "sep", 0, rat(1, 1));

    // The first 3 behaves like a pre-phase 0 except that s1 hands over to
    // s1p without touching the counter; a second 3 drains the primed states
    // into the trap sr.
    push("s1", MarkedSymbol::Input('3'), "s1p", 0, rat(1, 1));
    push("s2", MarkedSymbol::Input('3'), "se", 0, kv.clone());
    push("s2", MarkedSymbol::Input('3'), "sep", 0, -kv.clone());
    push("s2", MarkedSymbol::Input('3'), "s3", 0, rat(1, 1));
    push("s3", MarkedSymbol::Input('3'), "s3", 0, rat(1, 1));
    push("s1p", MarkedSymbol::Input('3'), "sr", 0, rat(1, 1));
    push("s2p", MarkedSymbol::Input('3'), "sr", 0, rat(1, 1));
    push("s3p", MarkedSymbol::Input('3'), "sr", 0, rat(1, 1));
    push("se", MarkedSymbol::Input('3'), "se", 0, rat(1, 1));
    push("sep", MarkedSymbol::Input('3'), "sep", 0, rat(1, 1));

    // Right end-marker: like a post-phase 0 but s1p moves to the accepting
    // state.
    push("s1p", MarkedSymbol::RightEnd, "sa", 0, rat(1, 1));
    push("s2p", MarkedSymbol::RightEnd, "se", 0, -kv.clone());
    push("s2p", MarkedSymbol::RightEnd, "sep", 0, kv);
    push("s2p", MarkedSymbol::RightEnd, "s3p", 0, rat(1, 1));
    push("s3p", MarkedSymbol::RightEnd, "s3p", 0, rat(1, 1));
    push("se", MarkedSymbol::RightEnd, "se", 0, rat(1, 1));
    push("sep", MarkedSymbol::RightEnd, "sep", 0, rat(1, 1));

    AfcaSpec {
        states: MANYTWINS_STATES.iter().map(|s| s.to_string()).collect(),
        alphabet: ['0', '1', '2', '3'].into_iter().collect(),
        counters: 1,
        transitions,
        initial: mt("s1"),
        accepting: [mt("sa")].into(),
        accept_mode: AcceptMode::Blind,
    }
}

/// Closed form of the MANYTWINS superposition right after reading the prefix
/// `u1 = w_1 0 w_2 0 ... 0 w_t 3`:
/// `|s1p, t-1> + sum_i (k e(w_i) |se, i-1> - k e(w_i) |sep, i-1>)`.
pub fn manytwins_midstate(u1: &str, k: i64) -> Result<ConfigVector, Error> {
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".to_string()));
    }
    let Some(prefix) = u1.strip_suffix('3') else {
        return Err(Error::Precondition(format!(
            "prefix '{u1}' does not end with the symbol 3"
        )));
    };
    if prefix.contains('3') {
        return Err(Error::Precondition(format!(
            "prefix '{u1}' contains more than one symbol 3"
        )));
    }
    let blocks: Vec<&str> = prefix.split('0').collect();
    let t = blocks.len() as i64;
    let cfg = |name: &str, counter: i64| Config {
        state: mt(name),
        counters: vec![BigInt::from(counter)],
    };
    let mut entries = vec![(cfg("s1p", t - 1), rat(1, 1))];
    for (i, block) in blocks.iter().enumerate() {
        let enc = Rational::from_integer(encode_base3(block)?);
        let weight = rat(k, 1) * enc;
        entries.push((cfg("se", i as i64), weight.clone()));
        entries.push((cfg("sep", i as i64), -weight));
    }
    Ok(ConfigVector::from_amplitudes(entries))
}
