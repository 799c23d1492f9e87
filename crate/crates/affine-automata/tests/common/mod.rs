//! Shared generators for randomized integration tests: well-formed random
//! AfA and AfCA machines, plus invalid mutants of both.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use affine_automata::afa::{AfaCore, AfaSpec};
use affine_automata::afca::{AcceptMode, AfcaSpec, AfcaTransition, StatusPattern};
use affine_automata::linalg::AffineMatrix;
use affine_automata::rational::{rat, Rational};
use affine_automata::tape::MarkedSymbol;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-3..=3), rng.gen_range(1..=4))
}

/// A random column with entries summing to exactly 1.
fn affine_column(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let mut column: Vec<Rational> = (0..n - 1).map(|_| small_rational(rng)).collect();
    let sum: Rational = column.iter().sum();
    column.push(Rational::one() - sum);
    column
}

pub fn random_affine_matrix(rng: &mut ChaCha8Rng, n: usize) -> AffineMatrix {
    let columns: Vec<Vec<Rational>> = (0..n).map(|_| affine_column(rng, n)).collect();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| columns[j][i].clone()).collect())
        .collect();
    AffineMatrix::from_rows(rows).unwrap()
}

pub fn random_afa(rng: &mut ChaCha8Rng) -> AfaSpec {
    let n = rng.gen_range(2..=5);
    let alphabet: BTreeSet<char> = ['a', 'b'].into_iter().collect();
    let mut matrices = BTreeMap::new();
    for symbol in [
        MarkedSymbol::LeftEnd,
        MarkedSymbol::RightEnd,
        MarkedSymbol::Input('a'),
        MarkedSymbol::Input('b'),
    ] {
        matrices.insert(symbol, random_affine_matrix(rng, n));
    }
    let accepting: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
    AfaSpec {
        core: AfaCore {
            states: (0..n).map(|i| format!("q{i}")).collect(),
            alphabet,
            matrices,
            initial: rng.gen_range(0..n),
        },
        accepting,
    }
}

/// Invalidates one matrix entry, breaking a column sum.
pub fn mutate_afa(rng: &mut ChaCha8Rng, spec: &AfaSpec) -> AfaSpec {
    let mut spec = spec.clone();
    let symbols: Vec<MarkedSymbol> = spec.core.matrices.keys().copied().collect();
    let symbol = symbols[rng.gen_range(0..symbols.len())];
    let n = spec.core.state_count();
    let matrix = spec.core.matrices.get_mut(&symbol).unwrap();
    let mut rows: Vec<Vec<Rational>> = matrix.rows().to_vec();
    rows[rng.gen_range(0..n)][rng.gen_range(0..n)] += Rational::one();
    *matrix = AffineMatrix::from_rows(rows).unwrap();
    spec
}

/// A random well-formed AfCA: for every (state, symbol) a wildcard-status
/// branch list whose values sum to exactly 1.
pub fn random_afca(rng: &mut ChaCha8Rng) -> AfcaSpec {
    let n = rng.gen_range(2..=4);
    let counters = rng.gen_range(1..=2);
    let alphabet: BTreeSet<char> = ['a', 'b'].into_iter().collect();
    let mut transitions = Vec::new();
    for from in 0..n {
        for symbol in [
            MarkedSymbol::LeftEnd,
            MarkedSymbol::RightEnd,
            MarkedSymbol::Input('a'),
            MarkedSymbol::Input('b'),
        ] {
            let branches = rng.gen_range(1..=3);
            let mut targets: Vec<(usize, Vec<i8>)> = Vec::new();
            while targets.len() < branches {
                let to = rng.gen_range(0..n);
                let moves: Vec<i8> = (0..counters).map(|_| rng.gen_range(-1..=1)).collect();
                if !targets.contains(&(to, moves.clone())) {
                    targets.push((to, moves));
                }
            }
            let mut values: Vec<Rational> =
                (0..targets.len() - 1).map(|_| small_rational(rng)).collect();
            let sum: Rational = values.iter().sum();
            values.push(Rational::one() - sum);
            for ((to, moves), value) in targets.into_iter().zip(values) {
                transitions.push(AfcaTransition {
                    from,
                    symbol,
                    status: vec![StatusPattern::Any; counters],
                    to,
                    moves,
                    value,
                });
            }
        }
    }
    AfcaSpec {
        states: (0..n).map(|i| format!("q{i}")).collect(),
        alphabet,
        counters,
        transitions,
        initial: rng.gen_range(0..n),
        accepting: (0..n).filter(|_| rng.gen_bool(0.4)).collect(),
        accept_mode: AcceptMode::StateOnly,
    }
}

/// Invalidates one transition value, breaking a row sum.
pub fn mutate_afca(rng: &mut ChaCha8Rng, spec: &AfcaSpec) -> AfcaSpec {
    let mut spec = spec.clone();
    let i = rng.gen_range(0..spec.transitions.len());
    spec.transitions[i].value += Rational::one();
    spec
}

/// A random {0,1}-valued AfCA: exactly one branch of value 1 per row, i.e.
/// a realtime deterministic counter automaton in affine clothing.
pub fn random_deterministic_afca(rng: &mut ChaCha8Rng) -> AfcaSpec {
    let n = rng.gen_range(2..=4);
    let counters = rng.gen_range(1..=2);
    let alphabet: BTreeSet<char> = ['a', 'b'].into_iter().collect();
    let mut transitions = Vec::new();
    for from in 0..n {
        for symbol in [
            MarkedSymbol::LeftEnd,
            MarkedSymbol::RightEnd,
            MarkedSymbol::Input('a'),
            MarkedSymbol::Input('b'),
        ] {
            // one row per concrete status so the branch may inspect counters
            for mask in 0..(1u32 << counters) {
                let status: Vec<StatusPattern> = (0..counters)
                    .map(|c| {
                        if mask & (1 << c) == 0 {
                            StatusPattern::Zero
                        } else {
                            StatusPattern::NonZero
                        }
                    })
                    .collect();
                transitions.push(AfcaTransition {
                    from,
                    symbol,
                    status,
                    to: rng.gen_range(0..n),
                    moves: (0..counters).map(|_| rng.gen_range(-1..=1)).collect(),
                    value: Rational::one(),
                });
            }
        }
    }
    AfcaSpec {
        states: (0..n).map(|i| format!("q{i}")).collect(),
        alphabet,
        counters,
        transitions,
        initial: rng.gen_range(0..n),
        accepting: (0..n).filter(|_| rng.gen_bool(0.5)).collect(),
        accept_mode: AcceptMode::StateOnly,
    }
}

pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| if rng.gen_bool(0.5) { 'a' } else { 'b' })
        .collect()
}
