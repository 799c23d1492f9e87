//! Realtime affine k-counter automata.
//!
//! An AfCA extends an AfA with counters: a classical configuration is a pair
//! of a state and a counter-value vector, and the machine evolves an affine
//! superposition over configurations. The transition function assigns a
//! rational value to each move `(s, sigma, status) -> (s', d)`, where the
//! status exposes one bit per counter (zero / nonzero) and each counter move
//! is in {-1, 0, +1}. Well-formedness requires every `(s, sigma, status)`
//! row to sum to exactly 1.
//!
//! Superpositions are kept sparse: only configurations with nonzero
//! coefficient are stored, and exact arithmetic prunes cancellations.
//!
//! Two acceptance modes exist. `StateOnly` weighs every configuration whose
//! state is accepting; `Blind` additionally requires all counters to be zero
//! at the end and demands that the transition function never inspects the
//! counter status.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, ValidationReport};
use crate::rational::Rational;
use crate::tape::{check_word, frame_word, MarkedSymbol};

/// Observable status of one counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CounterFlag {
    Zero,
    NonZero,
}

impl CounterFlag {
    pub fn of(value: &BigInt) -> Self {
        if value.is_zero() {
            CounterFlag::Zero
        } else {
            CounterFlag::NonZero
        }
    }
}

/// Per-counter status requirement of a transition record. `Any` expands to
/// both concrete flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatusPattern {
    Zero,
    NonZero,
    Any,
}

impl StatusPattern {
    fn expand(&self) -> &'static [CounterFlag] {
        match self {
            StatusPattern::Zero => &[CounterFlag::Zero],
            StatusPattern::NonZero => &[CounterFlag::NonZero],
            StatusPattern::Any => &[CounterFlag::Zero, CounterFlag::NonZero],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AfcaTransition {
    pub from: usize,
    pub symbol: MarkedSymbol,
    pub status: Vec<StatusPattern>,
    pub to: usize,
    pub moves: Vec<i8>,
    pub value: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcceptMode {
    StateOnly,
    Blind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AfcaSpec {
    pub states: Vec<String>,
    pub alphabet: BTreeSet<char>,
    pub counters: usize,
    pub transitions: Vec<AfcaTransition>,
    pub initial: usize,
    pub accepting: BTreeSet<usize>,
    pub accept_mode: AcceptMode,
}

/// One classical configuration: a state and one value per counter.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Config {
    pub state: usize,
    pub counters: Vec<BigInt>,
}

impl Config {
    pub fn initial(state: usize, counters: usize) -> Self {
        Config {
            state,
            counters: vec![BigInt::zero(); counters],
        }
    }

    fn status(&self) -> Vec<CounterFlag> {
        self.counters.iter().map(CounterFlag::of).collect()
    }
}

/// Sparse affine superposition over configurations; zero coefficients are
/// never stored. Coefficients of a reachable superposition sum to 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfigVector {
    amplitudes: BTreeMap<Config, Rational>,
}

impl ConfigVector {
    pub fn singleton(config: Config) -> Self {
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(config, Rational::one());
        ConfigVector { amplitudes }
    }

    pub fn from_amplitudes(
        entries: impl IntoIterator<Item = (Config, Rational)>,
    ) -> Self {
        let mut v = ConfigVector::default();
        for (config, coeff) in entries {
            v.add(config, coeff);
        }
        v
    }

    pub fn amplitudes(&self) -> &BTreeMap<Config, Rational> {
        &self.amplitudes
    }

    pub fn support_size(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.amplitudes.values().sum()
    }

    pub fn l1_norm(&self) -> Rational {
        self.amplitudes.values().map(|c| c.abs()).sum()
    }

    fn add(&mut self, config: Config, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.amplitudes.entry(config) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

type BranchKey = (usize, MarkedSymbol, Vec<CounterFlag>);

/// Transition table expanded to concrete statuses, ready for stepping.
/// Triples with no authored transition fall back to a value-1 self-loop,
/// which makes every machine total without affecting reachable behavior.
struct TransitionIndex {
    branches: HashMap<BranchKey, Vec<(usize, Vec<i8>, Rational)>>,
    counters: usize,
}

impl TransitionIndex {
    fn build(spec: &AfcaSpec) -> Self {
        let mut branches: HashMap<BranchKey, Vec<(usize, Vec<i8>, Rational)>> = HashMap::new();
        for t in &spec.transitions {
            for status in expand_status(&t.status) {
                branches
                    .entry((t.from, t.symbol, status))
                    .or_default()
                    .push((t.to, t.moves.clone(), t.value.clone()));
            }
        }
        TransitionIndex {
            branches,
            counters: spec.counters,
        }
    }

    fn step(&self, v: &ConfigVector, symbol: MarkedSymbol) -> ConfigVector {
        let mut next = ConfigVector::default();
        for (config, coeff) in v.amplitudes() {
            let key = (config.state, symbol, config.status());
            match self.branches.get(&key) {
                Some(branches) => {
                    for (to, moves, value) in branches {
                        let counters = config
                            .counters
                            .iter()
                            .zip(moves)
                            .map(|(c, d)| c + BigInt::from(*d))
                            .collect();
                        next.add(Config { state: *to, counters }, coeff * value);
                    }
                }
                // implicit self-loop, d = 0
                None => next.add(config.clone(), coeff.clone()),
            }
        }
        next
    }
}

/// All concrete expansions of a status pattern vector.
fn expand_status(pattern: &[StatusPattern]) -> Vec<Vec<CounterFlag>> {
    let mut out: Vec<Vec<CounterFlag>> = vec![Vec::with_capacity(pattern.len())];
    for p in pattern {
        let mut grown = Vec::with_capacity(out.len() * 2);
        for prefix in &out {
            for &flag in p.expand() {
                let mut next = prefix.clone();
                next.push(flag);
                grown.push(next);
            }
        }
        out = grown;
    }
    out
}

/// All concrete status vectors of length `k`.
fn all_statuses(k: usize) -> Vec<Vec<CounterFlag>> {
    expand_status(&vec![StatusPattern::Any; k])
}

impl AfcaSpec {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, name: &str) -> Result<usize, Error> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    fn check_symbol(&self, symbol: MarkedSymbol) -> Result<(), Error> {
        match symbol {
            MarkedSymbol::Input(c) if !self.alphabet.contains(&c) => {
                Err(Error::UnknownSymbol(c.to_string()))
            }
            _ => Ok(()),
        }
    }

    /// One application of the transition matrix `M_sigma` to a sparse
    /// superposition.
    pub fn step(&self, v: &ConfigVector, symbol: MarkedSymbol) -> Result<ConfigVector, Error> {
        self.check_symbol(symbol)?;
        Ok(TransitionIndex::build(self).step(v, symbol))
    }

    /// Runs `¢ w $` from the initial configuration.
    pub fn run(&self, word: &str) -> Result<ConfigVector, Error> {
        self.run_prefix(word, usize::MAX)
    }

    /// Runs only the first `limit` symbols of the framed word `¢ w $`.
    /// `limit >= |w| + 2` gives the full run. Used to compare intermediate
    /// states against closed-form oracles.
    pub fn run_prefix(&self, word: &str, limit: usize) -> Result<ConfigVector, Error> {
        check_word(word, &self.alphabet)?;
        let index = TransitionIndex::build(self);
        let mut v = ConfigVector::singleton(Config::initial(self.initial, self.counters));
        for symbol in frame_word(word).into_iter().take(limit) {
            v = index.step(&v, symbol);
        }
        Ok(v)
    }

    /// Acceptance probability of the final superposition under the machine's
    /// acceptance mode.
    pub fn accept_prob(&self, word: &str) -> Result<Rational, Error> {
        Ok(self.weigh_accepting(&self.run(word)?))
    }

    /// Weight of accepting configurations in `v` under the acceptance mode.
    pub fn weigh_accepting(&self, v: &ConfigVector) -> Rational {
        let norm = v.l1_norm();
        if norm.is_zero() {
            return Rational::zero();
        }
        let mut acc = Rational::zero();
        for (config, coeff) in v.amplitudes() {
            if !self.accepting.contains(&config.state) {
                continue;
            }
            if self.accept_mode == AcceptMode::Blind
                && !config.counters.iter().all(|c| c.is_zero())
            {
                continue;
            }
            acc += coeff.abs();
        }
        acc / norm
    }

    /// True iff the transition function is structurally independent of the
    /// counter status: for every state and symbol, all concrete statuses
    /// induce the same branch map.
    pub fn is_blind(&self) -> bool {
        let index = TransitionIndex::build(self);
        let statuses = all_statuses(self.counters);
        let mut symbols: BTreeSet<MarkedSymbol> =
            [MarkedSymbol::LeftEnd, MarkedSymbol::RightEnd].into();
        symbols.extend(self.alphabet.iter().map(|&c| MarkedSymbol::Input(c)));
        for state in 0..self.state_count() {
            for &symbol in &symbols {
                let mut first: Option<BTreeMap<(usize, Vec<i8>), Rational>> = None;
                for status in &statuses {
                    let map = branch_map(&index, state, symbol, status);
                    match &first {
                        None => first = Some(map),
                        Some(f) => {
                            if *f != map {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Runs the word while checking the counter range invariant: with moves
    /// in {-1,0,+1} every counter stays within `[-m, m]` for `m = |w| + 2`.
    pub fn counter_bound_check(&self, word: &str) -> Result<bool, Error> {
        check_word(word, &self.alphabet)?;
        let index = TransitionIndex::build(self);
        let m = BigInt::from(word.chars().count() + 2);
        let mut v = ConfigVector::singleton(Config::initial(self.initial, self.counters));
        let within = |v: &ConfigVector| {
            v.amplitudes()
                .keys()
                .all(|cfg| cfg.counters.iter().all(|c| c.abs() <= m))
        };
        if !within(&v) {
            return Ok(false);
        }
        for symbol in frame_word(word) {
            v = index.step(&v, symbol);
            if !within(&v) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::ok();
        let n = self.state_count();
        if n == 0 {
            report.push("machine has no states");
        }
        if self.counters == 0 {
            report.push("counter count must be at least 1");
        }
        if self.initial >= n {
            report.push(format!("initial state index {} out of range", self.initial));
        }
        for &i in &self.accepting {
            if i >= n {
                report.push(format!("accepting state index {i} out of range"));
            }
        }
        for (i, t) in self.transitions.iter().enumerate() {
            if t.from >= n || t.to >= n {
                report.push(format!("transition {} references a state out of range", i + 1));
            }
            if t.status.len() != self.counters {
                report.push(format!(
                    "transition {} has {} status flags, expected {}",
                    i + 1,
                    t.status.len(),
                    self.counters
                ));
            }
            if t.moves.len() != self.counters {
                report.push(format!(
                    "transition {} has {} counter moves, expected {}",
                    i + 1,
                    t.moves.len(),
                    self.counters
                ));
            }
            if t.moves.iter().any(|d| !(-1..=1).contains(d)) {
                report.push(format!(
                    "transition {} has a counter move outside {{-1,0,+1}}",
                    i + 1
                ));
            }
            if let MarkedSymbol::Input(c) = t.symbol {
                if !self.alphabet.contains(&c) {
                    report.push(format!(
                        "transition {} uses symbol '{c}' which is not in the alphabet",
                        i + 1
                    ));
                }
            }
        }
        if !report.is_ok() {
            return report;
        }

        // Expand to concrete statuses: duplicates are an error, and each
        // populated (state, symbol, status) row must sum to exactly 1.
        let mut rows: BTreeMap<(usize, MarkedSymbol, Vec<CounterFlag>), Rational> = BTreeMap::new();
        let mut seen: BTreeSet<(usize, MarkedSymbol, Vec<CounterFlag>, usize, Vec<i8>)> =
            BTreeSet::new();
        for t in &self.transitions {
            for status in expand_status(&t.status) {
                let concrete = (t.from, t.symbol, status.clone(), t.to, t.moves.clone());
                if !seen.insert(concrete) {
                    report.push(format!(
                        "duplicate transition {} --{}--> {} (status {:?}, moves {:?})",
                        self.states[t.from], t.symbol, self.states[t.to], status, t.moves
                    ));
                }
                *rows
                    .entry((t.from, t.symbol, status))
                    .or_insert_with(Rational::zero) += t.value.clone();
            }
        }
        for ((state, symbol, status), sum) in &rows {
            if !sum.is_one() {
                report.push(format!(
                    "row ({}, {}, {:?}) sums to {}, expected 1",
                    self.states[*state], symbol, status, sum
                ));
            }
        }
        if self.accept_mode == AcceptMode::Blind && report.is_ok() && !self.is_blind() {
            report.push(
                "accept mode is blind but the machine has a status-dependent transition"
                    .to_string(),
            );
        }
        report
    }

    /// Renders a superposition with state names, for diagnostics and the
    /// `--show-state` flag.
    pub fn render_config_vector(&self, v: &ConfigVector) -> String {
        let mut parts = Vec::new();
        for (config, coeff) in v.amplitudes() {
            let counters: Vec<String> = config.counters.iter().map(|c| c.to_string()).collect();
            parts.push(format!(
                "{} |{},{}>",
                crate::rational::display_rational(coeff),
                self.states[config.state],
                counters.join(",")
            ));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("  +  ")
        }
    }
}

fn branch_map(
    index: &TransitionIndex,
    state: usize,
    symbol: MarkedSymbol,
    status: &[CounterFlag],
) -> BTreeMap<(usize, Vec<i8>), Rational> {
    match index.branches.get(&(state, symbol, status.to_vec())) {
        Some(branches) => {
            let mut map = BTreeMap::new();
            for (to, moves, value) in branches {
                *map.entry((*to, moves.clone()))
                    .or_insert_with(Rational::zero) += value.clone();
            }
            map.retain(|_, v| !v.is_zero());
            map
        }
        None => {
            // implicit self-loop
            let mut map = BTreeMap::new();
            map.insert((state, vec![0; index.counters]), Rational::one());
            map
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::zoo;

    fn cfg(spec: &AfcaSpec, name: &str, counter: i64) -> Config {
        Config {
            state: spec.state_index(name).unwrap(),
            counters: vec![BigInt::from(counter)],
        }
    }

    #[test]
    fn end_left_marker_step() {
        let m = zoo::build_end();
        let v = ConfigVector::singleton(Config::initial(m.initial, 1));
        let next = m.step(&v, MarkedSymbol::LeftEnd).unwrap();
        let expected = ConfigVector::from_amplitudes([
            (cfg(&m, "s1_p0", 0), rat_int(1)),
            (cfg(&m, "s1_p1", 0), rat_int(1)),
            (cfg(&m, "s1_p2", 0), rat_int(-1)),
        ]);
        assert_eq!(next, expected);
    }

    #[test]
    fn end_symbol_two_step() {
        let m = zoo::build_end();
        let v = ConfigVector::singleton(cfg(&m, "s1_p1", 3));
        let next = m.step(&v, MarkedSymbol::Input('2')).unwrap();
        let expected = ConfigVector::from_amplitudes([
            (cfg(&m, "s2_p1", 2), rat_int(1)),
            (cfg(&m, "s2_p3", 3), rat(-1, 2)),
            (cfg(&m, "s2_p4", 3), rat(1, 2)),
        ]);
        assert_eq!(next, expected);
    }

    #[test]
    fn self_loop_spec_is_identity() {
        // No transitions at all: everything falls back to implicit
        // self-loops, so any superposition is unchanged.
        let m = AfcaSpec {
            states: vec!["q".into(), "r".into()],
            alphabet: ['a'].into_iter().collect(),
            counters: 1,
            transitions: vec![],
            initial: 0,
            accepting: [0].into(),
            accept_mode: AcceptMode::StateOnly,
        };
        let v = ConfigVector::from_amplitudes([
            (Config { state: 0, counters: vec![BigInt::from(2)] }, rat(3, 2)),
            (Config { state: 1, counters: vec![BigInt::from(-1)] }, rat(-1, 2)),
        ]);
        assert_eq!(m.step(&v, MarkedSymbol::Input('a')).unwrap(), v);
    }

    #[test]
    fn end_runs() {
        let m = zoo::build_end();
        let v = m.run("21").unwrap();
        assert_eq!(v, ConfigVector::singleton(cfg(&m, "s2_p3", 0)));
        let v = m.run("12").unwrap();
        assert_eq!(v, ConfigVector::singleton(cfg(&m, "s2_p4", 0)));
        assert_eq!(m.accept_prob("21").unwrap(), rat_int(1));
        assert_eq!(m.accept_prob("12").unwrap(), rat_int(0));
    }

    #[test]
    fn manytwins_shortest_member() {
        let m = zoo::build_manytwins(1);
        let v = m.run("3").unwrap();
        assert_eq!(v, ConfigVector::singleton(cfg(&m, "sa", 0)));
        assert_eq!(m.accept_prob("3").unwrap(), rat_int(1));
    }

    #[test]
    fn blindness() {
        assert!(zoo::build_manytwins(1).is_blind());
        assert!(!zoo::build_end().is_blind());

        // A single status-dependent transition breaks blindness.
        let mut m = zoo::build_manytwins(1);
        let sa = m.state_index("sa").unwrap();
        m.transitions.push(AfcaTransition {
            from: sa,
            symbol: MarkedSymbol::Input('1'),
            status: vec![StatusPattern::Zero],
            to: sa,
            moves: vec![1],
            value: rat_int(1),
        });
        assert!(!m.is_blind());
    }

    #[test]
    fn counter_bounds() {
        assert!(zoo::build_end().counter_bound_check("0102122").unwrap());
        assert!(zoo::build_manytwins(2).counter_bound_check("10231").unwrap());
        assert!(zoo::build_end().counter_bound_check("").unwrap());
    }

    #[test]
    fn validate_catches_bad_row_sum_and_duplicates() {
        let mut m = zoo::build_end();
        assert!(m.validate().is_ok());
        let s = m.state_index("s1_p0").unwrap();
        m.transitions.push(AfcaTransition {
            from: s,
            symbol: MarkedSymbol::Input('0'),
            status: vec![StatusPattern::Any],
            to: s,
            moves: vec![0],
            value: rat_int(1),
        });
        let report = m.validate();
        // The extra record both duplicates an existing transition and breaks
        // the row sum.
        assert!(report.problems.iter().any(|p| p.contains("duplicate")));
        assert!(report.problems.iter().any(|p| p.contains("sums to 2")));
    }

    #[test]
    fn coefficient_sum_is_preserved() {
        let m = zoo::build_manytwins(3);
        for word in ["", "3", "1023201", "31", "120", "0131"] {
            let mut v = ConfigVector::singleton(Config::initial(m.initial, 1));
            assert_eq!(v.coefficient_sum(), rat_int(1));
            for symbol in crate::tape::frame_word(word) {
                v = m.step(&v, symbol).unwrap();
                assert_eq!(v.coefficient_sum(), rat_int(1));
            }
        }
    }
}
