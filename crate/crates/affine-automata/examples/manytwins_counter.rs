//! MANYTWINS: a blind one-counter machine with one-sided error. Members are
//! accepted surely; nonmembers sneak through with probability at most
//! 1/(2k+1). Also demonstrates why the machine must be blind.

use affine_automata::afca::AcceptMode;
use affine_automata::rational::display_prob;
use affine_automata::{oracle, zoo};

fn main() {
    let words = ["3", "131", "1023201", "132", "11", "120213"];
    println!("{:>10}  {:>7}  {:>7}  {:>7}  member", "word", "k=1", "k=2", "k=5");
    for word in words {
        let ps: Vec<String> = [1, 2, 5]
            .iter()
            .map(|&k| display_prob(&zoo::build_manytwins(k).accept_prob(word).unwrap()))
            .collect();
        println!(
            "{:>10}  {:>7}  {:>7}  {:>7}  {}",
            format!("{word:?}"),
            ps[0],
            ps[1],
            ps[2],
            oracle::in_manytwins(word)
        );
    }

    // "0131" ends in the accepting state but with counter value 1: blind
    // acceptance (all counters must be zero) correctly rejects, while plain
    // state acceptance would wrongly accept.
    let blind = zoo::build_manytwins(1);
    let mut state_only = blind.clone();
    state_only.accept_mode = AcceptMode::StateOnly;
    println!(
        "\n\"0131\" (not a member): blind {}  state-only {}",
        display_prob(&blind.accept_prob("0131").unwrap()),
        display_prob(&state_only.accept_prob("0131").unwrap())
    );
    println!(
        "final superposition: {}",
        blind.render_config_vector(&blind.run("0131").unwrap())
    );
}
