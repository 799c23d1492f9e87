//! The END machine: a one-counter automaton that recognizes a nonregular
//! language with zero error. Runs a handful of words and prints the exact
//! acceptance probability next to the brute-force answer.

use affine_automata::{oracle, zoo};

fn main() {
    let m = zoo::build_end();

    for word in ["21", "12", "201", "2120", "0102122", "11", ""] {
        let p = m.accept_prob(word).unwrap();
        let member = oracle::in_end(word).unwrap();
        println!(
            "{:>8}  accept = {:<4}  (member: {member})",
            format!("{word:?}"),
            p.to_string(),
        );
    }

    // The final superposition itself, for one accepted and one rejected word.
    for word in ["21", "12"] {
        let v = m.run(word).unwrap();
        println!("\nfinal superposition for {word:?}:");
        println!("  {}", m.render_config_vector(&v));
    }
}
