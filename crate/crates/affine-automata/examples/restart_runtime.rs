//! Restart machines: replace the Las Vegas "don't know" state with a
//! restart and the promise problem is decided exactly, at the cost of
//! expected (rather than worst-case) runtime. The analysis is closed-form,
//! not sampled.

use affine_automata::rational::{display_prob, display_rational};
use affine_automata::zoo;

fn main() {
    for k in [1, 2, 5] {
        let m = zoo::build_pal_npal_restart(k);
        println!("k = {k}:");
        for word in ["1012", "1201", "121021"] {
            let a = m.analyze(word).unwrap();
            println!(
                "  {word:>8}  accept {}  rounds {}  steps {}",
                display_prob(&a.overall_accept),
                display_rational(&a.expected_rounds),
                display_rational(&a.expected_steps)
            );
        }
    }

    // On an unpromised word both halting probabilities can vanish; then the
    // machine restarts forever and the analysis reports the error.
    let m = zoo::build_pal_npal_restart(1);
    match m.analyze("101") {
        Err(e) => println!("\nunpromised \"101\": {e}"),
        Ok(_) => unreachable!(),
    }
}
