//! Las Vegas behavior on the PAL-NPAL promise problem: the wrong answer
//! never appears, and "don't know" shrinks as the amplification parameter k
//! grows.

use affine_automata::rational::display_prob;
use affine_automata::zoo;

fn main() {
    // "1012" is a yes-instance (x = "1" palindrome, y = "12" not);
    // "1201" is its no-instance mirror.
    for word in ["1012", "1201"] {
        println!("word {word:?}:");
        println!("{:>4}  {:>8}  {:>8}  {:>8}", "k", "accept", "reject", "neutral");
        for k in [1, 2, 5, 10, 100] {
            let m = zoo::build_pal_npal(k);
            let o = m.outcome(word).unwrap();
            println!(
                "{k:>4}  {:>8}  {:>8}  {:>8}",
                display_prob(&o.accept),
                display_prob(&o.reject),
                display_prob(&o.neutral)
            );
        }
        println!();
    }

    // On unpromised inputs the machine makes no claim; here every outcome
    // lands on "don't know".
    let m = zoo::build_pal_npal(1);
    let o = m.outcome("101").unwrap();
    println!(
        "unpromised \"101\": accept {}, reject {}, neutral {}",
        display_prob(&o.accept),
        display_prob(&o.reject),
        display_prob(&o.neutral)
    );
}
