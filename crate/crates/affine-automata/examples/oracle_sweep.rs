//! Exhaustive differential testing: sweep a machine against a brute-force
//! oracle over every word up to a length bound and print the TSV report
//! summary. The full report is what `afsim sweep` writes to disk.

use affine_automata::format::MachineSpec;
use affine_automata::rational::display_prob;
use affine_automata::sweep::{sweep, OracleKind, SweepOptions};
use affine_automata::zoo;

fn main() {
    let jobs = [
        (MachineSpec::Afca(zoo::build_end()), OracleKind::End, "012", 1),
        (
            MachineSpec::LasVegas(zoo::build_pal_npal(2)),
            OracleKind::PalNpal,
            "012",
            2,
        ),
        (
            MachineSpec::Afca(zoo::build_manytwins(1)),
            OracleKind::ManyTwins,
            "0123",
            1,
        ),
    ];

    for (spec, oracle, alphabet, k) in jobs {
        let report = sweep(
            &spec,
            &SweepOptions {
                oracle,
                alphabet: alphabet.chars().collect(),
                max_len: 5,
                k,
                force: false,
            },
        )
        .unwrap();
        println!(
            "{:<10}  {} words: {} pass, {} fail, {} unpromised, max error {}",
            report.oracle.name(),
            report.rows.len(),
            report.passes,
            report.failures,
            report.unpromised,
            display_prob(&report.max_error)
        );
    }

    // A slice of the END report itself.
    let report = sweep(
        &MachineSpec::Afca(zoo::build_end()),
        &SweepOptions {
            oracle: OracleKind::End,
            alphabet: "012".chars().collect(),
            max_len: 2,
            k: 1,
            force: false,
        },
    )
    .unwrap();
    println!("\n{}", report.to_tsv());
}
