//! The machine file format: serialize a built-in machine, parse it back,
//! and show what validation reports for a broken file.

use affine_automata::format::{self, MachineSpec};
use affine_automata::zoo;

fn main() {
    let spec = MachineSpec::LasVegas(zoo::build_pal_npal(1));
    let text = format::serialize(&spec);
    println!("--- pal-npal, k = 1 ---\n{text}");

    let reparsed = format::parse(&text).unwrap();
    assert_eq!(reparsed, spec);
    println!("round trip: parsed machine is structurally identical\n");

    // Break one matrix entry: the parser accepts the shape but validation
    // pinpoints the offending column.
    let broken = text.replacen("-3 -1 -4 -1 0", "-3 -1 -4 -1 1", 1);
    match format::parse(&broken) {
        Err(e) => println!("broken file rejected:\n{e}"),
        Ok(_) => unreachable!(),
    }
}
