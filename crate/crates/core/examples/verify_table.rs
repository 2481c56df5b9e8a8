//! Filling a table in parallel and running every check on each entry.
use affgroth::groth::CHECKS;
use affgroth::{AffineCartanData, GrothTable, WeylElement};

fn main() {
    let c = AffineCartanData::affine_c(2).unwrap();
    let mut table = GrothTable::new(c.clone());
    table.fill_up_to(4, 4).unwrap();
    let mut failing = 0;
    for w in WeylElement::enumerate_up_to(&c, 4) {
        let report = table.verify_entry(&w, &CHECKS, 4);
        if !report.passed() {
            failing += 1;
        }
        println!("{report}");
    }
    println!("{} entries, {failing} failing", table.len());
}
