//! Truncated characters of A1~: the basic module, an Euler characteristic
//! and a local cohomology character.
use affgroth::characters::{euler_character, local_cohomology_character, weyl_kac_character};
use affgroth::{AffineCartanData, GrothTable, WeylElement};

fn main() {
    let c = AffineCartanData::affine_a(1).unwrap();
    let l0 = c.fundamental(0);
    print!("{}", weyl_kac_character(&c, &l0, 4).unwrap().to_text(&c));

    let mut table = GrothTable::new(c.clone());
    let w = WeylElement::parse("1,0", &c).unwrap();
    let mu = c.fundamental(1).scale(2);
    println!("\neuler characteristic of O(2L1) on X_10:");
    print!("{}", euler_character(&mut table, &w, &mu, 4).unwrap().to_text(&c));

    println!("\nlocal cohomology at x = 1,0:");
    print!("{}", local_cohomology_character(&mut table, &w, &w, &mu, 3).unwrap().to_text(&c));
}
