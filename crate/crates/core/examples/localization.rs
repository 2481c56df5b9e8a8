//! Restricting G_w to torus fixed points: zero below w, the inversion
//! product at w.
use affgroth::expr::{print_element, PrintMode};
use affgroth::groth::inversion_product;
use affgroth::{AffineCartanData, GrothTable, WeylElement};

fn main() {
    let c = AffineCartanData::affine_a(1).unwrap();
    let mut table = GrothTable::new(c.clone());
    let w = WeylElement::parse("1,0", &c).unwrap();
    let g = table.compute(&w).unwrap();
    for x in WeylElement::enumerate_up_to(&c, 3) {
        let j = g.j_map(&c, &x);
        println!("j_{} = {}", x.to_text(&c), print_element(&c, &j, PrintMode::Terms));
    }
    println!("inversion product: {}", print_element(&c, &inversion_product(&c, &w), PrintMode::Terms));
}
