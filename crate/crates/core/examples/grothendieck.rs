//! Computing affine Grothendieck polynomials and printing them in the
//! three output formats.
use affgroth::expr::{print_element, PrintMode};
use affgroth::{AffineCartanData, GrothTable, WeylElement};

fn main() {
    let c = AffineCartanData::from_type_str("A1~").unwrap();
    let mut table = GrothTable::new(c.clone());
    for word in ["1", "1,0", "0,1,0"] {
        let w = WeylElement::parse(word, &c).unwrap();
        let g = table.compute(&w).unwrap();
        println!("G_{word} = {}", print_element(&c, &g, PrintMode::Orbit));
    }
    let w = WeylElement::parse("1,0", &c).unwrap();
    let g = table.get(&w).unwrap();
    println!("{}", print_element(&c, g, PrintMode::Terms));
    println!("{}", print_element(&c, g, PrintMode::Json));
}
