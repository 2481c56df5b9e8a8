//! Enumerating the affine Weyl group of A2~ by length, with Bruhat order and
//! inversion sets.
use affgroth::{AffineCartanData, WeylElement};

fn main() {
    let c = AffineCartanData::affine_a(2).unwrap();
    for (k, layer) in WeylElement::layers(&c, 4).iter().enumerate() {
        println!("length {k}: {} elements", layer.len());
    }
    let w = WeylElement::parse("1,2,1,0", &c).unwrap();
    let v = WeylElement::parse("1,0", &c).unwrap();
    println!("{} <= {}: {}", v.to_text(&c), w.to_text(&c), v.bruhat_leq(&c, &w));
    for beta in w.inversion_set(&c) {
        println!("  inversion {}", beta.to_text(&c));
    }
    let w2 = WeylElement::parse("2,1,2,0", &c).unwrap();
    println!("1,2,1,0 == 2,1,2,0: {}", w == w2);
}
