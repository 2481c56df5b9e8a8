//! Derived data for the built-in affine types and a matrix given by hand.
use affgroth::AffineCartanData;

fn main() {
    for t in ["A1~", "A3~", "C2~", "D4~"] {
        let c = AffineCartanData::from_type_str(t).unwrap();
        println!("{c}\n");
    }
    let c = AffineCartanData::from_type_str("[[2,-1,-1],[-1,2,-1],[-1,-1,2]]").unwrap();
    println!("key {}, delta = {}", c.key(), c.delta().to_text(&c));
}
