//! Saving a table to a cache directory and loading it back.
use affgroth::{AffineCartanData, GrothTable};

fn main() {
    let dir = std::env::temp_dir().join("affgroth-example-cache");
    std::fs::create_dir_all(&dir).unwrap();
    let c = AffineCartanData::affine_d(4).unwrap();
    let mut table = GrothTable::load_or_new(c.clone(), &dir).unwrap();
    table.fill_up_to(3, 2).unwrap();
    let path = table.save(&dir).unwrap();
    let again = GrothTable::load_or_new(c, &dir).unwrap();
    println!("{} entries written to {}", again.len(), path.display());
    assert!(again == table);
}
