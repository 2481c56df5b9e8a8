mod common;

use affgroth::*;
use common::*;

#[test]
fn defining_properties_up_to_length_4() {
    for t in ["A1~", "A2~", "C2~"] {
        let r = recursion_suite(t, 4);
        assert!(r.is_ok(), "{r:?}");
    }
}

#[test]
fn longer_words() {
    for (t, n) in [("A1~", 7), ("A2~", 5), ("A3~", 4), ("C3~", 3), ("D4~", 3)] {
        let r = recursion_suite(t, n);
        assert!(r.is_ok(), "{r:?}");
    }
}

#[test]
fn parallel_fill_matches_serial() {
    let c = cartan("A2~");
    let mut a = GrothTable::new(c.clone());
    a.fill_up_to(4, 1).unwrap();
    let mut b = GrothTable::new(c.clone());
    b.fill_up_to(4, 4).unwrap();
    assert!(a == b);
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn verify_entry_reports_every_check() {
    let c = cartan("C2~");
    let mut t = GrothTable::new(c.clone());
    let w = WeylElement::parse("0,1,0", &c).unwrap();
    let r = t.verify_entry(&w, &affgroth::groth::CHECKS, 4);
    assert!(r.passed(), "{r}");
    assert_eq!(r.items.len(), affgroth::groth::CHECKS.len());
}
