mod common;

use affgroth::*;
use common::*;
use proptest::prelude::*;

#[test]
fn operator_laws_a1() {
    let r = operator_laws("A1~", 100, 1);
    assert!(r.is_ok(), "{r:?}");
}

#[test]
fn operator_laws_a2() {
    let r = operator_laws("A2~", 100, 2);
    assert!(r.is_ok(), "{r:?}");
}

#[test]
fn operator_laws_c2_d4() {
    for t in ["C2~", "D4~"] {
        let r = operator_laws(t, 20, 3);
        assert!(r.is_ok(), "{r:?}");
    }
}

#[test]
fn demazure_of_g_is_lower_class() {
    // D_1 G_{s_1} = G_e = 1
    let c = cartan("A2~");
    let g = &KElement::one(&c) - &KElement::exp(&c, &-&c.fundamental(1));
    assert_eq!(g.demazure(&c, 1), KElement::one(&c));
    assert_eq!(g.demazure(&c, 2), g);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn division_oracle_agrees(seed in any::<u64>(), i in 0usize..3) {
        let c = cartan("A2~");
        let f = random_element(&c, &mut rng(seed), 5);
        prop_assert_eq!(f.demazure(&c, i), demazure_oracle(&c, &f, i));
    }

    #[test]
    fn braid_relation(seed in any::<u64>()) {
        let c = cartan("C2~");
        let f = random_element(&c, &mut rng(seed), 4);
        // m_01 = 4 in C2~
        prop_assert_eq!(f.demazure_word(&c, &[0, 1, 0, 1]), f.demazure_word(&c, &[1, 0, 1, 0]));
    }
}
