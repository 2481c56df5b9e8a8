//! Demazure operators on the group ring: idempotence and the braid relation.
use affgroth::expr::{parse_expression, print_element, PrintMode};
use affgroth::AffineCartanData;

fn main() {
    let c = AffineCartanData::affine_c(2).unwrap();
    let f = parse_expression("e[L1 - L2] + q e[-L0]", &c).unwrap();
    for i in c.nodes() {
        let d = f.demazure(&c, i);
        println!("D_{} f = {}", c.label(i), print_element(&c, &d, PrintMode::Terms));
        assert_eq!(d.demazure(&c, i), d);
    }
    let a = f.demazure_word(&c, &[0, 1, 0, 1]);
    let b = f.demazure_word(&c, &[1, 0, 1, 0]);
    println!("D_0101 f == D_1010 f: {}", a == b);
}
