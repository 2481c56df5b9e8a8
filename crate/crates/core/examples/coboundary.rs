//! Solving (1 - s_i) B = v_i for a family built from a known B0.
use affgroth::cocycle::{check_cocycle, coboundary, solve_coboundary, SolveOptions};
use affgroth::expr::{parse_expression, print_element, PrintMode};
use affgroth::AffineCartanData;

fn main() {
    let c = AffineCartanData::affine_a(2).unwrap();
    let b0 = parse_expression("e[L1 - L0] + (1-q)^-1 e[-L2 + a1] - 2 e[0]", &c).unwrap();
    let v = coboundary(&c, &b0);
    println!("cocycle violations: {}", check_cocycle(&c, &v).len());
    let b = solve_coboundary(&c, &v, (-2, 0), &SolveOptions::default()).unwrap();
    println!("B = {}", print_element(&c, &b, PrintMode::Terms));
    println!("B - B0 = {}", print_element(&c, &(&b - &b0), PrintMode::Orbit));
}
