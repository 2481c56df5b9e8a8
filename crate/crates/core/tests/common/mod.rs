#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use affgroth::characters::{
    denominator, euler_character, local_cohomology_character, weyl_kac_character, weyl_kac_numerator, TruncatedSeries,
};
use affgroth::cocycle::{check_cocycle, coboundary, solve_coboundary, SolveOptions};
use affgroth::coef::ZPoly;
use affgroth::expr::{element_from_json, parse_expression, print_element, PrintMode};
use affgroth::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<String, String>;

pub fn cartan(t: &str) -> AffineCartanData {
    AffineCartanData::from_type_str(t).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_coef(rng: &mut impl Rng) -> CoefQ {
    let a = CoefQ::from_int(rng.gen_range(-3..=3i64)).mul_q_pow(rng.gen_range(-2..=2));
    match rng.gen_range(0..5) {
        0 => a.div(&CoefQ::new(ZPoly::one_minus_q_pow(rng.gen_range(1..=3)), 0, ZPoly::one())).unwrap(),
        1 => &a + &CoefQ::q_pow(rng.gen_range(0..3)),
        2 => CoefQ::from_ratio(rng.gen_range(-5..=5i64), rng.gen_range(1..=4i64)),
        _ => a,
    }
}

/// Random element with at most `max_terms` terms and small exponents.
pub fn random_element(c: &AffineCartanData, rng: &mut impl Rng, max_terms: usize) -> KElement {
    let n = c.rank();
    let mut out = KElement::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let l: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let m: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        out = &out + &KElement::monomial(c, random_coef(rng), &Weight::from_parts(l, m));
    }
    out
}

pub struct Golden {
    pub ty: String,
    pub word: String,
    pub text: String,
}

pub fn golden_fixtures() -> Vec<Golden> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/golden.txt");
    let src = std::fs::read_to_string(path).unwrap();
    let mut out: Vec<Golden> = Vec::new();
    for line in src.lines() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(h) = t.strip_prefix('[').and_then(|h| h.strip_suffix(']')) {
            let (ty, word) = h.split_once(' ').unwrap();
            out.push(Golden { ty: ty.into(), word: word.into(), text: String::new() });
        } else {
            let g = out.last_mut().unwrap();
            g.text.push_str(t);
            g.text.push('\n');
        }
    }
    out
}

pub const ALL_TYPES: [&str; 6] = ["A1~", "A2~", "A3~", "C2~", "C3~", "D4~"];

fn one_minus_exp(c: &AffineCartanData, w: &Weight) -> KElement {
    &KElement::one(c) - &KElement::exp(c, w)
}

/// Golden displays, `G_{s_i}` and products of commuting reflections.
pub fn criterion_golden() -> Check {
    let fixtures = golden_fixtures();
    let mut tables: BTreeMap<String, GrothTable> = BTreeMap::new();
    for g in &fixtures {
        let c = cartan(&g.ty);
        let table = tables.entry(g.ty.clone()).or_insert_with(|| GrothTable::new(c.clone()));
        let w = WeylElement::parse(&g.word, &c).map_err(|e| e.to_string())?;
        let expect = parse_expression(&g.text, &c).map_err(|e| format!("{} {}: {e}", g.ty, g.word))?;
        let got = table.compute(&w).map_err(|e| e.to_string())?;
        if got != expect {
            let diff = &got - &expect;
            return Err(format!(
                "{} {}: differs by {}",
                g.ty,
                g.word,
                print_element(&c, &diff, PrintMode::Orbit)
            ));
        }
    }
    let mut products = 0;
    for t in ALL_TYPES {
        let c = cartan(t);
        let table = tables.entry(t.into()).or_insert_with(|| GrothTable::new(c.clone()));
        for i in c.nodes() {
            let g = table.compute(&WeylElement::simple(&c, i)).map_err(|e| e.to_string())?;
            if g != one_minus_exp(&c, &-&c.fundamental(i)) {
                return Err(format!("{t}: G_s{} is not 1 - e^-L{}", c.label(i), c.label(i)));
            }
        }
        for mask in 1u32..(1 << c.rank()) {
            let j: Vec<usize> = c.nodes().filter(|i| mask >> i & 1 == 1).collect();
            if j.len() < 2 || j.iter().any(|&a| j.iter().any(|&b| a != b && c.a(a, b) != 0)) {
                continue;
            }
            let w = WeylElement::from_word(&c, &j);
            let mut expect = KElement::one(&c);
            for &i in &j {
                expect = &expect * &one_minus_exp(&c, &-&c.fundamental(i));
            }
            if table.compute(&w).map_err(|e| e.to_string())? != expect {
                return Err(format!("{t}: commuting product {} fails", w.to_text(&c)));
            }
            products += 1;
        }
    }
    Ok(format!("{} displays, {products} commuting products", fixtures.len()))
}

/// `prod_{beta in inv(w)} (1 - e^beta)` with each `e^beta` reduced mod delta.
pub fn inversion_product_oracle(c: &AffineCartanData, w: &WeylElement) -> KElement {
    let mut p = KElement::one(c);
    for beta in w.inversion_set(c) {
        p = &p * &one_minus_exp(c, &beta);
    }
    p
}

/// The defining properties of `G_w` for every `w` up to `max_len`.
pub fn recursion_suite(t: &str, max_len: usize) -> Check {
    let c = cartan(t);
    let mut table = GrothTable::new(c.clone());
    table.fill_up_to(max_len, 2).map_err(|e| e.to_string())?;
    let elems = WeylElement::enumerate_up_to(&c, max_len);
    let e = WeylElement::identity(&c);
    let kappa = c.dual_coxeter();
    for w in &elems {
        let g = table.get(w).unwrap().clone();
        let name = format!("{t} {}", w.to_text(&c));
        if !g.level_window(-kappa, 0) {
            return Err(format!("{name}: window"));
        }
        for i in c.nodes() {
            let ws = w.mul_simple_right(&c, i);
            let expect = if ws.length() < w.length() { table.get(&ws).unwrap().clone() } else { g.clone() };
            if g.demazure(&c, i) != expect {
                return Err(format!("{name}: demazure at {}", c.label(i)));
            }
        }
        let je = g.j_map(&c, &e);
        if (w.is_identity() && je != KElement::one(&c)) || (!w.is_identity() && !je.is_zero()) {
            return Err(format!("{name}: j_e"));
        }
        for x in &elems {
            if !w.bruhat_leq(&c, x) && !g.j_map(&c, x).is_zero() {
                return Err(format!("{name}: j_x nonzero at x = {}", x.to_text(&c)));
            }
        }
        if g.j_map(&c, w) != inversion_product_oracle(&c, w) {
            return Err(format!("{name}: j_w"));
        }
        let inv = w.inverse(&c);
        if g.psi(&c) != table.compute(&inv).map_err(|e| e.to_string())? {
            return Err(format!("{name}: psi"));
        }
        if table.recompute_reversed(w).map_err(|e| e.to_string())? != g {
            return Err(format!("{name}: reversed elimination"));
        }
    }
    Ok(format!("{t}: {} elements", elems.len()))
}

pub fn criterion_recursion() -> Check {
    let mut parts = Vec::new();
    for t in ["A1~", "A2~", "C2~"] {
        parts.push(recursion_suite(t, 4)?);
    }
    Ok(parts.join("; "))
}

/// Exact division by `1 - e^{-alpha_i}`, peeling off the term with the
/// largest `<h_i, .>` each round.
pub fn divide_one_minus(c: &AffineCartanData, n: &KElement, i: usize) -> Option<KElement> {
    let x = KElement::exp(c, &-&c.simple_root(i));
    let d = &KElement::one(c) - &x;
    let lowest = n.iter().map(|(k, _)| c.pairing(i, k.weight())).min()?;
    let mut r = n.clone();
    let mut q = KElement::zero();
    while let Some((k, v)) = r.iter().max_by_key(|(k, _)| (c.pairing(i, k.weight()), (*k).clone())) {
        if c.pairing(i, k.weight()) < lowest {
            return None;
        }
        let t = KElement::term(k.clone(), v.clone());
        r = &r - &(&t * &d);
        q = &q + &t;
    }
    Some(q)
}

pub fn demazure_oracle(c: &AffineCartanData, f: &KElement, i: usize) -> KElement {
    let x = KElement::exp(c, &-&c.simple_root(i));
    let n = f - &(&x * &f.reflect(c, i));
    if n.is_zero() {
        return KElement::zero();
    }
    divide_one_minus(c, &n, i).expect("numerator divisible by 1 - e^-alpha_i")
}

/// Every reduced word of `w`.
pub fn reduced_words(c: &AffineCartanData, w: &WeylElement) -> Vec<Vec<usize>> {
    if w.is_identity() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in w.right_descents(c) {
        for mut u in reduced_words(c, &w.mul_simple_right(c, i)) {
            u.push(i);
            out.push(u);
        }
    }
    out
}

pub fn operator_laws(t: &str, samples: usize, seed: u64) -> Check {
    let c = cartan(t);
    let mut rng = rng(seed);
    let words: Vec<Vec<Vec<usize>>> =
        WeylElement::enumerate_up_to(&c, 3).iter().map(|w| reduced_words(&c, w)).collect();
    for s in 0..samples {
        let f = random_element(&c, &mut rng, 6);
        for i in c.nodes() {
            let d = f.demazure(&c, i);
            if d.demazure(&c, i) != d {
                return Err(format!("{t} sample {s}: D_i not idempotent"));
            }
            if d.reflect(&c, i) != d {
                return Err(format!("{t} sample {s}: D_i f not s_i-invariant"));
            }
            if d != demazure_oracle(&c, &f, i) {
                return Err(format!("{t} sample {s}: closed form differs from division at {i}"));
            }
        }
        for ws in &words {
            let first = f.demazure_word(&c, &ws[0]);
            if ws.iter().any(|u| f.demazure_word(&c, u) != first) {
                return Err(format!("{t} sample {s}: D_w depends on the word {:?}", ws[0]));
            }
        }
    }
    Ok(format!("{t}: {samples} elements"))
}

pub fn criterion_operators() -> Check {
    Ok(format!("{}; {}", operator_laws("A1~", 100, 11)?, operator_laws("A2~", 100, 12)?))
}

pub fn coboundary_round_trip(t: &str, samples: usize, seed: u64) -> Check {
    let c = cartan(t);
    let mut rng = rng(seed);
    for s in 0..samples {
        let b0 = random_element(&c, &mut rng, 20);
        let (lo, hi) = b0.level_range().unwrap_or((0, 0));
        let v = coboundary(&c, &b0);
        if !check_cocycle(&c, &v).is_empty() {
            return Err(format!("{t} sample {s}: coboundary fails the cocycle check"));
        }
        let b = solve_coboundary(&c, &v, (lo - 1, hi), &SolveOptions::default()).map_err(|e| format!("{t} sample {s}: {e}"))?;
        for i in c.nodes() {
            if &b - &b.reflect(&c, i) != v[i] {
                return Err(format!("{t} sample {s}: (1 - s_i) B != v_i"));
            }
        }
    }
    Ok(format!("{t}: {samples} families"))
}

pub fn criterion_coboundary() -> Check {
    let mut parts = Vec::new();
    for (k, t) in ["A1~", "A2~", "C2~"].iter().enumerate() {
        parts.push(coboundary_round_trip(t, 50, 40 + k as u64)?);
    }
    Ok(parts.join("; "))
}

/// Positive roots of `A_1^(1)` written out by hand: `a1 + n delta` (n >= 0),
/// `a0 + n delta` (n >= 0), `n delta` (n >= 1), all of multiplicity one.
pub fn a1_roots(depth: i64) -> Vec<[i64; 2]> {
    let mut out = Vec::new();
    for n in 0..=depth {
        out.push([n, n + 1]);
        out.push([n + 1, n]);
        if n >= 1 {
            out.push([n, n]);
        }
    }
    out.retain(|r| r[0] + r[1] <= depth);
    out
}

/// Freudenthal's recursion for `A_1^(1)`: multiplicities of `mu - a` for
/// every `a` in `Q_+` of depth at most `depth`. Forms:
/// `(a_i, a_j) = A_ij`, `(L_i, a_j) = delta_ij`.
pub fn freudenthal_a1(mu: [i64; 2], depth: i64) -> BTreeMap<[i64; 2], BigInt> {
    let a = [[2i64, -2], [-2, 2]];
    let form = |l: [i64; 2], m: [i64; 2], r: [i64; 2]| -> i64 {
        // (sum l_i L_i + sum m_i a_i, sum r_j a_j)
        let mut s = l[0] * r[0] + l[1] * r[1];
        for i in 0..2 {
            for j in 0..2 {
                s += m[i] * a[i][j] * r[j];
            }
        }
        s
    };
    let rho_mu = [mu[0] + 1, mu[1] + 1];
    let roots = a1_roots(depth);
    let mut mult: BTreeMap<[i64; 2], BigRational> = BTreeMap::new();
    for d in 0..=depth {
        for a0 in 0..=d {
            let al = [a0, d - a0];
            if d == 0 {
                mult.insert(al, BigRational::one());
                continue;
            }
            // 2 (mu + rho, a) - (a, a)
            let lhs = 2 * form(rho_mu, [0, 0], al) - form([0, 0], al, al);
            let mut rhs = BigRational::zero();
            for beta in &roots {
                let mut k = 1;
                loop {
                    let up = [al[0] - k * beta[0], al[1] - k * beta[1]];
                    if up[0] < 0 || up[1] < 0 {
                        break;
                    }
                    if let Some(m) = mult.get(&up) {
                        // (lambda + k beta, beta) with lambda + k beta = mu - up
                        let p = form(mu, [-up[0], -up[1]], *beta);
                        rhs += m * BigRational::from_integer(BigInt::from(2 * p));
                    }
                    k += 1;
                }
            }
            let m = if lhs == 0 {
                assert!(rhs.is_zero());
                BigRational::zero()
            } else {
                rhs / BigRational::from_integer(BigInt::from(lhs))
            };
            mult.insert(al, m);
        }
    }
    mult.into_iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(k, m)| {
            assert!(m.is_integer());
            (k, m.to_integer())
        })
        .collect()
}

fn series_as_map(s: &TruncatedSeries) -> BTreeMap<Vec<i64>, BigInt> {
    s.terms().into_iter().map(|(a, c)| (a.to_vec(), c.clone())).collect()
}

/// `e^mu prod (1 - e^{-beta})^{-1}` over the hand-written `A_1^(1)` roots.
pub fn dual_verma_a1(depth: i64) -> BTreeMap<Vec<i64>, BigInt> {
    let mut c: HashMap<[i64; 2], BigInt> = HashMap::new();
    c.insert([0, 0], BigInt::one());
    for beta in a1_roots(depth) {
        let mut next = c.clone();
        for (k, v) in &c {
            let mut j = 1;
            while k[0] + k[1] + j * (beta[0] + beta[1]) <= depth {
                *next.entry([k[0] + j * beta[0], k[1] + j * beta[1]]).or_default() += v;
                j += 1;
            }
        }
        c = next;
    }
    c.into_iter().map(|(k, v)| (k.to_vec(), v)).collect()
}

pub fn criterion_characters() -> Check {
    let c = cartan("A1~");
    for mu in [[1, 0], [0, 1], [2, 0]] {
        let w = Weight::from_parts(mu.to_vec(), vec![0, 0]);
        let chi = weyl_kac_character(&c, &w, 6).map_err(|e| e.to_string())?;
        let oracle: BTreeMap<Vec<i64>, BigInt> =
            freudenthal_a1(mu, 6).into_iter().map(|(k, v)| (k.to_vec(), v)).collect();
        if series_as_map(&chi) != oracle {
            return Err(format!("chi_{mu:?} differs from the Freudenthal recursion"));
        }
    }
    let mut euler_checked = 0;
    for t in ["A1~", "A2~"] {
        let c = cartan(t);
        let mut table = GrothTable::new(c.clone());
        let e = WeylElement::identity(&c);
        for i in c.nodes() {
            let mu = c.fundamental(i);
            let chi = weyl_kac_character(&c, &mu, 5).map_err(|e| e.to_string())?;
            let eu = euler_character(&mut table, &e, &mu, 5).map_err(|e| e.to_string())?;
            if eu != chi {
                return Err(format!("{t}: euler(e, L{i}) != chi"));
            }
            euler_checked += 1;
        }
    }
    let mut table = GrothTable::new(c.clone());
    let e = WeylElement::identity(&c);
    let verma = dual_verma_a1(6);
    for mu in [[1, 0], [0, 1], [2, 0], [-1, 0]] {
        let w = Weight::from_parts(mu.to_vec(), vec![0, 0]);
        let lc = local_cohomology_character(&mut table, &e, &e, &w, 6).map_err(|e| e.to_string())?;
        if series_as_map(&lc) != verma {
            return Err(format!("local(e, e, {mu:?}) differs from the dual Verma character"));
        }
    }
    // prod (1 - e^{-beta}) over the hand-written roots against the alternating sum
    let mut prod = TruncatedSeries::from_terms(Weight::zero(2), 8, [(vec![0, 0], BigInt::one())]);
    for beta in a1_roots(8) {
        let f = TruncatedSeries::from_terms(Weight::zero(2), 8, [(vec![0, 0], BigInt::one()), (beta.to_vec(), -BigInt::one())]);
        prod = prod.mul(&f);
    }
    let num = weyl_kac_numerator(&c, &Weight::zero(2), 8).map_err(|e| e.to_string())?;
    if prod != num {
        return Err("A1~ denominator identity fails at depth 8".into());
    }
    for t in ["A1~", "A2~", "C2~"] {
        let c = cartan(t);
        let zero = Weight::zero(c.rank());
        let chi0 = weyl_kac_character(&c, &zero, 8).map_err(|e| e.to_string())?;
        let lhs = denominator(&c, 8).map_err(|e| e.to_string())?.mul(&chi0);
        if lhs != weyl_kac_numerator(&c, &zero, 8).map_err(|e| e.to_string())? {
            return Err(format!("{t}: denominator times chi_0 differs from the numerator"));
        }
    }
    Ok(format!("3 Freudenthal comparisons, {euler_checked} Euler, 4 dual Verma, denominator identity to depth 8"))
}

pub fn round_trip(c: &AffineCartanData, f: &KElement) -> Result<(), String> {
    for mode in [PrintMode::Terms, PrintMode::Orbit] {
        let text = print_element(c, f, mode);
        let back = parse_expression(&text, c).map_err(|e| format!("reparse of `{text}`: {e}"))?;
        if &back != f {
            return Err(format!("{mode:?} round trip changes `{text}`"));
        }
    }
    let json = print_element(c, f, PrintMode::Json);
    if &element_from_json(c, &json)? != f {
        return Err("json round trip".into());
    }
    Ok(())
}

pub fn criterion_io() -> Check {
    let fixtures = golden_fixtures();
    for g in &fixtures {
        let c = cartan(&g.ty);
        let f = parse_expression(&g.text, &c).map_err(|e| e.to_string())?;
        round_trip(&c, &f).map_err(|e| format!("{} {}: {e}", g.ty, g.word))?;
    }
    let mut randoms = 0;
    for (k, t) in ["A1~", "A2~", "C2~"].iter().enumerate() {
        let c = cartan(t);
        let mut rng = rng(70 + k as u64);
        for _ in 0..50 {
            round_trip(&c, &random_element(&c, &mut rng, 10))?;
            randoms += 1;
        }
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut tables = 0;
    for t in ["A1~", "A2~", "C2~"] {
        let c = cartan(t);
        let mut table = GrothTable::new(c.clone());
        table.fill_up_to(3, 2).map_err(|e| e.to_string())?;
        table.verify_entry(&WeylElement::simple(&c, 1), &["window", "demazure"], 2);
        let path = table.save(dir.path()).map_err(|e| e.to_string())?;
        let bytes = std::fs::read(&path).map_err(|e| e.to_string())?;
        let loaded = GrothTable::load_or_new(c.clone(), dir.path()).map_err(|e| e.to_string())?;
        if loaded != table || loaded.to_json() != table.to_json() {
            return Err(format!("{t}: cache reload differs"));
        }
        let verified: BTreeSet<_> = loaded.entries().map(|(w, e)| (w.clone(), e.verified.clone())).collect();
        let orig: BTreeSet<_> = table.entries().map(|(w, e)| (w.clone(), e.verified.clone())).collect();
        if verified != orig {
            return Err(format!("{t}: verified flags lost"));
        }
        loaded.save(dir.path()).map_err(|e| e.to_string())?;
        if std::fs::read(&path).map_err(|e| e.to_string())? != bytes {
            return Err(format!("{t}: rewriting the cache changes its bytes"));
        }
        tables += 1;
    }
    Ok(format!("{} fixtures, {randoms} random elements, {tables} cached tables", fixtures.len()))
}
