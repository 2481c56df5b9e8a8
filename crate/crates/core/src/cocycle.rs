//! Cocycle conditions for families `(v_i)` and the solver for the twisted
//! coboundary system `(1 - s_i) B = v_i`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::cartan::AffineCartanData;
use crate::coef::CoefQ;
use crate::error::SolveError;
use crate::kring::KElement;
use crate::weights::NormalizedWeight;
use crate::weyl::WeylElement;

/// One entry `v_i` per node.
pub type CocycleFamily = [KElement];

/// Default number of reflection-closure rounds tried before giving up.
pub const MAX_GROW: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationSite {
    /// `v_i + s_i v_i != 0`.
    Node(usize),
    /// The dihedral alternating sums for the pair differ.
    Pair(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub site: ViolationSite,
    pub residual: KElement,
}

/// Checks both cocycle conditions exactly; returns every violation found.
pub fn check_cocycle(cartan: &AffineCartanData, v: &CocycleFamily) -> Vec<Violation> {
    assert_eq!(v.len(), cartan.rank());
    let mut out = Vec::new();
    for i in cartan.nodes() {
        let r = &v[i] + &v[i].reflect(cartan, i);
        if !r.is_zero() {
            out.push(Violation { site: ViolationSite::Node(i), residual: r });
        }
    }
    for i in cartan.nodes() {
        for j in (i + 1)..cartan.rank() {
            if v[i].is_zero() && v[j].is_zero() {
                continue;
            }
            let Some(group) = WeylElement::dihedral_subgroup(cartan, i, j) else { continue };
            let side = |k: usize| {
                let mut acc = KElement::zero();
                for x in &group {
                    if !x.has_right_descent(cartan, k) {
                        let t = v[k].weyl_act(cartan, x);
                        acc = if x.length() % 2 == 0 { &acc + &t } else { &acc - &t };
                    }
                }
                acc
            };
            let r = &side(i) - &side(j);
            if !r.is_zero() {
                out.push(Violation { site: ViolationSite::Pair(i, j), residual: r });
            }
        }
    }
    out
}

/// The family `v_i = (1 - s_i) b`.
pub fn coboundary(cartan: &AffineCartanData, b: &KElement) -> Vec<KElement> {
    cartan.nodes().map(|i| b - &b.reflect(cartan, i)).collect()
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Eliminate towards the largest weight of each component instead of
    /// the smallest. Changes which free parameters are set to zero.
    pub reverse_order: bool,
    /// Run [`check_cocycle`] on the input first.
    pub check_cocycle: bool,
    pub max_grow: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { reverse_order: false, check_cocycle: true, max_grow: MAX_GROW }
    }
}

/// Finds `B` with `(1 - s_i) B = v_i` for every `i`, supported in levels
/// `(lo, hi]`. The result is verified by substitution before it is
/// returned.
pub fn solve_coboundary(
    cartan: &AffineCartanData,
    v: &CocycleFamily,
    window: (i64, i64),
    opts: &SolveOptions,
) -> Result<KElement, SolveError> {
    assert_eq!(v.len(), cartan.rank());
    if opts.check_cocycle {
        if let Some(bad) = check_cocycle(cartan, v).first() {
            return Err(SolveError::CocycleViolation(format!("{:?}", bad.site)));
        }
    }
    if let Some(i) = cartan.nodes().find(|&i| !v[i].level_window(window.0, window.1)) {
        return Err(SolveError::Inconsistent(format!("v_{i} leaves the level window {window:?}")));
    }
    let mut support: BTreeSet<NormalizedWeight> = v.iter().flat_map(|f| f.support().cloned()).collect();
    if support.is_empty() {
        return Ok(KElement::zero());
    }
    for _ in 0..opts.max_grow {
        support = grow(cartan, &support);
        match solve_on_support(cartan, v, &support, opts.reverse_order) {
            Ok(b) => {
                let residual = cartan.nodes().find(|&i| &b - &b.reflect(cartan, i) != v[i]);
                if let Some(i) = residual {
                    return Err(SolveError::Inconsistent(format!("substitution check failed at node {i}")));
                }
                return Ok(b);
            }
            Err(_) => continue,
        }
    }
    Err(SolveError::SupportGrowthExceeded(opts.max_grow))
}

fn grow(cartan: &AffineCartanData, s: &BTreeSet<NormalizedWeight>) -> BTreeSet<NormalizedWeight> {
    let mut out = s.clone();
    for k in s {
        for i in cartan.nodes() {
            out.insert(k.weight().reflect(cartan, i).normalize(cartan).1);
        }
    }
    out
}

/// `b_a - c * b_b = r`, or `b_a = r` when `b` is absent.
struct Equation {
    a: usize,
    b: Option<(usize, CoefQ)>,
    r: CoefQ,
}

fn solve_on_support(
    cartan: &AffineCartanData,
    v: &CocycleFamily,
    support: &BTreeSet<NormalizedWeight>,
    reverse: bool,
) -> Result<KElement, SolveError> {
    let keys: Vec<&NormalizedWeight> = support.iter().collect();
    let index: BTreeMap<&NormalizedWeight, usize> = keys.iter().enumerate().map(|(k, w)| (*w, k)).collect();
    let n = keys.len();

    // Coefficient of e^nu in (1 - s_i) B is b_nu - q^{-n'} b_{nu'} with
    // (n', nu') = normalize(s_i nu). The equations at nu and nu' are
    // proportional once condition (i) holds, so one per pair suffices.
    let mut eqs: Vec<Equation> = Vec::new();
    for i in cartan.nodes() {
        let mut done: BTreeSet<usize> = BTreeSet::new();
        for (a, key) in keys.iter().enumerate() {
            if done.contains(&a) {
                continue;
            }
            let (np, partner) = key.weight().reflect(cartan, i).normalize(cartan);
            let r = v[i].coeff(key);
            if &&partner == key {
                if !r.is_zero() {
                    return Err(SolveError::Inconsistent(format!("s_{i}-fixed weight with nonzero v_{i}")));
                }
                continue;
            }
            match index.get(&partner) {
                Some(&b) => {
                    done.insert(b);
                    eqs.push(Equation { a, b: Some((b, CoefQ::q_pow(-np))), r });
                }
                None => {
                    // partner equation: -q^{np} b_a = v_i[partner]
                    let rp = v[i].coeff(&partner);
                    if !(&rp + &r.mul_q_pow(np)).is_zero() {
                        return Err(SolveError::Inconsistent(format!("node {i} violates (1 + s_i) v_i = 0")));
                    }
                    eqs.push(Equation { a, b: None, r });
                }
            }
        }
    }

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, e) in eqs.iter().enumerate() {
        adj[e.a].push(k);
        if let Some((b, _)) = &e.b {
            adj[*b].push(k);
        }
    }

    // b_x = f[x] * b_root + g[x] along a spanning forest; f is always +-q^k.
    let mut f: Vec<Option<(CoefQ, CoefQ)>> = vec![None; n];
    let mut values: Vec<CoefQ> = vec![CoefQ::zero(); n];
    let order: Vec<usize> = if reverse { (0..n).rev().collect() } else { (0..n).collect() };
    for &root in &order {
        if f[root].is_some() {
            continue;
        }
        f[root] = Some((CoefQ::one(), CoefQ::zero()));
        let mut members = vec![root];
        let mut queue = VecDeque::from([root]);
        let mut used: BTreeSet<usize> = BTreeSet::new();
        let mut constraints: Vec<(CoefQ, CoefQ)> = Vec::new();
        while let Some(x) = queue.pop_front() {
            for &k in &adj[x] {
                if !used.insert(k) {
                    continue;
                }
                let e = &eqs[k];
                match &e.b {
                    None => {
                        let (fa, ga) = f[e.a].clone().expect("reached through its only endpoint");
                        constraints.push((fa, &e.r - &ga));
                    }
                    Some((b, c)) => {
                        let b = *b;
                        match (f[e.a].clone(), f[b].clone()) {
                            (Some((fa, ga)), None) => {
                                // b_b = (b_a - r) / c
                                let ci = c.inv().unwrap();
                                f[b] = Some((&fa * &ci, &(&ga - &e.r) * &ci));
                                members.push(b);
                                queue.push_back(b);
                            }
                            (None, Some((fb, gb))) => {
                                f[e.a] = Some((c * &fb, &e.r + &(c * &gb)));
                                members.push(e.a);
                                queue.push_back(e.a);
                            }
                            (Some((fa, ga)), Some((fb, gb))) => {
                                // (fa - c fb) b_root = r - ga + c gb
                                constraints.push((&fa - &(c * &fb), &(&e.r - &ga) + &(c * &gb)));
                            }
                            (None, None) => unreachable!(),
                        }
                    }
                }
            }
        }
        let mut root_value: Option<CoefQ> = None;
        for (alpha, beta) in &constraints {
            if !alpha.is_zero() {
                root_value = Some(beta.div(alpha).unwrap());
                break;
            }
        }
        let rv = root_value.unwrap_or_else(CoefQ::zero);
        for (alpha, beta) in &constraints {
            if &(alpha * &rv) != beta {
                return Err(SolveError::Inconsistent("conflicting constraints in a component".into()));
            }
        }
        for &m in &members {
            let (fm, gm) = f[m].as_ref().unwrap();
            values[m] = &(fm * &rv) + gm;
        }
    }
    Ok(KElement::from_terms(keys.into_iter().cloned().zip(values)))
}
