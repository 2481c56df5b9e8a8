//! Truncated formal characters: Weyl-Kac characters, local cohomology
//! characters of cells, and Euler characteristics of twisted Schubert
//! structure sheaves.
//!
//! A series with base `b` and cutoff `N` stores coefficients of `e^{b - a}`
//! for root-lattice vectors `a` of depth `d(a) = sum a_i <= N`. Factors of
//! `q = e^delta` in coefficients are expanded in powers of `q^-1`, so every
//! series is a completion in the direction of `e^{-alpha_i}`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cartan::AffineCartanData;
use crate::error::CharacterError;
use crate::expr::JsonInt;
use crate::groth::GrothTable;
use crate::kring::KElement;
use crate::weights::Weight;
use crate::weyl::WeylElement;

fn depth(a: &[i64]) -> i64 {
    a.iter().sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    base: Weight,
    cutoff: i64,
    coeffs: BTreeMap<Vec<i64>, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(base: Weight, cutoff: i64) -> Self {
        TruncatedSeries { base, cutoff, coeffs: BTreeMap::new() }
    }

    /// Builds a series from `(a, c)` pairs meaning `c e^{base - a}`; terms
    /// deeper than the cutoff are dropped.
    pub fn from_terms(base: Weight, cutoff: i64, terms: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Self {
        let mut s = Self::zero(base, cutoff);
        for (a, c) in terms {
            s.add_at(a, c);
        }
        s
    }

    pub fn base(&self) -> &Weight {
        &self.base
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `e^{base - a}`.
    pub fn coeff_at(&self, a: &[i64]) -> BigInt {
        self.coeffs.get(a).cloned().unwrap_or_default()
    }

    /// Coefficient of `e^w`; zero when `w` is not of the form `base - a`.
    pub fn coeff(&self, w: &Weight) -> BigInt {
        let d = &self.base - w;
        if !d.is_root_lattice() {
            return BigInt::zero();
        }
        self.coeff_at(d.m())
    }

    /// Terms `(a, c)` ordered by depth, then lexicographically.
    pub fn terms(&self) -> Vec<(&[i64], &BigInt)> {
        let mut v: Vec<(&[i64], &BigInt)> = self.coeffs.iter().map(|(a, c)| (a.as_slice(), c)).collect();
        v.sort_by_key(|(a, _)| (depth(a), a.to_vec()));
        v
    }

    /// The exponent `base - a` as a weight.
    pub fn weight_of(&self, a: &[i64]) -> Weight {
        let m = self.base.m().iter().zip(a).map(|(b, x)| b - x).collect();
        Weight::from_parts(self.base.l().to_vec(), m)
    }

    /// The same series truncated at a smaller depth.
    pub fn truncate(&self, cutoff: i64) -> Self {
        Self::from_terms(self.base.clone(), cutoff.min(self.cutoff), self.coeffs.clone())
    }

    fn add_at(&mut self, a: Vec<i64>, c: BigInt) {
        if c.is_zero() || depth(&a) > self.cutoff {
            return;
        }
        match self.coeffs.entry(a) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Product, truncated at the smaller cutoff. Exact only when both
    /// factors have no terms of negative depth.
    pub fn mul(&self, other: &Self) -> Self {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = Self::zero(&self.base + &other.base, cutoff);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let ab: Vec<i64> = a.iter().zip(b).map(|(s, t)| s + t).collect();
                out.add_at(ab, x * y);
            }
        }
        out
    }

    /// `coeff * e[weight]` lines ordered by depth.
    pub fn to_text(&self, cartan: &AffineCartanData) -> String {
        let mut s = String::new();
        for (a, c) in self.terms() {
            writeln!(s, "{c} * e[{}]", self.weight_of(a).to_text(cartan)).unwrap();
        }
        s
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Term {
            depth: i64,
            weight: Weight,
            coeff: JsonInt,
        }
        #[derive(Serialize)]
        struct Series<'a> {
            base: &'a Weight,
            cutoff: i64,
            terms: Vec<Term>,
        }
        let terms = self
            .terms()
            .into_iter()
            .map(|(a, c)| Term { depth: depth(a), weight: self.weight_of(a), coeff: JsonInt::from_big(c) })
            .collect();
        let mut s = serde_json::to_string_pretty(&Series { base: &self.base, cutoff: self.cutoff, terms }).unwrap();
        s.push('\n');
        s
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.base, rhs.base, "series with different bases");
        let mut out = self.truncate(rhs.cutoff);
        for (a, c) in &rhs.coeffs {
            out.add_at(a.clone(), c.clone());
        }
        out
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            base: self.base.clone(),
            cutoff: self.cutoff,
            coeffs: self.coeffs.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

/// A positive root with its multiplicity `dim g_alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub root: Vec<i64>,
    pub multiplicity: i64,
    pub imaginary: bool,
}

fn require_untwisted(cartan: &AffineCartanData) -> Result<(), CharacterError> {
    if cartan.is_untwisted() {
        Ok(())
    } else {
        Err(CharacterError::Twisted)
    }
}

fn root_weight(cartan: &AffineCartanData, m: &[i64]) -> Weight {
    Weight::from_parts(vec![0; cartan.rank()], m.to_vec())
}

/// Positive roots of depth at most `max_depth`, ordered by depth. Real
/// roots are found by reflecting upwards from the simple roots; the
/// imaginary roots `n delta` carry multiplicity `|I| - 1`.
pub fn positive_roots(cartan: &AffineCartanData, max_depth: i64) -> Result<Vec<PositiveRoot>, CharacterError> {
    require_untwisted(cartan)?;
    let n = cartan.rank();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in cartan.nodes() {
        let r = cartan.simple_root(i).m().to_vec();
        if max_depth >= 1 && seen.insert(r.clone()) {
            queue.push_back(r);
        }
    }
    while let Some(b) = queue.pop_front() {
        let w = root_weight(cartan, &b);
        for i in cartan.nodes() {
            let p = cartan.pairing(i, &w);
            if p < 0 {
                let mut c = b.clone();
                c[i] -= p;
                if depth(&c) <= max_depth && seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
        }
    }
    let mut out: Vec<PositiveRoot> =
        seen.into_iter().map(|root| PositiveRoot { root, multiplicity: 1, imaginary: false }).collect();
    let h = cartan.delta_height();
    let mut k = 1;
    while k * h <= max_depth {
        let root = cartan.marks().iter().map(|a| a * k).collect();
        out.push(PositiveRoot { root, multiplicity: n as i64 - 1, imaginary: true });
        k += 1;
    }
    out.sort_by_key(|r| (depth(&r.root), r.root.clone()));
    Ok(out)
}

/// All `a` in `Q_+` of depth at most `max_depth`, by increasing depth.
fn cone_vectors(rank: usize, max_depth: i64) -> Vec<Vec<i64>> {
    let mut layers: Vec<Vec<Vec<i64>>> = vec![vec![vec![0; rank]]];
    for d in 1..=max_depth.max(0) {
        let mut layer: Vec<Vec<i64>> = Vec::new();
        let mut seen = HashSet::new();
        for v in &layers[d as usize - 1] {
            for i in 0..rank {
                let mut w = v.clone();
                w[i] += 1;
                if seen.insert(w.clone()) {
                    layer.push(w);
                }
            }
        }
        layer.sort();
        layers.push(layer);
    }
    layers.into_iter().flatten().collect()
}

/// `prod_{alpha > 0} (1 - e^{-alpha})^{-mult}` to the given depth, keyed by
/// `a` for `e^{-a}`.
fn inverse_denominator_map(cartan: &AffineCartanData, max_depth: i64) -> Result<HashMap<Vec<i64>, BigInt>, CharacterError> {
    let roots = positive_roots(cartan, max_depth)?;
    let cone = cone_vectors(cartan.rank(), max_depth);
    let mut c: HashMap<Vec<i64>, BigInt> = HashMap::new();
    c.insert(vec![0; cartan.rank()], BigInt::one());
    for r in &roots {
        for _ in 0..r.multiplicity {
            // in-place multiplication by 1/(1 - e^{-beta}): new[a] = old[a] + new[a - beta]
            for a in &cone {
                if a.iter().zip(&r.root).any(|(x, y)| x < y) {
                    continue;
                }
                let prev: Vec<i64> = a.iter().zip(&r.root).map(|(x, y)| x - y).collect();
                if let Some(p) = c.get(&prev).cloned() {
                    *c.entry(a.clone()).or_default() += p;
                }
            }
        }
    }
    c.retain(|_, v| !v.is_zero());
    Ok(c)
}

/// `prod_{alpha > 0} (1 - e^{-alpha})^{mult}` truncated at `cutoff`, with
/// base `0`.
pub fn denominator(cartan: &AffineCartanData, cutoff: i64) -> Result<TruncatedSeries, CharacterError> {
    let mut s = TruncatedSeries::from_terms(Weight::zero(cartan.rank()), cutoff, [(vec![0; cartan.rank()], BigInt::one())]);
    for r in positive_roots(cartan, cutoff)? {
        let f = TruncatedSeries::from_terms(
            Weight::zero(cartan.rank()),
            cutoff,
            [(vec![0; cartan.rank()], BigInt::one()), (r.root.clone(), -BigInt::one())],
        );
        for _ in 0..r.multiplicity {
            s = s.mul(&f);
        }
    }
    Ok(s)
}

/// The inverse of [`denominator`].
pub fn inverse_denominator(cartan: &AffineCartanData, cutoff: i64) -> Result<TruncatedSeries, CharacterError> {
    let c = inverse_denominator_map(cartan, cutoff)?;
    Ok(TruncatedSeries::from_terms(Weight::zero(cartan.rank()), cutoff, c))
}

/// `sum_x (-1)^{l(x)} e^{x lam}` for regular dominant `lam`, as pairs
/// `(lam - x lam, sign)` with depth at most `max_depth`. Depth grows
/// strictly along left multiplication that increases length, so the
/// search can stop at the cutoff.
fn alternating_orbit(cartan: &AffineCartanData, lam: &Weight, max_depth: i64) -> Vec<(Vec<i64>, BigInt)> {
    let mut out = vec![(vec![0; cartan.rank()], BigInt::one())];
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(vec![0; cartan.rank()]);
    let mut queue = VecDeque::from([(lam.clone(), vec![0; cartan.rank()], 1i64)]);
    while let Some((nu, a, sign)) = queue.pop_front() {
        for i in cartan.nodes() {
            let p = cartan.pairing(i, &nu);
            if p <= 0 {
                continue;
            }
            let mut b = a.clone();
            b[i] += p;
            if depth(&b) > max_depth || !seen.insert(b.clone()) {
                continue;
            }
            out.push((b.clone(), BigInt::from(-sign)));
            queue.push_back((nu.add_root(i, -p), b, -sign));
        }
    }
    out
}

/// `sum_x (-1)^{l(x)} e^{x(mu + rho) - rho}` truncated at `cutoff`, base `mu`.
pub fn weyl_kac_numerator(cartan: &AffineCartanData, mu: &Weight, cutoff: i64) -> Result<TruncatedSeries, CharacterError> {
    require_untwisted(cartan)?;
    if !mu.is_dominant(cartan) {
        return Err(CharacterError::NotDominant);
    }
    let lam = mu + &cartan.rho();
    Ok(TruncatedSeries::from_terms(mu.clone(), cutoff, alternating_orbit(cartan, &lam, cutoff)))
}

/// Divides a finite numerator (pairs `(a, c)` for `c e^{base - a}`) by the
/// Weyl denominator.
fn divide_by_denominator(
    cartan: &AffineCartanData,
    base: Weight,
    numerator: Vec<(Vec<i64>, BigInt)>,
    cutoff: i64,
) -> Result<TruncatedSeries, CharacterError> {
    let numerator: Vec<_> = numerator.into_iter().filter(|(a, c)| depth(a) <= cutoff && !c.is_zero()).collect();
    let mut out = TruncatedSeries::zero(base, cutoff);
    let Some(dmin) = numerator.iter().map(|(a, _)| depth(a)).min() else {
        return Ok(out);
    };
    let inv = inverse_denominator_map(cartan, cutoff - dmin)?;
    for (a, x) in &numerator {
        let room = cutoff - depth(a);
        for (b, y) in &inv {
            if depth(b) <= room {
                out.add_at(a.iter().zip(b).map(|(s, t)| s + t).collect(), x * y);
            }
        }
    }
    Ok(out)
}

/// The Weyl-Kac character `chi_mu` of the integrable module of highest
/// weight `mu`, truncated at depth `cutoff`.
pub fn weyl_kac_character(cartan: &AffineCartanData, mu: &Weight, cutoff: i64) -> Result<TruncatedSeries, CharacterError> {
    let num = weyl_kac_numerator(cartan, mu, cutoff)?;
    divide_by_denominator(cartan, mu.clone(), num.coeffs.into_iter().collect(), cutoff)
}

/// Reduces `nu + rho` to the dominant chamber: `chi_nu = sign * chi_{nu'}`,
/// or `None` when `nu + rho` lies on a wall. Needs `level(nu + rho) > 0`.
fn straighten(cartan: &AffineCartanData, nu: &Weight) -> Option<(i64, Weight)> {
    let mut lam = nu + &cartan.rho();
    assert!(cartan.level(&lam) > 0, "straightening needs positive level");
    let mut sign = 1;
    loop {
        match cartan.nodes().map(|i| (i, cartan.pairing(i, &lam))).find(|&(_, p)| p <= 0) {
            None => return Some((sign, &lam - &cartan.rho())),
            Some((_, 0)) => return None,
            Some((i, _)) => {
                lam = lam.reflect(cartan, i);
                sign = -sign;
            }
        }
    }
}

/// Expands `c(q)` in powers of `q^-1` and yields `(n, c_n)` for the terms
/// `c_n q^n` with `n >= lowest`.
fn q_expansion(c: &crate::coef::CoefQ, lowest: i64) -> Result<Vec<(i64, BigInt)>, CharacterError> {
    let probe = c.expand_in_inverse_q(1).ok_or(CharacterError::NotExpandable)?;
    let top = probe.0;
    if top < lowest {
        return Ok(Vec::new());
    }
    let (top, cs) = c.expand_in_inverse_q((top - lowest + 1) as usize).ok_or(CharacterError::NotExpandable)?;
    Ok(cs.into_iter().enumerate().map(|(k, v)| (top - k as i64, v)).filter(|(_, v)| !v.is_zero()).collect())
}

/// Character of the local cohomology of the cell at `x` with coefficients in
/// the class of `X_w` twisted by `mu`:
/// `(-1)^{l(w)} e^{x(mu + rho) - rho} j_x(G_w) / prod (1 - e^{-alpha})^mult`.
pub fn local_cohomology_character(
    table: &mut GrothTable,
    w: &WeylElement,
    x: &WeylElement,
    mu: &Weight,
    cutoff: i64,
) -> Result<TruncatedSeries, CharacterError> {
    let cartan = table.cartan().clone();
    require_untwisted(&cartan)?;
    if !w.bruhat_leq(&cartan, x) {
        return Ok(TruncatedSeries::zero(mu.clone(), cutoff));
    }
    let g = table.compute(w)?;
    let jx = g.j_map(&cartan, x);
    let rho = cartan.rho();
    let top = &x.act(&cartan, &(mu + &rho)) - &rho;
    let sign = if w.length().is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    let delta = cartan.delta();
    let h = cartan.delta_height();
    let mut numerator = Vec::new();
    for (nw, c) in jx.iter() {
        // mu - (top + nw + n delta) has depth d0 - n h
        let base_gap = &(mu - &top) - nw.weight();
        let d0 = depth(base_gap.m());
        let lowest = Integer::div_ceil(&(d0 - cutoff), &h);
        for (n, cn) in q_expansion(c, lowest)? {
            let a = &base_gap - &delta.scale(n);
            numerator.push((a.m().to_vec(), &sign * cn));
        }
    }
    divide_by_denominator(&cartan, mu.clone(), numerator, cutoff)
}

/// Euler characteristic of the structure sheaf of `X_w` twisted by `mu`:
/// `sum a_{lam,alpha} e^{-lam} chi_{mu + lam + alpha}` over the terms of
/// `G_w`, with non-dominant shifted weights straightened through the
/// alternating numerator.
pub fn euler_character(
    table: &mut GrothTable,
    w: &WeylElement,
    mu: &Weight,
    cutoff: i64,
) -> Result<TruncatedSeries, CharacterError> {
    let cartan = table.cartan().clone();
    require_untwisted(&cartan)?;
    if cartan.level(mu) < 0 {
        return Err(CharacterError::NegativeLevel);
    }
    let g = table.compute(w)?;
    euler_of_element(&cartan, &g, mu, cutoff)
}

/// [`euler_character`] for an arbitrary element in place of `G_w`.
pub fn euler_of_element(
    cartan: &AffineCartanData,
    g: &KElement,
    mu: &Weight,
    cutoff: i64,
) -> Result<TruncatedSeries, CharacterError> {
    require_untwisted(cartan)?;
    let delta = cartan.delta();
    let h = cartan.delta_height();
    let mut chars: HashMap<(Weight, i64), TruncatedSeries> = HashMap::new();
    let mut out = TruncatedSeries::zero(mu.clone(), cutoff);
    for (nw, c) in g.iter() {
        let lam = nw.weight().l_part();
        let nu = &(mu + &lam) + &nw.weight().q_part();
        let Some((sign, nu2)) = straighten(cartan, &nu) else { continue };
        // term c_n q^n e^{-lam} chi_{nu2}: its top e^{nu2 - lam + n delta}
        // sits at depth d0 - n h below mu
        let gap = &(mu - &nu2) + &lam;
        let d0 = depth(gap.m());
        let lowest = Integer::div_ceil(&(d0 - cutoff), &h);
        for (n, cn) in q_expansion(c, lowest)? {
            let a = &gap - &delta.scale(n);
            let room = cutoff - depth(a.m());
            let key = (nu2.clone(), room);
            if !chars.contains_key(&key) {
                chars.insert(key.clone(), weyl_kac_character(cartan, &nu2, room)?);
            }
            let chi = &chars[&key];
            let k = &cn * sign;
            for (b, y) in &chi.coeffs {
                out.add_at(a.m().iter().zip(b).map(|(s, t)| s + t).collect(), &k * y);
            }
        }
    }
    Ok(out)
}

/// Whether every coefficient is a non-negative integer.
pub fn is_nonnegative(s: &TruncatedSeries) -> bool {
    s.coeffs.values().all(|c| !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> AffineCartanData {
        AffineCartanData::affine_a(1).unwrap()
    }

    #[test]
    fn root_counts_a1() {
        let c = a1();
        let roots = positive_roots(&c, 4).unwrap();
        // depth 1: a0, a1; 2: delta; 3: a0+d, a1+d; 4: 2 delta
        let depths: Vec<i64> = roots.iter().map(|r| depth(&r.root)).collect();
        assert_eq!(depths, vec![1, 1, 2, 3, 3, 4]);
        assert!(roots.iter().filter(|r| r.imaginary).all(|r| r.multiplicity == 1));
    }

    #[test]
    fn trivial_character() {
        for c in [a1(), AffineCartanData::affine_a(2).unwrap(), AffineCartanData::affine_c(2).unwrap()] {
            let chi = weyl_kac_character(&c, &Weight::zero(c.rank()), 6).unwrap();
            let one = TruncatedSeries::from_terms(Weight::zero(c.rank()), 6, [(vec![0; c.rank()], BigInt::one())]);
            assert_eq!(chi, one);
        }
    }

    #[test]
    fn denominator_inverse() {
        let c = AffineCartanData::affine_a(2).unwrap();
        let p = denominator(&c, 6).unwrap().mul(&inverse_denominator(&c, 6).unwrap());
        assert_eq!(p.terms().len(), 1);
        assert!(p.coeff_at(&[0, 0, 0]).is_one());
    }

    #[test]
    fn basic_module_top_and_positivity() {
        let c = a1();
        let l0 = c.fundamental(0);
        let chi = weyl_kac_character(&c, &l0, 6).unwrap();
        assert!(chi.coeff(&l0).is_one());
        assert!(is_nonnegative(&chi));
        // weight L0 - delta has multiplicity p(1) = 1, L0 - 2 delta has p(2) = 2
        assert_eq!(chi.coeff_at(&[1, 1]), BigInt::from(1));
        assert_eq!(chi.coeff_at(&[2, 2]), BigInt::from(2));
    }

    #[test]
    fn twisted_refused() {
        let c = AffineCartanData::from_type_str("[[2,-4],[-1,2]]").unwrap();
        assert!(!c.is_untwisted());
        assert!(matches!(positive_roots(&c, 3), Err(CharacterError::Twisted)));
    }

    #[test]
    fn straighten_walls() {
        let c = a1();
        // L0 - 2L1 + rho = 2L0 - L1 -> 2L0 - L1 + a1, which pairs to 0 with h_0
        assert!(straighten(&c, &Weight::from_parts(vec![1, -2], vec![0, 0])).is_none());
        // 2L0 - 2L1 + rho = 3L0 - L1 -> 3L0 - L1 + a1, regular dominant
        let (sign, nu2) = straighten(&c, &Weight::from_parts(vec![2, -2], vec![0, 0])).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(nu2, Weight::from_parts(vec![2, -2], vec![0, 1]));
    }
}
