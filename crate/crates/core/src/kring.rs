//! Finite formal sums `sum c_mu e^mu` with coefficients in `Q(q)`, where
//! `q = e^delta` and every exponent is stored in delta-normal form.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use crate::cartan::AffineCartanData;
use crate::coef::CoefQ;
use crate::weights::{NormalizedWeight, Weight};
use crate::weyl::WeylElement;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct KElement {
    terms: BTreeMap<NormalizedWeight, CoefQ>,
}

impl KElement {
    pub fn zero() -> Self {
        KElement { terms: BTreeMap::new() }
    }

    pub fn one(cartan: &AffineCartanData) -> Self {
        Self::term(NormalizedWeight::zero(cartan.rank()), CoefQ::one())
    }

    pub fn constant(cartan: &AffineCartanData, c: CoefQ) -> Self {
        Self::term(NormalizedWeight::zero(cartan.rank()), c)
    }

    pub fn term(key: NormalizedWeight, c: CoefQ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        KElement { terms }
    }

    /// `e^w` for an arbitrary (not necessarily normalized) weight.
    pub fn exp(cartan: &AffineCartanData, w: &Weight) -> Self {
        let (n, key) = w.normalize(cartan);
        Self::term(key, CoefQ::q_pow(n))
    }

    /// `c e^w`.
    pub fn monomial(cartan: &AffineCartanData, c: CoefQ, w: &Weight) -> Self {
        let (n, key) = w.normalize(cartan);
        Self::term(key, c.mul_q_pow(n))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NormalizedWeight, CoefQ)>) -> Self {
        let mut out = KElement::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NormalizedWeight, &CoefQ)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<NormalizedWeight, CoefQ> {
        self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = &NormalizedWeight> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &NormalizedWeight) -> CoefQ {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: NormalizedWeight, c: &CoefQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Whether every key has level in `(lo, hi]`.
    pub fn level_window(&self, lo: i64, hi: i64) -> bool {
        self.terms.keys().all(|k| lo < k.level() && k.level() <= hi)
    }

    /// `(min, max)` level of the support.
    pub fn level_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().next()?.level();
        let hi = self.terms.keys().next_back()?.level();
        Some((lo, hi))
    }

    pub fn scale(&self, c: &CoefQ) -> Self {
        if c.is_zero() {
            return KElement::zero();
        }
        KElement { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// Multiplication by `e^w`.
    pub fn shift(&self, cartan: &AffineCartanData, w: &Weight) -> Self {
        let (n, key) = w.normalize(cartan);
        KElement {
            terms: self.terms.iter().map(|(k, v)| (k.add(&key), v.mul_q_pow(n))).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoefQ) -> CoefQ) -> Self {
        KElement::from_terms(self.terms.iter().map(|(k, v)| (k.clone(), f(v))))
    }

    /// Applies a weight map to every exponent and renormalizes.
    fn map_exponents(
        &self,
        cartan: &AffineCartanData,
        f: impl Fn(&Weight) -> Weight,
        g: impl Fn(&CoefQ) -> CoefQ,
    ) -> Self {
        let mut out = KElement::zero();
        for (k, v) in &self.terms {
            let (n, key) = f(k.weight()).normalize(cartan);
            out.add_term(key, &g(v).mul_q_pow(n));
        }
        out
    }

    /// The action of `s_i`.
    pub fn reflect(&self, cartan: &AffineCartanData, i: usize) -> Self {
        self.map_exponents(cartan, |w| w.reflect(cartan, i), CoefQ::clone)
    }

    /// The action of `w`; `e^delta = q` is fixed.
    pub fn weyl_act(&self, cartan: &AffineCartanData, w: &WeylElement) -> Self {
        if w.is_identity() {
            return self.clone();
        }
        self.map_exponents(cartan, |x| w.act(cartan, x), CoefQ::clone)
    }

    /// Demazure operator `(f - e^{-alpha_i} s_i f) / (1 - e^{-alpha_i})`,
    /// evaluated term-wise by the geometric-sum closed form.
    pub fn demazure(&self, cartan: &AffineCartanData, i: usize) -> Self {
        let mut out = KElement::zero();
        for (k, v) in &self.terms {
            let mu = k.weight();
            let m = cartan.pairing(i, mu);
            let range: Vec<i64> = match m {
                m if m >= 0 => (0..=m).map(|k| -k).collect(),
                -1 => Vec::new(),
                m => (1..=(-m - 1)).collect(),
            };
            let sign = if m >= 0 { v.clone() } else { -v };
            for k in range {
                let (n, key) = mu.add_root(i, k).normalize(cartan);
                out.add_term(key, &sign.mul_q_pow(n));
            }
        }
        out
    }

    /// Composite Demazure operator along a word: `D_{i_1} ... D_{i_k} f`.
    pub fn demazure_word(&self, cartan: &AffineCartanData, word: &[usize]) -> Self {
        word.iter().rev().fold(self.clone(), |acc, &i| acc.demazure(cartan, i))
    }

    /// `j_w(e^{lambda + alpha}) = e^{w(lambda + alpha) - lambda}`; the result
    /// lives in the root-lattice part.
    pub fn j_map(&self, cartan: &AffineCartanData, w: &WeylElement) -> Self {
        self.map_exponents(cartan, |x| &w.act(cartan, x) - &x.l_part(), CoefQ::clone)
    }

    /// `psi(e^{lambda + alpha}) = e^{lambda - eta(alpha)}`, `q -> 1/q`.
    pub fn psi(&self, cartan: &AffineCartanData) -> Self {
        self.map_exponents(
            cartan,
            |x| &x.l_part() - &x.q_part().eta(cartan).expect("root-lattice part"),
            CoefQ::invert_q,
        )
    }

    /// `e^alpha -> e^{eta(alpha)}`; `None` if some key has nonzero `L`-part.
    pub fn eta_embed(&self, cartan: &AffineCartanData) -> Option<Self> {
        let mut out = KElement::zero();
        for (k, v) in &self.terms {
            let e = k.weight().eta(cartan)?;
            out.add_term(NormalizedWeight::from_normal(cartan, e), v);
        }
        Some(out)
    }

    /// Whether every key has zero `L`-part.
    pub fn is_root_lattice(&self) -> bool {
        self.terms.keys().all(|k| k.weight().is_root_lattice())
    }

    /// `E^lambda`: sum of `e^mu` over the orbit of `lambda` under the
    /// classical Weyl group generated by `s_i`, `i != node0`.
    pub fn orbit_sum(cartan: &AffineCartanData, lambda: &Weight) -> Self {
        classical_orbit(cartan, lambda)
            .iter()
            .fold(KElement::zero(), |acc, w| &acc + &KElement::exp(cartan, w))
    }
}

/// The orbit of `lambda` under `s_i`, `i != node0`, sorted.
pub fn classical_orbit(cartan: &AffineCartanData, lambda: &Weight) -> Vec<Weight> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![lambda.clone()];
    while let Some(w) = stack.pop() {
        if seen.contains(&w) {
            continue;
        }
        for i in cartan.nodes().filter(|&i| i != cartan.node0()) {
            let r = w.reflect(cartan, i);
            if !seen.contains(&r) {
                stack.push(r);
            }
        }
        seen.insert(w);
    }
    seen.into_iter().collect()
}

/// The unique antidominant element (for the classical pairings) of the
/// classical orbit of `lambda`.
pub fn classical_antidominant(cartan: &AffineCartanData, lambda: &Weight) -> Weight {
    let mut w = lambda.clone();
    loop {
        let Some(i) = cartan.nodes().find(|&i| i != cartan.node0() && cartan.pairing(i, &w) > 0) else {
            return w;
        };
        w = w.reflect(cartan, i);
    }
}

impl Add for &KElement {
    type Output = KElement;
    fn add(self, rhs: &KElement) -> KElement {
        let (mut out, other) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        out
    }
}

impl Sub for &KElement {
    type Output = KElement;
    fn sub(self, rhs: &KElement) -> KElement {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), &-v);
        }
        out
    }
}

impl Neg for &KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        KElement { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }
}

impl Mul for &KElement {
    type Output = KElement;
    fn mul(self, rhs: &KElement) -> KElement {
        let mut out = KElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.add(b), &(x * y));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for KElement {
            type Output = KElement;
            fn $m(self, rhs: KElement) -> KElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use rand::Rng;

    /// Random element with up to `max_terms` terms, small exponents and
    /// coefficients drawn from a few shapes (integers, q-powers, `1/(1-q^k)`).
    pub fn random_element(cartan: &AffineCartanData, rng: &mut impl Rng, max_terms: usize) -> KElement {
        let n = cartan.rank();
        let mut out = KElement::zero();
        for _ in 0..rng.gen_range(0..=max_terms) {
            let l: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=1)).collect();
            let m: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            let c = random_coef(rng);
            out = &out + &KElement::monomial(cartan, c, &Weight::from_parts(l, m));
        }
        out
    }

    pub fn random_coef(rng: &mut impl Rng) -> CoefQ {
        let a = CoefQ::from_int(rng.gen_range(-3..=3i64)).mul_q_pow(rng.gen_range(-2..=2));
        match rng.gen_range(0..4) {
            0 => {
                let k = rng.gen_range(1..=3);
                let d = crate::coef::ZPoly::one_minus_q_pow(k);
                a.div(&CoefQ::new(d, 0, crate::coef::ZPoly::one())).unwrap()
            }
            1 => &a + &CoefQ::q_pow(rng.gen_range(0..3)),
            _ => a,
        }
    }
}
