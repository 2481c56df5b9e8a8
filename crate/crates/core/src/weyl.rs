//! Affine Weyl group elements in a canonical reduced-word normal form.
//!
//! An element is determined by its image `w(rho)`; the stored word is
//! obtained by repeatedly stripping the smallest left descent.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use crate::cartan::AffineCartanData;
use crate::error::ParseError;
use crate::weights::Weight;

#[derive(Clone, Debug)]
pub struct WeylElement {
    word: Vec<usize>,
    rho_image: Weight,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.rho_image == other.rho_image
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rho_image.hash(state);
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.word.len(), &self.word).cmp(&(other.word.len(), &other.word))
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl WeylElement {
    pub fn identity(cartan: &AffineCartanData) -> Self {
        WeylElement { word: Vec::new(), rho_image: cartan.rho() }
    }

    pub fn simple(cartan: &AffineCartanData, i: usize) -> Self {
        Self::from_word(cartan, &[i])
    }

    /// The element `s_{i_1} ... s_{i_k}` for a word of node indices (not
    /// necessarily reduced).
    pub fn from_word(cartan: &AffineCartanData, word: &[usize]) -> Self {
        let mut x = cartan.rho();
        for &i in word.iter().rev() {
            x = x.reflect(cartan, i);
        }
        Self::from_rho_image(cartan, x)
    }

    /// Recovers the element from `w(rho)`, which must lie in the orbit of rho.
    pub fn from_rho_image(cartan: &AffineCartanData, image: Weight) -> Self {
        let rho = cartan.rho();
        let mut word = Vec::new();
        let mut x = image.clone();
        while x != rho {
            let i = cartan
                .nodes()
                .find(|&i| cartan.pairing(i, &x) < 0)
                .expect("weight is not in the Weyl orbit of rho");
            word.push(i);
            x = x.reflect(cartan, i);
        }
        WeylElement { word, rho_image: image }
    }

    /// Parses a comma-separated list of node labels such as `1,0` (meaning
    /// `s_1 s_0`). `e` or the empty string is the identity.
    pub fn parse(text: &str, cartan: &AffineCartanData) -> Result<Self, ParseError> {
        let t = text.trim();
        if t.is_empty() || t == "e" {
            return Ok(Self::identity(cartan));
        }
        let mut word = Vec::new();
        let mut offset = 0;
        for part in text.split(',') {
            let p = part.trim();
            let label: u32 =
                p.parse().map_err(|_| ParseError::new(offset, format!("bad node label `{p}`")))?;
            let i = cartan
                .index_of(label)
                .ok_or_else(|| ParseError::new(offset, format!("unknown node {label}")))?;
            word.push(i);
            offset += part.len() + 1;
        }
        Ok(Self::from_word(cartan, &word))
    }

    pub fn from_labels(cartan: &AffineCartanData, labels: &[u32]) -> Result<Self, ParseError> {
        let word = labels
            .iter()
            .enumerate()
            .map(|(k, &l)| cartan.index_of(l).ok_or_else(|| ParseError::new(k, format!("unknown node {l}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_word(cartan, &word))
    }

    /// Canonical reduced word as node indices.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn labels(&self, cartan: &AffineCartanData) -> Vec<u32> {
        self.word.iter().map(|&i| cartan.label(i)).collect()
    }

    /// `1,0` style; `e` for the identity.
    pub fn to_text(&self, cartan: &AffineCartanData) -> String {
        if self.word.is_empty() {
            return "e".into();
        }
        self.labels(cartan).iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn rho_image(&self) -> &Weight {
        &self.rho_image
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `w(x)`, applying the rightmost letter first.
    pub fn act(&self, cartan: &AffineCartanData, x: &Weight) -> Weight {
        let mut y = x.clone();
        for &i in self.word.iter().rev() {
            y = y.reflect(cartan, i);
        }
        y
    }

    /// `l(w s_i) < l(w)`.
    pub fn has_right_descent(&self, cartan: &AffineCartanData, i: usize) -> bool {
        let r = self.act(cartan, &cartan.simple_root(i));
        r.m().iter().all(|&x| x <= 0)
    }

    /// `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, cartan: &AffineCartanData, i: usize) -> bool {
        cartan.pairing(i, &self.rho_image) < 0
    }

    pub fn right_descents(&self, cartan: &AffineCartanData) -> Vec<usize> {
        cartan.nodes().filter(|&i| self.has_right_descent(cartan, i)).collect()
    }

    pub fn left_descents(&self, cartan: &AffineCartanData) -> Vec<usize> {
        cartan.nodes().filter(|&i| self.has_left_descent(cartan, i)).collect()
    }

    /// `w s_i`.
    pub fn mul_simple_right(&self, cartan: &AffineCartanData, i: usize) -> Self {
        let image = &self.rho_image - &self.act(cartan, &cartan.simple_root(i));
        Self::from_rho_image(cartan, image)
    }

    /// `s_i w`.
    pub fn mul_simple_left(&self, cartan: &AffineCartanData, i: usize) -> Self {
        Self::from_rho_image(cartan, self.rho_image.reflect(cartan, i))
    }

    pub fn mul(&self, cartan: &AffineCartanData, other: &Self) -> Self {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Self::from_word(cartan, &word)
    }

    pub fn inverse(&self, cartan: &AffineCartanData) -> Self {
        let word: Vec<usize> = self.word.iter().rev().copied().collect();
        Self::from_word(cartan, &word)
    }

    /// `beta_t = s_{i_1} ... s_{i_{t-1}}(alpha_{i_t})` along the canonical word.
    pub fn inversion_set(&self, cartan: &AffineCartanData) -> Vec<Weight> {
        Self::inversion_set_of_word(cartan, &self.word)
    }

    /// Same as [`inversion_set`](Self::inversion_set) along an arbitrary
    /// reduced word.
    pub fn inversion_set_of_word(cartan: &AffineCartanData, word: &[usize]) -> Vec<Weight> {
        (0..word.len())
            .map(|t| {
                let mut b = cartan.simple_root(word[t]);
                for &i in word[..t].iter().rev() {
                    b = b.reflect(cartan, i);
                }
                b
            })
            .collect()
    }

    /// Bruhat order `self <= w` by descent recursion.
    pub fn bruhat_leq(&self, cartan: &AffineCartanData, w: &Self) -> bool {
        let mut x = self.clone();
        let mut w = w.clone();
        loop {
            if x.length() > w.length() {
                return false;
            }
            if w.is_identity() {
                return x.is_identity();
            }
            let i = *w.word.last().unwrap();
            if x.has_right_descent(cartan, i) {
                x = x.mul_simple_right(cartan, i);
            }
            w = w.mul_simple_right(cartan, i);
        }
    }

    /// All elements of length at most `max_len`, grouped by length, each
    /// layer sorted by canonical word.
    pub fn enumerate_up_to(cartan: &AffineCartanData, max_len: usize) -> Vec<Self> {
        Self::layers(cartan, max_len).into_iter().flatten().collect()
    }

    /// Elements of length exactly `k`, for `k = 0..=max_len`.
    pub fn layers(cartan: &AffineCartanData, max_len: usize) -> Vec<Vec<Self>> {
        let mut out = vec![vec![Self::identity(cartan)]];
        for _ in 0..max_len {
            let prev = out.last().unwrap();
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for w in prev {
                for i in cartan.nodes() {
                    if !w.has_right_descent(cartan, i) {
                        let v = w.mul_simple_right(cartan, i);
                        if seen.insert(v.rho_image.clone()) {
                            next.push(v);
                        }
                    }
                }
            }
            next.sort();
            out.push(next);
        }
        out
    }

    /// Elements of the finite parabolic subgroup generated by `s_i, s_j`;
    /// `None` if that subgroup is infinite.
    pub fn dihedral_subgroup(cartan: &AffineCartanData, i: usize, j: usize) -> Option<Vec<Self>> {
        cartan.dihedral_order(i, j)?;
        let mut seen = HashSet::new();
        let mut out = vec![Self::identity(cartan)];
        seen.insert(cartan.rho());
        let mut k = 0;
        while k < out.len() {
            let w = out[k].clone();
            for g in [i, j] {
                let v = w.mul_simple_right(cartan, g);
                if seen.insert(v.rho_image.clone()) {
                    out.push(v);
                }
            }
            k += 1;
        }
        out.sort();
        Some(out)
    }
}
