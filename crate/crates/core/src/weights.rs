//! The weight lattice `P = L + Q`, stored as coefficient vectors over the
//! fundamental weights and the simple roots.

use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::cartan::AffineCartanData;
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    l: Vec<i64>,
    m: Vec<i64>,
}

/// A weight with `m[node0] = 0`, the canonical representative of its class
/// modulo `Z delta`. Ordered by `(level, l, m)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalizedWeight {
    level: i64,
    w: Weight,
}

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight { l: vec![0; n], m: vec![0; n] }
    }

    pub fn from_parts(l: Vec<i64>, m: Vec<i64>) -> Self {
        assert_eq!(l.len(), m.len(), "weight parts must have equal length");
        Weight { l, m }
    }

    /// A pure root-lattice element.
    pub fn from_root(m: Vec<i64>) -> Self {
        Weight { l: vec![0; m.len()], m }
    }

    pub fn l(&self) -> &[i64] {
        &self.l
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn into_parts(self) -> (Vec<i64>, Vec<i64>) {
        (self.l, self.m)
    }

    pub fn rank(&self) -> usize {
        self.l.len()
    }

    pub fn is_zero(&self) -> bool {
        self.l.iter().all(|&x| x == 0) && self.m.iter().all(|&x| x == 0)
    }

    /// Zero `L`-part.
    pub fn is_root_lattice(&self) -> bool {
        self.l.iter().all(|&x| x == 0)
    }

    /// The `L`-part alone.
    pub fn l_part(&self) -> Weight {
        Weight { l: self.l.clone(), m: vec![0; self.m.len()] }
    }

    /// The `Q`-part alone.
    pub fn q_part(&self) -> Weight {
        Weight { l: vec![0; self.l.len()], m: self.m.clone() }
    }

    /// Height `sum m_i` of the root-lattice part.
    pub fn height(&self) -> i64 {
        self.m.iter().sum()
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight { l: self.l.iter().map(|x| x * k).collect(), m: self.m.iter().map(|x| x * k).collect() }
    }

    /// `self + k * alpha_i`.
    pub fn add_root(&self, i: usize, k: i64) -> Weight {
        let mut w = self.clone();
        w.m[i] += k;
        w
    }

    /// `s_i(self) = self - <h_i, self> alpha_i`.
    pub fn reflect(&self, cartan: &AffineCartanData, i: usize) -> Weight {
        let p = cartan.pairing(i, self);
        self.add_root(i, -p)
    }

    /// `eta(b) = b - sum <h_i, b> Lambda_i` for a root-lattice element `b`.
    pub fn eta(&self, cartan: &AffineCartanData) -> Option<Weight> {
        if !self.is_root_lattice() {
            return None;
        }
        let l = cartan.nodes().map(|i| -cartan.pairing(i, self)).collect();
        Some(Weight { l, m: self.m.clone() })
    }

    /// Splits `self = n delta + nw` with `nw.m[node0] = 0`.
    pub fn normalize(&self, cartan: &AffineCartanData) -> (i64, NormalizedWeight) {
        let n = self.m[cartan.node0()];
        let mut w = self.clone();
        if n != 0 {
            for (x, a) in w.m.iter_mut().zip(cartan.marks()) {
                *x -= n * a;
            }
        }
        (n, NormalizedWeight { level: cartan.level(&w), w })
    }

    /// Whether all pairings `<h_i, self>` are non-negative.
    pub fn is_dominant(&self, cartan: &AffineCartanData) -> bool {
        cartan.nodes().all(|i| cartan.pairing(i, self) >= 0)
    }

    /// Text form such as `2*L0 - L1 + a1 - 3*a2`.
    pub fn to_text(&self, cartan: &AffineCartanData) -> String {
        let mut out = String::new();
        let parts = self
            .l
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, 'L', cartan.label(i)))
            .chain(self.m.iter().enumerate().map(|(i, &c)| (c, 'a', cartan.label(i))));
        for (c, sym, label) in parts {
            if c == 0 {
                continue;
            }
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            if c.abs() != 1 {
                let _ = write!(out, "{}*", c.abs());
            }
            let _ = write!(out, "{sym}{label}");
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parses the text form. `0` and the empty sum denote the zero weight.
    pub fn parse(text: &str, cartan: &AffineCartanData) -> Result<Weight, ParseError> {
        parse_weight(text, cartan, 0)
    }
}

/// Parses a weight, reporting error positions offset by `base`.
pub(crate) fn parse_weight(text: &str, cartan: &AffineCartanData, base: usize) -> Result<Weight, ParseError> {
    let n = cartan.rank();
    let mut w = Weight::zero(n);
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let read_int = |pos: &mut usize| -> Option<i64> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        text[start..*pos].parse().ok()
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(ParseError::new(base, "empty weight"));
    }
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        let mut sign = 1;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            } else if first {
                return Err(ParseError::new(base + pos, "unexpected `+`"));
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(ParseError::new(base + pos, "expected `+` or `-`"));
        }
        first = false;
        let mut coef = 1;
        let mut had_coef = false;
        if pos < bytes.len() && bytes[pos].is_ascii_digit() {
            coef = read_int(&mut pos).ok_or_else(|| ParseError::new(base + pos, "integer too large"))?;
            had_coef = true;
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                skip_ws(&mut pos);
            }
        }
        let sym = bytes.get(pos).copied();
        match sym {
            Some(b'L') | Some(b'a') => {
                let at = pos;
                pos += 1;
                if !(pos < bytes.len() && bytes[pos].is_ascii_digit()) {
                    return Err(ParseError::new(base + pos, "expected node label"));
                }
                let label = read_int(&mut pos).ok_or_else(|| ParseError::new(base + at, "bad node label"))?;
                let idx = u32::try_from(label)
                    .ok()
                    .and_then(|l| cartan.index_of(l))
                    .ok_or_else(|| ParseError::new(base + at, format!("unknown node {label}")))?;
                if sym == Some(b'L') {
                    w.l[idx] += sign * coef;
                } else {
                    w.m[idx] += sign * coef;
                }
            }
            _ if had_coef && coef == 0 => {}
            _ => return Err(ParseError::new(base + pos, "expected `L<i>` or `a<i>`")),
        }
    }
    Ok(w)
}

impl NormalizedWeight {
    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn weight(&self) -> &Weight {
        &self.w
    }

    pub fn into_weight(self) -> Weight {
        self.w
    }

    /// Wraps a weight already known to satisfy `m[node0] = 0`.
    pub fn from_normal(cartan: &AffineCartanData, w: Weight) -> Self {
        debug_assert_eq!(w.m[cartan.node0()], 0);
        NormalizedWeight { level: cartan.level(&w), w }
    }

    pub fn zero(n: usize) -> Self {
        NormalizedWeight { level: 0, w: Weight::zero(n) }
    }

    /// Sum of two normalized weights is again normalized.
    pub fn add(&self, other: &NormalizedWeight) -> NormalizedWeight {
        NormalizedWeight { level: self.level + other.level, w: &self.w + &other.w }
    }

    pub fn neg(&self) -> NormalizedWeight {
        NormalizedWeight { level: -self.level, w: -&self.w }
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight {
            l: self.l.iter().zip(&o.l).map(|(a, b)| a + b).collect(),
            m: self.m.iter().zip(&o.m).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight {
            l: self.l.iter().zip(&o.l).map(|(a, b)| a - b).collect(),
            m: self.m.iter().zip(&o.m).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}
