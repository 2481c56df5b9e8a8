//! Text and JSON forms of group-ring elements.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' power]
//! power  := int | '-' int | '{' ['-'] int '}' | '(' ['-'] int ')'
//! atom   := int ['/' int] | 'q' | 'e[' weight ']' | 'E[' weight ']'
//!         | '(' expr ')' | '{' expr '}'
//! ```
//!
//! `E[w]` is the sum over the classical Weyl orbit of `w`. Negative powers
//! are allowed only for single-term elements.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cartan::AffineCartanData;
use crate::coef::{fmt_cover, one_minus_q_cover, CoefQ, ZPoly};
use crate::error::ParseError;
use crate::kring::{classical_antidominant, classical_orbit, KElement};
use crate::weights::{parse_weight, NormalizedWeight, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrintMode {
    Terms,
    Orbit,
    Json,
}

impl std::str::FromStr for PrintMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "terms" => Ok(PrintMode::Terms),
            "orbit" => Ok(PrintMode::Orbit),
            "json" => Ok(PrintMode::Json),
            _ => Err(format!("unknown format `{s}` (expected terms, orbit or json)")),
        }
    }
}

pub fn parse_expression(text: &str, cartan: &AffineCartanData) -> Result<KElement, ParseError> {
    let mut p = Parser { s: text.as_bytes(), text, pos: 0, cartan };
    let v = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(ParseError::new(p.pos, "unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    text: &'a str,
    pos: usize,
    cartan: &'a AffineCartanData,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos, format!("expected `{}`", b as char)))
        }
    }

    fn expr(&mut self) -> Result<KElement, ParseError> {
        let neg = self.eat(b'-');
        let first = self.term()?;
        let mut acc = if neg { -&first } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&mut self) -> bool {
        matches!(self.peek(), Some(b'0'..=b'9' | b'q' | b'e' | b'E' | b'(' | b'{'))
    }

    fn term(&mut self) -> Result<KElement, ParseError> {
        let mut acc = self.factor()?;
        loop {
            // explicit or implicit multiplication
            if !self.eat(b'*') && !self.starts_atom() {
                return Ok(acc);
            }
            acc = &acc * &self.factor()?;
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected integer"));
        }
        Ok(self.text[start..self.pos].parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i64, ParseError> {
        let at = self.pos;
        self.int()?.to_i64().ok_or_else(|| ParseError::new(at, "exponent too large"))
    }

    fn power(&mut self) -> Result<i64, ParseError> {
        let close = if self.eat(b'{') {
            Some(b'}')
        } else if self.eat(b'(') {
            Some(b')')
        } else {
            None
        };
        let neg = self.eat(b'-');
        let k = self.small_int()?;
        if let Some(c) = close {
            self.expect(c)?;
        }
        Ok(if neg { -k } else { k })
    }

    fn factor(&mut self) -> Result<KElement, ParseError> {
        let at = self.pos;
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let k = self.power()?;
        if k >= 0 {
            let mut acc = KElement::one(self.cartan);
            for _ in 0..k {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        if base.len() != 1 {
            return Err(ParseError::new(at, "negative power of a sum"));
        }
        let (key, c) = base.iter().next().unwrap();
        let inv = c.pow(k).unwrap();
        let w = key.weight().scale(k);
        Ok(KElement::monomial(self.cartan, inv, &w))
    }

    fn weight_arg(&mut self) -> Result<Weight, ParseError> {
        self.expect(b'[')?;
        let start = self.pos;
        let end = self.s[start..]
            .iter()
            .position(|&b| b == b']')
            .map(|k| start + k)
            .ok_or_else(|| ParseError::new(start, "missing `]`"))?;
        let w = parse_weight(&self.text[start..end], self.cartan, start)?;
        self.pos = end + 1;
        Ok(w)
    }

    fn atom(&mut self) -> Result<KElement, ParseError> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let n = self.int()?;
                let c = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.int()?;
                    if d.is_zero() {
                        return Err(ParseError::new(at, "zero denominator"));
                    }
                    CoefQ::new(ZPoly::constant(n), 0, ZPoly::constant(d))
                } else {
                    CoefQ::from_int(n)
                };
                Ok(KElement::constant(self.cartan, c))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(KElement::constant(self.cartan, CoefQ::q_pow(1)))
            }
            Some(b'e') => {
                self.pos += 1;
                let w = self.weight_arg()?;
                Ok(KElement::exp(self.cartan, &w))
            }
            Some(b'E') => {
                self.pos += 1;
                let w = self.weight_arg()?;
                Ok(KElement::orbit_sum(self.cartan, &w))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'{') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b'}')?;
                Ok(v)
            }
            _ => Err(ParseError::new(self.pos, "expected a number, q, e[..], E[..] or a parenthesis")),
        }
    }
}

pub fn print_element(cartan: &AffineCartanData, f: &KElement, mode: PrintMode) -> String {
    match mode {
        PrintMode::Terms => print_terms(cartan, f),
        PrintMode::Orbit => print_orbits(cartan, f),
        PrintMode::Json => serde_json::to_string(&records_from_element(cartan, f)).expect("serializable"),
    }
}

/// A signed summand ready for joining with ` + ` / ` - `.
struct Piece {
    neg: bool,
    body: String,
}

fn join(pieces: &[Piece]) -> String {
    let mut out = String::new();
    for (k, p) in pieces.iter().enumerate() {
        match (k, p.neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&p.body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `coef * symbol` with the sign pulled out when the coefficient is a
/// single monomial.
fn piece(coef: &CoefQ, symbol: Option<String>) -> Piece {
    let (neg, c) = match coef.as_monomial() {
        Some((a, _)) if a.is_negative() => (true, -coef),
        _ => (false, coef.clone()),
    };
    let text = c.to_string();
    let simple = c.as_monomial().is_some();
    let body = match symbol {
        None => text,
        Some(s) if c.is_one() => s,
        Some(s) if simple => format!("{text}*{s}"),
        Some(s) if c.is_laurent() => format!("({text})*{s}"),
        Some(s) => format!("{text} * {s}"),
    };
    Piece { neg, body }
}

fn exp_symbol(cartan: &AffineCartanData, key: &NormalizedWeight) -> Option<String> {
    if key.weight().is_zero() {
        None
    } else {
        Some(format!("e[{}]", key.weight().to_text(cartan)))
    }
}

/// Printing order: highest level first, then by `(l, m)`.
fn display_order(a: &NormalizedWeight, b: &NormalizedWeight) -> std::cmp::Ordering {
    b.level().cmp(&a.level()).then_with(|| a.weight().cmp(b.weight()))
}

fn print_terms(cartan: &AffineCartanData, f: &KElement) -> String {
    let mut terms: Vec<_> = f.iter().collect();
    terms.sort_by(|a, b| display_order(a.0, b.0));
    let pieces: Vec<Piece> = terms.into_iter().map(|(k, c)| piece(c, exp_symbol(cartan, k))).collect();
    join(&pieces)
}

fn print_orbits(cartan: &AffineCartanData, f: &KElement) -> String {
    // group keys into full classical orbits with a common coefficient
    let mut groups: Vec<(NormalizedWeight, CoefQ, Option<String>)> = Vec::new();
    let mut used: BTreeMap<NormalizedWeight, ()> = BTreeMap::new();
    for (k, c) in f.iter() {
        if used.contains_key(k) {
            continue;
        }
        let rep = classical_antidominant(cartan, k.weight());
        let orbit: Vec<NormalizedWeight> = classical_orbit(cartan, &rep)
            .into_iter()
            .map(|w| NormalizedWeight::from_normal(cartan, w))
            .collect();
        let full = orbit.len() > 1 && orbit.iter().all(|o| !used.contains_key(o) && &f.coeff(o) == c);
        if full {
            for o in &orbit {
                used.insert(o.clone(), ());
            }
            let rep_key = NormalizedWeight::from_normal(cartan, rep.clone());
            groups.push((rep_key, c.clone(), Some(format!("E[{}]", rep.to_text(cartan)))));
        } else {
            used.insert(k.clone(), ());
            let sym = if orbit.len() == 1 && !k.weight().is_zero() {
                Some(format!("E[{}]", k.weight().to_text(cartan)))
            } else {
                exp_symbol(cartan, k)
            };
            groups.push((k.clone(), c.clone(), sym));
        }
    }
    groups.sort_by(|a, b| display_order(&a.0, &b.0));

    let (outside, inside): (Vec<_>, Vec<_>) = groups.into_iter().partition(|g| g.1.is_laurent());
    let mut pieces: Vec<Piece> = outside.iter().map(|(_, c, s)| piece(c, s.clone())).collect();
    if !inside.is_empty() {
        let lcd = inside.iter().fold(ZPoly::one(), |acc, (_, c, _)| {
            let g = acc.gcd(c.den());
            &acc.div_exact(&g).unwrap() * c.den()
        });
        match one_minus_q_cover(&lcd) {
            Some(ks) => {
                let cover = ks.iter().fold(ZPoly::one(), |acc, &k| &acc * &ZPoly::one_minus_q_pow(k));
                let cover_c = CoefQ::from_laurent(cover, 0);
                let inner: Vec<Piece> = inside.iter().map(|(_, c, s)| piece(&(c * &cover_c), s.clone())).collect();
                let mut body = String::new();
                let _ = write!(body, "{}^-1 * {{{}}}", fmt_cover(&ks), join(&inner));
                pieces.push(Piece { neg: false, body });
            }
            None => pieces.extend(inside.iter().map(|(_, c, s)| piece(c, s.clone()))),
        }
    }
    join(&pieces)
}

/// Integer that serializes as a JSON number when it fits in `i64` and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    pub(crate) fn from_big(b: &BigInt) -> Self {
        match b.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(b.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt, String> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("bad integer `{s}`")),
        }
    }
}

/// One term `c e^weight`; the coefficient is `num / den` with both given as
/// `[exponent, coefficient]` lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub weight: Weight,
    pub num_coeffs: Vec<(i64, JsonInt)>,
    pub den_coeffs: Vec<(i64, JsonInt)>,
}

pub fn records_from_element(_cartan: &AffineCartanData, f: &KElement) -> Vec<TermRecord> {
    f.iter()
        .map(|(k, c)| TermRecord {
            weight: k.weight().clone(),
            num_coeffs: c.num_terms().iter().map(|(e, v)| (*e, JsonInt::from_big(v))).collect(),
            den_coeffs: c.den_terms().iter().map(|(e, v)| (*e, JsonInt::from_big(v))).collect(),
        })
        .collect()
}

pub fn element_from_records(cartan: &AffineCartanData, recs: &[TermRecord]) -> Result<KElement, String> {
    let conv = |v: &[(i64, JsonInt)]| -> Result<Vec<(i64, BigInt)>, String> {
        v.iter().map(|(e, c)| Ok((*e, c.to_big()?))).collect()
    };
    let mut out = KElement::zero();
    for r in recs {
        if r.weight.rank() != cartan.rank() || r.weight.m().len() != cartan.rank() {
            return Err("weight has the wrong rank".into());
        }
        let den = conv(&r.den_coeffs)?;
        if den.iter().all(|(_, c)| c.is_zero()) {
            return Err("zero denominator".into());
        }
        let c = CoefQ::from_terms(&conv(&r.num_coeffs)?, &den);
        out = &out + &KElement::monomial(cartan, c, &r.weight);
    }
    Ok(out)
}

/// Parses the JSON form produced by [`PrintMode::Json`].
pub fn element_from_json(cartan: &AffineCartanData, text: &str) -> Result<KElement, String> {
    let recs: Vec<TermRecord> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    element_from_records(cartan, &recs)
}
