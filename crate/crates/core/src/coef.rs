//! Exact coefficients: integer polynomials in `q` and the rational function
//! field `Q(q)` in which all affine Grothendieck coefficients live.
//!
//! `q` stands for `e^delta`. A [`CoefQ`] is kept in a canonical reduced form,
//! so structural equality coincides with equality of rational functions.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer polynomial in `q`, little-endian, without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        ZPoly::from_coeffs(vec![c.into()])
    }

    /// `c * q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c.into();
        ZPoly::from_coeffs(v)
    }

    pub fn from_coeffs(mut v: Vec<BigInt>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        ZPoly(v)
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        ZPoly::from_coeffs(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.0.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    /// Exponent of the lowest nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// Divides by `q^k`; the low coefficients must be zero.
    fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.0.iter().take(k).all(|c| c.is_zero()));
        ZPoly(self.0[k.min(self.0.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.0.iter().cloned());
        ZPoly(v)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly(self.0.iter().map(|x| x * c).collect())
    }

    /// Exact division of every coefficient by `c`.
    fn div_scalar(&self, c: &BigInt) -> Self {
        ZPoly(
            self.0
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        )
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = self.content();
        if self.lead().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Coefficient reversal: `q^deg * p(1/q)` (low zeros of `p` are dropped).
    pub fn reversed(&self) -> Self {
        let mut v = self.0.clone();
        v.reverse();
        ZPoly::from_coeffs(v)
    }

    pub fn eval_i64(&self, q: i64) -> BigInt {
        let q = BigInt::from(q);
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * &q + c)
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn pseudo_rem(&self, b: &ZPoly) -> ZPoly {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lead().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead().unwrap().clone();
            let shift = dr - db;
            // r = lb * r - lr * q^shift * b
            let mut v: Vec<BigInt> = r.0.iter().map(|c| c * &lb).collect();
            for (k, c) in b.0.iter().enumerate() {
                v[k + shift] -= c * &lr;
            }
            r = ZPoly::from_coeffs(v);
        }
        r
    }

    /// Exact quotient `self / b` in `Z[q]`; `None` if `b` does not divide.
    pub fn div_exact(&self, b: &ZPoly) -> Option<ZPoly> {
        let db = b.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let da = self.degree().unwrap();
        if da < db {
            return None;
        }
        let lb = b.lead().unwrap();
        let mut r = self.0.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, c) in b.0.iter().enumerate() {
                r[k + j] -= c * &qc;
            }
            quot[k] = qc;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(ZPoly::from_coeffs(quot))
        } else {
            None
        }
    }

    /// Greatest common divisor in `Z[q]`, normalized to a positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return ZPoly::constant(self.content().gcd(&other.content()));
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&c)
    }

    fn normalize_sign(&self) -> ZPoly {
        if self.lead().is_some_and(|c| c.is_negative()) {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// The polynomial `1 - q^k`.
    pub fn one_minus_q_pow(k: usize) -> ZPoly {
        let mut v = vec![BigInt::zero(); k + 1];
        v[0] += 1;
        v[k] -= 1;
        ZPoly::from_coeffs(v)
    }

    /// The `d`-th cyclotomic polynomial.
    pub fn cyclotomic(d: usize) -> ZPoly {
        static CACHE: OnceLock<Mutex<HashMap<usize, ZPoly>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(p) = cache.lock().unwrap().get(&d) {
            return p.clone();
        }
        // q^d - 1 divided by all Phi_e for proper divisors e of d
        let mut p = -ZPoly::one_minus_q_pow(d);
        for e in 1..d {
            if d % e == 0 {
                p = p.div_exact(&ZPoly::cyclotomic(e)).expect("cyclotomic divisibility");
            }
        }
        cache.lock().unwrap().insert(d, p.clone());
        p
    }

    /// Writes the polynomial in ascending powers, e.g. `1 - 2*q + q^3`,
    /// after multiplying by `q^shift` (which may be negative).
    pub fn fmt_laurent(&self, shift: i64) -> String {
        let mut out = String::new();
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = k as i64 + shift;
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if var.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{mag}*{var}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Neg for ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.0.len().max(rhs.0.len());
        let v = (0..n)
            .map(|k| match (self.0.get(k), rhs.0.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        ZPoly::from_coeffs(v)
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        self + &(-rhs.clone())
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(v)
    }
}

/// Element of `Q(q)` in canonical form `q^shift * num / den` where
/// `num, den` are integer polynomials with nonzero constant terms, coprime in
/// `Z[q]`, and `den` has a positive leading coefficient. Zero is
/// `0 * q^0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoefQ {
    num: ZPoly,
    shift: i64,
    den: ZPoly,
}

impl CoefQ {
    pub fn zero() -> Self {
        CoefQ { num: ZPoly::zero(), shift: 0, den: ZPoly::one() }
    }

    pub fn one() -> Self {
        CoefQ::from_int(1)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        CoefQ::from_laurent(ZPoly::constant(c), 0)
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        CoefQ { num: ZPoly::one(), shift: k, den: ZPoly::one() }
    }

    /// `q^shift * p`.
    pub fn from_laurent(p: ZPoly, shift: i64) -> Self {
        CoefQ::new(p, shift, ZPoly::one())
    }

    pub fn from_ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        CoefQ::new(ZPoly::constant(n), 0, ZPoly::constant(d))
    }

    /// Builds `q^shift * num / den` and reduces it to canonical form.
    pub fn new(num: ZPoly, shift: i64, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return CoefQ::zero();
        }
        let nl = num.low_degree().unwrap();
        let dl = den.low_degree().unwrap();
        let mut num = num.shift_down(nl);
        let mut den = den.shift_down(dl);
        let shift = shift + nl as i64 - dl as i64;
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
            if den.lead().unwrap().is_negative() {
                num = -num;
                den = -den;
            }
        }
        CoefQ { num, shift, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// Numerator polynomial (the `q^shift` factor is reported separately).
    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Whether this is `c * q^k` for an integer `c`.
    pub fn as_monomial(&self) -> Option<(BigInt, i64)> {
        if self.den.is_one() && self.num.0.len() == 1 {
            Some((self.num.0[0].clone(), self.shift))
        } else {
            None
        }
    }

    /// Laurent coefficients `(exponent, coefficient)` of the numerator
    /// `q^shift * num`.
    pub fn num_terms(&self) -> Vec<(i64, BigInt)> {
        self.num
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 + self.shift, c.clone()))
            .collect()
    }

    pub fn den_terms(&self) -> Vec<(i64, BigInt)> {
        self.den
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, c.clone()))
            .collect()
    }

    /// Rebuilds a coefficient from Laurent term lists.
    pub fn from_terms(num: &[(i64, BigInt)], den: &[(i64, BigInt)]) -> Self {
        let (np, ns) = laurent_from_terms(num);
        let (dp, ds) = laurent_from_terms(den);
        if dp.is_zero() {
            panic!("zero denominator");
        }
        CoefQ::new(np, ns - ds, dp)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(CoefQ::new(self.den.clone(), -self.shift, self.num.clone()))
    }

    pub fn div(&self, rhs: &CoefQ) -> Option<Self> {
        Some(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = CoefQ::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// Multiplication by `q^k`.
    pub fn mul_q_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return CoefQ::zero();
        }
        CoefQ { num: self.num.clone(), shift: self.shift + k, den: self.den.clone() }
    }

    /// The substitution `q -> 1/q`.
    pub fn invert_q(&self) -> Self {
        if self.is_zero() {
            return CoefQ::zero();
        }
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        // num(1/q) = q^-dn * rev(num), den(1/q) = q^-dd * rev(den)
        CoefQ::new(self.num.reversed(), -self.shift - dn + dd, self.den.reversed())
    }

    /// Whether the denominator divides a product of factors `q^k - 1`, i.e.
    /// the coefficient lies in the ring generated by `q^{+-1}` and
    /// `(q^k - 1)^{-1}`.
    pub fn in_coefficient_ring(&self) -> bool {
        cyclotomic_factorization(&self.den).is_some_and(|(unit, _)| unit.abs().is_one())
    }

    /// Power series of this coefficient in `u = 1/q`:
    /// returns `(top, c)` with `self = q^top * sum_k c[k] u^k`, `c` holding
    /// the first `terms` coefficients. `None` if the expansion leaves the
    /// integers (leading coefficient of the denominator is not a unit).
    pub fn expand_in_inverse_q(&self, terms: usize) -> Option<(i64, Vec<BigInt>)> {
        if self.is_zero() {
            return Some((0, vec![BigInt::zero(); terms]));
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        let top = self.shift + dn as i64 - dd as i64;
        let n_rev: Vec<BigInt> = self.num.0.iter().rev().cloned().collect();
        let d_rev: Vec<BigInt> = self.den.0.iter().rev().cloned().collect();
        let d0 = &d_rev[0];
        if !d0.abs().is_one() {
            return None;
        }
        let mut out = Vec::with_capacity(terms);
        for k in 0..terms {
            let mut s = n_rev.get(k).cloned().unwrap_or_default();
            for j in 1..=k.min(d_rev.len() - 1) {
                s -= &d_rev[j] * &out[k - j];
            }
            out.push(s * d0);
        }
        Some((top, out))
    }

    /// Total size measure used for pivot selection.
    pub fn weight(&self) -> usize {
        self.num.0.len() + self.den.0.len()
    }
}

fn laurent_from_terms(terms: &[(i64, BigInt)]) -> (ZPoly, i64) {
    if terms.is_empty() {
        return (ZPoly::zero(), 0);
    }
    let lo = terms.iter().map(|t| t.0).min().unwrap();
    let hi = terms.iter().map(|t| t.0).max().unwrap();
    let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in terms {
        v[(e - lo) as usize] += c;
    }
    (ZPoly::from_coeffs(v), lo)
}

/// Factors `p` as `unit * prod_d Phi_d^{e_d}` over cyclotomic polynomials.
/// Returns the leftover constant and the list `(d, e_d)`, or `None` if a
/// non-cyclotomic factor remains.
pub fn cyclotomic_factorization(p: &ZPoly) -> Option<(BigInt, Vec<(usize, usize)>)> {
    let mut rest = p.clone();
    let mut factors = Vec::new();
    let mut d = 1;
    while rest.degree()? > 0 {
        // phi(d) >= sqrt(d/2), so larger d cannot divide
        let deg = rest.degree().unwrap();
        if d > 2 * deg * deg + 2 {
            return None;
        }
        if euler_phi(d) > deg {
            d += 1;
            continue;
        }
        let phi = ZPoly::cyclotomic(d);
        let mut e = 0;
        while let Some(qt) = rest.div_exact(&phi) {
            rest = qt;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
        d += 1;
    }
    Some((rest.coeff(0), factors))
}

fn euler_phi(n: usize) -> usize {
    let (mut n, mut r, mut p) = (n, n, 2);
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// Smallest (greedy) product `prod (1 - q^k)` divisible by `p`, as the list
/// of `k` in decreasing order. `None` if `p` is not a unit times a product of
/// cyclotomic polynomials.
pub fn one_minus_q_cover(p: &ZPoly) -> Option<Vec<usize>> {
    let (unit, factors) = cyclotomic_factorization(p)?;
    if !unit.abs().is_one() {
        return None;
    }
    let mut need: std::collections::BTreeMap<usize, usize> = factors.into_iter().collect();
    let mut ks = Vec::new();
    while let Some((&d, _)) = need.iter().next_back() {
        ks.push(d);
        for e in 1..=d {
            if d % e == 0 {
                if let Some(m) = need.get_mut(&e) {
                    *m -= 1;
                    if *m == 0 {
                        need.remove(&e);
                    }
                }
            }
        }
    }
    Some(ks)
}

impl Default for CoefQ {
    fn default() -> Self {
        CoefQ::zero()
    }
}

impl From<i64> for CoefQ {
    fn from(c: i64) -> Self {
        CoefQ::from_int(c)
    }
}

impl Neg for CoefQ {
    type Output = CoefQ;
    fn neg(self) -> CoefQ {
        CoefQ { num: -self.num, shift: self.shift, den: self.den }
    }
}

impl Neg for &CoefQ {
    type Output = CoefQ;
    fn neg(self) -> CoefQ {
        -self.clone()
    }
}

impl Add for &CoefQ {
    type Output = CoefQ;
    fn add(self, rhs: &CoefQ) -> CoefQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let s = self.shift.min(rhs.shift);
        let a = self.num.shift_up((self.shift - s) as usize);
        let c = rhs.num.shift_up((rhs.shift - s) as usize);
        if self.den == rhs.den {
            return CoefQ::new(&a + &c, s, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let bd = self.den.div_exact(&g).unwrap();
        let dd = rhs.den.div_exact(&g).unwrap();
        let num = &(&a * &dd) + &(&c * &bd);
        CoefQ::new(num, s, &bd * &rhs.den)
    }
}

impl Sub for &CoefQ {
    type Output = CoefQ;
    fn sub(self, rhs: &CoefQ) -> CoefQ {
        self + &(-rhs)
    }
}

impl Mul for &CoefQ {
    type Output = CoefQ;
    fn mul(self, rhs: &CoefQ) -> CoefQ {
        if self.is_zero() || rhs.is_zero() {
            return CoefQ::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return CoefQ { num: &self.num * &rhs.num, shift: self.shift + rhs.shift, den: ZPoly::one() };
        }
        CoefQ::new(&self.num * &rhs.num, self.shift + rhs.shift, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CoefQ {
            type Output = CoefQ;
            fn $m(self, rhs: CoefQ) -> CoefQ {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CoefQ> for CoefQ {
            type Output = CoefQ;
            fn $m(self, rhs: &CoefQ) -> CoefQ {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CoefQ> for CoefQ {
    fn add_assign(&mut self, rhs: &CoefQ) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CoefQ> for CoefQ {
    fn sub_assign(&mut self, rhs: &CoefQ) {
        *self = &*self - rhs;
    }
}

impl PartialOrd for CoefQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but fixed total order (used only for deterministic output).
impl Ord for CoefQ {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.shift, &self.num.0, &self.den.0).cmp(&(other.shift, &other.num.0, &other.den.0))
    }
}

impl fmt::Display for CoefQ {
    /// `num` or `(num)*(den)^-1`, with the denominator written as a product
    /// of `(1-q^k)` factors when possible.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num.fmt_laurent(self.shift));
        }
        if let Some(ks) = one_minus_q_cover(&self.den) {
            let cover = ks.iter().fold(ZPoly::one(), |acc, &k| &acc * &ZPoly::one_minus_q_pow(k));
            let scaled = cover.div_exact(&self.den).expect("cover divides denominator");
            let num = &self.num * &scaled;
            return write!(f, "({})*{}^-1", num.fmt_laurent(self.shift), fmt_cover(&ks));
        }
        write!(f, "({})*({})^-1", self.num.fmt_laurent(self.shift), self.den.fmt_laurent(0))
    }
}

impl fmt::Debug for CoefQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `(1-q)`, `((1-q)*(1-q^2))` etc. for the given factors (any order).
pub fn fmt_cover(ks: &[usize]) -> String {
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    let parts: Vec<String> = ks
        .iter()
        .map(|&k| if k == 1 { "(1-q)".to_string() } else { format!("(1-q^{k})") })
        .collect();
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join("*"))
    }
}
