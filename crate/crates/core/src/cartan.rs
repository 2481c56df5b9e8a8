//! Affine generalized Cartan matrices and the root-system data derived from
//! them: marks, comarks, symmetrizer, distinguished node, dihedral orders.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CartanError;
use crate::weights::Weight;

/// Order of `s_i s_j`; `None` encodes an infinite dihedral group.
pub type DihedralOrder = Option<u32>;

/// Validated affine Cartan datum. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCartanData {
    name: Option<String>,
    labels: Vec<u32>,
    gcm: Vec<Vec<i64>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    symmetrizer: Vec<Rational64>,
    node0: usize,
    dihedral: Vec<Vec<DihedralOrder>>,
}

/// Serialized form used in cache files and JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub labels: Vec<u32>,
    pub matrix: Vec<Vec<i64>>,
}

impl AffineCartanData {
    /// Validates `matrix` (rows and columns indexed by `labels`, which must
    /// be strictly increasing) and derives all root data.
    pub fn build(matrix: Vec<Vec<i64>>, labels: Vec<u32>) -> Result<Self, CartanError> {
        let n = matrix.len();
        if n < 2 || labels.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(CartanError::BadShape(format!(
                "need a square matrix of size >= 2 with one label per row (got {n} rows, {} labels)",
                labels.len()
            )));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CartanError::BadShape("labels must be strictly increasing".into()));
        }
        for i in 0..n {
            if matrix[i][i] != 2 {
                return Err(CartanError::BadShape(format!("diagonal entry {i} is not 2")));
            }
            for j in 0..n {
                if i != j && matrix[i][j] > 0 {
                    return Err(CartanError::BadShape(format!("off-diagonal entry ({i},{j}) is positive")));
                }
                if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                    return Err(CartanError::BadShape(format!("zero pattern not symmetric at ({i},{j})")));
                }
            }
        }
        let marks = positive_kernel_vector(&matrix).ok_or(CartanError::NotAffine)?;
        let transposed: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| matrix[i][j]).collect()).collect();
        let comarks = positive_kernel_vector(&transposed).ok_or(CartanError::NotAffine)?;
        let symmetrizer: Vec<Rational64> =
            (0..n).map(|i| Rational64::new(comarks[i], marks[i])).collect();
        for i in 0..n {
            for j in 0..n {
                if symmetrizer[i] * matrix[i][j] != symmetrizer[j] * matrix[j][i] {
                    return Err(CartanError::NotSymmetrizable);
                }
            }
        }
        let dihedral = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            return Some(1);
                        }
                        match matrix[i][j] * matrix[j][i] {
                            0 => Some(2),
                            1 => Some(3),
                            2 => Some(4),
                            3 => Some(6),
                            _ => None,
                        }
                    })
                    .collect()
            })
            .collect();
        let mut data = AffineCartanData {
            name: None,
            labels,
            gcm: matrix,
            marks,
            comarks,
            symmetrizer,
            node0: 0,
            dihedral,
        };
        data.node0 = (0..n)
            .find(|&i| data.marks[i] == 1 && data.theta_is_root_multiple(i))
            .ok_or(CartanError::NotAffine)?;
        Ok(data)
    }

    /// `A_n^(1)`, `n >= 1`.
    pub fn affine_a(n: usize) -> Result<Self, CartanError> {
        if n < 1 {
            return Err(CartanError::UnknownType(format!("A{n}~")));
        }
        let size = n + 1;
        let mut m = identity2(size);
        if n == 1 {
            m[0][1] = -2;
            m[1][0] = -2;
        } else {
            for i in 0..size {
                let j = (i + 1) % size;
                m[i][j] = -1;
                m[j][i] = -1;
            }
        }
        Self::named(m, format!("A{n}~"))
    }

    /// `C_n^(1)`, `n >= 2`: nodes `0 - 1 - ... - n` with the double bonds at
    /// both ends pointing inward (`a_{1,0} = a_{n-1,n} = -2`).
    pub fn affine_c(n: usize) -> Result<Self, CartanError> {
        if n < 2 {
            return Err(CartanError::UnknownType(format!("C{n}~")));
        }
        let size = n + 1;
        let mut m = identity2(size);
        for i in 0..n {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
        m[1][0] = -2;
        m[n - 1][n] = -2;
        Self::named(m, format!("C{n}~"))
    }

    /// `D_n^(1)`, `n >= 4`: node 0 and node 1 attach to node 2, nodes
    /// `n-1` and `n` attach to node `n-2`.
    pub fn affine_d(n: usize) -> Result<Self, CartanError> {
        if n < 4 {
            return Err(CartanError::UnknownType(format!("D{n}~")));
        }
        let size = n + 1;
        let mut m = identity2(size);
        let mut bond = |i: usize, j: usize| {
            m[i][j] = -1;
            m[j][i] = -1;
        };
        bond(0, 2);
        for i in 1..n - 2 {
            bond(i, i + 1);
        }
        bond(n - 2, n - 1);
        bond(n - 2, n);
        Self::named(m, format!("D{n}~"))
    }

    fn named(m: Vec<Vec<i64>>, name: String) -> Result<Self, CartanError> {
        let labels = (0..m.len() as u32).collect();
        let mut d = Self::build(m, labels)?;
        debug_assert_eq!(d.node0, 0);
        d.name = Some(name);
        Ok(d)
    }

    /// Parses a type string such as `A1~`, `C2~`, `D4~`, or a JSON matrix
    /// like `[[2,-2],[-2,2]]` (labels `0..n`).
    pub fn from_type_str(s: &str) -> Result<Self, CartanError> {
        let s = s.trim();
        if s.starts_with('[') {
            let m: Vec<Vec<i64>> =
                serde_json::from_str(s).map_err(|e| CartanError::UnknownType(format!("{s}: {e}")))?;
            let labels = (0..m.len() as u32).collect();
            return Self::build(m, labels);
        }
        let body = s.strip_suffix('~').ok_or_else(|| CartanError::UnknownType(s.to_string()))?;
        let mut chars = body.chars();
        let family = chars.next().ok_or_else(|| CartanError::UnknownType(s.to_string()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| CartanError::UnknownType(s.to_string()))?;
        match family.to_ascii_uppercase() {
            'A' => Self::affine_a(rank),
            'C' => Self::affine_c(rank),
            'D' => Self::affine_d(rank),
            _ => Err(CartanError::UnknownType(s.to_string())),
        }
    }

    pub fn from_spec(spec: &CartanSpec) -> Result<Self, CartanError> {
        let mut d = Self::build(spec.matrix.clone(), spec.labels.clone())?;
        d.name = spec.name.clone();
        Ok(d)
    }

    pub fn spec(&self) -> CartanSpec {
        CartanSpec { name: self.name.clone(), labels: self.labels.clone(), matrix: self.gcm.clone() }
    }

    /// Canonical identifying string: the type name for built-in families,
    /// otherwise the flattened matrix.
    pub fn key(&self) -> String {
        if let Some(n) = &self.name {
            return n.clone();
        }
        let rows: Vec<String> = self
            .gcm
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        format!("gcm[{}]labels[{}]", rows.join(";"), labels.join(","))
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Number of nodes `|I|`.
    pub fn rank(&self) -> usize {
        self.gcm.len()
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.rank()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> u32 {
        self.labels[i]
    }

    pub fn index_of(&self, label: u32) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// `a_ij = <h_i, alpha_j>`.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.gcm[i][j]
    }

    pub fn gcm(&self) -> &[Vec<i64>] {
        &self.gcm
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn symmetrizer(&self) -> &[Rational64] {
        &self.symmetrizer
    }

    pub fn node0(&self) -> usize {
        self.node0
    }

    pub fn dihedral_order(&self, i: usize, j: usize) -> DihedralOrder {
        self.dihedral[i][j]
    }

    /// Dual Coxeter number `kappa* = sum of comarks`.
    pub fn dual_coxeter(&self) -> i64 {
        self.comarks.iter().sum()
    }

    /// `d(delta) = sum of marks`, the height of the null root.
    pub fn delta_height(&self) -> i64 {
        self.marks.iter().sum()
    }

    /// `theta = delta - alpha_0`.
    pub fn theta(&self) -> Weight {
        let mut m = self.marks.clone();
        m[self.node0] -= 1;
        Weight::from_parts(vec![0; self.rank()], m)
    }

    pub fn delta(&self) -> Weight {
        Weight::from_parts(vec![0; self.rank()], self.marks.clone())
    }

    /// Untwisted types: node 0 has comark 1 and `alpha_0` is a long root.
    /// Twisted types are accepted but treated as experimental.
    pub fn is_untwisted(&self) -> bool {
        let d0 = self.symmetrizer[self.node0];
        self.comarks[self.node0] == 1 && self.symmetrizer.iter().all(|d| *d <= d0)
    }

    /// `<c, w>`: the level of a weight.
    pub fn level(&self, w: &Weight) -> i64 {
        w.l().iter().zip(&self.comarks).map(|(l, c)| l * c).sum()
    }

    /// `<h_i, w>`.
    pub fn pairing(&self, i: usize, w: &Weight) -> i64 {
        w.l()[i] + self.gcm[i].iter().zip(w.m()).map(|(a, m)| a * m).sum::<i64>()
    }

    /// The invariant symmetric form with `(L, L) = 0`,
    /// `(alpha_i, y) = d_i <h_i, y>`.
    pub fn bilinear(&self, x: &Weight, y: &Weight) -> Rational64 {
        let mut acc = Rational64::zero();
        for i in self.nodes() {
            let d = self.symmetrizer[i];
            let t = x.m()[i] * self.pairing(i, y) + x.l()[i] * y.m()[i];
            acc += d * t;
        }
        acc
    }

    /// `rho = sum Lambda_i`.
    pub fn rho(&self) -> Weight {
        Weight::from_parts(vec![1; self.rank()], vec![0; self.rank()])
    }

    /// `rho_J = sum_{j in J} Lambda_j`.
    pub fn rho_subset(&self, subset: &[usize]) -> Weight {
        let mut l = vec![0; self.rank()];
        for &j in subset {
            l[j] = 1;
        }
        Weight::from_parts(l, vec![0; self.rank()])
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut l = vec![0; self.rank()];
        l[i] = 1;
        Weight::from_parts(l, vec![0; self.rank()])
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        let mut m = vec![0; self.rank()];
        m[i] = 1;
        Weight::from_parts(vec![0; self.rank()], m)
    }

    /// Whether `delta - alpha_k` is a positive multiple of a root of the
    /// finite system spanned by the other nodes.
    fn theta_is_root_multiple(&self, k: usize) -> bool {
        let n = self.rank();
        let mut theta = self.marks.clone();
        theta[k] -= 1;
        let g = theta.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g == 0 {
            return false;
        }
        let others: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        // roots of the finite subsystem by reflection closure of its simple roots
        let mut seen: std::collections::BTreeSet<Vec<i64>> = std::collections::BTreeSet::new();
        let mut stack: Vec<Vec<i64>> = others
            .iter()
            .map(|&i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        while let Some(r) = stack.pop() {
            if !seen.insert(r.clone()) {
                continue;
            }
            if seen.len() > 10_000 {
                return false;
            }
            for &i in &others {
                let p: i64 = (0..n).map(|j| self.gcm[i][j] * r[j]).sum();
                if p != 0 {
                    let mut s = r.clone();
                    s[i] -= p;
                    if !seen.contains(&s) {
                        stack.push(s);
                    }
                }
            }
        }
        (1..=g).filter(|c| g % c == 0).any(|c| {
            let scaled: Vec<i64> = theta.iter().map(|x| x / c).collect();
            seen.contains(&scaled)
        })
    }
}

impl fmt::Display for AffineCartanData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type: {}", self.key())?;
        writeln!(f, "labels: {:?}", self.labels)?;
        writeln!(f, "matrix:")?;
        for row in &self.gcm {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "  [{}]", cells.join(","))?;
        }
        writeln!(f, "marks: {:?}", self.marks)?;
        writeln!(f, "comarks: {:?}", self.comarks)?;
        let d: Vec<String> = self.symmetrizer.iter().map(|r| r.to_string()).collect();
        writeln!(f, "symmetrizer: [{}]", d.join(", "))?;
        writeln!(f, "node0: {}", self.labels[self.node0])?;
        writeln!(f, "dual coxeter number: {}", self.dual_coxeter())?;
        write!(f, "untwisted: {}", self.is_untwisted())
    }
}

fn identity2(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { 0 }).collect()).collect()
}

/// The primitive integer vector spanning the kernel of `m`, provided the
/// kernel is one-dimensional and the vector can be chosen strictly positive.
fn positive_kernel_vector(m: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = m.len();
    // row reduction over Q
    let mut rows: Vec<Vec<Rational64>> =
        m.iter().map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pv = rows[r][c];
        for x in rows[r].iter_mut() {
            *x /= pv;
        }
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for k in 0..n {
                    let t = rows[r][k] * f;
                    rows[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if n - pivots.len() != 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c)).unwrap();
    let mut v = vec![Rational64::zero(); n];
    v[free] = Rational64::from_integer(1);
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -rows[row][free];
    }
    let den = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<i64> = v.iter().map(|x| (x * den).to_integer()).collect();
    let g = ints.iter().fold(0i64, |g, x| g.gcd(x));
    for x in ints.iter_mut() {
        *x /= g;
    }
    if ints.iter().all(|x| x.is_negative()) {
        for x in ints.iter_mut() {
            *x = -*x;
        }
    }
    ints.iter().all(|x| x.is_positive()).then_some(ints)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_data() {
        let c = AffineCartanData::build(vec![vec![2, -2], vec![-2, 2]], vec![0, 1]).unwrap();
        assert_eq!(c.marks(), &[1, 1]);
        assert_eq!(c.comarks(), &[1, 1]);
        assert_eq!(c.dual_coxeter(), 2);
        assert_eq!(c.symmetrizer(), &[Rational64::from_integer(1); 2]);
        assert_eq!(c.dihedral_order(0, 1), None);
        assert!(c.is_untwisted());
    }

    #[test]
    fn c2_data() {
        let c = AffineCartanData::build(vec![vec![2, -1, 0], vec![-2, 2, -2], vec![0, -1, 2]], vec![0, 1, 2])
            .unwrap();
        assert_eq!(c.marks(), &[1, 2, 1]);
        assert_eq!(c.comarks(), &[1, 1, 1]);
        assert_eq!(c.dual_coxeter(), 3);
        assert_eq!(c, {
            let mut b = AffineCartanData::affine_c(2).unwrap();
            b.name = None;
            b
        });
        assert_eq!(c.dihedral_order(0, 1), Some(4));
        assert_eq!(c.dihedral_order(0, 2), Some(2));
    }

    #[test]
    fn finite_type_is_rejected() {
        let e = AffineCartanData::build(vec![vec![2, -1], vec![-1, 2]], vec![0, 1]).unwrap_err();
        assert_eq!(e, CartanError::NotAffine);
    }

    #[test]
    fn bad_shapes() {
        assert!(matches!(
            AffineCartanData::build(vec![vec![2, 1], vec![1, 2]], vec![0, 1]),
            Err(CartanError::BadShape(_))
        ));
        assert!(matches!(
            AffineCartanData::build(vec![vec![2, -1, 0], vec![-1, 2]], vec![0, 1, 2]),
            Err(CartanError::BadShape(_))
        ));
        assert!(matches!(
            AffineCartanData::build(vec![vec![2, 0], vec![-1, 2]], vec![0, 1]),
            Err(CartanError::BadShape(_))
        ));
    }

    #[test]
    fn builtin_null_vectors() {
        let types = ["A1~", "A2~", "A3~", "A5~", "C2~", "C3~", "C4~", "D4~", "D5~", "D7~"];
        for t in types {
            let c = AffineCartanData::from_type_str(t).unwrap();
            let n = c.rank();
            for i in 0..n {
                let row: i64 = (0..n).map(|j| c.a(i, j) * c.marks()[j]).sum();
                let col: i64 = (0..n).map(|j| c.comarks()[j] * c.a(j, i)).sum();
                assert_eq!((row, col), (0, 0), "{t}");
                for j in 0..n {
                    assert_eq!(c.symmetrizer()[i] * c.a(i, j), c.symmetrizer()[j] * c.a(j, i));
                }
            }
            assert_eq!(c.node0(), 0);
            assert_eq!(c.marks()[0], 1);
            assert_eq!(c.level(&c.rho()), c.dual_coxeter());
            assert!(c.is_untwisted(), "{t}");
        }
        assert_eq!(AffineCartanData::from_type_str("D4~").unwrap().marks(), &[1, 1, 2, 1, 1]);
        assert_eq!(AffineCartanData::from_type_str("A3~").unwrap().dual_coxeter(), 4);
        assert_eq!(AffineCartanData::from_type_str("C3~").unwrap().marks(), &[1, 2, 2, 1]);
    }

    #[test]
    fn twisted_a2_is_flagged() {
        // A_2^(2): the mark-1 node is the second one
        let c = AffineCartanData::build(vec![vec![2, -4], vec![-1, 2]], vec![0, 1]).unwrap();
        assert_eq!(c.node0(), 1);
        assert!(!c.is_untwisted());
    }

    #[test]
    fn level_and_form() {
        let c = AffineCartanData::affine_a(1).unwrap();
        assert_eq!(c.level(&c.fundamental(0)), 1);
        assert_eq!(c.level(&c.simple_root(1)), 0);
        let w = &(-c.fundamental(0)) - &c.simple_root(1);
        assert_eq!(c.level(&w), -1);
        assert_eq!(c.bilinear(&c.simple_root(1), &c.simple_root(1)), Rational64::from_integer(2));
        for i in 0..2 {
            for j in 0..2 {
                assert!(c.bilinear(&c.fundamental(i), &c.fundamental(j)).is_zero());
            }
            assert!(c.bilinear(&c.delta(), &c.simple_root(i)).is_zero());
        }
        assert_eq!(AffineCartanData::from_type_str("[[2,-2],[-2,2]]").unwrap().marks(), &[1, 1]);
        assert!(AffineCartanData::from_type_str("B3~").is_err());
    }
}
