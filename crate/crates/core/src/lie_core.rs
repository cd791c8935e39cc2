//! Three-armed diagrams `T_{p,q,r}`, their Cartan matrices, root systems and
//! fundamental weights, and the dictionary between length-three resolution
//! formats and diagrams.
//!
//! Nodes are always ordered `x_{p-1}, …, x_1, u, y_1, …, y_{q-1}, z_1, …, z_{r-1}`.
//! Roots are integer vectors in the simple-root basis; weights are integer
//! Dynkin labels (coordinates in the fundamental-weight basis).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A node of `T_{p,q,r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    X(usize),
    U,
    Y(usize),
    Z(usize),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::X(i) => write!(f, "x{i}"),
            Node::U => write!(f, "u"),
            Node::Y(i) => write!(f, "y{i}"),
            Node::Z(i) => write!(f, "z{i}"),
        }
    }
}

impl FromStr for Node {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "u" {
            return Ok(Node::U);
        }
        let bad = || Error::UnknownNode(s.to_string());
        let (head, tail) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).ok_or_else(bad)?);
        let idx: usize = tail.parse().map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        match head {
            "x" => Ok(Node::X(idx)),
            "y" => Ok(Node::Y(idx)),
            "z" => Ok(Node::Z(idx)),
            _ => Err(bad()),
        }
    }
}

/// The diagram `T_{p,q,r}`: arms of `p-1`, `q-1`, `r-1` nodes around `u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ShapeRepr", into = "ShapeRepr")]
pub struct TShape {
    p: usize,
    q: usize,
    r: usize,
}

#[derive(Serialize, Deserialize)]
struct ShapeRepr {
    p: usize,
    q: usize,
    r: usize,
}

impl TryFrom<ShapeRepr> for TShape {
    type Error = Error;
    fn try_from(s: ShapeRepr) -> Result<Self> {
        TShape::new(s.p, s.q, s.r)
    }
}

impl From<TShape> for ShapeRepr {
    fn from(s: TShape) -> Self {
        ShapeRepr { p: s.p, q: s.q, r: s.r }
    }
}

impl TShape {
    pub fn new(p: usize, q: usize, r: usize) -> Result<Self> {
        if p == 0 || q == 0 || r == 0 {
            return Err(Error::MalformedFormat(format!(
                "arm parameters must be positive, got ({p},{q},{r})"
            )));
        }
        Ok(TShape { p, q, r })
    }

    pub fn p(&self) -> usize {
        self.p
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of nodes, `p + q + r - 2`.
    pub fn rank(&self) -> usize {
        self.p + self.q + self.r - 2
    }

    /// Canonical node list.
    pub fn nodes(&self) -> Vec<Node> {
        let mut v = Vec::with_capacity(self.rank());
        v.extend((1..self.p).rev().map(Node::X));
        v.push(Node::U);
        v.extend((1..self.q).map(Node::Y));
        v.extend((1..self.r).map(Node::Z));
        v
    }

    pub fn index(&self, node: Node) -> Option<usize> {
        match node {
            Node::X(i) if i >= 1 && i < self.p => Some(self.p - 1 - i),
            Node::U => Some(self.p - 1),
            Node::Y(i) if i >= 1 && i < self.q => Some(self.p - 1 + i),
            Node::Z(i) if i >= 1 && i < self.r => Some(self.p + self.q - 2 + i),
            _ => None,
        }
    }

    pub fn node_index(&self, node: Node) -> Result<usize> {
        self.index(node).ok_or_else(|| Error::UnknownNode(node.to_string()))
    }

    pub fn node(&self, index: usize) -> Node {
        self.nodes()[index]
    }

    fn adjacent(&self, a: Node, b: Node) -> bool {
        use Node::*;
        let one_way = |a: Node, b: Node| match (a, b) {
            (X(1), U) | (Y(1), U) | (Z(1), U) => true,
            (X(i), X(j)) | (Y(i), Y(j)) | (Z(i), Z(j)) => i + 1 == j,
            _ => false,
        };
        one_way(a, b) || one_way(b, a)
    }

    /// `1/p + 1/q + 1/r` compared with 1, as the sign of `qr + pr + pq - pqr`.
    fn harmonic_excess(&self) -> i64 {
        let (p, q, r) = (self.p as i64, self.q as i64, self.r as i64);
        q * r + p * r + p * q - p * q * r
    }

    pub fn is_finite(&self) -> bool {
        self.harmonic_excess() > 0
    }

    pub fn classify(&self) -> DiagramType {
        let mut arms = [self.p, self.q, self.r];
        arms.sort_unstable();
        let n = self.rank();
        match self.harmonic_excess() {
            e if e > 0 => DiagramType::Finite(match arms {
                [1, _, _] => DynkinName::A(n),
                [2, 2, _] => DynkinName::D(n),
                [2, 3, 3] => DynkinName::E6,
                [2, 3, 4] => DynkinName::E7,
                [2, 3, 5] => DynkinName::E8,
                _ => unreachable!("finite T-shapes are ADE"),
            }),
            0 => DiagramType::Affine(match arms {
                [3, 3, 3] => AffineName::E6,
                [2, 4, 4] => AffineName::E7,
                [2, 3, 6] => AffineName::E8,
                _ => unreachable!("affine T-shapes are E~6, E~7, E~8"),
            }),
            _ => DiagramType::Indefinite,
        }
    }

    pub fn require_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFiniteType { p: self.p, q: self.q, r: self.r })
        }
    }
}

impl fmt::Display for TShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T_{{{},{},{}}}", self.p, self.q, self.r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DynkinName {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl DynkinName {
    /// Number of positive roots of the named type.
    pub fn positive_root_count(&self) -> usize {
        match *self {
            DynkinName::A(n) => n * (n + 1) / 2,
            DynkinName::D(n) => n * (n - 1),
            DynkinName::E6 => 36,
            DynkinName::E7 => 63,
            DynkinName::E8 => 120,
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u64 {
        let fact = |k: u64| (1..=k).product::<u64>();
        match *self {
            DynkinName::A(n) => fact(n as u64 + 1),
            DynkinName::D(n) => (1u64 << (n - 1)) * fact(n as u64),
            DynkinName::E6 => 51_840,
            DynkinName::E7 => 2_903_040,
            DynkinName::E8 => 696_729_600,
        }
    }
}

impl fmt::Display for DynkinName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinName::A(n) => write!(f, "A{n}"),
            DynkinName::D(n) => write!(f, "D{n}"),
            DynkinName::E6 => write!(f, "E6"),
            DynkinName::E7 => write!(f, "E7"),
            DynkinName::E8 => write!(f, "E8"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AffineName {
    E6,
    E7,
    E8,
}

impl fmt::Display for AffineName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineName::E6 => write!(f, "E~6"),
            AffineName::E7 => write!(f, "E~7"),
            AffineName::E8 => write!(f, "E~8"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagramType {
    Finite(DynkinName),
    Affine(AffineName),
    Indefinite,
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramType::Finite(n) => write!(f, "finite type {n}"),
            DiagramType::Affine(n) => write!(f, "affine type {n}"),
            DiagramType::Indefinite => write!(f, "indefinite type"),
        }
    }
}

/// Symmetric Cartan matrix of a simply-laced diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CartanMatrix(Vec<Vec<i64>>);

impl CartanMatrix {
    pub fn of(shape: &TShape) -> Self {
        let nodes = shape.nodes();
        let rows = nodes
            .iter()
            .map(|&a| {
                nodes
                    .iter()
                    .map(|&b| {
                        if a == b {
                            2
                        } else if shape.adjacent(a, b) {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        CartanMatrix(rows)
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    /// `⟨α_i^∨, β⟩` for `β` in simple-root coordinates.
    pub fn pairing(&self, i: usize, root: &[i64]) -> i64 {
        self.0[i].iter().zip(root).map(|(a, b)| a * b).sum()
    }

    /// Dynkin labels of a vector given in simple-root coordinates.
    pub fn to_labels(&self, root: &[i64]) -> Vec<i64> {
        (0..self.size()).map(|i| self.pairing(i, root)).collect()
    }

    pub fn determinant(&self) -> i64 {
        let n = self.size();
        let mut m: Vec<Vec<Rational64>> = self
            .0
            .iter()
            .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
            .collect();
        let mut det = Rational64::one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return 0;
            };
            if piv != c {
                m.swap(piv, c);
                det = -det;
            }
            det *= m[c][c];
            for r in c + 1..n {
                let f = m[r][c] / m[c][c];
                if !f.is_zero() {
                    for k in c..n {
                        let v = m[c][k] * f;
                        m[r][k] -= v;
                    }
                }
            }
        }
        debug_assert!(det.is_integer());
        det.to_integer()
    }

    /// `A^{-1}`, or `SingularCartan` for affine diagrams.
    pub fn inverse(&self) -> Result<Vec<Vec<Rational64>>> {
        let n = self.size();
        let mut m: Vec<Vec<Rational64>> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row: Vec<Rational64> =
                    r.iter().map(|&x| Rational64::from_integer(x)).collect();
                row.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
                row
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|&r| !m[r][c].is_zero()).ok_or(Error::SingularCartan)?;
            m.swap(piv, c);
            let inv = m[c][c].recip();
            for k in 0..2 * n {
                m[c][k] *= inv;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c];
                    for k in 0..2 * n {
                        let v = m[c][k] * f;
                        m[r][k] -= v;
                    }
                }
            }
        }
        Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
    }
}

/// Positive roots of a finite-type diagram together with the Cartan data
/// needed by the rest of the crate.
#[derive(Debug, Clone)]
pub struct RootSystem {
    shape: TShape,
    cartan: CartanMatrix,
    name: DynkinName,
    positive: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    inverse: Vec<Vec<Rational64>>,
    det: i64,
}

impl RootSystem {
    pub fn new(shape: &TShape) -> Result<Self> {
        let DiagramType::Finite(name) = shape.classify() else {
            return Err(Error::NonFiniteType { p: shape.p, q: shape.q, r: shape.r });
        };
        let cartan = CartanMatrix::of(shape);
        let positive = close_under_reflections(&cartan);
        let index = positive.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let inverse = cartan.inverse()?;
        let det = cartan.determinant();
        Ok(RootSystem { shape: shape.clone(), cartan, name, positive, index, inverse, det })
    }

    pub fn shape(&self) -> &TShape {
        &self.shape
    }
    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }
    pub fn name(&self) -> DynkinName {
        self.name
    }
    pub fn rank(&self) -> usize {
        self.cartan.size()
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn positive_root_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        if self.index.contains_key(v) {
            return true;
        }
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.index.contains_key(&neg)
    }

    /// Highest root (last in height order).
    pub fn highest_root(&self) -> &[i64] {
        self.positive.last().expect("nonempty root system")
    }

    /// `det A`; `det A · A^{-1}` is integral.
    pub fn det(&self) -> i64 {
        self.det
    }

    /// Fundamental weights in simple-root coordinates (columns of `A^{-1}`).
    pub fn fundamental_weights(&self) -> Vec<Vec<Rational64>> {
        let n = self.rank();
        (0..n).map(|j| (0..n).map(|i| self.inverse[i][j]).collect()).collect()
    }

    /// Simple-root coordinates of a weight given by Dynkin labels.
    pub fn weight_to_root_coords(&self, labels: &[i64]) -> Vec<Rational64> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n).fold(Rational64::zero(), |acc, j| {
                    acc + self.inverse[i][j] * Rational64::from_integer(labels[j])
                })
            })
            .collect()
    }

    /// `det A` times the simple-root coordinates of a weight; always integral.
    pub fn scaled_root_coords(&self, labels: &[i64]) -> Vec<i64> {
        self.weight_to_root_coords(labels)
            .into_iter()
            .map(|c| {
                let s = c * Rational64::from_integer(self.det);
                debug_assert!(s.is_integer());
                s.to_integer()
            })
            .collect()
    }

    /// Invariant form on weights, scaled by `det A` so it stays integral.
    pub fn scaled_form(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut acc = Rational64::zero();
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] != 0 {
                    acc += self.inverse[i][j] * Rational64::from_integer(a[i] * b[j]);
                }
            }
        }
        let s = acc * Rational64::from_integer(self.det);
        debug_assert!(s.is_integer());
        s.to_integer()
    }

    /// Dynkin labels of the `i`-th fundamental weight.
    pub fn fundamental_labels(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    /// `ρ`, all labels one.
    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank()]
    }
}

/// Breadth-first closure of the simple roots under simple reflections,
/// keeping only positive images.
fn close_under_reflections(cartan: &CartanMatrix) -> Vec<Vec<i64>> {
    let n = cartan.size();
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone(), ());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let c = cartan.pairing(i, &beta);
            let mut img = beta.clone();
            img[i] -= c;
            if img.iter().all(|&x| x >= 0) && img.iter().any(|&x| x > 0) && !seen.contains_key(&img) {
                seen.insert(img.clone(), ());
                queue.push_back(img);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_keys().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    roots
}

/// Simple reflection on a vector in simple-root coordinates.
pub fn reflect_root(cartan: &CartanMatrix, root: &[i64], i: usize) -> Vec<i64> {
    let mut v = root.to_vec();
    v[i] -= cartan.pairing(i, root);
    v
}

/// Simple reflection on Dynkin labels: `λ - λ_i α_i`.
pub fn reflect_weight(cartan: &CartanMatrix, labels: &[i64], i: usize) -> Vec<i64> {
    let c = labels[i];
    if c == 0 {
        return labels.to_vec();
    }
    labels
        .iter()
        .enumerate()
        .map(|(j, &l)| l - c * cartan.get(i, j))
        .collect()
}

/// Coefficient of `α_t` of a vector in simple-root coordinates.
pub fn grading_degree<T: Clone>(v: &[T], t: usize) -> T {
    v[t].clone()
}

/// A length-three resolution format `(f0, f1, f2, f3)` with
/// `f0 = r1`, `f1 = r1 + r2`, `f2 = r2 + r3`, `f3 = r3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormatRepr", into = "FormatRepr")]
pub struct Format {
    f: [usize; 4],
}

#[derive(Serialize, Deserialize)]
struct FormatRepr {
    f: [usize; 4],
}

impl TryFrom<FormatRepr> for Format {
    type Error = Error;
    fn try_from(r: FormatRepr) -> Result<Self> {
        Format::new(r.f)
    }
}

impl From<Format> for FormatRepr {
    fn from(f: Format) -> Self {
        FormatRepr { f: f.f }
    }
}

impl Format {
    pub fn new(f: [usize; 4]) -> Result<Self> {
        let [f0, f1, f2, f3] = f;
        if f1 < f0 || f2 < f3 || f1 - f0 != f2 - f3 {
            return Err(Error::MalformedFormat(format!("{f:?}: need f1 - f0 = f2 - f3")));
        }
        let (r1, r2, r3) = (f0, f1 - f0, f3);
        if r1 < 1 || r2 < 2 || r3 < 1 {
            return Err(Error::MalformedFormat(format!(
                "{f:?}: need r1 >= 1, r2 >= 2, r3 >= 1 (got {r1}, {r2}, {r3})"
            )));
        }
        Ok(Format { f })
    }

    /// Cyclic format `(1, 3 + d, 2 + d + t, t)`.
    pub fn from_deviation_type(d: usize, t: usize) -> Result<Self> {
        Format::new([1, 3 + d, 2 + d + t, t])
    }

    pub fn f(&self) -> [usize; 4] {
        self.f
    }
    pub fn r1(&self) -> usize {
        self.f[0]
    }
    pub fn r2(&self) -> usize {
        self.f[1] - self.f[0]
    }
    pub fn r3(&self) -> usize {
        self.f[3]
    }

    /// `(d, t) = (b1 - 3, b3)` for cyclic formats.
    pub fn deviation_type(&self) -> Option<(usize, usize)> {
        (self.f[0] == 1).then(|| (self.f[1] - 3, self.f[3]))
    }

    /// `T_{r1+1, r2-1, r3+1}`.
    pub fn shape(&self) -> TShape {
        TShape::new(self.r1() + 1, self.r2() - 1, self.r3() + 1).expect("valid format gives valid shape")
    }

    pub fn from_shape(shape: &TShape) -> Result<Self> {
        if shape.p < 2 || shape.r < 2 {
            return Err(Error::MalformedFormat(format!("{shape} has an empty x or z arm")));
        }
        Format::new([shape.p - 1, shape.p + shape.q, shape.q + shape.r, shape.r - 1])
    }

    pub fn is_dynkin(&self) -> bool {
        self.shape().is_finite()
    }

    pub fn require_dynkin(&self) -> Result<TShape> {
        let s = self.shape();
        if s.is_finite() {
            Ok(s)
        } else {
            Err(Error::NonDynkinFormat(self.f))
        }
    }

    pub fn require_cyclic_dynkin(&self) -> Result<TShape> {
        let s = self.require_dynkin()?;
        if self.f[0] != 1 {
            return Err(Error::UnsupportedF0(self.f));
        }
        Ok(s)
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.f;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.trim_matches(|c| c == '(' || c == ')').parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("format `{s}`: {e}")))?;
        let f: [usize; 4] = parts
            .try_into()
            .map_err(|_| Error::Parse(format!("format `{s}` needs four entries")))?;
        Format::new(f)
    }
}
