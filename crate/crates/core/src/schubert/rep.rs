//! Explicit representation matrices.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie_core::{DiagramType, DynkinName, RootSystem, TShape};
use crate::polyalg::{int, Coeff, MultiPoly};
use crate::repdecomp::{weyl_dimension, weyl_orbit};
use crate::weyl::WeylElement;

/// A square rational matrix stored by its nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), Coeff>,
}

impl RepMatrix {
    pub fn zero(dim: usize) -> Self {
        RepMatrix { dim, entries: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        RepMatrix { dim, entries: (0..dim).map(|i| ((i, i), Coeff::one())).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Coeff {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Coeff)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, row: usize, col: usize, value: Coeff) {
        if value.is_zero() {
            return;
        }
        let slot = self.entries.entry((row, col)).or_insert_with(Coeff::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn mul(&self, other: &RepMatrix) -> RepMatrix {
        let mut by_row: HashMap<usize, Vec<(usize, &Coeff)>> = HashMap::new();
        for (&(k, j), v) in &other.entries {
            by_row.entry(k).or_default().push((j, v));
        }
        let mut out = RepMatrix::zero(self.dim);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    out.add_entry(i, j, a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RepMatrix) -> RepMatrix {
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            out.add_entry(i, j, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> RepMatrix {
        let mut out = RepMatrix::zero(self.dim);
        for (&(i, j), v) in &self.entries {
            out.add_entry(i, j, v * c);
        }
        out
    }

    pub fn sub(&self, other: &RepMatrix) -> RepMatrix {
        self.add(&other.scale(&int(-1)))
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, other: &RepMatrix) -> RepMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn apply(&self, v: &[Coeff]) -> Vec<Coeff> {
        let mut out = vec![Coeff::zero(); self.dim];
        for (&(i, j), c) in &self.entries {
            if !v[j].is_zero() {
                out[i] += c * &v[j];
            }
        }
        out
    }

    pub fn apply_poly(&self, v: &[MultiPoly]) -> Vec<MultiPoly> {
        let nvars = v.first().map_or(0, MultiPoly::nvars);
        let mut out = vec![MultiPoly::zero(nvars); self.dim];
        for (&(i, j), c) in &self.entries {
            for (m, a) in v[j].terms() {
                out[i].add_term(m.clone(), a * c);
            }
        }
        out
    }

    /// `exp` of a nilpotent matrix, summing the series until it stops.
    pub fn exp_nilpotent(&self) -> Result<RepMatrix> {
        let mut total = RepMatrix::identity(self.dim);
        let mut term = RepMatrix::identity(self.dim);
        for k in 1..=self.dim + 1 {
            term = term.mul(self).scale(&Coeff::new(1.into(), (k as i64).into()));
            if term.is_zero() {
                return Ok(total);
            }
            total = total.add(&term);
        }
        Err(Error::Inconsistent("matrix is not nilpotent".into()))
    }

    pub fn to_dense(&self) -> Vec<Vec<Coeff>> {
        let mut out = vec![vec![Coeff::zero(); self.dim]; self.dim];
        for (&(i, j), v) in &self.entries {
            out[i][j] = v.clone();
        }
        out
    }
}

/// How a representation was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepKind {
    Minuscule,
    Adjoint,
}

/// Chevalley generators acting on a weight basis of an irreducible module,
/// together with root vectors `e_α`, `f_α` for every positive root.
#[derive(Debug, Clone)]
pub struct RepMatrices {
    roots: RootSystem,
    kind: RepKind,
    node: Option<usize>,
    highest: Vec<i64>,
    weights: Vec<Vec<i64>>,
    e: Vec<RepMatrix>,
    f: Vec<RepMatrix>,
    e_root: Vec<RepMatrix>,
    f_root: Vec<RepMatrix>,
}

impl RepMatrices {
    fn assemble(
        roots: RootSystem,
        kind: RepKind,
        node: Option<usize>,
        highest: Vec<i64>,
        weights: Vec<Vec<i64>>,
        e: Vec<RepMatrix>,
        f: Vec<RepMatrix>,
    ) -> Result<Self> {
        let mut rep = RepMatrices { roots, kind, node, highest, weights, e, f, e_root: vec![], f_root: vec![] };
        rep.check_relations()?;
        rep.build_root_vectors();
        Ok(rep)
    }

    fn build_root_vectors(&mut self) {
        let positive = self.roots.positive_roots().to_vec();
        let mut e_root: Vec<RepMatrix> = Vec::with_capacity(positive.len());
        let mut f_root: Vec<RepMatrix> = Vec::with_capacity(positive.len());
        for alpha in &positive {
            let height: i64 = alpha.iter().sum();
            if height == 1 {
                let i = alpha.iter().position(|&a| a == 1).expect("simple root");
                e_root.push(self.e[i].clone());
                f_root.push(self.f[i].clone());
                continue;
            }
            let (i, rest) = (0..alpha.len())
                .find_map(|i| {
                    let mut beta = alpha.clone();
                    beta[i] -= 1;
                    self.roots.positive_root_index(&beta).map(|k| (i, k))
                })
                .expect("a non-simple positive root has a simple predecessor");
            e_root.push(self.e[i].commutator(&e_root[rest]));
            f_root.push(self.f[i].commutator(&f_root[rest]));
        }
        self.e_root = e_root;
        self.f_root = f_root;
    }

    pub fn shape(&self) -> &TShape {
        self.roots.shape()
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    /// The node `t` when this is `L(ω_t)`.
    pub fn node(&self) -> Option<usize> {
        self.node
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn highest_weight(&self) -> &[i64] {
        &self.highest
    }

    /// Dynkin labels of each basis vector.
    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn e(&self, i: usize) -> &RepMatrix {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &RepMatrix {
        &self.f[i]
    }

    /// The diagonal action of `α_i^∨`.
    pub fn h(&self, i: usize) -> RepMatrix {
        let mut out = RepMatrix::zero(self.dim());
        for (k, w) in self.weights.iter().enumerate() {
            out.add_entry(k, k, int(w[i]));
        }
        out
    }

    /// `e_α` for the positive root with index `k` in the root system.
    pub fn e_root(&self, k: usize) -> &RepMatrix {
        &self.e_root[k]
    }

    /// `f_α`, of weight `−α`, for the positive root with index `k`.
    pub fn f_root(&self, k: usize) -> &RepMatrix {
        &self.f_root[k]
    }

    /// Index of the unique basis vector of a given weight.
    pub fn index_of(&self, weight: &[i64]) -> Option<usize> {
        let mut hits = self.weights.iter().enumerate().filter(|(_, w)| w.as_slice() == weight);
        let first = hits.next()?.0;
        hits.next().is_none().then_some(first)
    }

    /// Checks `[e_i, f_j] = δ_ij h_i`, the weight shifts and the Serre
    /// relations.
    pub fn check_relations(&self) -> Result<()> {
        let n = self.roots.rank();
        let cartan = self.roots.cartan();
        for i in 0..n {
            for (row, col, _) in self.e[i].entries() {
                let expect: Vec<i64> = self.weights[col].iter().zip(&cartan.rows()[i]).map(|(a, b)| a + b).collect();
                if self.weights[row] != expect {
                    return Err(Error::Inconsistent(format!("e_{i} does not raise weights by α_{i}")));
                }
            }
            for (row, col, _) in self.f[i].entries() {
                let expect: Vec<i64> = self.weights[col].iter().zip(&cartan.rows()[i]).map(|(a, b)| a - b).collect();
                if self.weights[row] != expect {
                    return Err(Error::Inconsistent(format!("f_{i} does not lower weights by α_{i}")));
                }
            }
            for j in 0..n {
                let bracket = self.e[i].commutator(&self.f[j]);
                let expect = if i == j { self.h(i) } else { RepMatrix::zero(self.dim()) };
                if bracket != expect {
                    return Err(Error::Inconsistent(format!("[e_{i}, f_{j}] is wrong")));
                }
                if i == j {
                    continue;
                }
                let order = (1 - cartan.get(i, j)) as usize;
                for gens in [&self.e, &self.f] {
                    let mut acc = gens[j].clone();
                    for _ in 0..order {
                        acc = gens[i].commutator(&acc);
                    }
                    if !acc.is_zero() {
                        return Err(Error::Inconsistent(format!("Serre relation fails for ({i}, {j})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `exp(f_i) exp(−e_i) exp(f_i)`, a lift of the simple reflection `s_i`.
    pub fn simple_lift(&self, i: usize) -> Result<RepMatrix> {
        let ef = self.f[i].exp_nilpotent()?;
        let ee = self.e[i].scale(&int(-1)).exp_nilpotent()?;
        Ok(ef.mul(&ee).mul(&ef))
    }

    /// Product of simple lifts along the reduced word of `w`.
    pub fn lift(&self, w: &WeylElement) -> Result<RepMatrix> {
        let mut out = RepMatrix::identity(self.dim());
        for &i in w.word() {
            out = out.mul(&self.simple_lift(i)?);
        }
        Ok(out)
    }
}

/// Whether `ω_node` is minuscule: all of its weights form one `W`-orbit.
pub fn is_minuscule(roots: &RootSystem, node: usize) -> Result<bool> {
    let omega = roots.fundamental_labels(node);
    let orbit = weyl_orbit(roots.cartan(), &omega).len() as u64;
    Ok(orbit == weyl_dimension(roots, &omega)?)
}

fn finite_roots(shape: &TShape) -> Result<RootSystem> {
    RootSystem::new(shape).map_err(|_| Error::UnsupportedShape(shape.to_string()))
}

/// `L(ω_node)` for a minuscule node, on the basis of extremal weight vectors
/// ordered by depth below the highest weight. Every nonzero entry of every
/// `e_i` and `f_i` is `+1`.
pub fn minuscule_rep(shape: &TShape, node: usize) -> Result<RepMatrices> {
    let roots = finite_roots(shape)?;
    if node >= roots.rank() {
        return Err(Error::NotMinuscule(format!("node index {node} out of range for {shape}")));
    }
    if !is_minuscule(&roots, node)? {
        return Err(Error::NotMinuscule(format!("{} of {shape}", shape.node(node))));
    }
    let cartan = roots.cartan().clone();
    let highest = roots.fundamental_labels(node);
    let mut weights = weyl_orbit(&cartan, &highest);
    let depth = |w: &[i64]| -> i64 {
        let diff: Vec<i64> = highest.iter().zip(w).map(|(a, b)| a - b).collect();
        roots.scaled_root_coords(&diff).iter().sum()
    };
    weights.sort_by(|a, b| depth(a).cmp(&depth(b)).then_with(|| b.cmp(a)));
    let index: HashMap<Vec<i64>, usize> = weights.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
    let dim = weights.len();
    let n = roots.rank();
    let mut e = vec![RepMatrix::zero(dim); n];
    let mut f = vec![RepMatrix::zero(dim); n];
    for (k, w) in weights.iter().enumerate() {
        for i in 0..n {
            let alpha = &cartan.rows()[i];
            if w[i] == -1 {
                let up: Vec<i64> = w.iter().zip(alpha).map(|(a, b)| a + b).collect();
                e[i].add_entry(index[&up], k, Coeff::one());
            }
            if w[i] == 1 {
                let down: Vec<i64> = w.iter().zip(alpha).map(|(a, b)| a - b).collect();
                f[i].add_entry(index[&down], k, Coeff::one());
            }
        }
    }
    RepMatrices::assemble(roots, RepKind::Minuscule, Some(node), highest, weights, e, f)
}

/// The adjoint representation of the simply-laced algebra of `shape`, built
/// from a bimultiplicative sign cocycle on the root lattice. Basis: positive
/// roots from highest down, then the simple coroots, then negative roots.
///
/// The construction is valid for every simply-laced type; only `E6` is used
/// by the Schubert charts.
pub fn adjoint_rep(shape: &TShape) -> Result<RepMatrices> {
    let algebra = AdjointAlgebra::new(shape)?;
    let n = algebra.rank;
    let e: Vec<RepMatrix> = (0..n).map(|i| algebra.ad(algebra.root_index(&unit(n, i, 1)))).collect();
    let f: Vec<RepMatrix> =
        (0..n).map(|i| algebra.ad(algebra.root_index(&unit(n, i, -1))).scale(&int(-1))).collect();
    let highest = algebra.roots.cartan().to_labels(algebra.roots.highest_root());
    let node = (0..n).find(|&i| algebra.roots.fundamental_labels(i) == highest);
    let weights = algebra.weights.clone();
    RepMatrices::assemble(algebra.roots, RepKind::Adjoint, node, highest, weights, e, f)
}

fn unit(n: usize, i: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = sign;
    v
}

/// Structure constants `[E_α, E_β] = ε(α,β) E_{α+β}`, `[E_α, E_{−α}] = −α`,
/// `[h, E_α] = α(h) E_α` on a Cartan–root basis.
#[derive(Debug, Clone)]
pub struct AdjointAlgebra {
    roots: RootSystem,
    rank: usize,
    /// All roots in basis order (root coordinates); Cartan slots are `None`.
    basis: Vec<Option<Vec<i64>>>,
    weights: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    cartan_start: usize,
}

impl AdjointAlgebra {
    pub fn new(shape: &TShape) -> Result<Self> {
        let roots = finite_roots(shape)?;
        if !matches!(shape.classify(), DiagramType::Finite(_)) {
            return Err(Error::UnsupportedShape(shape.to_string()));
        }
        let rank = roots.rank();
        let positive = roots.positive_roots();
        let mut basis: Vec<Option<Vec<i64>>> = positive.iter().rev().cloned().map(Some).collect();
        let cartan_start = basis.len();
        basis.extend((0..rank).map(|_| None));
        basis.extend(positive.iter().map(|r| Some(r.iter().map(|x| -x).collect())));
        let weights = basis
            .iter()
            .map(|b| match b {
                Some(r) => roots.cartan().to_labels(r),
                None => vec![0; rank],
            })
            .collect();
        let index = basis.iter().enumerate().filter_map(|(k, b)| b.clone().map(|r| (r, k))).collect();
        Ok(AdjointAlgebra { roots, rank, basis, weights, index, cartan_start })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn root_index(&self, root: &[i64]) -> usize {
        self.index[root]
    }

    pub fn cartan_index(&self, i: usize) -> usize {
        self.cartan_start + i
    }

    fn epsilon(&self, a: &[i64], b: &[i64]) -> bool {
        let cartan = self.roots.cartan();
        let mut parity = 0i64;
        for i in 0..self.rank {
            for j in i..self.rank {
                if i == j || cartan.get(i, j) % 2 != 0 {
                    parity += a[i] * b[j];
                }
            }
        }
        parity.rem_euclid(2) == 1
    }

    /// `[x_a, x_b]` as a sparse combination of basis vectors.
    pub fn bracket(&self, a: usize, b: usize) -> Vec<(usize, Coeff)> {
        match (&self.basis[a], &self.basis[b]) {
            (None, None) => vec![],
            (None, Some(beta)) => {
                let i = a - self.cartan_start;
                let c = self.roots.cartan().pairing(i, beta);
                if c == 0 { vec![] } else { vec![(b, int(c))] }
            }
            (Some(gamma), None) => {
                let i = b - self.cartan_start;
                let c = -self.roots.cartan().pairing(i, gamma);
                if c == 0 { vec![] } else { vec![(a, int(c))] }
            }
            (Some(gamma), Some(beta)) => {
                let sum: Vec<i64> = gamma.iter().zip(beta).map(|(x, y)| x + y).collect();
                if sum.iter().all(|&x| x == 0) {
                    gamma
                        .iter()
                        .enumerate()
                        .filter(|(_, &g)| g != 0)
                        .map(|(i, &g)| (self.cartan_start + i, int(-g)))
                        .collect()
                } else if let Some(&k) = self.index.get(&sum) {
                    let sign = if self.epsilon(gamma, beta) { -1 } else { 1 };
                    vec![(k, int(sign))]
                } else {
                    vec![]
                }
            }
        }
    }

    /// The matrix of `ad(x_a)`.
    pub fn ad(&self, a: usize) -> RepMatrix {
        let mut out = RepMatrix::zero(self.dim());
        for b in 0..self.dim() {
            for (k, c) in self.bracket(a, b) {
                out.add_entry(k, b, c);
            }
        }
        out
    }

    /// Verifies `ad [x_a, x_b] = [ad x_a, ad x_b]` on every pair of basis
    /// vectors, which is the Jacobi identity.
    pub fn check_jacobi(&self) -> Result<()> {
        let ads: Vec<RepMatrix> = (0..self.dim()).map(|a| self.ad(a)).collect();
        for a in 0..self.dim() {
            for b in a + 1..self.dim() {
                let mut lhs = RepMatrix::zero(self.dim());
                for (k, c) in self.bracket(a, b) {
                    lhs = lhs.add(&ads[k].scale(&c));
                }
                if lhs != ads[a].commutator(&ads[b]) {
                    return Err(Error::Inconsistent(format!("Jacobi identity fails at ({a}, {b})")));
                }
            }
        }
        Ok(())
    }
}

/// `E6` in the shape conventions of this crate.
pub fn is_e6(shape: &TShape) -> bool {
    shape.classify() == DiagramType::Finite(DynkinName::E6)
}
