//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use dynres_core::polyalg::{combinations, Coeff, MultiPoly, PolyMatrix};
use dynres_core::weyl::{WeylElement, WeylGroup};
use dynres_core::RootSystem;
use num_rational::Rational64;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Weight multiplicities by Freudenthal's formula over every weight, not
/// just dominant ones.
pub struct Freudenthal {
    cartan: Vec<Vec<i64>>,
    mults: HashMap<Vec<i64>, u64>,
    support: Vec<Vec<i64>>,
}

impl Freudenthal {
    pub fn new(roots: &RootSystem, highest: &[i64]) -> Self {
        let cartan = roots.cartan();
        let rows: Vec<Vec<i64>> = cartan.rows().to_vec();
        let inv = cartan.inverse().unwrap();
        let n = highest.len();
        let form = |a: &[i64], b: &[i64]| -> Rational64 {
            let mut s = Rational64::from_integer(0);
            for i in 0..n {
                for j in 0..n {
                    s += inv[i][j] * (a[i] * b[j]);
                }
            }
            s
        };
        let shift = |a: &[i64]| a.iter().map(|x| x + 1).collect::<Vec<_>>();
        let positive: Vec<(Vec<i64>, i64)> =
            roots.positive_roots().iter().map(|r| (cartan.to_labels(r), r.iter().sum())).collect();
        let top = form(&shift(highest), &shift(highest));

        let mut visited: HashSet<Vec<i64>> = HashSet::from([highest.to_vec()]);
        let mut mults: HashMap<Vec<i64>, u64> = HashMap::from([(highest.to_vec(), 1)]);
        let mut layer = vec![highest.to_vec()];
        let mut depth = 0;
        while !layer.is_empty() {
            depth += 1;
            let mut candidates: Vec<Vec<i64>> = Vec::new();
            for mu in &layer {
                for row in &rows {
                    let nu: Vec<i64> = mu.iter().zip(row).map(|(a, b)| a - b).collect();
                    if !visited.contains(&nu) && !candidates.contains(&nu) {
                        candidates.push(nu);
                    }
                }
            }
            let mut next = Vec::new();
            for nu in candidates {
                let mut sum = Rational64::from_integer(0);
                for (alpha, height) in &positive {
                    let mut k = 1;
                    while depth - k * height >= 0 {
                        let up: Vec<i64> = nu.iter().zip(alpha).map(|(a, b)| a + k * b).collect();
                        if let Some(&m) = mults.get(&up) {
                            sum += form(&up, alpha) * (m as i64);
                        }
                        k += 1;
                    }
                }
                // Weights other than the highest satisfy |ν+ρ| < |λ+ρ|.
                let gap = top - form(&shift(&nu), &shift(&nu));
                let m = if gap > Rational64::from_integer(0) { sum * 2 / gap } else { Rational64::from_integer(0) };
                assert!(m.is_integer() && *m.numer() >= 0);
                visited.insert(nu.clone());
                if *m.numer() > 0 {
                    mults.insert(nu.clone(), *m.numer() as u64);
                    next.push(nu);
                }
            }
            layer = next;
        }
        let mut support: Vec<Vec<i64>> = mults.keys().cloned().collect();
        support.sort();
        Freudenthal { cartan: rows, mults, support }
    }

    pub fn get(&self, w: &[i64]) -> u64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> u64 {
        self.mults.values().sum()
    }

    pub fn support(&self) -> &[Vec<i64>] {
        &self.support
    }

    pub fn reflect(&self, i: usize, w: &[i64]) -> Vec<i64> {
        let c = w[i];
        w.iter().zip(&self.cartan[i]).map(|(a, b)| a - c * b).collect()
    }
}

/// Sign of the permutation sorting `v`, or zero on a repeat.
pub fn sort_sign(v: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] == v[j] {
                return 0;
            }
            if v[i] > v[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Multiplication into `Λ^k k^n` in the basis of sorted subsets, with one
/// column per listed pair of basis elements.
pub fn wedge_matrix(n: usize, k: usize, pairs: &[(Vec<usize>, Vec<usize>)]) -> Vec<Vec<Coeff>> {
    let target = combinations(n, k);
    let mut out = vec![vec![Coeff::zero(); pairs.len()]; target.len()];
    for (col, (s, t)) in pairs.iter().enumerate() {
        let joined: Vec<usize> = s.iter().chain(t).copied().collect();
        let sign = sort_sign(&joined);
        if sign == 0 {
            continue;
        }
        let mut sorted = joined;
        sorted.sort();
        let row = target.iter().position(|x| *x == sorted).unwrap();
        out[row][col] = Coeff::from_integer(sign.into());
    }
    out
}

pub fn scaled(m: &[Vec<Coeff>], c: &Coeff) -> Vec<Vec<Coeff>> {
    m.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

/// `u1` with entries that are random affine-linear forms.
pub fn random_u1(rng: &mut ChaCha8Rng, nvars: usize, rows: usize, cols: usize) -> PolyMatrix {
    let mut u = PolyMatrix::zeros(nvars, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let mut p = MultiPoly::from_int(nvars, rng.gen_range(-3..=3));
            for v in 0..nvars {
                let c = rng.gen_range(-2..=2);
                if c != 0 {
                    p = &p + &MultiPoly::var(nvars, v).scale(&Coeff::from_integer(c.into()));
                }
            }
            u.set(i, j, p);
        }
    }
    u
}

/// Every element of a finite Weyl group, by breadth-first search.
pub fn all_elements(group: &WeylGroup) -> Vec<WeylElement> {
    let mut elements = vec![group.identity()];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([group.identity().rho_image().to_vec()]);
    let mut frontier = elements.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..group.rank() {
                let mut word = w.word().to_vec();
                word.push(i);
                let v = group.element(&word).unwrap();
                if seen.insert(v.rho_image().to_vec()) {
                    next.push(v);
                }
            }
        }
        elements.extend(next.iter().cloned());
        frontier = next;
    }
    elements
}

/// `below[a][b]` iff some subword of the reduced word of `b` multiplies to `a`.
pub fn subword_order(group: &WeylGroup, elements: &[WeylElement]) -> Vec<Vec<bool>> {
    let key: HashMap<Vec<i64>, usize> =
        elements.iter().enumerate().map(|(k, w)| (w.rho_image().to_vec(), k)).collect();
    let n = elements.len();
    let mut below = vec![vec![false; n]; n];
    for (k, w) in elements.iter().enumerate() {
        let word = w.word();
        for mask in 0u32..(1 << word.len()) {
            let sub: Vec<usize> = (0..word.len()).filter(|b| mask & (1 << b) != 0).map(|b| word[b]).collect();
            let u = group.element(&sub).unwrap();
            below[key[u.rho_image()]][k] = true;
        }
    }
    below
}

/// Triangular with unit diagonal, and inverted by negating the variables.
pub fn is_unipotent(m: &PolyMatrix) -> bool {
    let n = m.rows();
    let one = MultiPoly::one(m.nvars());
    let upper = (0..n).all(|i| (0..i).all(|j| m.get(i, j).is_zero()));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| m.get(i, j).is_zero()));
    let negated: Vec<MultiPoly> = (0..m.nvars()).map(|i| -&MultiPoly::var(m.nvars(), i)).collect();
    let inverse = m.substitute(&negated).unwrap();
    (upper || lower)
        && (0..n).all(|i| m.get(i, i) == &one)
        && m.try_mul(&inverse).unwrap() == PolyMatrix::identity(m.nvars(), n)
}
