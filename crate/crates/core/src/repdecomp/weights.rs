//! Weight multiplicities of irreducible highest-weight modules.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::lie_core::{reflect_weight, CartanMatrix, RootSystem};

/// The dominant conjugate of a weight.
pub fn dominant_conjugate(cartan: &CartanMatrix, labels: &[i64]) -> Vec<i64> {
    let mut v = labels.to_vec();
    while let Some(i) = v.iter().position(|&x| x < 0) {
        v = reflect_weight(cartan, &v, i);
    }
    v
}

/// The `W`-orbit of a weight, in breadth-first order from its dominant
/// conjugate.
pub fn weyl_orbit(cartan: &CartanMatrix, labels: &[i64]) -> Vec<Vec<i64>> {
    let start = dominant_conjugate(cartan, labels);
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::from([(start.clone(), ())]);
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for i in 0..v.len() {
            if v[i] > 0 {
                let w = reflect_weight(cartan, &v, i);
                if seen.insert(w.clone(), ()).is_none() {
                    out.push(w.clone());
                    queue.push_back(w);
                }
            }
        }
    }
    out
}

/// Multiplicities of the dominant weights of `L(λ)`.
#[derive(Debug, Clone)]
pub struct WeightMultiplicities {
    highest: Vec<i64>,
    dominant: BTreeMap<Vec<i64>, u64>,
    dimension: u64,
}

impl WeightMultiplicities {
    pub fn highest_weight(&self) -> &[i64] {
        &self.highest
    }

    /// Dominant weights with their multiplicities.
    pub fn dominant(&self) -> &BTreeMap<Vec<i64>, u64> {
        &self.dominant
    }

    pub fn dimension(&self) -> u64 {
        self.dimension
    }

    /// Multiplicity of an arbitrary weight (zero if it is not a weight).
    pub fn multiplicity(&self, cartan: &CartanMatrix, labels: &[i64]) -> u64 {
        self.dominant.get(&dominant_conjugate(cartan, labels)).copied().unwrap_or(0)
    }

    /// Every weight with its multiplicity; sized like the module's weight
    /// support, so only for moderate representations.
    pub fn full_map(&self, cartan: &CartanMatrix) -> BTreeMap<Vec<i64>, u64> {
        let mut out = BTreeMap::new();
        for (w, &m) in &self.dominant {
            for v in weyl_orbit(cartan, w) {
                out.insert(v, m);
            }
        }
        out
    }
}

/// Freudenthal's recursion, run over dominant weights only.
pub fn weight_multiplicities(roots: &RootSystem, highest: &[i64]) -> Result<WeightMultiplicities> {
    if highest.len() != roots.rank() {
        return Err(Error::DimensionMismatch(format!(
            "weight of length {} for rank {}",
            highest.len(),
            roots.rank()
        )));
    }
    if highest.iter().any(|&x| x < 0) {
        return Err(Error::NonDominantWeight(highest.to_vec()));
    }
    let cartan = roots.cartan();
    let pos_labels: Vec<Vec<i64>> = roots.positive_roots().iter().map(|r| cartan.to_labels(r)).collect();
    let heights: Vec<i64> = roots.positive_roots().iter().map(|r| r.iter().sum()).collect();

    // dominant weights below λ, by depth (height of λ − μ)
    let mut depth_of: HashMap<Vec<i64>, i64> = HashMap::from([(highest.to_vec(), 0)]);
    let mut queue = VecDeque::from([highest.to_vec()]);
    while let Some(mu) = queue.pop_front() {
        let d = depth_of[&mu];
        for (a, h) in pos_labels.iter().zip(&heights) {
            let nu: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x - y).collect();
            if nu.iter().all(|&x| x >= 0) && !depth_of.contains_key(&nu) {
                depth_of.insert(nu.clone(), d + h);
                queue.push_back(nu);
            }
        }
    }
    let mut order: Vec<(i64, Vec<i64>)> = depth_of.into_iter().map(|(w, d)| (d, w)).collect();
    order.sort();

    let rho = roots.rho();
    let shift = |w: &[i64]| -> Vec<i64> { w.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let lam_rho = shift(highest);
    let top = roots.scaled_form(&lam_rho, &lam_rho);

    let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    let lookup = |m: &BTreeMap<Vec<i64>, u64>, v: &[i64]| m.get(&dominant_conjugate(cartan, v)).copied().unwrap_or(0);
    for (_, mu) in order {
        if mu == highest {
            mult.insert(mu, 1);
            continue;
        }
        let mu_rho = shift(&mu);
        let denom = top - roots.scaled_form(&mu_rho, &mu_rho);
        let mut numer: i64 = 0;
        for a in &pos_labels {
            let mut k = 1;
            loop {
                let v: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x + k * y).collect();
                let m = lookup(&mult, &v);
                if m == 0 {
                    break;
                }
                numer += 2 * roots.scaled_form(&v, a) * m as i64;
                k += 1;
            }
        }
        if denom <= 0 || numer % denom != 0 {
            return Err(Error::Inconsistent(format!("Freudenthal step at {mu:?}: {numer}/{denom}")));
        }
        let m = numer / denom;
        if m > 0 {
            mult.insert(mu, m as u64);
        }
    }
    let mut dimension = 0u64;
    for (w, m) in &mult {
        dimension += m * weyl_orbit(cartan, w).len() as u64;
    }
    Ok(WeightMultiplicities { highest: highest.to_vec(), dominant: mult, dimension })
}

/// Weyl's dimension formula.
pub fn weyl_dimension(roots: &RootSystem, highest: &[i64]) -> Result<u64> {
    let cartan = roots.cartan();
    let rho = roots.rho();
    let lam_rho: Vec<i64> = highest.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut value = BigRational::one();
    for r in roots.positive_roots() {
        let a = cartan.to_labels(r);
        let num = roots.scaled_form(&lam_rho, &a);
        let den = roots.scaled_form(&rho, &a);
        value *= BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    value
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Inconsistent("dimension does not fit in 64 bits".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{Node, TShape};

    fn roots(p: usize, q: usize, r: usize) -> RootSystem {
        RootSystem::new(&TShape::new(p, q, r).unwrap()).unwrap()
    }

    #[test]
    fn e6_adjoint() {
        let rs = roots(2, 3, 3);
        let x1 = rs.shape().node_index(Node::X(1)).unwrap();
        let wm = weight_multiplicities(&rs, &rs.fundamental_labels(x1)).unwrap();
        assert_eq!(wm.dimension(), 78);
        assert_eq!(wm.dominant()[&vec![0; 6]], 6);
        assert_eq!(weyl_dimension(&rs, &rs.fundamental_labels(x1)).unwrap(), 78);
    }

    #[test]
    fn d5_half_spinor() {
        let rs = roots(2, 3, 2);
        let x1 = rs.shape().node_index(Node::X(1)).unwrap();
        let wm = weight_multiplicities(&rs, &rs.fundamental_labels(x1)).unwrap();
        assert_eq!(wm.dimension(), 16);
        assert!(wm.dominant().values().all(|&m| m == 1));
    }

    #[test]
    fn a2_defining() {
        let rs = roots(1, 2, 1);
        let wm = weight_multiplicities(&rs, &[1, 0]).unwrap();
        assert_eq!(wm.dimension(), 3);
        assert!(matches!(weight_multiplicities(&rs, &[-1, 0]), Err(Error::NonDominantWeight(_))));
    }

    #[test]
    fn e8_short_arm() {
        let rs = roots(2, 3, 5);
        let x1 = rs.shape().node_index(Node::X(1)).unwrap();
        let w = rs.fundamental_labels(x1);
        assert_eq!(weyl_dimension(&rs, &w).unwrap(), 147_250);
        assert_eq!(weight_multiplicities(&rs, &w).unwrap().dimension(), 147_250);
    }
}
