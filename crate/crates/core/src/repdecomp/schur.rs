//! Partitions, Schur-functor dimensions and Kostka numbers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not a partition")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1^k)`, the shape of `Λ^k`.
    pub fn column(k: u32) -> Self {
        Partition(vec![1; k as usize])
    }

    /// `(k)`, the shape of `S^k`.
    pub fn row(k: u32) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition(vec![k])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.0.first().copied().unwrap_or(0);
        Partition((1..=w).map(|c| self.0.iter().filter(|&&r| r >= c).count() as u32).collect())
    }

    /// Dominance order on partitions of equal size.
    pub fn dominates(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0u32, 0u32);
        let n = self.len().max(other.len());
        for k in 0..n {
            a += self.0.get(k).copied().unwrap_or(0);
            b += other.0.get(k).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        a == b
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Describes `S_λ F` the way it is usually written: `F`, `Λ^k F`, `S^k F`
/// or `S_{λ}F`.
pub fn schur_functor_name(p: &Partition, space: &str) -> String {
    if p.is_empty() {
        return "R".to_string();
    }
    if p.parts() == [1] {
        return space.to_string();
    }
    if p.parts().iter().all(|&x| x == 1) {
        return format!("Λ^{}{space}", p.len());
    }
    if p.len() == 1 {
        return format!("S^{}{space}", p.parts()[0]);
    }
    let parts: Vec<String> = p.parts().iter().map(u32::to_string).collect();
    format!("S_{{{}}}{space}", parts.join(","))
}

/// `dim S_λ(k^n)` by the hook-content formula.
pub fn schur_dimension(p: &Partition, n: usize) -> Result<u64> {
    if p.len() > n {
        return Err(Error::TooManyRows(n));
    }
    let conj = p.conjugate();
    let mut value = BigRational::one();
    for (i, &row) in p.parts().iter().enumerate() {
        for j in 0..row as usize {
            let content = j as i64 - i as i64;
            let hook = (row as i64 - j as i64) + (conj.parts()[j] as i64 - i as i64) - 1;
            value *= BigRational::new(BigInt::from(n as i64 + content), BigInt::from(hook));
        }
    }
    debug_assert!(value.is_integer());
    value.to_integer().to_u64().ok_or_else(|| Error::Inconsistent("Schur dimension overflow".into()))
}

/// Kostka numbers `K_{λ,ν}` (semistandard tableaux of shape `λ` and content
/// `ν`), memoised.
#[derive(Debug, Default)]
pub struct KostkaTable {
    memo: HashMap<(Vec<u32>, Vec<u32>), u64>,
}

impl KostkaTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Content may be any composition; Kostka numbers are symmetric in it.
    pub fn kostka(&mut self, shape: &Partition, content: &[u32]) -> u64 {
        let mut c: Vec<u32> = content.iter().copied().filter(|&x| x > 0).collect();
        c.sort_unstable_by(|a, b| b.cmp(a));
        if shape.size() != c.iter().sum::<u32>() {
            return 0;
        }
        self.rec(shape.parts().to_vec(), c)
    }

    fn rec(&mut self, shape: Vec<u32>, content: Vec<u32>) -> u64 {
        if content.is_empty() {
            return u64::from(shape.iter().all(|&x| x == 0));
        }
        if shape.iter().filter(|&&x| x > 0).count() > content.len() {
            return 0;
        }
        let key = (shape.clone(), content.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        // remove a horizontal strip of size content.last() filled with the largest letter
        let k = *content.last().expect("nonempty");
        let rest = content[..content.len() - 1].to_vec();
        let mut total = 0u64;
        let mut inner = shape.clone();
        strips(&shape, 0, k, &mut inner, &mut |sub: &[u32]| {
            let mut s = sub.to_vec();
            while s.last() == Some(&0) {
                s.pop();
            }
            total = total.checked_add(self.rec(s, rest.clone())).expect("Kostka number overflow");
        });
        self.memo.insert(key, total);
        total
    }
}

/// Enumerates `μ ⊆ λ` with `λ/μ` a horizontal strip of size `k`.
fn strips(outer: &[u32], row: usize, k: u32, inner: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if row == outer.len() {
        if k == 0 {
            visit(inner);
        }
        return;
    }
    let below = outer.get(row + 1).copied().unwrap_or(0);
    let max_remove = (outer[row] - below).min(k);
    for r in 0..=max_remove {
        inner[row] = outer[row] - r;
        strips(outer, row + 1, k - r, inner, visit);
    }
    inner[row] = outer[row];
}

/// Multiset of degrees of a weight basis of `S_λ F` when the basis of `F`
/// has degrees `degrees`.
pub fn schur_degrees(p: &Partition, degrees: &[i64], kostka: &mut KostkaTable) -> Result<BTreeMap<i64, u64>> {
    let n = degrees.len();
    if p.len() > n {
        return Err(Error::TooManyRows(n));
    }
    let mut out = BTreeMap::new();
    let mut comp = vec![0u32; n];
    compositions(p.size(), 0, &mut comp, &mut |c| {
        let k = kostka.kostka(p, c);
        if k > 0 {
            let d: i64 = c.iter().zip(degrees).map(|(&a, &s)| a as i64 * s).sum();
            *out.entry(d).or_insert(0) += k;
        }
    });
    Ok(out)
}

fn compositions(remaining: u32, i: usize, comp: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if i + 1 == comp.len() {
        comp[i] = remaining;
        visit(comp);
        return;
    }
    if comp.is_empty() {
        if remaining == 0 {
            visit(comp);
        }
        return;
    }
    for a in 0..=remaining {
        comp[i] = a;
        compositions(remaining - a, i + 1, comp, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(schur_dimension(&Partition::column(3), 5).unwrap(), 10);
        assert_eq!(schur_dimension(&Partition::row(2), 2).unwrap(), 3);
        assert_eq!(schur_dimension(&part(&[2, 1, 1, 1]), 5).unwrap(), 24);
        assert_eq!(schur_dimension(&part(&[2, 2, 1, 1, 1]), 5).unwrap(), 10);
        assert_eq!(schur_dimension(&part(&[2, 1]), 2).unwrap(), 2);
        assert_eq!(schur_dimension(&part(&[1, 1, 1]), 2), Err(Error::TooManyRows(2)));
    }

    #[test]
    fn kostka_small() {
        let mut k = KostkaTable::new();
        assert_eq!(k.kostka(&part(&[2, 1]), &[1, 1, 1]), 2);
        assert_eq!(k.kostka(&part(&[3]), &[1, 1, 1]), 1);
        assert_eq!(k.kostka(&part(&[2, 2]), &[2, 1, 1]), 1);
        assert_eq!(k.kostka(&part(&[2, 2]), &[3, 1]), 0);
    }

    #[test]
    fn degrees_of_exterior_cube() {
        let mut k = KostkaTable::new();
        let d = schur_degrees(&Partition::column(3), &[1, 1, 1], &mut k).unwrap();
        assert_eq!(d, BTreeMap::from([(3, 1)]));
        let d = schur_degrees(&Partition::row(2), &[1, 2], &mut k).unwrap();
        assert_eq!(d, BTreeMap::from([(2, 1), (3, 1), (4, 1)]));
    }

    #[test]
    fn conjugates_and_dominance() {
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert!(part(&[3, 1]).dominates(&part(&[2, 2])));
        assert!(!part(&[2, 2]).dominates(&part(&[3, 1])));
    }

    #[test]
    fn names() {
        assert_eq!(schur_functor_name(&Partition::column(3), "F1"), "Λ^3F1");
        assert_eq!(schur_functor_name(&part(&[1]), "F3*"), "F3*");
        assert_eq!(schur_functor_name(&part(&[2, 1]), "F3*"), "S_{2,1}F3*");
    }
}
