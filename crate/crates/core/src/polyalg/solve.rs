use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::matrix::PolyMatrix;
use super::poly::{Coeff, Grading, Monomial, MultiPoly};
use crate::error::{Error, Result};

/// Limits for a graded linear solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveBudget {
    /// Largest admissible value of the positive functional (sum of degree
    /// components) on an unknown entry.
    pub max_degree: i64,
    /// Largest number of scalar unknowns in one system.
    pub max_unknowns: usize,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget { max_degree: 64, max_unknowns: 200_000 }
    }
}

/// Result of `graded_solve`: a particular solution with all free scalar
/// unknowns set to zero, and the dimension of the homogeneous kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSolution {
    pub x: PolyMatrix,
    pub kernel_dim: usize,
}

fn functional(v: &[i64]) -> i64 {
    v.iter().sum()
}

/// All monomials of multidegree `target` in a positively graded ring.
pub fn monomials_of_degree(grading: &Grading, target: &[i64], max_degree: i64) -> Result<Vec<Monomial>> {
    let n = grading.nvars();
    let dim = grading.dim();
    if target.len() != dim {
        return Err(Error::DimensionMismatch(format!("degree {target:?} in a {dim}-dimensional grading")));
    }
    let phi: Vec<i64> = grading.weights().iter().map(|w| functional(w)).collect();
    if phi.iter().any(|&x| x <= 0) {
        return Err(Error::NonHomogeneous("grading is not positive".into()));
    }
    let total = functional(target);
    if total < 0 {
        return Ok(Vec::new());
    }
    if total > max_degree {
        return Err(Error::DegreeBudgetExceeded(total as usize));
    }
    // suffix_sign[i][k]: sign pattern of component k among variables i..n
    let mut nonneg = vec![vec![true; dim]; n + 1];
    let mut allzero = vec![vec![true; dim]; n + 1];
    for i in (0..n).rev() {
        for k in 0..dim {
            let w = grading.weight(i)[k];
            nonneg[i][k] = nonneg[i + 1][k] && w >= 0;
            allzero[i][k] = allzero[i + 1][k] && w == 0;
        }
    }
    let mut out = Vec::new();
    let mut expo = vec![0u32; n];
    let mut rem = target.to_vec();
    enumerate(0, &mut expo, &mut rem, grading, &phi, &nonneg, &allzero, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    i: usize,
    expo: &mut Vec<u32>,
    rem: &mut Vec<i64>,
    grading: &Grading,
    phi: &[i64],
    nonneg: &[Vec<bool>],
    allzero: &[Vec<bool>],
    out: &mut Vec<Monomial>,
) {
    for k in 0..rem.len() {
        if (nonneg[i][k] && rem[k] < 0) || (allzero[i][k] && rem[k] != 0) {
            return;
        }
    }
    if i == expo.len() {
        if rem.iter().all(|&x| x == 0) {
            out.push(Monomial(expo.clone()));
        }
        return;
    }
    let w = grading.weight(i);
    let max_e = functional(rem) / phi[i];
    for e in 0..=max_e {
        expo[i] = e as u32;
        enumerate(i + 1, expo, rem, grading, phi, nonneg, allzero, out);
        for (r, wk) in rem.iter_mut().zip(w) {
            *r -= wk;
        }
    }
    for (r, wk) in rem.iter_mut().zip(w) {
        *r += wk * (max_e + 1);
    }
    expo[i] = 0;
}

/// Sparse exact linear system over the rationals.
#[derive(Debug, Default)]
pub struct SparseSystem {
    nunknowns: usize,
    pivots: BTreeMap<usize, (BTreeMap<usize, Coeff>, Coeff)>,
    inconsistent: bool,
}

impl SparseSystem {
    pub fn new(nunknowns: usize) -> Self {
        SparseSystem { nunknowns, pivots: BTreeMap::new(), inconsistent: false }
    }

    /// Adds the equation `Σ row[k] x_k = rhs`.
    pub fn push(&mut self, mut row: BTreeMap<usize, Coeff>, mut rhs: Coeff) {
        row.retain(|_, c| !c.is_zero());
        while let Some((&col, _)) = row.iter().next() {
            match self.pivots.get(&col) {
                Some((prow, prhs)) => {
                    let f = row.remove(&col).expect("present");
                    for (k, c) in prow.iter().skip(1) {
                        let entry = row.entry(*k).or_insert_with(Coeff::zero);
                        *entry -= &f * c;
                        if entry.is_zero() {
                            row.remove(k);
                        }
                    }
                    rhs -= &f * prhs;
                }
                None => {
                    let inv = row[&col].recip();
                    for c in row.values_mut() {
                        *c *= &inv;
                    }
                    rhs *= inv;
                    self.pivots.insert(col, (row, rhs));
                    return;
                }
            }
        }
        if !rhs.is_zero() {
            self.inconsistent = true;
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// Solution with free unknowns set to zero.
    pub fn solve(&self) -> Result<Vec<Coeff>> {
        if self.inconsistent {
            return Err(Error::NoSolution);
        }
        let mut x = vec![Coeff::zero(); self.nunknowns];
        for (&col, (row, rhs)) in self.pivots.iter().rev() {
            let mut v = rhs.clone();
            for (k, c) in row.iter().skip(1) {
                if !x[*k].is_zero() {
                    v -= c * &x[*k];
                }
            }
            x[col] = v;
        }
        Ok(x)
    }
}

/// Solves `A·X = B` for homogeneous `X`, one column of `B` at a time.
///
/// The unknown entry `X[j][c]` has degree `twist(B col c) - twist(A col j)`.
pub fn graded_solve(a: &PolyMatrix, b: &PolyMatrix, grading: &Grading, budget: &SolveBudget) -> Result<GradedSolution> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "A has {} rows but B has {}",
            a.rows(),
            b.rows()
        )));
    }
    if a.nvars() != b.nvars() || grading.nvars() != a.nvars() {
        return Err(Error::VariableMismatch(a.nvars(), b.nvars()));
    }
    let nv = a.nvars();
    let mut x = PolyMatrix::zeros(nv, a.cols(), b.cols())
        .with_twists(a.col_twists().to_vec(), b.col_twists().to_vec())?;
    let mut kernel_dim = 0;
    for c in 0..b.cols() {
        let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
        for j in 0..a.cols() {
            let deg: Vec<i64> = b.col_twists()[c].iter().zip(&a.col_twists()[j]).map(|(p, q)| p - q).collect();
            for m in monomials_of_degree(grading, &deg, budget.max_degree)? {
                unknowns.push((j, m));
            }
            if unknowns.len() > budget.max_unknowns {
                return Err(Error::DegreeBudgetExceeded(unknowns.len()));
            }
        }
        let mut equations: HashMap<(usize, Monomial), BTreeMap<usize, Coeff>> = HashMap::new();
        for (u, (j, m)) in unknowns.iter().enumerate() {
            for i in 0..a.rows() {
                for (am, ac) in a.get(i, *j).terms() {
                    let eq = equations.entry((i, am.mul(m))).or_default();
                    let entry = eq.entry(u).or_insert_with(Coeff::zero);
                    *entry += ac;
                }
            }
        }
        let mut keys: Vec<(usize, Monomial)> = equations.keys().cloned().collect();
        for i in 0..b.rows() {
            for (bm, _) in b.get(i, c).terms() {
                let k = (i, bm.clone());
                if !equations.contains_key(&k) {
                    keys.push(k);
                }
            }
        }
        keys.sort();
        let mut system = SparseSystem::new(unknowns.len());
        for key in keys {
            let row = equations.remove(&key).unwrap_or_default();
            let rhs = b.get(key.0, c).coeff(&key.1);
            system.push(row, rhs);
            if !system.is_consistent() {
                return Err(Error::NoSolution);
            }
        }
        let values = system.solve()?;
        kernel_dim += unknowns.len() - system.rank();
        let mut cols: Vec<MultiPoly> = vec![MultiPoly::zero(nv); a.cols()];
        for ((j, m), v) in unknowns.into_iter().zip(values) {
            cols[j].add_term(m, v);
        }
        for (j, p) in cols.into_iter().enumerate() {
            x.set(j, c, p);
        }
    }
    Ok(GradedSolution { x, kernel_dim })
}

/// Solves a rational linear system `M x = v` (free unknowns zero).
pub fn solve_rational(m: &[Vec<Coeff>], v: &[Coeff]) -> Result<Vec<Coeff>> {
    let n = m.first().map_or(0, Vec::len);
    let mut sys = SparseSystem::new(n);
    for (row, rhs) in m.iter().zip(v) {
        let r: BTreeMap<usize, Coeff> = row.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        sys.push(r, rhs.clone());
    }
    sys.solve()
}

/// Basis of the right kernel of a rational matrix with `ncols` columns.
pub fn kernel_basis(m: &[Vec<Coeff>], ncols: usize) -> Vec<Vec<Coeff>> {
    let mut sys = SparseSystem::new(ncols);
    for row in m {
        let r: BTreeMap<usize, Coeff> = row.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        sys.push(r, Coeff::zero());
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !sys.pivots.contains_key(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Coeff::zero(); ncols];
            x[f] = Coeff::one();
            for (&col, (row, _)) in sys.pivots.iter().rev() {
                let mut v = Coeff::zero();
                for (k, c) in row.iter().skip(1) {
                    if !x[*k].is_zero() {
                        v -= c * &x[*k];
                    }
                }
                x[col] = v;
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly::int;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn monomial_counts() {
        let g = Grading::standard(3);
        assert_eq!(monomials_of_degree(&g, &[2], 10).unwrap().len(), 6);
        assert_eq!(monomials_of_degree(&g, &[0], 10).unwrap().len(), 1);
        assert!(monomials_of_degree(&g, &[-1], 10).unwrap().is_empty());
        assert_eq!(monomials_of_degree(&g, &[11], 10), Err(Error::DegreeBudgetExceeded(11)));
        let fine = Grading::new(vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(monomials_of_degree(&fine, &[1, 1], 10).unwrap().len(), 2);
    }

    #[test]
    fn identity_solve() {
        let g = Grading::standard(3);
        let a = PolyMatrix::identity(3, 2).with_scalar_twists(&[0, 0], &[0, 0]).unwrap();
        let b = PolyMatrix::from_rows(3, vec![vec![p("x*y")], vec![p("z^2")]])
            .unwrap()
            .with_scalar_twists(&[0, 0], &[2])
            .unwrap();
        let s = graded_solve(&a, &b, &g, &SolveBudget::default()).unwrap();
        assert_eq!(s.x.get(0, 0), &p("x*y"));
        assert_eq!(s.kernel_dim, 0);
    }

    #[test]
    fn no_solution() {
        let g = Grading::standard(3);
        let a = PolyMatrix::zeros(3, 1, 1);
        let b = PolyMatrix::from_rows(3, vec![vec![p("1")]]).unwrap();
        assert_eq!(graded_solve(&a, &b, &g, &SolveBudget::default()), Err(Error::NoSolution));
    }

    #[test]
    fn rational_kernel() {
        let m = vec![vec![int(1), int(1), int(0)]];
        let k = kernel_basis(&m, 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert!((&v[0] + &v[1]).is_zero());
        }
    }
}
