use super::{twist_sum, vsub, GradedComplex};
use crate::error::{Error, Result};
use crate::polyalg::{combinations, complement, graded_solve, shuffle_sign, Budget, MultiPoly, PolyMatrix};

/// Buchsbaum–Eisenbud multipliers, stored as column vectors indexed by
/// lexicographically ordered subsets: `a3` by `f3`-subsets of `F2`, `a2` by
/// `r2`-subsets of `F1`, `a1` by `r1`-subsets of `F0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multipliers {
    pub a3: PolyMatrix,
    pub a2: PolyMatrix,
    pub a1: PolyMatrix,
}

impl Multipliers {
    /// `a1` as a single polynomial when `r1 = f0`.
    pub fn a1_scalar(&self) -> Option<&MultiPoly> {
        (self.a1.rows() == 1).then(|| self.a1.get(0, 0))
    }
}

/// The row vector of `−∧v : Λ^k F → Λ^n F`, where `v` is indexed by the
/// `(n−k)`-subsets of an `n`-element basis: entry `S` is
/// `sign(S, Sᶜ) · v_{Sᶜ}`.
pub fn wedge_with(v: &PolyMatrix, n: usize, k: usize) -> PolyMatrix {
    let subsets = combinations(n, k);
    let index = combinations(n, n - k);
    let mut out = PolyMatrix::zeros(v.nvars(), 1, subsets.len());
    for (col, s) in subsets.iter().enumerate() {
        let c = complement(n, s);
        let pos = index.iter().position(|u| *u == c).expect("complement is a subset of the right size");
        let entry = v.get(pos, 0);
        out.set(0, col, if shuffle_sign(s) > 0 { entry.clone() } else { -entry });
    }
    out
}

/// Exterior power matrix `Λ^k d` with rows and columns in lexicographic
/// subset order and summed twists.
fn exterior_power(d: &PolyMatrix, k: usize, dim: usize) -> Result<PolyMatrix> {
    let rows = combinations(d.rows(), k);
    let cols = combinations(d.cols(), k);
    let mut out = PolyMatrix::zeros(d.nvars(), rows.len(), cols.len());
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            out.set(i, j, d.minor(r, c));
        }
    }
    out.with_twists(
        rows.iter().map(|r| twist_sum(d.row_twists(), r, dim)).collect(),
        cols.iter().map(|c| twist_sum(d.col_twists(), c, dim)).collect(),
    )
}

/// Solves `target = x · row` for a column vector `x`, given a nonzero row
/// vector; the solution is unique in every graded slice.
fn factor_through_row(target: &PolyMatrix, row: &PolyMatrix, c: &GradedComplex, budget: &Budget) -> Result<PolyMatrix> {
    if row.is_zero() {
        return Err(Error::NoSolution);
    }
    let sol = graded_solve(&row.transpose(), &target.transpose(), c.grading(), &budget.solve)?;
    if sol.kernel_dim != 0 {
        return Err(Error::Inconsistent(format!("multiplier is not unique ({} free parameters)", sol.kernel_dim)));
    }
    let x = sol.x.transpose();
    if x.try_mul(row)? != *target {
        return Err(Error::NoSolution);
    }
    Ok(x)
}

/// The multipliers `a3 = Λ^{r3}d3`, `a2`, `a1` of an acyclic complex.
pub fn be_multipliers(c: &GradedComplex, budget: &Budget) -> Result<Multipliers> {
    let [f0, f1, f2, f3] = c.format();
    let [r1, r2, _] = c
        .expected_ranks()
        .ok_or_else(|| Error::MalformedFormat(format!("{:?} admits no acyclic complex", c.format())))?;
    let dim = c.grading().dim();
    let s2_total = twist_sum(c.twists(2), &(0..f2).collect::<Vec<_>>(), dim);
    let s3_total = twist_sum(c.twists(3), &(0..f3).collect::<Vec<_>>(), dim);
    let s1_total = twist_sum(c.twists(1), &(0..f1).collect::<Vec<_>>(), dim);

    let a3 = exterior_power(c.d3(), f3, dim)?;
    let a3 = if f3 == 0 {
        a3.with_twists(vec![vec![0; dim]], vec![vec![0; dim]])?
    } else {
        a3
    };
    let mut wedge3 = wedge_with(&a3, f2, r2);
    wedge3 = wedge3.with_twists(
        vec![vsub(&s2_total, &s3_total)],
        combinations(f2, r2).iter().map(|t| twist_sum(c.twists(2), t, dim)).collect(),
    )?;
    let l2 = exterior_power(c.d2(), r2, dim)?;
    let a2 = factor_through_row(&l2, &wedge3, c, budget)?;

    let m_twist = vsub(&s1_total, &vsub(&s2_total, &s3_total));
    let wedge2 = wedge_with(&a2, f1, r1).with_twists(
        vec![m_twist],
        combinations(f1, r1).iter().map(|s| twist_sum(c.twists(1), s, dim)).collect(),
    )?;
    let l1 = exterior_power(c.d1(), r1, dim)?;
    let a1 = factor_through_row(&l1, &wedge2, c, budget)?;
    debug_assert_eq!(a1.rows(), combinations(f0, r1).len());
    if a1.entries().iter().all(|p| p.is_zero()) && !l1.entries().iter().all(|p| p.is_zero()) {
        return Err(Error::NoSolution);
    }
    Ok(Multipliers { a3, a2, a1 })
}
