use num_traits::Zero;

use super::multipliers::{be_multipliers, wedge_with, Multipliers};
use super::{twist_sum, vadd, vsub, GradedComplex};
use crate::error::{Error, Result};
use crate::lie_core::Format;
use crate::polyalg::{graded_solve, Budget, Coeff, Grading, MultiPoly, PolyMatrix};

/// The first higher structure maps of a complex with `f0 = 1`.
///
/// `w3_1` has one column per pair `i < j` of basis vectors of `F1` (see
/// [`product_pairs`]) and values in `F2`; `w2_1` has one column per pair
/// `(i, k)` with `i` indexing `F1` and `k` indexing `F2`, column
/// `i·f2 + k`, and values in `F3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureMaps {
    pub w3_1: PolyMatrix,
    pub w2_1: PolyMatrix,
}

/// Basis of `Λ²F1`: pairs `i < j` in lexicographic order.
pub fn product_pairs(f1: usize) -> Vec<(usize, usize)> {
    (0..f1).flat_map(|i| (i + 1..f1).map(move |j| (i, j))).collect()
}

fn require_cyclic(c: &GradedComplex) -> Result<()> {
    if c.format()[0] != 1 || c.expected_ranks().map(|r| r[0]) != Some(1) {
        return Err(Error::UnsupportedF0(c.format()));
    }
    Ok(())
}

/// `β : M*⊗F1 → R`, the first factor of `d1 = a1 ∘ β`, as a `1 × f1` row.
pub fn beta(c: &GradedComplex, m: &Multipliers) -> Result<PolyMatrix> {
    require_cyclic(c)?;
    let [_, f1, f2, f3] = c.format();
    let dim = c.grading().dim();
    let s1 = twist_sum(c.twists(1), &(0..f1).collect::<Vec<_>>(), dim);
    let s2 = twist_sum(c.twists(2), &(0..f2).collect::<Vec<_>>(), dim);
    let s3 = twist_sum(c.twists(3), &(0..f3).collect::<Vec<_>>(), dim);
    wedge_with(&m.a2, f1, 1).with_twists(vec![vsub(&s1, &vsub(&s2, &s3))], c.twists(1).to_vec())
}

/// Twist of the pair column `e_i ∧ e_j` (or `e_i ⊗ f_j`): the sum of the
/// two generator twists minus the twist of `M`.
fn pair_twist(a: &[i64], b: &[i64], m: &[i64]) -> Vec<i64> {
    vsub(&vadd(a, b), m)
}

/// Lifts `e_i ∧ e_j ↦ β_i e_j − β_j e_i` through `d2`.
pub fn lift_w31(c: &GradedComplex, m: &Multipliers, budget: &Budget) -> Result<PolyMatrix> {
    let b = beta(c, m)?;
    let f1 = c.format()[1];
    let nv = c.nvars();
    let pairs = product_pairs(f1);
    let m_twist = b.row_twists()[0].clone();
    let mut target = PolyMatrix::zeros(nv, f1, pairs.len());
    for (col, &(i, j)) in pairs.iter().enumerate() {
        target.set(j, col, b.get(0, i).clone());
        target.set(i, col, -b.get(0, j));
    }
    let target = target.with_twists(
        c.twists(1).to_vec(),
        pairs.iter().map(|&(i, j)| pair_twist(&c.twists(1)[i], &c.twists(1)[j], &m_twist)).collect(),
    )?;
    if !c.d1().try_mul(&target)?.is_zero() {
        return Err(Error::Inconsistent("β-composite into F0 is not zero".into()));
    }
    let sol = graded_solve(c.d2(), &target, c.grading(), &budget.solve)?;
    Ok(sol.x)
}

/// `w3_1(e_i ∧ e_l)` with the antisymmetry convention.
fn wedge_column(w31: &PolyMatrix, f1: usize, i: usize, l: usize, row: usize) -> MultiPoly {
    use std::cmp::Ordering::*;
    let idx = |a: usize, b: usize| a * (2 * f1 - a - 1) / 2 + (b - a - 1);
    match i.cmp(&l) {
        Less => w31.get(row, idx(i, l)).clone(),
        Greater => -w31.get(row, idx(l, i)),
        Equal => MultiPoly::zero(w31.nvars()),
    }
}

/// The difference `β⊗1 − w3_1∘(1⊗d2)` on `M*⊗F1⊗F2`, an `f2 × (f1·f2)`
/// matrix landing in `ker d2`.
fn w21_target(c: &GradedComplex, b: &PolyMatrix, w31: &PolyMatrix) -> Result<PolyMatrix> {
    let [_, f1, f2, _] = c.format();
    let nv = c.nvars();
    let m_twist = b.row_twists()[0].clone();
    let mut target = PolyMatrix::zeros(nv, f2, f1 * f2);
    let mut twists = Vec::with_capacity(f1 * f2);
    for i in 0..f1 {
        for k in 0..f2 {
            let col = i * f2 + k;
            twists.push(pair_twist(&c.twists(1)[i], &c.twists(2)[k], &m_twist));
            for row in 0..f2 {
                let mut acc = if row == k { b.get(0, i).clone() } else { MultiPoly::zero(nv) };
                for l in 0..f1 {
                    let coeff = c.d2().get(l, k);
                    if coeff.is_zero() {
                        continue;
                    }
                    let w = wedge_column(w31, f1, i, l, row);
                    if !w.is_zero() {
                        acc = &acc - &(coeff * &w);
                    }
                }
                target.set(row, col, acc);
            }
        }
    }
    target.with_twists(c.twists(2).to_vec(), twists)
}

/// Lifts the difference of composites on `M*⊗F1⊗F2` through `d3`.
pub fn lift_w21(c: &GradedComplex, m: &Multipliers, w31: &PolyMatrix, budget: &Budget) -> Result<PolyMatrix> {
    let b = beta(c, m)?;
    let target = w21_target(c, &b, w31)?;
    if !c.d2().try_mul(&target)?.is_zero() {
        return Err(Error::Inconsistent("difference of composites is not a cycle".into()));
    }
    let sol = graded_solve(c.d3(), &target, c.grading(), &budget.solve)?;
    Ok(sol.x)
}

/// Multipliers and first structure maps of a complex with `f0 = 1`.
pub fn structure_maps(c: &GradedComplex, budget: &Budget) -> Result<(Multipliers, StructureMaps)> {
    let m = be_multipliers(c, budget)?;
    let w3_1 = lift_w31(c, &m, budget)?;
    let w2_1 = lift_w21(c, &m, &w3_1, budget)?;
    Ok((m, StructureMaps { w3_1, w2_1 }))
}

/// Checks both lifting identities exactly.
pub fn check_lifting_identities(c: &GradedComplex, m: &Multipliers, s: &StructureMaps) -> Result<bool> {
    let b = beta(c, m)?;
    let f1 = c.format()[1];
    let pairs = product_pairs(f1);
    let lhs = c.d2().try_mul(&s.w3_1)?;
    for (col, &(i, j)) in pairs.iter().enumerate() {
        for row in 0..f1 {
            let mut expect = MultiPoly::zero(c.nvars());
            if row == j {
                expect = &expect + b.get(0, i);
            }
            if row == i {
                expect = &expect - b.get(0, j);
            }
            if *lhs.get(row, col) != expect {
                return Ok(false);
            }
        }
    }
    let target = w21_target(c, &b, &s.w3_1)?;
    let got = c.d3().try_mul(&s.w2_1)?;
    Ok(got.entries() == target.entries())
}

/// The split exact complex `0 → F3 → Z⊕F3 → F0⊕Z → F0` over the rationals,
/// with `Z` of rank `r2`.
pub fn split_complex(format: &Format) -> Result<GradedComplex> {
    let [f0, f1, f2, f3] = format.f();
    if f0 != 1 {
        return Err(Error::UnsupportedF0(format.f()));
    }
    let r2 = f1 - f0;
    if f2 != r2 + f3 {
        return Err(Error::MalformedFormat(format!("{:?} is not the format of a split complex", format.f())));
    }
    let one = MultiPoly::one(0);
    let mut d1 = PolyMatrix::zeros(0, 1, f1);
    d1.set(0, 0, one.clone());
    let mut d2 = PolyMatrix::zeros(0, f1, f2);
    for k in 0..r2 {
        d2.set(1 + k, k, one.clone());
    }
    let mut d3 = PolyMatrix::zeros(0, f2, f3);
    for k in 0..f3 {
        d3.set(r2 + k, k, one.clone());
    }
    GradedComplex::new(Grading::standard(0), d1, d2, d3)
}

/// Structure maps of the split complex, computed by the same lifting
/// procedure as for any other complex.
pub fn split_structure_maps(format: &Format) -> Result<StructureMaps> {
    format.require_dynkin()?;
    let c = split_complex(format)?;
    Ok(structure_maps(&c, &Budget::default())?.1)
}

/// Changes `w3_1` by `d3·u1` for a map `u1 : Λ²F1 → F3` (an `f3 × C(f1,2)`
/// matrix) and adjusts `w2_1` so that both lifting identities persist.
pub fn gauge_action(c: &GradedComplex, m: &Multipliers, s: &StructureMaps, u1: &PolyMatrix) -> Result<StructureMaps> {
    let [_, f1, f2, f3] = c.format();
    let pairs = product_pairs(f1);
    if u1.rows() != f3 || u1.cols() != pairs.len() {
        return Err(Error::DimensionMismatch(format!(
            "u1 must be {f3}x{}, got {}x{}",
            pairs.len(),
            u1.rows(),
            u1.cols()
        )));
    }
    let correction = c.d3().try_mul(u1)?;
    let w3_1 = s.w3_1.try_add(&correction)?;
    let mut w2_1 = s.w2_1.clone();
    for i in 0..f1 {
        for k in 0..f2 {
            let col = i * f2 + k;
            for row in 0..f3 {
                let mut acc = w2_1.get(row, col).clone();
                for l in 0..f1 {
                    let coeff = c.d2().get(l, k);
                    if coeff.is_zero() {
                        continue;
                    }
                    let u = wedge_column(u1, f1, i, l, row);
                    if !u.is_zero() {
                        acc = &acc - &(coeff * &u);
                    }
                }
                w2_1.set(row, col, acc);
            }
        }
    }
    let out = StructureMaps { w3_1, w2_1 };
    if !check_lifting_identities(c, m, &out)? {
        return Err(Error::Inconsistent("gauge transformation broke a lifting identity".into()));
    }
    Ok(out)
}

/// The multiplication `Tor1 ⊗ Tor1 → Tor2` over the residue field: the
/// constant part of `w3_1`, a `b2 × C(b1, 2)` matrix.
pub fn tor_m11(c: &GradedComplex, s: &StructureMaps) -> Result<Vec<Vec<Coeff>>> {
    require_cyclic(c)?;
    if !c.is_minimal() {
        return Err(Error::NonMinimalComplex);
    }
    Ok(s.w3_1.constant_part())
}

/// Whether a residue-field matrix is identically zero.
pub fn is_zero_matrix(m: &[Vec<Coeff>]) -> bool {
    m.iter().flatten().all(Zero::is_zero)
}
