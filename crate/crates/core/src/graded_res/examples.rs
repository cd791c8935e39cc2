//! Small explicit complexes used as test oracles and CLI demos.

use num_traits::Zero;

use super::GradedComplex;
use crate::error::{Error, Result};
use crate::polyalg::solve::kernel_basis;
use crate::polyalg::{combinations, monomials_of_degree, Coeff, Grading, Monomial, MultiPoly, PolyMatrix};

fn var(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, i)
}

/// The Koszul complex on the three variables of `k[x, y, z]`.
pub fn koszul3() -> GradedComplex {
    let (x, y, z) = (var(3, 0), var(3, 1), var(3, 2));
    let zero = MultiPoly::zero(3);
    let d1 = PolyMatrix::from_rows(3, vec![vec![x.clone(), y.clone(), z.clone()]]).expect("shape");
    let d2 = PolyMatrix::from_rows(
        3,
        vec![
            vec![-&y, -&z, zero.clone()],
            vec![x.clone(), zero.clone(), -&z],
            vec![zero, x.clone(), y.clone()],
        ],
    )
    .expect("shape");
    let d3 = PolyMatrix::from_rows(3, vec![vec![z], vec![-&y], vec![x]]).expect("shape");
    GradedComplex::standard(3, [&[0], &[1, 1, 1], &[2, 2, 2], &[3]], d1, d2, d3).expect("Koszul complex")
}

/// Resolution of `k[t1..t4]/(t1t2, t2t3, t3t4, t4t1)`, which is acyclic but
/// whose dual is not.
pub fn non_perfect_example() -> GradedComplex {
    let t: Vec<MultiPoly> = (0..4).map(|i| var(4, i)).collect();
    let zero = MultiPoly::zero(4);
    let d1 = PolyMatrix::from_rows(
        4,
        vec![vec![&t[0] * &t[1], &t[1] * &t[2], &t[2] * &t[3], &t[3] * &t[0]]],
    )
    .expect("shape");
    // columns t3e1 − t1e2, t4e2 − t2e3, t1e3 − t3e4, t2e4 − t4e1
    let d2 = PolyMatrix::from_rows(
        4,
        vec![
            vec![t[2].clone(), zero.clone(), zero.clone(), -&t[3]],
            vec![-&t[0], t[3].clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), -&t[1], t[0].clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), -&t[2], t[1].clone()],
        ],
    )
    .expect("shape");
    let d3 = PolyMatrix::from_rows(4, vec![vec![t[3].clone()], vec![t[0].clone()], vec![t[1].clone()], vec![t[2].clone()]])
        .expect("shape");
    GradedComplex::standard(4, [&[0], &[2; 4], &[3; 4], &[4]], d1, d2, d3).expect("non-perfect example")
}

/// Columns spanning the syzygies of `d` of a given degree, as a matrix with
/// `d.cols()` rows.
pub fn syzygies_in_degree(d: &PolyMatrix, grading: &Grading, degree: &[i64]) -> Result<PolyMatrix> {
    let nv = d.nvars();
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for j in 0..d.cols() {
        let deg: Vec<i64> = degree.iter().zip(&d.col_twists()[j]).map(|(a, b)| a - b).collect();
        for m in monomials_of_degree(grading, &deg, 64)? {
            unknowns.push((j, m));
        }
    }
    let mut keys: Vec<(usize, Monomial)> = Vec::new();
    let mut rows: Vec<Vec<Coeff>> = Vec::new();
    for (u, (j, m)) in unknowns.iter().enumerate() {
        for i in 0..d.rows() {
            for (am, ac) in d.get(i, *j).terms() {
                let key = (i, am.mul(m));
                let r = match keys.iter().position(|k| *k == key) {
                    Some(r) => r,
                    None => {
                        keys.push(key);
                        rows.push(vec![Coeff::zero(); unknowns.len()]);
                        rows.len() - 1
                    }
                };
                rows[r][u] += ac;
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..unknowns.len())
            .map(|u| (0..unknowns.len()).map(|v| if u == v { Coeff::from_integer(1.into()) } else { Coeff::zero() }).collect())
            .collect()
    } else {
        kernel_basis(&rows, unknowns.len())
    };
    let mut out = PolyMatrix::zeros(nv, d.cols(), basis.len());
    for (col, vec) in basis.iter().enumerate() {
        for (u, c) in vec.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (j, m) = &unknowns[u];
            let mut p = out.get(*j, col).clone();
            p.add_term(m.clone(), c.clone());
            out.set(*j, col, p);
        }
    }
    out.with_twists(d.col_twists().to_vec(), vec![degree.to_vec(); basis.len()])
}

/// Minimal resolution of `k[x,y,z]/(x,y,z)²`, of format `(1,6,8,3)`.
pub fn maximal_ideal_square() -> Result<GradedComplex> {
    let g = Grading::standard(3);
    let mut gens = Vec::new();
    for a in 0..3 {
        for b in a..3 {
            gens.push(&var(3, a) * &var(3, b));
        }
    }
    let d1 = PolyMatrix::from_rows(3, vec![gens])?.with_scalar_twists(&[0], &[2; 6])?;
    let d2 = syzygies_in_degree(&d1, &g, &[3])?;
    let d3 = syzygies_in_degree(&d2, &g, &[4])?;
    if d2.cols() != 8 || d3.cols() != 3 {
        return Err(Error::Inconsistent("unexpected syzygy counts for (x,y,z)²".into()));
    }
    GradedComplex::new(g, d1, d2, d3)
}

/// Pfaffian of a skew-symmetric matrix restricted to `idx` (even length),
/// by expansion along the first index.
pub fn pfaffian(a: &PolyMatrix, idx: &[usize]) -> MultiPoly {
    if idx.is_empty() {
        return MultiPoly::one(a.nvars());
    }
    let first = idx[0];
    let mut acc = MultiPoly::zero(a.nvars());
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let entry = a.get(first, j);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx.iter().enumerate().filter(|&(p, _)| p != 0 && p != pos).map(|(_, &x)| x).collect();
        let term = entry * &pfaffian(a, &rest);
        acc = if pos % 2 == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Generic `n × n` skew-symmetric matrix on `C(n,2)` variables, entry
/// `(i, j)` for `i < j` being the variable with the index of the pair in
/// lexicographic order.
pub fn generic_skew(n: usize) -> PolyMatrix {
    let pairs = combinations(n, 2);
    let nv = pairs.len();
    let mut a = PolyMatrix::zeros(nv, n, n);
    for (k, p) in pairs.iter().enumerate() {
        a.set(p[0], p[1], var(nv, k));
        a.set(p[1], p[0], -&var(nv, k));
    }
    a
}

/// Signed sub-maximal Pfaffians `(−1)^i Pf(A without i)` of an odd skew
/// matrix.
pub fn submaximal_pfaffians(a: &PolyMatrix) -> Vec<MultiPoly> {
    let n = a.rows();
    (0..n)
        .map(|i| {
            let idx: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            let p = pfaffian(a, &idx);
            if i % 2 == 0 {
                p
            } else {
                -&p
            }
        })
        .collect()
}

/// The Buchsbaum–Eisenbud resolution `R → R^n → R^n → R` of the
/// sub-maximal Pfaffians of an odd skew matrix with linear entries.
pub fn pfaffian_complex(a: &PolyMatrix) -> Result<GradedComplex> {
    let n = a.rows();
    if n % 2 == 0 || a.cols() != n {
        return Err(Error::DimensionMismatch("need an odd square skew matrix".into()));
    }
    let nv = a.nvars();
    let pf = submaximal_pfaffians(a);
    let deg = (n as i64 - 1) / 2;
    let d1 = PolyMatrix::from_rows(nv, vec![pf.clone()])?;
    let d3 = PolyMatrix::from_rows(nv, pf.into_iter().map(|p| vec![p]).collect())?;
    GradedComplex::standard(
        nv,
        [&[0], &vec![deg; n], &vec![deg + 1; n], &[2 * deg + 1]],
        d1,
        a.clone(),
        d3,
    )
}

/// A skew matrix whose entries are fixed linear forms in `nvars`
/// variables, chosen by a deterministic pseudo-random rule.
pub fn specialized_skew(n: usize, nvars: usize, seed: u64) -> PolyMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 7) as i64 - 3
    };
    let mut a = PolyMatrix::zeros(nvars, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let mut p = MultiPoly::zero(nvars);
            for v in 0..nvars {
                let c = next();
                if c != 0 {
                    p = &p + &var(nvars, v).scale(&Coeff::from_integer(c.into()));
                }
            }
            a.set(i, j, p.clone());
            a.set(j, i, -&p);
        }
    }
    a
}
