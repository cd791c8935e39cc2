use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use super::poly::{Coeff, Grading, Homogeneity, MultiPoly};
use crate::error::{Error, Result};

/// Matrix of polynomials with row and column degree twists; entry `(i,j)`
/// is expected to be homogeneous of degree `col_twist(j) - row_twist(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
    row_twists: Vec<Vec<i64>>,
    col_twists: Vec<Vec<i64>>,
}

impl PolyMatrix {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            nvars,
            rows,
            cols,
            entries: vec![MultiPoly::zero(nvars); rows * cols],
            row_twists: vec![vec![0]; rows],
            col_twists: vec![vec![0]; cols],
        }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let mut m = Self::zeros(nvars, n, n);
        for i in 0..n {
            m.set(i, i, MultiPoly::one(nvars));
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        if let Some(bad) = rows.iter().flatten().find(|p| p.nvars() != nvars) {
            return Err(Error::VariableMismatch(nvars, bad.nvars()));
        }
        let mut m = Self::zeros(nvars, r, c);
        m.entries = rows.into_iter().flatten().collect();
        Ok(m)
    }

    pub fn from_constants(nvars: usize, rows: &[Vec<Coeff>]) -> Result<Self> {
        Self::from_rows(
            nvars,
            rows.iter().map(|r| r.iter().map(|c| MultiPoly::constant(nvars, c.clone())).collect()).collect(),
        )
    }

    pub fn with_twists(mut self, row_twists: Vec<Vec<i64>>, col_twists: Vec<Vec<i64>>) -> Result<Self> {
        if row_twists.len() != self.rows || col_twists.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix with {} row and {} column twists",
                self.rows,
                self.cols,
                row_twists.len(),
                col_twists.len()
            )));
        }
        self.row_twists = row_twists;
        self.col_twists = col_twists;
        Ok(self)
    }

    /// Scalar twists for the standard grading.
    pub fn with_scalar_twists(self, row: &[i64], col: &[i64]) -> Result<Self> {
        self.with_twists(row.iter().map(|&x| vec![x]).collect(), col.iter().map(|&x| vec![x]).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn row_twists(&self) -> &[Vec<i64>] {
        &self.row_twists
    }
    pub fn col_twists(&self) -> &[Vec<i64>] {
        &self.col_twists
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        debug_assert_eq!(p.nvars(), self.nvars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[MultiPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        let mut out = PolyMatrix::zeros(self.nvars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MultiPoly::zero(self.nvars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out.row_twists = self.row_twists.clone();
        out.col_twists = other.col_twists.clone();
        Ok(out)
    }

    fn zip_with(&self, other: &PolyMatrix, f: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        let mut out = self.clone();
        out.entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(out)
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Coeff) -> PolyMatrix {
        let mut out = self.clone();
        out.entries = self.entries.iter().map(|p| p.scale(c)).collect();
        out
    }

    pub fn map_entries(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyMatrix {
        let mut out = self.clone();
        out.entries = self.entries.iter().map(f).collect();
        out.nvars = out.entries.first().map_or(self.nvars, MultiPoly::nvars);
        out
    }

    /// Transpose; twists become the negated twists of the dual map.
    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.nvars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        let neg = |v: &[Vec<i64>]| v.iter().map(|t| t.iter().map(|x| -x).collect()).collect();
        out.row_twists = neg(&self.col_twists);
        out.col_twists = neg(&self.row_twists);
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.nvars, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out.row_twists = rows.iter().map(|&i| self.row_twists[i].clone()).collect();
        out.col_twists = cols.iter().map(|&j| self.col_twists[j].clone()).collect();
        out
    }

    pub fn column(&self, j: usize) -> PolyMatrix {
        self.submatrix(&(0..self.rows).collect::<Vec<_>>(), &[j])
    }

    /// Horizontal concatenation; row twists are taken from `self`.
    pub fn hstack(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut out = PolyMatrix::zeros(self.nvars, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out.row_twists = self.row_twists.clone();
        out.col_twists = self.col_twists.iter().chain(&other.col_twists).cloned().collect();
        Ok(out)
    }

    /// Determinant by cofactor expansion with memoised minors.
    pub fn determinant(&self) -> Result<MultiPoly> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.minor(&rows, &cols))
    }

    /// Determinant of the submatrix on `rows × cols` (both increasing).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        assert_eq!(rows.len(), cols.len());
        assert!(cols.len() <= 63);
        let mut memo: HashMap<u64, MultiPoly> = HashMap::new();
        self.minor_rec(rows, cols, (1u64 << cols.len()) - 1, &mut memo)
    }

    fn minor_rec(&self, rows: &[usize], cols: &[usize], mask: u64, memo: &mut HashMap<u64, MultiPoly>) -> MultiPoly {
        let depth = cols.len() - mask.count_ones() as usize;
        if depth == rows.len() {
            return MultiPoly::one(self.nvars);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = MultiPoly::zero(self.nvars);
        let mut sign_positive = true;
        for (b, &j) in cols.iter().enumerate() {
            if mask & (1 << b) == 0 {
                continue;
            }
            let entry = self.get(rows[depth], j);
            if !entry.is_zero() {
                let sub = self.minor_rec(rows, cols, mask & !(1 << b), memo);
                if !sub.is_zero() {
                    let term = entry * &sub;
                    acc = if sign_positive { &acc + &term } else { &acc - &term };
                }
            }
            sign_positive = !sign_positive;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// All `k × k` minors, rows and columns in lexicographic subset order.
    pub fn minors(&self, k: usize) -> Vec<(Vec<usize>, Vec<usize>, MultiPoly)> {
        let mut out = Vec::new();
        for r in combinations(self.rows, k) {
            for c in combinations(self.cols, k) {
                let m = self.minor(&r, &c);
                out.push((r.clone(), c, m));
            }
        }
        out
    }

    /// Checks every entry against the twist bookkeeping.
    pub fn check_homogeneous(&self, grading: &Grading) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expected: Vec<i64> =
                    self.col_twists[j].iter().zip(&self.row_twists[i]).map(|(c, r)| c - r).collect();
                match self.get(i, j).homogeneity(grading) {
                    Homogeneity::Zero => {}
                    Homogeneity::Homogeneous(d) if d == expected => {}
                    Homogeneity::Homogeneous(d) => {
                        return Err(Error::NonHomogeneous(format!(
                            "entry ({i},{j}) has degree {d:?}, expected {expected:?}"
                        )))
                    }
                    Homogeneity::Mixed => {
                        return Err(Error::NonHomogeneous(format!("entry ({i},{j}) mixes degrees")))
                    }
                }
            }
        }
        Ok(())
    }

    /// Constant terms of every entry.
    pub fn constant_part(&self) -> Vec<Vec<Coeff>> {
        (0..self.rows).map(|i| self.row(i).iter().map(MultiPoly::constant_term).collect()).collect()
    }

    pub fn has_unit_entry(&self) -> bool {
        self.entries.iter().any(|p| !p.constant_term().is_zero())
    }

    pub fn substitute(&self, images: &[MultiPoly]) -> Result<PolyMatrix> {
        let target = images.first().map_or(0, MultiPoly::nvars);
        let entries = self.entries.iter().map(|p| p.substitute(images)).collect::<Result<Vec<_>>>()?;
        let mut out = self.clone();
        out.nvars = target;
        out.entries = entries;
        Ok(out)
    }

    pub fn eval(&self, point: &[Coeff]) -> Result<Vec<Vec<Coeff>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval(point)).collect())
            .collect()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Sign of the shuffle permutation placing `subset` before its complement.
pub fn shuffle_sign(subset: &[usize]) -> i64 {
    let inversions: usize = subset.iter().enumerate().map(|(pos, &x)| x - pos).sum();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn complement(n: usize, subset: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !subset.contains(i)).collect()
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Coeff>]) -> usize {
    let mut m: Vec<Vec<Coeff>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for k in c..ncols {
                let v = &m[r][k] * &f;
                m[i][k] -= v;
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly::int;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn combos_and_signs() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(shuffle_sign(&[0]), 1);
        assert_eq!(shuffle_sign(&[1]), -1);
        assert_eq!(shuffle_sign(&[1, 2]), 1);
        assert_eq!(shuffle_sign(&[2]), 1);
    }

    #[test]
    fn determinant_three() {
        let m = PolyMatrix::from_rows(
            3,
            vec![
                vec![p("x"), p("y"), p("0")],
                vec![p("0"), p("z"), p("1")],
                vec![p("1"), p("0"), p("x")],
            ],
        )
        .unwrap();
        assert_eq!(m.determinant().unwrap(), p("x^2*z + y"));
    }

    #[test]
    fn transpose_product() {
        let a = PolyMatrix::from_rows(3, vec![vec![p("x"), p("y")], vec![p("z"), p("1")]]).unwrap();
        let b = PolyMatrix::from_rows(3, vec![vec![p("y")], vec![p("x+z")]]).unwrap();
        let ab = a.try_mul(&b).unwrap();
        let bt_at = b.transpose().try_mul(&a.transpose()).unwrap();
        assert_eq!(ab.transpose(), bt_at);
    }

    #[test]
    fn rational_rank() {
        let m = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(rank(&m), 1);
    }
}
