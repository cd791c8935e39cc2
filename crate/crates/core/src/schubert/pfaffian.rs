//! Recognising a chart ideal as the ideal of submaximal Pfaffians.

use std::collections::BTreeSet;

use num_traits::Signed;

use super::chart::SchubertChart;
use crate::error::{Error, Result};
use crate::graded_res::examples::submaximal_pfaffians;
use crate::polyalg::{MultiPoly, PolyMatrix};

/// Finds an odd skew-symmetric matrix `A` of signed chart variables whose
/// submaximal Pfaffians are, one by one, proportional to the chart
/// generators.
///
/// The entry `A_{ij}` is the variable missing from exactly the generators
/// `i` and `j`; signs come from a linear system over `GF(2)`.
pub fn pfaffian_identification(chart: &SchubertChart) -> Result<PolyMatrix> {
    let gens = chart.generators();
    let n = gens.len();
    let nvars = chart.nvars();
    let fail = |why: &str| Error::Inconsistent(format!("no Pfaffian identification: {why}"));
    if n % 2 == 0 || nvars != n * (n - 1) / 2 {
        return Err(fail("wrong number of generators or variables"));
    }
    let support: Vec<BTreeSet<usize>> = gens
        .iter()
        .map(|g| g.terms().flat_map(|(m, _)| m.support().collect::<Vec<_>>()).collect())
        .collect();
    let mut slot = vec![None; nvars];
    let mut seen = BTreeSet::new();
    for (a, s) in slot.iter_mut().enumerate() {
        let missing: Vec<usize> = (0..n).filter(|&k| !support[k].contains(&a)).collect();
        if missing.len() != 2 || !seen.insert((missing[0], missing[1])) {
            return Err(fail("variable supports do not single out pairs"));
        }
        *s = Some((missing[0], missing[1]));
    }
    let skew = |signs: &[bool]| -> PolyMatrix {
        let mut a = PolyMatrix::zeros(nvars, n, n);
        for (v, s) in slot.iter().enumerate() {
            let (i, j) = s.expect("assigned");
            let x = MultiPoly::var(nvars, v);
            let x = if signs[v] { -&x } else { x };
            a.set(j, i, -&x);
            a.set(i, j, x);
        }
        a
    };

    let plain = skew(&vec![false; nvars]);
    let pf = submaximal_pfaffians(&plain);
    let unknowns = nvars + n;
    let mut rows: Vec<(u128, bool)> = Vec::new();
    for k in 0..n {
        let mut magnitude = None;
        if pf[k].len() != gens[k].len() {
            return Err(fail("term counts differ"));
        }
        for (m, p) in pf[k].terms() {
            let c = gens[k].coeff(m);
            if c == num_traits::Zero::zero() {
                return Err(fail("monomials differ"));
            }
            let ratio = &c / p;
            match &magnitude {
                None => magnitude = Some(ratio.abs()),
                Some(r) if *r != ratio.abs() => return Err(fail("coefficients are not proportional")),
                _ => {}
            }
            let mut mask: u128 = 1 << (nvars + k);
            for v in m.support() {
                mask ^= 1 << v;
            }
            rows.push((mask, ratio.is_negative()));
        }
    }
    let solution = solve_gf2(rows, unknowns).ok_or_else(|| fail("sign system is inconsistent"))?;
    Ok(skew(&solution[..nvars]))
}

fn solve_gf2(mut rows: Vec<(u128, bool)>, unknowns: usize) -> Option<Vec<bool>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let bit = 1u128 << col;
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0 & bit != 0) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0 & bit != 0 {
                row.0 ^= pivot.0;
                row.1 ^= pivot.1;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| row.1) {
        return None;
    }
    let mut x = vec![false; unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i].1;
    }
    Some(x)
}
