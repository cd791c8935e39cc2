//! Graded free complexes `0 → F3 → F2 → F1 → F0` and the structure theory
//! built on them: acyclicity checks, Buchsbaum–Eisenbud multipliers, the
//! first higher structure maps, the degree-one gauge action, the induced
//! multiplication on `Tor`, and classification into double-coset families.

pub mod classify;
pub mod examples;
mod multipliers;
mod structure;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::json::{MatrixJson, TwistJson};
use crate::polyalg::matrix::rank;
use crate::polyalg::{grade_at_least, Budget, Coeff, Grading, MultiPoly, PolyMatrix, TermOrder};

pub use classify::{classify_family, FamilyLabel};
pub use multipliers::{be_multipliers, wedge_with, Multipliers};
pub use structure::{
    beta, check_lifting_identities, gauge_action, is_zero_matrix, lift_w21, lift_w31, product_pairs, split_complex, split_structure_maps, structure_maps,
    tor_m11, StructureMaps,
};

/// A length-three complex of graded free modules.
///
/// Twists live on the differentials: `d_i` has row twists `s_{i-1}` and
/// column twists `s_i`, so entry `(a, b)` of `d_i` has degree
/// `s_{i,b} − s_{i−1,a}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComplex {
    format: [usize; 4],
    grading: Grading,
    d1: PolyMatrix,
    d2: PolyMatrix,
    d3: PolyMatrix,
}

impl GradedComplex {
    pub fn new(grading: Grading, d1: PolyMatrix, d2: PolyMatrix, d3: PolyMatrix) -> Result<Self> {
        let format = [d1.rows(), d1.cols(), d2.cols(), d3.cols()];
        if d2.rows() != d1.cols() || d3.rows() != d2.cols() {
            return Err(Error::DimensionMismatch(format!(
                "differentials of shapes {}x{}, {}x{}, {}x{} do not compose",
                d1.rows(),
                d1.cols(),
                d2.rows(),
                d2.cols(),
                d3.rows(),
                d3.cols()
            )));
        }
        let nv = grading.nvars();
        for d in [&d1, &d2, &d3] {
            if d.nvars() != nv {
                return Err(Error::VariableMismatch(nv, d.nvars()));
            }
            if d.row_twists().iter().chain(d.col_twists()).any(|t| t.len() != grading.dim()) {
                return Err(Error::DimensionMismatch("twist length differs from the grading dimension".into()));
            }
        }
        if d1.col_twists() != d2.row_twists() || d2.col_twists() != d3.row_twists() {
            return Err(Error::DimensionMismatch("adjacent differentials disagree on twists".into()));
        }
        Ok(GradedComplex { format, grading, d1, d2, d3 })
    }

    /// Builds a complex from scalar twists in the standard grading.
    pub fn standard(
        nvars: usize,
        twists: [&[i64]; 4],
        d1: PolyMatrix,
        d2: PolyMatrix,
        d3: PolyMatrix,
    ) -> Result<Self> {
        let d1 = d1.with_scalar_twists(twists[0], twists[1])?;
        let d2 = d2.with_scalar_twists(twists[1], twists[2])?;
        let d3 = d3.with_scalar_twists(twists[2], twists[3])?;
        GradedComplex::new(Grading::standard(nvars), d1, d2, d3)
    }

    pub fn format(&self) -> [usize; 4] {
        self.format
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn nvars(&self) -> usize {
        self.grading.nvars()
    }

    pub fn d1(&self) -> &PolyMatrix {
        &self.d1
    }

    pub fn d2(&self) -> &PolyMatrix {
        &self.d2
    }

    pub fn d3(&self) -> &PolyMatrix {
        &self.d3
    }

    /// Twists `s_i` of `F_i`.
    pub fn twists(&self, i: usize) -> &[Vec<i64>] {
        match i {
            0 => self.d1.row_twists(),
            1 => self.d1.col_twists(),
            2 => self.d2.col_twists(),
            3 => self.d3.col_twists(),
            _ => panic!("complex has modules F0..F3 only"),
        }
    }

    /// Expected ranks `(r1, r2, r3)` of the differentials of an acyclic
    /// complex of this format, or `None` when the format admits none.
    pub fn expected_ranks(&self) -> Option<[usize; 3]> {
        let [f0, f1, f2, f3] = self.format;
        let r3 = f3;
        let r2 = f2.checked_sub(r3)?;
        let r1 = f1.checked_sub(r2)?;
        (r1 <= f0).then_some([r1, r2, r3])
    }

    /// Minimal at the irrelevant ideal: no differential has a unit entry.
    pub fn is_minimal(&self) -> bool {
        ![&self.d1, &self.d2, &self.d3].iter().any(|d| d.has_unit_entry())
    }

    /// The dual complex `0 → F0* → F1* → F2* → F3*`, indexed so that its
    /// `F0` is `F3*`.
    pub fn dual(&self) -> GradedComplex {
        GradedComplex {
            format: [self.format[3], self.format[2], self.format[1], self.format[0]],
            grading: self.grading.clone(),
            d1: self.d3.transpose(),
            d2: self.d2.transpose(),
            d3: self.d1.transpose(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let twist = |t: &[Vec<i64>]| -> Vec<TwistJson> { t.iter().map(|v| twist_json(v)).collect() };
        let doc = ComplexJson {
            format: self.format,
            grading: (self.grading != Grading::standard(self.nvars())).then(|| self.grading.weights().to_vec()),
            s0: twist(self.twists(0)),
            s1: twist(self.twists(1)),
            s2: twist(self.twists(2)),
            s3: twist(self.twists(3)),
            d1: MatrixJson::from(&self.d1),
            d2: MatrixJson::from(&self.d2),
            d3: MatrixJson::from(&self.d3),
        };
        serde_json::to_value(doc).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: ComplexJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let nvars = doc.d1.nvars;
        let grading = match doc.grading {
            Some(w) => Grading::new(w)?,
            None => Grading::standard(nvars),
        };
        let untwist = |t: &[TwistJson]| -> Vec<Vec<i64>> {
            t.iter()
                .map(|x| match x {
                    TwistJson::Scalar(s) => vec![*s],
                    TwistJson::Vector(v) => v.clone(),
                })
                .collect()
        };
        let (s0, s1, s2, s3) = (untwist(&doc.s0), untwist(&doc.s1), untwist(&doc.s2), untwist(&doc.s3));
        let d1 = PolyMatrix::try_from(&doc.d1)?.with_twists(s0, s1.clone())?;
        let d2 = PolyMatrix::try_from(&doc.d2)?.with_twists(s1, s2.clone())?;
        let d3 = PolyMatrix::try_from(&doc.d3)?.with_twists(s2, s3)?;
        let c = GradedComplex::new(grading, d1, d2, d3)?;
        if c.format != doc.format {
            return Err(Error::MalformedFormat(format!(
                "declared format {:?} but matrices give {:?}",
                doc.format, c.format
            )));
        }
        Ok(c)
    }
}

fn twist_json(v: &[i64]) -> TwistJson {
    if v.len() == 1 {
        TwistJson::Scalar(v[0])
    } else {
        TwistJson::Vector(v.to_vec())
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    format: [usize; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<Vec<Vec<i64>>>,
    s0: Vec<TwistJson>,
    s1: Vec<TwistJson>,
    s2: Vec<TwistJson>,
    s3: Vec<TwistJson>,
    d1: MatrixJson,
    d2: MatrixJson,
    d3: MatrixJson,
}

/// Three-valued outcome of a check that may run out of budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            _ => Verdict::Unknown,
        }
    }

    fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub outcome: Verdict,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Every check run by `validate_complex`, plus the two acyclicity verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub format: [usize; 4],
    pub checks: Vec<Check>,
    pub is_complex: bool,
    pub acyclic: Verdict,
    pub dual_acyclic: Verdict,
}

impl ValidationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Verdict::No)
    }

    pub fn perfect(&self) -> Verdict {
        self.acyclic.and(self.dual_acyclic)
    }
}

/// Ideal of `k × k` minors; `k = 0` gives the unit ideal.
pub fn minor_ideal(d: &PolyMatrix, k: usize) -> Vec<MultiPoly> {
    if k == 0 {
        return vec![MultiPoly::one(d.nvars())];
    }
    d.minors(k).into_iter().map(|(_, _, m)| m).filter(|m| !m.is_zero()).collect()
}

/// Checks `d∘d = 0`, homogeneity, the rank conditions and the
/// Buchsbaum–Eisenbud grade conditions for the complex and for its dual.
pub fn validate_complex(c: &GradedComplex, budget: &Budget) -> Result<ValidationReport> {
    let mut checks = Vec::new();
    let mut push = |name: String, outcome: Verdict, detail: String| checks.push(Check { name, outcome, detail });

    let d12 = c.d1.try_mul(&c.d2)?.is_zero();
    let d23 = c.d2.try_mul(&c.d3)?.is_zero();
    push("d1·d2 = 0".into(), Verdict::from_bool(d12), String::new());
    push("d2·d3 = 0".into(), Verdict::from_bool(d23), String::new());
    for (i, d) in [&c.d1, &c.d2, &c.d3].into_iter().enumerate() {
        let h = d.check_homogeneous(&c.grading);
        let detail = h.as_ref().err().map(ToString::to_string).unwrap_or_default();
        push(format!("d{} homogeneous", i + 1), Verdict::from_bool(h.is_ok()), detail);
    }
    let is_complex = d12 && d23;

    let Some(ranks) = c.expected_ranks() else {
        push(
            "rank bookkeeping".into(),
            Verdict::No,
            format!("format {:?} admits no acyclic complex", c.format),
        );
        return Ok(ValidationReport {
            format: c.format,
            checks,
            is_complex,
            acyclic: Verdict::No,
            dual_acyclic: Verdict::No,
        });
    };

    let mut acyclic = Verdict::from_bool(is_complex);
    let mut dual = Verdict::from_bool(is_complex);
    let spare = c.format[0] - ranks[0];
    push(
        "F0 is covered (r1 = f0)".into(),
        Verdict::from_bool(spare == 0),
        format!("f0 − r1 = {spare}"),
    );
    dual = dual.and(Verdict::from_bool(spare == 0));

    let ranks_attained = is_complex && ranks_attained_at_points(c, ranks)?;
    for (i, d) in [&c.d1, &c.d2, &c.d3].into_iter().enumerate() {
        let r = ranks[i];
        let at = minor_ideal(d, r);
        let rank_ok = if ranks_attained {
            true
        } else {
            let above = if r < d.rows().min(d.cols()) { minor_ideal(d, r + 1) } else { Vec::new() };
            above.is_empty() && !at.is_empty()
        };
        push(format!("rank d{} = {r}", i + 1), Verdict::from_bool(rank_ok), String::new());
        if !rank_ok {
            acyclic = Verdict::No;
            dual = Verdict::No;
            continue;
        }
        let need = i + 1;
        let need_dual = 3 - i;
        let grade_check = |k: usize| -> Verdict {
            match grade_at_least(&at, k, TermOrder::Grevlex, &budget.groebner) {
                Ok(b) => Verdict::from_bool(b),
                Err(e) if e.is_budget() => Verdict::Unknown,
                Err(_) => Verdict::Unknown,
            }
        };
        let high = need.max(need_dual);
        let low = need.min(need_dual);
        let (v_high, v_low) = match grade_check(high) {
            Verdict::Yes => (Verdict::Yes, Verdict::Yes),
            other => (other, if high == low { other } else { grade_check(low) }),
        };
        let (v_need, v_dual) = if need >= need_dual { (v_high, v_low) } else { (v_low, v_high) };
        push(format!("grade I_{r}(d{}) ≥ {need}", i + 1), v_need, String::new());
        push(format!("grade I_{r}(d{}) ≥ {need_dual} (dual)", i + 1), v_dual, String::new());
        acyclic = acyclic.and(v_need);
        dual = dual.and(v_dual);
    }
    Ok(ValidationReport { format: c.format, checks, is_complex, acyclic, dual_acyclic: dual })
}

/// Lower bounds on the ranks from evaluations; together with `d∘d = 0`
/// they pin the ranks down exactly.
fn ranks_attained_at_points(c: &GradedComplex, ranks: [usize; 3]) -> Result<bool> {
    for seed in 0..4i64 {
        let point: Vec<Coeff> =
            (0..c.nvars()).map(|v| Coeff::from_integer(((v as i64 * 7 + seed * 13 + 3) % 19 - 9).into())).collect();
        let mut all = true;
        for (d, &r) in [&c.d1, &c.d2, &c.d3].into_iter().zip(&ranks) {
            if rank(&d.eval(&point)?) < r {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Sums twist vectors over an index set, with an extra offset.
pub(crate) fn twist_sum(twists: &[Vec<i64>], idx: &[usize], dim: usize) -> Vec<i64> {
    let mut out = vec![0; dim];
    for &i in idx {
        for (o, t) in out.iter_mut().zip(&twists[i]) {
            *o += t;
        }
    }
    out
}

pub(crate) fn vsub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn vadd(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
