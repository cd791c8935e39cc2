//! Necessary conditions on graded Betti tables of perfect ideals of grade
//! three with Dynkin format.
//!
//! A resolution `0 → ⊕R(−s_{3j}) → ⊕R(−s_{2j}) → ⊕R(−s_{1j}) → R` of Dynkin
//! format forces `R ⊗ L(ω_{x1})^∨` to surject onto `R`, so one of its
//! generators must sit in degree zero. The generators of the piece
//! `S_λF3* ⊗ S_μF1` have the degrees of a weight basis, computed from the
//! twists.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded_res::GradedComplex;
use crate::lie_core::Format;
use crate::repdecomp::{schur_degrees, z1_decomposition, KostkaTable};

/// Twists of a graded minimal resolution of a cyclic module, `s_0 = {0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub f: [usize; 4],
    pub s1: Vec<i64>,
    pub s2: Vec<i64>,
    pub s3: Vec<i64>,
}

impl BettiTable {
    pub fn new(f: [usize; 4], s1: Vec<i64>, s2: Vec<i64>, s3: Vec<i64>) -> Result<Self> {
        let t = BettiTable { f, s1, s2, s3 };
        t.validate()?;
        Ok(t)
    }

    /// Checks `f0 = 1` and the multiset sizes.
    pub fn validate(&self) -> Result<()> {
        if self.f[0] != 1 {
            return Err(Error::UnsupportedF0(self.f));
        }
        let sizes = [self.s1.len(), self.s2.len(), self.s3.len()];
        if sizes != [self.f[1], self.f[2], self.f[3]] {
            return Err(Error::DimensionMismatch(format!("twist counts {sizes:?} for format {:?}", self.f)));
        }
        Format::new(self.f)?;
        Ok(())
    }

    pub fn format(&self) -> Result<Format> {
        Format::new(self.f)
    }

    /// Reads the table off a complex graded in one variable with `s_0 = 0`.
    pub fn from_complex(c: &GradedComplex) -> Result<Self> {
        if c.grading().dim() != 1 {
            return Err(Error::DimensionMismatch("Betti tables need a single grading".into()));
        }
        if c.twists(0) != [vec![0]] {
            return Err(Error::UnsupportedF0(c.format()));
        }
        let scalar = |i: usize| c.twists(i).iter().map(|v| v[0]).collect::<Vec<_>>();
        BettiTable::new(c.format(), scalar(1), scalar(2), scalar(3))
    }

    /// Collapses per-node twist vectors by summing their components.
    pub fn from_twist_vectors(f: [usize; 4], twists: &[Vec<i64>; 4]) -> Result<Self> {
        if twists[0].iter().any(|&x| x != 0) {
            return Err(Error::UnsupportedF0(f));
        }
        BettiTable::new(f, twists[1].clone(), twists[2].clone(), twists[3].clone())
    }
}

/// Degrees of the generators of the `z1`-degree `j` part of
/// `R ⊗ L(ω_{x1})^∨`, as a multiset.
pub fn component_generator_degrees(t: &BettiTable, j: usize) -> Result<BTreeMap<i64, u64>> {
    t.validate()?;
    let format = t.format()?;
    let decomposition = z1_decomposition(&format)?;
    let neg_s3: Vec<i64> = t.s3.iter().map(|x| -x).collect();
    let mut kostka = KostkaTable::new();
    let mut out = BTreeMap::new();
    for comp in decomposition.at_degree(j) {
        let a = schur_degrees(&comp.f3_dual, &neg_s3, &mut kostka)?;
        let b = schur_degrees(&comp.f1, &t.s1, &mut kostka)?;
        for (da, ma) in &a {
            for (db, mb) in &b {
                *out.entry(da + db).or_insert(0) += ma * mb * comp.multiplicity;
            }
        }
    }
    Ok(out)
}

/// Necessary conditions only; passing them does not make a table
/// realisable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub format: [usize; 4],
    pub dynkin: bool,
    /// Some component has a generator in degree zero; `None` when the
    /// format is not Dynkin and the test does not apply.
    pub degree_zero_generator: Option<bool>,
    /// `2·min s1 < max s3`.
    pub inequality_2min_lt_max: bool,
    /// Some `s1` entry is even or some `s3` entry is odd.
    pub parity_ok: bool,
}

impl AdmissibilityReport {
    /// Every applicable condition holds.
    pub fn passes(&self) -> bool {
        self.dynkin && self.degree_zero_generator == Some(true) && self.inequality_2min_lt_max && self.parity_ok
    }

    pub fn verdict(&self) -> &'static str {
        if !self.dynkin {
            "format is not Dynkin: the restrictions do not apply"
        } else if self.passes() {
            "no obstruction found (the conditions are necessary, not sufficient)"
        } else {
            "not the Betti table of a perfect ideal of Dynkin format"
        }
    }
}

pub fn admissibility_report(t: &BettiTable) -> Result<AdmissibilityReport> {
    t.validate()?;
    let format = t.format()?;
    let dynkin = format.is_dynkin();
    let degree_zero_generator = if dynkin {
        let top = z1_decomposition(&format)?.max_degree();
        let mut found = false;
        for j in 0..=top {
            if component_generator_degrees(t, j)?.contains_key(&0) {
                found = true;
                break;
            }
        }
        Some(found)
    } else {
        None
    };
    let min1 = t.s1.iter().copied().min().unwrap_or(0);
    let max3 = t.s3.iter().copied().max().unwrap_or(0);
    Ok(AdmissibilityReport {
        format: t.f,
        dynkin,
        degree_zero_generator,
        inequality_2min_lt_max: 2 * min1 < max3,
        parity_ok: t.s1.iter().any(|x| x % 2 == 0) || t.s3.iter().any(|x| x % 2 != 0),
    })
}
