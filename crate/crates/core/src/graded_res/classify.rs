//! Placing a perfect cyclic resolution in its double coset.

use serde::Serialize;

use super::{is_zero_matrix, structure_maps, tor_m11, validate_complex, GradedComplex, Verdict};
use crate::error::{Error, Result};
use crate::lie_core::Format;
use crate::polyalg::Budget;
use crate::repdecomp::coset_betti_numbers;
use crate::weyl::format_double_cosets;

/// Where a resolution of Dynkin format sits among the double cosets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyLabel {
    /// A single coset matches.
    Coset {
        format: [usize; 4],
        word: Vec<String>,
        betti: [usize; 4],
        m11_zero: Option<bool>,
    },
    /// Several cosets share the Betti numbers and could not be told apart.
    Partial {
        format: [usize; 4],
        betti: [usize; 4],
        candidates: Vec<Vec<String>>,
        m11_zero: Option<bool>,
    },
}

impl FamilyLabel {
    pub fn is_exact(&self) -> bool {
        matches!(self, FamilyLabel::Coset { .. })
    }
}

/// Classifies a minimal free resolution `F0 = R` of a perfect ideal whose
/// format, read off from its own Betti numbers, is Dynkin.
///
/// Cosets are first filtered by Betti numbers; when two survive in format
/// `(1,5,6,2)` the vanishing of `m11` on `Tor_1 ⊗ Tor_1` decides.
pub fn classify_family(c: &GradedComplex, budget: &Budget) -> Result<FamilyLabel> {
    let betti = c.format();
    if betti[0] != 1 {
        return Err(Error::UnsupportedF0(betti));
    }
    if !c.is_minimal() {
        return Err(Error::NonMinimalComplex);
    }
    let format = Format::new(betti)?;
    format.require_dynkin()?;

    let report = validate_complex(c, budget)?;
    if !report.is_complex {
        return Err(Error::NotPerfect("the maps do not compose to zero".into()));
    }
    if report.acyclic == Verdict::No || report.dual_acyclic == Verdict::No {
        let failed: Vec<String> = report.failures().map(|ch| ch.name.clone()).collect();
        return Err(Error::NotPerfect(failed.join(", ")));
    }

    let shape = format.shape();
    let (_, table) = format_double_cosets(&format)?;
    let names = |word: &[usize]| word.iter().map(|&i| shape.node(i).to_string()).collect::<Vec<_>>();
    let candidates: Vec<Vec<usize>> = table
        .cosets()
        .iter()
        .map(|co| co.representative.word().to_vec())
        .filter(|w| coset_betti_numbers(&shape, w) == betti)
        .collect();

    match candidates.len() {
        0 => Err(Error::Inconsistent(format!("no double coset has Betti numbers {betti:?}"))),
        1 => Ok(FamilyLabel::Coset { format: betti, word: names(&candidates[0]), betti, m11_zero: None }),
        _ => {
            let (_, s) = structure_maps(c, budget)?;
            let m11_zero = is_zero_matrix(&tor_m11(c, &s)?);
            let mut matching = Vec::new();
            for w in &candidates {
                match crate::schubert::coset_m11_vanishes(&format, w) {
                    Ok(z) if z == m11_zero => matching.push(w.clone()),
                    Ok(_) => {}
                    Err(Error::UnsupportedFormat(_)) => matching.push(w.clone()),
                    Err(e) => return Err(e),
                }
            }
            if matching.len() == 1 {
                Ok(FamilyLabel::Coset { format: betti, word: names(&matching[0]), betti, m11_zero: Some(m11_zero) })
            } else {
                Ok(FamilyLabel::Partial {
                    format: betti,
                    betti,
                    candidates: candidates.iter().map(|w| names(w)).collect(),
                    m11_zero: Some(m11_zero),
                })
            }
        }
    }
}
