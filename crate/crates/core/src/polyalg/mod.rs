//! Exact polynomial algebra over the rationals: sparse polynomials, graded
//! polynomial matrices, degree-by-degree linear solving and a small
//! Buchberger engine for dimensions and ideal equality.

pub mod groebner;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod solve;

pub use groebner::{buchberger, grade_at_least, ideal_equal, GroebnerBasis, GroebnerBudget, Ideal, TermOrder};
pub use matrix::{combinations, complement, shuffle_sign, PolyMatrix};
pub use poly::{int, rat, Coeff, Grading, Homogeneity, Monomial, MultiPoly};
pub use solve::{graded_solve, monomials_of_degree, GradedSolution, SolveBudget};

use crate::error::{Error, Result};

/// Caps for the Gröbner engine and the graded solver together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    pub groebner: GroebnerBudget,
    pub solve: SolveBudget,
}

impl Budget {
    /// Named profiles: `small` divides every cap by ten, `large` multiplies
    /// it by ten.
    pub fn profile(name: &str) -> Result<Budget> {
        let base = Budget::default();
        let scale = |b: Budget, num: usize, den: usize| Budget {
            groebner: GroebnerBudget { max_steps: b.groebner.max_steps * num / den },
            solve: SolveBudget {
                max_degree: b.solve.max_degree * num as i64 / den as i64,
                max_unknowns: b.solve.max_unknowns * num / den,
            },
        };
        match name {
            "small" => Ok(scale(base, 1, 10)),
            "default" => Ok(base),
            "large" => Ok(scale(base, 10, 1)),
            other => Err(Error::Parse(format!("unknown budget profile `{other}`"))),
        }
    }
}
