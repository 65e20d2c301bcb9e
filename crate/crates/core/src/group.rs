//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::laurent::Int;
use crate::matrix::Mat;
use crate::snf;

/// Invariant factors d_1 | d_2 | ... (each >= 2) plus a free rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub invariant_factors: Vec<Int>,
    pub free_rank: usize,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    /// Cokernel of an integer matrix acting on Z^rows by column span.
    pub fn from_presentation(m: &Mat<Int>) -> Self {
        let s = snf::smith(m);
        Self::from_smith_diagonal(&s.diagonal(), m.rows())
    }

    pub fn from_smith_diagonal(diag: &[Int], rows: usize) -> Self {
        let mut invariant_factors = Vec::new();
        let mut nonzero = 0usize;
        for d in diag {
            if d.is_zero() {
                continue;
            }
            nonzero += 1;
            let a = d.abs();
            if a > Int::one() {
                invariant_factors.push(a);
            }
        }
        AbelianGroup {
            invariant_factors,
            free_rank: rows - nonzero,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order; None when infinite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    pub fn has_odd_order(&self) -> bool {
        self.order().map_or(false, |o| o.is_odd())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

use num_integer::Integer as _;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::int;

    fn im(rows: &[&[i64]]) -> Mat<Int> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn cokernels() {
        let g = AbelianGroup::from_presentation(&im(&[&[2, 0], &[0, 3]]));
        assert_eq!(g.invariant_factors, vec![int(6)]);
        assert_eq!(g.order(), Some(int(6)));

        let g = AbelianGroup::from_presentation(&im(&[&[0, 0], &[0, 5]]));
        assert_eq!(g.free_rank, 1);
        assert_eq!(g.order(), None);

        let g = AbelianGroup::from_presentation(&Mat::identity(4));
        assert!(g.is_trivial());
        assert_eq!(g.to_string(), "0");
    }

    #[test]
    fn display_forms() {
        let g = AbelianGroup {
            invariant_factors: vec![int(7), int(7)],
            free_rank: 0,
        };
        assert_eq!(g.to_string(), "Z/7 + Z/7");
        let g = AbelianGroup {
            invariant_factors: vec![int(3)],
            free_rank: 2,
        };
        assert_eq!(g.to_string(), "Z^2 + Z/3");
    }

    #[test]
    fn serde_roundtrip() {
        let g = AbelianGroup {
            invariant_factors: vec![int(3), int(21)],
            free_rank: 1,
        };
        let s = serde_json::to_string(&g).unwrap();
        let back: AbelianGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
    }
}
