//! Seifert matrices: validation, Alexander polynomial, determinant and
//! signature, and a seeded random generator for property suites.

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::Error;
use crate::laurent::{Int, LaurentPoly, Poly, Rat};
use crate::matrix::{det_int, Mat};

/// A validated Seifert matrix: square, even-sized, det(V - V^T) = +1.
/// The convention is V_{ij} = lk(a_i^+, a_j); the transpose convention
/// permutes generator labels but changes no computed invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    v: Mat<Int>,
    pub name: Option<String>,
}

impl SeifertMatrix {
    pub fn new(v: Mat<Int>, name: Option<String>) -> Result<Self, Error> {
        if v.rows() != v.cols() {
            return Err(Error::NotSeifert("matrix is not square".into()));
        }
        if v.rows() % 2 != 0 {
            return Err(Error::NotSeifert("odd size".into()));
        }
        let skew = v.sub(&v.transpose());
        if det_int(&skew) != Int::one() {
            return Err(Error::NotSeifert("det(V - V^T) != 1".into()));
        }
        Ok(SeifertMatrix { v, name })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, Error> {
        let m = Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        );
        SeifertMatrix::new(m, None)
    }

    /// Parses the JSON input format: `{"name": optional, "matrix": [[..]]}`.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        #[derive(Deserialize)]
        struct File {
            name: Option<String>,
            matrix: Vec<Vec<i64>>,
        }
        let file: File = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("JSON parse error: {e}")))?;
        let rows = file.matrix.len();
        let cols = file.matrix.first().map_or(0, |r| r.len());
        if file.matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::NotSeifert("ragged matrix rows".into()));
        }
        let m = Mat::from_fn(rows, cols, |i, j| Int::from(file.matrix[i][j]));
        SeifertMatrix::new(m, file.name)
    }

    pub fn matrix(&self) -> &Mat<Int> {
        &self.v
    }

    pub fn size(&self) -> usize {
        self.v.rows()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    /// The symmetrised matrix V + V^T.
    pub fn symmetrised(&self) -> Mat<Int> {
        self.v.add(&self.v.transpose())
    }

    /// The Alexander module presentation matrix tV - V^T over Q[t^{±1}].
    pub fn presentation(&self) -> Mat<LaurentPoly> {
        let n = self.size();
        Mat::from_fn(n, n, |i, j| {
            LaurentPoly::from_terms(vec![
                (1, Rat::from_integer(self.v[(i, j)].clone())),
                (0, -Rat::from_integer(self.v[(j, i)].clone())),
            ])
        })
    }
}

pub fn validate_seifert(m: Mat<Int>) -> Result<SeifertMatrix, Error> {
    SeifertMatrix::new(m, None)
}

/// det(tV - V^T), unit-normalised to lowest exponent 0 and positive
/// leading coefficient. Computed by exact interpolation: the determinant
/// has degree at most 2g, so 2g+1 integer evaluations pin it down.
pub fn alexander_polynomial(v: &SeifertMatrix) -> LaurentPoly {
    let n = v.size();
    if n == 0 {
        return LaurentPoly::one();
    }
    let vt = v.matrix().transpose();
    let points: Vec<i64> = (0..=n as i64).collect();
    let values: Vec<Int> = points
        .iter()
        .map(|&t| {
            let m = Mat::from_fn(n, n, |i, j| {
                Int::from(t) * v.matrix()[(i, j)].clone() - vt[(i, j)].clone()
            });
            det_int(&m)
        })
        .collect();
    // Lagrange interpolation over Q
    let mut poly = Poly::zero();
    for (k, &xk) in points.iter().enumerate() {
        let mut basis = Poly::one();
        let mut denom = Rat::one();
        for (j, &xj) in points.iter().enumerate() {
            if j == k {
                continue;
            }
            basis = basis * Poly::from_int_coeffs(&[-xj, 1]);
            denom = denom * Rat::from_integer(Int::from(xk - xj));
        }
        let c = Rat::from_integer(values[k].clone()) / denom;
        poly = poly + basis.scale(&c);
    }
    let delta = LaurentPoly::from_poly(poly).unit_normal();
    debug_assert!(delta.is_integral());
    delta
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalInvariants {
    /// |det(V + V^T)| = |Δ(-1)|, the knot determinant.
    pub determinant: Int,
    /// Signature of V + V^T, by exact rational congruence diagonalisation.
    pub signature: i64,
}

pub fn classical_invariants(v: &SeifertMatrix) -> ClassicalInvariants {
    let sym = v.symmetrised();
    ClassicalInvariants {
        determinant: det_int(&sym).abs(),
        signature: signature_of_symmetric(&sym.map(|x| Rat::from_integer(x.clone()))),
    }
}

/// Signature of a symmetric rational matrix via simultaneous row/column
/// reduction. A zero diagonal with a nonzero off-diagonal entry is handled
/// by the symmetric pivot move row_i += row_j, col_i += col_j.
pub fn signature_of_symmetric(m: &Mat<Rat>) -> i64 {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a = m.clone();
    let mut sig = 0i64;
    for k in 0..n {
        // find a usable pivot on the diagonal
        let diag = (k..n).find(|&i| !a[(i, i)].is_zero());
        match diag {
            Some(i) => {
                a.swap_rows(i, k);
                a.swap_cols(i, k);
            }
            None => {
                // all remaining diagonal entries are zero
                let mut found = None;
                'search: for i in k..n {
                    for j in k..n {
                        if i != j && !a[(i, j)].is_zero() {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                for c in 0..n {
                    let v = a[(i, c)].clone() + a[(j, c)].clone();
                    a[(i, c)] = v;
                }
                for r in 0..n {
                    let v = a[(r, i)].clone() + a[(r, j)].clone();
                    a[(r, i)] = v;
                }
                a.swap_rows(i, k);
                a.swap_cols(i, k);
            }
        }
        let pivot = a[(k, k)].clone();
        if pivot.is_zero() {
            break;
        }
        sig += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone() / pivot.clone();
            for c in 0..n {
                let v = a[(i, c)].clone() - f.clone() * a[(k, c)].clone();
                a[(i, c)] = v;
            }
            for r in 0..n {
                let v = a[(r, i)].clone() - f.clone() * a[(r, k)].clone();
                a[(r, i)] = v;
            }
        }
    }
    sig
}

/// Deterministic random Seifert matrix: a random symmetric part plus the
/// fixed upper-triangular half of the standard symplectic form, so
/// V - V^T is always that form and validation never fails.
pub fn random_seifert(genus: usize, coefficient_bound: u64, seed: u64) -> SeifertMatrix {
    assert!(genus >= 1, "genus must be at least 1");
    let n = 2 * genus;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = coefficient_bound as i64;
    let mut m: Mat<Int> = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let e = if b == 0 { 0 } else { rng.gen_range(-b..=b) };
            m[(i, j)] = Int::from(e);
            if j > i {
                m[(j, i)] = Int::from(e);
            }
        }
    }
    for g in 0..genus {
        let v = m[(2 * g, 2 * g + 1)].clone() + Int::one();
        m[(2 * g, 2 * g + 1)] = v;
    }
    SeifertMatrix::new(m, None).expect("construction guarantees validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::int;

    #[test]
    fn validation_examples() {
        assert!(SeifertMatrix::from_int_rows(&[&[0, 2], &[1, 0]]).is_ok());
        assert!(SeifertMatrix::from_int_rows(&[]).is_ok());
        let err = SeifertMatrix::from_int_rows(&[&[1, 0], &[0, 1]]).unwrap_err();
        assert!(err.to_string().contains("det(V - V^T)"));
        let err = SeifertMatrix::from_int_rows(&[&[1]]).unwrap_err();
        assert!(err.to_string().contains("odd size"));
    }

    #[test]
    fn alexander_examples() {
        let v1 = SeifertMatrix::from_int_rows(&[&[0, 2], &[1, 0]]).unwrap();
        assert_eq!(alexander_polynomial(&v1), LaurentPoly::from_int_coeffs(&[2, -5, 2]));

        let unknot = SeifertMatrix::from_int_rows(&[]).unwrap();
        assert_eq!(alexander_polynomial(&unknot), LaurentPoly::one());

        let trefoil = SeifertMatrix::from_int_rows(&[&[-1, 1], &[0, -1]]).unwrap();
        assert_eq!(
            alexander_polynomial(&trefoil),
            LaurentPoly::from_int_coeffs(&[1, -1, 1])
        );
    }

    #[test]
    fn classical_examples() {
        let v1 = SeifertMatrix::from_int_rows(&[&[0, 2], &[1, 0]]).unwrap();
        let inv = classical_invariants(&v1);
        assert_eq!(inv.determinant, int(9));
        assert_eq!(inv.signature, 0);

        let trefoil = SeifertMatrix::from_int_rows(&[&[-1, 1], &[0, -1]]).unwrap();
        let inv = classical_invariants(&trefoil);
        assert_eq!(inv.determinant, int(3));
        assert_eq!(inv.signature, -2);

        let unknot = SeifertMatrix::from_int_rows(&[]).unwrap();
        let inv = classical_invariants(&unknot);
        assert_eq!(inv.determinant, int(1));
        assert_eq!(inv.signature, 0);
    }

    #[test]
    fn random_generator_validates() {
        let v = random_seifert(1, 0, 0);
        assert_eq!(v.matrix()[(0, 1)], int(1));
        assert_eq!(v.matrix()[(1, 0)], int(0));
        for seed in 0..20 {
            let v = random_seifert(2, 3, seed);
            assert!(validate_seifert(v.matrix().clone()).is_ok());
            let d = alexander_polynomial(&v);
            let at_one = d.eval(&Rat::one()).abs();
            assert!(at_one.is_one());
        }
    }

    #[test]
    fn json_parsing() {
        let v = SeifertMatrix::from_json(r#"{"name":"K1","matrix":[[0,2],[1,0]]}"#).unwrap();
        assert_eq!(v.name.as_deref(), Some("K1"));
        let v = SeifertMatrix::from_json(r#"{"matrix":[]}"#).unwrap();
        assert_eq!(v.size(), 0);
        assert!(SeifertMatrix::from_json(r#"{"matrix":[[1,0],[0,1]]}"#).is_err());
        assert!(SeifertMatrix::from_json("not json").is_err());
    }
}
