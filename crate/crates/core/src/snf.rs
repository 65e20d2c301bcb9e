//! Smith normal form over Euclidean domains with unimodular transforms,
//! instantiated for Z and for Q[t^{±1}].

use num_traits::{One, Signed, Zero};

use crate::laurent::{Int, LaurentPoly, Rat};
use crate::matrix::Mat;

/// Scalars supporting the Euclidean reduction used by the Smith algorithm.
pub trait SnfScalar:
    Clone
    + PartialEq
    + Zero
    + One
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Neg<Output = Self>
{
    /// Euclidean size; None for zero. Pivots of minimal size are chosen first.
    fn size(&self) -> Option<Int>;
    fn divrem(&self, d: &Self) -> (Self, Self);
    /// Split `self = unit * normal` with the normal form canonical
    /// (positive for Z, monic with lowest exponent 0 for Q[t^{±1}]).
    fn unit_split(&self) -> (Self, Self);
    fn unit_inv(unit: &Self) -> Self;
}

impl SnfScalar for Int {
    fn size(&self) -> Option<Int> {
        if self.is_zero() {
            None
        } else {
            Some(self.abs())
        }
    }

    fn divrem(&self, d: &Self) -> (Self, Self) {
        let q = self / d;
        let r = self - &q * d;
        (q, r)
    }

    fn unit_split(&self) -> (Self, Self) {
        if self.is_negative() {
            (-Int::one(), -self.clone())
        } else {
            (Int::one(), self.clone())
        }
    }

    fn unit_inv(unit: &Self) -> Self {
        unit.clone()
    }
}

impl SnfScalar for LaurentPoly {
    fn size(&self) -> Option<Int> {
        self.span().map(Int::from)
    }

    fn divrem(&self, d: &Self) -> (Self, Self) {
        LaurentPoly::divrem(self, d)
    }

    fn unit_split(&self) -> (Self, Self) {
        if self.is_zero() {
            return (LaurentPoly::one(), LaurentPoly::zero());
        }
        let normal = self.monic_normal();
        let unit = LaurentPoly::monomial(self.body().leading(), self.low_exp());
        (unit, normal)
    }

    fn unit_inv(unit: &Self) -> Self {
        let (e, c) = (unit.low_exp(), unit.coeff(unit.low_exp()));
        LaurentPoly::monomial(Rat::one() / c, -e)
    }
}

/// Smith decomposition `u * m * w = d` with `u`, `w` unimodular and their
/// exact inverses tracked alongside.
#[derive(Clone, Debug)]
pub struct Snf<T> {
    pub d: Mat<T>,
    pub u: Mat<T>,
    pub u_inv: Mat<T>,
    pub w: Mat<T>,
    pub w_inv: Mat<T>,
}

impl<T: Clone> Snf<T> {
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

struct Work<T> {
    d: Mat<T>,
    u: Mat<T>,
    u_inv: Mat<T>,
    w: Mat<T>,
    w_inv: Mat<T>,
}

impl<T: SnfScalar> Work<T> {
    fn row_swap(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.w.swap_cols(a, b);
        self.w_inv.swap_rows(a, b);
    }

    /// row_i += c * row_j
    fn row_addmul(&mut self, i: usize, j: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.d.cols() {
            let v = self.d[(i, k)].clone() + c.clone() * self.d[(j, k)].clone();
            self.d[(i, k)] = v;
        }
        for k in 0..self.u.cols() {
            let v = self.u[(i, k)].clone() + c.clone() * self.u[(j, k)].clone();
            self.u[(i, k)] = v;
        }
        for k in 0..self.u_inv.rows() {
            let v = self.u_inv[(k, j)].clone() - c.clone() * self.u_inv[(k, i)].clone();
            self.u_inv[(k, j)] = v;
        }
    }

    /// col_i += c * col_j
    fn col_addmul(&mut self, i: usize, j: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.d.rows() {
            let v = self.d[(k, i)].clone() + c.clone() * self.d[(k, j)].clone();
            self.d[(k, i)] = v;
        }
        for k in 0..self.w.rows() {
            let v = self.w[(k, i)].clone() + c.clone() * self.w[(k, j)].clone();
            self.w[(k, i)] = v;
        }
        for k in 0..self.w_inv.cols() {
            let v = self.w_inv[(j, k)].clone() - c.clone() * self.w_inv[(i, k)].clone();
            self.w_inv[(j, k)] = v;
        }
    }

    /// row_i *= unit
    fn row_scale(&mut self, i: usize, unit: &T) {
        let inv = T::unit_inv(unit);
        for k in 0..self.d.cols() {
            let v = unit.clone() * self.d[(i, k)].clone();
            self.d[(i, k)] = v;
        }
        for k in 0..self.u.cols() {
            let v = unit.clone() * self.u[(i, k)].clone();
            self.u[(i, k)] = v;
        }
        for k in 0..self.u_inv.rows() {
            let v = self.u_inv[(k, i)].clone() * inv.clone();
            self.u_inv[(k, i)] = v;
        }
    }
}

/// Computes the Smith normal form by minimal-size pivoting with Euclidean
/// row/column reduction. The diagonal satisfies the divisibility chain and
/// each entry is in canonical unit-normal form.
pub fn smith<T: SnfScalar>(m: &Mat<T>) -> Snf<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut wk = Work {
        d: m.clone(),
        u: Mat::identity(rows),
        u_inv: Mat::identity(rows),
        w: Mat::identity(cols),
        w_inv: Mat::identity(cols),
    };
    let steps = rows.min(cols);
    for k in 0..steps {
        'stage: loop {
            // minimal-size nonzero pivot in the trailing submatrix
            let mut best: Option<(usize, usize, Int)> = None;
            for i in k..rows {
                for j in k..cols {
                    if let Some(s) = wk.d[(i, j)].size() {
                        if best.as_ref().map_or(true, |(_, _, bs)| s < *bs) {
                            best = Some((i, j, s));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break 'stage; // trailing submatrix is zero
            };
            wk.row_swap(pi, k);
            wk.col_swap(pj, k);

            // Euclidean clearing of column and row k.
            let mut dirty = false;
            for i in k + 1..rows {
                if wk.d[(i, k)].is_zero() {
                    continue;
                }
                let (q, r) = wk.d[(i, k)].divrem(&wk.d[(k, k)]);
                wk.row_addmul(i, k, &(-q));
                if !r.is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if wk.d[(k, j)].is_zero() {
                    continue;
                }
                let (q, r) = wk.d[(k, j)].divrem(&wk.d[(k, k)]);
                wk.col_addmul(j, k, &(-q));
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'stage; // smaller remainders exist; re-pivot
            }

            // Pivot must divide every remaining entry for the chain.
            let mut fixup: Option<usize> = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if wk.d[(i, j)].is_zero() {
                        continue;
                    }
                    let (_, r) = wk.d[(i, j)].divrem(&wk.d[(k, k)]);
                    if !r.is_zero() {
                        fixup = Some(i);
                        break 'scan;
                    }
                }
            }
            match fixup {
                Some(i) => {
                    wk.row_addmul(k, i, &T::one());
                    continue 'stage;
                }
                None => break 'stage,
            }
        }
        // canonical unit normalisation of the pivot
        if !wk.d[(k, k)].is_zero() {
            let (unit, _) = wk.d[(k, k)].unit_split();
            wk.row_scale(k, &T::unit_inv(&unit));
        }
    }
    Snf {
        d: wk.d,
        u: wk.u,
        u_inv: wk.u_inv,
        w: wk.w,
        w_inv: wk.w_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::int;
    use crate::matrix::det_int;
    use proptest::prelude::*;

    fn im(rows: &[&[i64]]) -> Mat<Int> {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    fn check_snf_int(m: &Mat<Int>) -> Snf<Int> {
        let s = smith(m);
        assert_eq!(s.u.mul(m).mul(&s.w), s.d);
        assert_eq!(s.u.mul(&s.u_inv), Mat::identity(m.rows()));
        assert_eq!(s.w.mul(&s.w_inv), Mat::identity(m.cols()));
        assert_eq!(det_int(&s.u).abs(), int(1));
        assert_eq!(det_int(&s.w).abs(), int(1));
        let diag = s.diagonal();
        for pair in diag.windows(2) {
            if !pair[0].is_zero() {
                assert!((&pair[1] % &pair[0]).is_zero(), "chain broken: {:?}", diag);
            } else {
                assert!(pair[1].is_zero());
            }
        }
        // off-diagonal zero
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        s
    }

    #[test]
    fn diag_2_3() {
        let s = check_snf_int(&im(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), vec![int(1), int(6)]);
    }

    #[test]
    fn identity_fixed() {
        let s = check_snf_int(&Mat::identity(3));
        assert_eq!(s.diagonal(), vec![int(1), int(1), int(1)]);
    }

    #[test]
    fn cartan_like() {
        let s = check_snf_int(&im(&[&[-2, 1], &[1, -2]]));
        assert_eq!(s.diagonal(), vec![int(1), int(3)]);
    }

    #[test]
    fn square_det_matches_diag_product() {
        let m = im(&[&[4, 2, 0], &[6, 3, 9], &[2, 8, 4]]);
        let s = check_snf_int(&m);
        let prod: Int = s.diagonal().into_iter().product();
        assert_eq!(prod, det_int(&m).abs());
    }

    #[test]
    fn laurent_snf_presentation_matrix() {
        use crate::laurent::LaurentPoly as L;
        // tV - V^T for V = [[0,2],[1,0]]
        let a = Mat::from_rows(vec![
            vec![L::zero(), L::from_int_coeffs(&[-1, 2])],
            vec![L::from_int_coeffs(&[-2, 1]), L::zero()],
        ]);
        let s = smith(&a);
        assert_eq!(s.u.mul(&a).mul(&s.w), s.d);
        assert_eq!(s.u.mul(&s.u_inv), Mat::identity(2));
        assert_eq!(s.w.mul(&s.w_inv), Mat::identity(2));
        let diag = s.diagonal();
        assert_eq!(diag[0], L::one());
        // monic (t-2)(t-1/2) = t^2 - 5/2 t + 1
        let expected = L::from_terms(vec![
            (0, crate::laurent::rat(1, 1)),
            (1, crate::laurent::rat(-5, 2)),
            (2, crate::laurent::rat(1, 1)),
        ]);
        assert_eq!(diag[1], expected);
    }

    #[test]
    fn laurent_snf_unit_and_chain_cases() {
        use crate::laurent::LaurentPoly as L;
        let id: Mat<L> = Mat::identity(3);
        let s = smith(&id);
        assert!(s.diagonal().iter().all(|f| f.is_one()));

        let t1 = L::from_int_coeffs(&[-1, 1]);
        let t12 = L::from_int_coeffs(&[2, -3, 1]); // (t-1)(t-2)
        let m = Mat::from_rows(vec![vec![t1.clone(), L::zero()], vec![L::zero(), t12.clone()]]);
        let s = smith(&m);
        assert_eq!(s.diagonal(), vec![t1, t12]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn snf_random_roundtrip(entries in proptest::collection::vec(-9i64..=9, 12)) {
            let m = Mat::from_fn(3, 4, |i, j| int(entries[i * 4 + j]));
            check_snf_int(&m);
        }
    }
}
