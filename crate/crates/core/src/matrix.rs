//! Dense matrices over exact rings, fraction-free integer determinants,
//! and Gaussian elimination over exact fields.

use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::laurent::Int;

/// Rectangular dense matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Mat<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }
}

impl<T: Clone> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> T>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<U: Clone, F: FnMut(&T) -> U>(&self, mut f: F) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| f(x)).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T: Clone + Zero> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: (0..rows * cols).map(|_| T::zero()).collect(),
        }
    }
}

impl<T: Clone + Zero + One> Mat<T> {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    pub fn mul(&self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        Mat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * rhs[(k, j)].clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    /// Kronecker product: entry ((ia,ib),(ja,jb)) = a[ia,ja] * b[ib,jb],
    /// with the left factor indexing the outer blocks.
    pub fn kron(&self, b: &Mat<T>) -> Mat<T> {
        Mat::from_fn(self.rows * b.rows, self.cols * b.cols, |i, j| {
            let (ia, ib) = (i / b.rows, i % b.rows);
            let (ja, jb) = (j / b.cols, j % b.cols);
            self[(ia, ja)].clone() * b[(ib, jb)].clone()
        })
    }
}

impl<T> Mat<T>
where
    T: Clone + Zero + Add<Output = T> + Sub<Output = T>,
{
    pub fn sub(&self, rhs: &Mat<T>) -> Mat<T> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - rhs[(i, j)].clone()
        })
    }

    pub fn add(&self, rhs: &Mat<T>) -> Mat<T> {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + rhs[(i, j)].clone()
        })
    }
}

impl<T> Mat<T>
where
    T: Clone + Neg<Output = T>,
{
    pub fn neg(&self) -> Mat<T> {
        self.map(|x| -x.clone())
    }
}

/// Exact signed determinant by Bareiss fraction-free elimination.
pub fn det_int(m: &Mat<Int>) -> Int {
    assert_eq!(m.rows, m.cols, "determinant of non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Int::one();
    }
    let mut a = m.clone();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let pivot = (k + 1..n).find(|&i| !a[(i, k)].is_zero());
            match pivot {
                Some(i) => {
                    a.swap_rows(i, k);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[(i, j)].clone() * a[(k, k)].clone()
                    - a[(i, k)].clone() * a[(k, j)].clone())
                    / prev.clone();
                a[(i, j)] = v;
            }
            a[(i, k)] = Int::zero();
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Marker bounds for elimination over an exact field.
pub trait FieldScalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> FieldScalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

/// Gauss-Jordan inverse; None for singular input.
pub fn field_inverse<F: FieldScalar>(m: &Mat<F>) -> Option<Mat<F>> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut inv: Mat<F> = Mat::identity(n);
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[(i, k)].is_zero())?;
        a.swap_rows(pivot, k);
        inv.swap_rows(pivot, k);
        let p = a[(k, k)].clone();
        for j in 0..n {
            a[(k, j)] = a[(k, j)].clone() / p.clone();
            inv[(k, j)] = inv[(k, j)].clone() / p.clone();
        }
        for i in 0..n {
            if i == k || a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone();
            for j in 0..n {
                let v = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                a[(i, j)] = v;
                let w = inv[(i, j)].clone() - f.clone() * inv[(k, j)].clone();
                inv[(i, j)] = w;
            }
        }
    }
    Some(inv)
}

/// Reduced row echelon form; returns (rref, pivot columns).
pub fn rref<F: FieldScalar>(m: &Mat<F>) -> (Mat<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row >= a.rows {
            break;
        }
        let pivot = (row..a.rows).find(|&i| !a[(i, col)].is_zero());
        let Some(p) = pivot else { continue };
        a.swap_rows(p, row);
        let pv = a[(row, col)].clone();
        for j in 0..a.cols {
            a[(row, j)] = a[(row, j)].clone() / pv.clone();
        }
        for i in 0..a.rows {
            if i == row || a[(i, col)].is_zero() {
                continue;
            }
            let f = a[(i, col)].clone();
            for j in 0..a.cols {
                let v = a[(i, j)].clone() - f.clone() * a[(row, j)].clone();
                a[(i, j)] = v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn field_rank<F: FieldScalar>(m: &Mat<F>) -> usize {
    rref(m).1.len()
}

/// Basis of the right nullspace {x : Mx = 0}.
pub fn field_nullspace<F: FieldScalar>(m: &Mat<F>) -> Vec<Vec<F>> {
    let (a, pivots) = rref(m);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in 0..m.cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![F::zero(); m.cols];
        v[free] = F::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -a[(r, free)].clone();
        }
        basis.push(v);
    }
    basis
}
