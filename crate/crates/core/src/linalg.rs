//! Exact integer and rational linear algebra: Smith normal form with recorded
//! unimodular transforms, saturated kernel lattices, and determinant signs.
//!
//! All pivoting is deterministic (smallest nonzero absolute value, earliest
//! row/column on ties) so that every downstream computation is reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
}

/// Dense integer matrix in row-major order with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += q * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * &self[(source, j)];
            self[(target, j)] += add;
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * &self[(i, source)];
            self[(i, target)] += add;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self[(r, j)].clone();
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// Invariant-factor decomposition `left * A * right = diag(factors)` with
/// `left`, `right` unimodular and each factor dividing the next.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub factors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Invariant factors larger than one, i.e. the torsion coefficients when
    /// the matrix presents a quotient of free abelian groups.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|f| **f > BigInt::one()).cloned().collect()
    }
}

/// Pivot selection: smallest nonzero absolute value in the trailing submatrix,
/// scanning rows then columns so ties resolve to the earliest position.
fn select_pivot(b: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in k..b.rows() {
        for j in k..b.cols() {
            let v = &b[(i, j)];
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            match &best {
                Some((cur, _, _)) if *cur <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smith normal form over the integers. Deterministic for fixed input.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (rows, cols) = (a.rows(), a.cols());
    let mut b = a.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let mut k = 0;
    while k < rows.min(cols) {
        let Some((pi, pj)) = select_pivot(&b, k) else { break };
        b.swap_rows(k, pi);
        left.swap_rows(k, pi);
        b.swap_cols(k, pj);
        right.swap_cols(k, pj);

        // Clear the pivot row and column; repeat whenever a remainder step
        // produces a smaller pivot candidate.
        'reduce: loop {
            for i in (k + 1)..rows {
                if !b[(i, k)].is_zero() {
                    let q = -b[(i, k)].div_floor(&b[(k, k)]);
                    b.add_row_multiple(i, k, &q);
                    left.add_row_multiple(i, k, &q);
                    if !b[(i, k)].is_zero() {
                        // nonzero remainder: it is strictly smaller, promote it
                        b.swap_rows(k, i);
                        left.swap_rows(k, i);
                        continue 'reduce;
                    }
                }
            }
            for j in (k + 1)..cols {
                if !b[(k, j)].is_zero() {
                    let q = -b[(k, j)].div_floor(&b[(k, k)]);
                    b.add_col_multiple(j, k, &q);
                    right.add_col_multiple(j, k, &q);
                    if !b[(k, j)].is_zero() {
                        b.swap_cols(k, j);
                        right.swap_cols(k, j);
                        continue 'reduce;
                    }
                }
            }
            // Divisibility: the pivot must divide every remaining entry.
            let mut fixed = false;
            'search: for i in (k + 1)..rows {
                for j in (k + 1)..cols {
                    if !(&b[(i, j)] % &b[(k, k)]).is_zero() {
                        let one = BigInt::one();
                        b.add_row_multiple(k, i, &one);
                        left.add_row_multiple(k, i, &one);
                        fixed = true;
                        break 'search;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
        if b[(k, k)].is_negative() {
            b.negate_row(k);
            left.negate_row(k);
        }
        k += 1;
    }

    let factors = (0..k).map(|i| b[(i, i)].clone()).collect();
    SnfResult { factors, left, right }
}

/// Basis of the saturated integer kernel lattice of `A`; the matrix maps each
/// returned vector to zero, and the count is `cols - rank`.
pub fn integer_kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    (rank..a.cols()).map(|j| snf.right.column(j)).collect()
}

/// Sign of the determinant of a square integer matrix via fraction-free
/// Bareiss elimination.
pub fn det_sign(a: &IntMatrix) -> Result<i32, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(1);
    }
    let mut m = a.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return Ok(0);
            };
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = num / &prev;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    let d = &m[(n - 1, n - 1)];
    Ok(if d.is_zero() {
        0
    } else if d.is_negative() {
        -sign
    } else {
        sign
    })
}

// ---------------------------------------------------------------------------
// Exact rational matrices, used by the orientation calculus.
// ---------------------------------------------------------------------------

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Dense rational matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        QMat { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        QMat::new(rows, cols, entries.iter().map(|&x| rat(x)).collect())
    }

    /// Build from an ordered list of column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Self {
        let mut m = QMat::zero(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &QMat) -> QMat {
        assert_eq!(self.rows, other.rows);
        let mut m = QMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Vertical concatenation [self; other].
    pub fn vcat(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.cols);
        let mut m = QMat::zero(self.rows + other.rows, self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                m[(i, j)] = self[(i, j)].clone();
            }
            for i in 0..other.rows {
                m[(self.rows + i, j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_slice(&self, lo: usize, hi: usize) -> QMat {
        let mut m = QMat::zero(hi - lo, self.cols);
        for i in lo..hi {
            for j in 0..self.cols {
                m[(i - lo, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form; returns (rref, pivot column indices).
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m[(i, j)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = m[(r, j)].recip();
            for jj in j..m.cols {
                let v = &m[(r, jj)] * &inv;
                m[(r, jj)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, j)].is_zero() {
                    let factor = m[(i, j)].clone();
                    for jj in j..m.cols {
                        let v = &m[(i, jj)] - &factor * &m[(r, jj)];
                        m[(i, jj)] = v;
                    }
                }
            }
            pivots.push(j);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel basis in the standard column convention: one vector per free
    /// column, with a 1 in the free position. Deterministic.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if pivot_set.contains(&j) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[j] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, j)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b`, if any, using pivot columns in the
    /// order given by `col_order` (defaults to left-to-right when `None`).
    pub fn solve(&self, b: &[Rat], col_order: Option<&[usize]>) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let default: Vec<usize> = (0..self.cols).collect();
        let order: &[usize] = col_order.unwrap_or(&default);
        assert_eq!(order.len(), self.cols);

        // Reorder columns, append b, run rref, read a particular solution.
        let mut aug = QMat::zero(self.rows, self.cols + 1);
        for (newj, &oldj) in order.iter().enumerate() {
            for i in 0..self.rows {
                aug[(i, newj)] = self[(i, oldj)].clone();
            }
        }
        for i in 0..self.rows {
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[order[pc]] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Solve `self * X = B` for all columns of B with a single elimination.
    pub fn solve_matrix(&self, b: &QMat, col_order: Option<&[usize]>) -> Option<QMat> {
        assert_eq!(b.rows(), self.rows);
        let default: Vec<usize> = (0..self.cols).collect();
        let order: &[usize] = col_order.unwrap_or(&default);
        assert_eq!(order.len(), self.cols);

        let mut aug = QMat::zero(self.rows, self.cols + b.cols());
        for (newj, &oldj) in order.iter().enumerate() {
            for i in 0..self.rows {
                aug[(i, newj)] = self[(i, oldj)].clone();
            }
        }
        for j in 0..b.cols() {
            for i in 0..self.rows {
                aug[(i, self.cols + j)] = b[(i, j)].clone();
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None; // some right-hand side is inconsistent
        }
        let mut x = QMat::zero(self.cols, b.cols());
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols() {
                x[(order[pc], j)] = r[(row, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// Determinant sign of a square rational matrix. Columns are scaled by
    /// positive integers to clear denominators, then the sign comes from
    /// fraction-free integer elimination.
    pub fn det_sign(&self) -> i32 {
        assert!(self.rows == self.cols, "det_sign requires a square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut ints = IntMatrix::zero(n, n);
        for j in 0..n {
            let mut scale = BigInt::one();
            for i in 0..n {
                scale = scale.lcm(self[(i, j)].denom());
            }
            for i in 0..n {
                let v = &self[(i, j)] * Rat::from_integer(scale.clone());
                debug_assert!(v.is_integer());
                ints[(i, j)] = v.to_integer();
            }
        }
        det_sign(&ints).expect("matrix is square")
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }
}
