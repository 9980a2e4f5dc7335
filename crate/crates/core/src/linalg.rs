//! Dense exact matrices over ℚ(√2), a sparse exact Gauss–Jordan solver and
//! span closure of matrix families.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::scalar::Scalar;

/// A dense `rows × cols` matrix, row-major. Used both for general linear
/// algebra and as the endomorphism type: column `j` is the image of `e_{j+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn scalar_multiple(n: usize, s: &Scalar) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, s) in entries.iter().enumerate() {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(cols: &[Vec<Scalar>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Matrix::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_fn(r, c, |i, j| Scalar::from_int(rows[i][j]))
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn set_column(&mut self, c: usize, v: &[Scalar]) {
        for (r, x) in v.iter().enumerate() {
            self.set(r, c, x.clone());
        }
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += &(b * s);
            }
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = vec![Scalar::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        out
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    /// `[[a, b], [c, d]]` assembled from four blocks.
    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Self {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let (r1, c1) = (a.rows, a.cols);
        Matrix::from_fn(a.rows + c.rows, a.cols + b.cols, |r, col| {
            match (r < r1, col < c1) {
                (true, true) => a.get(r, col).clone(),
                (true, false) => b.get(r, col - c1).clone(),
                (false, true) => c.get(r - r1, col).clone(),
                (false, false) => d.get(r - r1, col - c1).clone(),
            }
        })
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Self {
        Matrix::from_blocks(
            a,
            &Matrix::zeros(a.rows, b.cols),
            &Matrix::zeros(b.rows, a.cols),
            b,
        )
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Scalar, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(bareiss_det(self.clone()))
    }

    /// Leading principal minors of orders `1..=n`.
    pub fn leading_principal_minors(&self) -> Result<Vec<Scalar>, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((1..=self.rows)
            .map(|k| bareiss_det(Matrix::from_fn(k, k, |r, c| self.get(r, c).clone())))
            .collect())
    }

    pub fn rank(&self) -> usize {
        let sys = SparseSystem::homogeneous(self);
        sys.solve().map_or(0, |s| s.rank)
    }

    /// Basis of `{x : Ax = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        match SparseSystem::homogeneous(self).solve() {
            Ok(s) => s.kernel,
            Err(_) => Vec::new(),
        }
    }

    pub fn inverse(&self) -> Result<Matrix, Error> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        // Gauss–Jordan on [A | I]
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::Singular)?;
            if piv != col {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            let p = a.get(col, col).try_inv()?;
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                a.row_axpy(r, col, &-&f);
                inv.row_axpy(r, col, &-&f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            let v = self.get(r, c) * s;
            self.set(r, c, v);
        }
    }

    /// `row[dst] += s * row[src]`.
    fn row_axpy(&mut self, dst: usize, src: usize, s: &Scalar) {
        for c in 0..self.cols {
            let x = self.get(src, c);
            if x.is_zero() {
                continue;
            }
            let v = x * s;
            *self.entry_mut(dst, c) += &v;
        }
    }
}

fn bareiss_det(mut m: Matrix) -> Scalar {
    let n = m.rows;
    if n == 0 {
        return Scalar::one();
    }
    let mut sign = false;
    let mut prev = Scalar::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                Some(r) => {
                    m.swap_rows(k, r);
                    sign = !sign;
                }
                None => return Scalar::zero(),
            }
        }
        let pivot = m.get(k, k).clone();
        let prev_inv = prev.try_inv().expect("Bareiss pivot is nonzero");
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&(&pivot * m.get(i, j)) - &(m.get(i, k) * m.get(k, j))) * &prev_inv;
                m.set(i, j, v);
            }
            m.set(i, k, Scalar::zero());
        }
        prev = pivot;
    }
    let d = m.get(n - 1, n - 1).clone();
    if sign {
        -d
    } else {
        d
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    /// Panics on a dimension mismatch.
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.entry_mut(i, j) += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), rhs);
        out
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(&Scalar::from_int(-1), rhs);
        out
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&Scalar::from_int(-1))
    }
}

/// A sparse row: `(column, coefficient)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// `A x = b` with sparse rows, solved exactly by Gauss–Jordan elimination.
/// Pivot rows are chosen shortest-first per column to limit fill-in.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    ncols: usize,
    rows: Vec<SparseRow>,
    rhs: Vec<Scalar>,
}

/// Reduced form of a solved system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub rank: usize,
    /// Solution with all free variables zero; `None` if inconsistent.
    pub particular: Option<Vec<Scalar>>,
    /// Basis of the homogeneous solution space.
    pub kernel: Vec<Vec<Scalar>>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem {
            ncols,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn homogeneous(a: &Matrix) -> Self {
        let zero = vec![Scalar::zero(); a.rows()];
        SparseSystem::from_dense(a, &zero)
    }

    pub fn from_dense(a: &Matrix, b: &[Scalar]) -> Self {
        let mut sys = SparseSystem::new(a.cols());
        for r in 0..a.rows() {
            let row = a
                .row(r)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (c, x.clone()))
                .collect();
            sys.push_sorted(row, b[r].clone());
        }
        sys
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Adds `Σ coeff·x_col = rhs`; duplicate columns are summed.
    pub fn push(&mut self, terms: impl IntoIterator<Item = (usize, Scalar)>, rhs: Scalar) {
        let mut row: SparseRow = Vec::new();
        for (c, v) in terms {
            assert!(c < self.ncols, "column out of range");
            if v.is_zero() {
                continue;
            }
            match row.binary_search_by_key(&c, |e| e.0) {
                Ok(i) => {
                    row[i].1 += &v;
                    if row[i].1.is_zero() {
                        row.remove(i);
                    }
                }
                Err(i) => row.insert(i, (c, v)),
            }
        }
        self.push_sorted(row, rhs);
    }

    fn push_sorted(&mut self, row: SparseRow, rhs: Scalar) {
        if row.is_empty() && rhs.is_zero() {
            return;
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn solve(mut self) -> Result<Reduced, Error> {
        let n = self.ncols;
        let mut is_pivot_row = vec![false; self.rows.len()];
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
        for col in 0..n {
            let mut best: Option<usize> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if is_pivot_row[r] || row.binary_search_by_key(&col, |e| e.0).is_err() {
                    continue;
                }
                if best.is_none_or(|b| row.len() < self.rows[b].len()) {
                    best = Some(r);
                }
            }
            let Some(p) = best else { continue };
            is_pivot_row[p] = true;
            pivot_of_col[col] = Some(p);
            let idx = self.rows[p].binary_search_by_key(&col, |e| e.0).unwrap();
            let inv = self.rows[p][idx].1.try_inv()?;
            for e in self.rows[p].iter_mut() {
                e.1 = &e.1 * &inv;
            }
            self.rhs[p] = &self.rhs[p] * &inv;
            let pivot_row = self.rows[p].clone();
            let pivot_rhs = self.rhs[p].clone();
            for r in 0..self.rows.len() {
                if r == p {
                    continue;
                }
                let Ok(i) = self.rows[r].binary_search_by_key(&col, |e| e.0) else {
                    continue;
                };
                let f = self.rows[r][i].1.clone();
                self.rows[r] = axpy_row(&self.rows[r], &pivot_row, &f);
                self.rhs[r] = &self.rhs[r] - &(&f * &pivot_rhs);
            }
        }
        let rank = pivot_of_col.iter().filter(|p| p.is_some()).count();
        let consistent = self
            .rows
            .iter()
            .zip(&self.rhs)
            .enumerate()
            .all(|(r, (row, b))| is_pivot_row[r] || !row.is_empty() || b.is_zero());
        let particular = consistent.then(|| {
            let mut x = vec![Scalar::zero(); n];
            for (c, p) in pivot_of_col.iter().enumerate() {
                if let Some(p) = p {
                    x[c] = self.rhs[*p].clone();
                }
            }
            x
        });
        let mut kernel = Vec::new();
        for free in (0..n).filter(|&c| pivot_of_col[c].is_none()) {
            let mut v = vec![Scalar::zero(); n];
            v[free] = Scalar::one();
            for (c, p) in pivot_of_col.iter().enumerate() {
                if let Some(p) = p {
                    if let Ok(i) = self.rows[*p].binary_search_by_key(&free, |e| e.0) {
                        v[c] = -&self.rows[*p][i].1;
                    }
                }
            }
            kernel.push(v);
        }
        Ok(Reduced {
            rank,
            particular,
            kernel,
        })
    }
}

/// `a − f·b` for sorted sparse rows.
fn axpy_row(a: &SparseRow, b: &SparseRow, f: &Scalar) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -&(&b[j].1 * f)));
            j += 1;
        } else {
            let v = &a[i].1 - &(&b[j].1 * f);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Outcome of [`linear_solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Scalar>),
    Inconsistent,
    /// `particular + span(kernel)`.
    Family {
        particular: Vec<Scalar>,
        kernel: Vec<Vec<Scalar>>,
    },
}

/// Solves `A x = b` exactly and describes the full affine solution set.
pub fn linear_solve(a: &Matrix, b: &[Scalar]) -> Result<LinearSolution, Error> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let red = SparseSystem::from_dense(a, b).solve()?;
    Ok(match red.particular {
        None => LinearSolution::Inconsistent,
        Some(x) if red.kernel.is_empty() => LinearSolution::Unique(x),
        Some(x) => LinearSolution::Family {
            particular: x,
            kernel: red.kernel,
        },
    })
}

/// Which operations a span must be closed under.
#[derive(Clone, Debug, Default)]
pub struct ClosureRule {
    /// Closed under `X ↦ [A, X]` for every listed `A`.
    pub operators: Vec<Matrix>,
    /// Closed under `(X, Y) ↦ [X, Y]`.
    pub commutators: bool,
}

impl ClosureRule {
    pub fn commutator() -> Self {
        ClosureRule {
            operators: Vec::new(),
            commutators: true,
        }
    }

    pub fn linear_span() -> Self {
        ClosureRule::default()
    }
}

/// Incrementally maintained echelon basis of a subspace of flattened matrices.
struct EchelonSpan {
    basis: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonSpan {
    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (p, b) in &self.basis {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        v
    }

    /// Returns true if `v` enlarged the span.
    fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].try_inv().expect("nonzero pivot");
        let v = v.iter().map(|x| x * &inv).collect();
        self.basis.push((p, v));
        true
    }
}

/// Basis of the smallest subspace containing `generators` and closed under
/// `rule`. The basis is returned in reduced row-echelon form of the flattened
/// matrices, so equal spans give equal output.
pub fn span_closure(generators: &[Matrix], rule: &ClosureRule) -> Result<Vec<Matrix>, Error> {
    let Some(first) = generators.first().or(rule.operators.first()) else {
        return Ok(Vec::new());
    };
    let (r, c) = (first.rows(), first.cols());
    for m in generators.iter().chain(&rule.operators) {
        if (m.rows(), m.cols()) != (r, c) {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: m.rows(),
            });
        }
    }
    let mut span = EchelonSpan { basis: Vec::new() };
    let mut members: Vec<Matrix> = Vec::new();
    let mut queue: Vec<Matrix> = Vec::new();
    for g in generators {
        if span.insert(g.entries().to_vec()) {
            members.push(g.clone());
            queue.push(g.clone());
        }
    }
    while let Some(x) = queue.pop() {
        let mut candidates: Vec<Matrix> = rule.operators.iter().map(|a| a.commutator(&x)).collect();
        if rule.commutators {
            candidates.extend(members.iter().map(|y| x.commutator(y)));
        }
        for cand in candidates {
            if cand.is_zero() {
                continue;
            }
            if span.insert(cand.entries().to_vec()) {
                members.push(cand.clone());
                queue.push(cand);
            }
        }
    }
    Ok(rref_basis(span, r, c))
}

fn rref_basis(span: EchelonSpan, rows: usize, cols: usize) -> Vec<Matrix> {
    let mut basis = span.basis;
    basis.sort_by_key(|(p, _)| *p);
    // back-substitute so every pivot column is zero in the other vectors
    for i in 0..basis.len() {
        let (p, v) = basis[i].clone();
        for (j, (_, w)) in basis.iter_mut().enumerate() {
            if j == i || w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
    }
    basis
        .into_iter()
        .map(|(_, v)| Matrix {
            rows,
            cols,
            data: v,
        })
        .collect()
}
