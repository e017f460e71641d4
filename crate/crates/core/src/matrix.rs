//! Dense matrices over any [`Scalar`] ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::{CycRat, Field, Laurent, Scalar};

/// Row-major dense matrix. Vectors are columns.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

/// Particular solution and null-space basis of `A·X = B`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<F> {
    pub particular: Matrix<F>,
    pub null_space: Vec<Vec<F>>,
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (r, c): (usize, usize)) -> &R {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.data[r * self.cols..(r + 1) * self.cols]
                .iter()
                .map(|x| format!("{x:?}"))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<R: Scalar> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, R::one())
    }

    pub fn scalar(n: usize, s: R) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_columns(cols: &[Vec<R>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        if cols.iter().any(|x| x.len() != r) {
            return Err(Error::ShapeMismatch("ragged columns".into()));
        }
        Ok(Self::from_fn(r, c, |i, j| cols[j][i].clone()))
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
    pub fn data(&self) -> &[R] {
        &self.data
    }
    pub fn row(&self, r: usize) -> &[R] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn column(&self, c: usize) -> Vec<R> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }
    pub fn get(&self, r: usize, c: usize) -> &R {
        &self[(r, c)]
    }
    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.data[r * self.cols + c] = v;
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &[Vec<R>]) {
        for (i, row) in block.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                self.set(r0 + i, c0 + j, v.clone());
            }
        }
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Scalar>(&self, f: impl Fn(&R) -> Result<S>) -> Result<Matrix<S>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn mat_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() && R::EXACT {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if R::EXACT && b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.data[i * o.cols + j];
                    *slot = slot.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    /// Product; panics on a shape mismatch.
    pub fn dot(&self, o: &Self) -> Self {
        self.mat_mul(o).expect("matrix product shape")
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(R::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    fn zip_with(&self, o: &Self, f: impl Fn(R, R) -> R) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        })
    }

    pub fn mat_add(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn mat_sub(&self, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn plus(&self, o: &Self) -> Self {
        self.mat_add(o).expect("matrix sum shape")
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.mat_sub(o).expect("matrix difference shape")
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |a, i| a + self[(i, i)].clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.dot(self);
        }
        acc
    }

    pub fn hstack(parts: &[&Self]) -> Result<Self> {
        let r = parts.first().map_or(0, |m| m.rows);
        if parts.iter().any(|m| m.rows != r) {
            return Err(Error::ShapeMismatch("hstack row counts".into()));
        }
        let c: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(r, c);
        let mut off = 0;
        for m in parts {
            for i in 0..r {
                for j in 0..m.cols {
                    out.set(i, off + j, m[(i, j)].clone());
                }
            }
            off += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Self]) -> Result<Self> {
        let c = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != c) {
            return Err(Error::ShapeMismatch("vstack column counts".into()));
        }
        let mut data = Vec::new();
        for m in parts {
            data.extend(m.data.iter().cloned());
        }
        Ok(Matrix {
            rows: data.len() / c.max(1),
            cols: c,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn scalar_value(&self) -> Option<R> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self[(0, 0)].clone();
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = self[(r, k)].clone();
                let ok = if r == k { (x - c.clone()).is_zero() } else { x.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Entrywise equality in the ring (tolerance-aware for numeric rings).
    pub fn approx_eq(&self, o: &Self) -> bool {
        self.rows == o.rows
            && self.cols == o.cols
            && self
                .data
                .iter()
                .zip(&o.data)
                .all(|(a, b)| (a.clone() - b.clone()).is_zero())
    }

    pub fn max_deviation(&self, o: &Self) -> f64 {
        self.data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| (a.clone() - b.clone()).magnitude())
            .fold(0.0, f64::max)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare)
        }
    }

    /// Determinant: Bareiss in exact rings, partial-pivot LU in numeric ones.
    pub fn det(&self) -> Result<R> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(R::one());
        }
        let mut m = self.data.clone();
        let mut negate = false;
        if R::EXACT {
            let mut prev = R::one();
            for k in 0..n {
                if m[k * n + k].is_zero() {
                    match (k + 1..n).find(|&i| !m[i * n + k].is_zero()) {
                        Some(i) => {
                            for j in 0..n {
                                m.swap(k * n + j, i * n + j);
                            }
                            negate = !negate;
                        }
                        None => return Ok(R::zero()),
                    }
                }
                let p = m[k * n + k].clone();
                for i in k + 1..n {
                    for j in k + 1..n {
                        let v = m[i * n + j].clone() * p.clone()
                            - m[i * n + k].clone() * m[k * n + j].clone();
                        m[i * n + j] = v
                            .exact_div(&prev)
                            .expect("Bareiss step is an exact division");
                    }
                    m[i * n + k] = R::zero();
                }
                prev = p;
            }
            let d = m[n * n - 1].clone();
            Ok(if negate { -d } else { d })
        } else {
            let mut det = R::one();
            for k in 0..n {
                let piv = (k..n)
                    .max_by(|&a, &b| {
                        m[a * n + k]
                            .magnitude()
                            .total_cmp(&m[b * n + k].magnitude())
                    })
                    .unwrap();
                if m[piv * n + k].magnitude() == 0.0 {
                    return Ok(R::zero());
                }
                if piv != k {
                    for j in 0..n {
                        m.swap(k * n + j, piv * n + j);
                    }
                    negate = !negate;
                }
                let p = m[k * n + k].clone();
                let pinv = p.try_inv().unwrap_or_else(R::zero);
                for i in k + 1..n {
                    let f = m[i * n + k].clone() * pinv.clone();
                    for j in k..n {
                        let v = m[i * n + j].clone() - f.clone() * m[k * n + j].clone();
                        m[i * n + j] = v;
                    }
                }
                det = det * p;
            }
            Ok(if negate { -det } else { det })
        }
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Self {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for r in (0..n).filter(|&r| r != skip_r) {
            for c in (0..n).filter(|&c| c != skip_c) {
                data.push(self[(r, c)].clone());
            }
        }
        Matrix {
            rows: n - 1,
            cols: n - 1,
            data,
        }
    }

    pub fn adjugate(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1));
        }
        let mut out = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let d = self.minor(r, c).det()?;
                out.set(c, r, if (r + c) % 2 == 0 { d } else { -d });
            }
        }
        Ok(out)
    }

    /// Inverse by Gauss–Jordan on unit pivots, falling back to the adjugate
    /// when the ring has nonzero non-units.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let scale = self.max_magnitude();
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let cands = (col..n).filter(|&r| !a[r * n + col].negligible(scale));
            let pick = if R::EXACT {
                cands
                    .clone()
                    .find(|&r| a[r * n + col].try_inv().is_some())
            } else {
                cands.clone().max_by(|&x, &y| {
                    a[x * n + col]
                        .magnitude()
                        .total_cmp(&a[y * n + col].magnitude())
                })
            };
            let piv = match pick {
                Some(p) => p,
                None if cands.count() == 0 => return Err(Error::Singular),
                None => return self.inverse_by_adjugate(),
            };
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                    inv.swap(col * n + j, piv * n + j);
                }
            }
            let pinv = a[col * n + col].try_inv().ok_or(Error::Singular)?;
            for j in 0..n {
                a[col * n + j] = a[col * n + j].clone() * pinv.clone();
                inv[col * n + j] = inv[col * n + j].clone() * pinv.clone();
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() && R::EXACT {
                    continue;
                }
                let f = a[r * n + col].clone();
                for j in 0..n {
                    let v = a[r * n + j].clone() - f.clone() * a[col * n + j].clone();
                    a[r * n + j] = v;
                    let w = inv[r * n + j].clone() - f.clone() * inv[col * n + j].clone();
                    inv[r * n + j] = w;
                }
            }
        }
        Ok(Matrix {
            rows: n,
            cols: n,
            data: inv,
        })
    }

    fn inverse_by_adjugate(&self) -> Result<Self> {
        let d = self.det()?;
        if d.is_zero() {
            return Err(Error::Singular);
        }
        let dinv = d.try_inv().ok_or(Error::NonUnitDeterminant)?;
        Ok(self.adjugate()?.scale(&dinv))
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form and pivot columns. Numeric pivots at or below
    /// tolerance × (largest entry of `self`) count as zero.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        let scale = self.max_magnitude();
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let pick = if F::EXACT {
                (r..rows).find(|&i| !a[i * cols + c].is_zero())
            } else {
                (r..rows)
                    .max_by(|&x, &y| {
                        a[x * cols + c]
                            .magnitude()
                            .total_cmp(&a[y * cols + c].magnitude())
                    })
                    .filter(|&i| !a[i * cols + c].negligible(scale))
            };
            let Some(p) = pick else {
                if !F::EXACT {
                    for i in r..rows {
                        a[i * cols + c] = F::zero();
                    }
                }
                continue;
            };
            if p != r {
                for j in 0..cols {
                    a.swap(r * cols + j, p * cols + j);
                }
            }
            let pinv = a[r * cols + c].inv();
            for j in c..cols {
                a[r * cols + j] = a[r * cols + j].clone() * pinv.clone();
            }
            a[r * cols + c] = F::one();
            for i in 0..rows {
                if i == r || (F::EXACT && a[i * cols + c].is_zero()) {
                    continue;
                }
                let f = a[i * cols + c].clone();
                for j in c..cols {
                    let v = a[i * cols + j].clone() - f.clone() * a[r * cols + j].clone();
                    a[i * cols + j] = v;
                }
                a[i * cols + c] = F::zero();
            }
            pivots.push(c);
            r += 1;
        }
        (
            Matrix {
                rows,
                cols,
                data: a,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one column vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (e, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -e[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self · X = b` for a matrix (or single column) `b`.
    pub fn solve(&self, b: &Self) -> Result<Solution<F>> {
        if b.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "system has {} rows, right-hand side {}",
                self.rows, b.rows
            )));
        }
        let aug = Self::hstack(&[self, b])?;
        let (e, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, e[(i, self.cols + j)].clone());
            }
        }
        if !F::EXACT {
            let resid = self.dot(&x).max_deviation(b);
            let scale = self.max_magnitude().max(b.max_magnitude()).max(1.0);
            if resid > crate::scalar::tolerance() * scale * 1e3 {
                return Err(Error::NoSolution);
            }
        }
        Ok(Solution {
            particular: x,
            null_space: self.kernel_basis(),
        })
    }

    /// Column space basis as column vectors.
    pub fn image_basis(&self) -> Vec<Vec<F>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&p| self.column(p)).collect()
    }
}

impl Matrix<Laurent> {
    /// Entries as elements of ℚ(ω); fails if any variable occurs.
    pub fn to_cyc(&self) -> Result<Matrix<CycRat>> {
        self.try_map(|x| x.as_constant().ok_or(Error::SymbolicInput))
    }

    pub fn specialize<R: Scalar>(&self, assign: &BTreeMap<String, R>) -> Result<Matrix<R>> {
        self.try_map(|x| x.specialize(assign))
    }

    pub fn specialize_partial(&self, assign: &BTreeMap<String, Laurent>) -> Result<Matrix<Laurent>> {
        self.try_map(|x| x.specialize_partial(assign))
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.data.iter().flat_map(|x| x.vars().to_vec()).collect();
        v.sort();
        v.dedup();
        v
    }
}

impl Matrix<CycRat> {
    pub fn to_laurent(&self) -> Matrix<Laurent> {
        self.map(|c| Laurent::constant(c.clone()))
    }
}
