use std::fmt;

use itertools::Itertools;

use crate::arith::{same_ring, Field, Poly, RingExt, RingRef};
use crate::error::{Error, Result};

/// A map `A^cols -> A^rows` of free modules, stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    ring: RingRef<F>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly<F>>,
}

/// Matrices act on free modules; the two names are used interchangeably.
pub type FreeMap<F> = Matrix<F>;

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}", self.rows, self.cols)?;
        f.debug_list()
            .entries(
                self.to_rows()
                    .iter()
                    .map(|r| r.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            )
            .finish()
    }
}

/// Serialized row-major as lists of polynomial strings.
impl<F: Field> serde::Serialize for Matrix<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", (0..self.cols).map(|j| self.get(i, j).to_string()).join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(ring: RingRef<F>, rows: usize, cols: usize, data: Vec<Vec<Poly<F>>>) -> Result<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "matrix data does not have shape {rows}x{cols}"
            )));
        }
        let entries: Vec<Poly<F>> = data.into_iter().flatten().collect();
        if let Some(p) = entries.iter().find(|p| !same_ring(p.ring(), &ring)) {
            return Err(Error::RingMismatch(format!("matrix entry {p} from another ring")));
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_columns(ring: RingRef<F>, rows: usize, columns: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let cols = columns.len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension(format!("column length differs from {rows}")));
        }
        let mut m = Matrix::zero(ring, rows, cols);
        for (j, c) in columns.into_iter().enumerate() {
            for (i, p) in c.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    pub fn zero(ring: RingRef<F>, rows: usize, cols: usize) -> Self {
        let entries = vec![ring.zero(); rows * cols];
        Matrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(ring: RingRef<F>, n: usize) -> Self {
        let one = ring.one();
        Self::scalar(ring, n, &one)
    }

    /// `f` times the identity.
    pub fn scalar(ring: RingRef<F>, n: usize, f: &Poly<F>) -> Self {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, f.clone());
        }
        m
    }

    pub fn diagonal(ring: RingRef<F>, diag: &[Poly<F>]) -> Self {
        let mut m = Matrix::zero(ring, diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    /// Rank of the target.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Rank of the source.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly<F>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> Vec<Poly<F>> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Poly<F>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly<F>>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly<F>>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for a map with {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![self.ring.zero(); self.rows];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let e = self.get(i, j);
                if !e.is_zero() {
                    *o = &*o + &(e * c);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let s = out.get(i, j) + &(a * b);
                        out.set(i, j, s);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Matrix {
            entries,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Matrix {
            entries,
            ..self.clone()
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn scale(&self, f: &Poly<F>) -> Self {
        self.map(|p| p * f)
    }

    pub fn map(&self, mut g: impl FnMut(&Poly<F>) -> Poly<F>) -> Self {
        Matrix {
            entries: self.entries.iter().map(&mut g).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zero(self.ring.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack of matrices with different row counts".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(self.ring.clone(), self.rows, cols)
    }

    /// `self` stacked above `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension(
                "vstack of matrices with different column counts".into(),
            ));
        }
        let mut rows = self.to_rows();
        rows.extend(other.to_rows());
        Self::new(self.ring.clone(), self.rows + other.rows, self.cols, rows)
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Matrix::zero(self.ring.clone(), self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Matrix::zero(self.ring.clone(), rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination; every division is exact.
    pub fn determinant(&self) -> Result<Poly<F>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.ring.one());
        }
        let mut a: Vec<Vec<Poly<F>>> = self.to_rows();
        let mut sign_flip = false;
        let mut prev = self.ring.one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(self.ring.zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = self.ring.zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign_flip { -&d } else { d })
    }

    /// All nonzero `t x t` minors, in lexicographic order of row then column subsets.
    pub fn minors(&self, t: usize) -> Vec<Poly<F>> {
        let mut out = Vec::new();
        for rs in (0..self.rows).combinations(t) {
            for cs in (0..self.cols).combinations(t) {
                let d = self.submatrix(&rs, &cs).determinant().expect("square");
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    pub fn to_ring(&self, ring: &RingRef<F>) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }
}
