//! Dense matrices over truncated series.

use std::sync::Arc;

use crate::degree::{Cutoff, DegreeForm, DegreeValue};
use crate::error::{Error, Result};
use crate::series::{CoeffDomain, Series};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    form: Arc<DegreeForm>,
    domain: CoeffDomain,
    rows: usize,
    cols: usize,
    entries: Vec<Series>,
}

/// How an entry looks through a given degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Zeroness {
    Zero,
    NonZero,
    /// No visible terms, and the cutoff lies below the degree in question.
    Ambiguous,
}

pub(crate) fn zeroness(s: &Series, precision: &DegreeValue) -> Result<Zeroness> {
    if s.is_exact_zero() {
        return Ok(Zeroness::Zero);
    }
    if !s.terms().is_empty() {
        return Ok(Zeroness::NonZero);
    }
    let form = s.form();
    if form.cutoff_le(&Cutoff::Finite(precision.clone()), s.cutoff())? {
        Ok(Zeroness::Zero)
    } else {
        Ok(Zeroness::Ambiguous)
    }
}

impl Matrix {
    pub fn zeros(form: &Arc<DegreeForm>, domain: CoeffDomain, rows: usize, cols: usize) -> Matrix {
        Matrix {
            form: form.clone(),
            domain,
            rows,
            cols,
            entries: vec![Series::zero(form, domain); rows * cols],
        }
    }

    pub fn identity(form: &Arc<DegreeForm>, domain: CoeffDomain, n: usize) -> Matrix {
        let mut m = Matrix::zeros(form, domain, n, n);
        for i in 0..n {
            m.set(i, i, Series::one(form, domain));
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(
        form: &Arc<DegreeForm>,
        domain: CoeffDomain,
        cols: usize,
        rows: Vec<Vec<Series>>,
    ) -> Result<Matrix> {
        let mut m = Matrix::zeros(form, domain, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, s) in row.into_iter().enumerate() {
                if s.form() != form {
                    return Err(Error::AmbientMismatch);
                }
                let s = s.with_domain(domain)?;
                m.set(i, j, s);
            }
        }
        Ok(m)
    }

    pub fn form(&self) -> &Arc<DegreeForm> {
        &self.form
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Series) {
        self.entries[i * self.cols + j] = s;
    }

    pub fn row(&self, i: usize) -> &[Series] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn with_domain(&self, domain: CoeffDomain) -> Result<Matrix> {
        let entries = self
            .entries
            .iter()
            .map(|s| s.with_domain(domain))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            domain,
            entries,
            ..self.clone()
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.form, self.domain, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let domain = self.domain.join(other.domain);
        let mut out = Matrix::zeros(&self.form, domain, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Series::zero(&self.form, domain);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_exact_zero() || b.is_exact_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul_bounded(b)?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("operands differ in shape".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            domain: self.domain.join(other.domain),
            entries,
            ..self.clone()
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_i ← x·row_i + y·row_k`.
    pub(crate) fn combine_rows(&mut self, i: usize, x: &Series, k: usize, y: &Series) -> Result<()> {
        for j in 0..self.cols {
            let v = lin(x, self.get(i, j), y, self.get(k, j))?;
            self.set(i, j, v);
        }
        Ok(())
    }

    /// `col_j ← x·col_j + y·col_k`.
    pub(crate) fn combine_cols(&mut self, j: usize, x: &Series, k: usize, y: &Series) -> Result<()> {
        for i in 0..self.rows {
            let v = lin(x, self.get(i, j), y, self.get(i, k))?;
            self.set(i, j, v);
        }
        Ok(())
    }

    pub(crate) fn scale_row(&mut self, i: usize, by: &Series) -> Result<()> {
        for j in 0..self.cols {
            let v = by.mul_bounded(self.get(i, j))?;
            self.set(i, j, v);
        }
        Ok(())
    }

    /// Determinant by dynamic programming over column subsets; fine for the
    /// small matrices this crate handles.
    pub fn determinant(&self) -> Result<Series> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut table: Vec<Option<Series>> = vec![None; 1 << n];
        table[0] = Some(Series::one(&self.form, self.domain));
        for mask in 0usize..(1 << n) {
            let Some(acc) = table[mask].take() else {
                continue;
            };
            let row = mask.count_ones() as usize;
            if row == n {
                table[mask] = Some(acc);
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) != 0 || self.get(row, j).is_exact_zero() {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let mut term = acc.mul_bounded(self.get(row, j))?;
                if above % 2 == 1 {
                    term = term.neg();
                }
                let slot = &mut table[mask | (1 << j)];
                *slot = Some(match slot.take() {
                    None => term,
                    Some(s) => s.add(&term)?,
                });
            }
            table[mask] = Some(acc);
        }
        Ok(table[(1 << n) - 1]
            .take()
            .unwrap_or_else(|| Series::zero(&self.form, self.domain)))
    }
}

fn lin(x: &Series, a: &Series, y: &Series, b: &Series) -> Result<Series> {
    let left = if a.is_exact_zero() {
        Series::zero(a.form(), a.domain())
    } else {
        x.mul_bounded(a)?
    };
    if b.is_exact_zero() || y.is_exact_zero() {
        return Ok(left);
    }
    left.add(&y.mul_bounded(b)?)
}
