//! Matrices over `F[z]`.
//!
//! Public index arguments named `row_set`/`col_set` are 1-based, everything
//! else is 0-based.

mod prime;
mod reduce;
mod smith;

pub use prime::{
    default_inverse_degree_bound, is_left_prime, left_prime_factorization, right_inverse, row_equivalence,
    LeftPrimeFactorization, PrimenessMethod,
};
pub use reduce::{is_row_reduced, row_reduce, RowReducedForm};
pub use smith::{determinantal_divisors, invariant_factors_by_minors, smith, SmithDecomposition};

pub(crate) use prime::{assemble_from_stack, toeplitz_stack};

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::Matrix;
use crate::poly::Poly;

/// Largest dimension for which determinants use cofactor expansion.
const COFACTOR_LIMIT: usize = 6;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { field: field.clone(), rows, cols, entries })
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    /// Each entry given as ascending integer coefficients.
    pub fn from_ints(field: &FieldSpec, rows: &[Vec<Vec<i64>>]) -> Self {
        let polys = rows
            .iter()
            .map(|r| r.iter().map(|c| Poly::from_ints(field, c)).collect())
            .collect();
        Self::from_rows(field, polys).expect("rectangular integer rows")
    }

    pub fn from_fn(field: &FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { field: field.clone(), rows, cols, entries }
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Self::from_fn(field, rows, cols, |_, _| Poly::zero(field))
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        Self::from_fn(field, n, n, |i, j| if i == j { Poly::one(field) } else { Poly::zero(field) })
    }

    /// Assembles `sum_i C_i z^i` from equally shaped coefficient matrices.
    pub fn from_coefficients(field: &FieldSpec, rows: usize, cols: usize, coeffs: &[Matrix]) -> Result<Self> {
        if coeffs.iter().any(|c| c.rows() != rows || c.cols() != cols) {
            return Err(Error::DimensionMismatch("coefficient matrices differ in shape".into()));
        }
        Ok(Self::from_fn(field, rows, cols, |i, j| {
            Poly::new(field, coeffs.iter().map(|c| c.get(i, j)).collect())
        }))
    }

    /// Constant polynomial matrix.
    pub fn from_scalar(m: &Matrix) -> Self {
        let f = m.field();
        Self::from_fn(f, m.rows(), m.cols(), |i, j| Poly::constant(f, m.get(i, j)))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        assert!(p.field() == &self.field, "entry over a different field");
        self.entries[i * self.cols + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Maximum entry degree; `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    pub fn row_degree(&self, i: usize) -> Option<usize> {
        (0..self.cols).filter_map(|j| self.get(i, j).degree()).max()
    }

    pub fn row_degrees(&self) -> Vec<Option<usize>> {
        (0..self.rows).map(|i| self.row_degree(i)).collect()
    }

    /// Sum of row degrees, ignoring zero rows.
    pub fn row_degree_sum(&self) -> usize {
        self.row_degrees().into_iter().flatten().sum()
    }

    /// Matrix of `z^i` coefficients; zero beyond the degree.
    pub fn coefficient_slice(&self, i: usize) -> Matrix {
        Matrix::from_fn(&self.field, self.rows, self.cols, |r, c| self.get(r, c).coeff(i))
    }

    /// `[C_0, ..., C_deg]`; empty for the zero matrix.
    pub fn coefficients(&self) -> Vec<Matrix> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.coefficient_slice(i)).collect(),
        }
    }

    pub fn eval(&self, x: FieldElement) -> Matrix {
        Matrix::from_fn(&self.field, self.rows, self.cols, |i, j| self.get(i, j).eval(x))
    }

    pub fn transpose(&self) -> PolyMatrix {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = &self.field;
        Ok(Self::from_fn(f, self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(Poly::zero(f), |acc, k| &acc + &(self.get(i, k) * rhs.get(k, j)))
        }))
    }

    pub fn add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("cannot add matrices of different shapes".into()));
        }
        Ok(Self::from_fn(&self.field, self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j)))
    }

    pub fn scale(&self, p: &Poly) -> PolyMatrix {
        Self::from_fn(&self.field, self.rows, self.cols, |i, j| self.get(i, j) * p)
    }

    /// Submatrix on 0-based index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Exact determinant: cofactor expansion up to 6x6, fraction-free
    /// elimination beyond.
    pub fn determinant(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows <= COFACTOR_LIMIT {
            self.det_by_cofactors()
        } else {
            self.det_by_elimination()
        }
    }

    /// Laplace expansion along the first row.
    pub fn det_by_cofactors(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.laplace(0, &cols))
    }

    fn laplace(&self, row: usize, cols: &[usize]) -> Poly {
        let f = &self.field;
        if cols.is_empty() {
            return Poly::one(f);
        }
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = Poly::zero(f);
        for (pos, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry * &self.laplace(row + 1, &rest);
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    /// Bareiss fraction-free elimination; every division is exact in `F[z]`.
    pub fn det_by_elimination(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = &self.field;
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(f));
        }
        let mut a: Vec<Vec<Poly>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut negate = false;
        let mut prev = Poly::one(f);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(Poly::zero(f));
                };
                a.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_div(&prev)?;
                }
                a[i][k] = Poly::zero(f);
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// Determinant of the submatrix on 1-based, strictly increasing index sets.
    pub fn minor(&self, row_set: &[usize], col_set: &[usize]) -> Result<Poly> {
        if row_set.len() != col_set.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows but {} columns selected",
                row_set.len(),
                col_set.len()
            )));
        }
        let rows = to_zero_based(row_set, self.rows)?;
        let cols = to_zero_based(col_set, self.cols)?;
        self.submatrix(&rows, &cols).determinant()
    }

    /// All maximal minors of a wide (or square) matrix, keyed by their 1-based
    /// column sets in lexicographic order.
    pub fn full_size_minors(&self) -> Result<Vec<(Vec<usize>, Poly)>> {
        if self.rows > self.cols {
            return Err(Error::TooManyRows { rows: self.rows, cols: self.cols });
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        (0..self.cols)
            .combinations(self.rows)
            .map(|cols| {
                let det = self.submatrix(&rows, &cols).determinant()?;
                Ok((cols.iter().map(|c| c + 1).collect(), det))
            })
            .collect()
    }

    /// Rank over the field of rational functions `F(z)`.
    pub fn rank_rational(&self) -> usize {
        let f = &self.field;
        let mut a: Vec<Vec<Poly>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut prev = Poly::one(f);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                    a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
                a[i][c] = Poly::zero(f);
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().is_ok_and(|d| d.is_unit())
    }

    /// Errors unless the rows are independent over `F(z)`.
    pub fn require_full_row_rank(&self) -> Result<()> {
        let rank = self.rank_rational();
        if rank < self.rows {
            return Err(Error::RankDeficient { rank, rows: self.rows });
        }
        Ok(())
    }

    pub(crate) fn entry_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = self.get(source, j) * factor;
            let e = self.entry_mut(target, j);
            *e = &*e + &add;
        }
    }

    /// `col[target] += factor * col[source]`
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &Poly) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = self.get(i, source) * factor;
            let e = self.entry_mut(i, target);
            *e = &*e + &add;
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: FieldElement) {
        for j in 0..self.cols {
            let e = self.entry_mut(i, j);
            *e = e.scale(c);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: FieldElement) {
        for i in 0..self.rows {
            let e = self.entry_mut(i, j);
            *e = e.scale(c);
        }
    }
}

fn to_zero_based(set: &[usize], bound: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(set.len());
    for (pos, &idx) in set.iter().enumerate() {
        if idx == 0 || idx > bound {
            return Err(Error::IndexOutOfRange(format!("index {idx} not in 1..={bound}")));
        }
        if pos > 0 && set[pos - 1] >= idx {
            return Err(Error::IndexOutOfRange(format!("index set {set:?} is not strictly increasing")));
        }
        out.push(idx - 1);
    }
    Ok(out)
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[ {} ]", row.join(" | "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        fmt::Display::fmt(self, f)
    }
}
