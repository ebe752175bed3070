//! Convolutional codes given by a generator or a parity-check matrix.

mod distance;
mod sliding;

pub use distance::{
    column_bound, column_distance, column_distance_with_cap, column_profile, free_distance,
    singleton_bound, FreeDistance, DEFAULT_ORACLE_CAP,
};
pub use sliding::{
    check_mdp_criterion, count_index_sets, is_mdp, mdp_index_sets, sliding, IndexMode, MinorVerdict,
    SlidingMatrix,
};

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::poly_matrix::{left_prime_factorization, row_reduce, smith, PolyMatrix};

/// Which matrix describes the code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `k x n`, rows span the code
    Generator,
    /// `(n-k) x n`, the code is its right kernel
    Parity,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Generator => "generator",
            Side::Parity => "parity",
        }
    }

    /// Number of matrix rows for an `(n, k)` code on this side.
    pub fn rows_for(self, n: usize, k: usize) -> usize {
        match self {
            Side::Generator => k,
            Side::Parity => n - k,
        }
    }

    /// Code dimension `k` implied by an `rows x cols` matrix on this side.
    pub fn dimension_from(self, rows: usize, cols: usize) -> usize {
        match self {
            Side::Generator => rows,
            Side::Parity => cols - rows,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "generator" => Ok(Side::Generator),
            "parity" => Ok(Side::Parity),
            other => Err(format!("unknown side `{other}`")),
        }
    }
}

/// `(n, k, delta)` together with every quantity derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    /// `floor(delta/k) + floor(delta/(n-k))`
    pub l: usize,
    /// minimal parity-check degree
    pub nu: usize,
    /// minimal generator degree
    pub m: usize,
    /// number of parity-check rows of degree `nu` under generic row degrees
    pub t: usize,
    /// `delta/k - floor(delta/k)`
    pub eps1: Ratio<i64>,
    /// `delta/(n-k) - floor(delta/(n-k))`
    pub eps2: Ratio<i64>,
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

pub fn derive_params(n: usize, k: usize, delta: usize) -> Result<CodeParams> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParams(format!("need 0 < k < n, got n = {n}, k = {k}")));
    }
    let r = n - k;
    let frac = |a: usize, b: usize| Ratio::new((a % b) as i64, b as i64);
    Ok(CodeParams {
        n,
        k,
        delta,
        l: delta / k + delta / r,
        nu: ceil_div(delta, r),
        m: ceil_div(delta, k),
        t: delta % r,
        eps1: frac(delta, k),
        eps2: frac(delta, r),
    })
}

impl CodeParams {
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// Whether the matrix on `side` has its rank dividing `delta`, i.e.
    /// `(n-k) | delta` for parity and `k | delta` for generator.
    pub fn side_divides(&self, side: Side) -> bool {
        self.delta.is_multiple_of(side.rows_for(self.n, self.k))
    }
}

/// A code together with the matrix that defines it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvCode {
    side: Side,
    matrix: PolyMatrix,
    n: usize,
    k: usize,
}

impl ConvCode {
    /// Requires `0 < rows < cols` and full rank over `F(z)`.
    pub fn new(side: Side, matrix: PolyMatrix) -> Result<Self> {
        let (rows, cols) = (matrix.rows(), matrix.cols());
        if rows == 0 || rows >= cols {
            return Err(Error::DimensionMismatch(format!(
                "a {side} matrix needs 0 < rows < columns, got {rows}x{cols}"
            )));
        }
        matrix.require_full_row_rank()?;
        let k = side.dimension_from(rows, cols);
        Ok(Self { side, matrix, n: cols, k })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The defining matrix itself on the generator side, a left prime kernel
    /// basis on the parity side.
    pub fn generator(&self) -> Result<PolyMatrix> {
        match self.side {
            Side::Generator => Ok(self.matrix.clone()),
            Side::Parity => right_kernel_generator(&self.matrix, self.n, self.k),
        }
    }

    pub fn params(&self) -> Result<CodeParams> {
        derive_params(self.n, self.k, code_degree(self)?)
    }
}

/// Degree of the code: the largest full-size minor degree of a generator, or
/// the row-degree sum of a row-reduced left prime parity-check matrix.
pub fn code_degree(code: &ConvCode) -> Result<usize> {
    match code.side {
        Side::Generator => max_minor_degree(&code.matrix),
        Side::Parity => {
            let prime = left_prime_factorization(&code.matrix)?.prime;
            Ok(row_reduce(&prime)?.row_degree_sum())
        }
    }
}

/// Largest degree among the full-size minors (0 if all vanish).
pub fn max_minor_degree(m: &PolyMatrix) -> Result<usize> {
    Ok(m.full_size_minors()?.iter().filter_map(|(_, p)| p.degree()).max().unwrap_or(0))
}

/// Naive degree readings of a parity-check matrix that ignore left primeness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDiagnostics {
    pub degree: usize,
    pub row_degree_sum: usize,
    pub max_minor_degree: usize,
}

pub fn degree_diagnostics(code: &ConvCode) -> Result<DegreeDiagnostics> {
    Ok(DegreeDiagnostics {
        degree: code_degree(code)?,
        row_degree_sum: code.matrix.row_degree_sum(),
        max_minor_degree: max_minor_degree(&code.matrix)?,
    })
}

/// A `k x n` left prime `G` whose rows span the right kernel of `h`.
pub fn right_kernel_generator(h: &PolyMatrix, n: usize, k: usize) -> Result<PolyMatrix> {
    if k == 0 || k >= n || h.rows() != n - k || h.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "expected a {}x{n} parity-check matrix, got {}x{}",
            n.saturating_sub(k),
            h.rows(),
            h.cols()
        )));
    }
    h.require_full_row_rank()?;
    let s = smith(h);
    let kernel_cols: Vec<usize> = (h.rows()..n).collect();
    let g = s.v_inv.select_columns(&kernel_cols).transpose();
    if !h.mul(&g.transpose())?.is_zero() {
        return Err(Error::Internal("kernel basis is not annihilated".into()));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly_matrix::{is_left_prime, PrimenessMethod};

    #[test]
    fn params_examples() {
        let p = derive_params(2, 1, 1).unwrap();
        assert_eq!((p.l, p.nu, p.m, p.t), (2, 1, 1, 0));
        assert_eq!(p.eps1, Ratio::from_integer(0));
        assert_eq!(p.eps2, Ratio::from_integer(0));

        let p = derive_params(7, 4, 5).unwrap();
        assert_eq!((p.nu, p.t), (2, 2));
        assert_eq!(p.eps1, Ratio::new(1, 4));
        assert_eq!(p.eps2, Ratio::new(2, 3));

        assert_eq!(derive_params(3, 2, 2).unwrap().l, 3);
        assert!(derive_params(3, 3, 1).is_err());
        assert!(derive_params(3, 0, 1).is_err());
    }

    #[test]
    fn degree_of_example_parity_check() {
        let f = FieldSpec::prime(2).unwrap();
        let h = PolyMatrix::from_ints(
            &f,
            &[vec![vec![0, 1, 1], vec![0], vec![1, 1]], vec![vec![0], vec![1, 1], vec![1, 1]]],
        );
        let code = ConvCode::new(Side::Parity, h).unwrap();
        let d = degree_diagnostics(&code).unwrap();
        assert_eq!(d, DegreeDiagnostics { degree: 1, row_degree_sum: 3, max_minor_degree: 3 });
    }

    #[test]
    fn degree_of_small_generator() {
        let f = FieldSpec::prime(2).unwrap();
        let g = PolyMatrix::from_ints(&f, &[vec![vec![1, 1], vec![1]]]);
        assert_eq!(code_degree(&ConvCode::new(Side::Generator, g).unwrap()).unwrap(), 1);
    }

    #[test]
    fn kernel_of_single_row() {
        let f = FieldSpec::prime(2).unwrap();
        let h = PolyMatrix::from_ints(&f, &[vec![vec![1], vec![0, 1]]]);
        let g = right_kernel_generator(&h, 2, 1).unwrap();
        // kernel is spanned by [z, 1]; a 1x2 basis is unique up to a unit
        let expected = PolyMatrix::from_ints(&f, &[vec![vec![0, 1], vec![1]]]);
        assert_eq!(g, expected);
        assert!(is_left_prime(&g, PrimenessMethod::MinorGcd).unwrap());
    }

    #[test]
    fn code_shape_errors() {
        let f = FieldSpec::prime(3).unwrap();
        let square = PolyMatrix::identity(&f, 2);
        assert!(matches!(ConvCode::new(Side::Parity, square), Err(Error::DimensionMismatch(_))));
        let deficient = PolyMatrix::from_ints(&f, &[vec![vec![1], vec![1], vec![1]], vec![vec![2], vec![2], vec![2]]]);
        assert!(matches!(ConvCode::new(Side::Parity, deficient), Err(Error::RankDeficient { .. })));
    }
}
