use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use super::{code_degree, derive_params, ConvCode, Side};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly_matrix::PolyMatrix;

/// The `j`-th truncated sliding matrix of a generator or parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlidingMatrix {
    pub base: Matrix,
    pub j: usize,
    pub side: Side,
    pub block_rows: usize,
    pub block_cols: usize,
}

/// Generator side: upper block triangular with block `(r, c) = G_{c-r}`.
/// Parity side: lower block triangular with block `(r, c) = H_{r-c}`.
pub fn sliding(matrix: &PolyMatrix, side: Side, j: usize) -> Result<SlidingMatrix> {
    let (rows, cols) = (matrix.rows(), matrix.cols());
    if rows == 0 || rows >= cols {
        return Err(Error::DimensionMismatch(format!(
            "a {side} matrix needs 0 < rows < columns, got {rows}x{cols}"
        )));
    }
    let mut base = Matrix::zeros(matrix.field(), (j + 1) * rows, (j + 1) * cols);
    for r in 0..=j {
        for c in 0..=j {
            let lag = match side {
                Side::Generator if c >= r => c - r,
                Side::Parity if r >= c => r - c,
                _ => continue,
            };
            base.set_block(r * rows, c * cols, &matrix.coefficient_slice(lag));
        }
    }
    Ok(SlidingMatrix { base, j, side, block_rows: rows, block_cols: cols })
}

/// How the parity-side column condition is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexMode {
    /// `t_{s(n-k)} <= sn`: exactly the sets whose minor is not forced to
    /// vanish by the block zero pattern
    Structural,
    /// `t_{s(n-k)+1} <= sn`, as printed in the characterization theorem
    Literal,
}

impl IndexMode {
    pub fn name(self) -> &'static str {
        match self {
            IndexMode::Structural => "structural",
            IndexMode::Literal => "literal",
        }
    }
}

impl fmt::Display for IndexMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IndexMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "structural" => Ok(IndexMode::Structural),
            "literal" => Ok(IndexMode::Literal),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

fn admissible(set: &[usize], side: Side, j: usize, n: usize, k: usize, mode: IndexMode) -> bool {
    (1..=j).all(|s| match (side, mode) {
        (Side::Generator, _) => set[s * k] > s * n,
        (Side::Parity, IndexMode::Literal) => set[s * (n - k)] <= s * n,
        (Side::Parity, IndexMode::Structural) => set[s * (n - k) - 1] <= s * n,
    })
}

/// Column index sets (1-based, lexicographic) of the full-size minors that
/// enter the MDP criterion at window `j`.
pub fn mdp_index_sets(
    side: Side,
    j: usize,
    n: usize,
    k: usize,
    mode: IndexMode,
) -> impl Iterator<Item = Vec<usize>> {
    let size = (j + 1) * side.rows_for(n, k);
    (1..=(j + 1) * n)
        .combinations(size)
        .filter(move |set| admissible(set, side, j, n, k, mode))
}

pub fn count_index_sets(side: Side, j: usize, n: usize, k: usize, mode: IndexMode) -> usize {
    mdp_index_sets(side, j, n, k, mode).count()
}

/// Outcome of evaluating the criterion's minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorVerdict {
    pub holds: bool,
    /// Number of minors evaluated, including the failing one.
    pub checked: usize,
    pub first_failure: Option<Vec<usize>>,
    pub mode: IndexMode,
}

/// Evaluates every admissible full-size minor of the sliding matrix in
/// lexicographic order, stopping at the first zero.
pub fn check_mdp_criterion(matrix: &PolyMatrix, side: Side, j: usize, mode: IndexMode) -> Result<MinorVerdict> {
    let sm = sliding(matrix, side, j)?;
    let n = matrix.cols();
    let k = side.dimension_from(matrix.rows(), n);
    let mut checked = 0;
    for set in mdp_index_sets(side, j, n, k, mode) {
        checked += 1;
        let cols: Vec<usize> = set.iter().map(|c| c - 1).collect();
        if sm.base.select_columns(&cols).determinant()?.is_zero() {
            return Ok(MinorVerdict { holds: false, checked, first_failure: Some(set), mode });
        }
    }
    Ok(MinorVerdict { holds: true, checked, first_failure: None, mode })
}

/// The criterion at `j = L` for the code's own degree.
pub fn is_mdp(code: &ConvCode, mode: IndexMode) -> Result<bool> {
    let params = derive_params(code.n(), code.k(), code_degree(code)?)?;
    Ok(check_mdp_criterion(code.matrix(), code.side(), params.l, mode)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn sets(side: Side, mode: IndexMode) -> Vec<Vec<usize>> {
        mdp_index_sets(side, 1, 2, 1, mode).collect()
    }

    #[test]
    fn index_sets_for_rate_one_half() {
        assert_eq!(
            sets(Side::Parity, IndexMode::Structural),
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]
        );
        assert_eq!(sets(Side::Parity, IndexMode::Literal), vec![vec![1, 2]]);
        assert_eq!(
            sets(Side::Generator, IndexMode::Structural),
            vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
    }

    #[test]
    fn sliding_generator() {
        let f = FieldSpec::prime(2).unwrap();
        let g = PolyMatrix::from_ints(&f, &[vec![vec![1, 1], vec![1]]]);
        let sm = sliding(&g, Side::Generator, 1).unwrap();
        assert_eq!(sm.base, Matrix::from_ints(&f, &[vec![1, 1, 1, 0], vec![0, 0, 1, 1]]));
        assert_eq!(sliding(&g, Side::Generator, 0).unwrap().base, g.coefficient_slice(0));
    }

    #[test]
    fn sliding_parity() {
        let f = FieldSpec::prime(2).unwrap();
        let h = PolyMatrix::from_ints(&f, &[vec![vec![0, 1], vec![0], vec![1]], vec![vec![0], vec![1], vec![1]]]);
        let sm = sliding(&h, Side::Parity, 1).unwrap();
        assert_eq!((sm.base.rows(), sm.base.cols()), (4, 6));
        let h0 = Matrix::from_ints(&f, &[vec![0, 0, 1], vec![0, 1, 1]]);
        assert_eq!(sm.base.submatrix(&[0, 1], &[0, 1, 2]), h0);
        assert_eq!(sm.base.submatrix(&[2, 3], &[3, 4, 5]), h0);
        assert!(sm.base.submatrix(&[0, 1], &[3, 4, 5]).is_zero());
        assert_eq!(sm.base.submatrix(&[2, 3], &[0, 1, 2]), h.coefficient_slice(1));
    }

    #[test]
    fn criterion_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        let h = PolyMatrix::from_ints(&f3, &[vec![vec![1, 1], vec![1, 2]]]);
        assert!(check_mdp_criterion(&h, Side::Parity, 2, IndexMode::Structural).unwrap().holds);
        let code = ConvCode::new(Side::Parity, h).unwrap();
        assert!(is_mdp(&code, IndexMode::Structural).unwrap());

        let f2 = FieldSpec::prime(2).unwrap();
        let g = PolyMatrix::from_ints(&f2, &[vec![vec![1, 1], vec![1]]]);
        let v = check_mdp_criterion(&g, Side::Generator, 2, IndexMode::Structural).unwrap();
        assert!(!v.holds && v.first_failure.is_some());
        assert!(!is_mdp(&ConvCode::new(Side::Generator, g).unwrap(), IndexMode::Structural).unwrap());
    }

    #[test]
    fn window_zero_is_block_minors() {
        let f = FieldSpec::prime(5).unwrap();
        let h = PolyMatrix::from_ints(&f, &[vec![vec![1, 3], vec![2], vec![0, 1]]]);
        let v = check_mdp_criterion(&h, Side::Parity, 0, IndexMode::Structural).unwrap();
        // H_0 = [1 2 0] has a zero 1x1 minor at column 3
        assert_eq!(v.first_failure, Some(vec![3]));
        assert_eq!(v.checked, 3);
    }

    #[test]
    fn constant_mds_code_is_mdp() {
        let f = FieldSpec::prime(5).unwrap();
        let g = PolyMatrix::from_ints(&f, &[vec![vec![1], vec![1], vec![1]]]);
        assert!(is_mdp(&ConvCode::new(Side::Generator, g).unwrap(), IndexMode::Structural).unwrap());
    }
}
