use super::PolyMatrix;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Poly;

/// `u * input = r` with `r` row-reduced.
#[derive(Clone, Debug)]
pub struct RowReducedForm {
    pub u: PolyMatrix,
    pub r: PolyMatrix,
    pub row_degrees: Vec<usize>,
    /// Entry `(i, j)` is the coefficient of `z^{row_degrees[i]}` in `r[i][j]`.
    pub leading_row_matrix: Matrix,
}

impl RowReducedForm {
    pub fn row_degree_sum(&self) -> usize {
        self.row_degrees.iter().sum()
    }
}

fn leading_row_matrix(m: &PolyMatrix, degrees: &[usize]) -> Matrix {
    Matrix::from_fn(m.field(), m.rows(), m.cols(), |i, j| m.get(i, j).coeff(degrees[i]))
}

fn row_degrees(m: &PolyMatrix) -> Result<Vec<usize>> {
    m.row_degrees()
        .into_iter()
        .map(|d| d.ok_or_else(|| Error::Internal("zero row in a full-rank matrix".into())))
        .collect()
}

/// True when the leading row coefficient matrix has full row rank.
pub fn is_row_reduced(m: &PolyMatrix) -> bool {
    match row_degrees(m) {
        Ok(d) => leading_row_matrix(m, &d).has_full_row_rank(),
        Err(_) => false,
    }
}

/// Lowers row degrees by unimodular row operations until the leading row
/// coefficient matrix has full row rank.
pub fn row_reduce(m: &PolyMatrix) -> Result<RowReducedForm> {
    m.require_full_row_rank()?;
    let f = m.field().clone();
    let mut r = m.clone();
    let mut u = PolyMatrix::identity(&f, m.rows());
    loop {
        let degrees = row_degrees(&r)?;
        let lead = leading_row_matrix(&r, &degrees);
        // a^T * lead = 0
        let Some(a) = lead.transpose().kernel_basis().into_iter().next() else {
            return Ok(RowReducedForm { u, r, row_degrees: degrees, leading_row_matrix: lead });
        };
        let target = (0..a.len())
            .filter(|&i| !a[i].is_zero())
            .max_by_key(|&i| (degrees[i], std::cmp::Reverse(i)))
            .expect("kernel vector is nonzero");
        let scale = f.inv(a[target])?;
        for i in (0..a.len()).filter(|&i| i != target && !a[i].is_zero()) {
            let factor = Poly::monomial(&f, f.mul(a[i], scale), degrees[target] - degrees[i]);
            r.add_row_multiple(target, i, &factor);
            u.add_row_multiple(target, i, &factor);
        }
        if r.row_degree(target).is_none_or(|d| d >= degrees[target]) {
            return Err(Error::Internal("row reduction step did not lower the degree".into()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn already_reduced() {
        let f = FieldSpec::prime(2).unwrap();
        let h = PolyMatrix::from_ints(&f, &[vec![vec![0, 1], vec![0], vec![1]], vec![vec![0], vec![1], vec![1]]]);
        let red = row_reduce(&h).unwrap();
        assert_eq!(red.u, PolyMatrix::identity(&f, 2));
        assert_eq!(red.r, h);
        assert_eq!(red.row_degrees, vec![1, 0]);
        assert_eq!(red.leading_row_matrix, Matrix::from_ints(&f, &[vec![1, 0, 0], vec![0, 1, 1]]));
    }

    #[test]
    fn unimodular_reduces_to_constant() {
        let f = FieldSpec::prime(2).unwrap();
        let m = PolyMatrix::from_ints(&f, &[vec![vec![1], vec![0, 1]], vec![vec![0, 1], vec![1, 0, 1]]]);
        assert!(!is_row_reduced(&m));
        let red = row_reduce(&m).unwrap();
        assert_eq!(red.row_degree_sum(), 0);
        assert_eq!(red.u.mul(&m).unwrap(), red.r);
        assert!(red.u.is_unimodular());
    }

    #[test]
    fn rank_deficient_is_rejected() {
        let f = FieldSpec::prime(3).unwrap();
        let m = PolyMatrix::from_ints(&f, &[vec![vec![1], vec![0, 1]], vec![vec![2], vec![0, 2]]]);
        assert!(matches!(row_reduce(&m), Err(Error::RankDeficient { rank: 1, rows: 2 })));
    }
}
