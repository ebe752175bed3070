use std::fmt;
use std::str::FromStr;

use super::{smith, PolyMatrix};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Poly;

/// Independent routes to deciding left primeness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimenessMethod {
    /// gcd of the full-size minors is a nonzero constant
    MinorGcd,
    /// every invariant factor is a nonzero constant
    Smith,
    /// a polynomial right inverse exists within the default degree bound
    RightInverse,
}

impl PrimenessMethod {
    pub const ALL: [PrimenessMethod; 3] = [Self::MinorGcd, Self::Smith, Self::RightInverse];

    pub fn name(self) -> &'static str {
        match self {
            Self::MinorGcd => "minor_gcd",
            Self::Smith => "smith",
            Self::RightInverse => "right_inverse",
        }
    }
}

impl fmt::Display for PrimenessMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PrimenessMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "minor_gcd" => Ok(Self::MinorGcd),
            "smith" => Ok(Self::Smith),
            "right_inverse" => Ok(Self::RightInverse),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

fn check_shape(m: &PolyMatrix) -> Result<()> {
    if m.rows() > m.cols() {
        return Err(Error::TooManyRows { rows: m.rows(), cols: m.cols() });
    }
    Ok(())
}

/// `rows * deg(M)`: the degree bound used when no better one is known.
pub fn default_inverse_degree_bound(m: &PolyMatrix) -> usize {
    m.rows() * m.degree().unwrap_or(0)
}

/// Rank-deficient or tall inputs are errors, not `false`.
pub fn is_left_prime(m: &PolyMatrix, method: PrimenessMethod) -> Result<bool> {
    check_shape(m)?;
    m.require_full_row_rank()?;
    match method {
        PrimenessMethod::MinorGcd => {
            let mut g = Poly::zero(m.field());
            for (_, minor) in m.full_size_minors()? {
                g = g.gcd(&minor)?;
                if g.is_one() {
                    return Ok(true);
                }
            }
            Ok(g.is_unit())
        }
        PrimenessMethod::Smith => {
            let s = smith(m);
            Ok(s.factors.len() == m.rows() && s.factors.iter().all(Poly::is_unit))
        }
        PrimenessMethod::RightInverse => Ok(right_inverse(m, default_inverse_degree_bound(m))?.is_some()),
    }
}

/// Block lower-triangular Toeplitz matrix with `depth + 1` block columns:
/// block `(i, j)` is `coeffs[i - j]` when that index exists, zero otherwise.
pub(crate) fn toeplitz_stack(coeffs: &[Matrix], depth: usize, rows: usize, cols: usize) -> Matrix {
    let f = coeffs[0].field();
    let deg = coeffs.len() - 1;
    let mut out = Matrix::zeros(f, rows * (deg + depth + 1), cols * (depth + 1));
    for j in 0..=depth {
        for (i, c) in coeffs.iter().enumerate() {
            out.set_block((i + j) * rows, j * cols, c);
        }
    }
    out
}

/// Splits a stacked `(depth+1) cols x rows` solution into `X(z) = sum X_i z^i`.
pub(crate) fn assemble_from_stack(y: &Matrix, cols: usize, depth: usize) -> Result<PolyMatrix> {
    let f = y.field();
    let blocks: Vec<Matrix> = (0..=depth)
        .map(|i| {
            let idx: Vec<usize> = (i * cols..(i + 1) * cols).collect();
            y.select_rows(&idx)
        })
        .collect();
    PolyMatrix::from_coefficients(f, cols, y.cols(), &blocks)
}

/// A polynomial `X` with `M X = I` and `deg X <= max_deg`, found by solving
/// the coefficient system for `deg X = 0, 1, ...` in turn.
pub fn right_inverse(m: &PolyMatrix, max_deg: usize) -> Result<Option<PolyMatrix>> {
    check_shape(m)?;
    let f = m.field();
    let coeffs = m.coefficients();
    if coeffs.is_empty() {
        return Ok(None);
    }
    let (rows, cols) = (m.rows(), m.cols());
    let identity = PolyMatrix::identity(f, rows);
    for depth in 0..=max_deg {
        let system = toeplitz_stack(&coeffs, depth, rows, cols);
        let mut rhs = Matrix::zeros(f, system.rows(), rows);
        rhs.set_block(0, 0, &Matrix::identity(f, rows));
        let Some(y) = system.solve(&rhs) else {
            continue;
        };
        let x = assemble_from_stack(&y, cols, depth)?;
        if m.mul(&x)? != identity {
            return Err(Error::Internal("right inverse failed verification".into()));
        }
        return Ok(Some(x));
    }
    Ok(None)
}

/// `M = left * prime` with `prime` left prime and of the same shape as `M`.
#[derive(Clone, Debug)]
pub struct LeftPrimeFactorization {
    pub left: PolyMatrix,
    pub prime: PolyMatrix,
}

/// Extracts the left prime part of a full-rank wide matrix from its Smith
/// form: `prime` is the top rows of `V`, `left = U * diag(factors)`.
pub fn left_prime_factorization(m: &PolyMatrix) -> Result<LeftPrimeFactorization> {
    check_shape(m)?;
    m.require_full_row_rank()?;
    let s = smith(m);
    let rows: Vec<usize> = (0..m.rows()).collect();
    let prime = s.v.select_rows(&rows);
    let mut left = s.u.clone();
    for (j, factor) in s.factors.iter().enumerate() {
        for i in 0..left.rows() {
            let e = left.get(i, j) * factor;
            left.set(i, j, e);
        }
    }
    if left.mul(&prime)? != *m {
        return Err(Error::Internal("left prime factorization does not reproduce the input".into()));
    }
    Ok(LeftPrimeFactorization { left, prime })
}

/// A unimodular `W` with `W * b = a`, if one exists. `b` must be left
/// prime; then `W` is forced to be `a * X` for any right inverse `X` of `b`.
pub fn row_equivalence(a: &PolyMatrix, b: &PolyMatrix) -> Result<Option<PolyMatrix>> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} and {}x{} matrices cannot be row equivalent",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let bound = default_inverse_degree_bound(b);
    let Some(x) = right_inverse(b, bound)? else {
        return Err(Error::Precondition("the reference matrix is not left prime".into()));
    };
    let w = a.mul(&x)?;
    Ok((w.is_unimodular() && w.mul(b)? == *a).then_some(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn example_h() -> PolyMatrix {
        PolyMatrix::from_ints(
            &gf2(),
            &[vec![vec![0, 1, 1], vec![0], vec![1, 1]], vec![vec![0], vec![1, 1], vec![1, 1]]],
        )
    }

    fn example_h_tilde() -> PolyMatrix {
        PolyMatrix::from_ints(&gf2(), &[vec![vec![0, 1], vec![0], vec![1]], vec![vec![0], vec![1], vec![1]]])
    }

    #[test]
    fn verdicts_on_examples() {
        for method in PrimenessMethod::ALL {
            assert!(!is_left_prime(&example_h(), method).unwrap(), "{method}");
            assert!(is_left_prime(&example_h_tilde(), method).unwrap(), "{method}");
            let content = PolyMatrix::from_ints(&gf2(), &[vec![vec![0, 1], vec![0, 0, 1]]]);
            assert!(!is_left_prime(&content, method).unwrap(), "{method}");
        }
    }

    #[test]
    fn precondition_errors() {
        let f = gf2();
        let tall = PolyMatrix::identity(&f, 2).select_columns(&[0]);
        assert!(matches!(is_left_prime(&tall, PrimenessMethod::Smith), Err(Error::TooManyRows { .. })));
        let deficient = PolyMatrix::zeros(&f, 1, 3);
        assert!(matches!(
            is_left_prime(&deficient, PrimenessMethod::MinorGcd),
            Err(Error::RankDeficient { rank: 0, rows: 1 })
        ));
    }

    #[test]
    fn right_inverses() {
        let f = gf2();
        let m = PolyMatrix::from_ints(&f, &[vec![vec![1], vec![0, 1]]]);
        let x = right_inverse(&m, 0).unwrap().unwrap();
        assert_eq!(x, PolyMatrix::from_ints(&f, &[vec![vec![1]], vec![vec![0]]]));

        let content = PolyMatrix::from_ints(&f, &[vec![vec![0, 1], vec![0, 0, 1]]]);
        assert!(right_inverse(&content, 6).unwrap().is_none());

        let ht = example_h_tilde();
        let x = right_inverse(&ht, 2).unwrap().unwrap();
        assert_eq!(ht.mul(&x).unwrap(), PolyMatrix::identity(&f, 2));
        assert!(x.degree().unwrap_or(0) <= 2);
    }

    #[test]
    fn factorization_of_content() {
        let f = gf2();
        let m = PolyMatrix::from_ints(&f, &[vec![vec![0, 1], vec![0, 0, 1]]]);
        let fac = left_prime_factorization(&m).unwrap();
        assert_eq!(fac.left, PolyMatrix::from_ints(&f, &[vec![vec![0, 1]]]));
        assert_eq!(fac.prime, PolyMatrix::from_ints(&f, &[vec![vec![1], vec![0, 1]]]));
    }

    #[test]
    fn factorization_of_left_prime_input() {
        let ht = example_h_tilde();
        let fac = left_prime_factorization(&ht).unwrap();
        assert!(fac.left.is_unimodular());
        assert_eq!(fac.left.mul(&fac.prime).unwrap(), ht);
    }

    #[test]
    fn row_equivalence_of_prime_part() {
        let fac = left_prime_factorization(&example_h()).unwrap();
        let w = row_equivalence(&fac.prime, &example_h_tilde()).unwrap().unwrap();
        assert_eq!(w.mul(&example_h_tilde()).unwrap(), fac.prime);
        assert!(row_equivalence(&example_h(), &example_h_tilde()).unwrap().is_none());
        assert!(matches!(row_equivalence(&example_h_tilde(), &example_h()), Err(Error::Precondition(_))));
    }
}
