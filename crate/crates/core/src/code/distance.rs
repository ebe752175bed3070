//! Brute-force column and free distances.

use super::{code_degree, sliding, ConvCode, Side};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly_matrix::{is_left_prime, PrimenessMethod};

/// Default limit on the number of message tuples the oracle may enumerate.
pub const DEFAULT_ORACLE_CAP: u128 = 1 << 24;

/// `(n-k)(j+1) + 1`
pub fn column_bound(n: usize, k: usize, j: usize) -> usize {
    (n - k) * (j + 1) + 1
}

/// `(n-k)(floor(delta/k) + 1) + delta + 1`
pub fn singleton_bound(n: usize, k: usize, delta: usize) -> usize {
    (n - k) * (delta / k + 1) + delta + 1
}

fn weight(v: &[crate::FieldElement]) -> usize {
    v.iter().filter(|c| !c.is_zero()).count()
}

/// Minimum weight of `u * gc` over all `u` whose first `k` entries are not
/// all zero.
fn min_window_weight(gc: &Matrix, k: usize, cap: u128) -> Result<usize> {
    let f = gc.field();
    let q = f.size();
    let len = gc.rows();
    let size = (q as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::OracleTooLarge { size, cap });
    }
    let mut digits = vec![0u32; len];
    let mut v = vec![f.zero(); gc.cols()];
    let apply = |v: &mut [crate::FieldElement], row: usize, delta: crate::FieldElement| {
        for (c, x) in v.iter_mut().enumerate() {
            *x = f.add(*x, f.mul(delta, gc.get(row, c)));
        }
    };
    // u_0 is held in the most significant digits, starting at (0, ..., 0, 1)
    digits[k - 1] = 1;
    apply(&mut v, k - 1, f.one());
    let mut best = weight(&v);
    'outer: loop {
        let mut pos = len;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            let old = f.element(digits[pos])?;
            if digits[pos] + 1 < q {
                digits[pos] += 1;
                let new = f.element(digits[pos])?;
                apply(&mut v, pos, f.sub(new, old));
                break;
            }
            digits[pos] = 0;
            apply(&mut v, pos, f.neg(old));
        }
        best = best.min(weight(&v));
    }
    Ok(best)
}

/// Exact `d_j^c` by enumeration, using the default oracle cap.
pub fn column_distance(code: &ConvCode, j: usize) -> Result<usize> {
    column_distance_with_cap(code, j, DEFAULT_ORACLE_CAP)
}

/// Exact `d_j^c`: minimum weight of `(u_0, ..., u_j) G_j^c` over messages with
/// `u_0 != 0`. Requires a generator whose constant term has full rank.
pub fn column_distance_with_cap(code: &ConvCode, j: usize, cap: u128) -> Result<usize> {
    Ok(column_profile_inner(code, j, cap)?[j])
}

/// `(d_0^c, ..., d_j^c)`.
pub fn column_profile(code: &ConvCode, j: usize, cap: u128) -> Result<Vec<usize>> {
    column_profile_inner(code, j, cap)
}

fn column_profile_inner(code: &ConvCode, j: usize, cap: u128) -> Result<Vec<usize>> {
    let g = code.generator()?;
    if !g.coefficient_slice(0).has_full_row_rank() {
        return Err(Error::Precondition("the generator's constant term is not full rank".into()));
    }
    let k = g.rows();
    let q = g.field().size() as u128;
    let size = q.checked_pow((k * (j + 1)) as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::OracleTooLarge { size, cap });
    }
    (0..=j)
        .map(|i| min_window_weight(&sliding(&g, Side::Generator, i)?.base, k, cap))
        .collect()
}

/// Column distances up to `j_cap`, read as a free-distance estimate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeDistance {
    pub value: usize,
    /// The value reached the generalized Singleton bound, so it is exact.
    pub certified: bool,
}

/// Requires a noncatastrophic code.
pub fn free_distance(code: &ConvCode, j_cap: usize, cap: u128) -> Result<FreeDistance> {
    let g = code.generator()?;
    if !is_left_prime(&g, PrimenessMethod::MinorGcd)? {
        return Err(Error::Precondition("the code is catastrophic".into()));
    }
    let bound = singleton_bound(code.n(), code.k(), code_degree(code)?);
    let mut value = 0;
    for j in 0..=j_cap {
        value = column_distance_with_cap(code, j, cap)?;
        if value >= bound {
            return Ok(FreeDistance { value, certified: true });
        }
    }
    Ok(FreeDistance { value, certified: false })
}
