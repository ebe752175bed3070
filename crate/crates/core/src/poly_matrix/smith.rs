use itertools::Itertools;

use super::PolyMatrix;
use crate::error::Result;
use crate::field::FieldElement;
use crate::poly::Poly;

/// `input = u * d * v` with `u`, `v` unimodular and `d` diagonal.
///
/// `u_inv` and `v_inv` are the accumulated elementary transforms, so
/// `u_inv * input * v_inv = d` as well.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
    pub u_inv: PolyMatrix,
    pub v_inv: PolyMatrix,
    /// Nonzero monic invariant factors, each dividing the next.
    pub factors: Vec<Poly>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

struct Reduction {
    a: PolyMatrix,
    p: PolyMatrix,
    p_inv: PolyMatrix,
    q: PolyMatrix,
    q_inv: PolyMatrix,
}

impl Reduction {
    fn row_add(&mut self, target: usize, source: usize, c: &Poly) {
        self.a.add_row_multiple(target, source, c);
        self.p.add_row_multiple(target, source, c);
        self.p_inv.add_col_multiple(source, target, &-c);
    }

    fn col_add(&mut self, target: usize, source: usize, c: &Poly) {
        self.a.add_col_multiple(target, source, c);
        self.q.add_col_multiple(target, source, c);
        self.q_inv.add_row_multiple(source, target, &-c);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.q_inv.swap_rows(i, j);
    }

    fn row_scale(&mut self, i: usize, c: FieldElement) {
        let f = self.a.field().clone();
        self.a.scale_row(i, c);
        self.p.scale_row(i, c);
        self.p_inv.scale_col(i, f.inv(c).expect("unit"));
    }

    /// Position of a nonzero entry of minimal degree in the trailing block.
    fn min_degree_entry(&self, t: usize) -> Option<(usize, usize)> {
        (t..self.a.rows())
            .cartesian_product(t..self.a.cols())
            .filter_map(|(i, j)| self.a.get(i, j).degree().map(|d| (d, i, j)))
            .min()
            .map(|(_, i, j)| (i, j))
    }

    /// Clears row and column `t` below/right of the pivot. Returns false when
    /// a nonzero remainder appeared and the pivot must be re-chosen.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            if self.a.get(i, t).is_zero() {
                continue;
            }
            let (quot, rem) = self.a.get(i, t).div_rem(self.a.get(t, t)).expect("pivot is nonzero");
            self.row_add(i, t, &-quot);
            clean &= rem.is_zero();
        }
        for j in t + 1..self.a.cols() {
            if self.a.get(t, j).is_zero() {
                continue;
            }
            let (quot, rem) = self.a.get(t, j).div_rem(self.a.get(t, t)).expect("pivot is nonzero");
            self.col_add(j, t, &-quot);
            clean &= rem.is_zero();
        }
        clean
    }

    /// A row holding an entry the pivot does not divide, if any.
    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let pivot = self.a.get(t, t);
        (t + 1..self.a.rows()).find(|&i| {
            (t + 1..self.a.cols()).any(|j| !pivot.divides(self.a.get(i, j)).expect("same field"))
        })
    }
}

/// Smith normal form by elementary row and column operations, pivoting on
/// entries of minimal degree.
pub fn smith(m: &PolyMatrix) -> SmithDecomposition {
    let f = m.field().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Reduction {
        a: m.clone(),
        p: PolyMatrix::identity(&f, rows),
        p_inv: PolyMatrix::identity(&f, rows),
        q: PolyMatrix::identity(&f, cols),
        q_inv: PolyMatrix::identity(&f, cols),
    };
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        while let Some((i, j)) = w.min_degree_entry(t) {
            w.row_swap(t, i);
            w.col_swap(t, j);
            if !w.clear_cross(t) {
                continue;
            }
            match w.non_divisible_row(t) {
                Some(i) => w.row_add(t, i, &Poly::one(&f)),
                None => break,
            }
        }
        let Some(lc) = w.a.get(t, t).leading_coeff() else {
            break;
        };
        w.row_scale(t, f.inv(lc).expect("nonzero"));
        factors.push(w.a.get(t, t).clone());
    }
    SmithDecomposition { u: w.p_inv, d: w.a, v: w.q_inv, u_inv: w.p, v_inv: w.q, factors }
}

/// `d_i` = monic gcd of all `i x i` minors, for `i = 1..` until it vanishes.
pub fn determinantal_divisors(m: &PolyMatrix) -> Result<Vec<Poly>> {
    let f = m.field();
    let mut out = Vec::new();
    for size in 1..=m.rows().min(m.cols()) {
        let mut g = Poly::zero(f);
        for rows in (0..m.rows()).combinations(size) {
            for cols in (0..m.cols()).combinations(size) {
                g = g.gcd(&m.submatrix(&rows, &cols).determinant()?)?;
                if g.is_one() {
                    break;
                }
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    Ok(out)
}

/// Invariant factors from the determinantal divisors: `d_i / d_{i-1}`.
pub fn invariant_factors_by_minors(m: &PolyMatrix) -> Result<Vec<Poly>> {
    let divisors = determinantal_divisors(m)?;
    let mut prev = Poly::one(m.field());
    let mut out = Vec::with_capacity(divisors.len());
    for d in divisors {
        out.push(d.exact_div(&prev)?);
        prev = d;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn check(m: &PolyMatrix) -> SmithDecomposition {
        let s = smith(m);
        assert_eq!(s.u.mul(&s.d).unwrap().mul(&s.v).unwrap(), *m);
        assert_eq!(s.u_inv.mul(m).unwrap().mul(&s.v_inv).unwrap(), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        for w in s.factors.windows(2) {
            assert!(w[0].divides(&w[1]).unwrap());
        }
        assert_eq!(s.factors, invariant_factors_by_minors(m).unwrap());
        s
    }

    #[test]
    fn diagonal_input() {
        let f = FieldSpec::prime(3).unwrap();
        let m = PolyMatrix::from_ints(&f, &[vec![vec![0, 1], vec![0]], vec![vec![0], vec![0, 0, 1]]]);
        let s = check(&m);
        assert_eq!(s.factors, vec![Poly::from_ints(&f, &[0, 1]), Poly::from_ints(&f, &[0, 0, 1])]);
    }

    #[test]
    fn non_chain_diagonal_is_fixed_up() {
        let f = FieldSpec::prime(5).unwrap();
        let m = PolyMatrix::from_ints(&f, &[vec![vec![0, 1], vec![0]], vec![vec![0], vec![1, 1]]]);
        let s = check(&m);
        assert!(s.factors[0].is_one());
        assert_eq!(s.factors[1], Poly::from_ints(&f, &[0, 1, 1]));
    }

    #[test]
    fn unimodular_input() {
        let f = FieldSpec::prime(2).unwrap();
        let m = PolyMatrix::from_ints(&f, &[vec![vec![1], vec![0, 1]], vec![vec![0, 1], vec![1, 0, 1]]]);
        assert!(check(&m).factors.iter().all(Poly::is_one));
    }

    #[test]
    fn example_parity_check() {
        let f = FieldSpec::prime(2).unwrap();
        let h = PolyMatrix::from_ints(
            &f,
            &[vec![vec![0, 1, 1], vec![0], vec![1, 1]], vec![vec![0], vec![1, 1], vec![1, 1]]],
        );
        // every entry carries the factor 1+z, and H = (1+z) * [[z,0,1],[0,1,1]]
        let s = check(&h);
        let one_plus_z = Poly::from_ints(&f, &[1, 1]);
        assert_eq!(s.factors, vec![one_plus_z.clone(), one_plus_z]);
    }

    #[test]
    fn rank_deficient_and_zero() {
        let f = FieldSpec::prime(3).unwrap();
        assert!(check(&PolyMatrix::zeros(&f, 2, 3)).factors.is_empty());
        let m = PolyMatrix::from_ints(
            &f,
            &[vec![vec![1], vec![0, 1], vec![2]], vec![vec![2], vec![0, 2], vec![1]]],
        );
        assert_eq!(check(&m).rank(), 1);
    }
}
