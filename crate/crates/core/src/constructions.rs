//! Fixtures and generators: the worked rate-1/3 example, Cauchy matrices,
//! the window-zero counterexample and a small-field MDP search.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{
    check_mdp_criterion, code_degree, derive_params, degree_diagnostics, right_kernel_generator, CodeParams, ConvCode,
    IndexMode, MinorVerdict, Side,
};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::poly_matrix::{
    is_left_prime, is_row_reduced, left_prime_factorization, row_equivalence, PolyMatrix, PrimenessMethod,
};
use crate::theorems::{corollary_audit, AuditReport};

/// Limit on the number of minors `all_minors_nonzero` will evaluate.
pub const MINOR_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleFacts {
    pub degree: usize,
    pub row_degree_sum_h: usize,
    pub max_minor_degree_h: usize,
    pub h_left_prime: bool,
    pub h_tilde_left_prime: bool,
    pub h_tilde_row_reduced: bool,
    pub same_kernel: bool,
    /// The left prime part of `H` equals `W * H~` for a unimodular `W`.
    pub prime_part_row_equivalent: bool,
}

#[derive(Clone, Debug)]
pub struct PaperExample {
    pub h: PolyMatrix,
    pub h_tilde: PolyMatrix,
    pub facts: ExampleFacts,
}

/// The GF(2) parity-check matrix `H = [[z(1+z), 0, 1+z], [0, 1+z, 1+z]]`,
/// its reduced form `H~ = [[z, 0, 1], [0, 1, 1]]`, and the facts computed
/// from them.
pub fn paper_example_3_1() -> Result<PaperExample> {
    let f = FieldSpec::prime(2)?;
    let h = PolyMatrix::from_ints(&f, &[vec![vec![0, 1, 1], vec![0], vec![1, 1]], vec![vec![0], vec![1, 1], vec![1, 1]]]);
    let h_tilde = PolyMatrix::from_ints(&f, &[vec![vec![0, 1], vec![0], vec![1]], vec![vec![0], vec![1], vec![1]]]);
    let diag = degree_diagnostics(&ConvCode::new(Side::Parity, h.clone())?)?;
    let g = right_kernel_generator(&h, 3, 1)?;
    let g_tilde = right_kernel_generator(&h_tilde, 3, 1)?;
    // both kernel generators are saturated, so mutual annihilation means equal modules
    let same_kernel = h_tilde.mul(&g.transpose())?.is_zero() && h.mul(&g_tilde.transpose())?.is_zero();
    let facts = ExampleFacts {
        degree: diag.degree,
        row_degree_sum_h: diag.row_degree_sum,
        max_minor_degree_h: diag.max_minor_degree,
        h_left_prime: is_left_prime(&h, PrimenessMethod::MinorGcd)?,
        h_tilde_left_prime: is_left_prime(&h_tilde, PrimenessMethod::MinorGcd)?,
        h_tilde_row_reduced: is_row_reduced(&h_tilde),
        same_kernel,
        prime_part_row_equivalent: row_equivalence(&left_prime_factorization(&h)?.prime, &h_tilde)?.is_some(),
    };
    Ok(PaperExample { h, h_tilde, facts })
}

/// Entry `(i, j) = 1 / (x_i - y_j)`.
pub fn cauchy_matrix(field: &FieldSpec, rows: usize, cols: usize, x: &[FieldElement], y: &[FieldElement]) -> Result<Matrix> {
    if x.len() != rows || y.len() != cols {
        return Err(Error::DimensionMismatch(format!(
            "need {rows} x-points and {cols} y-points, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    if rows > cols {
        return Err(Error::DimensionMismatch(format!("Cauchy matrix needs rows <= cols, got {rows}x{cols}")));
    }
    if (field.size() as usize) < rows + cols {
        return Err(Error::InvalidParams(format!(
            "GF({}) has too few elements for a {rows}x{cols} Cauchy matrix",
            field.size()
        )));
    }
    if !x.iter().chain(y).all_unique() {
        return Err(Error::InvalidParams("evaluation points must be distinct".into()));
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            m.set(i, j, field.inv(field.sub(xi, yj))?);
        }
    }
    Ok(m)
}

/// Cauchy matrix on `x = (0, ..., rows-1)`, `y = (rows, ..., rows+cols-1)`
/// in the field's element order.
pub fn default_cauchy(field: &FieldSpec, rows: usize, cols: usize) -> Result<Matrix> {
    if (field.size() as usize) < rows + cols {
        return Err(Error::InvalidParams(format!(
            "GF({}) has too few elements for a {rows}x{cols} Cauchy matrix",
            field.size()
        )));
    }
    let x: Vec<_> = (0..rows as u32).map(|i| field.element(i)).try_collect()?;
    let y: Vec<_> = (rows as u32..(rows + cols) as u32).map(|i| field.element(i)).try_collect()?;
    cauchy_matrix(field, rows, cols, &x, &y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorSizes {
    All,
    FullSize,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn all_minors_nonzero(m: &Matrix, sizes: MinorSizes) -> Result<bool> {
    let small = m.rows().min(m.cols());
    let range = match sizes {
        MinorSizes::All => 1..=small,
        MinorSizes::FullSize => small..=small,
    };
    let count: u128 = range.clone().map(|s| binomial(m.rows(), s) * binomial(m.cols(), s)).sum();
    if count > MINOR_LIMIT {
        return Err(Error::TooManyMinors { count, limit: MINOR_LIMIT });
    }
    for s in range {
        for rows in (0..m.rows()).combinations(s) {
            for cols in (0..m.cols()).combinations(s) {
                if m.submatrix(&rows, &cols).determinant()?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub params: CodeParams,
    pub criterion: MinorVerdict,
    pub left_prime: bool,
    pub code_degree: usize,
    pub vanishes_at_one: bool,
    /// Criterion holds at `L = 0` but the matrix is not left prime, so it
    /// cannot define an MDP code of the stated degree (or is catastrophic).
    pub conclusion: bool,
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub matrix: PolyMatrix,
    pub side: Side,
    pub report: CounterexampleReport,
}

/// `M(z) = M_0 - M_0 z` with `M_0` Cauchy. Needs `1 <= delta < k` and
/// `delta < n - k`, so that `L = 0`.
pub fn counterexample_l0(n: usize, k: usize, delta: usize, field: &FieldSpec, side: Side) -> Result<Counterexample> {
    let params = derive_params(n, k, delta)?;
    if delta == 0 || delta >= k || delta >= n - k {
        return Err(Error::InvalidParams(format!(
            "needs 1 <= delta < k and delta < n-k, got (n,k,delta) = ({n},{k},{delta})"
        )));
    }
    let rows = side.rows_for(n, k);
    let c0 = default_cauchy(field, rows, n)?;
    let matrix = PolyMatrix::from_coefficients(field, rows, n, &[c0.clone(), c0.neg()])?;
    let criterion = check_mdp_criterion(&matrix, side, params.l, IndexMode::Structural)?;
    let left_prime = is_left_prime(&matrix, PrimenessMethod::MinorGcd)?;
    let degree = code_degree(&ConvCode::new(side, matrix.clone())?)?;
    let vanishes_at_one = matrix.eval(field.one()).is_zero();
    let conclusion = criterion.holds && !left_prime;
    Ok(Counterexample {
        matrix,
        side,
        report: CounterexampleReport { params, criterion, left_prime, code_degree: degree, vanishes_at_one, conclusion },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    Random,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::Random => "random",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "random" => Ok(Strategy::Random),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    pub field: FieldSpec,
    pub strategy: Strategy,
    pub budget: u64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub matrix: PolyMatrix,
    pub side: Side,
    pub report: AuditReport,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub hits: Vec<SearchHit>,
    pub candidate_count: u128,
    pub examined: u64,
    /// Fewer candidates were examined than the space holds.
    pub truncated: bool,
}

/// Largest per-row coefficient space the search will enumerate.
const ROW_SPACE_LIMIT: u128 = 1 << 22;

/// Row degrees: the first `t` rows get `nu`, the others `nu - 1`.
pub fn generic_row_degrees(params: &CodeParams) -> Vec<usize> {
    let rows = params.n - params.k;
    (0..rows).map(|i| if params.t == 0 || i < params.t { params.nu } else { params.nu - 1 }).collect()
}

/// A row is stored entry-major: all coefficients of column 0, then column 1, ...
fn row_from_flat(field: &FieldSpec, n: usize, deg: usize, flat: &[FieldElement]) -> Vec<Poly> {
    flat.chunks(deg + 1).take(n).map(|c| Poly::new(field, c.to_vec())).collect()
}

/// Nonzero vectors of length `len` whose first nonzero entry is 1, in
/// lexicographic order.
fn canonical_rows(field: &FieldSpec, len: usize) -> Result<Vec<Vec<FieldElement>>> {
    let q = field.size() as u128;
    let space = q.checked_pow(len as u32).unwrap_or(u128::MAX);
    if space > ROW_SPACE_LIMIT {
        return Err(Error::OracleTooLarge { size: space, cap: ROW_SPACE_LIMIT });
    }
    let mut out = Vec::new();
    // more leading zeros sort first
    for lead in (0..len).rev() {
        let mut head = vec![field.zero(); lead];
        head.push(field.one());
        if lead + 1 == len {
            out.push(head);
            continue;
        }
        let all: Vec<FieldElement> = field.elements().collect();
        for rest in (lead + 1..len).map(|_| all.iter().copied()).multi_cartesian_product() {
            let mut v = head.clone();
            v.extend(rest);
            out.push(v);
        }
    }
    Ok(out)
}

fn random_canonical_row(field: &FieldSpec, len: usize, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    let q = field.size();
    loop {
        let v: Vec<FieldElement> = (0..len).map(|_| field.element(rng.gen_range(0..q)).expect("in range")).collect();
        if let Some(lead) = v.iter().find(|c| !c.is_zero()) {
            let inv = field.inv(*lead).expect("nonzero");
            return v.into_iter().map(|c| field.mul(c, inv)).collect();
        }
    }
}

/// Searches parity-check matrices with generic row degrees, each row scaled
/// so its first nonzero coefficient is 1, and keeps those passing the full
/// audit. Hits come back in lexicographic coefficient order.
pub fn search_mdp(config: &SearchConfig) -> Result<SearchOutcome> {
    let params = derive_params(config.n, config.k, config.delta)?;
    let f = &config.field;
    let (n, rows) = (config.n, config.n - config.k);
    let degrees = generic_row_degrees(&params);
    let row_spaces: Vec<Vec<Vec<FieldElement>>> =
        degrees.iter().map(|&d| canonical_rows(f, n * (d + 1))).try_collect()?;
    let candidate_count = row_spaces.iter().map(|s| s.len() as u128).product::<u128>();
    let examined_cap = (config.budget as u128).min(candidate_count);

    let candidates: Vec<Vec<usize>> = match config.strategy {
        Strategy::Exhaustive => (0..examined_cap)
            .map(|mut idx| {
                let mut choice = vec![0; rows];
                for r in (0..rows).rev() {
                    let size = row_spaces[r].len() as u128;
                    choice[r] = (idx % size) as usize;
                    idx /= size;
                }
                choice
            })
            .collect(),
        Strategy::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            (0..config.budget)
                .map(|_| {
                    (0..rows)
                        .map(|r| {
                            let v = random_canonical_row(f, n * (degrees[r] + 1), &mut rng);
                            row_spaces[r].binary_search(&v).expect("canonical row is enumerated")
                        })
                        .collect()
                })
                .collect()
        }
    };
    let mut distinct = candidates;
    distinct.sort();
    distinct.dedup();

    let build = |choice: &[usize]| {
        let entries: Vec<Poly> = (0..rows)
            .flat_map(|r| row_from_flat(f, n, degrees[r], &row_spaces[r][choice[r]]))
            .collect();
        PolyMatrix::new(f, rows, n, entries)
    };
    let audit = |choice: &Vec<usize>| -> Result<Option<SearchHit>> {
        let matrix = build(choice)?;
        let report = corollary_audit(&matrix, Side::Parity, n, config.k, config.delta)?;
        Ok(report.passed().then_some(SearchHit { matrix, side: Side::Parity, report }))
    };

    let threads = std::thread::available_parallelism().map_or(1, |p| p.get()).min(distinct.len().max(1));
    let chunk = distinct.len().div_ceil(threads).max(1);
    let shards: Vec<Result<Vec<SearchHit>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = distinct
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().filter_map(|c| audit(c).transpose()).collect()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });
    let mut hits = Vec::new();
    for shard in shards {
        hits.extend(shard?);
    }
    let examined = match config.strategy {
        Strategy::Exhaustive => examined_cap as u64,
        Strategy::Random => config.budget,
    };
    let truncated = match config.strategy {
        Strategy::Exhaustive => examined_cap < candidate_count,
        Strategy::Random => (distinct.len() as u128) < candidate_count,
    };
    Ok(SearchOutcome { hits, candidate_count, examined, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{column_bound, column_distance};

    fn gf(p: u32) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn example_facts() {
        let ex = paper_example_3_1().unwrap();
        let f = ex.facts;
        assert_eq!((f.degree, f.row_degree_sum_h, f.max_minor_degree_h), (1, 3, 3));
        assert!(!f.h_left_prime && f.h_tilde_left_prime && f.h_tilde_row_reduced && f.same_kernel);
        assert!(f.prime_part_row_equivalent);
    }

    #[test]
    fn cauchy_examples() {
        let f = gf(5);
        let x = [f.from_int(0), f.from_int(1)];
        let y = [f.from_int(2), f.from_int(3)];
        let c = cauchy_matrix(&f, 2, 2, &x, &y).unwrap();
        assert_eq!(c, Matrix::from_ints(&f, &[vec![2, 3], vec![4, 2]]));
        assert_eq!(c.determinant().unwrap(), f.from_int(2));
        assert!(all_minors_nonzero(&c, MinorSizes::All).unwrap());
        let big = default_cauchy(&gf(11), 3, 5).unwrap();
        assert!(all_minors_nonzero(&big, MinorSizes::All).unwrap());
        assert!(cauchy_matrix(&f, 2, 2, &x, &[f.from_int(1), f.from_int(3)]).is_err());
        assert!(default_cauchy(&f, 3, 3).is_err());
    }

    #[test]
    fn minors_of_identity() {
        let f = gf(7);
        let id = Matrix::identity(&f, 3);
        assert!(!all_minors_nonzero(&id, MinorSizes::All).unwrap());
        assert!(all_minors_nonzero(&id, MinorSizes::FullSize).unwrap());
        let wide = Matrix::zeros(&f, 10, 40);
        assert!(matches!(all_minors_nonzero(&wide, MinorSizes::All), Err(Error::TooManyMinors { .. })));
    }

    #[test]
    fn window_zero_counterexample() {
        let f = gf(11);
        let ce = counterexample_l0(5, 2, 1, &f, Side::Parity).unwrap();
        let r = &ce.report;
        assert!(r.criterion.holds && !r.left_prime && r.vanishes_at_one && r.conclusion);
        assert_eq!(r.code_degree, 0);
        let ce = counterexample_l0(5, 2, 1, &f, Side::Generator).unwrap();
        assert!(ce.report.criterion.holds && !ce.report.left_prime);
        assert_eq!(ce.report.code_degree, 2);
        assert!(counterexample_l0(5, 2, 2, &f, Side::Parity).is_err());
    }

    #[test]
    fn canonical_row_space() {
        let f = gf(3);
        let rows = canonical_rows(&f, 2).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(canonical_rows(&f, 1).unwrap().len(), 1);
    }

    fn config(p: u32, strategy: Strategy, budget: u64) -> SearchConfig {
        SearchConfig { n: 2, k: 1, delta: 1, field: gf(p), strategy, budget, seed: 7 }
    }

    #[test]
    fn search_small_fields() {
        let out = search_mdp(&config(3, Strategy::Exhaustive, 1000)).unwrap();
        assert!(!out.truncated);
        let target = PolyMatrix::from_ints(&gf(3), &[vec![vec![1, 1], vec![1, 2]]]);
        assert!(out.hits.iter().any(|h| h.matrix == target));
        for hit in &out.hits {
            let code = ConvCode::new(Side::Parity, hit.matrix.clone()).unwrap();
            for j in 0..=1 {
                assert_eq!(column_distance(&code, j).unwrap(), column_bound(2, 1, j));
            }
        }
        let out = search_mdp(&config(2, Strategy::Exhaustive, 1000)).unwrap();
        assert_eq!(out.candidate_count, 15);
        assert!(out.hits.is_empty());
        let out = search_mdp(&config(3, Strategy::Exhaustive, 0)).unwrap();
        assert!(out.hits.is_empty() && out.truncated);
    }

    #[test]
    fn random_search_is_deterministic() {
        let a = search_mdp(&config(5, Strategy::Random, 40)).unwrap();
        let b = search_mdp(&config(5, Strategy::Random, 40)).unwrap();
        let ma: Vec<_> = a.hits.iter().map(|h| h.matrix.clone()).collect();
        let mb: Vec<_> = b.hits.iter().map(|h| h.matrix.clone()).collect();
        assert_eq!(ma, mb);
        assert!(!ma.is_empty());
    }
}
