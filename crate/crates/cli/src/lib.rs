//! Command-line front end for `mdpconv`: argument definitions, the matrix
//! file format and the report each subcommand produces.

pub mod format;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mdpconv::code::{
    check_mdp_criterion, code_degree, column_bound, column_profile, count_index_sets, degree_diagnostics,
    derive_params, free_distance, right_kernel_generator, singleton_bound, sliding, ConvCode, IndexMode,
    MinorVerdict, Side, DEFAULT_ORACLE_CAP,
};
use mdpconv::constructions::{counterexample_l0, paper_example_3_1, search_mdp, SearchConfig, Strategy};
use mdpconv::poly_matrix::{
    default_inverse_degree_bound, is_left_prime, is_row_reduced, left_prime_factorization, right_inverse, row_reduce,
    smith, PrimenessMethod,
};
use mdpconv::theorems::{corollary_audit, epsilon_condition, r_feasible_range, verify_sufficiency, AuditReport};
use mdpconv::{Error, FieldSpec, PolyMatrix};
use serde_json::{json, Value};
use thiserror::Error as ThisError;

use crate::format::{MatrixFile, ParseError};
use crate::report::{list_text, opt_json, opt_text, poly_json, Report};

#[derive(Debug, Parser)]
#[command(name = "mdpconv", version, about = "Analyses of convolutional codes over finite fields")]
pub struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FileArg {
    /// Matrix file
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Matrix file
    pub file: PathBuf,
    /// Whether the file holds a generator or a parity-check matrix
    #[arg(long, default_value = "parity")]
    pub side: Side,
}

#[derive(Debug, Args)]
pub struct NkDelta {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub delta: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree of the code and the naive degree readings
    Degree(CodeArgs),
    /// Left primeness verdict
    Leftprime {
        #[command(flatten)]
        input: FileArg,
        #[arg(long, default_value = "minor_gcd")]
        method: PrimenessMethod,
    },
    /// Row-reduced form with the unimodular transform
    Rowreduce(FileArg),
    /// Smith form and invariant factors
    Smith(FileArg),
    /// Left prime generator of the right kernel
    Kernel(FileArg),
    /// The j-th sliding matrix
    Sliding {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        j: usize,
    },
    /// MDP minor criterion (both index conditions are reported)
    Mdp {
        #[command(flatten)]
        code: CodeArgs,
        /// Window; defaults to L for the code's degree
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, default_value = "structural")]
        mode: IndexMode,
    },
    /// Brute-force column distance d_j
    Coldist {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        j: usize,
        /// Largest number of message tuples to enumerate
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: u128,
    },
    /// Column distances d_0 .. d_L against their bounds
    Profile {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: u128,
    },
    /// Free distance from column distances up to a window
    Freedist {
        #[command(flatten)]
        code: CodeArgs,
        /// Largest window to examine
        #[arg(long, default_value_t = 8)]
        cap: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: u128,
    },
    /// Stacked-rank sufficiency check (with --r) or the full audit
    Verify {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        params: NkDelta,
        #[arg(long)]
        r: Option<usize>,
        /// Rows kept in the final block row, e.g. 1,2
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<usize>>,
    },
    /// Feasible stacking depths and the fractional-part condition
    Rrange {
        #[command(flatten)]
        params: NkDelta,
        #[arg(long, default_value = "parity")]
        side: Side,
    },
    /// Window-zero matrix meeting the criterion without being left prime
    Counterexample {
        #[command(flatten)]
        params: NkDelta,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "parity")]
        side: Side,
    },
    /// Search for MDP parity-check matrices over a small field
    Search {
        #[command(flatten)]
        params: NkDelta,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "exhaustive")]
        strategy: Strategy,
    },
    /// The rate 1/3 worked example over GF(2)
    #[command(name = "example-3-1")]
    Example31,
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 1 usage, 2 input, 3 internal invariant violation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(Error::Internal(_)) => 3,
            _ => 2,
        }
    }
}

pub fn load_matrix(path: &Path) -> Result<PolyMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    MatrixFile::parse(&text)
        .map(|f| f.matrix)
        .map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn load_code(args: &CodeArgs) -> Result<ConvCode, CliError> {
    Ok(ConvCode::new(args.side, load_matrix(&args.file)?)?)
}

fn verdict_json(v: &MinorVerdict, index_sets: usize) -> Value {
    json!({
        "holds": v.holds,
        "checked": v.checked,
        "index_sets": index_sets,
        "first_failure": v.first_failure,
    })
}

fn verdict_text(v: &MinorVerdict, index_sets: usize) -> String {
    let fail = v.first_failure.as_ref().map_or_else(String::new, |s| format!(", first zero minor on columns {}", list_text(s)));
    format!("{} ({} of {index_sets} minors checked{fail})", if v.holds { "holds" } else { "fails" }, v.checked)
}

/// Turns an oversized enumeration into a verdict instead of a failure.
fn oracle_guard<T>(report: &mut Report, result: mdpconv::Result<T>) -> Result<Option<T>, CliError> {
    match result {
        Ok(v) => {
            report.put("oracle_too_large", false, false);
            Ok(Some(v))
        }
        Err(Error::OracleTooLarge { size, cap }) => {
            report
                .put("oracle_too_large", true, format!("true (needs {size} tuples, cap {cap})"))
                .put_value("verdict", "oracle too large")
                .put("oracle_size", size.to_string(), size)
                .put("oracle_cap", cap.to_string(), cap);
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn put_params(report: &mut Report, code: &ConvCode) -> Result<(), CliError> {
    let delta = code_degree(code)?;
    let p = derive_params(code.n(), code.k(), delta)?;
    report
        .put("side", code.side().name(), code.side())
        .put_value("n", p.n)
        .put_value("k", p.k)
        .put_value("delta", p.delta)
        .put_value("l", p.l);
    Ok(())
}

fn put_audit(report: &mut Report, a: &AuditReport) {
    let (n, k, j) = (a.params.n, a.params.k, a.params.l);
    report
        .put("side", a.side.name(), a.side)
        .put_value("n", n)
        .put_value("k", k)
        .put_value("delta", a.params.delta)
        .put_value("l", j)
        .put("matrix_degree", opt_json(a.matrix_degree), opt_text(a.matrix_degree))
        .put_value("expected_degree", a.expected_degree);
    let sets = count_index_sets(a.side, j, n, k, IndexMode::Structural);
    report.put("mdp_structural", verdict_json(&a.mdp, sets), verdict_text(&a.mdp, sets));
    match &a.mdp_literal {
        Some(v) => {
            let sets = count_index_sets(a.side, j, n, k, IndexMode::Literal);
            report.put("mdp_literal", verdict_json(v, sets), verdict_text(v, sets))
        }
        None => report.put("mdp_literal", Value::Null, "n/a"),
    };
    report.put_value("divisible", a.divisible);
    match &a.feasible_range {
        Some(fr) => report.put(
            "feasible_range",
            json!({
                "lower": fr.lower.to_string(),
                "upper": fr.upper,
                "real_feasible": fr.real_feasible,
                "integer_feasible": fr.integer_feasible,
            }),
            format!("[{}, {}], integer depths: {}", fr.lower, fr.upper, fr.integer_feasible),
        ),
        None => report.put("feasible_range", Value::Null, "n/a"),
    };
    report
        .put_value("sufficiency_confirmed", a.sufficiency_confirmed)
        .put("witness_r", opt_json(a.witness_r), opt_text(a.witness_r))
        .put(
            "witness_rows",
            opt_json(a.witness_subset.clone()),
            a.witness_subset.as_ref().map_or_else(|| "all".to_string(), |s| list_text(s)),
        );
    match a.sufficiency.as_ref().and_then(|s| s.witness.as_ref()) {
        Some(w) => report.put_poly_matrix("witness", w),
        None => report.put("witness", Value::Null, "none"),
    };
    report
        .put("degree", opt_json(a.degree), opt_text(a.degree))
        .put_value("degree_matches", a.degree_matches)
        .put_value("left_prime", a.left_prime)
        .put_value("row_reduced", a.row_reduced)
        .put_value("passed", a.passed());
}

fn check_shape(m: &PolyMatrix, side: Side, p: &NkDelta) -> Result<(), CliError> {
    if p.k == 0 || p.k >= p.n || m.rows() != side.rows_for(p.n, p.k) || m.cols() != p.n {
        return Err(Error::DimensionMismatch(format!(
            "a {}x{} matrix is not a {side} matrix of an (n,k) = ({},{}) code",
            m.rows(),
            m.cols(),
            p.n,
            p.k
        ))
        .into());
    }
    Ok(())
}

/// Runs one subcommand and returns its report.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Degree(args) => {
            let code = load_code(args)?;
            let d = degree_diagnostics(&code)?;
            let mut r = Report::new("degree");
            r.put("side", code.side().name(), code.side())
                .put_value("n", code.n())
                .put_value("k", code.k())
                .put_value("degree", d.degree)
                .put_value("row_degree_sum", d.row_degree_sum)
                .put_value("max_minor_degree", d.max_minor_degree)
                .put_value("left_prime", is_left_prime(code.matrix(), PrimenessMethod::MinorGcd)?)
                .put_value("row_reduced", is_row_reduced(code.matrix()));
            Ok(r)
        }
        Command::Leftprime { input, method } => {
            let m = load_matrix(&input.file)?;
            let verdict = is_left_prime(&m, *method)?;
            let mut r = Report::new("leftprime");
            r.put("method", method.name(), method).put_value("left_prime", verdict);
            if verdict {
                match right_inverse(&m, default_inverse_degree_bound(&m))? {
                    Some(x) => r.put_poly_matrix("right_inverse", &x),
                    None => r.put("right_inverse", Value::Null, "none within the default degree bound"),
                };
            } else {
                let fac = left_prime_factorization(&m)?;
                r.put_poly_matrix("left_factor", &fac.left).put_poly_matrix("prime_part", &fac.prime);
            }
            Ok(r)
        }
        Command::Rowreduce(input) => {
            let m = load_matrix(&input.file)?;
            let red = row_reduce(&m)?;
            let mut r = Report::new("rowreduce");
            r.put("input_row_degrees", opt_row_degrees(&m), list_text(&opt_row_degree_text(&m)))
                .put("row_degrees", red.row_degrees.clone(), list_text(&red.row_degrees))
                .put_value("row_degree_sum", red.row_degree_sum())
                .put_poly_matrix("reduced", &red.r)
                .put_poly_matrix("transform", &red.u)
                .put_matrix("leading_row_matrix", &red.leading_row_matrix);
            Ok(r)
        }
        Command::Smith(input) => {
            let m = load_matrix(&input.file)?;
            let s = smith(&m);
            let factors: Vec<Value> = s.factors.iter().map(poly_json).collect();
            let mut r = Report::new("smith");
            r.put("invariant_factors", factors, list_text(&s.factors))
                .put_value("rank", s.rank())
                .put_poly_matrix("d", &s.d)
                .put_poly_matrix("u", &s.u)
                .put_poly_matrix("v", &s.v);
            Ok(r)
        }
        Command::Kernel(input) => {
            let h = load_matrix(&input.file)?;
            let (n, k) = (h.cols(), h.cols().saturating_sub(h.rows()));
            let g = right_kernel_generator(&h, n, k)?;
            let mut r = Report::new("kernel");
            r.put_value("n", n).put_value("k", k).put_poly_matrix("generator", &g);
            Ok(r)
        }
        Command::Sliding { code, j } => {
            let m = load_matrix(&code.file)?;
            let sm = sliding(&m, code.side, *j)?;
            let mut r = Report::new("sliding");
            r.put("side", code.side.name(), code.side)
                .put_value("j", *j)
                .put_value("rows", sm.base.rows())
                .put_value("cols", sm.base.cols())
                .put_matrix("matrix", &sm.base);
            Ok(r)
        }
        Command::Mdp { code: args, j, mode } => {
            let code = load_code(args)?;
            let mut r = Report::new("mdp");
            put_params(&mut r, &code)?;
            let delta = code_degree(&code)?;
            let j = j.unwrap_or(derive_params(code.n(), code.k(), delta)?.l);
            let (n, k, side) = (code.n(), code.k(), code.side());
            let structural = check_mdp_criterion(code.matrix(), side, j, IndexMode::Structural)?;
            let literal = check_mdp_criterion(code.matrix(), side, j, IndexMode::Literal)?;
            let s_sets = count_index_sets(side, j, n, k, IndexMode::Structural);
            let l_sets = count_index_sets(side, j, n, k, IndexMode::Literal);
            let holds = match mode {
                IndexMode::Structural => structural.holds,
                IndexMode::Literal => literal.holds,
            };
            r.put_value("j", j)
                .put("mode", mode.name(), mode)
                .put_value("holds", holds)
                .put("structural", verdict_json(&structural, s_sets), verdict_text(&structural, s_sets))
                .put("literal", verdict_json(&literal, l_sets), verdict_text(&literal, l_sets));
            Ok(r)
        }
        Command::Coldist { code: args, j, oracle_cap } => {
            let code = load_code(args)?;
            let mut r = Report::new("coldist");
            r.put_value("j", *j).put_value("bound", column_bound(code.n(), code.k(), *j));
            let result = column_profile(&code, *j, *oracle_cap).map(|p| p[*j]);
            match result {
                Err(Error::Precondition(msg)) => {
                    r.put("column_distance", Value::Null, "unavailable").put_value("reason", msg);
                }
                other => {
                    let d = oracle_guard(&mut r, other)?;
                    r.put("column_distance", opt_json(d), opt_text(d)).put(
                        "meets_bound",
                        opt_json(d.map(|d| d == column_bound(code.n(), code.k(), *j))),
                        opt_text(d.map(|d| d == column_bound(code.n(), code.k(), *j))),
                    );
                }
            }
            Ok(r)
        }
        Command::Profile { code: args, oracle_cap } => {
            let code = load_code(args)?;
            let mut r = Report::new("profile");
            put_params(&mut r, &code)?;
            let l = derive_params(code.n(), code.k(), code_degree(&code)?)?.l;
            let bounds: Vec<usize> = (0..=l).map(|j| column_bound(code.n(), code.k(), j)).collect();
            r.put("bounds", bounds.clone(), list_text(&bounds));
            match column_profile(&code, l, *oracle_cap) {
                Err(Error::Precondition(msg)) => {
                    r.put("profile", Value::Null, "unavailable").put_value("reason", msg);
                }
                other => {
                    let profile = oracle_guard(&mut r, other)?;
                    let mdp = profile.as_ref().map(|p| *p == bounds);
                    r.put("profile", opt_json(profile.clone()), profile.map_or_else(|| "none".into(), |p| list_text(&p)))
                        .put("mdp", opt_json(mdp), opt_text(mdp));
                }
            }
            Ok(r)
        }
        Command::Freedist { code: args, cap, oracle_cap } => {
            let code = load_code(args)?;
            let mut r = Report::new("freedist");
            let delta = code_degree(&code)?;
            r.put_value("j_cap", *cap).put_value("singleton_bound", singleton_bound(code.n(), code.k(), delta));
            match free_distance(&code, *cap, *oracle_cap) {
                Err(Error::Precondition(msg)) => {
                    r.put("free_distance", Value::Null, "unavailable").put_value("reason", msg);
                }
                other => {
                    let fd = oracle_guard(&mut r, other)?;
                    r.put("free_distance", opt_json(fd.as_ref().map(|f| f.value)), opt_text(fd.as_ref().map(|f| f.value)))
                        .put("certified", opt_json(fd.as_ref().map(|f| f.certified)), opt_text(fd.map(|f| f.certified)));
                }
            }
            Ok(r)
        }
        Command::Verify { code, params, r: depth, rows } => {
            let m = load_matrix(&code.file)?;
            check_shape(&m, code.side, params)?;
            match depth {
                None => {
                    if rows.is_some() {
                        return Err(CliError::Usage("--rows needs --r".into()));
                    }
                    let audit = corollary_audit(&m, code.side, params.n, params.k, params.delta)?;
                    let mut r = Report::new("verify");
                    put_audit(&mut r, &audit);
                    Ok(r)
                }
                Some(depth) => {
                    let s = verify_sufficiency(&m, code.side, *depth, rows.as_deref())?;
                    let mut r = Report::new("verify");
                    r.put("side", code.side.name(), code.side)
                        .put_value("r", *depth)
                        .put("rows", opt_json(rows.clone()), rows.as_ref().map_or_else(|| "all".into(), |s| list_text(s)))
                        .put("shape", vec![s.shape.0, s.shape.1], format!("{}x{}", s.shape.0, s.shape.1))
                        .put_value("rank_full", s.rank_full)
                        .put_value("left_prime_confirmed", s.left_prime_confirmed)
                        .put_value("implication_ok", s.implication_ok);
                    match &s.witness {
                        Some(w) => r.put_poly_matrix("witness", w),
                        None => r.put("witness", Value::Null, "none"),
                    };
                    Ok(r)
                }
            }
        }
        Command::Rrange { params, side } => {
            let p = derive_params(params.n, params.k, params.delta)?;
            let fr = r_feasible_range(params.n, params.k, params.delta, *side)?;
            let eps = match epsilon_condition(params.n, params.k, params.delta, *side) {
                Ok(v) => Some(v),
                Err(Error::InvalidParams(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let depths: Vec<i64> = fr.depths().collect();
            let mut r = Report::new("rrange");
            r.put("side", side.name(), side)
                .put("lower", fr.lower.to_string(), fr.lower)
                .put_value("upper", fr.upper)
                .put_value("real_feasible", fr.real_feasible)
                .put_value("integer_feasible", fr.integer_feasible)
                .put("depths", depths.clone(), list_text(&depths))
                .put("eps1", p.eps1.to_string(), p.eps1)
                .put("eps2", p.eps2.to_string(), p.eps2)
                .put("epsilon_condition", opt_json(eps), opt_text(eps));
            Ok(r)
        }
        Command::Counterexample { params, q, side } => {
            let field = FieldSpec::with_order(*q)?;
            let ce = counterexample_l0(params.n, params.k, params.delta, &field, *side)?;
            let rep = &ce.report;
            let (n, k) = (params.n, params.k);
            let sets = count_index_sets(*side, rep.params.l, n, k, IndexMode::Structural);
            let mut r = Report::new("counterexample");
            r.put("side", side.name(), side)
                .put_value("l", rep.params.l)
                .put_poly_matrix("matrix", &ce.matrix)
                .put("criterion", verdict_json(&rep.criterion, sets), verdict_text(&rep.criterion, sets))
                .put_value("criterion_holds", rep.criterion.holds)
                .put_value("left_prime", rep.left_prime)
                .put_value("code_degree", rep.code_degree)
                .put_value("vanishes_at_one", rep.vanishes_at_one)
                .put_value("conclusion", rep.conclusion);
            Ok(r)
        }
        Command::Search { params, q, budget, seed, strategy } => {
            let config = SearchConfig {
                n: params.n,
                k: params.k,
                delta: params.delta,
                field: FieldSpec::with_order(*q)?,
                strategy: *strategy,
                budget: *budget,
                seed: *seed,
            };
            let mut r = Report::new("search");
            r.put("strategy", strategy.name(), strategy).put_value("budget", *budget).put_value("seed", *seed);
            if let Some(out) = oracle_guard(&mut r, search_mdp(&config))? {
                let hits: Vec<Value> = out.hits.iter().map(|h| report::poly_matrix_json(&h.matrix)).collect();
                let hits_text: String =
                    out.hits.iter().map(|h| format!("\n    {}", h.matrix.to_string().trim_end().replace('\n', "\n    "))).collect();
                r.put("candidate_count", out.candidate_count.to_string(), out.candidate_count)
                    .put_value("examined", out.examined)
                    .put_value("truncated", out.truncated)
                    .put_value("hit_count", out.hits.len())
                    .put("hits", hits, hits_text);
            }
            Ok(r)
        }
        Command::Example31 => {
            let ex = paper_example_3_1()?;
            let f = &ex.facts;
            let mut r = Report::new("example-3-1");
            r.put_poly_matrix("h", &ex.h)
                .put_poly_matrix("h_tilde", &ex.h_tilde)
                .put_value("degree", f.degree)
                .put_value("row_degree_sum_h", f.row_degree_sum_h)
                .put_value("max_minor_degree_h", f.max_minor_degree_h)
                .put_value("h_left_prime", f.h_left_prime)
                .put_value("h_tilde_left_prime", f.h_tilde_left_prime)
                .put_value("h_tilde_row_reduced", f.h_tilde_row_reduced)
                .put_value("same_kernel", f.same_kernel)
                .put_value("prime_part_row_equivalent", f.prime_part_row_equivalent);
            Ok(r)
        }
    }
}

fn opt_row_degrees(m: &PolyMatrix) -> Value {
    Value::Array(m.row_degrees().into_iter().map(opt_json).collect())
}

fn opt_row_degree_text(m: &PolyMatrix) -> Vec<String> {
    m.row_degrees().into_iter().map(opt_text).collect()
}

/// Renders a finished report the way `main` prints it.
pub fn render(report: &Report, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
        s.push('\n');
        s
    } else {
        report.to_text()
    }
}
