use alphaperm::combinatorics::{bell, rencontres_c, stirling2};
use alphaperm::exact::{per_alpha, per_alpha_def, Method};
use alphaperm::fixtures::{
    printed_rencontres_table, x1, PRINTED_TABLE_RANGE, X1_PRINTED_VALUES, X1_UPPER_CSV,
};
use alphaperm::io::write_dense;
use alphaperm::numeric::relative_error;
use alphaperm::sampler::{
    is_estimate_partitions, is_estimate_permutations_uniform, EstimateReport, PitmanEwensParams,
};
use alphaperm::{Complex64, Matrix};
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::checks::{self, Suite};
use crate::report::{big_json, complex_json, format_complex, Failure, Output, Status};

/// Relative standard error above which an estimate is flagged.
const HIGH_VARIANCE: f64 = 1.0;
/// Largest `n` for the rencontres table.
const MAX_TABLE_N: usize = 10;
/// Largest `n` for the Stirling and Bell tables.
const MAX_COUNT_TABLE_N: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Sum over all permutations.
    Definition,
    /// Recursive expansion along the last row.
    Cofactor,
    /// Sum over set partitions of block determinants.
    Det,
}

impl From<Engine> for Method {
    fn from(e: Engine) -> Self {
        match e {
            Engine::Definition => Method::Definition,
            Engine::Cofactor => Method::Cofactor,
            Engine::Det => Method::DetDecomposition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Rencontres,
    Stirling,
    Bell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    X1,
}

/// Parses `re` or `re,im`.
pub fn parse_alpha(s: &str) -> Result<Complex64, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("`{t}` is not a finite number"))
    };
    match s.split_once(',') {
        None => Ok(Complex64::new(parse(s)?, 0.0)),
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
    }
}

pub fn exact(m: &Matrix, alpha: Complex64, engine: Engine) -> Result<Output, Failure> {
    let result = per_alpha(m, alpha, engine.into())?;
    let engine_name = serde_json::to_value(result.method).expect("serialisable");
    let lines = vec![
        format!("per_alpha = {}", format_complex(result.value)),
        format!("alpha = {}", format_complex(alpha)),
        format!("engine = {}", engine_name.as_str().unwrap_or_default()),
        format!("terms = {}", result.terms_evaluated),
    ];
    let json = json!({
        "alpha": complex_json(alpha),
        "engine": engine_name,
        "n": m.n(),
        "terms": result.terms_evaluated,
        "value": complex_json(result.value),
    });
    Ok(Output::new(lines, json))
}

fn real_alpha(alpha: Complex64) -> Result<f64, Failure> {
    if alpha.im != 0.0 {
        return Err(Failure::input("the estimators take a real alpha"));
    }
    Ok(alpha.re)
}

fn report_lines(r: &EstimateReport) -> Vec<String> {
    let mut lines = vec![
        format!("estimate = {}", r.estimate),
        format!("stderr = {}", r.stderr),
        format!("relative stderr = {:.4}%", 100.0 * r.relative_stderr()),
        format!("samples = {}", r.n_samples),
        format!("seed = {}", r.seed),
        format!("alpha = {}", r.target_alpha),
    ];
    match &r.params {
        Some(p) => lines.push(format!(
            "proposal = Pitman-Ewens(a = {}, theta = {})",
            p.a(),
            p.theta()
        )),
        None => lines.push("proposal = uniform permutations".into()),
    }
    lines
}

fn report_json(r: &EstimateReport) -> Value {
    let mut v = serde_json::to_value(r).expect("serialisable");
    v["relative_stderr"] = json!(r.relative_stderr());
    v
}

fn high_variance_warning(r: &EstimateReport) -> Option<String> {
    let rel = r.relative_stderr();
    (rel > HIGH_VARIANCE).then(|| {
        format!(
            "warning: high-variance regime: relative stderr {:.0}% exceeds 100%; the estimate is unreliable",
            100.0 * rel
        )
    })
}

pub struct EstimateArgs {
    pub alpha: Complex64,
    pub a: Option<f64>,
    pub theta: Option<f64>,
    pub uniform: bool,
    pub samples: usize,
    pub seed: u64,
}

pub fn estimate(m: &Matrix, args: &EstimateArgs) -> Result<Output, Failure> {
    let alpha = real_alpha(args.alpha)?;
    let report = if args.uniform {
        if args.a.is_some() || args.theta.is_some() {
            return Err(Failure::input("--a/--theta do not apply to --uniform"));
        }
        is_estimate_permutations_uniform(m, alpha, args.samples, args.seed)?
    } else {
        let params = match (args.a, args.theta) {
            (None, None) => PitmanEwensParams::default_for(alpha),
            (Some(a), Some(theta)) => PitmanEwensParams::new(a, theta)?,
            _ => return Err(Failure::input("--a and --theta must be given together")),
        };
        is_estimate_partitions(m, alpha, &params, args.samples, args.seed)?
    };
    let mut out = Output::new(report_lines(&report), report_json(&report));
    out.warnings.extend(high_variance_warning(&report));
    Ok(out)
}

pub fn check(suite: Suite, n: usize, trials: usize, seed: u64) -> Result<Output, Failure> {
    let report = checks::run(suite, n, trials, seed)?;
    let name = serde_json::to_value(suite).expect("serialisable");
    let mut lines = vec![format!(
        "{} n={n} trials={trials} seed={seed}: {} cases, max rel err {:.3e} (tolerance {:e}) {}",
        name.as_str().unwrap_or_default(),
        report.cases,
        report.max_rel_err,
        report.tolerance,
        if report.passed() { "ok" } else { "FAILED" },
    )];
    for f in &report.failures {
        lines.push(format!(
            "  trial {} {}: {} vs {} (rel err {:.3e})",
            f.trial,
            f.label,
            format_complex(f.lhs),
            format_complex(f.rhs),
            f.rel_err
        ));
    }
    let mut out = Output::new(lines, serde_json::to_value(&report).expect("serialisable"));
    if !report.passed() {
        out.status = Status::Mismatch;
    }
    Ok(out)
}

pub fn tables(kind: TableKind, n: usize, verify_appendix: bool) -> Result<Output, Failure> {
    if verify_appendix && kind != TableKind::Rencontres {
        return Err(Failure::input(
            "--verify-appendix applies to the rencontres table only",
        ));
    }
    let mut lines = Vec::new();
    let mut status = Status::Ok;
    let json = match kind {
        TableKind::Rencontres => {
            if n == 0 {
                return Err(Failure::input("--n must be at least 1"));
            }
            if n > MAX_TABLE_N {
                return Err(alphaperm::Error::SizeLimit {
                    what: "rencontres table",
                    n,
                    max: MAX_TABLE_N,
                }
                .into());
            }
            let rows: Vec<Vec<_>> = (1..=n)
                .map(|k| (0..=n).map(|l| rencontres_c(n, k, l)).collect())
                .collect();
            let header: Vec<String> = (0..=n).map(|l| l.to_string()).collect();
            lines.push(format!("({n},k,l) l={}", header.join(" ")));
            for (k, row) in (1..).zip(&rows) {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                lines.push(format!("k={k} {}", cells.join(" ")));
            }
            let mut mismatches = Vec::new();
            if verify_appendix {
                let (lo, hi) = PRINTED_TABLE_RANGE;
                let printed = printed_rencontres_table(n).ok_or_else(|| {
                    Failure::input(format!("the published tables cover n = {lo}..={hi}"))
                })?;
                for (k, (ours, theirs)) in (1..).zip(rows.iter().zip(&printed)) {
                    for (l, (x, &y)) in ours.iter().zip(theirs).enumerate() {
                        if u64::try_from(x).ok() != Some(y) {
                            mismatches.push(
                                json!({ "k": k, "l": l, "computed": big_json(x), "printed": y }),
                            );
                            lines.push(format!(
                                "mismatch at (n={n}, k={k}, l={l}): computed {x}, printed {y}"
                            ));
                        }
                    }
                }
                if mismatches.is_empty() {
                    lines.push("matches the published table".into());
                } else {
                    status = Status::Mismatch;
                }
            }
            let mut v = json!({
                "kind": "rencontres",
                "n": n,
                "rows": rows.iter().map(|r| r.iter().map(big_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            if verify_appendix {
                v["appendix_mismatches"] = json!(mismatches);
            }
            v
        }
        TableKind::Stirling => {
            guard_counts(n)?;
            let rows: Vec<Vec<_>> = (1..=n)
                .map(|m| (1..=m).map(|k| stirling2(m, k)).collect())
                .collect();
            for (m, row) in (1..).zip(&rows) {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                lines.push(format!("n={m} {}", cells.join(" ")));
            }
            json!({
                "kind": "stirling",
                "n": n,
                "rows": rows.iter().map(|r| r.iter().map(big_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        }
        TableKind::Bell => {
            guard_counts(n)?;
            let values: Vec<_> = (1..=n).map(bell).collect();
            for (m, b) in (1..).zip(&values) {
                lines.push(format!("B({m}) = {b}"));
            }
            json!({
                "kind": "bell",
                "n": n,
                "values": values.iter().map(big_json).collect::<Vec<_>>(),
            })
        }
    };
    let mut out = Output::new(lines, json);
    out.status = status;
    Ok(out)
}

fn guard_counts(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::input("--n must be at least 1"));
    }
    if n > MAX_COUNT_TABLE_N {
        return Err(alphaperm::Error::SizeLimit {
            what: "count table",
            n,
            max: MAX_COUNT_TABLE_N,
        }
        .into());
    }
    Ok(())
}

pub fn reproduce_table1(seed: u64, samples: usize) -> Result<Output, Failure> {
    let m = x1();
    let mut lines = vec![format!(
        "{:>6} {:>14} {:>12} {:>9} {:>14} {:>12} {:>10}  proposal",
        "alpha", "exact", "printed", "diff", "estimate", "stderr", "rel se"
    )];
    let mut rows = Vec::new();
    for (alpha, printed, tol) in X1_PRINTED_VALUES {
        let exact = per_alpha_def(&m, Complex64::new(alpha, 0.0))?.re;
        let params = PitmanEwensParams::default_for(alpha);
        let r = is_estimate_partitions(&m, alpha, &params, samples, seed)?;
        let diff = relative_error(Complex64::new(exact, 0.0), Complex64::new(printed, 0.0));
        lines.push(format!(
            "{:>6} {:>14.2} {:>12} {:>8.2}% {:>14.2} {:>12.2} {:>9.2}%  a={}, theta={}",
            alpha,
            exact,
            printed,
            100.0 * diff,
            r.estimate,
            r.stderr,
            100.0 * r.relative_stderr(),
            params.a(),
            params.theta(),
        ));
        rows.push(json!({
            "alpha": alpha,
            "exact": exact,
            "printed": printed,
            "printed_rel_diff": diff,
            "within_printed_precision": diff <= tol,
            "report": report_json(&r),
        }));
    }
    lines.push(
        "exact values use X1 as printed (two decimals); diff is relative to the published column"
            .into(),
    );
    Ok(Output::new(
        lines,
        json!({ "rows": rows, "n_samples": samples, "seed": seed }),
    ))
}

pub fn fixture(which: Fixture, dense: bool) -> Output {
    match which {
        Fixture::X1 => {
            let text = if dense {
                write_dense(&x1())
            } else {
                X1_UPPER_CSV.to_string()
            };
            let json = json!({ "name": "x1", "csv": text });
            Output::new(text.lines().map(String::from).collect(), json)
        }
    }
}
