//! Identity suites for `alphaperm check`: each trial draws random inputs from
//! one seeded stream and compares two independent evaluations.

use alphaperm::combinatorics::set_partitions;
use alphaperm::exact::{
    det, per_alpha_def, per_alpha_plus_identity, per_alpha_via_det, rhs_decomposition,
    rhs_det_expansion, rhs_permanent_via_det, rhs_product_identity, rhs_sum_identity,
};
use alphaperm::immanants::{
    mobius_identity_check, per_immanant_decomposition_rhs, per_via_immanants,
};
use alphaperm::numeric::{relative_error, IDENTITY_REL_TOL};
use alphaperm::random::{complex_matrix, complex_normal};
use alphaperm::special::{per_alpha_block2, per_alpha_homsym, BlockSpec, HomSymSpec};
use alphaperm::{Complex64, Matrix, Result};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Partition decomposition of per_{alpha beta}.
    Thm1,
    /// per_alpha(A + B) as a sum over row subsets.
    Thm2Sum,
    /// per_alpha(A B) as a sum over row selections.
    Thm2Product,
    /// The permanent through block determinants.
    Eq3,
    /// per_beta through block determinants, including beta = -k.
    Eq8,
    /// The determinant through alpha-permanents.
    Eq9,
    /// per_alpha(A + I) as a sum over principal submatrices.
    Corollary,
    /// Expansion in immanants and its partition decomposition.
    Immanant,
    /// Both sides of the Möbius-inversion identity for every partition.
    Mobius,
    /// Closed forms for two-block and homogeneous matrices.
    Special,
}

#[derive(Debug, Serialize)]
pub struct Case {
    pub trial: usize,
    pub label: String,
    #[serde(serialize_with = "crate::report::serialize_complex")]
    pub lhs: Complex64,
    #[serde(serialize_with = "crate::report::serialize_complex")]
    pub rhs: Complex64,
    pub rel_err: f64,
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub cases: usize,
    pub max_rel_err: f64,
    pub failures: Vec<Case>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Recorder {
    trial: usize,
    cases: usize,
    max_rel_err: f64,
    failures: Vec<Case>,
}

impl Recorder {
    fn compare(&mut self, label: impl Into<String>, lhs: Complex64, rhs: Complex64) {
        let rel_err = relative_error(lhs, rhs);
        self.cases += 1;
        self.max_rel_err = self.max_rel_err.max(rel_err);
        if rel_err.is_nan() || rel_err > IDENTITY_REL_TOL {
            self.failures.push(Case {
                trial: self.trial,
                label: label.into(),
                lhs,
                rhs,
                rel_err,
            });
        }
    }
}

fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn one_trial(suite: Suite, n: usize, r: &mut ChaCha8Rng, rec: &mut Recorder) -> Result<()> {
    let m = complex_matrix(n, r);
    let alpha = complex_normal(r);
    match suite {
        Suite::Thm1 => {
            let beta = complex_normal(r);
            let rhs = rhs_decomposition(&m, alpha, beta)?;
            rec.compare("per_{alpha beta}", per_alpha_def(&m, alpha * beta)?, rhs);
        }
        Suite::Thm2Sum => {
            let b = complex_matrix(n, r);
            rec.compare(
                "per(A+B)",
                per_alpha_def(&(&m + &b), alpha)?,
                rhs_sum_identity(&m, &b, alpha)?,
            );
        }
        Suite::Thm2Product => {
            let b = complex_matrix(n, r);
            let rhs = rhs_product_identity(&m, &b, alpha)?;
            rec.compare("per(AB)", per_alpha_def(&(&m * &b), alpha)?, rhs);
        }
        Suite::Eq3 => {
            let per = per_alpha_def(&m, Complex64::new(1.0, 0.0))?;
            rec.compare("(-1)^n per", per * sign(n), rhs_permanent_via_det(&m)?);
        }
        Suite::Eq8 => {
            rec.compare(
                "random beta",
                per_alpha_def(&m, alpha)?,
                per_alpha_via_det(&m, alpha)?,
            );
            let k = r.gen_range(1..=3);
            let beta = Complex64::new(-(k as f64), 0.0);
            rec.compare(
                format!("beta=-{k}"),
                per_alpha_def(&m, beta)?,
                per_alpha_via_det(&m, beta)?,
            );
        }
        Suite::Eq9 => {
            rec.compare(
                "(-1)^n det",
                det(&m) * sign(n),
                rhs_det_expansion(&m, alpha)?,
            );
        }
        Suite::Corollary => {
            let shifted = &m + &Matrix::identity(n);
            rec.compare(
                "per(A+I)",
                per_alpha_def(&shifted, alpha)?,
                per_alpha_plus_identity(&m, alpha)?,
            );
        }
        Suite::Immanant => {
            let per = per_alpha_def(&m, alpha)?;
            rec.compare("immanant expansion", per, per_via_immanants(&m, alpha)?);
            let beta = complex_normal(r);
            rec.compare(
                "immanant decomposition",
                per,
                per_immanant_decomposition_rhs(&m, alpha, beta)?,
            );
        }
        Suite::Mobius => {
            for pi in set_partitions(n, None)? {
                let (lhs, rhs) = mobius_identity_check(&m, alpha, &pi)?;
                rec.compare(format!("pi={pi}"), lhs, rhs);
            }
        }
        Suite::Special => {
            let hom = HomSymSpec::new(complex_normal(r), complex_normal(r), n)?;
            rec.compare(
                "homogeneous",
                per_alpha_def(&hom.materialize(), alpha)?,
                per_alpha_homsym(&hom, alpha)?,
            );
            if n >= 2 {
                let n1 = r.gen_range(1..n);
                let entries = [0; 4].map(|_| complex_normal(r));
                let block = BlockSpec::new(entries, n1, n - n1)?;
                rec.compare(
                    format!("blocks {n1}+{}", n - n1),
                    per_alpha_def(&block.materialize(), alpha)?,
                    per_alpha_block2(&block, alpha)?,
                );
            }
        }
    }
    Ok(())
}

pub fn run(suite: Suite, n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    if n == 0 {
        return Err(alphaperm::Error::InvalidArgument(
            "--n must be at least 1".into(),
        ));
    }
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = Recorder {
        trial: 0,
        cases: 0,
        max_rel_err: 0.0,
        failures: Vec::new(),
    };
    for trial in 0..trials {
        rec.trial = trial;
        one_trial(suite, n, &mut r, &mut rec)?;
    }
    Ok(SuiteReport {
        suite,
        n,
        trials,
        seed,
        tolerance: IDENTITY_REL_TOL,
        cases: rec.cases,
        max_rel_err: rec.max_rel_err,
        failures: rec.failures,
    })
}
