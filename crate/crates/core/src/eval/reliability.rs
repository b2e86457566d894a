//! Variance-based inter-rater reliability on complete score matrices.
//!
//! All coefficients start from the two-way decomposition of an `n × k`
//! matrix (rows are sentences, columns are raters):
//!
//! ```text
//! SS_R = k Σ_i (r̄_i − x̄)²      MS_R = SS_R / (n − 1)
//! SS_C = n Σ_j (c̄_j − x̄)²      MS_C = SS_C / (k − 1)
//! SS_E = SS_T − SS_R − SS_C    MS_E = SS_E / ((n − 1)(k − 1))
//! ```

use std::fmt;

use super::{AnnotationMatrix, EvalError};

/// A coefficient value, or `Degenerate` where the statistic is 0/0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Coefficient {
    Value(f64),
    Degenerate,
}

impl Coefficient {
    pub fn value(self) -> Option<f64> {
        match self {
            Coefficient::Value(v) => Some(v),
            Coefficient::Degenerate => None,
        }
    }

    fn ratio(num: f64, den: f64) -> Self {
        if den.abs() <= 1e-12 {
            Coefficient::Degenerate
        } else {
            Coefficient::Value(num / den)
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Value(v) => write!(f, "{v:.3}"),
            Coefficient::Degenerate => f.write_str("degenerate"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IccVariant {
    Consistency,
    Agreement,
}

/// Two-way ANOVA mean squares of a score matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Anova {
    pub n: usize,
    pub k: usize,
    pub ss_total: f64,
    pub ss_within_rows: f64,
    pub ms_rows: f64,
    pub ms_cols: f64,
    pub ms_error: f64,
}

impl Anova {
    pub fn of(x: &[Vec<f64>]) -> Option<Anova> {
        let n = x.len();
        let k = x.first().map_or(0, Vec::len);
        if n < 2 || k < 2 || x.iter().any(|r| r.len() != k) {
            return None;
        }
        let (nf, kf) = (n as f64, k as f64);
        let grand = x.iter().flatten().sum::<f64>() / (nf * kf);
        let row_means: Vec<f64> = x.iter().map(|r| r.iter().sum::<f64>() / kf).collect();
        let col_means: Vec<f64> = (0..k).map(|j| x.iter().map(|r| r[j]).sum::<f64>() / nf).collect();
        let ss_total: f64 = x.iter().flatten().map(|v| (v - grand).powi(2)).sum();
        let ss_rows = kf * row_means.iter().map(|m| (m - grand).powi(2)).sum::<f64>();
        let ss_cols = nf * col_means.iter().map(|m| (m - grand).powi(2)).sum::<f64>();
        let ss_within_rows: f64 = x
            .iter()
            .zip(&row_means)
            .flat_map(|(r, m)| r.iter().map(move |v| (v - m).powi(2)))
            .sum();
        let ss_error = (ss_total - ss_rows - ss_cols).max(0.0);
        Some(Anova {
            n,
            k,
            ss_total,
            ss_within_rows,
            ms_rows: ss_rows / (nf - 1.0),
            ms_cols: ss_cols / (kf - 1.0),
            ms_error: ss_error / ((nf - 1.0) * (kf - 1.0)),
        })
    }
}

fn score_matrix(m: &AnnotationMatrix) -> Result<Vec<Vec<f64>>, EvalError> {
    if m.annotators.len() < 2 {
        return Err(EvalError::TooFewAnnotators(m.annotators.len()));
    }
    m.scores()
}

/// Single-rater intraclass correlation.
///
/// Consistency: `(MS_R − MS_E) / (MS_R + (k−1) MS_E)`.
/// Agreement: `(MS_R − MS_E) / (MS_R + (k−1) MS_E + (k/n)(MS_C − MS_E))`.
pub fn icc_scores(x: &[Vec<f64>], variant: IccVariant) -> Coefficient {
    let Some(a) = Anova::of(x) else {
        return Coefficient::Degenerate;
    };
    let (n, k) = (a.n as f64, a.k as f64);
    let num = a.ms_rows - a.ms_error;
    let mut den = a.ms_rows + (k - 1.0) * a.ms_error;
    if variant == IccVariant::Agreement {
        den += k / n * (a.ms_cols - a.ms_error);
    }
    Coefficient::ratio(num, den)
}

/// Variance of the discrete uniform distribution over the three scores.
pub const EXPECTED_VARIANCE: f64 = 2.0 / 3.0;

/// `1 − MS_E / σ²`, with σ² the variance of random uniform rating.
pub fn finn_scores(x: &[Vec<f64>]) -> Coefficient {
    match Anova::of(x) {
        Some(a) if a.ss_total > 1e-12 => Coefficient::Value(1.0 - a.ms_error / EXPECTED_VARIANCE),
        _ => Coefficient::Degenerate,
    }
}

/// `1 − SS_within-rows / SS_total`.
pub fn robinson_scores(x: &[Vec<f64>]) -> Coefficient {
    match Anova::of(x) {
        Some(a) => Coefficient::ratio(a.ss_total - a.ss_within_rows, a.ss_total),
        None => Coefficient::Degenerate,
    }
}

pub fn icc(m: &AnnotationMatrix, variant: IccVariant) -> Result<Coefficient, EvalError> {
    Ok(icc_scores(&score_matrix(m)?, variant))
}

pub fn finn_coefficient(m: &AnnotationMatrix) -> Result<Coefficient, EvalError> {
    Ok(finn_scores(&score_matrix(m)?))
}

pub fn robinson_a(m: &AnnotationMatrix) -> Result<Coefficient, EvalError> {
    Ok(robinson_scores(&score_matrix(m)?))
}
