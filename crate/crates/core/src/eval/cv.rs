//! Stratified k-fold cross-validation and one-vs-rest class metrics.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ingest::Sentence;
use crate::label::Label;
use crate::pipeline::Pipeline;
use crate::Result;

use super::EvalError;

pub const DEFAULT_SEED: u64 = 20140101;

/// 3 × 3 counts, rows are gold labels and columns predictions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Confusion {
    pub counts: [[u64; 3]; 3],
}

/// One-vs-rest metrics of a single class.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassMetrics {
    pub accuracy: f64,
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

impl Confusion {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Label, Label)>) -> Self {
        let mut c = Confusion::default();
        for (gold, pred) in pairs {
            c.add(gold, pred);
        }
        c
    }

    pub fn add(&mut self, gold: Label, predicted: Label) {
        self.counts[gold.index()][predicted.index()] += 1;
    }

    pub fn merge(&mut self, other: &Confusion) {
        for i in 0..3 {
            for j in 0..3 {
                self.counts[i][j] += other.counts[i][j];
            }
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Fraction of all examples on the diagonal.
    pub fn accuracy(&self) -> f64 {
        ratio((0..3).map(|i| self.counts[i][i]).sum(), self.total())
    }

    /// Metrics of `label` against the other two classes. Undefined
    /// precision or recall (0/0) is reported as 0, and so is F1 when
    /// precision plus recall is 0.
    pub fn class_metrics(&self, label: Label) -> ClassMetrics {
        let k = label.index();
        let tp = self.counts[k][k];
        let gold: u64 = self.counts[k].iter().sum();
        let predicted: u64 = (0..3).map(|i| self.counts[i][k]).sum();
        let n = self.total();
        let tn = n + tp - gold - predicted;
        let recall = ratio(tp, gold);
        let precision = ratio(tp, predicted);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        ClassMetrics {
            accuracy: ratio(tp + tn, n),
            recall,
            precision,
            f1,
        }
    }
}

/// Fold index of every example. Each class is shuffled with a ChaCha8
/// stream seeded by `seed` and dealt round-robin, continuing the deal
/// across classes so fold sizes differ by at most one.
pub fn stratified_folds(labels: &[Label], folds: usize, seed: u64) -> std::result::Result<Vec<usize>, EvalError> {
    if folds < 2 {
        return Err(EvalError::BadFoldCount(folds));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0; labels.len()];
    let mut next = 0;
    for label in Label::ALL {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == label).collect();
        if members.len() < folds {
            return Err(EvalError::ClassTooSmall {
                label,
                count: members.len(),
                folds,
            });
        }
        members.shuffle(&mut rng);
        for i in members {
            assignment[i] = next;
            next = (next + 1) % folds;
        }
    }
    Ok(assignment)
}

/// Pooled confusion matrix of `folds`-fold stratified cross-validation.
pub fn cross_validate(pipeline: &Pipeline, data: &[(Sentence, Label)], folds: usize, seed: u64) -> Result<Confusion> {
    let labels: Vec<Label> = data.iter().map(|(_, l)| *l).collect();
    let assignment = stratified_folds(&labels, folds, seed)?;
    let per_fold = (0..folds)
        .into_par_iter()
        .map(|f| {
            let train: Vec<(&Sentence, Label)> = data
                .iter()
                .zip(&assignment)
                .filter(|(_, &a)| a != f)
                .map(|((s, l), _)| (s, *l))
                .collect();
            let fitted = pipeline.fit(&train)?;
            let mut c = Confusion::default();
            for ((s, l), _) in data.iter().zip(&assignment).filter(|(_, &a)| a == f) {
                c.add(*l, fitted.predict(s));
            }
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut pooled = Confusion::default();
    for c in &per_fold {
        pooled.merge(c);
    }
    Ok(pooled)
}
