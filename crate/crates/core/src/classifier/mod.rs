//! One-against-one soft-margin classification over projected sequences.
//!
//! For every unordered class pair `(i, j)`, `i < j` in [`Label`] order, a
//! binary dual is solved with class `i` as the positive side. Prediction
//! counts `sign(h_ij)` votes per class and takes the arg-max.

mod model_file;
pub mod smo;

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use thiserror::Error;

pub use model_file::{load, save, ModelFile, ModelFileError};
pub use smo::{DualSolution, SolverParams};

use crate::extractor::EntitySequence;
use crate::label::Label;
use crate::projection::{matches, ProjectedSequence, ProjectionError, TypeCoding};
use smo::{DenseGram, SharedGram};

#[derive(Debug, Error, PartialEq)]
pub enum TrainError {
    #[error("no training examples for class {0}")]
    EmptyClass(Label),
    #[error("penalty C must be positive and finite, got {0}")]
    InvalidPenalty(f64),
    #[error("non-finite kernel value")]
    NonFiniteKernel,
    #[error(transparent)]
    Projection(#[from] ProjectionError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrainParams {
    pub c: f64,
    pub eps: f64,
}

impl Default for TrainParams {
    fn default() -> Self {
        TrainParams { c: 1.0, eps: 1e-3 }
    }
}

impl TrainParams {
    fn solver(self) -> SolverParams {
        SolverParams {
            c: self.c,
            eps: self.eps,
            ..SolverParams::default()
        }
    }
}

/// A training point with nonzero `α` and its signed coefficient `α·y`.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportVector {
    pub projection: ProjectedSequence,
    pub coef: f64,
}

/// Decision function of one class pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PairwiseModel {
    /// `(positive side, negative side)`.
    pub classes: (Label, Label),
    pub support: Vec<SupportVector>,
    pub bias: f64,
    pub c: f64,
}

impl PairwiseModel {
    /// `Σ coef · K(sv, x) + bias`.
    pub fn decision(&self, x: &ProjectedSequence) -> Result<f64, ProjectionError> {
        if let Some(sv) = self.support.first() {
            if sv.projection.coding_id() != x.coding_id() {
                return Err(ProjectionError::CodingMismatch);
            }
        }
        Ok(self.decision_unchecked(x))
    }

    fn decision_unchecked(&self, x: &ProjectedSequence) -> f64 {
        self.support
            .iter()
            .map(|sv| sv.coef * matches(&sv.projection, x) as f64)
            .sum::<f64>()
            + self.bias
    }

    /// Dual objective `Σα − ½ Σ_ab α_a y_a α_b y_b K_ab` recomputed from the
    /// support vectors.
    pub fn dual_objective(&self) -> f64 {
        let linear: f64 = self.support.iter().map(|s| s.coef.abs()).sum();
        let mut quad = 0.0;
        for a in &self.support {
            for b in &self.support {
                quad += a.coef * b.coef * matches(&a.projection, &b.projection) as f64;
            }
        }
        linear - 0.5 * quad
    }
}

/// Trains one binary model. `positive` marks examples of the first class.
pub fn train_pair(
    data: &[(&ProjectedSequence, bool)],
    classes: (Label, Label),
    params: TrainParams,
) -> Result<(PairwiseModel, DualSolution), TrainError> {
    if !(params.c > 0.0 && params.c.is_finite()) {
        return Err(TrainError::InvalidPenalty(params.c));
    }
    let mut distinct: Vec<&ProjectedSequence> = Vec::new();
    let mut seen: HashMap<&ProjectedSequence, usize> = HashMap::new();
    let map: Vec<usize> = data
        .iter()
        .map(|(p, _)| {
            *seen.entry(*p).or_insert_with(|| {
                distinct.push(*p);
                distinct.len() - 1
            })
        })
        .collect();
    if let Some(first) = distinct.first() {
        if distinct.iter().any(|p| p.coding_id() != first.coding_id()) {
            return Err(ProjectionError::CodingMismatch.into());
        }
    }
    let gram = SharedGram {
        distinct: DenseGram::from_fn(distinct.len(), |a, b| matches(distinct[a], distinct[b]) as f64),
        map,
    };
    let y: Vec<f64> = data.iter().map(|(_, pos)| if *pos { 1.0 } else { -1.0 }).collect();
    let sol = smo::solve(&gram, &y, params.solver());
    if !sol.objective.is_finite() || !sol.bias.is_finite() {
        return Err(TrainError::NonFiniteKernel);
    }

    let support = sol
        .alpha
        .iter()
        .enumerate()
        .filter(|(_, a)| **a > 0.0)
        .map(|(t, a)| SupportVector {
            projection: distinct[gram.map[t]].clone(),
            coef: a * y[t],
        })
        .collect();
    Ok((
        PairwiseModel {
            classes,
            support,
            bias: sol.bias,
            c: params.c,
        },
        sol,
    ))
}

/// The trained multiclass model.
#[derive(Debug)]
pub struct OrientationModel {
    coding: TypeCoding,
    pairs: Vec<PairwiseModel>,
    c: f64,
    unseen: AtomicUsize,
}

impl Clone for OrientationModel {
    fn clone(&self) -> Self {
        OrientationModel {
            coding: self.coding.clone(),
            pairs: self.pairs.clone(),
            c: self.c,
            unseen: AtomicUsize::new(self.unseen.load(Ordering::Relaxed)),
        }
    }
}

/// Votes and oriented decision values behind one prediction.
#[derive(Clone, Debug, PartialEq)]
pub struct Prediction {
    pub label: Label,
    pub votes: [i32; 3],
    /// `h_ij` for pairs (pos,neu), (pos,neg), (neu,neg).
    pub decisions: [f64; 3],
}

const PAIRS: [(Label, Label); 3] = [
    (Label::Positive, Label::Neutral),
    (Label::Positive, Label::Negative),
    (Label::Neutral, Label::Negative),
];

impl OrientationModel {
    /// Trains the three pairwise models. Every class needs an example.
    pub fn train(
        coding: TypeCoding,
        data: &[(ProjectedSequence, Label)],
        params: TrainParams,
    ) -> Result<Self, TrainError> {
        if !(params.c > 0.0 && params.c.is_finite()) {
            return Err(TrainError::InvalidPenalty(params.c));
        }
        for label in Label::ALL {
            if !data.iter().any(|(_, l)| *l == label) {
                return Err(TrainError::EmptyClass(label));
            }
        }
        if data.iter().any(|(p, _)| p.coding_id() != coding.id()) {
            return Err(ProjectionError::CodingMismatch.into());
        }
        let pairs = PAIRS
            .par_iter()
            .map(|&(a, b)| {
                let subset: Vec<(&ProjectedSequence, bool)> = data
                    .iter()
                    .filter(|(_, l)| *l == a || *l == b)
                    .map(|(p, l)| (p, *l == a))
                    .collect();
                train_pair(&subset, (a, b), params).map(|(m, _)| m)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OrientationModel {
            coding,
            pairs,
            c: params.c,
            unseen: AtomicUsize::new(0),
        })
    }

    /// Reassembles a model from stored parts (used by the model file reader).
    pub fn from_parts(coding: TypeCoding, pairs: Vec<PairwiseModel>, c: f64) -> Self {
        OrientationModel {
            coding,
            pairs,
            c,
            unseen: AtomicUsize::new(0),
        }
    }

    pub fn coding(&self) -> &TypeCoding {
        &self.coding
    }

    pub fn pairs(&self) -> &[PairwiseModel] {
        &self.pairs
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Entities seen at prediction time whose type was not in the training
    /// coding (mapped to the neutral fill).
    pub fn unseen_type_count(&self) -> usize {
        self.unseen.load(Ordering::Relaxed)
    }

    fn pair(&self, a: Label, b: Label) -> Option<&PairwiseModel> {
        self.pairs.iter().find(|p| p.classes == (a, b))
    }

    /// `h_ij(x)` with `i` the lower-indexed class of the pair.
    pub fn decision(&self, pair: (Label, Label), x: &ProjectedSequence) -> Result<f64, ProjectionError> {
        if x.coding_id() != self.coding.id() {
            return Err(ProjectionError::CodingMismatch);
        }
        let (a, b) = if pair.0 < pair.1 { pair } else { (pair.1, pair.0) };
        let m = self.pair(a, b).expect("model holds all three pairs");
        let h = m.decision_unchecked(x);
        Ok(if pair.0 < pair.1 { h } else { -h })
    }

    /// One-against-one vote.
    ///
    /// `sign(0)` counts for the lower-indexed class of a pair. Vote ties go
    /// to neutral when it is among the tied classes, then to the class with
    /// the larger sum of |h| over the pairs it won, then to the lower index.
    pub fn predict_detailed(&self, x: &ProjectedSequence) -> Result<Prediction, ProjectionError> {
        let mut votes = [0i32; 3];
        let mut won_margin = [0.0f64; 3];
        let mut decisions = [0.0; 3];
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            let h = self.decision((a, b), x)?;
            decisions[k] = h;
            let (winner, loser) = if h >= 0.0 { (a, b) } else { (b, a) };
            votes[winner.index()] += 1;
            votes[loser.index()] -= 1;
            won_margin[winner.index()] += h.abs();
        }
        let best = *votes.iter().max().expect("three classes");
        let tied: Vec<Label> = Label::ALL.into_iter().filter(|l| votes[l.index()] == best).collect();
        let label = if tied.len() == 1 {
            tied[0]
        } else if tied.contains(&Label::Neutral) {
            Label::Neutral
        } else {
            let mut best_label = tied[0];
            for &l in &tied[1..] {
                if won_margin[l.index()] > won_margin[best_label.index()] {
                    best_label = l;
                }
            }
            best_label
        };
        Ok(Prediction {
            label,
            votes,
            decisions,
        })
    }

    pub fn predict(&self, x: &ProjectedSequence) -> Result<Label, ProjectionError> {
        self.predict_detailed(x).map(|p| p.label)
    }

    /// Encodes `seq` under the model coding (unknown types become neutral
    /// fills) and predicts.
    pub fn predict_sequence(&self, seq: &EntitySequence) -> Label {
        let (x, unseen) = self.coding.encode_lossy(seq);
        if unseen > 0 {
            self.unseen.fetch_add(unseen, Ordering::Relaxed);
        }
        self.predict(&x).expect("projection uses the model coding")
    }
}
