#![allow(dead_code)]

use std::path::PathBuf;

use finorient::extractor::{Entity, EntityKind, EntitySequence, EntityType, Polarity, PolarityTag, Postfix};
use finorient::lexicon::{EntityClass, Lexicon};
use finorient::projection::{ProjectedSequence, TypeCoding};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn test_data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn demo_lexicon() -> Lexicon {
    Lexicon::load(data_path("demo_lexicon.tsv")).expect("demo lexicon parses")
}

/// A pool of distinct non-fill entity types.
pub fn type_pool() -> Vec<EntityType> {
    let mut out = Vec::new();
    for class in [
        EntityClass::GeneralPositive,
        EntityClass::GeneralNegative,
        EntityClass::FinPositiveIfUp,
        EntityClass::FinNegativeIfUp,
    ] {
        for base in [Polarity::Positive, Polarity::Negative, Polarity::Neutral] {
            for postfix in [None, Some(Postfix::Up), Some(Postfix::Down), Some(Postfix::Reversed)] {
                out.push(EntityType {
                    kind: EntityKind::Class(class),
                    polarity: PolarityTag::new(base, postfix),
                });
            }
        }
    }
    out
}

/// Coding of width `m` (neutral fill plus `m - 1` pool types).
pub fn coding(m: usize) -> TypeCoding {
    TypeCoding::new(type_pool().into_iter().take(m - 1).collect()).unwrap()
}

pub fn random_projection<R: Rng>(rng: &mut R, coding: &TypeCoding, max_len: usize) -> ProjectedSequence {
    let n = rng.random_range(0..=max_len);
    let blocks = (0..n).map(|_| rng.random_range(0..coding.width() as u32)).collect();
    ProjectedSequence::from_blocks(coding, blocks).unwrap()
}

/// Entity sequence over the first `m` types of `coding`, with arbitrary
/// contiguous spans.
pub fn random_sequence<R: Rng>(rng: &mut R, coding: &TypeCoding, max_len: usize) -> EntitySequence {
    let n = rng.random_range(0..=max_len);
    let mut start = 0;
    let entities = (0..n)
        .map(|_| {
            let t = coding.types()[rng.random_range(0..coding.width())];
            let len = rng.random_range(1..4);
            let e = Entity {
                start,
                end: start + len,
                kind: t.kind,
                polarity: t.polarity,
                source: None,
            };
            start += len;
            e
        })
        .collect();
    EntitySequence {
        sentence_id: None,
        entities,
    }
}

/// Dense zero-padded bit-vector inner product.
pub fn dense_dot(a: &ProjectedSequence, b: &ProjectedSequence) -> f64 {
    let (mut x, mut y) = (a.dense_bits(), b.dense_bits());
    let n = x.len().max(y.len());
    x.resize(n, false);
    y.resize(n, false);
    x.iter().zip(&y).filter(|(p, q)| **p && **q).count() as f64
}

/// Optimal value of the binary soft-margin dual
/// `max Σα − ½ αᵀQα  s.t. 0 ≤ α ≤ C, yᵀα = 0`, `Q_ij = y_i y_j K_ij`,
/// by enumerating every assignment of the variables to {0, C, free} and
/// solving the stationarity system of each face.
pub fn qp_oracle(k: &[Vec<f64>], y: &[f64], c: f64) -> f64 {
    let n = y.len();
    let q = DMatrix::from_fn(n, n, |i, j| y[i] * y[j] * k[i][j]);
    let objective = |a: &DVector<f64>| a.sum() - 0.5 * (a.transpose() * &q * a)[(0, 0)];
    let mut best = f64::NEG_INFINITY;
    let faces = 3usize.pow(n as u32);
    for code in 0..faces {
        // state per variable: 0 lower bound, 1 upper bound, 2 free
        let mut state = vec![0u8; n];
        let mut rest = code;
        for s in state.iter_mut() {
            *s = (rest % 3) as u8;
            rest /= 3;
        }
        let free: Vec<usize> = (0..n).filter(|&i| state[i] == 2).collect();
        let mut alpha = DVector::from_fn(n, |i, _| if state[i] == 1 { c } else { 0.0 });
        if !free.is_empty() {
            // [Q_FF  y_F] [α_F]   [1 − Q_FB α_B]
            // [y_Fᵀ  0  ] [ ν ] = [ −y_Bᵀ α_B  ]
            let f = free.len();
            let mut m = DMatrix::zeros(f + 1, f + 1);
            let mut rhs = DVector::zeros(f + 1);
            for (r, &i) in free.iter().enumerate() {
                for (s, &j) in free.iter().enumerate() {
                    m[(r, s)] = q[(i, j)];
                }
                m[(r, f)] = y[i];
                m[(f, r)] = y[i];
                rhs[r] = 1.0
                    - (0..n)
                        .filter(|j| state[*j] != 2)
                        .map(|j| q[(i, j)] * alpha[j])
                        .sum::<f64>();
            }
            rhs[f] = -(0..n).filter(|j| state[*j] != 2).map(|j| y[j] * alpha[j]).sum::<f64>();
            let svd = m.clone().svd(true, true);
            let Ok(sol) = svd.solve(&rhs, 1e-10) else { continue };
            if (&m * &sol - &rhs).amax() > 1e-8 {
                continue;
            }
            for (r, &i) in free.iter().enumerate() {
                alpha[i] = sol[r];
            }
        }
        let feasible = alpha.iter().all(|&a| (-1e-9..=c + 1e-9).contains(&a))
            && alpha.iter().zip(y).map(|(a, y)| a * y).sum::<f64>().abs() < 1e-9;
        if feasible {
            best = best.max(objective(&alpha));
        }
    }
    best
}
