//! Bit-sequence projection of entity sequences and the sequence kernel.
//!
//! Each entity type gets an index in a [`TypeCoding`]; a sequence of `n`
//! entities becomes `n` one-hot blocks of width `m`. Projections are stored
//! sparsely as the list of set-bit indices, one per block. Two projections
//! of different length are compared as if the shorter one were padded with
//! zero blocks.

use std::collections::HashMap;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::extractor::{EntitySequence, EntityType};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProjectionError {
    #[error("entity type {0} is not in the type coding")]
    UnknownType(String),
    #[error("projections were encoded under different type codings")]
    CodingMismatch,
    #[error("duplicate entity type {0} in coding")]
    DuplicateType(String),
}

/// Bijection between entity types and one-hot positions.
///
/// Index 0 is always the neutral fill type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeCoding {
    types: Vec<EntityType>,
    index: HashMap<EntityType, u32>,
    id: u64,
}

impl TypeCoding {
    /// Builds a coding from an explicit type list (neutral fill is prepended
    /// when missing).
    pub fn new(types: Vec<EntityType>) -> Result<Self, ProjectionError> {
        let mut all = vec![EntityType::NEUTRAL_FILL];
        all.extend(types.into_iter().filter(|t| *t != EntityType::NEUTRAL_FILL));
        let mut index = HashMap::with_capacity(all.len());
        for (i, t) in all.iter().enumerate() {
            if index.insert(*t, i as u32).is_some() {
                return Err(ProjectionError::DuplicateType(t.to_string()));
            }
        }
        let mut hasher = Sha256::new();
        for t in &all {
            hasher.update(t.to_string().as_bytes());
            hasher.update([0u8]);
        }
        let digest = hasher.finalize();
        let id = u64::from_le_bytes(digest[..8].try_into().expect("sha256 yields 32 bytes"));
        Ok(TypeCoding { types: all, index, id })
    }

    /// Coding of every type realized in `sequences`, in sorted order after
    /// the neutral fill.
    pub fn from_sequences<'a>(sequences: impl IntoIterator<Item = &'a EntitySequence>) -> Self {
        let mut types: Vec<EntityType> = sequences.into_iter().flat_map(|s| s.types()).collect();
        types.sort();
        types.dedup();
        Self::new(types).expect("deduplicated types")
    }

    /// Number of distinguishable types (block width).
    pub fn width(&self) -> usize {
        self.types.len()
    }

    pub fn types(&self) -> &[EntityType] {
        &self.types
    }

    pub fn index_of(&self, t: &EntityType) -> Option<u32> {
        self.index.get(t).copied()
    }

    /// Stable fingerprint of the type list.
    pub fn id(&self) -> u64 {
        self.id
    }

    /// Projects `seq`; fails on a type the coding does not know.
    pub fn encode(&self, seq: &EntitySequence) -> Result<ProjectedSequence, ProjectionError> {
        let blocks = seq
            .types()
            .map(|t| {
                self.index_of(&t)
                    .ok_or_else(|| ProjectionError::UnknownType(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProjectedSequence {
            blocks,
            width: self.width() as u32,
            coding: self.id,
        })
    }

    /// Projects `seq`, mapping unknown types to the neutral fill. Returns the
    /// projection and how many entities were remapped.
    pub fn encode_lossy(&self, seq: &EntitySequence) -> (ProjectedSequence, usize) {
        let mut unseen = 0;
        let blocks = seq
            .types()
            .map(|t| {
                self.index_of(&t).unwrap_or_else(|| {
                    unseen += 1;
                    0
                })
            })
            .collect();
        (
            ProjectedSequence {
                blocks,
                width: self.width() as u32,
                coding: self.id,
            },
            unseen,
        )
    }
}

/// Sparse one-hot block sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectedSequence {
    blocks: Vec<u32>,
    width: u32,
    coding: u64,
}

impl ProjectedSequence {
    /// Rebuilds a projection from stored block indices.
    pub fn from_blocks(coding: &TypeCoding, blocks: Vec<u32>) -> Result<Self, ProjectionError> {
        if let Some(&b) = blocks.iter().find(|&&b| b as usize >= coding.width()) {
            return Err(ProjectionError::UnknownType(format!("index {b}")));
        }
        Ok(ProjectedSequence {
            blocks,
            width: coding.width() as u32,
            coding: coding.id(),
        })
    }

    /// Number of blocks (entities).
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Type index of each block.
    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn width(&self) -> usize {
        self.width as usize
    }

    pub fn coding_id(&self) -> u64 {
        self.coding
    }

    /// Dense bit view of length `len() * width()`.
    pub fn dense_bits(&self) -> Vec<bool> {
        let m = self.width();
        let mut bits = vec![false; self.blocks.len() * m];
        for (i, &b) in self.blocks.iter().enumerate() {
            bits[i * m + b as usize] = true;
        }
        bits
    }
}

/// Inner product of two projections under the same coding: the number of
/// aligned positions whose types agree.
pub fn kernel(a: &ProjectedSequence, b: &ProjectedSequence) -> Result<f64, ProjectionError> {
    if a.coding != b.coding {
        return Err(ProjectionError::CodingMismatch);
    }
    Ok(matches(a, b) as f64)
}

/// Kernel without the coding check.
pub(crate) fn matches(a: &ProjectedSequence, b: &ProjectedSequence) -> usize {
    a.blocks.iter().zip(&b.blocks).filter(|(x, y)| x == y).count()
}

/// Same length and the same entity type at every position.
pub fn equivalent(a: &EntitySequence, b: &EntitySequence) -> bool {
    a.len() == b.len() && a.types().zip(b.types()).all(|(x, y)| x == y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extractor::{Entity, EntityKind, Polarity, PolarityTag, Postfix};
    use crate::lexicon::EntityClass;

    fn ent(kind: EntityKind, pol: PolarityTag, start: usize, end: usize) -> Entity {
        Entity {
            start,
            end,
            kind,
            polarity: pol,
            source: None,
        }
    }

    fn seq(es: Vec<Entity>) -> EntitySequence {
        EntitySequence {
            sentence_id: None,
            entities: es,
        }
    }

    fn neg_down() -> (EntityKind, PolarityTag) {
        (
            EntityKind::Class(EntityClass::FinPositiveIfUp),
            PolarityTag::new(Polarity::Negative, Some(Postfix::Down)),
        )
    }

    #[test]
    fn single_neutral_block() {
        let coding = TypeCoding::from_sequences([&seq(vec![Entity::fill(0, 3)])]);
        let p = coding.encode(&seq(vec![Entity::fill(0, 3)])).unwrap();
        assert_eq!(p.blocks(), &[0]);
        assert_eq!(p.dense_bits().iter().filter(|b| **b).count(), 1);
        assert!(p.dense_bits()[0]);
    }

    #[test]
    fn empty_sequence_projects_to_nothing() {
        let coding = TypeCoding::new(vec![]).unwrap();
        let p = coding.encode(&EntitySequence::default()).unwrap();
        assert!(p.is_empty());
        assert_eq!(kernel(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn unknown_type_is_an_error_or_remapped() {
        let coding = TypeCoding::new(vec![]).unwrap();
        let (k, p) = neg_down();
        let s = seq(vec![ent(k, p, 0, 2)]);
        assert!(matches!(coding.encode(&s), Err(ProjectionError::UnknownType(_))));
        let (proj, unseen) = coding.encode_lossy(&s);
        assert_eq!(unseen, 1);
        assert_eq!(proj.blocks(), &[0]);
    }

    #[test]
    fn equivalence_ignores_spans() {
        let (k, p) = neg_down();
        let a = seq(vec![ent(k, p, 0, 2), Entity::fill(2, 5)]);
        let b = seq(vec![ent(k, p, 0, 1), Entity::fill(1, 9)]);
        assert!(equivalent(&a, &a));
        assert!(equivalent(&a, &b));
        let c = seq(vec![ent(k, p, 0, 2), Entity::fill(2, 5), ent(k, p, 5, 6)]);
        assert!(!equivalent(&a, &c));
    }

    #[test]
    fn kernel_rejects_mixed_codings() {
        let (k, p) = neg_down();
        let a = TypeCoding::new(vec![]).unwrap();
        let b = TypeCoding::new(vec![EntityType { kind: k, polarity: p }]).unwrap();
        let s = seq(vec![Entity::fill(0, 1)]);
        assert_eq!(
            kernel(&a.encode(&s).unwrap(), &b.encode(&s).unwrap()),
            Err(ProjectionError::CodingMismatch)
        );
    }
}
