//! Versioned text serialization of [`OrientationModel`].
//!
//! ```text
//! finorient-model 1
//! meta <key> <value>
//! c <C>
//! types <m>
//! type <EntityType>            (m lines, coding order)
//! pair <label> <label> bias <b> sv <n>
//! sv <coef> <idx,idx,...|->    (n lines)
//! checksum <sha256 of everything above>
//! ```
//!
//! Floats are written with Rust's shortest round-trip formatting, so
//! `load(save(m))` reproduces every coefficient bit for bit.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{OrientationModel, PairwiseModel, SupportVector};
use crate::extractor::EntityType;
use crate::label::Label;
use crate::projection::{ProjectedSequence, TypeCoding};

pub const MAGIC: &str = "finorient-model";
pub const VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq)]
pub enum ModelFileError {
    #[error("unsupported model file version {found} (expected {VERSION})")]
    Version { found: String },
    #[error("model file checksum missing or wrong (truncated or modified file)")]
    Checksum,
    #[error("model file line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

/// A model plus free-form metadata (pipeline kind, window, ...).
#[derive(Clone, Debug)]
pub struct ModelFile {
    pub meta: Vec<(String, String)>,
    pub model: OrientationModel,
}

impl ModelFile {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

fn blocks_field(p: &ProjectedSequence) -> String {
    if p.is_empty() {
        return "-".to_string();
    }
    let parts: Vec<String> = p.blocks().iter().map(u32::to_string).collect();
    parts.join(",")
}

pub fn save(file: &ModelFile) -> String {
    let m = &file.model;
    let mut out = String::new();
    writeln!(out, "{MAGIC} {VERSION}").unwrap();
    for (k, v) in &file.meta {
        writeln!(out, "meta {k} {v}").unwrap();
    }
    writeln!(out, "c {}", m.c).unwrap();
    writeln!(out, "types {}", m.coding.width()).unwrap();
    for t in m.coding.types() {
        writeln!(out, "type {t}").unwrap();
    }
    for p in &m.pairs {
        writeln!(
            out,
            "pair {} {} bias {} sv {}",
            p.classes.0,
            p.classes.1,
            p.bias,
            p.support.len()
        )
        .unwrap();
        for sv in &p.support {
            writeln!(out, "sv {} {}", sv.coef, blocks_field(&sv.projection)).unwrap();
        }
    }
    let digest = hex::encode(Sha256::digest(out.as_bytes()));
    writeln!(out, "checksum {digest}").unwrap();
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    peeked: Option<(usize, &'a str)>,
}

impl<'a> Lines<'a> {
    fn peek(&mut self) -> Option<(usize, &'a str)> {
        if self.peeked.is_none() {
            self.peeked = self.inner.next().map(|(i, l)| (i + 1, l));
        }
        self.peeked
    }

    fn next(&mut self) -> Result<(usize, &'a str), ModelFileError> {
        let r = self.peek().ok_or(ModelFileError::Checksum)?;
        self.peeked = None;
        Ok(r)
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, Vec<&'a str>), ModelFileError> {
        let (n, line) = self.next()?;
        let mut fields: Vec<&str> = line.split(' ').collect();
        if fields[0] != key {
            return Err(malformed(n, format!("expected `{key}`, found `{}`", fields[0])));
        }
        fields.remove(0);
        Ok((n, fields))
    }
}

fn malformed(line: usize, reason: impl Into<String>) -> ModelFileError {
    ModelFileError::Malformed {
        line,
        reason: reason.into(),
    }
}

fn num<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, ModelFileError> {
    s.parse().map_err(|_| malformed(line, format!("bad number `{s}`")))
}

fn one<'a>(line: usize, fields: &[&'a str]) -> Result<&'a str, ModelFileError> {
    match fields {
        [x] => Ok(x),
        _ => Err(malformed(line, format!("expected 1 value, found {}", fields.len()))),
    }
}

pub fn load(text: &str) -> Result<ModelFile, ModelFileError> {
    let first = text.lines().next().unwrap_or("");
    match first.split_once(' ') {
        Some((MAGIC, v)) if v == VERSION.to_string() => {}
        Some((MAGIC, v)) => return Err(ModelFileError::Version { found: v.to_string() }),
        _ => return Err(malformed(1, format!("not a {MAGIC} file"))),
    }

    // The checksum line must be the last line and cover all bytes before it.
    let body_end = text.trim_end_matches('\n').rfind('\n').map_or(0, |i| i + 1);
    let (body, tail) = text.split_at(body_end);
    let expected = tail
        .trim_end_matches('\n')
        .strip_prefix("checksum ")
        .ok_or(ModelFileError::Checksum)?;
    if hex::encode(Sha256::digest(body.as_bytes())) != expected {
        return Err(ModelFileError::Checksum);
    }

    let mut lines = Lines {
        inner: body.lines().enumerate(),
        peeked: None,
    };
    lines.next()?;
    let mut meta = Vec::new();
    while let Some((n, l)) = lines.peek() {
        let Some(rest) = l.strip_prefix("meta ") else { break };
        let (k, v) = rest
            .split_once(' ')
            .ok_or_else(|| malformed(n, "meta needs key and value"))?;
        meta.push((k.to_string(), v.to_string()));
        lines.next()?;
    }
    let (n, f) = lines.keyword("c")?;
    let c: f64 = num(n, one(n, &f)?)?;
    let (n, f) = lines.keyword("types")?;
    let m: usize = num(n, one(n, &f)?)?;
    let mut types = Vec::with_capacity(m);
    for _ in 0..m {
        let (n, f) = lines.keyword("type")?;
        let t: EntityType = one(n, &f)?.parse().map_err(|e: String| malformed(n, e))?;
        types.push(t);
    }
    if types.first() != Some(&EntityType::NEUTRAL_FILL) {
        return Err(malformed(n, "first coded type must be the neutral fill"));
    }
    let coding = TypeCoding::new(types).map_err(|e| malformed(n, e.to_string()))?;

    let mut pairs = Vec::with_capacity(3);
    for _ in 0..3 {
        let (n, f) = lines.keyword("pair")?;
        let [a, b, "bias", bias, "sv", count] = f[..] else {
            return Err(malformed(n, "expected `pair <a> <b> bias <x> sv <n>`"));
        };
        let label = |s: &str| s.parse::<Label>().map_err(|e| malformed(n, e.to_string()));
        let classes = (label(a)?, label(b)?);
        let bias: f64 = num(n, bias)?;
        let count: usize = num(n, count)?;
        let mut support = Vec::with_capacity(count);
        for _ in 0..count {
            let (n, f) = lines.keyword("sv")?;
            let [coef, blocks] = f[..] else {
                return Err(malformed(n, "expected `sv <coef> <blocks>`"));
            };
            let coef: f64 = num(n, coef)?;
            let blocks: Vec<u32> = if blocks == "-" {
                Vec::new()
            } else {
                blocks.split(',').map(|b| num(n, b)).collect::<Result<_, _>>()?
            };
            let projection =
                ProjectedSequence::from_blocks(&coding, blocks).map_err(|e| malformed(n, e.to_string()))?;
            support.push(SupportVector { projection, coef });
        }
        pairs.push(PairwiseModel {
            classes,
            support,
            bias,
            c,
        });
    }
    if let Some((n, l)) = lines.peek() {
        return Err(malformed(n, format!("unexpected trailing line `{l}`")));
    }
    let mut expected_pairs: Vec<_> = pairs.iter().map(|p| p.classes).collect();
    expected_pairs.sort();
    if expected_pairs != super::PAIRS {
        return Err(malformed(1, "model must hold the three class pairs"));
    }
    Ok(ModelFile {
        meta,
        model: OrientationModel::from_parts(coding, pairs, c),
    })
}
