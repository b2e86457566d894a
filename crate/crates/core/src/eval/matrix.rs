//! Sentence × annotator label matrix.

use crate::label::Label;

use super::EvalError;

/// Labels given by each annotator to each sentence; `None` where an
/// annotator did not label a sentence.
///
/// File form: a tab-separated header whose first cell names the id column
/// followed by the annotator ids, then one `sentence_id<TAB>label...` row
/// per sentence with `-` for a missing label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotationMatrix {
    pub annotators: Vec<String>,
    pub rows: Vec<(String, Vec<Option<Label>>)>,
}

impl AnnotationMatrix {
    pub fn new(annotators: Vec<String>) -> Self {
        AnnotationMatrix {
            annotators,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, id: impl Into<String>, labels: Vec<Option<Label>>) {
        assert_eq!(labels.len(), self.annotators.len(), "row width");
        self.rows.push((id.into(), labels));
    }

    pub fn parse(text: &str) -> Result<Self, EvalError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let (_, header) = lines.next().ok_or(EvalError::Matrix {
            line: 1,
            reason: "empty file".into(),
        })?;
        let annotators: Vec<String> = header.split('\t').skip(1).map(|s| s.trim().to_string()).collect();
        let mut m = AnnotationMatrix::new(annotators);
        for (i, line) in lines {
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != m.annotators.len() + 1 {
                return Err(EvalError::Matrix {
                    line: i + 1,
                    reason: format!("expected {} fields, found {}", m.annotators.len() + 1, fields.len()),
                });
            }
            let labels = fields[1..]
                .iter()
                .map(|f| match f.trim() {
                    "-" | "" => Ok(None),
                    s => s
                        .parse()
                        .map(Some)
                        .map_err(|e: crate::label::ParseLabelError| EvalError::Matrix {
                            line: i + 1,
                            reason: e.to_string(),
                        }),
                })
                .collect::<Result<_, _>>()?;
            m.rows.push((fields[0].trim().to_string(), labels));
        }
        Ok(m)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("sentence_id");
        for a in &self.annotators {
            out.push('\t');
            out.push_str(a);
        }
        out.push('\n');
        for (id, labels) in &self.rows {
            out.push_str(id);
            for l in labels {
                out.push('\t');
                out.push_str(l.map_or("-", |l| l.as_str()));
            }
            out.push('\n');
        }
        out
    }

    /// Rows where every annotator gave a label.
    pub fn complete_rows(&self) -> AnnotationMatrix {
        AnnotationMatrix {
            annotators: self.annotators.clone(),
            rows: self
                .rows
                .iter()
                .filter(|(_, l)| l.iter().all(Option::is_some))
                .cloned()
                .collect(),
        }
    }

    /// The matrix restricted to the given annotator columns.
    pub fn select_annotators(&self, columns: &[usize]) -> AnnotationMatrix {
        AnnotationMatrix {
            annotators: columns.iter().map(|&c| self.annotators[c].clone()).collect(),
            rows: self
                .rows
                .iter()
                .map(|(id, l)| (id.clone(), columns.iter().map(|&c| l[c]).collect()))
                .collect(),
        }
    }

    /// Numeric scores of a complete matrix, negative → −1, neutral → 0,
    /// positive → +1.
    pub fn scores(&self) -> Result<Vec<Vec<f64>>, EvalError> {
        self.rows
            .iter()
            .map(|(id, labels)| {
                labels
                    .iter()
                    .map(|l| {
                        l.map(Label::score)
                            .ok_or_else(|| EvalError::MissingCell { row: id.clone() })
                    })
                    .collect()
            })
            .collect()
    }
}
