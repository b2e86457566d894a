//! Plain-text comparison tables: one block per class, one column per model.

use std::fmt::Write as _;

use crate::label::Label;

use super::Confusion;

const METRICS: [&str; 4] = ["Accuracy", "Recall", "Precision", "F1-Score"];
const LABEL_WIDTH: usize = 12;
const COLUMN_WIDTH: usize = 12;

/// Renders Positive, Neutral and Negative blocks with accuracy, recall,
/// precision and F1 for each model, to three decimals.
pub fn render_comparison(title: &str, columns: &[(String, Confusion)]) -> String {
    let mut out = String::new();
    writeln!(out, "{title}").unwrap();
    write!(out, "{:<LABEL_WIDTH$}", "").unwrap();
    for (name, _) in columns {
        write!(out, "{name:>COLUMN_WIDTH$}").unwrap();
    }
    out.push('\n');
    if columns.is_empty() {
        return out;
    }
    for label in Label::ALL {
        let name = match label {
            Label::Positive => "Positive",
            Label::Neutral => "Neutral",
            Label::Negative => "Negative",
        };
        writeln!(out, "{name}").unwrap();
        let metrics: Vec<_> = columns.iter().map(|(_, c)| c.class_metrics(label)).collect();
        for (k, metric) in METRICS.iter().enumerate() {
            write!(out, "  {metric:<w$}", w = LABEL_WIDTH - 2).unwrap();
            for m in &metrics {
                let v = [m.accuracy, m.recall, m.precision, m.f1][k];
                write!(out, "{v:>COLUMN_WIDTH$.3}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

/// Tab-separated long form: `title, model, class, metric, value`.
pub fn comparison_tsv(title: &str, columns: &[(String, Confusion)]) -> String {
    let mut out = String::new();
    for (name, c) in columns {
        for label in Label::ALL {
            let m = c.class_metrics(label);
            for (metric, v) in METRICS.iter().zip([m.accuracy, m.recall, m.precision, m.f1]) {
                writeln!(out, "{title}\t{name}\t{label}\t{metric}\t{v:.3}").unwrap();
            }
        }
    }
    out
}
