//! Paired with/without summaries laid out as a plot-type by layer table.

use std::collections::BTreeMap;

use maidr::fixtures::{Kind, Layer};
use thiserror::Error;

use crate::samples::{Condition, Sample};
use crate::stats::{mean, round2, sample_std, Summary};

#[derive(Debug, Error, PartialEq)]
pub enum ReportError {
    #[error("no samples")]
    Empty,
    #[error("incomplete rows: {}", .0.join("; "))]
    Incomplete(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub kind: Kind,
    pub with: Summary,
    pub without: Summary,
    /// `with.mean - without.mean`, or a published figure.
    pub delta: f64,
}

impl Row {
    pub fn paired(kind: Kind, with: &[f64], without: &[f64]) -> Row {
        let (with, without) = (Summary::of(with), Summary::of(without));
        Row { kind, with, without, delta: with.mean - without.mean }
    }
}

/// Aggregate row: mean of row means, plus mean of row stds for the timing
/// columns and the sample std of the row deltas for the overhead column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Overall {
    pub with_mean: f64,
    pub with_std: f64,
    pub without_mean: f64,
    pub without_std: f64,
    pub delta_mean: f64,
    pub delta_std: f64,
    /// `delta_mean / without_mean`, as a fraction.
    pub relative: f64,
}

impl Overall {
    pub fn of(rows: &[Row]) -> Overall {
        let col = |f: fn(&Row) -> f64| rows.iter().map(f).collect::<Vec<_>>();
        let deltas = col(|r| r.delta);
        let without_mean = mean(&col(|r| r.without.mean));
        let delta_mean = mean(&deltas);
        Overall {
            with_mean: mean(&col(|r| r.with.mean)),
            with_std: mean(&col(|r| r.with.std)),
            without_mean,
            without_std: mean(&col(|r| r.without.std)),
            delta_mean,
            delta_std: sample_std(&deltas),
            relative: delta_mean / without_mean,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerTable {
    pub layer: Layer,
    pub rows: Vec<Row>,
}

impl LayerTable {
    pub fn overall(&self) -> Overall {
        Overall::of(&self.rows)
    }

    pub fn row(&self, kind: Kind) -> Option<&Row> {
        self.rows.iter().find(|r| r.kind == kind)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub tables: Vec<LayerTable>,
}

fn pm(mean: f64, std: f64) -> String {
    format!("{:.2}±{:.2}", round2(mean), round2(std))
}

impl Report {
    pub fn from_samples(samples: &[Sample]) -> Result<Report, ReportError> {
        if samples.is_empty() {
            return Err(ReportError::Empty);
        }
        let mut groups: BTreeMap<(Layer, Kind, Condition), Vec<f64>> = BTreeMap::new();
        for s in samples {
            groups.entry((s.layer, s.fixture, s.condition)).or_default().push(s.ms);
        }
        let mut problems = Vec::new();
        let mut tables = Vec::new();
        for layer in Layer::ALL {
            let mut rows = Vec::new();
            for kind in Kind::ALL {
                let with = groups.get(&(layer, kind, Condition::With));
                let without = groups.get(&(layer, kind, Condition::Without));
                match (with, without) {
                    (None, None) => {}
                    (Some(w), Some(wo)) if w.len() == wo.len() => rows.push(Row::paired(kind, w, wo)),
                    (Some(w), Some(wo)) => {
                        problems.push(format!("{kind}/{layer}: {} with vs {} without trials", w.len(), wo.len()))
                    }
                    (None, Some(_)) => problems.push(format!("{kind}/{layer}: missing with")),
                    (Some(_), None) => problems.push(format!("{kind}/{layer}: missing without")),
                }
            }
            if !rows.is_empty() {
                tables.push(LayerTable { layer, rows });
            }
        }
        if !problems.is_empty() {
            return Err(ReportError::Incomplete(problems));
        }
        Ok(Report { tables })
    }

    pub fn table(&self, layer: Layer) -> Option<&LayerTable> {
        self.tables.iter().find(|t| t.layer == layer)
    }

    /// Header and body cells shared by the text and CSV forms.
    pub fn cells(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let mut header = vec!["plot_type".to_string()];
        for t in &self.tables {
            for c in ["with", "without", "delta"] {
                header.push(format!("{}_{c}", t.layer));
            }
        }
        let kinds: Vec<Kind> = Kind::ALL.into_iter().filter(|k| self.tables.iter().any(|t| t.row(*k).is_some())).collect();
        let mut body = Vec::new();
        for kind in kinds {
            let mut line = vec![kind.title().to_string()];
            for t in &self.tables {
                match t.row(kind) {
                    Some(r) => {
                        line.push(pm(r.with.mean, r.with.std));
                        line.push(pm(r.without.mean, r.without.std));
                        line.push(format!("{:+.2}", round2(r.delta)));
                    }
                    None => line.extend(["-".to_string(), "-".into(), "-".into()]),
                }
            }
            body.push(line);
        }
        let mut overall = vec!["Overall".to_string()];
        let mut relative = vec!["Relative".to_string()];
        for t in &self.tables {
            let o = t.overall();
            overall.push(pm(o.with_mean, o.with_std));
            overall.push(pm(o.without_mean, o.without_std));
            overall.push(pm(o.delta_mean, o.delta_std));
            relative.extend([String::new(), String::new(), format!("{:.2}%", round2(o.relative * 100.0))]);
        }
        body.push(overall);
        body.push(relative);
        (header, body)
    }

    pub fn to_text(&self) -> String {
        let (header, body) = self.cells();
        let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
        for line in &body {
            for (w, c) in widths.iter_mut().zip(line) {
                *w = (*w).max(c.chars().count());
            }
        }
        let render = |cells: &[String]| {
            let mut out = String::new();
            for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    out.push_str(if (i - 1) % 3 == 0 { " | " } else { "  " });
                }
                out.push_str(c);
                out.extend(std::iter::repeat_n(' ', w - c.chars().count()));
            }
            out.trim_end().to_string() + "\n"
        };
        let mut out = render(&header);
        let rule: usize = render(&header).trim_end().chars().count();
        out.push_str(&"-".repeat(rule));
        out.push('\n');
        for line in &body {
            out.push_str(&render(line));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let (header, body) = self.cells();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).expect("in-memory write");
        for line in &body {
            w.write_record(line).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8 cells")
    }
}
