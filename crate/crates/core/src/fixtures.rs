//! Seeded example figures, one per supported chart kind and API layer.
//!
//! Used by the tests, the `maidr render` command and the benchmark.

use std::fmt;
use std::str::FromStr;

use plotkit::statplot::{
    self, BarplotOptions, BoxplotOptions, HeatmapOptions, HistplotOptions, HueLayout, LineplotOptions, Orient,
};
use plotkit::{pyplot, BarOptions, BoxOptions, DataTable, Figure, HistOptions, LineOptions, MeshOptions, ScatterOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::schema::PlotType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Bar,
    HorizontalBox,
    VerticalBox,
    Line,
    Dodged,
    Multilayered,
    Multipanel,
    Scatter,
    Histogram,
    Stacked,
    Heatmap,
    Multiline,
}

impl Kind {
    pub const ALL: [Kind; 12] = [
        Kind::Bar,
        Kind::HorizontalBox,
        Kind::VerticalBox,
        Kind::Line,
        Kind::Dodged,
        Kind::Multilayered,
        Kind::Multipanel,
        Kind::Scatter,
        Kind::Histogram,
        Kind::Stacked,
        Kind::Heatmap,
        Kind::Multiline,
    ];

    /// Row label used in reports.
    pub fn title(self) -> &'static str {
        match self {
            Kind::Bar => "Bar",
            Kind::HorizontalBox => "Horizontal Box",
            Kind::VerticalBox => "Vertical Box",
            Kind::Line => "Line",
            Kind::Dodged => "Dodged",
            Kind::Multilayered => "Multilayered",
            Kind::Multipanel => "Multipanel",
            Kind::Scatter => "Scatter",
            Kind::Histogram => "Histogram",
            Kind::Stacked => "Stacked",
            Kind::Heatmap => "Heatmap",
            Kind::Multiline => "Multiline",
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            Kind::Bar => "bar",
            Kind::HorizontalBox => "horizontal-box",
            Kind::VerticalBox => "vertical-box",
            Kind::Line => "line",
            Kind::Dodged => "dodged",
            Kind::Multilayered => "multilayered",
            Kind::Multipanel => "multipanel",
            Kind::Scatter => "scatter",
            Kind::Histogram => "histogram",
            Kind::Stacked => "stacked",
            Kind::Heatmap => "heatmap",
            Kind::Multiline => "multiline",
        }
    }

    /// `(row, col, type)` of each layer the figure should produce, in order.
    pub fn expected_layers(self) -> Vec<(usize, usize, PlotType)> {
        let one = |t| vec![(0, 0, t)];
        match self {
            Kind::Bar => one(PlotType::Bar),
            Kind::HorizontalBox => one(PlotType::BoxHorizontal),
            Kind::VerticalBox => one(PlotType::BoxVertical),
            Kind::Line => one(PlotType::Line),
            Kind::Dodged => one(PlotType::DodgedBar),
            Kind::Multilayered => vec![(0, 0, PlotType::Bar), (0, 0, PlotType::Line)],
            Kind::Multipanel => vec![(0, 0, PlotType::Line), (0, 1, PlotType::Bar)],
            Kind::Scatter => one(PlotType::Scatter),
            Kind::Histogram => one(PlotType::Histogram),
            Kind::Stacked => one(PlotType::StackedBar),
            Kind::Heatmap => one(PlotType::Heatmap),
            Kind::Multiline => one(PlotType::MultiLine),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace([' ', '_'], "-");
        Kind::ALL
            .into_iter()
            .find(|k| k.slug() == norm)
            .ok_or_else(|| format!("unknown fixture `{s}`"))
    }
}

/// Which plotting interface builds the figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    /// Imperative calls on the current axes.
    Direct,
    /// Table-driven statistical functions that plot through the direct layer.
    Wrapper,
}

impl Layer {
    pub const ALL: [Layer; 2] = [Layer::Direct, Layer::Wrapper];

    pub fn as_str(self) -> &'static str {
        match self {
            Layer::Direct => "direct",
            Layer::Wrapper => "wrapper",
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Layer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "direct" => Ok(Layer::Direct),
            "wrapper" => Ok(Layer::Wrapper),
            _ => Err(format!("unknown layer `{s}` (expected direct or wrapper)")),
        }
    }
}

/// Data sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scale {
    pub points: usize,
    pub bars: usize,
    pub groups: usize,
    pub hist_values: usize,
    pub hist_bins: usize,
    pub boxes: usize,
    pub box_values: usize,
    pub heat_rows: usize,
    pub heat_cols: usize,
    pub series: usize,
    pub series_points: usize,
}

impl Default for Scale {
    fn default() -> Self {
        Scale {
            points: 10_000,
            bars: 20,
            groups: 3,
            hist_values: 10_000,
            hist_bins: 30,
            boxes: 5,
            box_values: 200,
            heat_rows: 50,
            heat_cols: 50,
            series: 3,
            series_points: 2_000,
        }
    }
}

impl Scale {
    /// Small sizes for checked-in documents and tests.
    pub fn corpus() -> Self {
        Scale {
            points: 40,
            bars: 6,
            groups: 3,
            hist_values: 200,
            hist_bins: 12,
            boxes: 4,
            box_values: 40,
            heat_rows: 5,
            heat_cols: 4,
            series: 3,
            series_points: 25,
        }
    }
}

pub const DEFAULT_SEED: u64 = 20_240_517;

const WORDS: [&str; 26] = [
    "oak", "birch", "cedar", "fir", "ash", "elm", "larch", "maple", "pine", "yew", "alder", "beech", "hazel",
    "juniper", "willow", "spruce", "poplar", "rowan", "linden", "aspen", "holly", "cypress", "hemlock", "sumac",
    "tupelo", "quince",
];

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match prefix {
            "" if i < WORDS.len() => WORDS[i].to_string(),
            "" => format!("{}{}", WORDS[i % WORDS.len()], i / WORDS.len()),
            p => format!("{p}{i}"),
        })
        .collect()
}

fn round2(v: f64) -> f64 {
    (v * 100.0).round() / 100.0
}

/// Pre-generated values for every fixture.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureData {
    pub scale: Scale,
    pub categories: Vec<String>,
    pub heights: Vec<f64>,
    pub groups: Vec<String>,
    /// `grouped[g][c]`: value of group `g` at category `c`.
    pub grouped: Vec<Vec<f64>>,
    pub line_x: Vec<f64>,
    pub line_y: Vec<f64>,
    pub scatter_x: Vec<f64>,
    pub scatter_y: Vec<f64>,
    pub hist: Vec<f64>,
    pub box_labels: Vec<String>,
    pub boxes: Vec<Vec<f64>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
    pub series_labels: Vec<String>,
    pub series_x: Vec<f64>,
    pub series: Vec<Vec<f64>>,
}

impl FixtureData {
    pub fn generate(scale: Scale, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let unit = Normal::new(0.0, 1.0).expect("valid");
        let normal = |rng: &mut ChaCha8Rng, mean: f64, sd: f64| round2(mean + sd * unit.sample(rng));

        let categories = labels("", scale.bars);
        let heights = (0..scale.bars).map(|_| round2(rng.random_range(1.0..20.0))).collect();
        let groups = labels("group ", scale.groups);
        let grouped = (0..scale.groups)
            .map(|_| (0..scale.bars).map(|_| round2(rng.random_range(1.0..10.0))).collect())
            .collect();

        let line_x: Vec<f64> = (0..scale.points).map(|i| i as f64).collect();
        let mut level = 50.0;
        let line_y = line_x
            .iter()
            .map(|_| {
                level += normal(&mut rng, 0.0, 1.0);
                round2(level)
            })
            .collect();

        let scatter_x: Vec<f64> = (0..scale.points).map(|_| normal(&mut rng, 0.0, 3.0)).collect();
        let scatter_y = scatter_x.iter().map(|&x| round2(2.0 * x + normal(&mut rng, 1.0, 2.0))).collect();

        let hist = (0..scale.hist_values).map(|_| normal(&mut rng, 10.0, 4.0)).collect();

        let box_labels = labels("", scale.boxes);
        let boxes = (0..scale.boxes)
            .map(|b| {
                let mean = 10.0 + 3.0 * b as f64;
                let mut v: Vec<f64> = (0..scale.box_values).map(|_| normal(&mut rng, mean, 2.0)).collect();
                // a couple of far points so fliers are drawn
                if let Some(first) = v.first_mut() {
                    *first = round2(mean + 12.0);
                }
                if v.len() > 1 {
                    v[1] = round2(mean - 11.0);
                }
                v
            })
            .collect();

        let row_labels = labels("row ", scale.heat_rows);
        let col_labels = labels("col ", scale.heat_cols);
        let matrix = (0..scale.heat_rows)
            .map(|r| {
                (0..scale.heat_cols)
                    .map(|c| round2((r as f64 * 0.3).sin() + (c as f64 * 0.2).cos() + rng.random_range(0.0..0.5)))
                    .collect()
            })
            .collect();

        let series_labels = labels("series ", scale.series);
        let series_x: Vec<f64> = (0..scale.series_points).map(|i| i as f64).collect();
        let series = (0..scale.series)
            .map(|s| {
                let mut level = 10.0 * s as f64;
                series_x
                    .iter()
                    .map(|_| {
                        level += normal(&mut rng, 0.1, 1.0);
                        round2(level)
                    })
                    .collect()
            })
            .collect();

        FixtureData {
            scale,
            categories,
            heights,
            groups,
            grouped,
            line_x,
            line_y,
            scatter_x,
            scatter_y,
            hist,
            box_labels,
            boxes,
            row_labels,
            col_labels,
            matrix,
            series_labels,
            series_x,
            series,
        }
    }

    pub fn corpus() -> Self {
        Self::generate(Scale::corpus(), DEFAULT_SEED)
    }

    fn category_refs(&self) -> Vec<&str> {
        self.categories.iter().map(String::as_str).collect()
    }

    fn bar_table(&self) -> DataTable {
        DataTable::new()
            .text("category", self.categories.iter().cloned())
            .num("value", self.heights.clone())
    }

    fn grouped_table(&self) -> DataTable {
        let mut cat = Vec::new();
        let mut group = Vec::new();
        let mut value = Vec::new();
        for (g, row) in self.grouped.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                cat.push(self.categories[c].clone());
                group.push(self.groups[g].clone());
                value.push(v);
            }
        }
        DataTable::new()
            .text("category", cat)
            .text("group", group)
            .num("value", value)
    }

    fn line_table(&self) -> DataTable {
        DataTable::new().num("x", self.line_x.clone()).num("y", self.line_y.clone())
    }

    fn box_table(&self) -> DataTable {
        let mut label = Vec::new();
        let mut value = Vec::new();
        for (l, vals) in self.box_labels.iter().zip(&self.boxes) {
            for &v in vals {
                label.push(l.clone());
                value.push(v);
            }
        }
        DataTable::new().text("group", label).num("value", value)
    }

    /// A smoothed trend over the bar heights, drawn on top of the bars.
    pub fn overlay(&self) -> Vec<f64> {
        let h = &self.heights;
        (0..h.len())
            .map(|i| {
                let lo = i.saturating_sub(1);
                let hi = (i + 2).min(h.len());
                round2(h[lo..hi].iter().sum::<f64>() / (hi - lo) as f64)
            })
            .collect()
    }
}

fn label(title: &str, x: &str, y: &str) {
    pyplot::title(title);
    pyplot::xlabel(x);
    pyplot::ylabel(y);
}

fn direct(kind: Kind, d: &FixtureData) -> plotkit::Result<()> {
    match kind {
        Kind::Bar => {
            pyplot::bar(d.category_refs().as_slice(), &d.heights, &BarOptions::default())?;
            label("Trees planted", "species", "count");
        }
        Kind::HorizontalBox | Kind::VerticalBox => {
            let vert = kind == Kind::VerticalBox;
            pyplot::boxplot(
                &d.boxes,
                &BoxOptions {
                    vert,
                    labels: Some(d.box_labels.clone()),
                    ..Default::default()
                },
            )?;
            if vert {
                label("Height by species", "species", "height");
            } else {
                label("Height by species", "height", "species");
            }
        }
        Kind::Line => {
            pyplot::plot(&d.line_x, d.line_y.clone(), &LineOptions::default())?;
            label("Random walk", "step", "level");
        }
        Kind::Dodged => {
            let ax = pyplot::gca();
            let n = d.groups.len() as f64;
            let w = 0.8 / n;
            for (j, (g, row)) in d.groups.iter().zip(&d.grouped).enumerate() {
                let x: Vec<f64> = (0..row.len()).map(|i| i as f64 - 0.4 + w * (j as f64 + 0.5)).collect();
                ax.bar(
                    x,
                    row,
                    &BarOptions {
                        width: Some(w),
                        label: Some(g.clone()),
                        dodge: true,
                        ..Default::default()
                    },
                )?;
            }
            let locs: Vec<f64> = (0..d.categories.len()).map(|i| i as f64).collect();
            ax.set_xticks(&locs, Some(&d.category_refs()))?;
            ax.legend();
            label("Planted by plot", "species", "count");
        }
        Kind::Multilayered => {
            pyplot::bar(d.category_refs().as_slice(), &d.heights, &BarOptions::default())?;
            let x: Vec<f64> = (0..d.heights.len()).map(|i| i as f64).collect();
            pyplot::plot(&x, d.overlay(), &LineOptions::default())?;
            label("Planted with trend", "species", "count");
        }
        Kind::Multipanel => {
            let (_, axes) = pyplot::subplots(1, 2)?;
            axes[0].plot(&d.line_x, d.line_y.clone(), &LineOptions::default())?;
            axes[0].set_title("Random walk");
            axes[1].bar(d.category_refs().as_slice(), &d.heights, &BarOptions::default())?;
            axes[1].set_title("Trees planted");
        }
        Kind::Scatter => {
            pyplot::scatter(&d.scatter_x, &d.scatter_y, &ScatterOptions::default())?;
            label("Scatter", "x", "y");
        }
        Kind::Histogram => {
            pyplot::hist(
                &d.hist,
                &HistOptions {
                    bins: d.scale.hist_bins,
                    ..Default::default()
                },
            )?;
            label("Distribution", "value", "count");
        }
        Kind::Stacked => {
            let mut bottom: Option<Vec<f64>> = None;
            for (g, row) in d.groups.iter().zip(&d.grouped) {
                pyplot::bar(
                    d.category_refs().as_slice(),
                    row,
                    &BarOptions {
                        bottom: bottom.clone(),
                        label: Some(g.clone()),
                        ..Default::default()
                    },
                )?;
                let next = match bottom {
                    Some(b) => b.iter().zip(row).map(|(a, v)| a + v).collect(),
                    None => row.clone(),
                };
                bottom = Some(next);
            }
            pyplot::legend();
            label("Planted by plot", "species", "count");
        }
        Kind::Heatmap => {
            let ax = pyplot::gca();
            let mesh = ax.pcolormesh(&d.matrix, &MeshOptions::default())?;
            let xl: Vec<&str> = d.col_labels.iter().map(String::as_str).collect();
            let yl: Vec<&str> = d.row_labels.iter().map(String::as_str).collect();
            let centers = |n: usize| (0..n).map(|i| i as f64 + 0.5).collect::<Vec<_>>();
            ax.set_xticks(&centers(xl.len()), Some(&xl))?;
            ax.set_yticks(&centers(yl.len()), Some(&yl))?;
            ax.figure().colorbar(&ax, mesh)?;
            label("Field", "column", "row");
        }
        Kind::Multiline => {
            pyplot::plot(
                &d.series_x,
                plotkit::axes::Columns(d.series.clone()),
                &LineOptions {
                    labels: d.series_labels.clone(),
                    ..Default::default()
                },
            )?;
            pyplot::legend();
            label("Three walks", "step", "level");
        }
    }
    Ok(())
}

fn wrapper(kind: Kind, d: &FixtureData) -> plotkit::Result<()> {
    match kind {
        Kind::Bar => {
            statplot::barplot(&d.bar_table(), "category", "value", &BarplotOptions::default())?;
        }
        Kind::HorizontalBox | Kind::VerticalBox => {
            let orient = if kind == Kind::VerticalBox {
                Orient::Vertical
            } else {
                Orient::Horizontal
            };
            statplot::boxplot(
                &d.box_table(),
                "group",
                "value",
                &BoxplotOptions {
                    orient,
                    ..Default::default()
                },
            )?;
        }
        Kind::Line => {
            statplot::lineplot(&d.line_table(), "x", "y", &LineplotOptions::default())?;
        }
        Kind::Dodged | Kind::Stacked => {
            let layout = if kind == Kind::Dodged {
                HueLayout::Dodge
            } else {
                HueLayout::Stack
            };
            statplot::barplot(
                &d.grouped_table(),
                "category",
                "value",
                &BarplotOptions {
                    hue: Some("group".into()),
                    layout,
                    ..Default::default()
                },
            )?;
        }
        Kind::Multilayered => {
            let ax = statplot::barplot(&d.bar_table(), "category", "value", &BarplotOptions::default())?;
            // the bar axis sorts categories; the trend follows that order
            let mut order: Vec<usize> = (0..d.categories.len()).collect();
            order.sort_by(|&a, &b| d.categories[a].cmp(&d.categories[b]));
            let sorted = FixtureData {
                heights: order.iter().map(|&i| d.heights[i]).collect(),
                ..d.clone()
            };
            let table = DataTable::new()
                .num("x", (0..order.len()).map(|i| i as f64).collect())
                .num("trend", sorted.overlay());
            statplot::lineplot(&table, "x", "trend", &LineplotOptions { hue: None, ax: Some(ax) })?;
        }
        Kind::Multipanel => {
            let (_, axes) = pyplot::subplots(1, 2)?;
            statplot::lineplot(
                &d.line_table(),
                "x",
                "y",
                &LineplotOptions {
                    hue: None,
                    ax: Some(axes[0].clone()),
                },
            )?;
            statplot::barplot(
                &d.bar_table(),
                "category",
                "value",
                &BarplotOptions {
                    ax: Some(axes[1].clone()),
                    ..Default::default()
                },
            )?;
        }
        Kind::Scatter => {
            let t = DataTable::new()
                .num("x", d.scatter_x.clone())
                .num("y", d.scatter_y.clone());
            statplot::scatterplot(&t, "x", "y", None)?;
        }
        Kind::Histogram => {
            let t = DataTable::new().num("value", d.hist.clone());
            statplot::histplot(
                &t,
                "value",
                &HistplotOptions {
                    bins: d.scale.hist_bins,
                    ax: None,
                },
            )?;
        }
        Kind::Heatmap => {
            statplot::heatmap(
                &d.matrix,
                &HeatmapOptions {
                    xticklabels: Some(d.col_labels.clone()),
                    yticklabels: Some(d.row_labels.clone()),
                    ..Default::default()
                },
            )?;
        }
        Kind::Multiline => {
            let mut x = Vec::new();
            let mut y = Vec::new();
            let mut s = Vec::new();
            for (label, values) in d.series_labels.iter().zip(&d.series) {
                for (&xi, &yi) in d.series_x.iter().zip(values) {
                    x.push(xi);
                    y.push(yi);
                    s.push(label.clone());
                }
            }
            let t = DataTable::new().num("step", x).num("level", y).text("series", s);
            statplot::lineplot(
                &t,
                "step",
                "level",
                &LineplotOptions {
                    hue: Some("series".into()),
                    ax: None,
                },
            )?;
        }
    }
    Ok(())
}

/// Builds the fixture on a new current figure and returns it.
pub fn build(kind: Kind, layer: Layer, data: &FixtureData) -> plotkit::Result<Figure> {
    let fig = if kind == Kind::Multipanel {
        None
    } else {
        Some(pyplot::figure())
    };
    match layer {
        Layer::Direct => direct(kind, data)?,
        Layer::Wrapper => wrapper(kind, data)?,
    }
    Ok(fig.unwrap_or_else(pyplot::gcf))
}
