//! Statistical plotting over tabular data.
//!
//! These functions aggregate a [`DataTable`] and then draw through the
//! [`Axes`] methods, so each call may create several primitive layers.

use std::collections::BTreeMap;

use crate::artist::{ArtistId, Container, ContainerId};
use crate::axes::{BarOptions, BarPositions, BoxOptions, Columns, HistOptions, LineOptions, MeshOptions, ScatterOptions};
use crate::error::{PlotError, Result};
use crate::figure::Axes;
use crate::hooks::{self, ApiLayer, ArgValue, CallArgs, CallOutcome};
use crate::pyplot;

#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Num(Vec<f64>),
    Text(Vec<String>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Num(v) => v.len(),
            Column::Text(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Named columns of equal length.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DataTable {
    columns: Vec<(String, Column)>,
}

impl DataTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a column. Panics if its length differs from existing columns.
    pub fn with(mut self, name: impl Into<String>, column: Column) -> Self {
        if let Some((_, first)) = self.columns.first() {
            assert_eq!(first.len(), column.len(), "column lengths differ");
        }
        self.columns.push((name.into(), column));
        self
    }

    pub fn num(self, name: impl Into<String>, values: Vec<f64>) -> Self {
        self.with(name, Column::Num(values))
    }

    pub fn text<S: Into<String>>(self, name: impl Into<String>, values: impl IntoIterator<Item = S>) -> Self {
        self.with(name, Column::Text(values.into_iter().map(Into::into).collect()))
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, c)| c.len())
    }

    pub fn column(&self, name: &str) -> Result<&Column> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
            .ok_or_else(|| PlotError::MissingColumn(name.to_string()))
    }

    pub fn numbers(&self, name: &str) -> Result<&[f64]> {
        match self.column(name)? {
            Column::Num(v) => Ok(v),
            Column::Text(_) => Err(PlotError::ColumnType(name.to_string(), "numeric")),
        }
    }

    pub fn labels(&self, name: &str) -> Result<&[String]> {
        match self.column(name)? {
            Column::Text(v) => Ok(v),
            Column::Num(_) => Err(PlotError::ColumnType(name.to_string(), "text")),
        }
    }
}

/// How bars for different hue levels share a category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HueLayout {
    #[default]
    Dodge,
    Stack,
}

#[derive(Debug, Clone, Default)]
pub struct BarplotOptions {
    pub hue: Option<String>,
    pub layout: HueLayout,
    pub ax: Option<Axes>,
}

#[derive(Debug, Clone, Default)]
pub struct LineplotOptions {
    pub hue: Option<String>,
    pub ax: Option<Axes>,
}

#[derive(Debug, Clone)]
pub struct HistplotOptions {
    pub bins: usize,
    pub ax: Option<Axes>,
}

impl Default for HistplotOptions {
    fn default() -> Self {
        Self { bins: 10, ax: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orient {
    #[default]
    Vertical,
    Horizontal,
}

#[derive(Debug, Clone, Default)]
pub struct BoxplotOptions {
    pub orient: Orient,
    pub ax: Option<Axes>,
}

#[derive(Debug, Clone)]
pub struct HeatmapOptions {
    pub xticklabels: Option<Vec<String>>,
    pub yticklabels: Option<Vec<String>>,
    pub cbar: bool,
    pub ax: Option<Axes>,
}

impl Default for HeatmapOptions {
    fn default() -> Self {
        Self {
            xticklabels: None,
            yticklabels: None,
            cbar: true,
            ax: None,
        }
    }
}

#[derive(Default)]
struct Made {
    artists: Vec<ArtistId>,
    containers: Vec<ContainerId>,
}

impl Made {
    fn container(&mut self, ax: &Axes, id: ContainerId) {
        self.containers.push(id);
        ax.read(|a| {
            if let Some(Container::Bar(b)) = a.container(id) {
                self.artists.extend(b.patches.iter().copied());
            }
        });
    }
}

fn run(
    target: &'static str,
    ax: Option<&Axes>,
    args: impl FnOnce() -> CallArgs,
    body: impl FnOnce(&Axes, &mut Made) -> Result<()>,
) -> Result<Axes> {
    let ax = ax.cloned().unwrap_or_else(pyplot::gca);
    hooks::dispatch(
        target,
        ApiLayer::Wrapper,
        args,
        || {
            let mut made = Made::default();
            body(&ax, &mut made)?;
            Ok(made)
        },
        |m| {
            CallOutcome::new(ax.clone())
                .artists(m.artists.iter().copied())
                .containers(m.containers.iter().copied())
        },
    )
    .map(|_| ax)
}

/// Mean of `values` grouped by `keys`, in sorted key order.
fn group_mean<K: Ord + Clone>(keys: &[K], values: &[f64]) -> BTreeMap<K, f64> {
    let mut acc: BTreeMap<K, (f64, usize)> = BTreeMap::new();
    for (k, &v) in keys.iter().zip(values) {
        if v.is_finite() {
            let e = acc.entry(k.clone()).or_insert((0.0, 0));
            e.0 += v;
            e.1 += 1;
        }
    }
    acc.into_iter().map(|(k, (s, n))| (k, s / n as f64)).collect()
}

fn sorted_levels(values: &[String]) -> Vec<String> {
    let mut levels = values.to_vec();
    levels.sort();
    levels.dedup();
    levels
}

/// Mean of `y` per category of `x`, one bar per category.
pub fn barplot(data: &DataTable, x: &str, y: &str, opts: &BarplotOptions) -> Result<Axes> {
    run(
        "statplot.barplot",
        opts.ax.as_ref(),
        || {
            CallArgs::new()
                .with("n", ArgValue::Len(data.rows()))
                .with_opt("hue", opts.hue.clone().map(ArgValue::Text))
                .with(
                    "dodge",
                    ArgValue::Bool(opts.hue.is_some() && opts.layout == HueLayout::Dodge),
                )
        },
        |ax, made| {
            let cats = data.labels(x)?;
            let values = data.numbers(y)?;
            ax.set_xlabel(x);
            ax.set_ylabel(y);
            let Some(hue) = &opts.hue else {
                let means = group_mean(cats, values);
                let names: Vec<String> = means.keys().cloned().collect();
                let heights: Vec<f64> = means.values().copied().collect();
                let id = ax.bar(BarPositions::Categories(names), &heights, &BarOptions::default())?;
                made.container(ax, id);
                return Ok(());
            };
            let hues = data.labels(hue)?;
            let levels = sorted_levels(cats);
            let hue_levels = sorted_levels(hues);
            let pairs: Vec<(String, String)> =
                cats.iter().cloned().zip(hues.iter().cloned()).collect();
            let means = group_mean(&pairs, values);
            let n = hue_levels.len() as f64;
            let mut bottom = vec![0.0; levels.len()];
            for (j, h) in hue_levels.iter().enumerate() {
                let heights: Vec<f64> = levels
                    .iter()
                    .map(|c| means.get(&(c.clone(), h.clone())).copied().unwrap_or(0.0))
                    .collect();
                let id = match opts.layout {
                    HueLayout::Dodge => {
                        let width = 0.8 / n;
                        let positions: Vec<f64> = (0..levels.len())
                            .map(|i| i as f64 - 0.4 + width * (j as f64 + 0.5))
                            .collect();
                        ax.bar(
                            positions,
                            &heights,
                            &BarOptions {
                                width: Some(width),
                                label: Some(h.clone()),
                                dodge: true,
                                ..Default::default()
                            },
                        )?
                    }
                    HueLayout::Stack => {
                        let id = ax.bar(
                            BarPositions::Categories(levels.clone()),
                            &heights,
                            &BarOptions {
                                label: Some(h.clone()),
                                bottom: (j > 0).then(|| bottom.clone()),
                                ..Default::default()
                            },
                        )?;
                        bottom.iter_mut().zip(&heights).for_each(|(b, h)| *b += h);
                        id
                    }
                };
                made.container(ax, id);
            }
            if opts.layout == HueLayout::Dodge {
                let locs: Vec<f64> = (0..levels.len()).map(|i| i as f64).collect();
                let labels: Vec<&str> = levels.iter().map(String::as_str).collect();
                ax.set_xticks(&locs, Some(&labels))?;
            }
            ax.legend();
            Ok(())
        },
    )
}

/// Number of rows per category of `x`.
pub fn countplot(data: &DataTable, x: &str, ax: Option<&Axes>) -> Result<Axes> {
    run(
        "statplot.countplot",
        ax,
        || CallArgs::new().with("n", ArgValue::Len(data.rows())),
        |ax, made| {
            let cats = data.labels(x)?;
            let mut counts: BTreeMap<&str, f64> = BTreeMap::new();
            for c in cats {
                *counts.entry(c.as_str()).or_default() += 1.0;
            }
            let names: Vec<String> = counts.keys().map(|s| s.to_string()).collect();
            let heights: Vec<f64> = counts.values().copied().collect();
            ax.set_xlabel(x);
            ax.set_ylabel("count");
            let id = ax.bar(BarPositions::Categories(names), &heights, &BarOptions::default())?;
            made.container(ax, id);
            Ok(())
        },
    )
}

pub fn histplot(data: &DataTable, x: &str, opts: &HistplotOptions) -> Result<Axes> {
    run(
        "statplot.histplot",
        opts.ax.as_ref(),
        || {
            CallArgs::new()
                .with("n", ArgValue::Len(data.rows()))
                .with("bins", ArgValue::Int(opts.bins as i64))
        },
        |ax, made| {
            let values = data.numbers(x)?;
            ax.set_xlabel(x);
            ax.set_ylabel("Count");
            let r = ax.hist(
                values,
                &HistOptions {
                    bins: opts.bins,
                    ..Default::default()
                },
            )?;
            made.container(ax, r.container);
            Ok(())
        },
    )
}

/// Mean of `y` at each distinct `x`; one line per hue level.
pub fn lineplot(data: &DataTable, x: &str, y: &str, opts: &LineplotOptions) -> Result<Axes> {
    run(
        "statplot.lineplot",
        opts.ax.as_ref(),
        || {
            CallArgs::new()
                .with("n", ArgValue::Len(data.rows()))
                .with_opt("hue", opts.hue.clone().map(ArgValue::Text))
        },
        |ax, made| {
            let xs = data.numbers(x)?;
            let ys = data.numbers(y)?;
            ax.set_xlabel(x);
            ax.set_ylabel(y);
            let mut grid: Vec<f64> = xs.iter().copied().filter(|v| v.is_finite()).collect();
            grid.sort_by(f64::total_cmp);
            grid.dedup();
            let keyed = |v: f64| grid.partition_point(|g| *g < v);
            let (columns, labels) = match &opts.hue {
                None => {
                    let keys: Vec<usize> = xs.iter().map(|&v| keyed(v)).collect();
                    let means = group_mean(&keys, ys);
                    let col = (0..grid.len()).map(|i| means.get(&i).copied().unwrap_or(f64::NAN)).collect();
                    (vec![col], Vec::new())
                }
                Some(hue) => {
                    let hues = data.labels(hue)?;
                    let levels = sorted_levels(hues);
                    let keys: Vec<(String, usize)> =
                        hues.iter().cloned().zip(xs.iter().map(|&v| keyed(v))).collect();
                    let means = group_mean(&keys, ys);
                    let cols = levels
                        .iter()
                        .map(|h| {
                            (0..grid.len())
                                .map(|i| means.get(&(h.clone(), i)).copied().unwrap_or(f64::NAN))
                                .collect()
                        })
                        .collect();
                    (cols, levels)
                }
            };
            let has_labels = !labels.is_empty();
            let ids = ax.plot(
                &grid,
                Columns(columns),
                &LineOptions {
                    labels,
                    ..Default::default()
                },
            )?;
            made.artists.extend(ids);
            if has_labels {
                ax.legend();
            }
            Ok(())
        },
    )
}

pub fn scatterplot(data: &DataTable, x: &str, y: &str, ax: Option<&Axes>) -> Result<Axes> {
    run(
        "statplot.scatterplot",
        ax,
        || CallArgs::new().with("n", ArgValue::Len(data.rows())),
        |ax, made| {
            let xs = data.numbers(x)?;
            let ys = data.numbers(y)?;
            ax.set_xlabel(x);
            ax.set_ylabel(y);
            let id = ax.scatter(xs, ys, &ScatterOptions::default())?;
            made.artists.push(id);
            Ok(())
        },
    )
}

/// One box per category of `x`, summarizing `y`.
pub fn boxplot(data: &DataTable, x: &str, y: &str, opts: &BoxplotOptions) -> Result<Axes> {
    let vert = opts.orient == Orient::Vertical;
    run(
        "statplot.boxplot",
        opts.ax.as_ref(),
        || {
            CallArgs::new()
                .with("n", ArgValue::Len(data.rows()))
                .with("vert", ArgValue::Bool(vert))
        },
        |ax, made| {
            let cats = data.labels(x)?;
            let values = data.numbers(y)?;
            let mut groups: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
            for (c, &v) in cats.iter().zip(values) {
                groups.entry(c.as_str()).or_default().push(v);
            }
            let labels: Vec<String> = groups.keys().map(|s| s.to_string()).collect();
            let groups: Vec<Vec<f64>> = groups.into_values().collect();
            if vert {
                ax.set_xlabel(x);
                ax.set_ylabel(y);
            } else {
                ax.set_xlabel(y);
                ax.set_ylabel(x);
            }
            let id = ax.boxplot(
                &groups,
                &BoxOptions {
                    vert,
                    positions: Some((0..groups.len()).map(|i| i as f64).collect()),
                    labels: Some(labels),
                    widths: 0.8,
                    ..Default::default()
                },
            )?;
            made.containers.push(id);
            ax.read(|a| {
                if let Some(Container::Box(b)) = a.container(id) {
                    for bx in &b.boxes {
                        made.artists.push(bx.body);
                    }
                }
            });
            Ok(())
        },
    )
}

/// Color-encoded matrix; row 0 is drawn at the top.
pub fn heatmap(matrix: &[Vec<f64>], opts: &HeatmapOptions) -> Result<Axes> {
    run(
        "statplot.heatmap",
        opts.ax.as_ref(),
        || {
            CallArgs::new()
                .with("rows", ArgValue::Len(matrix.len()))
                .with("cols", ArgValue::Len(matrix.first().map_or(0, Vec::len)))
        },
        |ax, made| {
            let nrows = matrix.len();
            let ncols = matrix.first().map_or(0, Vec::len);
            let xlabels: Vec<String> = opts
                .xticklabels
                .clone()
                .unwrap_or_else(|| (0..ncols).map(|i| i.to_string()).collect());
            let ylabels: Vec<String> = opts
                .yticklabels
                .clone()
                .unwrap_or_else(|| (0..nrows).map(|i| i.to_string()).collect());
            let id = ax.pcolormesh(matrix, &MeshOptions::default())?;
            made.artists.push(id);
            let xl: Vec<&str> = xlabels.iter().map(String::as_str).collect();
            let yl: Vec<&str> = ylabels.iter().map(String::as_str).collect();
            let xlocs: Vec<f64> = (0..ncols).map(|i| i as f64 + 0.5).collect();
            let ylocs: Vec<f64> = (0..nrows).map(|i| i as f64 + 0.5).collect();
            ax.set_xticks(&xlocs, Some(&xl))?;
            ax.set_yticks(&ylocs, Some(&yl))?;
            ax.invert_yaxis();
            if opts.cbar {
                ax.figure().colorbar(ax, id)?;
            }
            Ok(())
        },
    )
}
