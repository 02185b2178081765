//! Plot-creation methods on [`Axes`].
//!
//! Each public method is a patchable entry point named `Axes.<method>`.

use crate::artist::{
    ArtistId, BarContainer, BoxArtists, BoxContainer, Container, ContainerId, DrawStyle,
    ErrorbarContainer, Line2D, Marker, Orientation, PathCollection, Primitive, QuadMesh,
    Rectangle,
};
use crate::color::{viridis, Color};
use crate::error::{PlotError, Result};
use crate::figure::Axes;
use crate::hooks::{self, ApiLayer, ArgValue, CallArgs, CallOutcome};
use crate::stats;

/// Bar positions: numeric, or category names placed at 0, 1, 2, ...
#[derive(Debug, Clone, PartialEq)]
pub enum BarPositions {
    Numeric(Vec<f64>),
    Categories(Vec<String>),
}

impl BarPositions {
    pub fn len(&self) -> usize {
        match self {
            BarPositions::Numeric(v) => v.len(),
            BarPositions::Categories(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl From<Vec<f64>> for BarPositions {
    fn from(v: Vec<f64>) -> Self {
        BarPositions::Numeric(v)
    }
}

impl From<&[f64]> for BarPositions {
    fn from(v: &[f64]) -> Self {
        BarPositions::Numeric(v.to_vec())
    }
}

impl From<Vec<String>> for BarPositions {
    fn from(v: Vec<String>) -> Self {
        BarPositions::Categories(v)
    }
}

impl From<&[&str]> for BarPositions {
    fn from(v: &[&str]) -> Self {
        BarPositions::Categories(v.iter().map(|s| s.to_string()).collect())
    }
}

impl<const N: usize> From<[&str; N]> for BarPositions {
    fn from(v: [&str; N]) -> Self {
        BarPositions::Categories(v.iter().map(|s| s.to_string()).collect())
    }
}

#[derive(Debug, Clone, Default)]
pub struct BarOptions {
    /// Bar width in data units; 0.8 when unset.
    pub width: Option<f64>,
    /// Per-bar baseline, for stacking.
    pub bottom: Option<Vec<f64>>,
    pub label: Option<String>,
    pub color: Option<Color>,
    /// Marks the bars as one series of a side-by-side group.
    pub dodge: bool,
}

#[derive(Debug, Clone)]
pub struct HistOptions {
    pub bins: usize,
    pub range: Option<(f64, f64)>,
    pub label: Option<String>,
    pub color: Option<Color>,
}

impl Default for HistOptions {
    fn default() -> Self {
        Self {
            bins: 10,
            range: None,
            label: None,
            color: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HistResult {
    pub counts: Vec<f64>,
    pub edges: Vec<f64>,
    pub container: ContainerId,
}

/// One or more y series sharing an x vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Columns(pub Vec<Vec<f64>>);

impl From<Vec<f64>> for Columns {
    fn from(v: Vec<f64>) -> Self {
        Columns(vec![v])
    }
}

impl From<&[f64]> for Columns {
    fn from(v: &[f64]) -> Self {
        Columns(vec![v.to_vec()])
    }
}

impl From<Vec<Vec<f64>>> for Columns {
    fn from(v: Vec<Vec<f64>>) -> Self {
        Columns(v)
    }
}

#[derive(Debug, Clone, Default)]
pub struct LineOptions {
    /// One label per series.
    pub labels: Vec<String>,
    pub color: Option<Color>,
    pub width: Option<f64>,
    pub marker: Option<Marker>,
}

#[derive(Debug, Clone, Default)]
pub struct ScatterOptions {
    pub size: Option<f64>,
    pub color: Option<Color>,
    pub label: Option<String>,
    pub marker: Option<Marker>,
}

#[derive(Debug, Clone)]
pub struct BoxOptions {
    pub vert: bool,
    pub positions: Option<Vec<f64>>,
    pub labels: Option<Vec<String>>,
    pub widths: f64,
    pub color: Option<Color>,
}

impl Default for BoxOptions {
    fn default() -> Self {
        Self {
            vert: true,
            positions: None,
            labels: None,
            widths: 0.5,
            color: None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct MeshOptions {
    pub x_edges: Option<Vec<f64>>,
    pub y_edges: Option<Vec<f64>>,
    pub clim: Option<(f64, f64)>,
}

struct Created {
    artists: Vec<ArtistId>,
    containers: Vec<ContainerId>,
}

impl Created {
    fn outcome(&self, axes: &Axes) -> CallOutcome {
        CallOutcome::new(axes.clone())
            .artists(self.artists.iter().copied())
            .containers(self.containers.iter().copied())
    }
}

fn check_len(what: &'static str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(PlotError::LengthMismatch {
            what,
            expected,
            found,
        });
    }
    Ok(())
}

fn len(n: usize) -> ArgValue {
    ArgValue::Len(n)
}

impl Axes {
    fn push(&self, primitive: Primitive, label: Option<String>) -> ArtistId {
        let mut data = self.figure.lock();
        let artist = data.alloc_artist(primitive, label);
        let id = artist.id;
        data.axes[self.index].artists.push(artist);
        id
    }

    fn push_container(&self, container: Container) -> ContainerId {
        self.write(|ax| {
            ax.containers.push(container);
            ContainerId(ax.containers.len() - 1)
        })
    }

    fn color_or_next(&self, color: Option<Color>) -> Color {
        color.unwrap_or_else(|| self.write(|ax| ax.next_color()))
    }

    /// Vertical bars centered on `x` with the given heights.
    pub fn bar(
        &self,
        x: impl Into<BarPositions>,
        heights: &[f64],
        opts: &BarOptions,
    ) -> Result<ContainerId> {
        let x = x.into();
        hooks::dispatch(
            "Axes.bar",
            ApiLayer::ObjectOriented,
            || bar_args(&x, heights, opts),
            || self.bar_impl(&x, heights, opts),
            |c| c.outcome(self),
        )
        .map(|c| c.containers[0])
    }

    fn bar_impl(&self, x: &BarPositions, heights: &[f64], opts: &BarOptions) -> Result<Created> {
        check_len("heights", x.len(), heights.len())?;
        if let Some(bottom) = &opts.bottom {
            check_len("bottom", x.len(), bottom.len())?;
        }
        let width = opts.width.unwrap_or(0.8);
        if !(width.is_finite() && width > 0.0) {
            return Err(PlotError::InvalidArgument {
                name: "width",
                reason: format!("must be positive, got {width}"),
            });
        }
        let positions = match x {
            BarPositions::Numeric(v) => v.clone(),
            BarPositions::Categories(names) => self.write(|ax| ax.xaxis.convert_categories(names)),
        };
        let fill = self.color_or_next(opts.color);
        let patches: Vec<ArtistId> = positions
            .iter()
            .zip(heights)
            .enumerate()
            .map(|(i, (&px, &h))| {
                let base = opts.bottom.as_ref().map_or(0.0, |b| b[i]);
                self.push(
                    Primitive::Rectangle(Rectangle {
                        x: px - width / 2.0,
                        y: base,
                        width,
                        height: h,
                        fill,
                        edge: None,
                    }),
                    None,
                )
            })
            .collect();
        let container = self.push_container(Container::Bar(BarContainer {
            patches: patches.clone(),
            label: opts.label.clone(),
        }));
        Ok(Created {
            artists: patches,
            containers: vec![container],
        })
    }

    /// Histogram of `values`, drawn as adjacent bars.
    pub fn hist(&self, values: &[f64], opts: &HistOptions) -> Result<HistResult> {
        hooks::dispatch(
            "Axes.hist",
            ApiLayer::ObjectOriented,
            || {
                CallArgs::new()
                    .with("n", len(values.len()))
                    .with("bins", ArgValue::Int(opts.bins as i64))
            },
            || self.hist_impl(values, opts),
            |(_, c)| c.outcome(self),
        )
        .map(|(r, _)| r)
    }

    fn hist_impl(&self, values: &[f64], opts: &HistOptions) -> Result<(HistResult, Created)> {
        if opts.bins == 0 {
            return Err(PlotError::InvalidArgument {
                name: "bins",
                reason: "must be at least 1".into(),
            });
        }
        let (counts, edges) = stats::histogram(values, opts.bins, opts.range);
        let fill = self.color_or_next(opts.color);
        let patches: Vec<ArtistId> = counts
            .iter()
            .enumerate()
            .map(|(i, &count)| {
                self.push(
                    Primitive::Rectangle(Rectangle {
                        x: edges[i],
                        y: 0.0,
                        width: edges[i + 1] - edges[i],
                        height: count,
                        fill,
                        edge: Some(Color::WHITE),
                    }),
                    None,
                )
            })
            .collect();
        let container = self.push_container(Container::Bar(BarContainer {
            patches: patches.clone(),
            label: opts.label.clone(),
        }));
        Ok((
            HistResult {
                counts,
                edges,
                container,
            },
            Created {
                artists: patches,
                containers: vec![container],
            },
        ))
    }

    /// One line per y column against the shared `x`.
    pub fn plot(&self, x: &[f64], y: impl Into<Columns>, opts: &LineOptions) -> Result<Vec<ArtistId>> {
        let y = y.into();
        hooks::dispatch(
            "Axes.plot",
            ApiLayer::ObjectOriented,
            || {
                CallArgs::new()
                    .with("n", len(x.len()))
                    .with("series", len(y.0.len()))
                    .with("labels", len(opts.labels.len()))
            },
            || self.lines_impl(x, &y, opts, DrawStyle::Default),
            |c| c.outcome(self),
        )
        .map(|c| c.artists)
    }

    /// Stair-step line: each value holds until the next x.
    pub fn step(&self, x: &[f64], y: &[f64], opts: &LineOptions) -> Result<ArtistId> {
        let columns = Columns::from(y);
        hooks::dispatch(
            "Axes.step",
            ApiLayer::ObjectOriented,
            || CallArgs::new().with("n", len(x.len())).with("series", len(1)),
            || self.lines_impl(x, &columns, opts, DrawStyle::StepsPre),
            |c| c.outcome(self),
        )
        .map(|c| c.artists[0])
    }

    fn lines_impl(&self, x: &[f64], y: &Columns, opts: &LineOptions, style: DrawStyle) -> Result<Created> {
        if y.0.is_empty() {
            return Err(PlotError::Empty("y"));
        }
        for col in &y.0 {
            check_len("y", x.len(), col.len())?;
        }
        if !opts.labels.is_empty() {
            check_len("labels", y.0.len(), opts.labels.len())?;
        }
        let artists = y
            .0
            .iter()
            .enumerate()
            .map(|(i, col)| {
                let color = match (opts.color, y.0.len()) {
                    (Some(c), 1) => c,
                    _ => self.write(|ax| ax.next_color()),
                };
                self.push(
                    Primitive::Line(Line2D {
                        xdata: x.to_vec(),
                        ydata: col.clone(),
                        color,
                        width: opts.width.unwrap_or(1.5),
                        connected: true,
                        marker: opts.marker,
                        draw_style: style,
                    }),
                    opts.labels.get(i).cloned(),
                )
            })
            .collect();
        Ok(Created {
            artists,
            containers: Vec::new(),
        })
    }

    pub fn scatter(&self, x: &[f64], y: &[f64], opts: &ScatterOptions) -> Result<ArtistId> {
        hooks::dispatch(
            "Axes.scatter",
            ApiLayer::ObjectOriented,
            || CallArgs::new().with("n", len(x.len())),
            || self.scatter_impl(x, y, opts),
            |c| c.outcome(self),
        )
        .map(|c| c.artists[0])
    }

    fn scatter_impl(&self, x: &[f64], y: &[f64], opts: &ScatterOptions) -> Result<Created> {
        check_len("y", x.len(), y.len())?;
        let color = self.color_or_next(opts.color);
        let id = self.push(
            Primitive::Collection(PathCollection {
                offsets: x.iter().copied().zip(y.iter().copied()).collect(),
                size: opts.size.unwrap_or(36.0),
                color,
                marker: opts.marker.unwrap_or(Marker::Circle),
            }),
            opts.label.clone(),
        );
        Ok(Created {
            artists: vec![id],
            containers: Vec::new(),
        })
    }

    /// Box-and-whisker plot, one box per group.
    pub fn boxplot(&self, groups: &[Vec<f64>], opts: &BoxOptions) -> Result<ContainerId> {
        hooks::dispatch(
            "Axes.boxplot",
            ApiLayer::ObjectOriented,
            || {
                CallArgs::new()
                    .with("groups", len(groups.len()))
                    .with("vert", ArgValue::Bool(opts.vert))
            },
            || self.boxplot_impl(groups, opts),
            |c| c.outcome(self),
        )
        .map(|c| c.containers[0])
    }

    fn boxplot_impl(&self, groups: &[Vec<f64>], opts: &BoxOptions) -> Result<Created> {
        if groups.is_empty() {
            return Err(PlotError::Empty("groups"));
        }
        let positions = match &opts.positions {
            Some(p) => {
                check_len("positions", groups.len(), p.len())?;
                p.clone()
            }
            None => (1..=groups.len()).map(|i| i as f64).collect(),
        };
        if let Some(labels) = &opts.labels {
            check_len("labels", groups.len(), labels.len())?;
        }
        let summaries = groups
            .iter()
            .map(|g| stats::box_stats(g).ok_or(PlotError::Empty("box group")))
            .collect::<Result<Vec<_>>>()?;

        let fill = opts.color.unwrap_or(crate::color::PALETTE[0]);
        let vert = opts.vert;
        // (position axis, value axis) -> (x, y)
        let xy = |p: f64, v: f64| if vert { (p, v) } else { (v, p) };
        let segment = |a: (f64, f64), b: (f64, f64)| {
            let (x0, y0) = xy(a.0, a.1);
            let (x1, y1) = xy(b.0, b.1);
            Primitive::Line(Line2D {
                xdata: vec![x0, x1],
                ydata: vec![y0, y1],
                color: Color::BLACK,
                width: 1.0,
                connected: true,
                marker: None,
                draw_style: DrawStyle::Default,
            })
        };

        let mut boxes = Vec::with_capacity(groups.len());
        let mut artists = Vec::new();
        for (s, &pos) in summaries.iter().zip(&positions) {
            let half = opts.widths / 2.0;
            let body = if vert {
                Rectangle {
                    x: pos - half,
                    y: s.q1,
                    width: opts.widths,
                    height: s.q3 - s.q1,
                    fill,
                    edge: Some(Color::BLACK),
                }
            } else {
                Rectangle {
                    x: s.q1,
                    y: pos - half,
                    width: s.q3 - s.q1,
                    height: opts.widths,
                    fill,
                    edge: Some(Color::BLACK),
                }
            };
            let body = self.push(Primitive::Rectangle(body), None);
            let lower = self.push(segment((pos, s.q1), (pos, s.whisker_lo)), None);
            let upper = self.push(segment((pos, s.q3), (pos, s.whisker_hi)), None);
            let cap_lo = self.push(
                segment((pos - half / 2.0, s.whisker_lo), (pos + half / 2.0, s.whisker_lo)),
                None,
            );
            let cap_hi = self.push(
                segment((pos - half / 2.0, s.whisker_hi), (pos + half / 2.0, s.whisker_hi)),
                None,
            );
            let median = self.push(segment((pos - half, s.median), (pos + half, s.median)), None);
            let (fx, fy): (Vec<f64>, Vec<f64>) = s.fliers.iter().map(|&v| xy(pos, v)).unzip();
            let fliers = self.push(
                Primitive::Line(Line2D {
                    xdata: fx,
                    ydata: fy,
                    color: Color::BLACK,
                    width: 1.0,
                    connected: false,
                    marker: Some(Marker::Circle),
                    draw_style: DrawStyle::Default,
                }),
                None,
            );
            artists.extend([body, lower, upper, cap_lo, cap_hi, median, fliers]);
            boxes.push(BoxArtists {
                body,
                median,
                whiskers: [lower, upper],
                caps: [cap_lo, cap_hi],
                fliers,
            });
        }

        let labels: Vec<String> = match &opts.labels {
            Some(l) => l.clone(),
            None => (1..=groups.len()).map(|i| i.to_string()).collect(),
        };
        let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let has_categories = self.read(|ax| {
            if vert {
                ax.xaxis.categories.is_some()
            } else {
                ax.yaxis.categories.is_some()
            }
        });
        if !has_categories {
            if vert {
                self.set_xticks(&positions, Some(&label_refs))?;
            } else {
                self.set_yticks(&positions, Some(&label_refs))?;
            }
        }
        let container = self.push_container(Container::Box(BoxContainer {
            boxes,
            orientation: if vert {
                Orientation::Vertical
            } else {
                Orientation::Horizontal
            },
        }));
        Ok(Created {
            artists,
            containers: vec![container],
        })
    }

    /// Colored grid of cells; `rows[r][c]` is the cell at row `r`, column `c`.
    pub fn pcolormesh(&self, rows: &[Vec<f64>], opts: &MeshOptions) -> Result<ArtistId> {
        hooks::dispatch(
            "Axes.pcolormesh",
            ApiLayer::ObjectOriented,
            || {
                CallArgs::new()
                    .with("rows", len(rows.len()))
                    .with("cols", len(rows.first().map_or(0, Vec::len)))
            },
            || self.pcolormesh_impl(rows, opts),
            |c| c.outcome(self),
        )
        .map(|c| c.artists[0])
    }

    fn pcolormesh_impl(&self, rows: &[Vec<f64>], opts: &MeshOptions) -> Result<Created> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(PlotError::Empty("mesh"));
        }
        for row in rows {
            check_len("mesh row", ncols, row.len())?;
        }
        let x_edges = opts
            .x_edges
            .clone()
            .unwrap_or_else(|| (0..=ncols).map(|i| i as f64).collect());
        let y_edges = opts
            .y_edges
            .clone()
            .unwrap_or_else(|| (0..=nrows).map(|i| i as f64).collect());
        check_len("x_edges", ncols + 1, x_edges.len())?;
        check_len("y_edges", nrows + 1, y_edges.len())?;
        let values: Vec<f64> = rows.iter().flatten().copied().collect();
        let clim = opts.clim.unwrap_or_else(|| {
            values
                .iter()
                .filter(|v| v.is_finite())
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)))
        });
        let id = self.push(
            Primitive::Mesh(QuadMesh {
                rows: nrows,
                cols: ncols,
                values,
                x_edges,
                y_edges,
                clim,
            }),
            None,
        );
        Ok(Created {
            artists: vec![id],
            containers: Vec::new(),
        })
    }

    /// Line with vertical error bars.
    pub fn errorbar(&self, x: &[f64], y: &[f64], yerr: &[f64], label: Option<&str>) -> Result<ContainerId> {
        hooks::dispatch(
            "Axes.errorbar",
            ApiLayer::ObjectOriented,
            || CallArgs::new().with("n", len(x.len())),
            || self.errorbar_impl(x, y, yerr, label),
            |c| c.outcome(self),
        )
        .map(|c| c.containers[0])
    }

    fn errorbar_impl(&self, x: &[f64], y: &[f64], yerr: &[f64], label: Option<&str>) -> Result<Created> {
        check_len("y", x.len(), y.len())?;
        check_len("yerr", x.len(), yerr.len())?;
        let color = self.color_or_next(None);
        let data_line = self.push(
            Primitive::Line(Line2D {
                xdata: x.to_vec(),
                ydata: y.to_vec(),
                color,
                width: 1.5,
                connected: true,
                marker: None,
                draw_style: DrawStyle::Default,
            }),
            None,
        );
        let bar_lines: Vec<ArtistId> = x
            .iter()
            .zip(y)
            .zip(yerr)
            .map(|((&xi, &yi), &e)| {
                self.push(
                    Primitive::Line(Line2D {
                        xdata: vec![xi, xi],
                        ydata: vec![yi - e, yi + e],
                        color,
                        width: 1.0,
                        connected: true,
                        marker: None,
                        draw_style: DrawStyle::Default,
                    }),
                    None,
                )
            })
            .collect();
        let mut artists = vec![data_line];
        artists.extend(bar_lines.iter().copied());
        let container = self.push_container(Container::Errorbar(ErrorbarContainer {
            data_line,
            bar_lines,
            label: label.map(str::to_string),
        }));
        Ok(Created {
            artists,
            containers: vec![container],
        })
    }

    /// Line in polar coordinates, projected onto the plane.
    pub fn polar(&self, theta: &[f64], r: &[f64]) -> Result<Vec<ArtistId>> {
        hooks::dispatch(
            "Axes.polar",
            ApiLayer::ObjectOriented,
            || CallArgs::new().with("n", len(theta.len())),
            || {
                check_len("r", theta.len(), r.len())?;
                let (x, y): (Vec<f64>, Vec<f64>) = theta
                    .iter()
                    .zip(r)
                    .map(|(&t, &r)| (r * t.cos(), r * t.sin()))
                    .unzip();
                self.lines_impl(&x, &Columns(vec![y]), &LineOptions::default(), DrawStyle::Default)
            },
            |c| c.outcome(self),
        )
        .map(|c| c.artists)
    }
}

fn bar_args(x: &BarPositions, heights: &[f64], opts: &BarOptions) -> CallArgs {
    CallArgs::new()
        .with("n", len(heights.len()))
        .with(
            "x",
            ArgValue::Text(
                match x {
                    BarPositions::Numeric(_) => "numeric",
                    BarPositions::Categories(_) => "categorical",
                }
                .into(),
            ),
        )
        .with_opt("bottom", opts.bottom.as_ref().map(|b| len(b.len())))
        .with("dodge", ArgValue::Bool(opts.dodge))
        .with_opt("label", opts.label.clone().map(ArgValue::Text))
}

/// Cell color for a mesh value under its color limits.
pub(crate) fn mesh_color(mesh: &QuadMesh, v: f64) -> Color {
    let (lo, hi) = mesh.clim;
    let t = if hi > lo { (v - lo) / (hi - lo) } else { 0.5 };
    viridis(t)
}

#[cfg(test)]
mod tests {
    use crate::artist::Container;
    use crate::figure::Figure;

    use super::*;

    fn axes() -> Axes {
        Figure::new().add_subplot(1, 1, 0, 0).unwrap()
    }

    #[test]
    fn categorical_bars_map_to_positions() {
        let ax = axes();
        let c = ax.bar(["a", "b", "c"], &[2.0, 5.0, 3.0], &BarOptions::default()).unwrap();
        ax.read(|a| {
            let Some(Container::Bar(bars)) = a.container(c) else { panic!("bar container") };
            let centers: Vec<f64> = bars
                .patches
                .iter()
                .map(|id| a.artist(*id).unwrap().as_rectangle().unwrap().center_x())
                .collect();
            assert_eq!(centers, vec![0.0, 1.0, 2.0]);
            assert_eq!(a.xaxis.categories.as_deref().unwrap(), ["a", "b", "c"]);
        });
    }

    #[test]
    fn bar_rejects_mismatched_lengths() {
        let ax = axes();
        assert!(matches!(
            ax.bar(vec![0.0, 1.0], &[1.0], &BarOptions::default()),
            Err(PlotError::LengthMismatch { .. })
        ));
        let opts = BarOptions {
            bottom: Some(vec![0.0]),
            ..Default::default()
        };
        assert!(ax.bar(vec![0.0, 1.0], &[1.0, 2.0], &opts).is_err());
    }

    #[test]
    fn stacked_bars_start_at_bottom() {
        let ax = axes();
        let opts = BarOptions {
            bottom: Some(vec![1.0, 2.0]),
            ..Default::default()
        };
        let c = ax.bar(vec![0.0, 1.0], &[3.0, 4.0], &opts).unwrap();
        ax.read(|a| {
            let Some(Container::Bar(b)) = a.container(c) else { panic!() };
            let r = a.artist(b.patches[1]).unwrap().as_rectangle().unwrap();
            assert_eq!((r.y, r.height), (2.0, 4.0));
        });
    }

    #[test]
    fn boxplot_draws_whiskers_at_stats() {
        let ax = axes();
        let data: Vec<f64> = (1..=9).map(f64::from).collect();
        let c = ax.boxplot(&[data], &BoxOptions::default()).unwrap();
        ax.read(|a| {
            let Some(Container::Box(b)) = a.container(c) else { panic!() };
            let body = a.artist(b.boxes[0].body).unwrap().as_rectangle().unwrap();
            assert_eq!((body.y, body.y + body.height), (3.0, 7.0));
            let median = a.artist(b.boxes[0].median).unwrap().as_line().unwrap();
            assert_eq!(median.ydata, vec![5.0, 5.0]);
        });
    }

    #[test]
    fn horizontal_boxplot_swaps_axes() {
        let ax = axes();
        let c = ax
            .boxplot(
                &[vec![1.0, 2.0, 3.0]],
                &BoxOptions {
                    vert: false,
                    ..Default::default()
                },
            )
            .unwrap();
        ax.read(|a| {
            let Some(Container::Box(b)) = a.container(c) else { panic!() };
            let median = a.artist(b.boxes[0].median).unwrap().as_line().unwrap();
            assert_eq!(median.xdata, vec![2.0, 2.0]);
            assert!(matches!(a.yaxis.ticks, crate::figure::Ticks::Fixed { .. }));
        });
    }

    #[test]
    fn ragged_mesh_is_rejected() {
        let ax = axes();
        assert!(ax.pcolormesh(&[vec![1.0, 2.0], vec![3.0]], &MeshOptions::default()).is_err());
        assert!(ax.pcolormesh(&[], &MeshOptions::default()).is_err());
    }

    #[test]
    fn plot_with_columns_makes_one_line_each() {
        let ax = axes();
        let ids = ax
            .plot(&[0.0, 1.0], vec![vec![1.0, 2.0], vec![3.0, 4.0]], &LineOptions::default())
            .unwrap();
        assert_eq!(ids.len(), 2);
    }
}
