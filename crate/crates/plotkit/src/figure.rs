//! Figures, axes, and their shared state.
//!
//! [`Figure`] and [`Axes`] are cheap cloneable handles over state guarded by
//! a mutex, so a figure can be built on one thread and rendered on another.
//! No lock is held while a call wrapper runs.

use std::fmt;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex, MutexGuard};

use crate::artist::{Artist, ArtistId, Container, ContainerId, Primitive};
use crate::color::{palette, Color};
use crate::error::{PlotError, Result};
use crate::hooks;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FigureId(pub u64);

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

static NEXT_FIGURE: AtomicU64 = AtomicU64::new(1);

/// Position of an axes within its figure's subplot grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubplotSpec {
    pub row: usize,
    pub col: usize,
    pub nrows: usize,
    pub ncols: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxesKind {
    Standard,
    Colorbar,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum Ticks {
    #[default]
    Auto,
    Fixed {
        locs: Vec<f64>,
        labels: Option<Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AxisData {
    pub limits: Option<(f64, f64)>,
    pub ticks: Ticks,
    /// Category names mapped to positions 0, 1, 2, ... in insertion order.
    pub categories: Option<Vec<String>>,
    pub inverted: bool,
}

impl AxisData {
    /// Maps category names onto positions, registering unseen ones.
    pub(crate) fn convert_categories(&mut self, names: &[String]) -> Vec<f64> {
        let cats = self.categories.get_or_insert_with(Vec::new);
        names
            .iter()
            .map(|name| match cats.iter().position(|c| c == name) {
                Some(i) => i as f64,
                None => {
                    cats.push(name.clone());
                    (cats.len() - 1) as f64
                }
            })
            .collect()
    }

    /// Tick locations and labels as they will be drawn, for the given limits.
    pub fn resolved_ticks(&self, limits: (f64, f64)) -> Vec<(f64, String)> {
        match &self.ticks {
            Ticks::Fixed { locs, labels } => locs
                .iter()
                .enumerate()
                .map(|(i, &loc)| {
                    let label = match labels {
                        Some(l) => l.get(i).cloned().unwrap_or_default(),
                        None => crate::ticks::format_tick(loc, locs),
                    };
                    (loc, label)
                })
                .collect(),
            Ticks::Auto => match &self.categories {
                Some(cats) => cats
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (i as f64, c.clone()))
                    .collect(),
                None => {
                    let locs = crate::ticks::nice_ticks(limits.0, limits.1);
                    locs.iter()
                        .map(|&loc| (loc, crate::ticks::format_tick(loc, &locs)))
                        .collect()
                }
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegendSwatch {
    Patch(Color),
    Line(Color),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Legend {
    pub entries: Vec<(String, LegendSwatch)>,
}

#[derive(Debug, Clone)]
pub struct AxesData {
    pub index: usize,
    pub kind: AxesKind,
    pub spec: Option<SubplotSpec>,
    /// Left, bottom, width, height as figure fractions.
    pub rect: [f64; 4],
    pub title: String,
    pub xlabel: String,
    pub ylabel: String,
    pub xaxis: AxisData,
    pub yaxis: AxisData,
    pub artists: Vec<Artist>,
    pub containers: Vec<Container>,
    pub legend: Option<Legend>,
    pub(crate) cycle: usize,
}

impl AxesData {
    fn new(index: usize, kind: AxesKind, spec: Option<SubplotSpec>, rect: [f64; 4]) -> Self {
        Self {
            index,
            kind,
            spec,
            rect,
            title: String::new(),
            xlabel: String::new(),
            ylabel: String::new(),
            xaxis: AxisData::default(),
            yaxis: AxisData::default(),
            artists: Vec::new(),
            containers: Vec::new(),
            legend: None,
            cycle: 0,
        }
    }

    pub fn artist(&self, id: ArtistId) -> Option<&Artist> {
        self.artists.iter().find(|a| a.id == id)
    }

    pub fn artist_mut(&mut self, id: ArtistId) -> Option<&mut Artist> {
        self.artists.iter_mut().find(|a| a.id == id)
    }

    pub fn container(&self, id: ContainerId) -> Option<&Container> {
        self.containers.get(id.0)
    }

    pub(crate) fn next_color(&mut self) -> Color {
        let c = palette(self.cycle);
        self.cycle += 1;
        c
    }

    /// Current view limits: explicit limits, else data extent plus margins.
    pub fn view_limits(&self) -> ((f64, f64), (f64, f64)) {
        let auto = crate::layout::data_limits(self);
        let x = self.xaxis.limits.unwrap_or(auto.0);
        let y = self.yaxis.limits.unwrap_or(auto.1);
        (x, y)
    }
}

#[derive(Debug)]
pub struct FigureData {
    pub id: FigureId,
    /// Width and height in inches.
    pub size: (f64, f64),
    pub dpi: f64,
    pub axes: Vec<AxesData>,
    next_artist: u64,
}

impl FigureData {
    pub(crate) fn alloc_artist(&mut self, primitive: Primitive, label: Option<String>) -> Artist {
        self.next_artist += 1;
        Artist {
            id: ArtistId(self.next_artist),
            gid: None,
            label,
            visible: true,
            primitive,
        }
    }

    /// Pixel size of the canvas.
    pub fn canvas(&self) -> (f64, f64) {
        (self.size.0 * self.dpi, self.size.1 * self.dpi)
    }

    pub fn find_artist(&self, id: ArtistId) -> Option<(usize, &Artist)> {
        self.axes
            .iter()
            .find_map(|ax| ax.artist(id).map(|a| (ax.index, a)))
    }
}

struct FigureCell {
    id: FigureId,
    closed: AtomicBool,
    data: Mutex<FigureData>,
}

impl Drop for FigureCell {
    fn drop(&mut self) {
        if !self.closed.swap(true, Ordering::AcqRel) {
            hooks::notify_close(self.id);
        }
    }
}

/// Handle to a figure.
#[derive(Clone)]
pub struct Figure(Arc<FigureCell>);

impl fmt::Debug for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Figure").field(&self.0.id).finish()
    }
}

impl PartialEq for Figure {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

const LEFT: f64 = 0.125;
const RIGHT: f64 = 0.9;
const BOTTOM: f64 = 0.11;
const TOP: f64 = 0.88;
const WSPACE: f64 = 0.2;
const HSPACE: f64 = 0.2;

fn grid_rect(spec: SubplotSpec) -> [f64; 4] {
    let cell_w = (RIGHT - LEFT) / (spec.ncols as f64 + WSPACE * (spec.ncols as f64 - 1.0));
    let cell_h = (TOP - BOTTOM) / (spec.nrows as f64 + HSPACE * (spec.nrows as f64 - 1.0));
    let left = LEFT + spec.col as f64 * cell_w * (1.0 + WSPACE);
    let top = TOP - spec.row as f64 * cell_h * (1.0 + HSPACE);
    [left, top - cell_h, cell_w, cell_h]
}

impl Default for Figure {
    fn default() -> Self {
        Self::new()
    }
}

impl Figure {
    pub fn new() -> Self {
        Self::with_size(6.4, 4.8)
    }

    pub fn with_size(width: f64, height: f64) -> Self {
        let id = FigureId(NEXT_FIGURE.fetch_add(1, Ordering::Relaxed));
        Figure(Arc::new(FigureCell {
            id,
            closed: AtomicBool::new(false),
            data: Mutex::new(FigureData {
                id,
                size: (width, height),
                dpi: 72.0,
                axes: Vec::new(),
                next_artist: 0,
            }),
        }))
    }

    pub fn id(&self) -> FigureId {
        self.0.id
    }

    pub fn is_closed(&self) -> bool {
        self.0.closed.load(Ordering::Acquire)
    }

    pub(crate) fn lock(&self) -> MutexGuard<'_, FigureData> {
        self.0.data.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Read access to the figure state.
    pub fn read<R>(&self, f: impl FnOnce(&FigureData) -> R) -> R {
        f(&self.lock())
    }

    /// Write access to the figure state. Used by renderers and tests.
    pub fn write<R>(&self, f: impl FnOnce(&mut FigureData) -> R) -> R {
        f(&mut self.lock())
    }

    /// Adds the axes at grid cell `(row, col)` of an `nrows` x `ncols` grid.
    pub fn add_subplot(&self, nrows: usize, ncols: usize, row: usize, col: usize) -> Result<Axes> {
        if nrows == 0 || ncols == 0 {
            return Err(PlotError::InvalidArgument {
                name: "nrows/ncols",
                reason: "grid must have at least one cell".into(),
            });
        }
        if row >= nrows || col >= ncols {
            return Err(PlotError::InvalidArgument {
                name: "row/col",
                reason: format!("({row}, {col}) outside a {nrows}x{ncols} grid"),
            });
        }
        let spec = SubplotSpec {
            row,
            col,
            nrows,
            ncols,
        };
        let mut data = self.lock();
        let index = data.axes.len();
        data.axes
            .push(AxesData::new(index, AxesKind::Standard, Some(spec), grid_rect(spec)));
        Ok(Axes {
            figure: self.clone(),
            index,
        })
    }

    /// Creates a full grid of axes in row-major order.
    pub fn subplots(&self, nrows: usize, ncols: usize) -> Result<Vec<Axes>> {
        let mut out = Vec::with_capacity(nrows * ncols);
        for row in 0..nrows {
            for col in 0..ncols {
                out.push(self.add_subplot(nrows, ncols, row, col)?);
            }
        }
        Ok(out)
    }

    pub fn axes(&self) -> Vec<Axes> {
        let n = self.lock().axes.len();
        (0..n)
            .map(|index| Axes {
                figure: self.clone(),
                index,
            })
            .collect()
    }

    /// Adds a colorbar for `mesh` beside `parent`, shrinking the parent.
    pub fn colorbar(&self, parent: &Axes, mesh: ArtistId) -> Result<Axes> {
        let mut data = self.lock();
        let clim = {
            let ax = data.axes.get(parent.index).ok_or(PlotError::InvalidArgument {
                name: "parent",
                reason: "axes not in figure".into(),
            })?;
            ax.artist(mesh)
                .and_then(|a| a.as_mesh())
                .map(|m| m.clim)
                .ok_or(PlotError::InvalidArgument {
                    name: "mesh",
                    reason: "artist is not a mesh".into(),
                })?
        };
        let rect = {
            let ax = &mut data.axes[parent.index];
            let [l, b, w, h] = ax.rect;
            ax.rect = [l, b, w * 0.8, h];
            [l + w * 0.85, b, w * 0.05, h]
        };
        let index = data.axes.len();
        let mut cb = AxesData::new(index, AxesKind::Colorbar, None, rect);
        let steps = 64;
        let values: Vec<f64> = (0..steps)
            .map(|i| clim.0 + (clim.1 - clim.0) * (i as f64 + 0.5) / steps as f64)
            .collect();
        let y_edges: Vec<f64> = (0..=steps)
            .map(|i| clim.0 + (clim.1 - clim.0) * i as f64 / steps as f64)
            .collect();
        let artist = data.alloc_artist(
            Primitive::Mesh(crate::artist::QuadMesh {
                rows: steps,
                cols: 1,
                values,
                x_edges: vec![0.0, 1.0],
                y_edges,
                clim,
            }),
            None,
        );
        cb.artists.push(artist);
        cb.xaxis.ticks = Ticks::Fixed {
            locs: Vec::new(),
            labels: None,
        };
        cb.xaxis.limits = Some((0.0, 1.0));
        cb.yaxis.limits = Some(clim);
        data.axes.push(cb);
        Ok(Axes {
            figure: self.clone(),
            index,
        })
    }

    /// Serializes the figure to an SVG document.
    pub fn to_svg(&self) -> String {
        crate::svg::render(&mut self.lock())
    }

    pub fn savefig(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        std::fs::write(path, self.to_svg())
    }

    /// Closes the figure. Close listeners fire once per figure.
    pub fn close(&self) {
        if !self.0.closed.swap(true, Ordering::AcqRel) {
            hooks::notify_close(self.0.id);
        }
    }
}

/// Handle to one axes of a figure.
#[derive(Clone, PartialEq)]
pub struct Axes {
    pub(crate) figure: Figure,
    pub(crate) index: usize,
}

impl fmt::Debug for Axes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Axes")
            .field("figure", &self.figure.id())
            .field("index", &self.index)
            .finish()
    }
}

impl Axes {
    pub fn figure(&self) -> &Figure {
        &self.figure
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn read<R>(&self, f: impl FnOnce(&AxesData) -> R) -> R {
        let data = self.figure.lock();
        f(&data.axes[self.index])
    }

    pub(crate) fn write<R>(&self, f: impl FnOnce(&mut AxesData) -> R) -> R {
        let mut data = self.figure.lock();
        f(&mut data.axes[self.index])
    }

    /// Grid placement, `None` for axes outside the subplot grid (colorbars).
    pub fn subplot_spec(&self) -> Option<SubplotSpec> {
        self.read(|ax| ax.spec)
    }

    pub fn set_title(&self, title: impl Into<String>) {
        let title = title.into();
        self.write(|ax| ax.title = title);
    }

    pub fn set_xlabel(&self, label: impl Into<String>) {
        let label = label.into();
        self.write(|ax| ax.xlabel = label);
    }

    pub fn set_ylabel(&self, label: impl Into<String>) {
        let label = label.into();
        self.write(|ax| ax.ylabel = label);
    }

    pub fn set_xlim(&self, lo: f64, hi: f64) {
        self.write(|ax| ax.xaxis.limits = Some((lo, hi)));
    }

    pub fn set_ylim(&self, lo: f64, hi: f64) {
        self.write(|ax| ax.yaxis.limits = Some((lo, hi)));
    }

    pub fn set_xticks(&self, locs: &[f64], labels: Option<&[&str]>) -> Result<()> {
        set_ticks(self, locs, labels, true)
    }

    pub fn set_yticks(&self, locs: &[f64], labels: Option<&[&str]>) -> Result<()> {
        set_ticks(self, locs, labels, false)
    }

    /// Replaces the labels of the current x ticks.
    pub fn set_xticklabels(&self, labels: &[&str]) -> Result<()> {
        let (xlim, _) = self.read(|ax| ax.view_limits());
        let locs: Vec<f64> = self.read(|ax| {
            ax.xaxis
                .resolved_ticks(xlim)
                .into_iter()
                .map(|(loc, _)| loc)
                .collect()
        });
        set_ticks(self, &locs, Some(labels), true)
    }

    pub fn invert_yaxis(&self) {
        self.write(|ax| ax.yaxis.inverted = !ax.yaxis.inverted);
    }

    /// Builds a legend from labeled containers and lines.
    pub fn legend(&self) {
        self.write(|ax| {
            let mut entries = Vec::new();
            let mut in_container = std::collections::HashSet::new();
            for c in &ax.containers {
                if let Container::Bar(b) = c {
                    in_container.extend(b.patches.iter().copied());
                    if let (Some(label), Some(first)) = (&b.label, b.patches.first()) {
                        if let Some(r) = ax.artist(*first).and_then(|a| a.as_rectangle()) {
                            entries.push((label.clone(), LegendSwatch::Patch(r.fill)));
                        }
                    }
                }
            }
            for a in &ax.artists {
                if in_container.contains(&a.id) {
                    continue;
                }
                let Some(label) = a.label.as_ref().filter(|l| !l.starts_with('_')) else {
                    continue;
                };
                let swatch = match &a.primitive {
                    Primitive::Line(l) => LegendSwatch::Line(l.color),
                    Primitive::Collection(c) => LegendSwatch::Patch(c.color),
                    Primitive::Rectangle(r) => LegendSwatch::Patch(r.fill),
                    _ => continue,
                };
                entries.push((label.clone(), swatch));
            }
            ax.legend = (!entries.is_empty()).then_some(Legend { entries });
        });
    }

    /// Adds a free text annotation in data coordinates.
    pub fn text(&self, x: f64, y: f64, text: impl Into<String>) -> ArtistId {
        let text = text.into();
        let mut data = self.figure.lock();
        let artist = data.alloc_artist(
            Primitive::Text(crate::artist::TextArtist {
                x,
                y,
                text,
                color: Color::BLACK,
            }),
            None,
        );
        let id = artist.id;
        data.axes[self.index].artists.push(artist);
        id
    }
}

fn set_ticks(axes: &Axes, locs: &[f64], labels: Option<&[&str]>, x: bool) -> Result<()> {
    if let Some(labels) = labels {
        if labels.len() != locs.len() {
            return Err(PlotError::LengthMismatch {
                what: "tick labels",
                expected: locs.len(),
                found: labels.len(),
            });
        }
    }
    let ticks = Ticks::Fixed {
        locs: locs.to_vec(),
        labels: labels.map(|l| l.iter().map(|s| s.to_string()).collect()),
    };
    axes.write(|ax| {
        if x {
            ax.xaxis.ticks = ticks;
        } else {
            ax.yaxis.ticks = ticks;
        }
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subplot_grid_positions() {
        let fig = Figure::new();
        let axes = fig.subplots(2, 3).unwrap();
        assert_eq!(axes.len(), 6);
        let spec = axes[5].subplot_spec().unwrap();
        assert_eq!((spec.row, spec.col), (1, 2));
        let r0 = axes[0].read(|a| a.rect);
        let r1 = axes[1].read(|a| a.rect);
        assert!(r1[0] > r0[0]);
        assert!((r0[1] + r0[3] - TOP).abs() < 1e-12);
    }

    #[test]
    fn out_of_grid_subplot_is_rejected() {
        let fig = Figure::new();
        assert!(fig.add_subplot(1, 2, 0, 2).is_err());
        assert!(fig.add_subplot(0, 2, 0, 0).is_err());
    }

    #[test]
    fn figure_ids_are_distinct() {
        assert_ne!(Figure::new().id(), Figure::new().id());
    }

    #[test]
    fn tick_label_length_checked() {
        let fig = Figure::new();
        let ax = fig.add_subplot(1, 1, 0, 0).unwrap();
        assert!(ax.set_xticks(&[0.0, 1.0], Some(&["a"])).is_err());
        ax.set_xticks(&[0.0, 1.0], Some(&["a", "b"])).unwrap();
        let ticks = ax.read(|a| a.xaxis.resolved_ticks((0.0, 1.0)));
        assert_eq!(ticks[1], (1.0, "b".to_string()));
    }
}
