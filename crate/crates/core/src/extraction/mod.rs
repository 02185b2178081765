//! Turns live figure state into [`FigureSchema`] documents.
//!
//! Interception records one [`Extractor`] per user plot call; the extractor
//! keeps only artist and container ids, and reads the axes again when the
//! figure is rendered, so labels or limits set after plotting are honoured.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;
use std::sync::{Mutex, MutexGuard, OnceLock};

use plotkit::artist::{ArtistId, ContainerId};
use plotkit::figure::{AxesData, FigureData, FigureId};
use plotkit::hooks::CallOutcome;
use plotkit::{Axes, Figure};
use thiserror::Error;

use crate::interception::Classification;
use crate::schema::{validate_schema, FigureSchema, LayerSchema, PlotType, SubplotSchema, ValidationReport};

mod extractors;
pub mod mixins;

pub use extractors::*;
pub use mixins::{extract_container, extract_levels, merge_fragments, Axis, Field, Fragment, LayerFields};

#[derive(Debug, Error)]
pub enum ExtractionError {
    #[error("plot type is unsupported; no extractor exists for it")]
    Unsupported,
    #[error("unknown container type {found}; recognized: {}", recognized.join(", "))]
    UnknownContainer {
        found: &'static str,
        recognized: &'static [&'static str],
    },
    #[error("{0:?} axis is numeric, not categorical")]
    NumericAxis(Axis),
    #[error("fragment key `{0}` set twice without an override")]
    KeyCollision(&'static str),
    #[error("layer is missing `{0}`")]
    MissingField(&'static str),
    #[error("axes {0} no longer exists")]
    MissingAxes(usize),
    #[error("artist {0} is gone or has the wrong kind")]
    MissingArtist(ArtistId),
    #[error("container {0:?} is gone or has the wrong kind")]
    MissingContainer(ContainerId),
    #[error("{0} has no data")]
    Empty(PlotType),
    #[error("{0}")]
    Inconsistent(String),
    #[error("subplot ({row}, {col}) layer {layer} ({plot_type}): {source}")]
    Layer {
        row: usize,
        col: usize,
        layer: usize,
        plot_type: PlotType,
        #[source]
        source: Box<ExtractionError>,
    },
    #[error("nothing to extract")]
    NothingToExtract,
    #[error("figure {0} has no registered plots")]
    NotRegistered(FigureId),
    #[error("extracted schema is invalid: {0}")]
    Invalid(ValidationReport),
}

pub type Result<T, E = ExtractionError> = std::result::Result<T, E>;

/// Where an extractor's axes lives, without keeping the figure alive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AxesRef {
    pub figure: FigureId,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPosition {
    pub row: usize,
    pub col: usize,
}

/// Ids produced by the recorded plot call(s).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Recorded {
    pub artists: Vec<ArtistId>,
    pub containers: Vec<ContainerId>,
}

impl Recorded {
    pub fn from_outcome(outcome: &CallOutcome) -> Self {
        Recorded {
            artists: outcome.artists.clone(),
            containers: outcome.containers.clone(),
        }
    }
}

/// A drawn primitive and the schema points it carries, in layer point order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tracked {
    pub artist: ArtistId,
    pub points: Range<usize>,
}

/// State common to every extractor.
#[derive(Debug, Clone, PartialEq)]
pub struct Base {
    pub axes: AxesRef,
    pub position: GridPosition,
    pub recorded: Recorded,
}

pub trait Extractor: Send + Sync + fmt::Debug {
    fn plot_type(&self) -> PlotType;
    fn base(&self) -> &Base;
    fn base_mut(&mut self) -> &mut Base;

    /// Data-bearing primitives of this layer, in point order.
    fn tracked_primitives(&self, ax: &AxesData) -> Result<Vec<Tracked>>;

    /// Reads the layer from the axes. Does not modify any artist.
    fn extract(&self, ax: &AxesData) -> Result<LayerSchema>;

    fn axes(&self) -> AxesRef {
        self.base().axes
    }

    fn grid_position(&self) -> GridPosition {
        self.base().position
    }
}

fn position_of(axes: &Axes) -> GridPosition {
    axes.subplot_spec().map_or(GridPosition { row: 0, col: 0 }, |s| GridPosition {
        row: s.row,
        col: s.col,
    })
}

/// Builds the concrete extractor for a classified call on `axes`.
pub fn create_extractor(kind: Classification, axes: &Axes) -> Result<Box<dyn Extractor>> {
    let Classification::Plot(plot_type) = kind else {
        return Err(ExtractionError::Unsupported);
    };
    let base = Base {
        axes: AxesRef {
            figure: axes.figure().id(),
            index: axes.index(),
        },
        position: position_of(axes),
        recorded: Recorded::default(),
    };
    Ok(match plot_type {
        PlotType::Bar => Box::new(BarExtractor(base)),
        PlotType::StackedBar => Box::new(StackedBarExtractor(base)),
        PlotType::DodgedBar => Box::new(DodgedBarExtractor(base)),
        PlotType::Histogram => Box::new(HistogramExtractor(base)),
        PlotType::Line => Box::new(LineExtractor(base)),
        PlotType::MultiLine => Box::new(MultiLineExtractor(base)),
        PlotType::BoxHorizontal => Box::new(BoxExtractor::horizontal(base)),
        PlotType::BoxVertical => Box::new(BoxExtractor::vertical(base)),
        PlotType::Heatmap => Box::new(HeatmapExtractor(base)),
        PlotType::Scatter => Box::new(ScatterExtractor(base)),
    })
}

type Registry = HashMap<FigureId, Vec<Box<dyn Extractor>>>;

fn registry() -> MutexGuard<'static, Registry> {
    static REGISTRY: OnceLock<Mutex<Registry>> = OnceLock::new();
    REGISTRY
        .get_or_init(Default::default)
        .lock()
        .unwrap_or_else(|e| e.into_inner())
}

/// Appends `extractor` to the figure's layers.
///
/// Stacking and dodging are built from several bar calls on one axes; each
/// such call is folded into the bar layer it extends rather than starting a
/// new one.
pub fn register_plot(figure: FigureId, mut extractor: Box<dyn Extractor>) {
    let mut reg = registry();
    let layers = reg.entry(figure).or_default();
    let folds = matches!(extractor.plot_type(), PlotType::StackedBar | PlotType::DodgedBar)
        && layers.last().is_some_and(|last| {
            last.axes() == extractor.axes()
                && (last.plot_type() == PlotType::Bar || last.plot_type() == extractor.plot_type())
        });
    if folds {
        let previous = layers.pop().expect("checked above");
        let rec = &mut extractor.base_mut().recorded;
        let mut merged = previous.base().recorded.clone();
        merged.artists.append(&mut rec.artists);
        merged.containers.append(&mut rec.containers);
        *rec = merged;
    }
    layers.push(extractor);
}

/// Records a finished user plot call. Called by the interception wrapper.
pub fn register_call(plot_type: PlotType, outcome: &CallOutcome) -> Result<()> {
    let mut extractor = create_extractor(Classification::Plot(plot_type), &outcome.axes)?;
    extractor.base_mut().recorded = Recorded::from_outcome(outcome);
    register_plot(outcome.axes.figure().id(), extractor);
    Ok(())
}

/// Drops everything registered for `figure`.
pub fn forget_figure(figure: FigureId) {
    registry().remove(&figure);
}

pub fn is_registered(figure: FigureId) -> bool {
    registry().get(&figure).is_some_and(|l| !l.is_empty())
}

/// `(position, plot type)` of each registered layer, in registration order.
pub fn registered_layers(figure: FigureId) -> Vec<(GridPosition, PlotType)> {
    registry()
        .get(&figure)
        .map(|l| l.iter().map(|e| (e.grid_position(), e.plot_type())).collect())
        .unwrap_or_default()
}

/// Where a tracked primitive's points sit in the schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementTarget {
    pub figure: FigureId,
    pub subplot: GridPosition,
    pub layer: usize,
    pub points: Range<usize>,
}

// Layers grouped by grid position, each with its index inside the subplot.
fn plan(layers: &[Box<dyn Extractor>]) -> BTreeMap<GridPosition, Vec<&dyn Extractor>> {
    let mut grid: BTreeMap<GridPosition, Vec<&dyn Extractor>> = BTreeMap::new();
    for e in layers {
        grid.entry(e.grid_position()).or_default().push(e.as_ref());
    }
    grid
}

fn axes_data(fig: &FigureData, r: AxesRef) -> Result<&AxesData> {
    fig.axes.get(r.index).ok_or(ExtractionError::MissingAxes(r.index))
}

fn in_layer<T>(pos: GridPosition, layer: usize, e: &dyn Extractor, r: Result<T>) -> Result<T> {
    r.map_err(|source| ExtractionError::Layer {
        row: pos.row,
        col: pos.col,
        layer,
        plot_type: e.plot_type(),
        source: Box::new(source),
    })
}

/// Every tracked primitive of the figure's registered layers.
pub fn tracked_elements(figure: &Figure) -> Result<HashMap<ArtistId, ElementTarget>> {
    let id = figure.id();
    let reg = registry();
    let Some(layers) = reg.get(&id) else {
        return Ok(HashMap::new());
    };
    figure.read(|fig| {
        let mut out = HashMap::new();
        for (pos, group) in plan(layers) {
            for (layer, e) in group.into_iter().enumerate() {
                let ax = in_layer(pos, layer, e, axes_data(fig, e.axes()))?;
                for t in in_layer(pos, layer, e, e.tracked_primitives(ax))? {
                    out.insert(
                        t.artist,
                        ElementTarget {
                            figure: id,
                            subplot: pos,
                            layer,
                            points: t.points,
                        },
                    );
                }
            }
        }
        Ok(out)
    })
}

/// Schema id of a figure.
pub fn schema_id(figure: FigureId) -> String {
    format!("maidr-fig-{figure}")
}

/// Runs every registered extractor of `figure` and assembles the schema.
pub fn finalize_figure(figure: &Figure) -> Result<FigureSchema> {
    let id = figure.id();
    let reg = registry();
    let layers = reg.get(&id).ok_or(ExtractionError::NotRegistered(id))?;
    if layers.is_empty() {
        return Err(ExtractionError::NothingToExtract);
    }
    let subplots = figure.read(|fig| {
        plan(layers)
            .into_iter()
            .map(|(pos, group)| {
                let layers = group
                    .into_iter()
                    .enumerate()
                    .map(|(i, e)| {
                        let ax = in_layer(pos, i, e, axes_data(fig, e.axes()))?;
                        in_layer(pos, i, e, e.extract(ax))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SubplotSchema {
                    row: pos.row,
                    col: pos.col,
                    layers,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let schema = FigureSchema {
        id: schema_id(id),
        subplots,
    };
    let report = validate_schema(&schema);
    if !report.is_empty() {
        return Err(ExtractionError::Invalid(report));
    }
    Ok(schema)
}

#[cfg(test)]
mod tests {
    use plotkit::{BarOptions, Figure, LineOptions};

    use super::*;

    fn bar_on(ax: &Axes) -> CallOutcome {
        let c = ax.bar(["a", "b", "c"], &[2.0, 5.0, 3.0], &BarOptions::default()).unwrap();
        CallOutcome::new(ax.clone()).containers([c])
    }

    #[test]
    fn factory_positions() {
        let fig = Figure::new();
        let axes = fig.subplots(2, 3).unwrap();
        let e = create_extractor(Classification::Plot(PlotType::Bar), &axes[5]).unwrap();
        let spec = axes[5].subplot_spec().unwrap();
        assert_eq!(e.grid_position(), GridPosition { row: spec.row, col: spec.col });
        assert_eq!(e.grid_position(), GridPosition { row: 1, col: 2 });

        let single = Figure::new();
        let ax = single.add_subplot(1, 1, 0, 0).unwrap();
        let h = create_extractor(Classification::Plot(PlotType::Heatmap), &ax).unwrap();
        assert_eq!(h.plot_type(), PlotType::Heatmap);
        assert_eq!(h.grid_position(), GridPosition { row: 0, col: 0 });
        assert!(matches!(
            create_extractor(Classification::Unsupported, &ax),
            Err(ExtractionError::Unsupported)
        ));
    }

    #[test]
    fn one_extractor_per_type() {
        let fig = Figure::new();
        let ax = fig.add_subplot(1, 1, 0, 0).unwrap();
        for t in PlotType::ALL {
            assert_eq!(create_extractor(Classification::Plot(t), &ax).unwrap().plot_type(), t);
        }
    }

    #[test]
    fn finalize_and_lifecycle() {
        let fig = Figure::new();
        let ax = fig.add_subplot(1, 1, 0, 0).unwrap();
        assert!(matches!(finalize_figure(&fig), Err(ExtractionError::NotRegistered(_))));
        register_call(PlotType::Bar, &bar_on(&ax)).unwrap();
        let schema = finalize_figure(&fig).unwrap();
        assert_eq!(schema.subplots.len(), 1);
        assert_eq!(schema.subplots[0].layers.len(), 1);
        let again = finalize_figure(&fig).unwrap();
        assert_eq!(
            serde_json::to_string(&schema).unwrap(),
            serde_json::to_string(&again).unwrap()
        );
        forget_figure(fig.id());
        assert!(!is_registered(fig.id()));
    }

    #[test]
    fn grid_assembly() {
        let fig = Figure::new();
        let axes = fig.subplots(2, 2).unwrap();
        for ax in &axes {
            register_call(PlotType::Bar, &bar_on(ax)).unwrap();
        }
        let schema = finalize_figure(&fig).unwrap();
        let pos: Vec<_> = schema.subplots.iter().map(|s| (s.row, s.col)).collect();
        assert_eq!(pos, [(0, 0), (0, 1), (1, 0), (1, 1)]);
        forget_figure(fig.id());
    }

    #[test]
    fn layers_accumulate_in_order() {
        let fig = Figure::new();
        let ax = fig.add_subplot(1, 1, 0, 0).unwrap();
        for y in [[1.0, 2.0], [3.0, 4.0]] {
            let ids = ax.plot(&[0.0, 1.0], y.to_vec(), &LineOptions::default()).unwrap();
            register_call(PlotType::Line, &CallOutcome::new(ax.clone()).artists(ids)).unwrap();
        }
        let schema = finalize_figure(&fig).unwrap();
        assert_eq!(schema.subplots.len(), 1);
        assert_eq!(schema.subplots[0].layers.len(), 2);
        assert_eq!(registered_layers(fig.id()).len(), 2);
        forget_figure(fig.id());
    }

    #[test]
    fn emptied_container_names_layer() {
        let fig = Figure::new();
        let ax = fig.add_subplot(1, 1, 0, 0).unwrap();
        let out = bar_on(&ax);
        register_call(PlotType::Bar, &out).unwrap();
        fig.write(|f| {
            if let plotkit::Container::Bar(b) = &mut f.axes[0].containers[0] {
                b.patches.clear();
            }
        });
        let err = finalize_figure(&fig).unwrap_err();
        assert!(err.to_string().starts_with("subplot (0, 0) layer 0 (bar)"), "{err}");
        forget_figure(fig.id());
    }
}
