//! Helpers shared by the concrete extractors.

use plotkit::artist::{ArtistId, Container};
use plotkit::figure::{AxesData, AxisData, Ticks};

use super::ExtractionError;
use crate::schema::{AxisInfo, LayerData, LayerSchema, XValue};

/// Flat, draw-ordered primitives of a container.
pub fn extract_container(container: &Container) -> Result<Vec<ArtistId>, ExtractionError> {
    match container {
        Container::Bar(b) => Ok(b.patches.clone()),
        Container::Box(b) => Ok(b
            .boxes
            .iter()
            .flat_map(|bx| {
                [bx.body, bx.whiskers[0], bx.whiskers[1], bx.caps[0], bx.caps[1], bx.median, bx.fliers]
            })
            .collect()),
        other => Err(ExtractionError::UnknownContainer {
            found: other.type_name(),
            recognized: &["BarContainer", "BoxContainer"],
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

fn axis_data(ax: &AxesData, axis: Axis) -> &AxisData {
    match axis {
        Axis::X => &ax.xaxis,
        Axis::Y => &ax.yaxis,
    }
}

/// Tick positions and labels of a categorical axis, in axis order.
pub(crate) fn category_ticks(ax: &AxesData, axis: Axis) -> Option<Vec<(f64, String)>> {
    let data = axis_data(ax, axis);
    let categorical = match &data.ticks {
        Ticks::Fixed { labels, .. } => labels.is_some(),
        Ticks::Auto => data.categories.is_some(),
    };
    if !categorical {
        return None;
    }
    let (xlim, ylim) = ax.view_limits();
    let limits = if axis == Axis::X { xlim } else { ylim };
    let mut ticks = data.resolved_ticks(limits);
    ticks.sort_by(|a, b| a.0.total_cmp(&b.0));
    Some(ticks)
}

/// Category labels of `axis` in axis order, as the rendered tick labels show them.
pub fn extract_levels(ax: &AxesData, axis: Axis) -> Result<Vec<String>, ExtractionError> {
    category_ticks(ax, axis)
        .map(|t| t.into_iter().map(|(_, l)| l).collect())
        .ok_or(ExtractionError::NumericAxis(axis))
}

/// The category whose tick is nearest to `v` (within half a unit), else `v` itself.
pub(crate) fn category_at(ticks: Option<&[(f64, String)]>, v: f64) -> XValue {
    let Some(ticks) = ticks else {
        return XValue::Num(v);
    };
    ticks
        .iter()
        .map(|(loc, label)| ((loc - v).abs(), label))
        .filter(|(d, _)| *d <= 0.5)
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map_or(XValue::Num(v), |(_, l)| XValue::Cat(l.clone()))
}

/// Sort key placing a category in axis order; numeric positions sort by value.
pub(crate) fn category_key(ticks: Option<&[(f64, String)]>, x: &XValue) -> f64 {
    match (x, ticks) {
        (XValue::Num(v), _) => *v,
        (XValue::Cat(label), Some(t)) => t.iter().find(|(_, l)| l == label).map_or(f64::INFINITY, |(loc, _)| *loc),
        (XValue::Cat(_), None) => f64::INFINITY,
    }
}

fn levels_if_distinct(levels: Vec<String>) -> Option<Vec<String>> {
    let mut seen = std::collections::HashSet::new();
    (!levels.is_empty() && levels.iter().all(|l| seen.insert(l.as_str()))).then_some(levels)
}

/// Labels, title and categorical levels of an axes.
pub(crate) fn axis_info(ax: &AxesData) -> AxisInfo {
    AxisInfo {
        x_label: ax.xlabel.clone(),
        y_label: ax.ylabel.clone(),
        title: ax.title.clone(),
        x_levels: extract_levels(ax, Axis::X).ok().and_then(levels_if_distinct),
        y_levels: extract_levels(ax, Axis::Y).ok().and_then(levels_if_distinct),
    }
}

/// One field of a layer computed on its own.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Axes(AxisInfo),
    XLevels(Option<Vec<String>>),
    YLevels(Option<Vec<String>>),
    Data(LayerData),
    Selector(String),
}

impl Field {
    pub fn key(&self) -> &'static str {
        match self {
            Field::Axes(_) => "axes",
            Field::XLevels(_) => "axes.x_levels",
            Field::YLevels(_) => "axes.y_levels",
            Field::Data(_) => "data",
            Field::Selector(_) => "selector",
        }
    }
}

/// A set of fields plus the keys it may override when merged after others.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Fragment {
    pub fields: Vec<Field>,
    pub overrides: Vec<&'static str>,
}

impl Fragment {
    pub fn new(fields: impl IntoIterator<Item = Field>) -> Self {
        Fragment {
            fields: fields.into_iter().collect(),
            overrides: Vec::new(),
        }
    }

    pub fn overriding(mut self, key: &'static str) -> Self {
        self.overrides.push(key);
        self
    }
}

/// Merged layer fields. Level fields apply on top of `axes`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LayerFields {
    pub axes: Option<AxisInfo>,
    pub x_levels: Option<Option<Vec<String>>>,
    pub y_levels: Option<Option<Vec<String>>>,
    pub data: Option<LayerData>,
    pub selector: Option<String>,
}

impl LayerFields {
    pub fn into_layer(self) -> Result<LayerSchema, ExtractionError> {
        let mut axes = self.axes.unwrap_or_default();
        if let Some(x) = self.x_levels {
            axes.x_levels = x;
        }
        if let Some(y) = self.y_levels {
            axes.y_levels = y;
        }
        Ok(LayerSchema {
            axes,
            data: self.data.ok_or(ExtractionError::MissingField("data"))?,
            selector: self.selector.ok_or(ExtractionError::MissingField("selector"))?,
        })
    }
}

/// Combines fragments in order. A key may be set twice only when the later
/// fragment declares it as an override.
pub fn merge_fragments(fragments: Vec<Fragment>) -> Result<LayerFields, ExtractionError> {
    let mut out = LayerFields::default();
    let mut set: Vec<&'static str> = Vec::new();
    for frag in fragments {
        for field in frag.fields {
            let key = field.key();
            if set.contains(&key) && !frag.overrides.contains(&key) {
                return Err(ExtractionError::KeyCollision(key));
            }
            set.push(key);
            match field {
                Field::Axes(a) => out.axes = Some(a),
                Field::XLevels(l) => out.x_levels = Some(l),
                Field::YLevels(l) => out.y_levels = Some(l),
                Field::Data(d) => out.data = Some(d),
                Field::Selector(s) => out.selector = Some(s),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use plotkit::artist::ContainerId;
    use plotkit::{BarOptions, Figure};

    use super::*;
    use crate::schema::{BarPoint, PlotType};

    #[test]
    fn bar_container_in_patch_order() {
        let fig = Figure::new();
        let ax = fig.add_subplot(1, 1, 0, 0).unwrap();
        let c = ax.bar(vec![0.0, 1.0, 2.0, 3.0], &[1.0, 2.0, 3.0, 4.0], &BarOptions::default()).unwrap();
        ax.read(|a| {
            let container = a.container(c).unwrap();
            let Container::Bar(b) = container else { panic!() };
            assert_eq!(extract_container(container).unwrap(), b.patches);
            assert_eq!(extract_container(container).unwrap(), extract_container(container).unwrap());
        });
    }

    #[test]
    fn errorbar_container_is_unknown() {
        let fig = Figure::new();
        let ax = fig.add_subplot(1, 1, 0, 0).unwrap();
        let c = ax.errorbar(&[0.0], &[1.0], &[0.1], None).unwrap();
        let err = ax.read(|a| extract_container(a.container(c).unwrap())).unwrap_err();
        assert!(err.to_string().contains("BarContainer"), "{err}");
        let empty = Container::Bar(plotkit::artist::BarContainer {
            patches: vec![],
            label: None,
        });
        assert!(extract_container(&empty).unwrap().is_empty());
        let _ = ContainerId(0);
    }

    #[test]
    fn levels_follow_ticks() {
        let fig = Figure::new();
        let ax = fig.add_subplot(1, 1, 0, 0).unwrap();
        ax.bar(["a", "b", "c"], &[1.0, 2.0, 3.0], &BarOptions::default()).unwrap();
        assert_eq!(ax.read(|a| extract_levels(a, Axis::X)).unwrap(), ["a", "b", "c"]);
        assert!(matches!(
            ax.read(|a| extract_levels(a, Axis::Y)),
            Err(ExtractionError::NumericAxis(Axis::Y))
        ));
        ax.set_xticklabels(&["x", "y", "z"]).unwrap();
        assert_eq!(ax.read(|a| extract_levels(a, Axis::X)).unwrap(), ["x", "y", "z"]);
    }

    #[test]
    fn merging() {
        let axes = Fragment::new([Field::Axes(AxisInfo::default())]);
        let data = Fragment::new([
            Field::Data(LayerData::Bar(vec![BarPoint { x: "a".into(), y: 1.0 }])),
            Field::Selector("[a=\"b\"]".into()),
        ]);
        let layer = merge_fragments(vec![axes.clone(), data.clone()]).unwrap().into_layer().unwrap();
        assert_eq!(layer.plot_type(), PlotType::Bar);

        let single = merge_fragments(vec![axes.clone()]).unwrap();
        assert_eq!(single.axes, Some(AxisInfo::default()));

        let err = merge_fragments(vec![data.clone(), data.clone()]).unwrap_err();
        assert!(matches!(err, ExtractionError::KeyCollision("data")));

        let relabel = Fragment::new([Field::Selector("[c=\"d\"]".into())]).overriding("selector");
        let merged = merge_fragments(vec![data, relabel]).unwrap();
        assert_eq!(merged.selector.as_deref(), Some("[c=\"d\"]"));
    }
}
