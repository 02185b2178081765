use plotkit::artist::{Artist, ArtistId, BoxArtists, Container, ContainerId, Line2D, Orientation, Rectangle};
use plotkit::figure::AxesData;

use super::mixins::{axis_info, category_at, category_key, category_ticks, extract_container, merge_fragments, Axis, Field, Fragment};
use super::{Base, ExtractionError, Extractor, Result, Tracked};
use crate::schema::{
    BarPoint, BoxPoint, GroupedPoint, HeatmapGrid, HistogramPoint, LayerData, LayerSchema, PlotType, SeriesPoint,
    XValue, XyPoint,
};

fn artist(ax: &AxesData, id: ArtistId) -> Result<&Artist> {
    ax.artist(id).ok_or(ExtractionError::MissingArtist(id))
}

fn rect(ax: &AxesData, id: ArtistId) -> Result<&Rectangle> {
    artist(ax, id)?.as_rectangle().ok_or(ExtractionError::MissingArtist(id))
}

fn line(ax: &AxesData, id: ArtistId) -> Result<&Line2D> {
    artist(ax, id)?.as_line().ok_or(ExtractionError::MissingArtist(id))
}

fn container(ax: &AxesData, id: ContainerId) -> Result<&Container> {
    ax.container(id).ok_or(ExtractionError::MissingContainer(id))
}

fn one_each(ids: impl IntoIterator<Item = ArtistId>) -> Vec<Tracked> {
    ids.into_iter()
        .enumerate()
        .map(|(i, artist)| Tracked { artist, points: i..i + 1 })
        .collect()
}

// Selector listing each tracked primitive's id, or the figure-wide prefix
// when none has been assigned yet.
fn selector(base: &Base, ax: &AxesData, tracked: &[Tracked]) -> String {
    let ids: Vec<String> = tracked
        .iter()
        .filter_map(|t| ax.artist(t.artist)?.gid.clone())
        .filter(|g| g.starts_with("maidr-"))
        .map(|g| format!("[maidr-id=\"{g}\"]"))
        .collect();
    if ids.is_empty() {
        format!("[maidr-id^=\"maidr-{}-\"]", base.axes.figure)
    } else {
        ids.join(",")
    }
}

fn assemble(base: &Base, ax: &AxesData, tracked: &[Tracked], data: LayerData) -> Result<LayerSchema> {
    if data.is_empty() {
        return Err(ExtractionError::Empty(data.plot_type()));
    }
    merge_fragments(vec![
        Fragment::new([Field::Axes(axis_info(ax))]),
        Fragment::new([Field::Data(data)]),
        Fragment::new([Field::Selector(selector(base, ax, tracked))]),
    ])?
    .into_layer()
}

macro_rules! base_accessors {
    () => {
        fn base(&self) -> &Base {
            &self.0
        }
        fn base_mut(&mut self) -> &mut Base {
            &mut self.0
        }
    };
}

fn bar_patches(base: &Base, ax: &AxesData) -> Result<Vec<ArtistId>> {
    let mut out = Vec::new();
    for &c in &base.recorded.containers {
        match container(ax, c)? {
            Container::Bar(_) => out.extend(extract_container(container(ax, c)?)?),
            other => {
                return Err(ExtractionError::UnknownContainer {
                    found: other.type_name(),
                    recognized: &["BarContainer"],
                })
            }
        }
    }
    Ok(out)
}

#[derive(Debug)]
pub struct BarExtractor(pub Base);

impl Extractor for BarExtractor {
    fn plot_type(&self) -> PlotType {
        PlotType::Bar
    }
    base_accessors!();

    fn tracked_primitives(&self, ax: &AxesData) -> Result<Vec<Tracked>> {
        Ok(one_each(bar_patches(&self.0, ax)?))
    }

    fn extract(&self, ax: &AxesData) -> Result<LayerSchema> {
        let tracked = self.tracked_primitives(ax)?;
        let ticks = category_ticks(ax, Axis::X);
        let data = tracked
            .iter()
            .map(|t| {
                let r = rect(ax, t.artist)?;
                Ok(BarPoint {
                    x: category_at(ticks.as_deref(), r.center_x()),
                    y: r.height,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        assemble(&self.0, ax, &tracked, LayerData::Bar(data))
    }
}

// Patches of a grouped bar layer, category-major, with their group label.
fn grouped(base: &Base, ax: &AxesData) -> Result<Vec<(ArtistId, GroupedPoint)>> {
    let ticks = category_ticks(ax, Axis::X);
    let legend: Vec<&str> = ax
        .legend
        .iter()
        .flat_map(|l| l.entries.iter().map(|(name, _)| name.as_str()))
        .collect();
    let mut rows = Vec::new();
    for (j, &c) in base.recorded.containers.iter().enumerate() {
        let cont = container(ax, c)?;
        let fill = match cont.label() {
            Some(l) if legend.contains(&l) => l.to_string(),
            _ => format!("group-{j}"),
        };
        for (k, id) in extract_container(cont)?.into_iter().enumerate() {
            let r = rect(ax, id)?;
            let x = category_at(ticks.as_deref(), r.center_x());
            let key = category_key(ticks.as_deref(), &x);
            rows.push((key, j, k, id, GroupedPoint { x, fill: fill.clone(), y: r.height }));
        }
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    Ok(rows.into_iter().map(|(_, _, _, id, p)| (id, p)).collect())
}

fn grouped_layer(base: &Base, ax: &AxesData, wrap: fn(Vec<GroupedPoint>) -> LayerData) -> Result<LayerSchema> {
    let (ids, points): (Vec<_>, Vec<_>) = grouped(base, ax)?.into_iter().unzip();
    assemble(base, ax, &one_each(ids), wrap(points))
}

#[derive(Debug)]
pub struct StackedBarExtractor(pub Base);

impl Extractor for StackedBarExtractor {
    fn plot_type(&self) -> PlotType {
        PlotType::StackedBar
    }
    base_accessors!();

    fn tracked_primitives(&self, ax: &AxesData) -> Result<Vec<Tracked>> {
        Ok(one_each(grouped(&self.0, ax)?.into_iter().map(|(id, _)| id)))
    }

    fn extract(&self, ax: &AxesData) -> Result<LayerSchema> {
        grouped_layer(&self.0, ax, LayerData::StackedBar)
    }
}

#[derive(Debug)]
pub struct DodgedBarExtractor(pub Base);

impl Extractor for DodgedBarExtractor {
    fn plot_type(&self) -> PlotType {
        PlotType::DodgedBar
    }
    base_accessors!();

    fn tracked_primitives(&self, ax: &AxesData) -> Result<Vec<Tracked>> {
        Ok(one_each(grouped(&self.0, ax)?.into_iter().map(|(id, _)| id)))
    }

    fn extract(&self, ax: &AxesData) -> Result<LayerSchema> {
        grouped_layer(&self.0, ax, LayerData::DodgedBar)
    }
}

#[derive(Debug)]
pub struct HistogramExtractor(pub Base);

impl Extractor for HistogramExtractor {
    fn plot_type(&self) -> PlotType {
        PlotType::Histogram
    }
    base_accessors!();

    fn tracked_primitives(&self, ax: &AxesData) -> Result<Vec<Tracked>> {
        Ok(one_each(bar_patches(&self.0, ax)?))
    }

    fn extract(&self, ax: &AxesData) -> Result<LayerSchema> {
        let tracked = self.tracked_primitives(ax)?;
        let data = tracked
            .iter()
            .map(|t| {
                let r = rect(ax, t.artist)?;
                Ok(HistogramPoint {
                    x: r.center_x(),
                    y: r.height,
                    xmin: r.x,
                    xmax: r.x + r.width,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        assemble(&self.0, ax, &tracked, LayerData::Histogram(data))
    }
}

fn finite_vertices(l: &Line2D) -> impl Iterator<Item = XyPoint> + '_ {
    l.xdata
        .iter()
        .zip(&l.ydata)
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .map(|(&x, &y)| XyPoint { x, y })
}

// Recorded lines with their vertex ranges in flattened order.
fn line_layers(base: &Base, ax: &AxesData) -> Result<Vec<Tracked>> {
    let mut start = 0;
    base.recorded
        .artists
        .iter()
        .map(|&id| {
            let n = finite_vertices(line(ax, id)?).count();
            let t = Tracked {
                artist: id,
                points: start..start + n,
            };
            start += n;
            Ok(t)
        })
        .collect()
}

#[derive(Debug)]
pub struct LineExtractor(pub Base);

impl Extractor for LineExtractor {
    fn plot_type(&self) -> PlotType {
        PlotType::Line
    }
    base_accessors!();

    fn tracked_primitives(&self, ax: &AxesData) -> Result<Vec<Tracked>> {
        line_layers(&self.0, ax)
    }

    fn extract(&self, ax: &AxesData) -> Result<LayerSchema> {
        let tracked = self.tracked_primitives(ax)?;
        let mut data = Vec::new();
        for t in &tracked {
            data.extend(finite_vertices(line(ax, t.artist)?));
        }
        assemble(&self.0, ax, &tracked, LayerData::Line(data))
    }
}

#[derive(Debug)]
pub struct MultiLineExtractor(pub Base);

impl Extractor for MultiLineExtractor {
    fn plot_type(&self) -> PlotType {
        PlotType::MultiLine
    }
    base_accessors!();

    fn tracked_primitives(&self, ax: &AxesData) -> Result<Vec<Tracked>> {
        line_layers(&self.0, ax)
    }

    fn extract(&self, ax: &AxesData) -> Result<LayerSchema> {
        let tracked = self.tracked_primitives(ax)?;
        let mut data = Vec::new();
        for (i, t) in tracked.iter().enumerate() {
            let a = artist(ax, t.artist)?;
            let label = a.label.clone().unwrap_or_else(|| format!("line-{i}"));
            let l = a.as_line().ok_or(ExtractionError::MissingArtist(t.artist))?;
            data.extend(finite_vertices(l).map(|p| SeriesPoint {
                x: p.x,
                y: p.y,
                series_label: label.clone(),
            }));
        }
        assemble(&self.0, ax, &tracked, LayerData::MultiLine(data))
    }
}

#[derive(Debug)]
pub struct ScatterExtractor(pub Base);

impl Extractor for ScatterExtractor {
    fn plot_type(&self) -> PlotType {
        PlotType::Scatter
    }
    base_accessors!();

    fn tracked_primitives(&self, ax: &AxesData) -> Result<Vec<Tracked>> {
        let mut start = 0;
        self.0
            .recorded
            .artists
            .iter()
            .map(|&id| {
                let c = artist(ax, id)?
                    .as_collection()
                    .ok_or(ExtractionError::MissingArtist(id))?;
                let n = c.offsets.len();
                start += n;
                Ok(Tracked {
                    artist: id,
                    points: start - n..start,
                })
            })
            .collect()
    }

    fn extract(&self, ax: &AxesData) -> Result<LayerSchema> {
        let tracked = self.tracked_primitives(ax)?;
        let mut data = Vec::new();
        for t in &tracked {
            let c = artist(ax, t.artist)?.as_collection().expect("checked when tracking");
            data.extend(c.offsets.iter().map(|&(x, y)| XyPoint { x, y }));
        }
        assemble(&self.0, ax, &tracked, LayerData::Scatter(data))
    }
}

#[derive(Debug)]
pub struct BoxExtractor {
    base: Base,
    orientation: Orientation,
}

impl BoxExtractor {
    pub fn vertical(base: Base) -> Self {
        BoxExtractor {
            base,
            orientation: Orientation::Vertical,
        }
    }

    pub fn horizontal(base: Base) -> Self {
        BoxExtractor {
            base,
            orientation: Orientation::Horizontal,
        }
    }

    fn boxes<'a>(&self, ax: &'a AxesData) -> Result<Vec<&'a BoxArtists>> {
        let mut out = Vec::new();
        for &c in &self.base.recorded.containers {
            match container(ax, c)? {
                Container::Box(b) if b.orientation == self.orientation => out.extend(b.boxes.iter()),
                Container::Box(_) => {
                    return Err(ExtractionError::Inconsistent("box orientation changed".into()))
                }
                other => {
                    return Err(ExtractionError::UnknownContainer {
                        found: other.type_name(),
                        recognized: &["BoxContainer"],
                    })
                }
            }
        }
        Ok(out)
    }

    // Value-axis coordinates of a line.
    fn values<'a>(&self, l: &'a Line2D) -> &'a [f64] {
        match self.orientation {
            Orientation::Vertical => &l.ydata,
            Orientation::Horizontal => &l.xdata,
        }
    }

    fn summary(&self, ax: &AxesData, b: &BoxArtists) -> Result<BoxPoint> {
        let lower = self.values(line(ax, b.whiskers[0])?);
        let upper = self.values(line(ax, b.whiskers[1])?);
        let median = self.values(line(ax, b.median)?);
        let outliers = self.values(line(ax, b.fliers)?).to_vec();
        rect(ax, b.body)?;
        let (&q1, &q3, &med) = match (lower.first(), upper.first(), median.first()) {
            (Some(a), Some(b), Some(c)) => (a, b, c),
            _ => return Err(ExtractionError::Inconsistent("box line has no vertices".into())),
        };
        let lo = lower.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = upper.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(BoxPoint {
            lower_extreme: lo,
            q1,
            median: med,
            q3,
            upper_extreme: hi,
            outliers,
        })
    }
}

impl Extractor for BoxExtractor {
    fn plot_type(&self) -> PlotType {
        match self.orientation {
            Orientation::Vertical => PlotType::BoxVertical,
            Orientation::Horizontal => PlotType::BoxHorizontal,
        }
    }

    fn base(&self) -> &Base {
        &self.base
    }

    fn base_mut(&mut self) -> &mut Base {
        &mut self.base
    }

    fn tracked_primitives(&self, ax: &AxesData) -> Result<Vec<Tracked>> {
        Ok(one_each(self.boxes(ax)?.into_iter().map(|b| b.body)))
    }

    fn extract(&self, ax: &AxesData) -> Result<LayerSchema> {
        let tracked = self.tracked_primitives(ax)?;
        let points = self
            .boxes(ax)?
            .into_iter()
            .map(|b| self.summary(ax, b))
            .collect::<Result<Vec<_>>>()?;
        let data = match self.orientation {
            Orientation::Vertical => LayerData::BoxVertical(points),
            Orientation::Horizontal => LayerData::BoxHorizontal(points),
        };
        assemble(&self.base, ax, &tracked, data)
    }
}

#[derive(Debug)]
pub struct HeatmapExtractor(pub Base);

impl HeatmapExtractor {
    fn mesh_id(&self) -> Result<ArtistId> {
        self.0
            .recorded
            .artists
            .first()
            .copied()
            .ok_or(ExtractionError::Empty(PlotType::Heatmap))
    }
}

fn cell_labels(ticks: Option<&[(f64, String)]>, edges: &[f64]) -> Vec<String> {
    edges
        .windows(2)
        .enumerate()
        .map(|(i, w)| match category_at(ticks, (w[0] + w[1]) / 2.0) {
            XValue::Cat(l) => l,
            XValue::Num(_) => i.to_string(),
        })
        .collect()
}

impl Extractor for HeatmapExtractor {
    fn plot_type(&self) -> PlotType {
        PlotType::Heatmap
    }
    base_accessors!();

    fn tracked_primitives(&self, ax: &AxesData) -> Result<Vec<Tracked>> {
        let id = self.mesh_id()?;
        let m = artist(ax, id)?.as_mesh().ok_or(ExtractionError::MissingArtist(id))?;
        Ok(vec![Tracked {
            artist: id,
            points: 0..m.rows * m.cols,
        }])
    }

    fn extract(&self, ax: &AxesData) -> Result<LayerSchema> {
        let tracked = self.tracked_primitives(ax)?;
        let id = tracked[0].artist;
        let m = artist(ax, id)?.as_mesh().expect("checked when tracking");
        let mut rows: Vec<usize> = (0..m.rows).collect();
        let mut row_labels = cell_labels(category_ticks(ax, Axis::Y).as_deref(), &m.y_edges);
        // rows listed top to bottom as drawn
        if !ax.yaxis.inverted {
            rows.reverse();
            row_labels.reverse();
        }
        let grid = HeatmapGrid {
            values: rows
                .iter()
                .map(|&r| (0..m.cols).map(|c| m.value(r, c)).collect())
                .collect(),
            row_labels,
            col_labels: cell_labels(category_ticks(ax, Axis::X).as_deref(), &m.x_edges),
        };
        assemble(&self.0, ax, &tracked, LayerData::Heatmap(grid))
    }
}
