// Independent reader of plotted values, used to check extraction output.
//
// Values come straight from the drawn artists and tick labels, not from the
// extractor code, and the schema side is read from the serialized JSON.

#![allow(dead_code)]

use std::path::{Path, PathBuf};

use maidr::fixtures::{Kind, Layer};
use maidr::plotkit::artist::{Line2D, Orientation};
use maidr::plotkit::figure::{AxesKind, AxisData, LegendSwatch, Ticks};
use maidr::plotkit::{Artist, ArtistId, AxesData, Color, Container, Figure};
use maidr::PlotType;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REL_TOL: f64 = 1e-9;
pub const BLESS_ENV: &str = "MAIDR_BLESS_ORACLES";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub label: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleLayer {
    pub row: usize,
    pub col: usize,
    #[serde(rename = "type")]
    pub plot_type: String,
    pub points: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleFile {
    pub fixture: String,
    pub layer: String,
    pub layers: Vec<OracleLayer>,
}

pub fn oracle_dir() -> PathBuf {
    // also compiled into the bench crate's tests, hence the detour
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/oracles")
}

pub fn oracle_path(kind: Kind, layer: Layer) -> PathBuf {
    oracle_dir().join(format!("{}-{}.json", kind.slug(), layer))
}

pub fn load_oracle(kind: Kind, layer: Layer) -> Option<OracleFile> {
    let text = std::fs::read_to_string(oracle_path(kind, layer)).ok()?;
    serde_json::from_str(&text).ok()
}

pub fn bless_requested() -> bool {
    std::env::var_os(BLESS_ENV).is_some_and(|v| !v.is_empty() && v != "0")
}

pub fn write_oracle(file: &OracleFile, kind: Kind, layer: Layer) {
    std::fs::create_dir_all(oracle_dir()).unwrap();
    let text = serde_json::to_string_pretty(file).unwrap() + "\n";
    std::fs::write(oracle_path(kind, layer), text).unwrap();
}

fn close(a: f64, b: f64) -> bool {
    if a == b || (a.is_nan() && b.is_nan()) {
        return true;
    }
    (a - b).abs() <= REL_TOL * a.abs().max(b.abs())
}

/// First mismatch between two layer lists, or `None` when they agree.
pub fn compare(expected: &[OracleLayer], got: &[OracleLayer]) -> Option<String> {
    if expected.len() != got.len() {
        return Some(format!("layer count {} != {}", got.len(), expected.len()));
    }
    for (i, (e, g)) in expected.iter().zip(got).enumerate() {
        if (e.row, e.col, &e.plot_type) != (g.row, g.col, &g.plot_type) {
            return Some(format!("layer {i}: ({}, {}, {}) != ({}, {}, {})", g.row, g.col, g.plot_type, e.row, e.col, e.plot_type));
        }
        if e.points.len() != g.points.len() {
            return Some(format!("layer {i}: {} points, expected {}", g.points.len(), e.points.len()));
        }
        for (j, (ep, gp)) in e.points.iter().zip(&g.points).enumerate() {
            if ep.label != gp.label {
                return Some(format!("layer {i} point {j}: label {:?} != {:?}", gp.label, ep.label));
            }
            if ep.values.len() != gp.values.len() || !ep.values.iter().zip(&gp.values).all(|(a, b)| close(*a, *b)) {
                return Some(format!("layer {i} point {j}: {:?} != {:?}", gp.values, ep.values));
            }
        }
    }
    None
}

fn fmt_num(v: f64) -> String {
    format!("{v}")
}

fn label_of(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => fmt_num(n.as_f64().unwrap()),
        other => other.to_string(),
    }
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("missing number `{key}` in {v}"))
}

/// Reads every layer of a serialized schema into the oracle's point shape.
pub fn from_payload(json: &str) -> Vec<OracleLayer> {
    let root: Value = serde_json::from_str(json).unwrap();
    let mut out = Vec::new();
    for sp in root["subplots"].as_array().unwrap() {
        let row = sp["row"].as_u64().unwrap() as usize;
        let col = sp["col"].as_u64().unwrap() as usize;
        for layer in sp["layers"].as_array().unwrap() {
            let ty = layer["type"].as_str().unwrap().to_string();
            let data = &layer["data"];
            let items = || data.as_array().unwrap().iter();
            let points = match ty.as_str() {
                "bar" => items().map(|p| Point { label: label_of(&p["x"]), values: vec![num(p, "y")] }).collect(),
                "stacked_bar" | "dodged_bar" => items()
                    .map(|p| Point {
                        label: format!("{}|{}", label_of(&p["x"]), p["fill"].as_str().unwrap()),
                        values: vec![num(p, "y")],
                    })
                    .collect(),
                "histogram" => items()
                    .map(|p| Point { label: String::new(), values: vec![num(p, "x"), num(p, "y"), num(p, "xmin"), num(p, "xmax")] })
                    .collect(),
                "line" | "scatter" => {
                    items().map(|p| Point { label: String::new(), values: vec![num(p, "x"), num(p, "y")] }).collect()
                }
                "multiline" => items()
                    .map(|p| Point { label: p["series_label"].as_str().unwrap().to_string(), values: vec![num(p, "x"), num(p, "y")] })
                    .collect(),
                "box_horizontal" | "box_vertical" => {
                    let key = if ty == "box_vertical" { "x_levels" } else { "y_levels" };
                    let levels: Vec<String> = layer["axes"][key]
                        .as_array()
                        .map(|a| a.iter().map(label_of).collect())
                        .unwrap_or_default();
                    items()
                        .enumerate()
                        .map(|(i, p)| {
                            let mut values =
                                ["lower_extreme", "q1", "median", "q3", "upper_extreme"].map(|k| num(p, k)).to_vec();
                            values.extend(p["outliers"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()));
                            Point { label: levels.get(i).cloned().unwrap_or_else(|| i.to_string()), values }
                        })
                        .collect()
                }
                "heatmap" => {
                    let data = &data[0];
                    let rows: Vec<String> = data["row_labels"].as_array().unwrap().iter().map(label_of).collect();
                    let cols: Vec<String> = data["col_labels"].as_array().unwrap().iter().map(label_of).collect();
                    let mut pts = Vec::new();
                    for (r, row_vals) in data["values"].as_array().unwrap().iter().enumerate() {
                        for (c, v) in row_vals.as_array().unwrap().iter().enumerate() {
                            pts.push(Point { label: format!("{}|{}", rows[r], cols[c]), values: vec![v.as_f64().unwrap_or(f64::NAN)] });
                        }
                    }
                    pts
                }
                other => panic!("unknown layer type {other}"),
            };
            out.push(OracleLayer { row, col, plot_type: ty, points });
        }
    }
    out
}

// Tick labels of an axis, when it is categorical.
fn tick_labels(axis: &AxisData) -> Option<Vec<(f64, String)>> {
    match &axis.ticks {
        Ticks::Fixed { locs, labels: Some(labels) } => {
            Some(locs.iter().copied().zip(labels.iter().cloned()).collect())
        }
        Ticks::Auto => axis
            .categories
            .as_ref()
            .map(|c| c.iter().enumerate().map(|(i, n)| (i as f64, n.clone())).collect()),
        _ => None,
    }
}

fn nearest(ticks: &[(f64, String)], v: f64) -> Option<(usize, &str)> {
    ticks
        .iter()
        .enumerate()
        .filter(|(_, (loc, _))| (loc - v).abs() <= 0.5)
        .min_by(|a, b| (a.1 .0 - v).abs().total_cmp(&(b.1 .0 - v).abs()))
        .map(|(i, (_, l))| (i, l.as_str()))
}

fn position_label(ticks: Option<&[(f64, String)]>, v: f64) -> String {
    ticks.and_then(|t| nearest(t, v)).map_or_else(|| fmt_num(v), |(_, l)| l.to_string())
}

fn position_rank(ticks: Option<&[(f64, String)]>, v: f64) -> f64 {
    ticks.and_then(|t| nearest(t, v)).map_or(v, |(i, _)| ticks.unwrap()[i].0)
}

fn legend_for_patch(ax: &AxesData, color: Color) -> Option<String> {
    ax.legend.as_ref()?.entries.iter().find_map(|(l, s)| match s {
        LegendSwatch::Patch(c) if *c == color => Some(l.clone()),
        _ => None,
    })
}

fn legend_for_line(ax: &AxesData, color: Color) -> Option<String> {
    ax.legend.as_ref()?.entries.iter().find_map(|(l, s)| match s {
        LegendSwatch::Line(c) if *c == color => Some(l.clone()),
        _ => None,
    })
}

struct Bar {
    center: f64,
    base: f64,
    height: f64,
    fill: Color,
}

fn bar_rects(ax: &AxesData) -> Vec<Bar> {
    let mut out = Vec::new();
    for c in &ax.containers {
        let Container::Bar(b) = c else { continue };
        for id in &b.patches {
            let r = ax.artist(*id).and_then(|a| a.as_rectangle()).unwrap();
            out.push(Bar { center: r.x + r.width / 2.0, base: r.y, height: r.height, fill: r.fill });
        }
    }
    out
}

fn box_part_ids(ax: &AxesData) -> Vec<ArtistId> {
    ax.containers
        .iter()
        .filter_map(|c| match c {
            Container::Box(b) => Some(b),
            _ => None,
        })
        .flat_map(|b| b.boxes.iter())
        .flat_map(|b| [b.body, b.median, b.whiskers[0], b.whiskers[1], b.caps[0], b.caps[1], b.fliers])
        .collect()
}

fn plain_lines(ax: &AxesData) -> Vec<&Artist> {
    let skip = box_part_ids(ax);
    ax.artists
        .iter()
        .filter(|a| !skip.contains(&a.id))
        .filter(|a| a.as_line().is_some_and(|l| l.connected && l.marker.is_none()))
        .collect()
}

fn line_points(l: &Line2D) -> Vec<[f64; 2]> {
    l.xdata
        .iter()
        .zip(&l.ydata)
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .map(|(x, y)| [*x, *y])
        .collect()
}

fn read_layer(ax: &AxesData, ty: PlotType) -> Vec<Point> {
    let xt = tick_labels(&ax.xaxis);
    let yt = tick_labels(&ax.yaxis);
    match ty {
        PlotType::Bar => {
            let mut bars = bar_rects(ax);
            bars.sort_by(|a, b| a.center.total_cmp(&b.center));
            bars.iter()
                .map(|b| Point { label: position_label(xt.as_deref(), b.center), values: vec![b.height] })
                .collect()
        }
        PlotType::StackedBar | PlotType::DodgedBar => {
            let bars = bar_rects(ax);
            let mut groups: Vec<Color> = Vec::new();
            for b in &bars {
                if !groups.contains(&b.fill) {
                    groups.push(b.fill);
                }
            }
            let mut keyed: Vec<(f64, f64, Point)> = bars
                .iter()
                .map(|b| {
                    let g = groups.iter().position(|c| *c == b.fill).unwrap();
                    let fill = legend_for_patch(ax, b.fill).unwrap_or_else(|| format!("group-{g}"));
                    let within = if ty == PlotType::StackedBar { b.base } else { b.center };
                    (
                        position_rank(xt.as_deref(), b.center),
                        within,
                        Point { label: format!("{}|{fill}", position_label(xt.as_deref(), b.center)), values: vec![b.height] },
                    )
                })
                .collect();
            keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
            keyed.into_iter().map(|(_, _, p)| p).collect()
        }
        PlotType::Histogram => {
            let mut bars: Vec<_> = ax
                .containers
                .iter()
                .filter_map(|c| match c {
                    Container::Bar(b) => Some(b),
                    _ => None,
                })
                .flat_map(|b| b.patches.iter())
                .map(|id| ax.artist(*id).and_then(|a| a.as_rectangle()).unwrap().clone())
                .collect();
            bars.sort_by(|a, b| a.x.total_cmp(&b.x));
            bars.iter()
                .map(|r| Point {
                    label: String::new(),
                    values: vec![r.x + r.width / 2.0, r.height, r.x, r.x + r.width],
                })
                .collect()
        }
        PlotType::Line => plain_lines(ax)
            .iter()
            .flat_map(|a| line_points(a.as_line().unwrap()))
            .map(|[x, y]| Point { label: String::new(), values: vec![x, y] })
            .collect(),
        PlotType::MultiLine => plain_lines(ax)
            .iter()
            .enumerate()
            .flat_map(|(i, a)| {
                let l = a.as_line().unwrap();
                let name = legend_for_line(ax, l.color)
                    .or_else(|| a.label.clone().filter(|s| !s.starts_with('_')))
                    .unwrap_or_else(|| format!("series-{i}"));
                line_points(l).into_iter().map(move |[x, y]| Point { label: name.clone(), values: vec![x, y] })
            })
            .collect(),
        PlotType::Scatter => ax
            .artists
            .iter()
            .filter_map(|a| a.as_collection())
            .flat_map(|c| c.offsets.iter())
            .map(|(x, y)| Point { label: String::new(), values: vec![*x, *y] })
            .collect(),
        PlotType::BoxHorizontal | PlotType::BoxVertical => {
            let mut rows = Vec::new();
            for c in &ax.containers {
                let Container::Box(bc) = c else { continue };
                let vertical = bc.orientation == Orientation::Vertical;
                let (pos_ticks, val) = if vertical { (xt.as_deref(), 1) } else { (yt.as_deref(), 0) };
                for b in &bc.boxes {
                    let body = ax.artist(b.body).and_then(|a| a.as_rectangle()).unwrap();
                    let (lo, hi, pos) = if vertical {
                        (body.y, body.y + body.height, body.x + body.width / 2.0)
                    } else {
                        (body.x, body.x + body.width, body.y + body.height / 2.0)
                    };
                    let coords = |id| {
                        let l = ax.artist(id).and_then(|a| a.as_line()).unwrap();
                        if val == 1 { l.ydata.clone() } else { l.xdata.clone() }
                    };
                    let median = coords(b.median)[0];
                    let whisk: Vec<f64> = coords(b.whiskers[0]).into_iter().chain(coords(b.whiskers[1])).collect();
                    let lower = whisk.iter().copied().fold(f64::INFINITY, f64::min);
                    let upper = whisk.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    let mut values = vec![lower, lo.min(hi), median, lo.max(hi), upper];
                    values.extend(coords(b.fliers));
                    rows.push((pos, Point { label: position_label(pos_ticks, pos), values }));
                }
            }
            rows.sort_by(|a, b| a.0.total_cmp(&b.0));
            rows.into_iter().map(|(_, p)| p).collect()
        }
        PlotType::Heatmap => {
            let mesh = ax.artists.iter().find_map(|a| a.as_mesh()).unwrap();
            let center = |e: &[f64], i: usize| (e[i] + e[i + 1]) / 2.0;
            let label = |t: Option<&[(f64, String)]>, v: f64, i: usize| {
                t.and_then(|t| nearest(t, v)).map_or_else(|| i.to_string(), |(_, l)| l.to_string())
            };
            let mut order: Vec<usize> = (0..mesh.rows).collect();
            order.sort_by(|&a, &b| {
                let (ya, yb) = (center(&mesh.y_edges, a), center(&mesh.y_edges, b));
                if ax.yaxis.inverted { ya.total_cmp(&yb) } else { yb.total_cmp(&ya) }
            });
            let mut pts = Vec::new();
            for r in order {
                let rl = label(yt.as_deref(), center(&mesh.y_edges, r), r);
                for c in 0..mesh.cols {
                    let cl = label(xt.as_deref(), center(&mesh.x_edges, c), c);
                    pts.push(Point { label: format!("{rl}|{cl}"), values: vec![mesh.values[r * mesh.cols + c]] });
                }
            }
            pts
        }
    }
}

/// Reads the layers a fixture is known to contain straight from its artists.
pub fn read_figure(fig: &Figure, layers: &[(usize, usize, PlotType)]) -> Vec<OracleLayer> {
    fig.read(|f| {
        layers
            .iter()
            .map(|&(row, col, ty)| {
                let ax = f
                    .axes
                    .iter()
                    .filter(|a| a.kind == AxesKind::Standard)
                    .find(|a| a.spec.map_or((0, 0), |s| (s.row, s.col)) == (row, col))
                    .unwrap_or_else(|| panic!("no axes at ({row}, {col})"));
                OracleLayer { row, col, plot_type: ty.as_str().to_string(), points: read_layer(ax, ty) }
            })
            .collect()
    })
}
