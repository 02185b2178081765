//! Declarative chart description shared by extraction, rendering and the
//! browser engine, plus its JSON form and validator.
//!
//! JSON layout:
//!
//! ```json
//! {"id": "maidr-fig-1",
//!  "subplots": [{"row": 0, "col": 0,
//!                "layers": [{"type": "bar",
//!                            "axes": {"x_label": "", "y_label": "", "title": ""},
//!                            "data": [{"x": "a", "y": 2.0}],
//!                            "selector": "[maidr-id=\"maidr-1-1\"]"}]}]}
//! ```

use std::collections::HashSet;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlotType {
    Bar,
    StackedBar,
    DodgedBar,
    Histogram,
    Line,
    MultiLine,
    BoxHorizontal,
    BoxVertical,
    Heatmap,
    Scatter,
}

impl PlotType {
    pub const ALL: [PlotType; 10] = [
        PlotType::Bar,
        PlotType::StackedBar,
        PlotType::DodgedBar,
        PlotType::Histogram,
        PlotType::Line,
        PlotType::MultiLine,
        PlotType::BoxHorizontal,
        PlotType::BoxVertical,
        PlotType::Heatmap,
        PlotType::Scatter,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PlotType::Bar => "bar",
            PlotType::StackedBar => "stacked_bar",
            PlotType::DodgedBar => "dodged_bar",
            PlotType::Histogram => "histogram",
            PlotType::Line => "line",
            PlotType::MultiLine => "multiline",
            PlotType::BoxHorizontal => "box_horizontal",
            PlotType::BoxVertical => "box_vertical",
            PlotType::Heatmap => "heatmap",
            PlotType::Scatter => "scatter",
        }
    }

    pub fn parse(s: &str) -> Option<PlotType> {
        PlotType::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

impl fmt::Display for PlotType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AxisInfo {
    pub x_label: String,
    pub y_label: String,
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_levels: Option<Vec<String>>,
    /// Category labels of a categorical y axis (horizontal box plots, heatmap rows).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_levels: Option<Vec<String>>,
}

/// Bar position: a category label, or a numeric center for numeric axes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum XValue {
    Num(f64),
    Cat(String),
}

impl From<&str> for XValue {
    fn from(s: &str) -> Self {
        XValue::Cat(s.to_string())
    }
}

impl From<f64> for XValue {
    fn from(v: f64) -> Self {
        XValue::Num(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarPoint {
    pub x: XValue,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramPoint {
    pub x: f64,
    pub y: f64,
    pub xmin: f64,
    pub xmax: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XyPoint {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub x: f64,
    pub y: f64,
    pub series_label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupedPoint {
    pub x: XValue,
    pub fill: String,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxPoint {
    pub lower_extreme: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub upper_extreme: f64,
    pub outliers: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatmapGrid {
    /// `values[r][c]` is the cell in row `r` (top to bottom), column `c`.
    pub values: Vec<Vec<f64>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

/// Layer data; the variant determines the layer's plot type.
#[derive(Debug, Clone, PartialEq)]
pub enum LayerData {
    Bar(Vec<BarPoint>),
    StackedBar(Vec<GroupedPoint>),
    DodgedBar(Vec<GroupedPoint>),
    Histogram(Vec<HistogramPoint>),
    Line(Vec<XyPoint>),
    MultiLine(Vec<SeriesPoint>),
    BoxHorizontal(Vec<BoxPoint>),
    BoxVertical(Vec<BoxPoint>),
    Heatmap(HeatmapGrid),
    Scatter(Vec<XyPoint>),
}

impl LayerData {
    pub fn plot_type(&self) -> PlotType {
        match self {
            LayerData::Bar(_) => PlotType::Bar,
            LayerData::StackedBar(_) => PlotType::StackedBar,
            LayerData::DodgedBar(_) => PlotType::DodgedBar,
            LayerData::Histogram(_) => PlotType::Histogram,
            LayerData::Line(_) => PlotType::Line,
            LayerData::MultiLine(_) => PlotType::MultiLine,
            LayerData::BoxHorizontal(_) => PlotType::BoxHorizontal,
            LayerData::BoxVertical(_) => PlotType::BoxVertical,
            LayerData::Heatmap(_) => PlotType::Heatmap,
            LayerData::Scatter(_) => PlotType::Scatter,
        }
    }

    /// Number of entries in the serialized `data` array.
    pub fn len(&self) -> usize {
        match self {
            LayerData::Bar(v) => v.len(),
            LayerData::StackedBar(v) | LayerData::DodgedBar(v) => v.len(),
            LayerData::Histogram(v) => v.len(),
            LayerData::Line(v) | LayerData::Scatter(v) => v.len(),
            LayerData::MultiLine(v) => v.len(),
            LayerData::BoxHorizontal(v) | LayerData::BoxVertical(v) => v.len(),
            LayerData::Heatmap(_) => 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            LayerData::Heatmap(g) => g.values.iter().all(Vec::is_empty),
            _ => self.len() == 0,
        }
    }

    /// Calls `f` with (point index, value) for every numeric value.
    fn for_each_number(&self, mut f: impl FnMut(usize, f64)) {
        match self {
            LayerData::Bar(v) => v.iter().enumerate().for_each(|(i, p)| {
                if let XValue::Num(x) = p.x {
                    f(i, x);
                }
                f(i, p.y);
            }),
            LayerData::StackedBar(v) | LayerData::DodgedBar(v) => v.iter().enumerate().for_each(|(i, p)| {
                if let XValue::Num(x) = p.x {
                    f(i, x);
                }
                f(i, p.y);
            }),
            LayerData::Histogram(v) => v.iter().enumerate().for_each(|(i, p)| {
                for n in [p.x, p.y, p.xmin, p.xmax] {
                    f(i, n);
                }
            }),
            LayerData::Line(v) | LayerData::Scatter(v) => v.iter().enumerate().for_each(|(i, p)| {
                f(i, p.x);
                f(i, p.y);
            }),
            LayerData::MultiLine(v) => v.iter().enumerate().for_each(|(i, p)| {
                f(i, p.x);
                f(i, p.y);
            }),
            LayerData::BoxHorizontal(v) | LayerData::BoxVertical(v) => v.iter().enumerate().for_each(|(i, p)| {
                for n in [p.lower_extreme, p.q1, p.median, p.q3, p.upper_extreme] {
                    f(i, n);
                }
                p.outliers.iter().for_each(|&n| f(i, n));
            }),
            LayerData::Heatmap(g) => g.values.iter().flatten().for_each(|&n| f(0, n)),
        }
    }

    fn first_non_finite(&self) -> Option<usize> {
        let mut found = None;
        self.for_each_number(|i, v| {
            if found.is_none() && !v.is_finite() {
                found = Some(i);
            }
        });
        found
    }

    fn from_json(plot_type: PlotType, data: &Value) -> Result<LayerData, serde_path_to_error::Error<serde_json::Error>> {
        fn de<T: serde::de::DeserializeOwned>(
            v: &Value,
        ) -> Result<T, serde_path_to_error::Error<serde_json::Error>> {
            serde_path_to_error::deserialize(v)
        }
        Ok(match plot_type {
            PlotType::Bar => LayerData::Bar(de(data)?),
            PlotType::StackedBar => LayerData::StackedBar(de(data)?),
            PlotType::DodgedBar => LayerData::DodgedBar(de(data)?),
            PlotType::Histogram => LayerData::Histogram(de(data)?),
            PlotType::Line => LayerData::Line(de(data)?),
            PlotType::MultiLine => LayerData::MultiLine(de(data)?),
            PlotType::BoxHorizontal => LayerData::BoxHorizontal(de(data)?),
            PlotType::BoxVertical => LayerData::BoxVertical(de(data)?),
            PlotType::Scatter => LayerData::Scatter(de(data)?),
            PlotType::Heatmap => {
                let [grid]: [HeatmapGrid; 1] = de(data)?;
                LayerData::Heatmap(grid)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerSchema {
    pub axes: AxisInfo,
    pub data: LayerData,
    pub selector: String,
}

impl LayerSchema {
    pub fn plot_type(&self) -> PlotType {
        self.data.plot_type()
    }
}

impl Serialize for LayerSchema {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_struct("LayerSchema", 4)?;
        m.serialize_field("type", self.plot_type().as_str())?;
        m.serialize_field("axes", &self.axes)?;
        match &self.data {
            LayerData::Bar(v) => m.serialize_field("data", v)?,
            LayerData::StackedBar(v) | LayerData::DodgedBar(v) => m.serialize_field("data", v)?,
            LayerData::Histogram(v) => m.serialize_field("data", v)?,
            LayerData::Line(v) | LayerData::Scatter(v) => m.serialize_field("data", v)?,
            LayerData::MultiLine(v) => m.serialize_field("data", v)?,
            LayerData::BoxHorizontal(v) | LayerData::BoxVertical(v) => m.serialize_field("data", v)?,
            LayerData::Heatmap(g) => m.serialize_field("data", std::slice::from_ref(g))?,
        }
        m.serialize_field("selector", &self.selector)?;
        m.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubplotSchema {
    pub row: usize,
    pub col: usize,
    pub layers: Vec<LayerSchema>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureSchema {
    pub id: String,
    pub subplots: Vec<SubplotSchema>,
}

// Wire shapes used while parsing; `data` is decoded once the type is known.
#[derive(Deserialize)]
struct RawFigure {
    id: String,
    subplots: Vec<RawSubplot>,
}

#[derive(Deserialize)]
struct RawSubplot {
    row: usize,
    col: usize,
    layers: Vec<RawLayer>,
}

#[derive(Deserialize)]
struct RawLayer {
    #[serde(rename = "type")]
    _kind: String,
    axes: AxisInfo,
    data: Value,
    selector: String,
}

/// One invariant violation, located by JSON path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }

    fn push(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.issues.push(Issue {
            path: path.into(),
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported type `{found}` at {path}")]
    UnsupportedType { found: String, path: String },
    #[error("at {path}: {message}")]
    Structure { path: String, message: String },
    #[error("non-finite value in layer {layer} ({plot_type}) of subplot {subplot}, point {point}")]
    NonFinite {
        subplot: usize,
        layer: usize,
        plot_type: PlotType,
        point: usize,
    },
    #[error("schema violates invariants: {0}")]
    Invalid(ValidationReport),
}

impl SchemaError {
    fn at(prefix: &str, err: serde_path_to_error::Error<serde_json::Error>) -> Self {
        let inner = err.path().to_string();
        let path = match (prefix.is_empty(), inner.as_str()) {
            (true, _) => inner.clone(),
            (false, ".") => prefix.to_string(),
            (false, p) if p.starts_with('[') => format!("{prefix}{p}"),
            (false, p) => format!("{prefix}.{p}"),
        };
        SchemaError::Structure {
            path,
            message: err.into_inner().to_string(),
        }
    }
}

/// Canonical JSON text for `schema`.
///
/// Keys appear in a fixed order and floats use the shortest exact
/// representation, so equal schemas produce identical bytes.
pub fn serialize_schema(schema: &FigureSchema) -> Result<String, SchemaError> {
    for (si, sub) in schema.subplots.iter().enumerate() {
        for (li, layer) in sub.layers.iter().enumerate() {
            if let Some(point) = layer.data.first_non_finite() {
                return Err(SchemaError::NonFinite {
                    subplot: si,
                    layer: li,
                    plot_type: layer.plot_type(),
                    point,
                });
            }
        }
    }
    let report = validate_schema(schema);
    if !report.is_empty() {
        return Err(SchemaError::Invalid(report));
    }
    let mut numbers = 0;
    for layer in schema.subplots.iter().flat_map(|s| &s.layers) {
        layer.data.for_each_number(|_, _| numbers += 1);
    }
    let mut buf = Vec::with_capacity(512 + numbers * 16);
    serde_json::to_writer(&mut buf, schema)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn parse_schema(text: &str) -> Result<FigureSchema, SchemaError> {
    let value: Value = serde_json::from_str(text)?;
    check_types(&value)?;
    let raw: RawFigure = serde_path_to_error::deserialize(&value).map_err(|e| SchemaError::at("", e))?;
    let mut subplots = Vec::with_capacity(raw.subplots.len());
    for (si, sub) in raw.subplots.into_iter().enumerate() {
        let mut layers = Vec::with_capacity(sub.layers.len());
        for (li, layer) in sub.layers.into_iter().enumerate() {
            let kind = value["subplots"][si]["layers"][li]["type"].as_str().unwrap_or_default();
            let plot_type = PlotType::parse(kind).expect("types checked above");
            let prefix = format!("subplots[{si}].layers[{li}].data");
            let data = LayerData::from_json(plot_type, &layer.data).map_err(|e| SchemaError::at(&prefix, e))?;
            layers.push(LayerSchema {
                axes: layer.axes,
                data,
                selector: layer.selector,
            });
        }
        subplots.push(SubplotSchema {
            row: sub.row,
            col: sub.col,
            layers,
        });
    }
    let schema = FigureSchema {
        id: raw.id,
        subplots,
    };
    let report = validate_schema(&schema);
    if report.is_empty() {
        Ok(schema)
    } else {
        Err(SchemaError::Invalid(report))
    }
}

fn check_types(value: &Value) -> Result<(), SchemaError> {
    let Some(subplots) = value.get("subplots").and_then(Value::as_array) else {
        return Ok(());
    };
    for (si, sub) in subplots.iter().enumerate() {
        let Some(layers) = sub.get("layers").and_then(Value::as_array) else {
            continue;
        };
        for (li, layer) in layers.iter().enumerate() {
            match layer.get("type") {
                Some(Value::String(s)) if PlotType::parse(s).is_some() => {}
                Some(Value::String(s)) => {
                    return Err(SchemaError::UnsupportedType {
                        found: s.clone(),
                        path: format!("subplots[{si}].layers[{li}].type"),
                    })
                }
                // missing or mistyped: reported with its path by the structural pass
                _ => {}
            }
        }
    }
    Ok(())
}

/// Checks every schema invariant, collecting one issue per violation.
pub fn validate_schema(schema: &FigureSchema) -> ValidationReport {
    let mut report = ValidationReport::default();
    if schema.id.is_empty() {
        report.push("id", "figure id is empty");
    }
    if schema.subplots.is_empty() {
        report.push("subplots", "no subplots");
    }
    let mut seen = HashSet::new();
    for (si, sub) in schema.subplots.iter().enumerate() {
        let path = format!("subplots[{si}]");
        if !seen.insert((sub.row, sub.col)) {
            report.push(&path, format!("duplicate subplot position ({}, {})", sub.row, sub.col));
        }
        if sub.layers.is_empty() {
            report.push(format!("{path}.layers"), "subplot has no layers");
        }
        for (li, layer) in sub.layers.iter().enumerate() {
            validate_layer(layer, &format!("{path}.layers[{li}]"), &mut report);
        }
    }
    report
}

fn validate_levels(levels: &Option<Vec<String>>, path: String, report: &mut ValidationReport) {
    let Some(levels) = levels else { return };
    if levels.is_empty() {
        report.push(path, "levels must not be empty");
        return;
    }
    let mut seen = HashSet::new();
    for (i, l) in levels.iter().enumerate() {
        if !seen.insert(l) {
            report.push(format!("{path}[{i}]"), format!("duplicate level `{l}`"));
        }
    }
}

fn validate_layer(layer: &LayerSchema, path: &str, report: &mut ValidationReport) {
    validate_levels(&layer.axes.x_levels, format!("{path}.axes.x_levels"), report);
    validate_levels(&layer.axes.y_levels, format!("{path}.axes.y_levels"), report);
    if let Err(why) = check_selector(&layer.selector) {
        report.push(format!("{path}.selector"), why);
    }
    let data_path = format!("{path}.data");
    if layer.data.is_empty() {
        report.push(&data_path, "data is empty");
    }
    layer.data.for_each_number(|i, v| {
        if !v.is_finite() {
            report.push(format!("{data_path}[{i}]"), "non-finite value");
        }
    });
    match &layer.data {
        LayerData::BoxHorizontal(boxes) | LayerData::BoxVertical(boxes) => {
            for (i, b) in boxes.iter().enumerate() {
                let ordered = b.lower_extreme <= b.q1 && b.q1 <= b.median && b.median <= b.q3 && b.q3 <= b.upper_extreme;
                if !ordered {
                    report.push(
                        format!("{data_path}[{i}]"),
                        "box statistics must satisfy lower_extreme <= q1 <= median <= q3 <= upper_extreme",
                    );
                }
                for (j, &o) in b.outliers.iter().enumerate() {
                    if o >= b.lower_extreme && o <= b.upper_extreme {
                        report.push(
                            format!("{data_path}[{i}].outliers[{j}]"),
                            "outlier lies inside the whisker range",
                        );
                    }
                }
            }
        }
        LayerData::Histogram(bins) => {
            for (i, b) in bins.iter().enumerate() {
                if !(b.xmin < b.xmax) {
                    report.push(format!("{data_path}[{i}]"), "bin requires xmin < xmax");
                }
            }
            let mut spans: Vec<(f64, f64)> = bins.iter().map(|b| (b.xmin, b.xmax)).collect();
            spans.sort_by(|a, b| a.0.total_cmp(&b.0));
            if spans.windows(2).any(|w| w[0].1 > w[1].0) {
                report.push(&data_path, "histogram bins overlap");
            }
        }
        LayerData::Heatmap(g) => {
            if g.values.len() != g.row_labels.len() {
                report.push(
                    format!("{data_path}[0].row_labels"),
                    format!("{} rows but {} row labels", g.values.len(), g.row_labels.len()),
                );
            }
            for (r, row) in g.values.iter().enumerate() {
                if row.len() != g.col_labels.len() {
                    report.push(
                        format!("{data_path}[0].values[{r}]"),
                        format!("{} columns but {} column labels", row.len(), g.col_labels.len()),
                    );
                }
            }
        }
        _ => {}
    }
}

/// Attribute comparison in a selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttrOp {
    Equals,
    Prefix,
    Suffix,
    Contains,
    Word,
    DashPrefix,
}

/// One `[name]` or `[name op "value"]` term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeSelector {
    pub name: String,
    pub test: Option<(AttrOp, String)>,
}

impl AttributeSelector {
    /// Whether an element whose attribute `name` has `value` matches.
    pub fn matches(&self, value: Option<&str>) -> bool {
        let Some(v) = value else { return false };
        match &self.test {
            None => true,
            Some((AttrOp::Equals, w)) => v == w,
            Some((AttrOp::Prefix, w)) => !w.is_empty() && v.starts_with(w.as_str()),
            Some((AttrOp::Suffix, w)) => !w.is_empty() && v.ends_with(w.as_str()),
            Some((AttrOp::Contains, w)) => !w.is_empty() && v.contains(w.as_str()),
            Some((AttrOp::Word, w)) => v.split_ascii_whitespace().any(|t| t == w),
            Some((AttrOp::DashPrefix, w)) => v == w || v.strip_prefix(w.as_str()).is_some_and(|r| r.starts_with('-')),
        }
    }
}

const OPS: [(&str, AttrOp); 6] = [
    ("^=", AttrOp::Prefix),
    ("$=", AttrOp::Suffix),
    ("*=", AttrOp::Contains),
    ("~=", AttrOp::Word),
    ("|=", AttrOp::DashPrefix),
    ("=", AttrOp::Equals),
];

/// Parses a comma-separated list of attribute selectors such as
/// `[maidr-id="a"]` or `[maidr-id^="maidr-3-"]`.
pub fn parse_selector(selector: &str) -> Result<Vec<AttributeSelector>, String> {
    if selector.trim().is_empty() {
        return Err("selector is empty".into());
    }
    let mut out = Vec::new();
    for part in split_selector(selector) {
        let part = part.trim();
        let inner = part
            .strip_prefix('[')
            .and_then(|p| p.strip_suffix(']'))
            .ok_or_else(|| format!("`{part}` is not an attribute selector"))?;
        let name_end = inner
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-' || c == '_'))
            .unwrap_or(inner.len());
        if name_end == 0 {
            return Err(format!("`{part}` has no attribute name"));
        }
        let name = inner[..name_end].to_string();
        let rest = &inner[name_end..];
        if rest.is_empty() {
            out.push(AttributeSelector { name, test: None });
            continue;
        }
        let (op, value) = OPS
            .iter()
            .find_map(|(tok, op)| rest.strip_prefix(tok).map(|v| (*op, v)))
            .ok_or_else(|| format!("`{part}` has an invalid operator"))?;
        let quoted = value.len() >= 2
            && ((value.starts_with('"') && value.ends_with('"')) || (value.starts_with('\'') && value.ends_with('\'')));
        if !quoted || value[1..value.len() - 1].contains(['"', '\'']) {
            return Err(format!("`{part}` needs a quoted value"));
        }
        out.push(AttributeSelector {
            name,
            test: Some((op, value[1..value.len() - 1].to_string())),
        });
    }
    Ok(out)
}

/// Accepts the selector syntax understood by [`parse_selector`].
pub fn check_selector(selector: &str) -> Result<(), String> {
    parse_selector(selector).map(|_| ())
}

/// Splits on commas outside quotes.
fn split_selector(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut quote = None;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match (quote, c) {
            (None, '"' | '\'') => quote = Some(c),
            (Some(q), c) if c == q => quote = None,
            (None, ',') => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}
