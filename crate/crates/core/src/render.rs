//! Final documents: augmented SVG, embedded payload, HTML, delivery.

use std::fmt;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::Mutex;

use plotkit::Figure;
use tempfile::{NamedTempFile, TempPath};
use thiserror::Error;

use crate::extraction::{self, ExtractionError};
use crate::highlight::{self, HighlightScope, InjectionReport};
use crate::schema::{serialize_schema, FigureSchema, SchemaError};

/// Bootstrap script inlined into every instrumented document.
pub const ENGINE_JS: &str = include_str!("../assets/engine.js");

const STYLE: &str = ".maidr-container{display:inline-block;position:relative}\
.maidr-container svg:focus{outline:2px solid #1f77b4}\
.maidr-highlight{outline:3px solid #d62728;filter:drop-shadow(0 0 2px #d62728)}\
.maidr-announce{position:absolute;left:-10000px;width:1px;height:1px;overflow:hidden}";

/// Env var forcing a delivery mode.
pub const DELIVERY_ENV: &str = "MAIDR_DELIVERY";
/// Env var that keeps temp files written by [`show`].
pub const KEEP_TEMP_ENV: &str = "MAIDR_KEEP_TEMP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeliveryMode {
    InlineIframe,
    TempFileBrowser,
    RawHtml,
}

impl DeliveryMode {
    pub fn as_str(self) -> &'static str {
        match self {
            DeliveryMode::InlineIframe => "inline-iframe",
            DeliveryMode::TempFileBrowser => "temp-file-browser",
            DeliveryMode::RawHtml => "raw-html",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inline-iframe" | "iframe" => Some(DeliveryMode::InlineIframe),
            "temp-file-browser" | "browser" => Some(DeliveryMode::TempFileBrowser),
            "raw-html" | "html" => Some(DeliveryMode::RawHtml),
            _ => None,
        }
    }
}

impl fmt::Display for DeliveryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

// Variables set by rich-display kernels (evcxr, Jupyter).
const NOTEBOOK_VARS: [&str; 4] = ["EVCXR_IS_RUNTIME", "EVCXR_CONFIG_DIR", "JPY_PARENT_PID", "JPY_SESSION_NAME"];

/// Delivery mode from an environment lookup; an explicit override wins.
pub fn detect_environment_with(lookup: impl Fn(&str) -> Option<String>) -> DeliveryMode {
    if let Some(v) = lookup(DELIVERY_ENV) {
        match DeliveryMode::parse(&v) {
            Some(m) => return m,
            None => log::warn!("ignoring unknown {DELIVERY_ENV}={v}"),
        }
    }
    if NOTEBOOK_VARS.iter().any(|k| lookup(k).is_some()) {
        DeliveryMode::InlineIframe
    } else {
        DeliveryMode::TempFileBrowser
    }
}

pub fn detect_environment() -> DeliveryMode {
    detect_environment_with(|k| std::env::var(k).ok())
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error(transparent)]
    Extraction(#[from] ExtractionError),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Clone)]
pub struct RenderedDocument {
    /// SVG with element attributes and, when instrumented, the root payload.
    pub svg: String,
    /// Canonical schema text; `None` for an uninstrumented fallback.
    pub schema_json: Option<String>,
    pub schema: Option<FigureSchema>,
    pub html: String,
    pub delivery_mode: DeliveryMode,
    pub injection: InjectionReport,
}

impl RenderedDocument {
    pub fn instrumented(&self) -> bool {
        self.schema_json.is_some()
    }

    fn with_html(mut self) -> Self {
        let title = self
            .schema
            .iter()
            .flat_map(|s| &s.subplots)
            .flat_map(|s| &s.layers)
            .map(|l| l.axes.title.as_str())
            .find(|t| !t.is_empty())
            .unwrap_or("figure");
        self.html = html_page(&self.svg, title, self.instrumented());
        self
    }
}

fn escape_into(out: &mut String, text: &str, special: &[u8]) {
    let bytes = text.as_bytes();
    let mut from = 0;
    for (i, b) in bytes.iter().enumerate() {
        if !special.contains(b) {
            continue;
        }
        out.push_str(&text[from..i]);
        out.push_str(match b {
            b'&' => "&amp;",
            b'<' => "&lt;",
            b'>' => "&gt;",
            b'\'' => "&#39;",
            _ => "&quot;",
        });
        from = i + 1;
    }
    out.push_str(&text[from..]);
}

/// Escapes text for an attribute value under either quote style.
pub fn escape_attribute(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + text.len() / 8);
    escape_into(&mut out, text, b"&<>'\"");
    out
}

/// Adds `maidr-data` to the root `<svg>` element. The value is single
/// quoted, so the JSON's double quotes stay as they are.
pub fn inject_payload(svg: &str, schema_json: &str) -> String {
    let Some(start) = svg.find("<svg") else {
        return svg.to_string();
    };
    let Some(len) = svg[start..].find('>') else {
        return svg.to_string();
    };
    let mut end = start + len;
    if svg[..end].ends_with('/') {
        end -= 1;
    }
    let mut out = String::with_capacity(svg.len() + schema_json.len() + 32);
    out.push_str(&svg[..end]);
    out.push_str(" maidr-data='");
    escape_into(&mut out, schema_json, b"&<'");
    out.push('\'');
    out.push_str(&svg[end..]);
    out
}

/// Reads `maidr-data` back off the root `<svg>` of a document, which may be
/// a bare SVG or an HTML page embedding one.
pub fn extract_payload(document: &str) -> Option<String> {
    let start = document.find("<svg")?;
    let mut reader = quick_xml::Reader::from_str(&document[start..]);
    match reader.read_event().ok()? {
        quick_xml::events::Event::Start(e) | quick_xml::events::Event::Empty(e) => e
            .attributes()
            .filter_map(Result::ok)
            .find(|a| a.key.as_ref() == b"maidr-data")
            .and_then(|a| a.unescape_value().ok())
            .map(|v| v.into_owned()),
        _ => None,
    }
}

/// The SVG without its XML declaration, for embedding in HTML.
fn svg_element(svg: &str) -> &str {
    svg.find("<svg").map_or(svg, |i| &svg[i..])
}

fn html_page(svg: &str, title: &str, script: bool) -> String {
    let mut out = String::with_capacity(svg.len() + ENGINE_JS.len() + 512);
    out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>");
    out.push_str(&plotkit::svg::escape(title));
    out.push_str("</title>\n<style>");
    out.push_str(STYLE);
    out.push_str("</style>\n</head>\n<body>\n<div class=\"maidr-container\">\n");
    out.push_str(svg_element(svg));
    out.push_str("</div>\n");
    if script {
        out.push_str("<script>\n");
        out.push_str(ENGINE_JS);
        out.push_str("</script>\n");
    }
    out.push_str("</body>\n</html>\n");
    out
}

fn fallback(figure: &Figure, svg: Option<String>) -> RenderedDocument {
    RenderedDocument {
        svg: svg.unwrap_or_else(|| figure.to_svg()),
        schema_json: None,
        schema: None,
        html: String::new(),
        delivery_mode: detect_environment(),
        injection: InjectionReport::default(),
    }
}

/// Renders `figure` with its data payload and element attributes.
///
/// A figure without registered plots yields a plain, uninstrumented document.
pub fn render_document(figure: &Figure) -> Result<RenderedDocument, RenderError> {
    let doc = render_svg(figure)?;
    Ok(doc.with_html())
}

// Everything but the HTML page, which `save_svg` does not need.
fn render_svg(figure: &Figure) -> Result<RenderedDocument, RenderError> {
    if !extraction::is_registered(figure.id()) {
        return Ok(fallback(figure, None));
    }
    let tracked = extraction::tracked_elements(figure)?;
    let scope = HighlightScope::enter(figure.id(), tracked);
    let svg = figure.to_svg();
    let elements = scope.finish();

    // extraction runs after the draw pass so selectors see assigned ids
    let schema = match extraction::finalize_figure(figure) {
        Ok(s) => s,
        Err(ExtractionError::NotRegistered(_) | ExtractionError::NothingToExtract) => {
            return Ok(fallback(figure, Some(svg)))
        }
        Err(e) => return Err(e.into()),
    };
    let schema_json = serialize_schema(&schema)?;
    let (svg, injection) = highlight::inject_element_attributes(&svg, &elements);
    let svg = inject_payload(&svg, &schema_json);
    Ok(RenderedDocument {
        svg,
        schema_json: Some(schema_json),
        schema: Some(schema),
        html: String::new(),
        delivery_mode: detect_environment(),
        injection,
    })
}

/// Writes `contents` to `path` through a sibling temp file, so a failed
/// write leaves nothing behind.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), RenderError> {
    let io_err = |source| RenderError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

/// Saves a self-contained HTML document with the engine inlined.
pub fn save_html(figure: &Figure, path: impl AsRef<Path>) -> Result<PathBuf, RenderError> {
    let path = path.as_ref();
    let doc = render_document(figure)?;
    if !doc.instrumented() {
        log::warn!("figure {} has no supported plots; saving a plain document", figure.id());
    }
    write_atomic(path, &doc.html)?;
    Ok(path.to_path_buf())
}

/// Saves the augmented SVG.
pub fn save_svg(figure: &Figure, path: impl AsRef<Path>) -> Result<PathBuf, RenderError> {
    let path = path.as_ref();
    let doc = render_svg(figure)?;
    write_atomic(path, &doc.svg)?;
    Ok(path.to_path_buf())
}

/// Sandboxed inline frame holding `doc`, sized by messages from the frame.
pub fn iframe_html(doc: &RenderedDocument) -> String {
    let id = doc.schema.as_ref().map_or_else(|| "maidr-plain".to_string(), |s| s.id.clone());
    let id = plotkit::svg::escape(&id);
    let srcdoc = escape_attribute(&doc.html);
    format!(
        "<iframe data-maidr-frame=\"{id}\" title=\"Accessible figure\" sandbox=\"allow-scripts\" \
style=\"width:100%;height:400px;border:0\" srcdoc=\"{srcdoc}\"></iframe>\n\
<script>window.addEventListener(\"message\",function(e){{var d=e.data;if(!d||d.maidrFrame!==\"{id}\")return;\
var f=document.querySelector('iframe[data-maidr-frame=\"{id}\"]');\
if(f&&e.source===f.contentWindow)f.style.height=(d.height+4)+\"px\";}});</script>"
    )
}

/// How [`show`] delivered a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shown {
    Inline,
    Raw,
    Browser(PathBuf),
    /// Written to disk; no browser could be launched.
    Saved(PathBuf),
}

static TEMP_FILES: Mutex<Vec<TempPath>> = Mutex::new(Vec::new());

/// Deletes temp files written by [`show`], unless `MAIDR_KEEP_TEMP` is set.
pub fn cleanup_temp_files() -> usize {
    let mut files = TEMP_FILES.lock().unwrap_or_else(|e| e.into_inner());
    let n = files.len();
    if std::env::var_os(KEEP_TEMP_ENV).is_some() {
        for f in files.drain(..) {
            let _ = f.keep();
        }
    } else {
        files.clear();
    }
    n
}

fn browser_command(path: &Path) -> Option<Command> {
    if let Ok(browser) = std::env::var("BROWSER") {
        let mut parts = browser.split_whitespace();
        let mut cmd = Command::new(parts.next()?);
        cmd.args(parts).arg(path);
        return Some(cmd);
    }
    if cfg!(target_os = "macos") {
        let mut cmd = Command::new("open");
        cmd.arg(path);
        return Some(cmd);
    }
    if cfg!(windows) {
        let mut cmd = Command::new("cmd");
        cmd.args(["/C", "start", ""]).arg(path);
        return Some(cmd);
    }
    let display = ["DISPLAY", "WAYLAND_DISPLAY"].iter().any(|v| std::env::var_os(v).is_some());
    display.then(|| {
        let mut cmd = Command::new("xdg-open");
        cmd.arg(path);
        cmd
    })
}

fn write_temp(figure: &Figure, html: &str) -> Result<PathBuf, RenderError> {
    let io_err = |source| RenderError::Io {
        path: std::env::temp_dir(),
        source,
    };
    let mut file = tempfile::Builder::new()
        .prefix(&format!("maidr-fig-{}-", figure.id()))
        .suffix(".html")
        .tempfile()
        .map_err(io_err)?;
    file.write_all(html.as_bytes()).map_err(io_err)?;
    let path = file.into_temp_path();
    let shown = path.to_path_buf();
    TEMP_FILES.lock().unwrap_or_else(|e| e.into_inner()).push(path);
    Ok(shown)
}

/// Displays `figure` in the way the environment supports.
pub fn show(figure: &Figure) -> Result<Shown, RenderError> {
    let doc = render_document(figure)?;
    let stdout = io::stdout();
    let io_err = |source| RenderError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    match doc.delivery_mode {
        DeliveryMode::InlineIframe => {
            let mut out = stdout.lock();
            writeln!(out, "EVCXR_BEGIN_CONTENT text/html\n{}\nEVCXR_END_CONTENT", iframe_html(&doc)).map_err(io_err)?;
            Ok(Shown::Inline)
        }
        DeliveryMode::RawHtml => {
            stdout.lock().write_all(doc.html.as_bytes()).map_err(io_err)?;
            Ok(Shown::Raw)
        }
        DeliveryMode::TempFileBrowser => {
            let path = write_temp(figure, &doc.html)?;
            let launched = browser_command(&path).is_some_and(|mut cmd| {
                cmd.stdin(Stdio::null()).stdout(Stdio::null()).stderr(Stdio::null());
                cmd.spawn().is_ok()
            });
            if launched {
                Ok(Shown::Browser(path))
            } else {
                println!("{}", path.display());
                Ok(Shown::Saved(path))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;

    #[test]
    fn detection_order() {
        let env = |pairs: &[(&str, &str)]| {
            let m: HashMap<String, String> = pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
            detect_environment_with(move |k| m.get(k).cloned())
        };
        assert_eq!(env(&[]), DeliveryMode::TempFileBrowser);
        assert_eq!(env(&[("JPY_PARENT_PID", "1")]), DeliveryMode::InlineIframe);
        assert_eq!(env(&[("EVCXR_IS_RUNTIME", "1")]), DeliveryMode::InlineIframe);
        assert_eq!(
            env(&[("EVCXR_IS_RUNTIME", "1"), (DELIVERY_ENV, "raw-html")]),
            DeliveryMode::RawHtml
        );
        assert_eq!(env(&[(DELIVERY_ENV, "nonsense")]), DeliveryMode::TempFileBrowser);
        for m in [DeliveryMode::InlineIframe, DeliveryMode::TempFileBrowser, DeliveryMode::RawHtml] {
            assert_eq!(DeliveryMode::parse(m.as_str()), Some(m));
        }
    }

    #[test]
    fn payload_goes_on_the_root() {
        let svg = "<?xml version=\"1.0\"?>\n<svg width=\"1\"><g/></svg>";
        let out = inject_payload(svg, r#"{"a":"it's <b> & c"}"#);
        assert_eq!(
            out,
            "<?xml version=\"1.0\"?>\n<svg width=\"1\" maidr-data='{\"a\":\"it&#39;s &lt;b> &amp; c\"}'><g/></svg>"
        );
        assert_eq!(inject_payload("<svg/>", "{}"), "<svg maidr-data='{}'/>");
        assert_eq!(extract_payload(&out).as_deref(), Some(r#"{"a":"it's <b> & c"}"#));
        assert_eq!(extract_payload("<html><svg width=\"1\"></svg>"), None);
    }

    #[test]
    fn plain_figure_falls_back() {
        let fig = Figure::new();
        fig.add_subplot(1, 1, 0, 0).unwrap();
        let doc = render_document(&fig).unwrap();
        assert!(!doc.instrumented());
        assert!(!doc.svg.contains("maidr-data"));
        assert!(!doc.html.contains("<script>"));
        assert_eq!(doc.svg, fig.to_svg());
    }

    #[test]
    fn iframe_is_sandboxed() {
        let fig = Figure::new();
        fig.add_subplot(1, 1, 0, 0).unwrap();
        let doc = render_document(&fig).unwrap();
        let frame = iframe_html(&doc);
        assert!(frame.contains("sandbox=\"allow-scripts\""));
        assert!(!frame.contains("allow-same-origin"));
        assert!(frame.contains("addEventListener(\"message\""));
    }

    #[test]
    fn atomic_write_leaves_nothing_on_failure() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("nope").join("out.html");
        assert!(write_atomic(&missing, "x").is_err());
        let ok = dir.path().join("out.html");
        write_atomic(&ok, "hello").unwrap();
        assert_eq!(std::fs::read_to_string(&ok).unwrap(), "hello");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
