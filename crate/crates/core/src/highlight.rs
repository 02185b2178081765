//! Element ids that tie schema points to SVG elements.
//!
//! While a [`HighlightScope`] is active on a thread, the draw hook gives each
//! tracked primitive a `maidr-<figure>-<n>` graphics id. After export,
//! [`inject_element_attributes`] marks those elements with `maidr="true"`
//! and `maidr-id`.

use std::borrow::Cow;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use plotkit::artist::{ArtistClass, ArtistId};
use plotkit::figure::FigureId;
use plotkit::hooks::{self, DrawEvent, DrawHook, HookError};
use quick_xml::events::attributes::Attribute;
use quick_xml::events::{BytesStart, Event};
use quick_xml::{Reader, Writer};
use thiserror::Error;

use crate::extraction::ElementTarget;
use crate::schema::parse_selector;

/// Element id to the schema points it carries.
pub type ElementsMap = BTreeMap<String, ElementTarget>;

/// Primitive classes that carry data.
pub const DATA_CLASSES: [ArtistClass; 4] = [
    ArtistClass::Patch,
    ArtistClass::Line2D,
    ArtistClass::PathCollection,
    ArtistClass::QuadMesh,
];

static NEXT_ELEMENT: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Error)]
pub enum HighlightError {
    #[error("malformed SVG at byte {offset}: {message}")]
    Xml { offset: u64, message: String },
    #[error("bad selector: {0}")]
    Selector(String),
}

struct ScopeState {
    figure: FigureId,
    tracked: HashMap<ArtistId, ElementTarget>,
    elements: ElementsMap,
}

thread_local! {
    static SCOPES: RefCell<Vec<ScopeState>> = const { RefCell::new(Vec::new()) };
}

/// Id assignment for one figure's draw pass on the current thread.
#[must_use = "ids are only assigned while the scope is alive"]
pub struct HighlightScope {
    figure: FigureId,
    done: bool,
}

impl HighlightScope {
    pub fn enter(figure: FigureId, tracked: HashMap<ArtistId, ElementTarget>) -> Self {
        SCOPES.with(|s| {
            s.borrow_mut().push(ScopeState {
                figure,
                tracked,
                elements: ElementsMap::new(),
            })
        });
        HighlightScope { figure, done: false }
    }

    /// Ends the scope, returning the ids assigned during it.
    pub fn finish(mut self) -> ElementsMap {
        self.done = true;
        self.pop().map(|s| s.elements).unwrap_or_default()
    }

    fn pop(&self) -> Option<ScopeState> {
        SCOPES.with(|s| {
            let mut s = s.borrow_mut();
            let i = s.iter().rposition(|st| st.figure == self.figure)?;
            Some(s.remove(i))
        })
    }
}

impl Drop for HighlightScope {
    fn drop(&mut self) {
        if !self.done {
            self.pop();
        }
    }
}

pub fn scope_active() -> bool {
    SCOPES.with(|s| !s.borrow().is_empty())
}

/// Gives a tracked primitive its element id and records it.
///
/// Returns `None`, leaving `gid` alone, outside a scope for `figure` or when
/// the primitive is not tracked. A primitive that already carries an id for
/// this figure keeps it.
pub fn tag_primitive(figure: FigureId, artist: ArtistId, gid: &mut Option<String>) -> Option<String> {
    SCOPES.with(|s| {
        let mut s = s.borrow_mut();
        let scope = s.iter_mut().rev().find(|st| st.figure == figure)?;
        let target = scope.tracked.get(&artist)?.clone();
        let prefix = format!("maidr-{figure}-");
        let id = match gid {
            Some(g) if g.starts_with(&prefix) => g.clone(),
            _ => format!("{prefix}{}", NEXT_ELEMENT.fetch_add(1, Ordering::Relaxed)),
        };
        *gid = Some(id.clone());
        scope.elements.insert(id.clone(), target);
        Some(id)
    })
}

/// Draw hook that tags tracked primitives.
#[derive(Debug, Default)]
pub struct DrawTagger;

impl DrawHook for DrawTagger {
    fn before_draw(&self, event: &mut DrawEvent<'_>) {
        if let Some(artist) = event.artist {
            tag_primitive(event.figure, artist, event.gid);
        }
    }
}

/// Hooks the draw path of every data-bearing class. Classes that are
/// already hooked are left as they are.
pub fn install_draw_hooks() -> Result<usize, HookError> {
    let tagger = Arc::new(DrawTagger);
    let mut added = 0;
    for class in DATA_CLASSES {
        match hooks::wrap_draw(class, tagger.clone()) {
            Ok(()) => added += 1,
            Err(HookError::AlreadyHooked(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(added)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InjectionReport {
    /// Ids that were found and marked, in document order.
    pub tagged: Vec<String>,
    /// Ids in the map with no element, e.g. culled primitives.
    pub missing: Vec<String>,
}

/// Adds `maidr="true" maidr-id="..."` to each element whose id is in `elements`.
pub fn inject_element_attributes(svg: &str, elements: &ElementsMap) -> (String, InjectionReport) {
    let mut report = InjectionReport::default();
    if elements.is_empty() {
        return (svg.to_string(), report);
    }
    const NEEDLE: &str = "id=\"maidr-";
    let mut out = String::with_capacity(svg.len() + elements.len() * 48);
    let mut seen = HashSet::new();
    let mut rest = svg;
    while let Some(at) = rest.find(NEEDLE) {
        let attr_start = at;
        let value_start = at + 4;
        let Some(len) = rest[value_start..].find('"') else { break };
        let value_end = value_start + len;
        let preceded = rest[..attr_start].ends_with(|c: char| c.is_ascii_whitespace());
        out.push_str(&rest[..=value_end]);
        let id = &rest[value_start..value_end];
        if preceded && elements.contains_key(id) {
            out.push_str(" maidr=\"true\" maidr-id=\"");
            out.push_str(id);
            out.push('"');
            if seen.insert(id.to_string()) {
                report.tagged.push(id.to_string());
            }
        }
        rest = &rest[value_end + 1..];
    }
    out.push_str(rest);
    report.missing = elements.keys().filter(|k| !seen.contains(*k)).cloned().collect();
    for id in &report.missing {
        log::warn!("element {id} is tracked but was not drawn");
    }
    (out, report)
}

/// Attributes added by instrumentation.
pub const INJECTED_ATTRIBUTES: [&str; 3] = ["maidr", "maidr-id", "maidr-data"];

fn xml_error(reader: &Reader<&[u8]>, e: impl std::fmt::Display) -> HighlightError {
    HighlightError::Xml {
        offset: reader.buffer_position(),
        message: e.to_string(),
    }
}

/// Removes every injected attribute, leaving the rest of the document as is.
pub fn strip_injected(svg: &str) -> Result<String, HighlightError> {
    let mut reader = Reader::from_str(svg);
    let mut writer = Writer::new(Vec::with_capacity(svg.len()));
    loop {
        let event = reader.read_event().map_err(|e| xml_error(&reader, e))?;
        let event = match event {
            Event::Eof => break,
            Event::Start(s) => Event::Start(without_injected(&reader, &s)?),
            Event::Empty(s) => Event::Empty(without_injected(&reader, &s)?),
            other => other,
        };
        writer.write_event(event).map_err(|e| xml_error(&reader, e))?;
    }
    Ok(String::from_utf8(writer.into_inner()).expect("input was UTF-8"))
}

fn without_injected<'a>(reader: &Reader<&[u8]>, s: &BytesStart<'a>) -> Result<BytesStart<'static>, HighlightError> {
    let name = String::from_utf8_lossy(s.name().as_ref()).into_owned();
    let mut out = BytesStart::new(name);
    for a in s.attributes() {
        let a = a.map_err(|e| xml_error(reader, e))?;
        let key = a.key.as_ref();
        if INJECTED_ATTRIBUTES.iter().any(|k| k.as_bytes() == key) {
            continue;
        }
        out.push_attribute(Attribute {
            key: a.key,
            value: a.value,
        });
    }
    Ok(out.into_owned())
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open(String, Vec<(String, String)>),
    Close(String),
    Text(String),
}

// Renames ids to their order of first mention, as a definition or reference.
#[derive(Default)]
struct Renamer(HashMap<String, String>);

impl Renamer {
    fn name(&mut self, id: &str) -> String {
        let n = self.0.len();
        self.0.entry(id.to_string()).or_insert_with(|| format!("#{n}")).clone()
    }

    fn value(&mut self, key: &str, value: &str) -> String {
        if key == "id" {
            return self.name(value);
        }
        if key.ends_with("href") {
            if let Some(target) = value.strip_prefix('#') {
                return format!("#{}", self.name(target));
            }
        }
        let mut out = String::new();
        let mut rest = value;
        while let Some(at) = rest.find("url(#") {
            let body = &rest[at + 5..];
            let Some(end) = body.find(')') else { break };
            out.push_str(&rest[..at + 5]);
            out.push_str(&self.name(&body[..end]));
            rest = &body[end..];
        }
        out.push_str(rest);
        out
    }
}

fn tokens(svg: &str) -> Result<Vec<Token>, HighlightError> {
    let mut reader = Reader::from_str(svg);
    let mut names = Renamer::default();
    let mut out = Vec::new();
    loop {
        let event = reader.read_event().map_err(|e| xml_error(&reader, e))?;
        match event {
            Event::Eof => break,
            Event::Start(s) => out.push(open(&reader, &s, &mut names)?),
            Event::Empty(s) => {
                let t = open(&reader, &s, &mut names)?;
                if let Token::Open(n, _) = &t {
                    let n = n.clone();
                    out.push(t);
                    out.push(Token::Close(n));
                }
            }
            Event::End(e) => out.push(Token::Close(String::from_utf8_lossy(e.name().as_ref()).into_owned())),
            Event::Text(t) => {
                let text = t.unescape().map_err(|e| xml_error(&reader, e))?;
                let text = text.trim();
                if !text.is_empty() {
                    out.push(Token::Text(text.to_string()));
                }
            }
            Event::CData(c) => out.push(Token::Text(String::from_utf8_lossy(&c).trim().to_string())),
            Event::Comment(_) | Event::Decl(_) | Event::PI(_) | Event::DocType(_) => {}
        }
    }
    Ok(out)
}

fn open(reader: &Reader<&[u8]>, s: &BytesStart<'_>, names: &mut Renamer) -> Result<Token, HighlightError> {
    let name = String::from_utf8_lossy(s.name().as_ref()).into_owned();
    let mut raw = Vec::new();
    for a in s.attributes() {
        let a = a.map_err(|e| xml_error(reader, e))?;
        let key = String::from_utf8_lossy(a.key.as_ref()).into_owned();
        let value: Cow<str> = a.unescape_value().map_err(|e| xml_error(reader, e))?;
        raw.push((key, value.into_owned()));
    }
    // sorted before renaming so attribute order cannot change the numbering
    raw.sort();
    let attrs = raw.into_iter().map(|(k, v)| {
        let v = names.value(&k, &v);
        (k, v)
    });
    Ok(Token::Open(name, attrs.collect()))
}

/// First structural difference between two documents, if any.
///
/// Attribute order, whitespace between elements, comments and the exact
/// spelling of element ids are ignored; ids must still be referenced
/// consistently.
pub fn structural_difference(a: &str, b: &str) -> Result<Option<String>, HighlightError> {
    let (ta, tb) = (tokens(a)?, tokens(b)?);
    for (i, (x, y)) in ta.iter().zip(&tb).enumerate() {
        if x != y {
            return Ok(Some(format!("token {i}: {x:?} != {y:?}")));
        }
    }
    Ok((ta.len() != tb.len()).then(|| format!("{} tokens != {} tokens", ta.len(), tb.len())))
}

pub fn structurally_equal(a: &str, b: &str) -> Result<bool, HighlightError> {
    structural_difference(a, b).map(|d| d.is_none())
}

/// Ids (`id` attribute, else element name) of elements matching `selector`.
pub fn select(svg: &str, selector: &str) -> Result<Vec<String>, HighlightError> {
    let terms = parse_selector(selector).map_err(HighlightError::Selector)?;
    let mut reader = Reader::from_str(svg);
    let mut out = Vec::new();
    loop {
        let event = reader.read_event().map_err(|e| xml_error(&reader, e))?;
        let s = match &event {
            Event::Eof => break,
            Event::Start(s) | Event::Empty(s) => s,
            _ => continue,
        };
        let mut attrs = HashMap::new();
        for a in s.attributes() {
            let a = a.map_err(|e| xml_error(&reader, e))?;
            let v = a.unescape_value().map_err(|e| xml_error(&reader, e))?.into_owned();
            attrs.insert(String::from_utf8_lossy(a.key.as_ref()).into_owned(), v);
        }
        if terms
            .iter()
            .any(|t| t.matches(attrs.get(&t.name).map(String::as_str)))
        {
            let fallback = String::from_utf8_lossy(s.name().as_ref()).into_owned();
            out.push(attrs.remove("id").unwrap_or(fallback));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use plotkit::{BarOptions, Figure};

    use super::*;
    use crate::extraction::GridPosition;

    fn target(fig: FigureId, i: usize) -> ElementTarget {
        ElementTarget {
            figure: fig,
            subplot: GridPosition { row: 0, col: 0 },
            layer: 0,
            points: i..i + 1,
        }
    }

    #[test]
    fn tagging_needs_a_scope_and_tracking() {
        let fig = FigureId(900_001);
        let mut gid = None;
        assert_eq!(tag_primitive(fig, ArtistId(1), &mut gid), None);
        assert!(gid.is_none());

        let scope = HighlightScope::enter(fig, HashMap::from([(ArtistId(1), target(fig, 0))]));
        assert!(scope_active());
        let id = tag_primitive(fig, ArtistId(1), &mut gid).unwrap();
        assert!(id.starts_with("maidr-900001-"));
        assert_eq!(tag_primitive(fig, ArtistId(1), &mut gid).unwrap(), id, "idempotent");
        let mut spine = None;
        assert_eq!(tag_primitive(fig, ArtistId(2), &mut spine), None);
        assert_eq!(tag_primitive(FigureId(900_002), ArtistId(1), &mut None), None);
        let map = scope.finish();
        assert_eq!(map.len(), 1);
        assert!(!scope_active());
    }

    #[test]
    fn ids_are_unique_across_scopes() {
        let fig = FigureId(900_003);
        let mut seen = HashSet::new();
        for _ in 0..3 {
            let _scope = HighlightScope::enter(fig, HashMap::from([(ArtistId(1), target(fig, 0))]));
            let id = tag_primitive(fig, ArtistId(1), &mut None).unwrap();
            assert!(seen.insert(id));
        }
    }

    #[test]
    fn injection_touches_only_mapped_elements() {
        let fig = FigureId(7);
        let svg = "<svg><g id=\"maidr-7-1\"><path/></g><g id=\"maidr-7-2\"/><g id=\"patch_1\"/><text>id=\"maidr-7-1\"</text></svg>";
        let map: ElementsMap = [("maidr-7-1".to_string(), target(fig, 0)), ("maidr-7-9".to_string(), target(fig, 1))].into();
        let (out, report) = inject_element_attributes(svg, &map);
        assert_eq!(out.matches("maidr=\"true\"").count(), 1);
        assert!(out.contains("<g id=\"maidr-7-1\" maidr=\"true\" maidr-id=\"maidr-7-1\">"));
        assert!(out.contains("<g id=\"maidr-7-2\"/>"));
        assert_eq!(report.tagged, ["maidr-7-1"]);
        assert_eq!(report.missing, ["maidr-7-9"]);
        assert_eq!(strip_injected(&out).unwrap(), svg);

        let (same, r) = inject_element_attributes(svg, &ElementsMap::new());
        assert_eq!(same, svg);
        assert!(r.tagged.is_empty());
    }

    #[test]
    fn structure_ignores_id_spelling_only() {
        let a = r##"<svg><g id="x" clip-path="url(#c)"><use xlink:href="#m"/></g><defs><path id="m"/><clipPath id="c"/></defs></svg>"##;
        let b = r##"<svg>
  <g clip-path="url(#k)" id="y"><use xlink:href="#n"/></g>
  <defs><path id="n"/><clipPath id="k"/></defs>
</svg>"##;
        assert!(structurally_equal(a, b).unwrap());
        let swapped = r##"<svg><g id="x" clip-path="url(#c)"><use xlink:href="#c"/></g><defs><path id="m"/><clipPath id="c"/></defs></svg>"##;
        assert!(!structurally_equal(a, swapped).unwrap());
        let moved = r##"<svg><g id="x" clip-path="url(#c)"><use xlink:href="#m"/></g><defs><path id="m" d="M0"/><clipPath id="c"/></defs></svg>"##;
        assert!(structural_difference(a, moved).unwrap().is_some());
    }

    #[test]
    fn selectors_resolve() {
        let svg = r#"<svg><g id="a" maidr-id="maidr-1-1"/><g id="b" maidr-id="maidr-1-2"/><g id="c"/></svg>"#;
        assert_eq!(select(svg, r#"[maidr-id^="maidr-1-"]"#).unwrap(), ["a", "b"]);
        assert_eq!(select(svg, r#"[maidr-id="maidr-1-2"],[id="c"]"#).unwrap(), ["b", "c"]);
        assert!(select(svg, "g").is_err());
    }

    #[test]
    fn draw_hook_tags_bars_only() {
        install_draw_hooks().unwrap();
        let fig = Figure::new();
        let ax = fig.add_subplot(1, 1, 0, 0).unwrap();
        let c = ax.bar(["a", "b", "c"], &[2.0, 5.0, 3.0], &BarOptions::default()).unwrap();
        let patches = ax.read(|a| crate::extraction::extract_container(a.container(c).unwrap()).unwrap());
        let tracked = patches
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, target(fig.id(), i)))
            .collect();
        let scope = HighlightScope::enter(fig.id(), tracked);
        let svg = fig.to_svg();
        let map = scope.finish();
        assert_eq!(map.len(), 3);
        let (out, report) = inject_element_attributes(&svg, &map);
        assert_eq!(report.tagged.len(), 3);
        assert!(report.missing.is_empty());
        assert_eq!(out.matches("maidr=\"true\"").count(), 3);
        assert!(structurally_equal(&strip_injected(&out).unwrap(), &svg).unwrap());
    }
}
