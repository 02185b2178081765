//! SVG backend.
//!
//! Output layout follows the usual structure of a vector plotting backend:
//! one `<g>` per figure, per axes, and per artist, with auto ids such as
//! `patch_3` or `line2d_7` unless the artist carries a graphics id.

use std::fmt::Write;

use crate::artist::{Artist, ArtistClass, DrawStyle, Line2D, Marker, PathCollection, Primitive, QuadMesh, Rectangle};
use crate::axes::mesh_color;
use crate::color::Color;
use crate::figure::{AxesData, AxesKind, FigureData, Legend, LegendSwatch};
use crate::hooks::{self, DrawEvent};
use crate::layout::Transform;

/// Writes a coordinate with at most six decimals and no trailing zeros.
pub(crate) fn num(out: &mut String, v: f64) {
    let r = (v * 1e6).round() / 1e6 + 0.0;
    let _ = write!(out, "{r}");
}

pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            _ => out.push(c),
        }
    }
    out
}

#[derive(Default)]
struct Counters {
    patch: usize,
    line2d: usize,
    text: usize,
    collection: usize,
    mesh: usize,
    marker: usize,
    legend: usize,
    xtick: usize,
    ytick: usize,
}

impl Counters {
    fn auto_id(&mut self, class: ArtistClass) -> String {
        match class {
            ArtistClass::Patch | ArtistClass::Spine => {
                self.patch += 1;
                format!("patch_{}", self.patch)
            }
            ArtistClass::Line2D | ArtistClass::Tick => {
                self.line2d += 1;
                format!("line2d_{}", self.line2d)
            }
            ArtistClass::Text => {
                self.text += 1;
                format!("text_{}", self.text)
            }
            ArtistClass::PathCollection => {
                self.collection += 1;
                format!("PathCollection_{}", self.collection)
            }
            ArtistClass::QuadMesh => {
                self.mesh += 1;
                format!("QuadMesh_{}", self.mesh)
            }
            ArtistClass::Legend => {
                self.legend += 1;
                format!("legend_{}", self.legend)
            }
        }
    }
}

struct Writer<'a> {
    out: String,
    ids: Counters,
    figure: crate::figure::FigureId,
    clip: Option<String>,
    defs: &'a mut Vec<String>,
}

impl Writer<'_> {
    /// Opens the group for one drawn element, consulting draw hooks for its id.
    fn open(&mut self, class: ArtistClass, artist: Option<&mut Artist>) {
        let auto = self.ids.auto_id(class);
        let id = match artist {
            Some(a) => {
                let mut event = DrawEvent {
                    figure: self.figure,
                    artist: Some(a.id),
                    class,
                    gid: &mut a.gid,
                };
                hooks::before_draw(&mut event);
                a.gid.clone().unwrap_or(auto)
            }
            None => {
                let mut gid = None;
                let mut event = DrawEvent {
                    figure: self.figure,
                    artist: None,
                    class,
                    gid: &mut gid,
                };
                hooks::before_draw(&mut event);
                gid.unwrap_or(auto)
            }
        };
        self.out.push_str("   <g id=\"");
        self.out.push_str(&escape(&id));
        self.out.push_str("\">\n");
    }

    fn close(&mut self) {
        self.out.push_str("   </g>\n");
    }

    fn clip_attr(&mut self) {
        if let Some(c) = &self.clip {
            let _ = write!(self.out, " clip-path=\"url(#{c})\"");
        }
    }

    fn rect_path(&mut self, x0: f64, y0: f64, x1: f64, y1: f64) {
        let o = &mut self.out;
        o.push_str("M ");
        num(o, x0);
        o.push(' ');
        num(o, y0);
        o.push_str(" L ");
        num(o, x1);
        o.push(' ');
        num(o, y0);
        o.push_str(" L ");
        num(o, x1);
        o.push(' ');
        num(o, y1);
        o.push_str(" L ");
        num(o, x0);
        o.push(' ');
        num(o, y1);
        o.push_str(" z");
    }

    fn segment(&mut self, x0: f64, y0: f64, x1: f64, y1: f64, stroke: Color, width: f64) {
        let o = &mut self.out;
        o.push_str("    <path d=\"M ");
        num(o, x0);
        o.push(' ');
        num(o, y0);
        o.push_str(" L ");
        num(o, x1);
        o.push(' ');
        num(o, y1);
        let _ = write!(o, "\" style=\"fill: none; stroke: {stroke}; stroke-width: ");
        num(o, width);
        o.push_str("\"/>\n");
    }

    fn text(&mut self, x: f64, y: f64, text: &str, size: f64, anchor: &str, rotate: bool) {
        self.open(ArtistClass::Text, None);
        let o = &mut self.out;
        o.push_str("    <text x=\"");
        num(o, x);
        o.push_str("\" y=\"");
        num(o, y);
        o.push('"');
        if rotate {
            o.push_str(" transform=\"rotate(-90 ");
            num(o, x);
            o.push(' ');
            num(o, y);
            o.push_str(")\"");
        }
        let _ = writeln!(
            o,
            " style=\"font-size: {size}px; font-family: sans-serif; text-anchor: {anchor}; fill: #000000\">{}</text>",
            escape(text)
        );
        self.close();
    }

    fn marker_def(&mut self, marker: Marker, radius: f64) -> String {
        self.ids.marker += 1;
        let id = format!("m{}-{}", self.figure, self.ids.marker);
        let mut d = String::new();
        match marker {
            Marker::Circle => {
                let k = fmt(radius * 0.552_284_749_8);
                let r = fmt(radius);
                let _ = write!(d, "M 0 {r} C {k} {r} {r} {k} {r} 0 C {r} -{k} {k} -{r} 0 -{r} C -{k} -{r} -{r} -{k} -{r} 0 C -{r} {k} -{k} {r} 0 {r} z");
            }
            Marker::Square => {
                let r = fmt(radius);
                let _ = write!(d, "M -{r} -{r} L {r} -{r} L {r} {r} L -{r} {r} z");
            }
        }
        self.defs.push(format!("  <path id=\"{id}\" d=\"{d}\"/>"));
        id
    }

    fn markers(&mut self, points: impl Iterator<Item = (f64, f64)>, marker: Marker, radius: f64, color: Color) {
        let id = self.marker_def(marker, radius);
        self.out.push_str("    <g");
        self.clip_attr();
        self.out.push_str(">\n");
        for (x, y) in points {
            if !(x.is_finite() && y.is_finite()) {
                continue;
            }
            let o = &mut self.out;
            let _ = write!(o, "     <use xlink:href=\"#{id}\" x=\"");
            num(o, x);
            o.push_str("\" y=\"");
            num(o, y);
            let _ = writeln!(o, "\" style=\"fill: {color}; stroke: {color}\"/>");
        }
        self.out.push_str("    </g>\n");
    }
}

/// Renders every axes of `fig`, calling draw hooks as each element is written.
pub(crate) fn render(fig: &mut FigureData) -> String {
    let canvas = fig.canvas();
    let figure = fig.id;
    let mut defs = Vec::new();
    let mut w = Writer {
        out: String::with_capacity(16 * 1024),
        ids: Counters::default(),
        figure,
        clip: None,
        defs: &mut defs,
    };
    let (cw, ch) = (fmt(canvas.0), fmt(canvas.1));
    w.out.push_str("<?xml version=\"1.0\" encoding=\"utf-8\" standalone=\"no\"?>\n");
    let _ = write!(
        w.out,
        "<svg xmlns:xlink=\"http://www.w3.org/1999/xlink\" width=\"{cw}pt\" height=\"{ch}pt\" viewBox=\"0 0 {cw} {ch}\" xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\">\n"
    );
    w.out.push_str(" <defs>\n  <style type=\"text/css\">*{stroke-linejoin: round; stroke-linecap: butt}</style>\n </defs>\n");
    w.out.push_str(" <g id=\"figure_1\">\n");
    w.open(ArtistClass::Patch, None);
    w.out.push_str("    <path d=\"");
    w.rect_path(0.0, canvas.1, canvas.0, 0.0);
    w.out.push_str("\" style=\"fill: #ffffff\"/>\n");
    w.close();

    let mut clips = Vec::new();
    for ax in fig.axes.iter_mut() {
        let t = Transform::new(ax, canvas);
        let (left, top, width, height) = t.bounds();
        let clip = format!("p{}-{}", figure, ax.index);
        clips.push(format!(
            "  <clipPath id=\"{clip}\">\n   <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>\n  </clipPath>",
            fmt(left),
            fmt(top),
            fmt(width),
            fmt(height)
        ));
        let _ = writeln!(w.out, "  <g id=\"axes_{}\">", ax.index + 1);
        w.open(ArtistClass::Patch, None);
        w.out.push_str("    <path d=\"");
        w.rect_path(left, top + height, left + width, top);
        w.out.push_str("\" style=\"fill: #ffffff\"/>\n");
        w.close();

        w.clip = Some(clip);
        draw_artists(&mut w, ax, &t);
        w.clip = None;
        draw_axis_decorations(&mut w, ax, &t);
        if let Some(legend) = ax.legend.clone() {
            draw_legend(&mut w, &legend, &t);
        }
        w.out.push_str("  </g>\n");
    }
    w.out.push_str(" </g>\n");
    let mut out = w.out;
    out.push_str(" <defs>\n");
    for d in defs.iter().chain(&clips) {
        out.push_str(d);
        out.push('\n');
    }
    out.push_str(" </defs>\n</svg>\n");
    out
}

fn fmt(v: f64) -> String {
    let mut s = String::new();
    num(&mut s, v);
    s
}

fn draw_artists(w: &mut Writer<'_>, ax: &mut AxesData, t: &Transform) {
    let mut order: Vec<usize> = (0..ax.artists.len()).collect();
    order.sort_by_key(|&i| ax.artists[i].zorder());
    for i in order {
        let artist = &mut ax.artists[i];
        if !artist.visible {
            continue;
        }
        let class = artist.class();
        let primitive = artist.primitive.clone();
        w.open(class, Some(artist));
        match &primitive {
            Primitive::Rectangle(r) => draw_rect(w, r, t),
            Primitive::Line(l) => draw_line(w, l, t),
            Primitive::Collection(c) => draw_collection(w, c, t),
            Primitive::Mesh(m) => draw_mesh(w, m, t),
            Primitive::Text(tx) => {
                let o = &mut w.out;
                o.push_str("    <text x=\"");
                num(o, t.x(tx.x));
                o.push_str("\" y=\"");
                num(o, t.y(tx.y));
                let _ = writeln!(o, "\" style=\"font-size: 10px; fill: {}\">{}</text>", tx.color, escape(&tx.text));
            }
        }
        w.close();
    }
}

fn draw_rect(w: &mut Writer<'_>, r: &Rectangle, t: &Transform) {
    w.out.push_str("    <path d=\"");
    w.rect_path(t.x(r.x), t.y(r.y), t.x(r.x + r.width), t.y(r.y + r.height));
    w.out.push('"');
    w.clip_attr();
    let _ = write!(w.out, " style=\"fill: {}", r.fill);
    if let Some(edge) = r.edge {
        let _ = write!(w.out, "; stroke: {edge}; stroke-linejoin: miter");
    }
    w.out.push_str("\"/>\n");
}

fn draw_line(w: &mut Writer<'_>, l: &Line2D, t: &Transform) {
    if l.connected && l.xdata.len() > 1 {
        let o = &mut w.out;
        o.push_str("    <path d=\"");
        let mut pen_down = false;
        let mut prev_x = None;
        for (&x, &y) in l.xdata.iter().zip(&l.ydata) {
            if !(x.is_finite() && y.is_finite()) {
                pen_down = false;
                prev_x = None;
                continue;
            }
            let (px, py) = (t.x(x), t.y(y));
            if pen_down {
                if let (DrawStyle::StepsPre, Some(prev)) = (l.draw_style, prev_x) {
                    o.push_str(" L ");
                    num(o, prev);
                    o.push(' ');
                    num(o, py);
                }
                o.push_str(" L ");
            } else {
                if !o.ends_with('"') {
                    o.push(' ');
                }
                o.push_str("M ");
                pen_down = true;
            }
            num(o, px);
            o.push(' ');
            num(o, py);
            prev_x = Some(px);
        }
        o.push('"');
        w.clip_attr();
        let o = &mut w.out;
        let _ = write!(o, " style=\"fill: none; stroke: {}; stroke-width: ", l.color);
        num(o, l.width);
        o.push_str("; stroke-linecap: square\"/>\n");
    }
    if let Some(marker) = l.marker {
        let pts = l.xdata.iter().zip(&l.ydata).map(|(&x, &y)| (t.x(x), t.y(y)));
        w.markers(pts, marker, 3.0, l.color);
    }
}

fn draw_collection(w: &mut Writer<'_>, c: &PathCollection, t: &Transform) {
    let radius = c.size.max(0.0).sqrt() / 2.0;
    let pts = c.offsets.iter().map(|&(x, y)| (t.x(x), t.y(y)));
    w.markers(pts, c.marker, radius, c.color);
}

fn draw_mesh(w: &mut Writer<'_>, m: &QuadMesh, t: &Transform) {
    for r in 0..m.rows {
        for c in 0..m.cols {
            let v = m.value(r, c);
            w.out.push_str("    <path d=\"");
            w.rect_path(
                t.x(m.x_edges[c]),
                t.y(m.y_edges[r]),
                t.x(m.x_edges[c + 1]),
                t.y(m.y_edges[r + 1]),
            );
            w.out.push('"');
            w.clip_attr();
            let fill = if v.is_finite() {
                mesh_color(m, v).to_string()
            } else {
                "none".to_string()
            };
            let _ = writeln!(w.out, " style=\"fill: {fill}\"/>");
        }
    }
}

fn draw_axis_decorations(w: &mut Writer<'_>, ax: &AxesData, t: &Transform) {
    let (left, top, width, height) = t.bounds();
    let bottom = top + height;
    let right = left + width;
    let (xlim, ylim) = ax.view_limits();
    let colorbar = ax.kind == AxesKind::Colorbar;

    let _ = writeln!(w.out, "   <g id=\"axis_x{}\">", ax.index + 1);
    for (loc, label) in ax.xaxis.resolved_ticks(xlim) {
        let px = t.x(loc);
        if !(px >= left - 1e-6 && px <= right + 1e-6) {
            continue;
        }
        w.ids.xtick += 1;
        let _ = writeln!(w.out, "   <g id=\"xtick_{}\">", w.ids.xtick);
        w.open(ArtistClass::Tick, None);
        w.segment(px, bottom, px, bottom + 3.5, Color::BLACK, 0.8);
        w.close();
        w.text(px, bottom + 14.0, &label, 10.0, "middle", false);
        w.out.push_str("   </g>\n");
    }
    if !ax.xlabel.is_empty() {
        w.text(left + width / 2.0, bottom + 28.0, &ax.xlabel, 10.0, "middle", false);
    }
    w.out.push_str("   </g>\n");

    let _ = writeln!(w.out, "   <g id=\"axis_y{}\">", ax.index + 1);
    for (loc, label) in ax.yaxis.resolved_ticks(ylim) {
        let py = t.y(loc);
        if !(py >= top - 1e-6 && py <= bottom + 1e-6) {
            continue;
        }
        w.ids.ytick += 1;
        let _ = writeln!(w.out, "   <g id=\"ytick_{}\">", w.ids.ytick);
        w.open(ArtistClass::Tick, None);
        if colorbar {
            w.segment(right, py, right + 3.5, py, Color::BLACK, 0.8);
        } else {
            w.segment(left - 3.5, py, left, py, Color::BLACK, 0.8);
        }
        w.close();
        if colorbar {
            w.text(right + 6.0, py + 3.5, &label, 10.0, "start", false);
        } else {
            w.text(left - 6.0, py + 3.5, &label, 10.0, "end", false);
        }
        w.out.push_str("   </g>\n");
    }
    if !ax.ylabel.is_empty() {
        w.text(left - 36.0, top + height / 2.0, &ax.ylabel, 10.0, "middle", true);
    }
    w.out.push_str("   </g>\n");

    for (x0, y0, x1, y1) in [
        (left, bottom, left, top),
        (right, bottom, right, top),
        (left, bottom, right, bottom),
        (left, top, right, top),
    ] {
        w.open(ArtistClass::Spine, None);
        w.segment(x0, y0, x1, y1, Color::BLACK, 0.8);
        w.close();
    }
    if !ax.title.is_empty() {
        w.text(left + width / 2.0, top - 6.0, &ax.title, 12.0, "middle", false);
    }
}

fn draw_legend(w: &mut Writer<'_>, legend: &Legend, t: &Transform) {
    let (left, top, width, _) = t.bounds();
    let row = 14.0;
    let longest = legend.entries.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let box_w = 30.0 + longest as f64 * 6.0;
    let box_h = row * legend.entries.len() as f64 + 6.0;
    let x0 = left + width - box_w - 6.0;
    let y0 = top + 6.0;
    w.open(ArtistClass::Legend, None);
    w.out.push_str("    <path d=\"");
    w.rect_path(x0, y0, x0 + box_w, y0 + box_h);
    w.out.push_str("\" style=\"fill: #ffffff; opacity: 0.8; stroke: #cccccc\"/>\n");
    for (i, (label, swatch)) in legend.entries.iter().enumerate() {
        let y = y0 + 3.0 + row * (i as f64 + 0.5);
        match swatch {
            LegendSwatch::Patch(c) => {
                w.out.push_str("    <path d=\"");
                w.rect_path(x0 + 4.0, y - 3.5, x0 + 18.0, y + 3.5);
                let _ = writeln!(w.out, "\" style=\"fill: {c}\"/>");
            }
            LegendSwatch::Line(c) => w.segment(x0 + 4.0, y, x0 + 18.0, y, *c, 1.5),
        }
        w.text(x0 + 22.0, y + 3.5, label, 9.0, "start", false);
    }
    w.close();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_are_trimmed() {
        assert_eq!(fmt(1.0), "1");
        assert_eq!(fmt(0.1 + 0.2), "0.3");
        assert_eq!(fmt(-0.0000001), "0");
        assert_eq!(fmt(12.3456789), "12.345679");
    }

    #[test]
    fn escapes_markup() {
        assert_eq!(escape("a<b & 'c'"), "a&lt;b &amp; &#39;c&#39;");
    }
}
