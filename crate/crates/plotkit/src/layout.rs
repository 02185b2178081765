//! Data limits and the data-to-canvas transform.

use crate::artist::Primitive;
use crate::figure::{AxesData, AxisData};

const MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy)]
struct Extent {
    lo: f64,
    hi: f64,
    sticky_lo: bool,
    sticky_hi: bool,
}

impl Extent {
    fn empty() -> Self {
        Extent {
            lo: f64::INFINITY,
            hi: f64::NEG_INFINITY,
            sticky_lo: false,
            sticky_hi: false,
        }
    }

    fn add(&mut self, v: f64) {
        if v.is_finite() {
            self.lo = self.lo.min(v);
            self.hi = self.hi.max(v);
        }
    }

    /// Adds an edge that the margin should not expand past (bar baselines, mesh borders).
    fn add_sticky(&mut self, v: f64) {
        if !v.is_finite() {
            return;
        }
        if v <= self.lo {
            self.lo = v;
            self.sticky_lo = true;
        }
        if v >= self.hi {
            self.hi = v;
            self.sticky_hi = true;
        }
    }

    fn finish(self) -> (f64, f64) {
        if self.lo > self.hi {
            return (0.0, 1.0);
        }
        if self.lo == self.hi {
            let pad = if self.lo == 0.0 { 1.0 } else { self.lo.abs() * MARGIN };
            return (self.lo - pad, self.hi + pad);
        }
        let pad = (self.hi - self.lo) * MARGIN;
        let lo = if self.sticky_lo { self.lo } else { self.lo - pad };
        let hi = if self.sticky_hi { self.hi } else { self.hi + pad };
        (lo, hi)
    }
}

/// Automatic view limits for both axes of `ax`.
pub(crate) fn data_limits(ax: &AxesData) -> ((f64, f64), (f64, f64)) {
    let mut x = Extent::empty();
    let mut y = Extent::empty();
    let mut x_sticky = Vec::new();
    let mut y_sticky = Vec::new();
    for artist in ax.artists.iter().filter(|a| a.visible) {
        match &artist.primitive {
            Primitive::Rectangle(r) => {
                x.add(r.x);
                x.add(r.x + r.width);
                y.add(r.y);
                y.add(r.y + r.height);
                // bars grow from a baseline that should touch the axes edge
                if r.y == 0.0 || r.y + r.height == 0.0 {
                    y_sticky.push(0.0);
                }
                if r.x == 0.0 || r.x + r.width == 0.0 {
                    x_sticky.push(0.0);
                }
            }
            Primitive::Line(l) => {
                l.xdata.iter().for_each(|&v| x.add(v));
                l.ydata.iter().for_each(|&v| y.add(v));
            }
            Primitive::Collection(c) => {
                for &(px, py) in &c.offsets {
                    x.add(px);
                    y.add(py);
                }
            }
            Primitive::Mesh(m) => {
                m.x_edges.iter().for_each(|&v| x.add(v));
                m.y_edges.iter().for_each(|&v| y.add(v));
                if let (Some(&a), Some(&b)) = (m.x_edges.first(), m.x_edges.last()) {
                    x_sticky.extend([a, b]);
                }
                if let (Some(&a), Some(&b)) = (m.y_edges.first(), m.y_edges.last()) {
                    y_sticky.extend([a, b]);
                }
            }
            Primitive::Text(_) => {}
        }
    }
    // sticky edges only apply when they bound the data
    for v in x_sticky {
        if v <= x.lo || v >= x.hi {
            x.add_sticky(v);
        }
    }
    for v in y_sticky {
        if v <= y.lo || v >= y.hi {
            y.add_sticky(v);
        }
    }
    (x.finish(), y.finish())
}

/// Maps data coordinates of one axes onto canvas pixels (y grows downward).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Transform {
    xlim: (f64, f64),
    ylim: (f64, f64),
    left: f64,
    top: f64,
    width: f64,
    height: f64,
}

impl Transform {
    pub(crate) fn new(ax: &AxesData, canvas: (f64, f64)) -> Self {
        let (mut xlim, mut ylim) = ax.view_limits();
        orient(&mut xlim, &ax.xaxis);
        orient(&mut ylim, &ax.yaxis);
        let [l, b, w, h] = ax.rect;
        Transform {
            xlim,
            ylim,
            left: l * canvas.0,
            top: (1.0 - b - h) * canvas.1,
            width: w * canvas.0,
            height: h * canvas.1,
        }
    }

    pub(crate) fn x(&self, v: f64) -> f64 {
        let span = self.xlim.1 - self.xlim.0;
        self.left + (v - self.xlim.0) / span * self.width
    }

    pub(crate) fn y(&self, v: f64) -> f64 {
        let span = self.ylim.1 - self.ylim.0;
        self.top + self.height - (v - self.ylim.0) / span * self.height
    }

    pub(crate) fn bounds(&self) -> (f64, f64, f64, f64) {
        (self.left, self.top, self.width, self.height)
    }
}

fn orient(lim: &mut (f64, f64), axis: &AxisData) {
    if axis.inverted {
        *lim = (lim.1, lim.0);
    }
}
