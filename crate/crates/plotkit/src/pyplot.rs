//! Stateful scripting interface over an implicit current figure and axes.
//!
//! The current figure is tracked per thread.

use std::cell::RefCell;
use std::path::Path;

use crate::artist::{ArtistId, ContainerId};
use crate::axes::{BarOptions, BarPositions, BoxOptions, Columns, HistOptions, HistResult, LineOptions, MeshOptions, ScatterOptions};
use crate::error::Result;
use crate::figure::{Axes, Figure};
use crate::hooks::{self, ApiLayer, ArgValue, CallArgs, CallOutcome};

#[derive(Default)]
struct State {
    figures: Vec<Figure>,
    current: Option<(Figure, Option<Axes>)>,
}

thread_local! {
    static STATE: RefCell<State> = RefCell::new(State::default());
}

/// Starts a new figure and makes it current.
pub fn figure() -> Figure {
    let fig = Figure::new();
    STATE.with(|s| {
        let mut s = s.borrow_mut();
        s.figures.push(fig.clone());
        s.current = Some((fig.clone(), None));
    });
    fig
}

/// The current figure, creating one if none exists.
pub fn gcf() -> Figure {
    let existing = STATE.with(|s| s.borrow().current.as_ref().map(|(f, _)| f.clone()));
    existing.unwrap_or_else(figure)
}

/// The current axes, creating a single subplot if the figure has none.
pub fn gca() -> Axes {
    let fig = gcf();
    let current = STATE.with(|s| s.borrow().current.as_ref().and_then(|(_, a)| a.clone()));
    if let Some(ax) = current {
        return ax;
    }
    let ax = match fig.axes().into_iter().next() {
        Some(ax) => ax,
        None => fig.add_subplot(1, 1, 0, 0).expect("1x1 grid is valid"),
    };
    sca(&ax);
    ax
}

/// Makes `ax` and its figure current.
pub fn sca(ax: &Axes) {
    STATE.with(|s| {
        let mut s = s.borrow_mut();
        let fig = ax.figure().clone();
        if !s.figures.contains(&fig) {
            s.figures.push(fig.clone());
        }
        s.current = Some((fig, Some(ax.clone())));
    });
}

/// New figure with an `nrows` x `ncols` grid; the first axes becomes current.
pub fn subplots(nrows: usize, ncols: usize) -> Result<(Figure, Vec<Axes>)> {
    let fig = figure();
    let axes = fig.subplots(nrows, ncols)?;
    if let Some(first) = axes.first() {
        sca(first);
    }
    Ok((fig, axes))
}

/// Closes the current figure.
pub fn close() {
    let current = STATE.with(|s| s.borrow_mut().current.take());
    if let Some((fig, _)) = current {
        close_figure(&fig);
    }
}

pub fn close_figure(fig: &Figure) {
    STATE.with(|s| {
        let mut s = s.borrow_mut();
        s.figures.retain(|f| f != fig);
        if s.current.as_ref().is_some_and(|(f, _)| f == fig) {
            s.current = s.figures.last().cloned().map(|f| (f, None));
        }
    });
    fig.close();
}

/// Closes every figure opened through this interface on this thread.
pub fn close_all() {
    let figures = STATE.with(|s| {
        let mut s = s.borrow_mut();
        s.current = None;
        std::mem::take(&mut s.figures)
    });
    for f in figures {
        f.close();
    }
}

pub fn title(text: impl Into<String>) {
    gca().set_title(text);
}

pub fn xlabel(text: impl Into<String>) {
    gca().set_xlabel(text);
}

pub fn ylabel(text: impl Into<String>) {
    gca().set_ylabel(text);
}

pub fn legend() {
    gca().legend();
}

pub fn savefig(path: impl AsRef<Path>) -> std::io::Result<()> {
    gcf().savefig(path)
}

/// Dispatches a scripting call that forwards to one axes method.
fn forward<R>(
    target: &'static str,
    args: impl FnOnce() -> CallArgs,
    call: impl FnOnce(&Axes) -> Result<R>,
    outcome: impl Fn(&Axes, &R) -> CallOutcome,
) -> Result<R> {
    let ax = gca();
    hooks::dispatch(
        target,
        ApiLayer::Scripting,
        args,
        || {
            let r = call(&ax)?;
            let o = outcome(&ax, &r);
            Ok((r, o))
        },
        |(_, o): &(R, CallOutcome)| o.clone(),
    )
    .map(|(r, _)| r)
}

pub fn bar(x: impl Into<BarPositions>, heights: &[f64], opts: &BarOptions) -> Result<ContainerId> {
    let x = x.into();
    forward(
        "pyplot.bar",
        || {
            CallArgs::new()
                .with("n", ArgValue::Len(heights.len()))
                .with_opt("bottom", opts.bottom.as_ref().map(|b| ArgValue::Len(b.len())))
                .with("dodge", ArgValue::Bool(opts.dodge))
        },
        |ax| ax.bar(x.clone(), heights, opts),
        |ax, c| CallOutcome::new(ax.clone()).containers([*c]),
    )
}

pub fn hist(values: &[f64], opts: &HistOptions) -> Result<HistResult> {
    forward(
        "pyplot.hist",
        || {
            CallArgs::new()
                .with("n", ArgValue::Len(values.len()))
                .with("bins", ArgValue::Int(opts.bins as i64))
        },
        |ax| ax.hist(values, opts),
        |ax, r| CallOutcome::new(ax.clone()).containers([r.container]),
    )
}

pub fn plot(x: &[f64], y: impl Into<Columns>, opts: &LineOptions) -> Result<Vec<ArtistId>> {
    let y = y.into();
    let series = y.0.len();
    forward(
        "pyplot.plot",
        || {
            CallArgs::new()
                .with("n", ArgValue::Len(x.len()))
                .with("series", ArgValue::Len(series))
        },
        |ax| ax.plot(x, y, opts),
        |ax, ids| CallOutcome::new(ax.clone()).artists(ids.iter().copied()),
    )
}

pub fn step(x: &[f64], y: &[f64], opts: &LineOptions) -> Result<ArtistId> {
    forward(
        "pyplot.step",
        || CallArgs::new().with("n", ArgValue::Len(x.len())).with("series", ArgValue::Len(1)),
        |ax| ax.step(x, y, opts),
        |ax, id| CallOutcome::new(ax.clone()).artists([*id]),
    )
}

pub fn scatter(x: &[f64], y: &[f64], opts: &ScatterOptions) -> Result<ArtistId> {
    forward(
        "pyplot.scatter",
        || CallArgs::new().with("n", ArgValue::Len(x.len())),
        |ax| ax.scatter(x, y, opts),
        |ax, id| CallOutcome::new(ax.clone()).artists([*id]),
    )
}

pub fn boxplot(groups: &[Vec<f64>], opts: &BoxOptions) -> Result<ContainerId> {
    forward(
        "pyplot.boxplot",
        || {
            CallArgs::new()
                .with("groups", ArgValue::Len(groups.len()))
                .with("vert", ArgValue::Bool(opts.vert))
        },
        |ax| ax.boxplot(groups, opts),
        |ax, c| CallOutcome::new(ax.clone()).containers([*c]),
    )
}

pub fn pcolormesh(rows: &[Vec<f64>], opts: &MeshOptions) -> Result<ArtistId> {
    forward(
        "pyplot.pcolormesh",
        || CallArgs::new().with("rows", ArgValue::Len(rows.len())),
        |ax| ax.pcolormesh(rows, opts),
        |ax, id| CallOutcome::new(ax.clone()).artists([*id]),
    )
}

pub fn errorbar(x: &[f64], y: &[f64], yerr: &[f64], label: Option<&str>) -> Result<ContainerId> {
    forward(
        "pyplot.errorbar",
        || CallArgs::new().with("n", ArgValue::Len(x.len())),
        |ax| ax.errorbar(x, y, yerr, label),
        |ax, c| CallOutcome::new(ax.clone()).containers([*c]),
    )
}

pub fn polar(theta: &[f64], r: &[f64]) -> Result<Vec<ArtistId>> {
    forward(
        "pyplot.polar",
        || CallArgs::new().with("n", ArgValue::Len(theta.len())),
        |ax| ax.polar(theta, r),
        |ax, ids| CallOutcome::new(ax.clone()).artists(ids.iter().copied()),
    )
}
