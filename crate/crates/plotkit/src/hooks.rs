//! Runtime wrapper table for plot-creation entry points and draw paths.
//!
//! Every public plot-creation function routes through [`dispatch`] under a
//! stable qualified name (for example `"Axes.bar"` or `"pyplot.scatter"`).
//! Instrumentation installs a [`CallWrapper`] for a name with [`wrap`]; the
//! wrapper observes the call and decides when the original body runs, while
//! the caller still receives the original return value and errors.
//!
//! Drawing works the same way per [`ArtistClass`]: a [`DrawHook`] sees each
//! primitive right before the SVG backend writes it and may assign its
//! graphics id.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::artist::{ArtistClass, ArtistId, ContainerId};
use crate::figure::{Axes, FigureId};

/// Which API surface a target belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ApiLayer {
    Scripting,
    ObjectOriented,
    Wrapper,
}

impl ApiLayer {
    pub fn as_str(self) -> &'static str {
        match self {
            ApiLayer::Scripting => "scripting",
            ApiLayer::ObjectOriented => "object-oriented",
            ApiLayer::Wrapper => "high-level-wrapper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TargetInfo {
    pub name: &'static str,
    pub layer: ApiLayer,
}

const fn target(name: &'static str, layer: ApiLayer) -> TargetInfo {
    TargetInfo { name, layer }
}

/// Every wrappable plot-creation entry point of this toolkit version.
pub const TARGETS: &[TargetInfo] = &[
    target("Axes.bar", ApiLayer::ObjectOriented),
    target("Axes.hist", ApiLayer::ObjectOriented),
    target("Axes.plot", ApiLayer::ObjectOriented),
    target("Axes.step", ApiLayer::ObjectOriented),
    target("Axes.scatter", ApiLayer::ObjectOriented),
    target("Axes.boxplot", ApiLayer::ObjectOriented),
    target("Axes.pcolormesh", ApiLayer::ObjectOriented),
    target("Axes.errorbar", ApiLayer::ObjectOriented),
    target("Axes.polar", ApiLayer::ObjectOriented),
    target("pyplot.bar", ApiLayer::Scripting),
    target("pyplot.hist", ApiLayer::Scripting),
    target("pyplot.plot", ApiLayer::Scripting),
    target("pyplot.step", ApiLayer::Scripting),
    target("pyplot.scatter", ApiLayer::Scripting),
    target("pyplot.boxplot", ApiLayer::Scripting),
    target("pyplot.pcolormesh", ApiLayer::Scripting),
    target("pyplot.errorbar", ApiLayer::Scripting),
    target("pyplot.polar", ApiLayer::Scripting),
    target("statplot.barplot", ApiLayer::Wrapper),
    target("statplot.countplot", ApiLayer::Wrapper),
    target("statplot.histplot", ApiLayer::Wrapper),
    target("statplot.lineplot", ApiLayer::Wrapper),
    target("statplot.scatterplot", ApiLayer::Wrapper),
    target("statplot.boxplot", ApiLayer::Wrapper),
    target("statplot.heatmap", ApiLayer::Wrapper),
];

pub fn find_target(name: &str) -> Option<TargetInfo> {
    TARGETS.iter().copied().find(|t| t.name == name)
}

/// A summarized call argument, enough for classification without copying data.
#[derive(Debug, Clone, PartialEq)]
pub enum ArgValue {
    Bool(bool),
    Int(i64),
    Float(f64),
    Text(String),
    /// Length of a sequence argument.
    Len(usize),
}

/// Named, ordered call arguments as seen by wrappers.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CallArgs(Vec<(&'static str, ArgValue)>);

impl CallArgs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &'static str, value: ArgValue) -> Self {
        self.0.push((name, value));
        self
    }

    /// Adds `name` only when `value` is `Some`.
    pub fn with_opt(self, name: &'static str, value: Option<ArgValue>) -> Self {
        match value {
            Some(v) => self.with(name, v),
            None => self,
        }
    }

    pub fn get(&self, name: &str) -> Option<&ArgValue> {
        self.0.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn flag(&self, name: &str) -> bool {
        matches!(self.get(name), Some(ArgValue::Bool(true)))
    }

    pub fn text(&self, name: &str) -> Option<&str> {
        match self.get(name) {
            Some(ArgValue::Text(s)) => Some(s),
            _ => None,
        }
    }

    pub fn len_of(&self, name: &str) -> Option<usize> {
        match self.get(name) {
            Some(ArgValue::Len(n)) => Some(*n),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &ArgValue)> {
        self.0.iter().map(|(n, v)| (*n, v))
    }
}

#[derive(Debug)]
pub struct Invocation<'a> {
    pub target: &'static str,
    pub layer: ApiLayer,
    pub args: &'a CallArgs,
}

/// What a successful plot-creation call produced.
#[derive(Debug, Clone)]
pub struct CallOutcome {
    pub axes: Axes,
    pub artists: Vec<ArtistId>,
    pub containers: Vec<ContainerId>,
}

impl CallOutcome {
    pub fn new(axes: Axes) -> Self {
        Self {
            axes,
            artists: Vec::new(),
            containers: Vec::new(),
        }
    }

    pub fn artists(mut self, ids: impl IntoIterator<Item = ArtistId>) -> Self {
        self.artists.extend(ids);
        self
    }

    pub fn containers(mut self, ids: impl IntoIterator<Item = ContainerId>) -> Self {
        self.containers.extend(ids);
        self
    }
}

/// Runs the wrapped original. Yields `None` when the original failed (the
/// error itself is returned to the caller untouched) or was already run.
pub type Next<'a> = dyn FnMut() -> Option<CallOutcome> + 'a;

pub trait CallWrapper: Send + Sync {
    /// Called in place of the original. Implementations must call `next`
    /// exactly once; if they do not, the original runs after they return.
    fn around(&self, invocation: &Invocation<'_>, next: &mut Next<'_>);
}

pub struct DrawEvent<'a> {
    pub figure: FigureId,
    /// `None` for decorations (spines, ticks, legend) that are not axes artists.
    pub artist: Option<ArtistId>,
    pub class: ArtistClass,
    pub gid: &'a mut Option<String>,
}

pub trait DrawHook: Send + Sync {
    fn before_draw(&self, event: &mut DrawEvent<'_>);
}

pub type CloseListener = dyn Fn(FigureId) + Send + Sync;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HookError {
    #[error("no such target `{0}` in plotkit {version}", version = crate::VERSION)]
    UnknownTarget(String),
    #[error("target `{0}` is already wrapped")]
    AlreadyWrapped(String),
    #[error("draw class {0:?} is already hooked")]
    AlreadyHooked(ArtistClass),
}

#[derive(Default)]
struct Table {
    calls: RwLock<HashMap<&'static str, Arc<dyn CallWrapper>>>,
    draws: RwLock<HashMap<ArtistClass, Arc<dyn DrawHook>>>,
    close: RwLock<Vec<Arc<CloseListener>>>,
}

static TABLE: OnceLock<Table> = OnceLock::new();
static ANY_CALL_WRAPPED: AtomicBool = AtomicBool::new(false);
static ANY_DRAW_HOOKED: AtomicBool = AtomicBool::new(false);

fn table() -> &'static Table {
    TABLE.get_or_init(Table::default)
}

/// Installs `wrapper` around `target`. A target can be wrapped once.
pub fn wrap(target: &str, wrapper: Arc<dyn CallWrapper>) -> Result<(), HookError> {
    let info = find_target(target).ok_or_else(|| HookError::UnknownTarget(target.to_string()))?;
    let mut calls = table().calls.write().unwrap_or_else(|e| e.into_inner());
    if calls.contains_key(info.name) {
        return Err(HookError::AlreadyWrapped(target.to_string()));
    }
    calls.insert(info.name, wrapper);
    ANY_CALL_WRAPPED.store(true, Ordering::Release);
    Ok(())
}

pub fn is_wrapped(target: &str) -> bool {
    table()
        .calls
        .read()
        .unwrap_or_else(|e| e.into_inner())
        .contains_key(target)
}

pub fn wrap_draw(class: ArtistClass, hook: Arc<dyn DrawHook>) -> Result<(), HookError> {
    let mut draws = table().draws.write().unwrap_or_else(|e| e.into_inner());
    if draws.contains_key(&class) {
        return Err(HookError::AlreadyHooked(class));
    }
    draws.insert(class, hook);
    ANY_DRAW_HOOKED.store(true, Ordering::Release);
    Ok(())
}

pub fn is_draw_hooked(class: ArtistClass) -> bool {
    table()
        .draws
        .read()
        .unwrap_or_else(|e| e.into_inner())
        .contains_key(&class)
}

pub fn on_figure_close(listener: Arc<CloseListener>) {
    table()
        .close
        .write()
        .unwrap_or_else(|e| e.into_inner())
        .push(listener);
}

pub(crate) fn notify_close(figure: FigureId) {
    let Some(table) = TABLE.get() else { return };
    let listeners = table.close.read().unwrap_or_else(|e| e.into_inner()).clone();
    for listener in listeners {
        listener(figure);
    }
}

pub(crate) fn before_draw(event: &mut DrawEvent<'_>) {
    if !ANY_DRAW_HOOKED.load(Ordering::Acquire) {
        return;
    }
    let hook = table()
        .draws
        .read()
        .unwrap_or_else(|e| e.into_inner())
        .get(&event.class)
        .cloned();
    if let Some(hook) = hook {
        hook.before_draw(event);
    }
}

/// Runs `body` for `target`, through its wrapper when one is installed.
pub(crate) fn dispatch<R>(
    target: &'static str,
    layer: ApiLayer,
    args: impl FnOnce() -> CallArgs,
    body: impl FnOnce() -> crate::Result<R>,
    describe: impl Fn(&R) -> CallOutcome,
) -> crate::Result<R> {
    if !ANY_CALL_WRAPPED.load(Ordering::Acquire) {
        return body();
    }
    let wrapper = table()
        .calls
        .read()
        .unwrap_or_else(|e| e.into_inner())
        .get(target)
        .cloned();
    let Some(wrapper) = wrapper else {
        return body();
    };

    let args = args();
    let invocation = Invocation {
        target,
        layer,
        args: &args,
    };
    let mut body = Some(body);
    let mut result: Option<crate::Result<R>> = None;
    {
        let mut next = || {
            let run = body.take()?;
            let r = run();
            let outcome = r.as_ref().ok().map(&describe);
            result = Some(r);
            outcome
        };
        wrapper.around(&invocation, &mut next);
    }
    match (result, body) {
        (Some(r), _) => r,
        (None, Some(run)) => run(),
        (None, None) => unreachable!("body consumed without a result"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn call_args_lookup() {
        let args = CallArgs::new()
            .with("bottom", ArgValue::Bool(true))
            .with("n", ArgValue::Len(3))
            .with_opt("hue", None);
        assert!(args.flag("bottom"));
        assert_eq!(args.len_of("n"), Some(3));
        assert!(!args.contains("hue"));
    }

    #[test]
    fn unknown_target_is_rejected() {
        struct Noop;
        impl CallWrapper for Noop {
            fn around(&self, _: &Invocation<'_>, next: &mut Next<'_>) {
                next();
            }
        }
        assert_eq!(
            wrap("Axes.violinplot", Arc::new(Noop)).unwrap_err(),
            HookError::UnknownTarget("Axes.violinplot".into())
        );
    }

    #[test]
    fn target_names_are_unique() {
        let mut names: Vec<_> = TARGETS.iter().map(|t| t.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), TARGETS.len());
    }
}
