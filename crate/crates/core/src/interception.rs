//! Wrapping of the host toolkit's plot-creation entry points.
//!
//! A wrapped call registers an extractor for its figure only when it comes
//! from user code. While the original runs, the calling thread is marked as
//! inside the library, so the primitive calls a high-level function makes
//! on the user's behalf pass through without registering.

use std::cell::Cell;
use std::sync::Arc;

use plotkit::hooks::{self, ApiLayer, ArgValue, CallArgs, CallWrapper, HookError, Invocation, Next};
use thiserror::Error;

use crate::extraction;
use crate::schema::PlotType;

/// The checked-in list of wrapped targets.
pub const MANIFEST: &str = include_str!("../patches.manifest");

/// Classification result for one call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Plot(PlotType),
    Unsupported,
}

/// Plot type known from the target alone, or decided from call arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeHint {
    Fixed(Classification),
    Deferred,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchDescriptor {
    pub target: String,
    pub plot_type_hint: TypeHint,
    pub api_layer: ApiLayer,
}

fn layer_of(target: &str) -> ApiLayer {
    match target.split('.').next() {
        Some("pyplot") => ApiLayer::Scripting,
        Some("statplot") => ApiLayer::Wrapper,
        _ => ApiLayer::ObjectOriented,
    }
}

fn hint_for(target: &str) -> TypeHint {
    let method = target.rsplit('.').next().unwrap_or(target);
    let fixed = |t| TypeHint::Fixed(Classification::Plot(t));
    match method {
        "hist" | "histplot" => fixed(PlotType::Histogram),
        "step" => fixed(PlotType::Line),
        "scatter" | "scatterplot" => fixed(PlotType::Scatter),
        "pcolormesh" | "heatmap" => fixed(PlotType::Heatmap),
        "countplot" => fixed(PlotType::Bar),
        "errorbar" | "polar" => TypeHint::Fixed(Classification::Unsupported),
        _ => TypeHint::Deferred,
    }
}

/// Descriptors for every target in `manifest` (blank lines and `#` comments skipped).
pub fn parse_manifest(manifest: &str) -> Vec<PatchDescriptor> {
    manifest
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|target| PatchDescriptor {
            target: target.to_string(),
            plot_type_hint: hint_for(target),
            api_layer: layer_of(target),
        })
        .collect()
}

pub fn default_registry() -> Vec<PatchDescriptor> {
    parse_manifest(MANIFEST)
}

/// The toolkit being instrumented.
pub trait Host {
    fn name(&self) -> &str;
    /// `None` when the toolkit is not available.
    fn version(&self) -> Option<&str>;
    fn has_target(&self, target: &str) -> bool;
    /// Installs `wrapper`; `Ok(false)` when the target was already wrapped.
    fn wrap(&self, target: &str, wrapper: Arc<dyn CallWrapper>) -> Result<bool, HookError>;
}

/// The linked plotkit build.
pub struct Plotkit;

impl Host for Plotkit {
    fn name(&self) -> &str {
        "plotkit"
    }

    fn version(&self) -> Option<&str> {
        Some(plotkit::VERSION)
    }

    fn has_target(&self, target: &str) -> bool {
        hooks::find_target(target).is_some()
    }

    fn wrap(&self, target: &str, wrapper: Arc<dyn CallWrapper>) -> Result<bool, HookError> {
        match hooks::wrap(target, wrapper) {
            Ok(()) => Ok(true),
            Err(HookError::AlreadyWrapped(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InstallReport {
    /// Targets wrapped by this call.
    pub patched: Vec<String>,
    /// Targets that were wrapped by an earlier call.
    pub already_patched: Vec<String>,
    /// Targets absent from the installed toolkit version.
    pub skipped: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstallError {
    #[error("host toolkit `{0}` is not available")]
    HostUnavailable(String),
    #[error("patch registry is empty")]
    EmptyRegistry,
    #[error(transparent)]
    Hook(#[from] HookError),
}

/// Wraps every target of `registry` on `host` with the plot-call wrapper.
pub fn install_patches(host: &dyn Host, registry: &[PatchDescriptor]) -> Result<InstallReport, InstallError> {
    if host.version().is_none() {
        return Err(InstallError::HostUnavailable(host.name().to_string()));
    }
    if registry.is_empty() {
        return Err(InstallError::EmptyRegistry);
    }
    let wrapper: Arc<dyn CallWrapper> = Arc::new(PlotCallWrapper);
    let mut report = InstallReport::default();
    for desc in registry {
        if !host.has_target(&desc.target) {
            log::debug!("skipping {}: not present in {}", desc.target, host.name());
            report.skipped.push(desc.target.clone());
            continue;
        }
        if host.wrap(&desc.target, wrapper.clone())? {
            report.patched.push(desc.target.clone());
        } else {
            report.already_patched.push(desc.target.clone());
        }
    }
    Ok(report)
}

thread_local! {
    static INTERNAL_DEPTH: Cell<usize> = const { Cell::new(0) };
}

/// Marks the current thread as inside the library until dropped.
#[must_use]
pub struct InternalScope {
    _not_send: std::marker::PhantomData<*const ()>,
}

impl InternalScope {
    pub fn enter() -> Self {
        INTERNAL_DEPTH.with(|d| d.set(d.get() + 1));
        InternalScope {
            _not_send: std::marker::PhantomData,
        }
    }
}

impl Drop for InternalScope {
    fn drop(&mut self) {
        INTERNAL_DEPTH.with(|d| d.set(d.get() - 1));
    }
}

/// Runs `body` as a library-internal call on this thread.
pub fn with_internal_context<R>(body: impl FnOnce() -> R) -> R {
    let _scope = InternalScope::enter();
    body()
}

pub fn internal_depth() -> usize {
    INTERNAL_DEPTH.with(Cell::get)
}

pub fn is_user_call() -> bool {
    internal_depth() == 0
}

fn bar_kind(args: &CallArgs) -> PlotType {
    // an offset baseline is what gets drawn, so it wins over grouping
    if args.contains("bottom") {
        PlotType::StackedBar
    } else if args.flag("dodge") {
        PlotType::DodgedBar
    } else {
        PlotType::Bar
    }
}

/// Plot type of a call to `target`, decided from the target and its arguments.
pub fn classify_plot_call(target: &str, args: &CallArgs) -> Classification {
    if let TypeHint::Fixed(c) = hint_for(target) {
        return c;
    }
    let method = target.rsplit('.').next().unwrap_or(target);
    let plot = match (layer_of(target), method) {
        (ApiLayer::Wrapper, "barplot") => match (args.contains("hue"), args.flag("dodge")) {
            (false, _) => PlotType::Bar,
            (true, true) => PlotType::DodgedBar,
            (true, false) => PlotType::StackedBar,
        },
        (ApiLayer::Wrapper, "lineplot") => {
            if args.contains("hue") {
                PlotType::MultiLine
            } else {
                PlotType::Line
            }
        }
        (_, "bar") => bar_kind(args),
        (_, "plot") => {
            if args.len_of("series").unwrap_or(1) > 1 {
                PlotType::MultiLine
            } else {
                PlotType::Line
            }
        }
        (_, "boxplot") => match args.get("vert") {
            Some(ArgValue::Bool(false)) => PlotType::BoxHorizontal,
            _ => PlotType::BoxVertical,
        },
        _ => return Classification::Unsupported,
    };
    Classification::Plot(plot)
}

/// The wrapper installed around every plot-creation target.
pub struct PlotCallWrapper;

impl CallWrapper for PlotCallWrapper {
    fn around(&self, inv: &Invocation<'_>, next: &mut Next<'_>) {
        if !is_user_call() {
            next();
            return;
        }
        let class = classify_plot_call(inv.target, inv.args);
        let outcome = with_internal_context(next);
        match (class, outcome) {
            (Classification::Plot(plot_type), Some(outcome)) => {
                if let Err(e) = extraction::register_call(plot_type, &outcome) {
                    log::warn!("{}: not registered: {e}", inv.target);
                }
            }
            (Classification::Unsupported, _) => {
                log::debug!("{}: unsupported plot call, rendering without metadata", inv.target);
            }
            (Classification::Plot(_), None) => {}
        }
    }
}
