//! Accessible, explorable output for plotkit figures.
//!
//! After [`install`], plot calls made through plotkit are recorded as they
//! happen. [`show`] and [`save_html`] then render the figure to SVG, embed a
//! JSON description of every plotted layer and mark the SVG elements that
//! carry data, so a reader can move through the values by keyboard.
//!
//! ```
//! use maidr::plotkit::{pyplot, BarOptions};
//!
//! maidr::install().unwrap();
//! pyplot::close_all();
//! pyplot::bar(["a", "b", "c"], &[2.0, 5.0, 3.0], &BarOptions::default()).unwrap();
//! let doc = maidr::render_document(&pyplot::gcf()).unwrap();
//! assert!(doc.svg.contains("maidr-data="));
//! ```

use std::sync::{Arc, Mutex, OnceLock};

pub mod extraction;
pub mod fixtures;
pub mod highlight;
pub mod interception;
pub mod render;
pub mod schema;

pub use plotkit;

pub use extraction::{finalize_figure, ExtractionError};
pub use interception::{InstallError, InstallReport};
pub use render::{
    detect_environment, render_document, save_html, save_svg, show, DeliveryMode, RenderError, RenderedDocument,
};
pub use schema::{parse_schema, serialize_schema, validate_schema, FigureSchema, LayerSchema, PlotType, SchemaError};

/// Wraps the toolkit's plot functions and draw paths. Safe to call more
/// than once; later calls return the first report.
pub fn install() -> Result<InstallReport, InstallError> {
    static DONE: Mutex<Option<InstallReport>> = Mutex::new(None);
    static CLOSE: OnceLock<()> = OnceLock::new();

    let mut done = DONE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(r) = done.as_ref() {
        return Ok(r.clone());
    }
    let report = interception::install_patches(&interception::Plotkit, &interception::default_registry())?;
    highlight::install_draw_hooks()?;
    CLOSE.get_or_init(|| plotkit::hooks::on_figure_close(Arc::new(extraction::forget_figure)));
    *done = Some(report.clone());
    Ok(report)
}

pub fn is_installed() -> bool {
    plotkit::hooks::is_wrapped("Axes.bar")
}
