//! plotkit: a small imperative plotting toolkit with SVG output.
//!
//! Three API surfaces create plots: methods on [`Axes`], the stateful
//! [`pyplot`] functions, and the table-driven [`statplot`] functions.
//! Every plot-creation entry point and every draw path can be wrapped at
//! runtime through [`hooks`].

pub mod artist;
pub mod axes;
pub mod color;
pub mod error;
pub mod figure;
pub mod hooks;
mod layout;
pub mod pyplot;
pub mod stats;
pub mod statplot;
pub mod svg;
pub mod ticks;

pub use artist::{Artist, ArtistClass, ArtistId, Container, ContainerId, Primitive};
pub use axes::{BarOptions, BarPositions, BoxOptions, Columns, HistOptions, LineOptions, MeshOptions, ScatterOptions};
pub use color::Color;
pub use error::{PlotError, Result};
pub use figure::{Axes, AxesData, Figure, FigureData, FigureId};
pub use statplot::{Column, DataTable};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
