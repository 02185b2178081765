//! Drawable primitives and the containers that group them.

use std::fmt;

use crate::color::Color;

/// Identifies an artist within its figure. Unique per figure, never reused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArtistId(pub u64);

impl fmt::Display for ArtistId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index of a container within its axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContainerId(pub usize);

/// The drawing class of a primitive. Draw hooks are registered per class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArtistClass {
    Patch,
    Line2D,
    PathCollection,
    QuadMesh,
    Text,
    Spine,
    Tick,
    Legend,
}

impl ArtistClass {
    pub fn name(self) -> &'static str {
        match self {
            ArtistClass::Patch => "Patch",
            ArtistClass::Line2D => "Line2D",
            ArtistClass::PathCollection => "PathCollection",
            ArtistClass::QuadMesh => "QuadMesh",
            ArtistClass::Text => "Text",
            ArtistClass::Spine => "Spine",
            ArtistClass::Tick => "Tick",
            ArtistClass::Legend => "Legend",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    Circle,
    Square,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrawStyle {
    Default,
    StepsPre,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rectangle {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
    pub fill: Color,
    pub edge: Option<Color>,
}

impl Rectangle {
    pub fn center_x(&self) -> f64 {
        self.x + self.width / 2.0
    }

    pub fn center_y(&self) -> f64 {
        self.y + self.height / 2.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Line2D {
    pub xdata: Vec<f64>,
    pub ydata: Vec<f64>,
    pub color: Color,
    pub width: f64,
    /// `false` for marker-only lines such as box-plot fliers.
    pub connected: bool,
    pub marker: Option<Marker>,
    pub draw_style: DrawStyle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathCollection {
    pub offsets: Vec<(f64, f64)>,
    pub size: f64,
    pub color: Color,
    pub marker: Marker,
}

/// A rectilinear mesh of colored cells, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadMesh {
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f64>,
    pub x_edges: Vec<f64>,
    pub y_edges: Vec<f64>,
    pub clim: (f64, f64),
}

impl QuadMesh {
    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TextArtist {
    pub x: f64,
    pub y: f64,
    pub text: String,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Primitive {
    Rectangle(Rectangle),
    Line(Line2D),
    Collection(PathCollection),
    Mesh(QuadMesh),
    Text(TextArtist),
}

impl Primitive {
    pub fn class(&self) -> ArtistClass {
        match self {
            Primitive::Rectangle(_) => ArtistClass::Patch,
            Primitive::Line(_) => ArtistClass::Line2D,
            Primitive::Collection(_) => ArtistClass::PathCollection,
            Primitive::Mesh(_) => ArtistClass::QuadMesh,
            Primitive::Text(_) => ArtistClass::Text,
        }
    }

    fn zorder(&self) -> u8 {
        match self {
            Primitive::Mesh(_) | Primitive::Rectangle(_) | Primitive::Collection(_) => 1,
            Primitive::Line(_) => 2,
            Primitive::Text(_) => 3,
        }
    }
}

/// A primitive plus the bookkeeping every artist carries.
#[derive(Debug, Clone, PartialEq)]
pub struct Artist {
    pub id: ArtistId,
    /// Graphics id; written as the SVG element id when set.
    pub gid: Option<String>,
    pub label: Option<String>,
    pub visible: bool,
    pub primitive: Primitive,
}

impl Artist {
    pub fn class(&self) -> ArtistClass {
        self.primitive.class()
    }

    pub fn zorder(&self) -> u8 {
        self.primitive.zorder()
    }

    pub fn as_rectangle(&self) -> Option<&Rectangle> {
        match &self.primitive {
            Primitive::Rectangle(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_line(&self) -> Option<&Line2D> {
        match &self.primitive {
            Primitive::Line(l) => Some(l),
            _ => None,
        }
    }

    pub fn as_collection(&self) -> Option<&PathCollection> {
        match &self.primitive {
            Primitive::Collection(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_mesh(&self) -> Option<&QuadMesh> {
        match &self.primitive {
            Primitive::Mesh(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Vertical,
    Horizontal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BarContainer {
    pub patches: Vec<ArtistId>,
    pub label: Option<String>,
}

/// Artists drawn for one box of a box plot.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxArtists {
    pub body: ArtistId,
    pub median: ArtistId,
    pub whiskers: [ArtistId; 2],
    pub caps: [ArtistId; 2],
    pub fliers: ArtistId,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxContainer {
    pub boxes: Vec<BoxArtists>,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorbarContainer {
    pub data_line: ArtistId,
    pub bar_lines: Vec<ArtistId>,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Container {
    Bar(BarContainer),
    Box(BoxContainer),
    Errorbar(ErrorbarContainer),
}

impl Container {
    pub fn type_name(&self) -> &'static str {
        match self {
            Container::Bar(_) => "BarContainer",
            Container::Box(_) => "BoxContainer",
            Container::Errorbar(_) => "ErrorbarContainer",
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            Container::Bar(b) => b.label.as_deref(),
            Container::Errorbar(e) => e.label.as_deref(),
            Container::Box(_) => None,
        }
    }
}
