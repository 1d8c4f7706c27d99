//! Exact arithmetic for generalized Peano-Gosper tilings and the curves that
//! cover them.
//!
//! Everything lives on the Eisenstein lattice `Z[ω]`, `ω = e^{iπ/3}`:
//! hexagon centers are the points with `(a − b) ≡ 0 (mod 3)` and the two
//! other classes are the honeycomb vertices. No floating point is used
//! outside [`render`].

pub mod curves;
pub mod enumerate;
pub mod lattice;
pub mod plane;
pub mod render;
pub mod sequences;
pub mod tiling;
pub mod verify;

pub use curves::{canonical_coverings, Curve, DirectedSegment, TileCovering};
pub use lattice::{Chirality, EisensteinInt, Word};
pub use plane::{Anchor, WindowCovering, XKind};
pub use sequences::{build_seq, TurnSeq};
pub use tiling::{Ambient, TileRef};

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
    #[error(transparent)]
    Tiling(#[from] tiling::TilingError),
    #[error(transparent)]
    Sequence(#[from] sequences::SequenceError),
    #[error(transparent)]
    Curve(#[from] curves::CurveError),
    #[error(transparent)]
    Enum(#[from] enumerate::EnumError),
    #[error(transparent)]
    Plane(#[from] plane::PlaneError),
    #[error(transparent)]
    Verify(#[from] verify::VerifyError),
    #[error(transparent)]
    Render(#[from] render::RenderError),
}
