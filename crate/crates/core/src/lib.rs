//! Triangles inscribed in a circle and circumscribed about a central conic.
//!
//! The crate builds the one-parameter (Poncelet) family of such triangles,
//! classifies it, and checks the closed-form constructions, invariants,
//! sequences and extremal areas attached to the two special placements of
//! the circumcenter: at the center of the conic, or at one of its foci.
//!
//! ```
//! use poncelet::family::{make_config, triangle_at, Scenario};
//!
//! let cfg = make_config(2.0, 1.0, Scenario::CenterCoincident).unwrap();
//! let s = triangle_at(&cfg, std::f64::consts::FRAC_PI_2).unwrap();
//! assert!(s.closure_residual < 1e-9);
//! assert!((s.triangle.b.y + 0.75).abs() < 1e-12);
//! ```

pub mod error;
pub mod exec;
pub mod export;
pub mod extremal;
pub mod family;
pub mod geom;
pub mod inellipse;
pub mod invariants;
pub mod loci;
pub mod optimize;
pub mod scene;
pub mod sequence;
pub mod tol;
pub mod triangle;

pub use error::{Error, Result};
pub use exec::ExecMode;
pub use geom::{CentralConicStd, CircleSpec, ConicKind, ConicParams, Line, Point};
pub use triangle::{CenterSet, Triangle};
