//! Double affine Bruhat order, Deodhar-style path counting and Kazhdan-Lusztig
//! polynomials for untwisted affinizations of simply-laced finite types.

pub mod affine;
pub mod cartan;
pub mod deodhar;
pub mod error;
pub mod klpoly;
pub mod order;
pub mod paths;
pub mod poly;
pub mod tangent;
pub mod window;

/// Exact rational scalar used for coweight coordinates and folding times.
pub type Q = num_rational::Ratio<i64>;

pub use affine::{AffineRoot, Coweight, DaRoot, RootSystem, WPElt, WeylV};
pub use cartan::CartanData;
pub use error::{Error, Result};
pub use poly::LaurentPoly;
pub use window::Window;
