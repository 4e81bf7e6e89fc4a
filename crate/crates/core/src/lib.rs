//! Exact computation of Jacobian syzygies, freeness and local singularity
//! invariants of reduced plane curves over the rationals.

pub mod conjectures;
pub mod error;
pub mod families;
pub mod groebner;
pub mod incidence;
pub mod jacobian;
pub mod linalg;
pub mod local;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod syzygy;

pub use error::{Error, Result};

/// Engine version string recorded in every output document.
pub const VERSION: &str = concat!("curvesyz ", env!("CARGO_PKG_VERSION"));
