//! Counting F_q-rational points on affine hypersurfaces, exactly and by
//! random plane slicing, together with the explicit point-count intervals
//! (containing and forbidden) that constrain those counts.
//!
//! The crate is organized around a small pipeline:
//!
//! - [`field`] — table-backed arithmetic for F_q, q = p^k up to 2^16;
//! - [`poly`] — sparse multivariate polynomials, parsing, and restriction
//!   to a plane;
//! - [`plane`] — enumeration, uniform sampling, and counting combinatorics
//!   of 2-dimensional affine planes;
//! - [`count`] — exact point and slice counts, and exact slice-count
//!   statistics over all planes;
//! - [`bounds`] — explicit containing intervals, forbidden intervals,
//!   thresholds, and regime classification for a point count;
//! - [`estimate`] — Monte Carlo estimation of the count from random
//!   slices, plane classification, and concentration bounds;
//! - [`verify`] — factorization and irreducibility oracles, exhaustive
//!   audits of the dichotomy and interval claims, and a certified corpus
//!   of test hypersurfaces;
//! - [`cli`] — the command-line surface used by the `fqslice` binary.
//!
//! Start with the runnable examples in `examples/` — each demonstrates one
//! capability end to end.

pub mod bounds;
pub mod cli;
pub mod count;
pub mod error;
pub mod estimate;
pub mod exact;
pub mod field;
pub mod plane;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use plane::AffinePlane;
pub use poly::{parse_poly, MultiPoly};
