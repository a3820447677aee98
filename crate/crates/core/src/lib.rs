//! Numerical realization of left-Cullen-regular quaternionic function theory.
//!
//! The crate evaluates the left-Fueter operator, the Cullen operator and the
//! angular operator on a catalog of quaternionic functions, splits functions
//! into slice parts `f = u + ι v`, checks the equivalent characterizations of
//! Cullen regularity pointwise, and verifies an integral theorem over closed
//! hypersurfaces in 4-space.
//!
//! Derivatives come from truncated Taylor jets ([`jet`]); central finite
//! differences ([`diff`]) provide an independent backend for cross-checks.
//!
//! ```
//! use quatreg::{catalog_get, Operators, Quaternion};
//!
//! let ops = Operators::jets();
//! let f = catalog_get("power:2").unwrap();
//! let p = Quaternion::new(0.3, 1.0, -0.5, 0.2);
//! assert!(ops.cullen_left(&f, p).unwrap().norm() < 1e-12);
//! ```

pub mod catalog;
pub mod chart;
pub mod diff;
pub mod error;
pub mod integral;
pub mod jet;
pub mod operators;
pub mod quadrature;
pub mod quaternion;
pub mod regularity;
pub mod sampling;
pub mod suite;

pub use catalog::{catalog_get, list_catalog, standard_catalog, Flags, QFunction};
pub use chart::{from_spherical, to_spherical, Guards, SphericalPoint};
pub use diff::{Backend, Chart, FdSteps};
pub use error::{Error, Result};
pub use integral::Hypersurface;
pub use jet::{QJet, RJet};
pub use operators::Operators;
pub use quaternion::{iota_of, Quaternion};
pub use sampling::SampleDomain;
