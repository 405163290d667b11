//! Exact computer algebra for finite-dimensional differential spaces over F2:
//! commutative algebras with the twisted commutativity law `xy + yx = dx·dy`,
//! truncated Hopf data for the additive, multiplicative and general linear
//! group families, distribution algebras, and restricted Lie algebras, with
//! machine verification of every structural identity.
//!
//! ```
//! use ver4_core::hopf::{build_gm, verify_hopf};
//! use ver4_core::lie::lie_of_group;
//! use ver4_core::f2::F2Vec;
//!
//! let gm = build_gm(4);
//! assert!(verify_hopf(&gm).passed());
//!
//! let lie = lie_of_group(&gm).unwrap();
//! let e = F2Vec::unit(2, 0);
//! assert_eq!(lie.square(&e).unwrap(), e); // e^[2] = e
//! ```

pub mod algebra;
pub mod deriv;
pub mod dist;
pub mod error;
pub mod f2;
pub mod hopf;
pub mod lie;
pub mod object;
pub mod report;
pub mod tangent;

pub use error::Error;
pub use f2::{BitMatrix, Echelon, F2Vec};
pub use report::{Check, Report};
