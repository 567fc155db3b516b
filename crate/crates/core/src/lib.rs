//! Left-sided Caputo fractional derivatives and the fractional T-indicator.
//!
//! The crate is `no_std` (it needs `alloc`) and carries no IO. It provides:
//!
//! - [`specfun`]: the gamma function and its logarithm.
//! - [`poly`]: dense polynomials in `t`, the closed-form input type.
//! - [`series`]: uniformly sampled series on `[0, T]` and the two demo processes.
//! - [`caputo`]: the analytic (power rule) and numerical (L1 product
//!   integration) Caputo engines.
//! - [`indicators`]: average, marginal and T-indicators, alpha sweeps and
//!   multivalued-dependence detection.
//!
//! ```
//! use fracmem_core::{caputo::{caputo_poly, FracOrder}, poly::Polynomial};
//!
//! let p = Polynomial::new(vec![0.0, 0.0, 1.0]); // t^2
//! let d = caputo_poly(&p, FracOrder::new(1.0).unwrap(), 3.0).unwrap();
//! assert_eq!(d, 6.0);
//! ```

#![no_std]
#![warn(missing_docs)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

pub mod caputo;
pub mod error;
pub mod indicators;
pub mod poly;
pub mod series;
pub mod specfun;

pub use error::{Error, Result};
