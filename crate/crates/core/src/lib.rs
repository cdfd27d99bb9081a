//! Finite coarse geometry of free products of pointed coarse spaces.
//!
//! Everything is computed on explicit finite data: relations on a ground set
//! of indexed points and truncations of the free product to words of bounded
//! order.

pub mod coarse_space;
pub mod dimension;
pub mod error;
pub mod exec;
pub mod free_product;
pub mod gauge;
pub mod oracle;
pub mod property_c;
pub mod relations;

pub use error::{Error, Result};
pub use exec::Exec;
pub use gauge::Gauge;
