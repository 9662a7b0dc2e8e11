//! Smooth solutions of the planar flow `z_t = −z_xxx + (3/2) z̄_x z_xx²`
//! that form a double logarithmic spiral at `t = 0`, built from purely
//! imaginary Ablowitz–Segur solutions of Painlevé II.

pub mod angles;
pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod flow;
pub mod monodromy;
pub mod pii;
pub mod quad;
pub mod special;
pub mod validation;

pub use error::{Error, Result};
pub use monodromy::{ConnectionConstants, MonodromyData, SpiralParams};
