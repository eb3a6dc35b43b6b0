//! Planning library for VHF repeater networks: hexagonal cell layout,
//! coverage radius, channel and PL-tone allocation, relay routing, terrain
//! workarounds and parameter sweeps.

pub mod allocation;
pub mod config;
pub mod coverage;
mod error;
pub(crate) mod fixed;
pub mod hexgrid;
pub mod routing;
pub mod sensitivity;
pub mod terrain;

pub use allocation::{build_plan, Frequency, Mode, PlTone, Plan, PlanSummary, UserId};
pub use config::{Config, ModeChoice};
pub use error::{Constraint, PlanError, Result};
pub use hexgrid::{HexCoord, Point, Tessellation};
