//! Design and simulation library for a series-elastic knee actuator.
//!
//! The crate covers the desk-engineering workflow for a linear
//! series-elastic actuator (SEA) driving a prosthetic knee joint:
//!
//! - [`units`] — typed physical quantities and unit conversions
//! - [`materials`] — material property catalog
//! - [`sizing`] — ball-screw torque/speed requirements and motor feasibility
//! - [`gait`] — phase-resolved gait load and travel profiles
//! - [`sea`] — closed-loop force-control simulation of the SEA plant,
//!   force bandwidth and output impedance sweeps
//! - [`socket`] — bone-depth raster to socket wall stiffness mapping
//! - [`stress`] — analytic Von Mises utilization checks on structural members
//! - [`config`] — the toolkit configuration file shared by all commands

pub mod config;
pub mod gait;
pub mod materials;
pub mod output;
pub mod sea;
pub mod sizing;
pub mod socket;
pub mod stress;
pub mod units;
