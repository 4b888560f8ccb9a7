pub mod cli;
pub mod cubic;
pub mod error;
pub mod figures;
pub mod ode;
pub mod orbifold_metric;
pub mod phase_plane;
pub mod reeb_flow;
pub mod report;
pub mod sl2_model;
pub mod verify;

pub use error::{CrError, Result};
