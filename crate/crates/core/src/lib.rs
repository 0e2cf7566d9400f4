//! Near-optimal multicuts for graphs cellularly embedded on surfaces.

pub mod arcs;
pub mod cover;
pub mod curve;
pub mod error;
pub mod exhaustive;
pub mod fixtures;
pub mod instance;
pub mod oracle;
pub mod skeleton;
pub mod solver;
pub mod steiner;
pub mod overlay;
pub mod surface;
pub mod topologies;
pub mod weight;
pub mod word;

pub use error::{Error, Result};
pub use instance::{Instance, InstanceSpec};
pub use oracle::{exact_multicut, random_planar_instance, validate_multicut, ExactResult, GenConfig};
pub use solver::{solve, MulticutSolution, SolverConfig, Stats};
pub use surface::{CombinatorialSurface, SurfaceSpec};
pub use weight::{Scale, Weight};
pub use word::{Letter, Word};
