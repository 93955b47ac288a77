//! Exact computations on Gaussian-integer Lorentzian lattices: fixed lattices
//! of anti-involutions, Vinberg diagrams, mod-2 invariants, stabilizer types
//! and the cuspidal cone angle.

pub mod coxeter;
pub mod cusp_cone;
pub mod data;
pub mod error;
pub mod fixed_points;
pub mod intmat;
pub mod lattices;
pub mod linalg;
pub mod matrix;
pub mod mod2;
pub mod report;
pub mod scalars;
pub mod shortvec;
pub mod stabilizer;
pub mod vinberg;

pub use error::{Error, Result};
