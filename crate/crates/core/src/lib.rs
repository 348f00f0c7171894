//! Goldman bracket and stacked-diagram star product of Wilson-loop
//! functionals on curves over an oriented surface, with a matrix-holonomy
//! oracle for numeric cross-checks.

pub mod checks;
pub mod coeff;
pub mod diagram;
pub mod error;
pub mod goldman;
pub mod holonomy;
pub mod star;

pub use coeff::{CrossingType, GroupKind, GroupSpec, Series};
pub use diagram::{parse_diagram, render_diagram, Diagram, FormalSum, Loop, Monomial};
pub use error::{Error, Result};
