//! Exact computations with representations of bound quiver algebras over GF(p),
//! their morphism categories, Auslander–Reiten translations and stable rotations.

pub mod algebra;
pub mod arq;
pub mod artrans;
pub mod cli;
pub mod error;
pub mod exactlin;
pub mod io;
pub mod morcat;
pub mod repmod;
pub mod stable;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use exactlin::Mat;
pub use repmod::{Frame, ModMap, Rep};
