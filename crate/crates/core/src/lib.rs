//! Exact computer algebra for the 2+3 (quadratic times cubic) factorization
//! problem of the second cuboid quintic `P_s(x)`.
//!
//! The crate builds the obstruction polynomial `F(s, a)` from closed forms,
//! cross-checks it against Euclidean division and a resultant in `b`,
//! classifies the degenerate locus `L = C = 0`, and searches the projective
//! closure of `F = 0` for rational points fibre by fibre.

pub mod arith;
pub mod degenerate;
pub mod error;
pub mod fiber;
pub mod model;
pub mod pipeline;
pub mod poly;
pub mod search;

pub use arith::{BigInt, Height, Rational};
pub use degenerate::{analyze_degenerate, DegenerateReport};
pub use error::{Error, Result};
pub use fiber::{factor_23, fiber, FactorWitness, FiberResult};
pub use model::{CuboidParams, ObstructionSystem};
pub use pipeline::{PipelineReport, Verdict};
pub use poly::{Degree, MPoly, RootList, UPoly, VarSet};
pub use search::{run_search, ProjPoint, SearchConfig, SearchReport};
