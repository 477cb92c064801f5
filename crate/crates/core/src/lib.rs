//! Exact divisor theory on finite multigraphs.
//!
//! * [`graph`]: loop-free multigraphs, Laplacians, cuts and the text format.
//! * [`divisor`]: chip firing, `q`-reduction, equivalence, rank, firing chains
//!   and `D`-blocking edges.
//! * [`gonality`]: exact divisorial gonality by searching reduced divisors.
//! * [`reduction`]: the independent-set gadget `Ĝ`, its certificate divisors
//!   and their verification.
//! * [`oracles`]: brute-force reference implementations for small instances.
//! * [`bounds`]: spectral lower bound and the conjectural Brill-Noether upper bound.
//! * [`cli`]: the `chipfire` command line front end.

pub mod bounds;
pub mod cli;
pub mod divisor;
pub mod generate;
pub mod gonality;
pub mod graph;
pub mod oracles;
pub mod reduction;
pub mod util;

pub use divisor::{Divisor, DivisorError, FiringScript};
pub use graph::{GraphError, MultiGraph, NodeId};
