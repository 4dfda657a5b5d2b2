//! Exact computations on flow polytopes of signed graphs.
//!
//! A signed graph on vertices `1..=n+1` has negative edges `(i, j, -)` with
//! root `e_i - e_j`, positive edges `(i, j, +)` with root `e_i + e_j`, and loops
//! `(i, i, +)` with root `2 e_i`. The flow polytope `F_G(a)` is the set of
//! nonnegative edge weights whose weighted root sum is `a`.
//!
//! What is here:
//!
//! * [`kostant`]: integer flow counts (Kostant partition function), flow
//!   listing and Ehrhart polynomial fits.
//! * [`dynamic`]: the dynamic partition function used for `a = 2 e_1`.
//! * [`subdivision`]: reductions, noncrossing trees, vertex elimination and
//!   full subdivisions into unimodular simplices.
//! * [`vertices`]: cycle parity, the even-cycle vertex test and vertex
//!   enumeration.
//! * [`volume`]: normalized volumes by each method, plus a cross-check.
//! * [`families`]: complete graphs of types A to D, the Chan-Robbins-Yuen
//!   polytopes, the Morris identity and the conjecture report.
//! * [`cli`]: the `flowpoly` command line.
//!
//! Runnable examples live in `examples/`:
//!
//! | example | shows |
//! |---|---|
//! | `lattice_points` | counting and listing flows, Ehrhart fits |
//! | `dynamic_flows` | dynamic counts and their decomposition |
//! | `subdivision` | reductions, elimination and leaf trails |
//! | `vertices` | cycle parity and vertex enumeration |
//! | `volumes` | every volume method on the same polytope |
//! | `cry_polytopes` | CRY volumes and vertex counts |
//! | `morris` | closed form against constant term extraction |
//! | `conjecture_report` | the family conjectures, checked numerically |
//! | `exact_arithmetic` | Gamma at half integers, interpolation |
//!
//! ```
//! use flowpoly::{kostant::kpf, SignedGraph};
//!
//! let g = SignedGraph::parse("vertices 3\nedge 1 2 -\nedge 2 3 -\nedge 1 3 -\n").unwrap();
//! assert_eq!(kpf(&g, &[2, 0, -2]).unwrap(), 3.into());
//! ```

pub mod cli;
pub mod dynamic;
pub mod error;
pub mod families;
pub mod exact;
pub mod graph;
pub mod kostant;
pub mod linalg;
pub mod lp;
pub mod pool;
pub mod subdivision;
pub mod vertices;
pub mod volume;

mod count;

pub use error::{Error, Result};
pub use graph::{Sign, SignedEdge, SignedGraph};
