//! Exact-arithmetic toolkit for realizing integer-partition and composition
//! families as lattice points of polyhedral cones and polytopes.
//!
//! The library computes rational integer-point generating functions of
//! simplicial cones geometrically and verifies the resulting closed forms
//! against an independent brute-force enumeration oracle. Everything is
//! exact: big integers, big rationals, and truncated multivariate power
//! series with big-integer coefficients. There is no floating point anywhere
//! in this crate.
//!
//! Module map:
//! - [`exactmath`]: big-integer/rational scalars, exact matrices, binomials.
//! - [`genfun`]: factored rational generating functions and truncated series.
//! - [`cone`]: simplicial cones in halfspace and generator form.
//! - [`families`]: the partition/composition families as cones and polytopes.
//! - [`oracle`]: brute-force lattice-point enumeration (the ground truth).
//! - [`identities`]: closed-form right-hand sides and the verification harness.
//! - [`brion`]: vertex tangent cones and the Brion-sum check for Cayley polytopes.
//! - [`volume`]: exact Cayley polytope volumes and the connected-graph report.
//! - [`cli`]: command-line front end with reproducible JSON output.
//!
//! A quick taste — partitions with two positive parts as the lattice points
//! of a half-open cone:
//!
//! ```
//! use conegf::cone::{cone_gf, h_to_v, HalfspaceCone};
//! use conegf::genfun::ExponentVector;
//!
//! // 0 < x1 <= x2, converted to generator form and expanded
//! let h = HalfspaceCone::new(vec![vec![1, 0], vec![-1, 1]], vec![true, false]);
//! let series = cone_gf(&h_to_v(&h)?)?.expand(6)?;
//! assert_eq!(series.coefficient(&ExponentVector::new(vec![2, 3])), 1.into());
//! assert_eq!(series.coefficient(&ExponentVector::new(vec![3, 2])), 0.into());
//! # Ok::<(), conegf::Error>(())
//! ```

pub mod brion;
pub mod cli;
pub mod cone;
pub mod error;
pub mod exactmath;
pub mod families;
pub mod genfun;
pub mod identities;
pub mod oracle;
pub mod rng;
pub mod volume;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
