//! Construction and verification of linear codes over GF(q) with a
//! prescribed hull dimension and a guaranteed minimum distance.
//!
//! The hull of a linear code `C` is the intersection of `C` with its dual.
//! This crate builds `[n, k]_q` codes whose hull has exactly a requested
//! dimension `t` and whose minimum distance meets a requested floor, by
//! randomized search for a mutually orthogonal basis followed by a
//! deterministic matrix assembly that depends on the residue class of `q`:
//!
//! * `q` even: a `[m+k, k]_q` code with minimum distance at least `d`,
//! * `q ≡ 1 (mod 4)`: a `[2m+k, k]_q` code with distance at least `2d`,
//! * `q ≡ 3 (mod 4)`: a `[3m+k, k]_q` code with distance at least `3d`.
//!
//! Every construction is re-checked by independent verifiers: the hull
//! dimension is computed both from the Gram matrix rank and from an explicit
//! row-space intersection, and the minimum distance by exhaustive codeword
//! enumeration. The [`bounds`] module evaluates the volume-counting
//! feasibility condition for these parameters in exact arbitrary-precision
//! arithmetic, together with a lower bound on the success probability of the
//! randomized search.
//!
//! Modules:
//! * [`gf`] — arithmetic in GF(p^r) with a canonical integer encoding,
//! * [`linalg`] — dense row reduction, rank, nullspace, Gram matrices and
//!   row-space intersection over a field,
//! * [`codes`] — the [`codes::LinearCode`] type with dual, hull and
//!   minimum-distance verifiers,
//! * [`construct`] — the randomized orthogonal-set sampler and the three
//!   generator-matrix builders,
//! * [`bounds`] — exact feasibility bounds, the entropy function and the
//!   asymptotic rate threshold,
//! * [`wire`] — JSON-facing serialization of fields, codes and reports.
//!
//! # Example
//!
//! ```
//! use hullcode::construct::{construct, ConstructionParams};
//!
//! // GF(7): q ≡ 3 (mod 4), so the result is a [3·8+2, 2] code with hull
//! // dimension exactly 1 and minimum distance at least 3·2
//! let params = ConstructionParams::new(7, 8, 2, 1, 2, 42);
//! let result = construct(&params).unwrap();
//! assert_eq!(result.code.length(), 26);
//! assert_eq!(result.report.hull_dim_gram, 1);
//! assert!(result.report.min_distance >= 6);
//! ```

pub mod bounds;
pub mod codes;
pub mod construct;
pub mod gf;
pub mod linalg;
pub mod wire;

pub use codes::{LinearCode, VerificationReport};
pub use construct::{ConstructionParams, ConstructionResult};
pub use gf::{Field, FieldElement};
pub use linalg::{FieldMatrix, FieldVector};
