//! Exact arithmetic: rationals, sparse polynomials, symbolic determinants,
//! fraction-free linear algebra and the field Q(√2).

pub mod det;
pub mod linalg;
pub mod poly;
pub mod quadext;
pub mod rational;

pub use det::{det_symbolic, det_symbolic_bounded, DEFAULT_DET_BOUND};
pub use linalg::{exact_rank, exact_solve, RationalMatrix, Solution};
pub use poly::{Coeff, PolyJson, SparsePoly, TermJson, Universe, UniverseKind};
pub use quadext::QuadExt;
pub use rational::{fmt_q, parse_q, q, q_frac, Q};
