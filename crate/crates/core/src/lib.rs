//! Polynomial functions over finite, possibly non-commutative rings and their
//! dual-number extensions `R[β_1, …, β_k]`.
//!
//! Polynomials act by right substitution: `f = Σ c_j x^j` sends `a` to
//! `Σ c_j a^j`. Everything here is exact and exhaustive where budgets allow.

pub mod budget;
pub mod enumerate;
pub mod error;
pub mod funspace;
pub mod groups;
pub mod lambda;
pub mod nullpoly;
pub mod pairs;
pub mod perm;
pub mod poly;
pub mod report;
pub mod ring;
pub mod span;
pub mod summary;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use lambda::BiTable;
pub use poly::Poly;
pub use span::Order;
pub use report::{Check, Mode, Report, Status};
pub use ring::analysis::ChainInfo;
pub use ring::{construct_ring, construct_ring_with, dual_of, ConstructOptions, DualView, Elem, Ring, RingHandle, StorageMode};
