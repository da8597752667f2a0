//! Exact arithmetic for elementary and congruence subgroups of `SL_n` over
//! the integers and the rings `Z/m`.
//!
//! The crate builds and checks *certificates*: explicit group words over
//! elementary matrices `e_ij(a)` and rank-one symbols `S(x, y; z)` that
//! witness membership of a matrix in one of the subgroup families
//!
//! * `E(pi)` — the normal closure of the `pi`-elementary matrices,
//! * `F(pi)` — the subgroup generated by `pi`-elementary matrices,
//! * `[F(pi), F(pi)]` — its commutator subgroup,
//!
//! for a principal ideal `pi = (N)`. On top of the emitters sit the
//! congruence-lattice tools (the reduction map `r`, its preimages, and
//! elementary approximants for `Gamma`/`Delta` members), exhaustive
//! quotient-order enumeration over finite rings, and a rank-two free-group
//! module with Stallings foldings that produces the `SL_2` counterexamples
//! showing where the dimension hypotheses are sharp.
//!
//! Every constructive claim is checked by independent evaluation:
//! [`certificate::Certificate::verify`] re-evaluates a word letter by letter
//! and re-checks the discipline its claim announces.

pub mod certificate;
pub mod congruence;
pub mod error;
pub mod factor;
pub mod freegroup;
pub mod json;
pub mod matrix;
pub mod ring;
pub mod suite;
pub mod word;

pub use certificate::{Certificate, Claim, VerifyError};
pub use error::{Error, Result};
pub use matrix::{in_class, ClassKind, CongruenceClass, SqMatrix};
pub use ring::{Ideal, RingSpec, RingValue};
pub use word::{check_discipline, Discipline, GroupExpr, Violation};
