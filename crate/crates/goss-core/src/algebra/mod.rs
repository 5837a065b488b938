//! Exact arithmetic over `F_q`, `F_q[T]` and `F_q(T)`, and Goss polynomials
//! of finite lattices.

pub mod fq;
pub mod goss;
pub mod lattice;
pub mod newton;
pub mod poly;
pub mod ratfunc;
pub mod verify;

pub use fq::{Elem, Fq};
pub use goss::{goss_closed_f, goss_recursion, GossPoly, GossSeq};
pub use lattice::{lattice_exp, Lattice, LatticeExp};
pub use newton::{newton_extract, NewtonPolygon, Segment};
pub use poly::FqPoly;
pub use ratfunc::RatFunc;
pub use verify::{verify, verify_range, BandCheck, VerifyReport};
