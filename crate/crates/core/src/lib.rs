//! Bilateral parking procedures on the integer line.
//!
//! Cars arrive one at a time with a preferred spot in `Z`. A car whose spot is
//! free parks there; otherwise it parks immediately to the left or to the right
//! of the block of occupied spots containing its preference. A procedure is the
//! rule that makes this left/right choice, either deterministically
//! ([`Procedure`]) or with an exact rational probability ([`ProbProcedure`]).
//!
//! The crate provides:
//!
//! * integer-line primitives: [`Word`], [`SpotSet`], [`Block`], shifts, cyclic
//!   rotations and shuffles;
//! * a catalog of deterministic procedures and a run engine that records the
//!   [`Outcome`] of every car;
//! * exhaustive enumeration of parking words, cyclic-orbit audits and the
//!   block-product counting formula ([`Enumerator`]);
//! * probabilistic procedures evaluated over exact rationals, q-integers and
//!   abelianity checks;
//! * the encoding of a run as a pair of labelings on an indexed binary forest,
//!   with label sets, fiber counts and shape counts;
//! * the colored variant, where letters carry an ordered color.

pub mod colored;
pub mod enumeration;
pub mod error;
pub mod exec;
pub mod forests;
pub mod probabilistic;
pub mod procedures;
pub mod shuffle;
pub mod spots;
pub mod words;

pub use enumeration::{Enumerator, OrbitReport, UniversalReport, Via};
pub use error::{Error, Result};
pub use exec::Exec;

pub use procedures::{Direction, DirTable, Flags, Outcome, Procedure, Run};
pub use probabilistic::{Measure, ProbProcedure, QParam, Rational};
pub use spots::{Block, SpotSet};
pub use words::{CyclicOrbit, Shift, Word};
