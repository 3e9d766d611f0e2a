//! A cellular-automata engine where automata are morphisms.
//!
//! Universes are groups (finite table groups, `Z^d`, free products of finite
//! groups) and alphabets live in a pluggable finite category with products:
//! finite sets, finite vector spaces over `F_p`, finite posets, or finite
//! sets with relations as morphisms. An automaton is determined by a finite
//! neighborhood together with a local defining morphism out of the matching
//! power object, and the engine builds identities, shifts, compositions,
//! products, pushforwards, and their generalizations across different
//! universes from that data alone.
//!
//! The `check` module turns the algebraic laws the constructions obey into
//! executable, seed-deterministic suites with JSON reports; the companion CLI
//! crate exposes them together with simulation and demo commands.

pub mod alphabet;
pub mod ca;
pub mod check;
pub mod error;
pub mod gca;
pub mod group;
pub mod json;

pub use alphabet::{Elem, Instance, Morphism, Object, PowerObject};
pub use ca::{CellularAutomaton, Configuration, LocalRule};
pub use error::{Error, Result};
pub use gca::GeneralizedCA;
pub use group::{FiniteSubset, Group, GroupElem, GroupHom, HomRule, Letter, Side};
