//! Computational toolkit for ordinal partition relations: Cantor normal form
//! arithmetic, forms and interaction schemes on increasing sequences, their
//! constructive witnesses, fronts with combinatorial forcing, and negative
//! colourings, each checked against brute force.

pub mod ordinals;
pub mod cli;
pub mod colourings;
pub mod constructions;
pub mod forcing;
pub mod forms;
pub mod seqcore;

pub use ordinals::{omega_pow, Ordinal};
pub use seqcore::{Enumerator, Seq};
