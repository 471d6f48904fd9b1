//! Power-commutator presentations and element arithmetic by collection.
//!
//! A presentation has generators `f1 ... fn`, each of relative order `p`,
//! with relations `f_i^p = w_i` and `[f_i, f_j] = w_ij` (`i > j`) whose right
//! hand sides only mention generators of index greater than `i`. Once the
//! local consistency checks pass, every element has a unique normal form
//! `f1^e1 ... fn^en` with `0 <= e_k < p`, and the group has order `p^n`.
//!
//! Commutators follow `[x, y] = x^-1 y^-1 x y`, conjugation is `t^-1 x t`.

mod element;
mod group;
mod presentation;

pub use element::{Element, Word, MAX_GENERATORS};
pub use group::{PcGroup, ACTION_TABLE_CAP};
pub use presentation::{is_prime, ConsistencyCheck, Definition, PcError, PcPresentation, Relation, MAX_PRIME};
