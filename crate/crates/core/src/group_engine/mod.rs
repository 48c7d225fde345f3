//! Finite groups given by Cayley tables, with subgroup and homomorphism tools.

mod group;
mod hom;
mod perm;
mod set;
mod subgroups;

pub use group::{cayley_elements, Elem, FiniteGroup, GroupElement, Realized};
pub use hom::{automorphism_from_images, check_relators, evaluate_with, Hom};
pub use perm::Perm;
pub use set::ElementSet;
pub use subgroups::{CharacteristicKind, FrattiniQuotient, Subgroup};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("image list is not a permutation")]
    NotAPermutation,
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("{names} names given for {generators} generators")]
    NameCount { names: usize, generators: usize },
    #[error("group has more than {ceiling} elements")]
    CeilingExceeded { ceiling: usize },
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("coset table does not act transitively")]
    NotTransitive,
    #[error("no element with index {0}")]
    NotMember(usize),
    #[error("group of order {0} is not a nontrivial p-group")]
    NotPGroup(usize),
    #[error("generators are not independent modulo the Frattini subgroup")]
    RedundantGenerators,
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("relator {index} ({relator}) is not satisfied by the images")]
    RelatorFails { index: usize, relator: String },
    #[error("map is not multiplicative at element {element}, generator {generator}")]
    NotHomomorphism { element: usize, generator: usize },
    #[error("map is not bijective")]
    NotBijective,
}
