//! Beauville structures: Σ-sets, structure and strong-reality checks, the
//! non-covering witness search, and the end-to-end verification pipeline.

mod abelian;
mod certificate;
mod lemmas;
mod noncovering;
mod pipeline;

pub use abelian::{abelian_beauville_search, cyclic_square, AbelianSearch, ZnPair};
pub use certificate::{Certificate, CheckRecord};
pub use lemmas::{
    check_homomorphism_transfer, check_intersection_one, check_intersection_two, LemmaReport,
};
pub use noncovering::nottingham_noncovering_suite;
pub use pipeline::{nottingham_quotient, verify_main_theorem, Pipeline};

use thiserror::Error;

use crate::coset_enum::EnumerationError;
use crate::fp_series::SeriesError;
use crate::group_engine::{Elem, ElementSet, FiniteGroup, GroupError, Hom};
use crate::maximal_class::MaxClassError;
use crate::presentations::PresentationError;

#[derive(Debug, Error)]
pub enum BeauvilleError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("group has at least {lower_bound} elements, above the limit of {limit}")]
    ExceedsLimit { lower_bound: String, limit: usize },
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    MaxClass(#[from] MaxClassError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("certificate: {0}")]
    Certificate(String),
}

impl BeauvilleError {
    /// Whether the failure is a resource ceiling rather than a bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            BeauvilleError::ExceedsLimit { .. }
                | BeauvilleError::Enumeration(EnumerationError::LimitExceeded { .. })
                | BeauvilleError::Enumeration(EnumerationError::QueueOverflow { .. })
                | BeauvilleError::Group(GroupError::CeilingExceeded { .. })
        )
    }
}

/// `Σ(x, y)`: the union of all conjugates of `⟨x⟩`, `⟨y⟩` and `⟨xy⟩`.
pub fn sigma_set(g: &FiniteGroup, x: Elem, y: Elem) -> ElementSet {
    let mut cyclics = g.cyclic(x);
    cyclics.union_with(&g.cyclic(y));
    cyclics.union_with(&g.cyclic(g.mul(x, y)));
    g.conjugate_union(&cyclics)
}

/// Two generating pairs of one group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BeauvilleStructure {
    pub pair1: (Elem, Elem),
    pub pair2: (Elem, Elem),
}

impl BeauvilleStructure {
    pub fn elements(&self) -> [Elem; 4] {
        [self.pair1.0, self.pair1.1, self.pair2.0, self.pair2.1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureVerdict {
    Beauville,
    /// The pair (1 or 2) does not generate.
    NotGenerating(u8),
    /// A nonidentity element of `Σ(pair1) ∩ Σ(pair2)`.
    SharedElement(Elem),
}

impl StructureVerdict {
    pub fn holds(&self) -> bool {
        *self == StructureVerdict::Beauville
    }
}

pub fn is_beauville_structure(g: &FiniteGroup, s: &BeauvilleStructure) -> StructureVerdict {
    for (n, (x, y)) in [(1, s.pair1), (2, s.pair2)] {
        if !g.generates(&[x, y]) {
            return StructureVerdict::NotGenerating(n);
        }
    }
    let shared = sigma_set(g, s.pair1.0, s.pair1.1).intersection(&sigma_set(g, s.pair2.0, s.pair2.1));
    let first = shared.iter().find(|e| *e != Elem::IDENTITY);
    match first {
        None => StructureVerdict::Beauville,
        Some(e) => StructureVerdict::SharedElement(e),
    }
}

/// First element of `target` (in word order) outside `{[t, g] : g ∈ G}`,
/// or `None` if the commutators of `t` cover `target`.
pub fn noncovering_check(g: &FiniteGroup, t: Elem, target: &ElementSet) -> Option<Elem> {
    let commutators = g.commutator_set(t);
    target.iter().find(|&e| !commutators.contains(e))
}

/// Central elements `w, z` of order `p` in the last nontrivial lower central
/// term, with `w ∉ {[u, h]}` and `z ∉ {[v, h]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witnesses {
    pub w: Elem,
    pub z: Elem,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("lower central series has no nontrivial term")]
    TrivialGroup,
    #[error("no eligible witness outside the commutators of generator {0}")]
    Exhausted(usize),
}

/// Deterministic witness search: the first eligible element in word order.
pub fn witness_search(h: &FiniteGroup, last_term: &ElementSet) -> Result<Witnesses, WitnessError> {
    if last_term.len() <= 1 {
        return Err(WitnessError::TrivialGroup);
    }
    let p = h.p_group_prime().ok().flatten().unwrap_or(0);
    let find = |s: usize| {
        let commutators = h.commutator_set(h.generator(s));
        last_term
            .iter()
            .find(|&e| {
                e != Elem::IDENTITY && !commutators.contains(e) && h.element_order(e) == p && h.is_central(e)
            })
            .ok_or(WitnessError::Exhausted(s))
    };
    Ok(Witnesses { w: find(0)?, z: find(1)? })
}

/// `θ(x) = x⁻¹` for each of the four structure elements.
pub fn strongly_real_check(g: &FiniteGroup, s: &BeauvilleStructure, theta: &Hom) -> bool {
    s.elements().iter().all(|&x| theta.apply(x) == g.inv(x))
}
