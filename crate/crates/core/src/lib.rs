//! Constructions of finite p-groups (lower central quotients of `C_p * C_p`,
//! Nottingham group quotients, p-groups of maximal class) together with
//! mechanical checks for (strongly real) Beauville structures.
//!
//! The crate is organised bottom-up:
//!
//! - [`fp_series`]: `F_p` arithmetic and truncated power-series automorphisms.
//! - [`presentations`]: words, presentation text, `F/γ_{c+1}(F)` relators.
//! - [`coset_enum`]: Todd–Coxeter enumeration over the trivial subgroup.
//! - [`group_engine`]: element tables, subgroups, homomorphisms.
//! - [`maximal_class`]: `⟨s⟩ ⋉ A` with cyclotomic action.
//! - [`beauville`]: Σ-sets, structure checks and the verification pipeline.

pub mod beauville;
pub mod coset_enum;
pub mod fp_series;
pub mod group_engine;
pub mod maximal_class;
pub mod presentations;

mod arith;

pub use arith::is_prime;
