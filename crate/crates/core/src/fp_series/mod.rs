//! Exact arithmetic over `F_p` and the finite quotients `N/N_M` of the
//! Nottingham group, realized as normalized automorphisms
//! `t ↦ t + a_2 t^2 + … + a_M t^M` of `F_p[[t]]` taken modulo `t^(M+1)`.
//!
//! Products are read left to right: `f·g` applies `f` first, so
//! `(f·g)(t) = g(f(t))`.

mod filtration;
mod power_series;
mod scalar;
mod series;
mod suites;

pub use filtration::{lower_central_filtration, FiltrationSubgroup};
pub use power_series::{inv_sqrt, PowerSeries};
pub use scalar::FpScalar;
pub use series::{nottingham_generators, Depth, TruncSeries};
pub use suites::{commutator_suite, lcs_suite, order_suite, random_series, SuiteRow};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("characteristic 2 is not supported")]
    UnsupportedCharacteristic,
    #[error("operands disagree: p = {p1} vs {p2}, precision {m1} vs {m2}")]
    Mismatch { p1: u32, p2: u32, m1: usize, m2: usize },
    #[error("series is not normalized (leading coefficient must be 1)")]
    NotNormalized,
    #[error("series must have constant term 1")]
    NotUnit,
    #[error("precision {got} is below the required minimum {min}")]
    PrecisionTooSmall { got: usize, min: usize },
    #[error("lower central index must be at least 2, got {0}")]
    IndexOutOfDomain(usize),
}

pub(crate) fn check_odd_prime(p: u64) -> Result<(), SeriesError> {
    if p == 2 {
        return Err(SeriesError::UnsupportedCharacteristic);
    }
    if !crate::is_prime(p) {
        return Err(SeriesError::NotOddPrime(p));
    }
    Ok(())
}

/// Index `r(i) = i + 1 + ⌊(i−2)/(p−1)⌋` with `γ_i(N) = N_{r(i)}`.
pub fn lcs_index(i: usize, p: u32) -> Result<usize, SeriesError> {
    if i < 2 {
        return Err(SeriesError::IndexOutOfDomain(i));
    }
    check_odd_prime(p as u64)?;
    Ok(i + 1 + (i - 2) / (p as usize - 1))
}

/// True when `γ_i/γ_{i+1}` has order `p^2`, i.e. `r(i+1) − r(i) = 2`.
pub fn is_diamond(i: usize, p: u32) -> Result<bool, SeriesError> {
    Ok(lcs_index(i + 1, p)? - lcs_index(i, p)? == 2)
}
