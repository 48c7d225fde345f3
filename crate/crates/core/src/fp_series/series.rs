use std::fmt;

use super::power_series::{inv_sqrt, mul_trunc, PowerSeries};
use super::{check_odd_prime, FpScalar, SeriesError};
use crate::group_engine::GroupElement;

/// Position of an automorphism in the filtration `N_1 ⊇ N_2 ⊇ …`.
///
/// `Finite(k)` means `f ∈ N_k \ N_{k+1}`: the first nonzero coefficient
/// after `a_1` is `a_{k+1}`. `Infinite` is reported when every stored
/// coefficient `a_2..a_M` vanishes and should be read as "at least M".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Depth::Finite(k) => Some(k),
            Depth::Infinite => None,
        }
    }

    /// Depth as a lower bound, with `Infinite` meaning "at least `m`".
    pub fn at_least(self, m: usize) -> usize {
        self.finite().unwrap_or(m)
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(k) => write!(f, "{k}"),
            Depth::Infinite => write!(f, "inf"),
        }
    }
}

/// A normalized automorphism `t ↦ t + Σ_{i=2}^{M} a_i t^i` of `F_p[[t]]`
/// modulo `t^(M+1)`; an element of `N/N_M`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    p: u32,
    // coeffs[i - 1] = a_i, so coeffs[0] == 1 always
    coeffs: Vec<u32>,
}

impl TruncSeries {
    pub fn identity(p: u32, precision: usize) -> Result<Self, SeriesError> {
        check_odd_prime(p as u64)?;
        if precision < 1 {
            return Err(SeriesError::PrecisionTooSmall { got: precision, min: 1 });
        }
        let mut coeffs = vec![0; precision];
        coeffs[0] = 1;
        Ok(TruncSeries { p, coeffs })
    }

    /// Builds `Σ a_i t^i` from `a_1, a_2, …`; `a_1` must reduce to 1.
    pub fn from_coeffs(p: u32, coeffs: &[i64]) -> Result<Self, SeriesError> {
        check_odd_prime(p as u64)?;
        if coeffs.is_empty() {
            return Err(SeriesError::PrecisionTooSmall { got: 0, min: 1 });
        }
        let c: Vec<u32> = coeffs.iter().map(|&v| v.rem_euclid(p as i64) as u32).collect();
        if c[0] != 1 {
            return Err(SeriesError::NotNormalized);
        }
        Ok(TruncSeries { p, coeffs: c })
    }

    pub(crate) fn from_raw(p: u32, coeffs: Vec<u32>) -> Self {
        debug_assert_eq!(coeffs[0], 1);
        TruncSeries { p, coeffs }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// The truncation degree `M`.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient `a_i` for `1 ≤ i ≤ M`; zero beyond the precision.
    pub fn coeff(&self, i: usize) -> FpScalar {
        let v = if i == 0 { 0 } else { self.coeffs.get(i - 1).copied().unwrap_or(0) };
        FpScalar::reduce(self.p, v as i64)
    }

    /// `a_1, …, a_M` as residues.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn depth(&self) -> Depth {
        match self.coeffs[1..].iter().position(|&c| c != 0) {
            // coeffs[1 + pos] = a_{pos + 2}, depth = (pos + 2) - 1
            Some(pos) => Depth::Finite(pos + 1),
            None => Depth::Infinite,
        }
    }

    /// Same series viewed at a different truncation degree (zero padded).
    pub fn with_precision(&self, precision: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(precision.max(1), 0);
        TruncSeries { p: self.p, coeffs: c }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.p != other.p || self.precision() != other.precision() {
            return Err(SeriesError::Mismatch {
                p1: self.p,
                p2: other.p,
                m1: self.precision(),
                m2: other.precision(),
            });
        }
        Ok(())
    }

    /// Coefficients of the polynomial `f(t)` indexed by degree `0..=M`.
    fn as_poly(&self) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(0);
        v.extend_from_slice(&self.coeffs);
        v
    }

    /// The product `self · other`, i.e. `t ↦ other(self(t))`.
    pub fn compose(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        Ok(self.then(other))
    }

    /// `other ∘ self` without the compatibility check.
    fn then(&self, other: &Self) -> Self {
        let m = self.precision();
        let p = self.p;
        let f = self.as_poly();
        // Horner in f: other(f) = f·(g_1 + f·(g_2 + … + f·g_M))
        let mut acc = vec![0u32; m + 1];
        acc[0] = other.coeffs[m - 1];
        for i in (1..m).rev() {
            acc = mul_trunc(&f, &acc, p, m);
            acc[0] = ((acc[0] as u64 + other.coeffs[i - 1] as u64) % p as u64) as u32;
        }
        let out = mul_trunc(&f, &acc, p, m);
        TruncSeries { p, coeffs: out[1..].to_vec() }
    }

    /// Compositional inverse, solved one degree at a time.
    pub fn inverse(&self) -> Self {
        let m = self.precision();
        let p = self.p as u64;
        let mut h = TruncSeries { p: self.p, coeffs: vec![0; m] };
        h.coeffs[0] = 1;
        // f(h(t)) = h + a_2 h^2 + …; the t^k coefficient is h_k + (terms in h_2..h_{k-1}).
        for k in 2..=m {
            let probe = h.then(self);
            let c = probe.coeffs[k - 1] as u64;
            h.coeffs[k - 1] = ((p - c) % p) as u32;
        }
        h
    }

    /// `self^n` for any integer `n` by repeated squaring.
    pub fn power(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// `[f, g] = f⁻¹ g⁻¹ f g`.
    pub fn commutator(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        Ok(self.inverse().then(&other.inverse()).then(self).then(other))
    }

    /// Multiplicative order; always a power of `p`.
    pub fn order(&self) -> u64 {
        let mut n = 1u64;
        let mut x = self.clone();
        while !x.is_identity() {
            x = x.power(self.p as i64);
            n *= self.p as u64;
        }
        n
    }
}

impl GroupElement for TruncSeries {
    fn op(&self, rhs: &Self) -> Self {
        debug_assert!(self.check_compatible(rhs).is_ok());
        self.then(rhs)
    }

    fn identity_like(&self) -> Self {
        let mut coeffs = vec![0; self.coeffs.len()];
        coeffs[0] = 1;
        TruncSeries { p: self.p, coeffs }
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries(p={}, {self})", self.p)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t")?;
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            if c != 0 {
                write!(f, " + {c}t^{}", i + 1)?;
            }
        }
        write!(f, " + O(t^{})", self.coeffs.len() + 1)
    }
}

/// The generators `a(t) = t(1−t)^{-1}` and `b(t) = t(1−2t²)^{-1/2}` of the
/// Nottingham group, truncated at degree `precision`.
///
/// `a` lies in `N_1 \ N_2` and `b` in `N_2 \ N_3`; both have order `p`.
pub fn nottingham_generators(
    p: u32,
    precision: usize,
) -> Result<(TruncSeries, TruncSeries), SeriesError> {
    check_odd_prime(p as u64)?;
    if precision < 3 {
        return Err(SeriesError::PrecisionTooSmall { got: precision, min: 3 });
    }
    let a = TruncSeries { p, coeffs: vec![1; precision] };
    let radicand = PowerSeries::new(p, &[1, 0, -2], precision - 1)?;
    let root = inv_sqrt(&radicand, precision - 1)?;
    let b = TruncSeries { p, coeffs: root.raw().to_vec() };
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Substitution oracle, independent of the Horner evaluation in `compose`.
    fn substitute(f: &TruncSeries, g: &TruncSeries) -> TruncSeries {
        // g(f(t)) = Σ g_i f(t)^i with powers built by naive multiplication
        let m = f.precision();
        let p = f.p as u64;
        let fp: Vec<u64> = std::iter::once(0).chain(f.coeffs.iter().map(|&c| c as u64)).collect();
        let mut power = vec![0u64; m + 1];
        power[0] = 1;
        let mut out = vec![0u64; m + 1];
        for i in 1..=m {
            let mut next = vec![0u64; m + 1];
            for (x, &a) in power.iter().enumerate() {
                for (y, &b) in fp.iter().enumerate() {
                    if x + y <= m {
                        next[x + y] = (next[x + y] + a * b) % p;
                    }
                }
            }
            power = next;
            let gi = g.coeffs[i - 1] as u64;
            for d in 0..=m {
                out[d] = (out[d] + gi * power[d]) % p;
            }
        }
        TruncSeries { p: f.p, coeffs: out[1..].iter().map(|&v| v as u32).collect() }
    }

    fn geometric(p: u32, m: usize, n: i64) -> TruncSeries {
        // t/(1 - n t) = Σ n^{i-1} t^i
        let c: Vec<i64> = (0..m).map(|i| (n.rem_euclid(p as i64)).pow(i as u32) % p as i64).collect();
        let mut c = c;
        c[0] = 1;
        TruncSeries::from_coeffs(p, &c).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let (a, b) = nottingham_generators(5, 9).unwrap();
        let id = TruncSeries::identity(5, 9).unwrap();
        assert_eq!(id.compose(&a).unwrap(), a);
        assert_eq!(b.compose(&id).unwrap(), b);
    }

    #[test]
    fn powers_of_a_follow_closed_form() {
        let (a, _) = nottingham_generators(3, 6).unwrap();
        let aa = a.compose(&a).unwrap();
        assert_eq!(aa, substitute(&a, &a));
        assert_eq!(aa, geometric(3, 6, 2));
        assert_eq!(aa.coeffs(), &[1, 2, 1, 2, 1, 2]);
        for n in -4..8 {
            assert_eq!(a.power(n), geometric(3, 6, n), "n={n}");
        }
    }

    #[test]
    fn b_squared_matches_closed_form() {
        // b^2 = t(1 - 4t^2)^{-1/2}
        let (_, b) = nottingham_generators(5, 8).unwrap();
        let expected_root = inv_sqrt(&PowerSeries::new(5, &[1, 0, -4], 7).unwrap(), 7).unwrap();
        let expected = TruncSeries::from_raw(5, expected_root.raw().to_vec());
        assert_eq!(b.compose(&b).unwrap(), expected);
        assert_eq!(substitute(&b, &b), expected);
    }

    #[test]
    fn literal_b_with_linear_radicand_has_wrong_depth_and_order() {
        // t(1-2t)^{-1/2} has a_2 = 1 and is not of order p
        let root = inv_sqrt(&PowerSeries::new(5, &[1, -2], 9).unwrap(), 9).unwrap();
        let literal = TruncSeries::from_raw(5, root.raw().to_vec());
        assert_eq!(literal.depth(), Depth::Finite(1));
        assert!(!literal.power(5).is_identity());
    }

    #[test]
    fn inverse_of_a() {
        let (a, _) = nottingham_generators(3, 5).unwrap();
        let inv = a.inverse();
        // t/(1+t) = t - t^2 + t^3 - …
        assert_eq!(inv, TruncSeries::from_coeffs(3, &[1, -1, 1, -1, 1]).unwrap());
        assert!(a.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&a).unwrap().is_identity());
        assert!(TruncSeries::identity(3, 5).unwrap().inverse().is_identity());
    }

    #[test]
    fn generator_shapes() {
        let (a, b) = nottingham_generators(3, 5).unwrap();
        assert_eq!(a.coeffs(), &[1, 1, 1, 1, 1]);
        assert_eq!(a.depth(), Depth::Finite(1));
        assert_eq!(b.depth(), Depth::Finite(2));
        let (_, b5) = nottingham_generators(5, 10).unwrap();
        assert_eq!(b5.depth(), Depth::Finite(2));
        let (a3, b3) = nottingham_generators(3, 10).unwrap();
        assert!(a3.power(3).is_identity());
        assert!(b3.power(3).is_identity());
        assert_eq!(a3.order(), 3);
    }

    #[test]
    fn b_is_t_times_inverse_square_root() {
        let (_, b) = nottingham_generators(5, 6).unwrap();
        let root = inv_sqrt(&PowerSeries::new(5, &[1, 0, -2], 5).unwrap(), 5).unwrap();
        assert_eq!(b.coeffs(), root.raw());
    }

    #[test]
    fn depth_and_commutators() {
        let (a, b) = nottingham_generators(3, 8).unwrap();
        assert_eq!(TruncSeries::identity(3, 8).unwrap().depth(), Depth::Infinite);
        assert_eq!(a.depth(), Depth::Finite(1));
        assert_eq!(a.commutator(&b).unwrap().depth(), Depth::Finite(3));
        assert!(a.commutator(&a).unwrap().is_identity());
        let id = a.identity_like();
        assert!(b.commutator(&id).unwrap().is_identity());
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let (a3, _) = nottingham_generators(3, 6).unwrap();
        let (a5, _) = nottingham_generators(5, 6).unwrap();
        let (a3long, _) = nottingham_generators(3, 7).unwrap();
        assert!(matches!(a3.compose(&a5), Err(SeriesError::Mismatch { .. })));
        assert!(matches!(a3.commutator(&a3long), Err(SeriesError::Mismatch { .. })));
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(TruncSeries::from_coeffs(3, &[2, 1]), Err(SeriesError::NotNormalized));
        assert!(nottingham_generators(3, 2).is_err());
        assert!(nottingham_generators(9, 5).is_err());
    }
}
