use super::{SeriesError, FpScalar};
use crate::is_prime;

/// A power series `c_0 + c_1 t + … + c_n t^n` over `F_p`, known modulo `t^(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    p: u32,
    coeffs: Vec<u32>,
}

impl PowerSeries {
    /// Builds the series from (possibly negative) integer coefficients,
    /// padding or truncating to `precision + 1` terms.
    pub fn new(p: u32, coeffs: &[i64], precision: usize) -> Result<Self, SeriesError> {
        if !is_prime(p as u64) {
            return Err(SeriesError::NotOddPrime(p as u64));
        }
        let mut c = vec![0u32; precision + 1];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v.rem_euclid(p as i64) as u32;
        }
        Ok(PowerSeries { p, coeffs: c })
    }

    pub fn one(p: u32, precision: usize) -> Result<Self, SeriesError> {
        Self::new(p, &[1], precision)
    }

    pub(crate) fn from_raw(p: u32, coeffs: Vec<u32>) -> Self {
        PowerSeries { p, coeffs }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> FpScalar {
        FpScalar::reduce(self.p, self.coeffs.get(i).copied().unwrap_or(0) as i64)
    }

    pub fn raw(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(precision + 1, 0);
        PowerSeries { p: self.p, coeffs: c }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.precision().min(other.precision());
        PowerSeries { p: self.p, coeffs: mul_trunc(&self.coeffs, &other.coeffs, self.p, n) }
    }
}

/// Product of two coefficient vectors, kept up to degree `n`.
pub(crate) fn mul_trunc(a: &[u32], b: &[u32], p: u32, n: usize) -> Vec<u32> {
    let p = p as u64;
    let mut acc = vec![0u64; n + 1];
    for (i, &x) in a.iter().enumerate().take(n + 1) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n + 1 - i) {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p;
        }
    }
    acc.into_iter().map(|v| v as u32).collect()
}

/// Returns `g` with `g(0) = 1` and `g^2 · s ≡ 1 (mod t^(precision+1))`.
///
/// Newton iteration `g ← g(3 − s g²)/2`, doubling the number of correct
/// terms each round. No binomial coefficients are formed, so nothing is
/// divided by `p`.
pub fn inv_sqrt(s: &PowerSeries, precision: usize) -> Result<PowerSeries, SeriesError> {
    let p = s.p;
    if p == 2 {
        return Err(SeriesError::UnsupportedCharacteristic);
    }
    if s.coeffs[0] != 1 {
        return Err(SeriesError::NotUnit);
    }
    let pm = p as u64;
    let half = FpScalar::reduce(p, 2).inv().expect("p odd").value() as u64;
    let mut g = vec![1u32];
    let mut known = 1usize;
    while known < precision + 1 {
        known = (2 * known).min(precision + 1);
        let n = known - 1;
        g.resize(known, 0);
        let mut s_trunc = s.coeffs.clone();
        s_trunc.resize(known, 0);
        let g2 = mul_trunc(&g, &g, p, n);
        let sg2 = mul_trunc(&s_trunc, &g2, p, n);
        let mut three_minus: Vec<u32> = sg2.iter().map(|&c| ((pm - c as u64) % pm) as u32).collect();
        three_minus[0] = ((three_minus[0] as u64 + 3) % pm) as u32;
        g = mul_trunc(&g, &three_minus, p, n)
            .into_iter()
            .map(|c| (c as u64 * half % pm) as u32)
            .collect();
    }
    Ok(PowerSeries::from_raw(p, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inv_sqrt_of_one_is_one() {
        let one = PowerSeries::one(5, 8).unwrap();
        assert_eq!(inv_sqrt(&one, 8).unwrap(), one);
    }

    #[test]
    fn inv_sqrt_squares_back() {
        // oracle: square the result and multiply by the input
        for (p, m) in [(3u32, 4usize), (5, 6), (7, 20), (3, 33)] {
            let s = PowerSeries::new(p, &[1, -2], m).unwrap();
            let g = inv_sqrt(&s, m).unwrap();
            assert_eq!(g.coeff(0).value(), 1);
            let check = g.mul(&g).mul(&s);
            assert_eq!(check, PowerSeries::one(p, m).unwrap(), "p={p} m={m}");
        }
    }

    #[test]
    fn inv_sqrt_rejects_characteristic_two_and_non_units() {
        let s = PowerSeries::new(2, &[1, 1], 4).unwrap();
        assert_eq!(inv_sqrt(&s, 4), Err(SeriesError::UnsupportedCharacteristic));
        let s = PowerSeries::new(3, &[2, 1], 4).unwrap();
        assert_eq!(inv_sqrt(&s, 4), Err(SeriesError::NotUnit));
    }
}
