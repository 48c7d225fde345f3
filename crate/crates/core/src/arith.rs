/// Trial-division primality test; inputs here are small moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// If `n` is a power of a prime `q`, returns `(q, e)` with `n = q^e`.
/// `n = 1` yields `None` for the prime but is handled by callers.
pub(crate) fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut q = 2;
    while q * q <= n && !n.is_multiple_of(q) {
        q += 1;
    }
    if !n.is_multiple_of(q) {
        q = n;
    }
    let mut rest = n;
    let mut e = 0;
    while rest.is_multiple_of(q) {
        rest /= q;
        e += 1;
    }
    (rest == 1).then_some((q, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(243), Some((3, 5)));
        assert_eq!(prime_power(16384), Some((2, 14)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(36), None);
        assert_eq!(prime_power(1), None);
    }
}
