/// Deterministic primality by trial division; inputs here stay small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Least prime `>= x`. This is how "a prime p = x" is resolved throughout.
pub fn least_prime_at_least(x: u64) -> u64 {
    let mut p = x.max(2);
    while !is_prime(p) {
        p += 1;
    }
    p
}

pub(crate) fn require_odd_prime(p: u64) -> crate::Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(crate::LabError::NotOddPrime(p));
    }
    Ok(())
}
