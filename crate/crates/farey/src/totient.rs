use crate::error::{FareyError, Result};

/// Euler's totient by trial-division factorization.
pub fn totient(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(FareyError::InvalidFraction { n: 0, d: 0, reason: "totient of zero" });
    }
    let mut rest = k;
    let mut phi = k;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            phi = phi / p * (p - 1);
        }
        p += 1;
    }
    if rest > 1 {
        phi = phi / rest * (rest - 1);
    }
    Ok(phi)
}

/// Summatory totient: totient_summatory(m) = sum of totient(k) for k = 1..=m.
///
/// The length of the Farey sequence F_m is this value plus one.
pub fn totient_summatory(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(FareyError::InvalidFraction { n: 0, d: 0, reason: "summatory of zero" });
    }
    let phis = totient_sieve(m)?;
    let mut sum = 0u64;
    for &phi in &phis[1..] {
        sum = sum
            .checked_add(phi)
            .ok_or(FareyError::Overflow { context: "totient summatory" })?;
    }
    Ok(sum)
}

/// phi(0..=m) table via a multiplicative sieve; index 0 holds 0.
pub fn totient_sieve(m: u64) -> Result<Vec<u64>> {
    let cap: usize = m
        .checked_add(1)
        .and_then(|v| usize::try_from(v).ok())
        .ok_or(FareyError::Overflow { context: "totient sieve size" })?;
    let mut phi: Vec<u64> = (0..cap as u64).collect();
    for p in 2..cap {
        if phi[p] == p as u64 {
            // p prime: apply the (1 - 1/p) factor to every multiple
            let mut i = p;
            while i < cap {
                phi[i] = phi[i] / p as u64 * (p as u64 - 1);
                i += p;
            }
        }
    }
    Ok(phi)
}
