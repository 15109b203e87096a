use std::collections::BTreeSet;
use std::fmt;

use crate::error::{GroupError, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as `(p, e)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_p_power(n: u64, p: u64) -> bool {
    p_part(n, p) == n
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

/// A finite set of primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PrimeSet {
    primes: BTreeSet<u64>,
}

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let primes: BTreeSet<u64> = primes.into_iter().collect();
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(GroupError::NotPrime(bad));
        }
        Ok(PrimeSet { primes })
    }

    /// Prime divisors of `n`.
    pub fn of(n: u64) -> Self {
        PrimeSet {
            primes: prime_divisors(n).into_iter().collect(),
        }
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// True when every prime divisor of `n` is in the set.
    pub fn covers(&self, n: u64) -> bool {
        prime_divisors(n).into_iter().all(|p| self.contains(p))
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
