//! Invariant-factor normalization of cyclic decompositions.

use std::collections::BTreeMap;

/// Prime-power factorization by trial division; orders are at most 2^32 so
/// divisors up to 2^16 suffice.
pub fn prime_power_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_power_factors(n) == [(n, 1)]
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Merges the elementary divisors of `⊕ Z/nᵢ` into the ascending chain
/// `d₁ | d₂ | … | dₗ` with all `dᵢ ≥ 2`.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &n in orders {
        for (p, e) in prime_power_factors(n) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        // Largest power goes to the last (largest) invariant factor.
        for (k, e) in exps.into_iter().enumerate() {
            factors[len - 1 - k] *= p.pow(e);
        }
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_forms() {
        assert_eq!(invariant_factors(&[2, 4]), vec![2, 4]);
        assert_eq!(invariant_factors(&[2, 3]), vec![6]);
        assert_eq!(invariant_factors(&[6]), vec![6]);
        assert_eq!(invariant_factors(&[4, 6]), vec![2, 12]);
        assert_eq!(invariant_factors(&[1, 1]), Vec::<u64>::new());
        assert_eq!(invariant_factors(&[]), Vec::<u64>::new());
        assert_eq!(invariant_factors(&[2, 2, 2]), vec![2, 2, 2]);
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(4294967291));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(0));
    }

    proptest! {
        #[test]
        fn normal_form_is_a_divisor_chain(orders in prop::collection::vec(1u64..60, 0..5)) {
            let f = invariant_factors(&orders);
            prop_assert!(f.iter().all(|&d| d >= 2));
            prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
            prop_assert_eq!(f.iter().product::<u64>(), orders.iter().product::<u64>());
            prop_assert_eq!(invariant_factors(&f), f);
        }
    }
}
