//! The arithmetic kernel: primality, sieving, multiplicative orders and
//! smoothness-constrained factorization.
//!
//! Everything here is exact. Machine-word fast paths (u64/u128) are used
//! wherever the operands fit; anything larger goes through `num_bigint`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::SpectrumError;

const ORDER_TRIAL_LIMIT: u64 = 1_000_000;
const CONTIGUITY_CHECK_LIMIT: u64 = 100_000_000;

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Exact p-adic valuation of a machine integer (n must be nonzero).
pub(crate) fn valuation(mut n: u64, p: u64) -> u64 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Deterministic Miller-Rabin for u64. The twelve smallest prime bases are a
/// proven witness set for every n < 3.3 * 10^24, which covers the full range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let trailing = (n - 1).trailing_zeros();
    let odd = (n - 1) >> trailing;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, odd, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..trailing {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_above(n: u64) -> u64 {
    if n < 2 {
        return 2;
    }
    let mut m = n + 1;
    if m % 2 == 0 {
        if m == 2 {
            return 2;
        }
        m += 1;
    }
    while !is_prime(m) {
        m += 2;
    }
    m
}

/// An ordered finite set of primes: the enumeration universe.
///
/// `contiguous` records whether the set is exactly all primes up to
/// `max_prime`; a few divisibility shortcuts are only sound in that case.
#[derive(Debug, Clone)]
pub struct PrimeSet {
    primes: Vec<u64>,
    index: HashSet<u64>,
    max_prime: u64,
    contiguous: bool,
}

impl PrimeSet {
    /// Builds a set from an arbitrary list. Every entry must be prime; the
    /// list is sorted and deduplicated.
    pub fn from_primes(list: &[u64]) -> Result<Self, SpectrumError> {
        if list.is_empty() {
            return Err(SpectrumError::EmptyUniverse(0));
        }
        for (index, &value) in list.iter().enumerate() {
            if !is_prime(value) {
                return Err(SpectrumError::NotPrime { value, index });
            }
        }
        let mut primes = list.to_vec();
        primes.sort_unstable();
        primes.dedup();
        let max_prime = *primes.last().expect("nonempty");
        let contiguous = if max_prime <= CONTIGUITY_CHECK_LIMIT {
            primes.len() as u64 == prime_count_below(max_prime + 1)
        } else {
            false
        };
        Ok(Self {
            index: primes.iter().copied().collect(),
            primes,
            max_prime,
            contiguous,
        })
    }

    pub fn contains(&self, p: u64) -> bool {
        self.index.contains(&p)
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn max_prime(&self) -> u64 {
        self.max_prime
    }

    /// True when the set is exactly all primes `<= max_prime()`.
    pub fn is_contiguous(&self) -> bool {
        self.contiguous
    }

    /// Largest n such that every prime `<= n` belongs to the set, i.e. one
    /// less than the smallest missing prime. Alternating-group spectra are
    /// initial segments of the primes, so A_n is smooth exactly for n up to
    /// this bound.
    pub fn prefix_limit(&self) -> u64 {
        let mut candidate = 2u64;
        loop {
            if !self.contains(candidate) {
                return candidate - 1;
            }
            candidate = next_prime_above(candidate);
        }
    }
}

fn prime_count_below(limit: u64) -> u64 {
    if limit <= 2 {
        return 0;
    }
    let mut composite = vec![false; limit as usize];
    let mut count = 0;
    for n in 2..limit as usize {
        if !composite[n] {
            count += 1;
            let mut multiple = n * n;
            while multiple < limit as usize {
                composite[multiple] = true;
                multiple += n;
            }
        }
    }
    count
}

/// All primes `<= limit`, by sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Result<PrimeSet, SpectrumError> {
    if limit < 2 {
        return Err(SpectrumError::EmptyUniverse(limit));
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for candidate in 2..=n {
        if !composite[candidate] {
            primes.push(candidate as u64);
            let mut multiple = candidate * candidate;
            while multiple <= n {
                composite[multiple] = true;
                multiple += candidate;
            }
        }
    }
    let max_prime = *primes.last().expect("limit >= 2");
    Ok(PrimeSet {
        index: primes.iter().copied().collect(),
        primes,
        max_prime,
        contiguous: true,
    })
}

/// Smallest k >= 1 with p^k = 1 (mod r), for distinct primes p and r.
///
/// When r - 1 factors completely over primes below 10^6 (possibly times one
/// large prime or its square), the order is found by descending through the
/// divisor lattice of r - 1; otherwise by plain power iteration.
pub fn multiplicative_order(p: u64, r: u64) -> Result<u64, SpectrumError> {
    if r < 2 || p % r == 0 {
        return Err(SpectrumError::OrderUndefined { base: p, modulus: r });
    }
    let a = p % r;
    if a == 1 {
        return Ok(1);
    }
    if let Some(factors) = factor_with_small_primes(r - 1) {
        let mut order = r - 1;
        for &(s, _) in &factors {
            while order % s == 0 && powmod(a, order / s, r) == 1 {
                order /= s;
            }
        }
        return Ok(order);
    }
    let mut x = a;
    let mut order = 1;
    while x != 1 {
        x = mulmod(x, a, r);
        order += 1;
    }
    Ok(order)
}

/// Trial division by primes up to 10^6; accepts a leftover that is prime or
/// the square of a prime. Returns None when the cofactor stays composite.
fn factor_with_small_primes(mut n: u64) -> Option<Vec<(u64, u64)>> {
    let mut factors = Vec::new();
    let push = |p: u64, e: u64, factors: &mut Vec<(u64, u64)>| {
        if let Some(last) = factors.last_mut() {
            if last.0 == p {
                last.1 += e;
                return;
            }
        }
        factors.push((p, e));
    };
    let mut d = 2u64;
    while d <= ORDER_TRIAL_LIMIT && d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            push(d, e, &mut factors);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n == 1 {
        return Some(factors);
    }
    if is_prime(n) {
        push(n, 1, &mut factors);
        return Some(factors);
    }
    let root = n.isqrt();
    if root * root == n && is_prime(root) {
        push(root, 2, &mut factors);
        return Some(factors);
    }
    None
}

/// max over r in pi \ {p} of ord_r(p); 0 when pi \ {p} is empty.
pub fn t_bound(p: u64, pi: &PrimeSet) -> Result<u64, SpectrumError> {
    if !pi.contains(p) {
        return Err(SpectrumError::NotInSet(p));
    }
    let mut best = 0;
    for &r in pi.primes() {
        if r == p {
            continue;
        }
        let ord = multiplicative_order(p, r)?;
        best = best.max(ord);
    }
    Ok(best)
}

/// Exact prime -> exponent map of an integer restricted to a prime set, with
/// the undivided cofactor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredOrder {
    pub factors: BTreeMap<u64, u64>,
    pub leftover: BigUint,
}

impl FactoredOrder {
    pub fn is_smooth(&self) -> bool {
        self.leftover.is_one()
    }

    /// Multiplies the factorization back out, leftover included.
    pub fn reconstruct(&self) -> BigUint {
        let mut acc = self.leftover.clone();
        for (&p, &e) in &self.factors {
            acc *= BigUint::from(p).pow(e as u32);
        }
        acc
    }

    pub fn spectrum(&self) -> Vec<u64> {
        self.factors.keys().copied().collect()
    }
}

/// Divides out of `n` every prime of `pi` to full multiplicity.
///
/// Primes larger than the running cofactor are skipped; for a contiguous set
/// the scan also stops as soon as the cofactor drops below the square of the
/// next candidate prime (the cofactor is then 1 or prime). The leftover is
/// coprime to every member of `pi`.
pub fn constrained_factor(n: &BigUint, pi: &PrimeSet) -> FactoredOrder {
    let mut factors = BTreeMap::new();
    let mut cofactor = n.clone();
    let one = BigUint::one();
    for &r in pi.primes() {
        if cofactor == one {
            break;
        }
        let r_big = BigUint::from(r);
        if r_big > cofactor {
            break;
        }
        if pi.contiguous && &r_big * &r_big > cofactor {
            // every prime below r has been divided out, so the cofactor is prime
            if let Some(c) = cofactor.to_u64() {
                if pi.contains(c) {
                    *factors.entry(c).or_insert(0) += 1;
                    cofactor = one.clone();
                }
            }
            break;
        }
        while (&cofactor % r).is_zero() {
            cofactor /= r;
            *factors.entry(r).or_insert(0) += 1;
        }
    }
    FactoredOrder {
        factors,
        leftover: cofactor,
    }
}

/// Multiplicative-order data for one prime r relative to a fixed base p:
/// the order e = ord_r(p) and the exact valuation v_r(p^e - 1).
///
/// Together with the lifting-the-exponent lemma these give the r-adic
/// valuation of p^m -+ 1 for every m without touching big integers.
#[derive(Debug, Clone, Copy)]
pub struct OrderEntry {
    pub r: u64,
    pub ord: u64,
    pub unit_val: u64,
}

impl OrderEntry {
    pub fn compute(p: u64, r: u64) -> Result<Self, SpectrumError> {
        let ord = multiplicative_order(p, r)?;
        Ok(Self {
            r,
            ord,
            unit_val: unit_valuation(p, r, ord),
        })
    }

    /// v_r(p^m - 1) for odd r, assuming ord | m.
    pub fn val_minus(&self, m: u64) -> u64 {
        debug_assert!(self.r % 2 == 1 && m % self.ord == 0);
        self.unit_val + valuation(m / self.ord, self.r)
    }

    /// v_r(p^m + 1) for odd r, assuming ord | 2m and ord does not divide m.
    pub fn val_plus(&self, m: u64) -> u64 {
        debug_assert!(self.r % 2 == 1 && (2 * m) % self.ord == 0 && m % self.ord != 0);
        self.unit_val + valuation(2 * m / self.ord, self.r)
    }
}

/// v_r(p^ord - 1) computed by raising the modulus one power of r at a time.
fn unit_valuation(p: u64, r: u64, ord: u64) -> u64 {
    let mut v = 1u64;
    let mut modulus = r as u128 * r as u128;
    loop {
        let hit = if let Ok(m) = u64::try_from(modulus) {
            powmod(p % m, ord, m) == 1
        } else {
            // valuations this deep exist only for contrived inputs
            BigUint::from(p)
                .modpow(&BigUint::from(ord), &BigUint::from(modulus))
                .is_one()
        };
        if !hit {
            return v;
        }
        v += 1;
        modulus = modulus.checked_mul(r as u128).unwrap_or_else(|| {
            panic!("valuation of p^e - 1 exceeds u128 modulus range (r = {r})")
        });
    }
}

/// v_2(p^m - 1) for odd p.
pub(crate) fn val2_minus(m: u64, v2_p_minus_1: u64, v2_p_plus_1: u64) -> u64 {
    if m % 2 == 1 {
        v2_p_minus_1
    } else {
        v2_p_minus_1 + v2_p_plus_1 + valuation(m, 2) - 1
    }
}

/// v_2(p^m + 1) for odd p.
pub(crate) fn val2_plus(m: u64, v2_p_plus_1: u64) -> u64 {
    if m % 2 == 1 {
        v2_p_plus_1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn naive_is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    fn naive_order(p: u64, r: u64) -> u64 {
        let a = p % r;
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = mulmod(x, a, r);
            k += 1;
        }
        k
    }

    #[test]
    fn sieve_small() {
        assert_eq!(sieve_primes(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap().primes(), &[2]);
        assert!(matches!(
            sieve_primes(1),
            Err(SpectrumError::EmptyUniverse(1))
        ));
    }

    #[test]
    fn sieve_to_ten_thousand() {
        let pi = sieve_primes(10_000).unwrap();
        assert_eq!(pi.len(), 1229);
        assert_eq!(pi.max_prime(), 9973);
        assert!(pi.is_contiguous());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let pi = sieve_primes(100_000).unwrap();
        let naive: Vec<u64> = (2..=100_000).filter(|&n| naive_is_prime(n)).collect();
        assert_eq!(pi.primes(), naive.as_slice());
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..5_000 {
            assert_eq!(is_prime(n), naive_is_prime(n), "n = {n}");
        }
        assert!(is_prime(13421));
        assert!(is_prime(u64::MAX - 58)); // 2^64 - 59 is prime
        assert!(!is_prime(u64::MAX));
    }

    #[test]
    fn next_prime() {
        assert_eq!(next_prime_above(5), 7);
        assert_eq!(next_prime_above(6), 7);
        assert_eq!(next_prime_above(9973), 10007);
        assert_eq!(next_prime_above(1), 2);
    }

    #[test]
    fn prime_set_rejects_composites() {
        let err = PrimeSet::from_primes(&[2, 4, 5]).unwrap_err();
        match err {
            SpectrumError::NotPrime { value, index } => {
                assert_eq!((value, index), (4, 1));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn prime_set_sorts_and_detects_contiguity() {
        let pi = PrimeSet::from_primes(&[5, 2, 3]).unwrap();
        assert_eq!(pi.primes(), &[2, 3, 5]);
        assert!(pi.is_contiguous());
        assert_eq!(pi.prefix_limit(), 6);

        let sparse = PrimeSet::from_primes(&[2, 3, 5, 11, 37, 61, 13421]).unwrap();
        assert!(!sparse.is_contiguous());
        assert_eq!(sparse.max_prime(), 13421);
        assert_eq!(sparse.prefix_limit(), 6);
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(3, 2).unwrap(), 1);
        // 11^5 + 1 = 161052 = 12 * 13421, so 11^5 = -1 mod 13421
        assert_eq!(161052 % 13421, 0);
        assert_eq!(multiplicative_order(11, 13421).unwrap(), 10);
        assert!(multiplicative_order(7, 7).is_err());
    }

    #[test]
    fn order_against_power_iteration() {
        let pi = sieve_primes(200).unwrap();
        for &p in pi.primes() {
            for &r in pi.primes() {
                if p == r {
                    continue;
                }
                let ord = multiplicative_order(p, r).unwrap();
                assert_eq!(ord, naive_order(p, r), "p = {p}, r = {r}");
                assert_eq!((r - 1) % ord, 0);
                assert_eq!(powmod(p, ord, r), 1);
                for s in 2..=ord {
                    if ord % s == 0 && is_prime(s) {
                        assert_ne!(powmod(p, ord / s, r), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn t_bound_examples() {
        let pi = PrimeSet::from_primes(&[2, 3, 5]).unwrap();
        // ord_3(2) = 2, ord_5(2) = 4
        assert_eq!(t_bound(2, &pi).unwrap(), 4);
        // ord_2(3) = 1, ord_5(3) = 4
        assert_eq!(t_bound(3, &pi).unwrap(), 4);
        // ord_2(5) = 1, ord_3(5) = 2
        assert_eq!(t_bound(5, &pi).unwrap(), 2);

        let example = PrimeSet::from_primes(&[2, 3, 5, 11, 37, 61, 13421]).unwrap();
        assert_eq!(t_bound(11, &example).unwrap(), 10);

        let singleton = PrimeSet::from_primes(&[2]).unwrap();
        assert_eq!(t_bound(2, &singleton).unwrap(), 0);
        assert!(t_bound(7, &singleton).is_err());
    }

    #[test]
    fn constrained_factor_examples() {
        let pi = PrimeSet::from_primes(&[2, 3, 5]).unwrap();
        let f = constrained_factor(&BigUint::from(60u32), &pi);
        assert_eq!(f.factors, BTreeMap::from([(2, 2), (3, 1), (5, 1)]));
        assert!(f.is_smooth());

        let pi23 = PrimeSet::from_primes(&[2, 3]).unwrap();
        let f = constrained_factor(&BigUint::from(60u32), &pi23);
        assert_eq!(f.factors, BTreeMap::from([(2, 2), (3, 1)]));
        assert_eq!(f.leftover, BigUint::from(5u32));

        // 11^5 + 1 = 161052 = 2^2 * 3 * 13421 (61 does not divide it)
        let sparse = PrimeSet::from_primes(&[2, 3, 61, 13421]).unwrap();
        let f = constrained_factor(&BigUint::from(161052u32), &sparse);
        assert_eq!(f.factors, BTreeMap::from([(2, 2), (3, 1), (13421, 1)]));
        assert!(f.is_smooth());

        let f = constrained_factor(&BigUint::one(), &pi);
        assert!(f.factors.is_empty());
        assert!(f.is_smooth());
    }

    #[test]
    fn constrained_factor_sparse_set_stays_exhaustive() {
        // 91 = 7 * 13: the 13 must still be extracted even though the
        // cofactor is below 13^2 when 13 is reached.
        let pi = PrimeSet::from_primes(&[2, 13]).unwrap();
        let f = constrained_factor(&BigUint::from(91u32), &pi);
        assert_eq!(f.factors, BTreeMap::from([(13, 1)]));
        assert_eq!(f.leftover, BigUint::from(7u32));
    }

    #[test]
    fn constrained_factor_roundtrip_random() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let universe = sieve_primes(1000).unwrap();
        for _ in 0..10_000 {
            let n = rng.random_range(1..=1_000_000u64);
            let count = rng.random_range(1..8usize);
            let mut subset: Vec<u64> = (0..count)
                .map(|_| universe.primes()[rng.random_range(0..universe.len())])
                .collect();
            subset.sort_unstable();
            subset.dedup();
            let pi = PrimeSet::from_primes(&subset).unwrap();
            let f = constrained_factor(&BigUint::from(n), &pi);
            assert_eq!(f.reconstruct(), BigUint::from(n));
            for (&p, _) in &f.factors {
                assert!(pi.contains(p));
            }
            for &p in pi.primes() {
                assert!(!(&f.leftover % p).is_zero(), "leftover not coprime to {p}");
            }
        }
    }

    #[test]
    fn lifting_the_exponent_matches_direct_valuation() {
        let small = sieve_primes(60).unwrap();
        for &p in small.primes() {
            for &r in small.primes() {
                if r == p {
                    continue;
                }
                let entry = OrderEntry::compute(p, r).unwrap();
                for m in 1u64..=24 {
                    let value_minus = BigUint::from(p).pow(m as u32) - 1u32;
                    let value_plus = BigUint::from(p).pow(m as u32) + 1u32;
                    let direct_minus = big_valuation(&value_minus, r);
                    let direct_plus = big_valuation(&value_plus, r);
                    if r == 2 {
                        let v2m = valuation(p - 1, 2);
                        let v2p = valuation(p + 1, 2);
                        assert_eq!(val2_minus(m, v2m, v2p), direct_minus, "p={p} m={m}");
                        assert_eq!(val2_plus(m, v2p), direct_plus, "p={p} m={m}");
                        continue;
                    }
                    if m % entry.ord == 0 {
                        assert_eq!(entry.val_minus(m), direct_minus, "p={p} r={r} m={m}");
                    } else {
                        assert_eq!(direct_minus, 0, "p={p} r={r} m={m}");
                    }
                    if (2 * m) % entry.ord == 0 && m % entry.ord != 0 {
                        assert_eq!(entry.val_plus(m), direct_plus, "p={p} r={r} m={m}");
                    } else {
                        assert_eq!(direct_plus, 0, "p={p} r={r} m={m}");
                    }
                }
            }
        }
    }

    fn big_valuation(n: &BigUint, r: u64) -> u64 {
        let mut v = 0;
        let mut n = n.clone();
        while !n.is_zero() && (&n % r).is_zero() {
            n /= r;
            v += 1;
        }
        v
    }
}
