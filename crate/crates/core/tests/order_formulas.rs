//! Independent order oracle: every family's order formula written out
//! directly, term by term, and compared against the data-driven evaluator.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use simple_spectrum_core::{
    constrained_factor, group_order, sieve_primes, spectrum, GroupId, LieFamily,
};

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn qp(q: u64, e: u32) -> BigUint {
    big(q).pow(e)
}

fn exact_div(n: BigUint, d: BigUint) -> BigUint {
    let (quot, rem) = n.div_rem(&d);
    assert_eq!(rem, BigUint::from(0u32), "non-exact division");
    quot
}

/// |PSL_n(q)| = q^(n(n-1)/2) * prod_{i=2}^{n} (q^i - 1) / gcd(n, q - 1)
fn psl(n: u32, q: u64) -> BigUint {
    let mut acc = qp(q, n * (n - 1) / 2);
    for i in 2..=n {
        acc *= qp(q, i) - 1u32;
    }
    exact_div(acc, big((n as u64).gcd(&(q - 1))))
}

/// |PSU_n(q)| = q^(n(n-1)/2) * prod_{i=2}^{n} (q^i - (-1)^i) / gcd(n, q + 1)
fn psu(n: u32, q: u64) -> BigUint {
    let mut acc = qp(q, n * (n - 1) / 2);
    for i in 2..=n {
        if i % 2 == 0 {
            acc *= qp(q, i) - 1u32;
        } else {
            acc *= qp(q, i) + 1u32;
        }
    }
    exact_div(acc, big((n as u64).gcd(&(q + 1))))
}

/// |PSp_2m(q)| = q^(m^2) * prod_{i=1}^{m} (q^2i - 1) / gcd(2, q - 1)
fn psp(m: u32, q: u64) -> BigUint {
    let mut acc = qp(q, m * m);
    for i in 1..=m {
        acc *= qp(q, 2 * i) - 1u32;
    }
    exact_div(acc, big(2u64.gcd(&(q - 1))))
}

/// |Omega_2m+1(q)| coincides with |PSp_2m(q)|
fn omega_odd(m: u32, q: u64) -> BigUint {
    psp(m, q)
}

/// |POmega+_2m(q)| = q^(m(m-1)) (q^m - 1) prod_{i=1}^{m-1} (q^2i - 1) / gcd(4, q^m - 1)
fn omega_plus(m: u32, q: u64) -> BigUint {
    let mut acc = qp(q, m * (m - 1)) * (qp(q, m) - 1u32);
    for i in 1..m {
        acc *= qp(q, 2 * i) - 1u32;
    }
    let center = big(4).gcd(&(qp(q, m) - 1u32));
    exact_div(acc, center)
}

/// |POmega-_2m(q)| = q^(m(m-1)) (q^m + 1) prod_{i=1}^{m-1} (q^2i - 1) / gcd(4, q^m + 1)
fn omega_minus(m: u32, q: u64) -> BigUint {
    let mut acc = qp(q, m * (m - 1)) * (qp(q, m) + 1u32);
    for i in 1..m {
        acc *= qp(q, 2 * i) - 1u32;
    }
    let center = big(4).gcd(&(qp(q, m) + 1u32));
    exact_div(acc, center)
}

fn g2(q: u64) -> BigUint {
    qp(q, 6) * (qp(q, 6) - 1u32) * (qp(q, 2) - 1u32)
}

fn f4(q: u64) -> BigUint {
    qp(q, 24) * (qp(q, 12) - 1u32) * (qp(q, 8) - 1u32) * (qp(q, 6) - 1u32) * (qp(q, 2) - 1u32)
}

fn e6(q: u64) -> BigUint {
    let acc = qp(q, 36)
        * (qp(q, 12) - 1u32)
        * (qp(q, 9) - 1u32)
        * (qp(q, 8) - 1u32)
        * (qp(q, 6) - 1u32)
        * (qp(q, 5) - 1u32)
        * (qp(q, 2) - 1u32);
    exact_div(acc, big(3).gcd(&big(q - 1)))
}

fn e7(q: u64) -> BigUint {
    let acc = qp(q, 63)
        * (qp(q, 18) - 1u32)
        * (qp(q, 14) - 1u32)
        * (qp(q, 12) - 1u32)
        * (qp(q, 10) - 1u32)
        * (qp(q, 8) - 1u32)
        * (qp(q, 6) - 1u32)
        * (qp(q, 2) - 1u32);
    exact_div(acc, big(2).gcd(&big(q - 1)))
}

fn e8(q: u64) -> BigUint {
    qp(q, 120)
        * (qp(q, 30) - 1u32)
        * (qp(q, 24) - 1u32)
        * (qp(q, 20) - 1u32)
        * (qp(q, 18) - 1u32)
        * (qp(q, 14) - 1u32)
        * (qp(q, 12) - 1u32)
        * (qp(q, 8) - 1u32)
        * (qp(q, 2) - 1u32)
}

fn tw_e6(q: u64) -> BigUint {
    let acc = qp(q, 36)
        * (qp(q, 12) - 1u32)
        * (qp(q, 9) + 1u32)
        * (qp(q, 8) - 1u32)
        * (qp(q, 6) - 1u32)
        * (qp(q, 5) + 1u32)
        * (qp(q, 2) - 1u32);
    exact_div(acc, big(3).gcd(&big(q + 1)))
}

/// |3D4(q)| = q^12 (q^8 + q^4 + 1)(q^6 - 1)(q^2 - 1), the irreducible factor
/// written directly rather than as a quotient.
fn th_d4(q: u64) -> BigUint {
    qp(q, 12) * (qp(q, 8) + qp(q, 4) + 1u32) * (qp(q, 6) - 1u32) * (qp(q, 2) - 1u32)
}

fn sz(q: u64) -> BigUint {
    qp(q, 2) * (qp(q, 2) + 1u32) * (q - 1)
}

fn tw_g2(q: u64) -> BigUint {
    qp(q, 3) * (qp(q, 3) + 1u32) * (q - 1)
}

fn tw_f4(q: u64) -> BigUint {
    qp(q, 12) * (qp(q, 6) + 1u32) * (qp(q, 4) - 1u32) * (qp(q, 3) + 1u32) * (q - 1)
}

const PRIME_POWERS: [(u64, u64, u32); 7] = [
    (2, 2, 1),
    (3, 3, 1),
    (4, 2, 2),
    (5, 5, 1),
    (7, 7, 1),
    (8, 2, 3),
    (9, 3, 2),
];

#[test]
fn classical_families_match_the_naive_oracle() {
    for &(q, p, k) in &PRIME_POWERS {
        for n in 2..=6u32 {
            assert_eq!(
                group_order(&GroupId::lie(LieFamily::L, n, p, k)).unwrap(),
                psl(n, q),
                "L{n}({q})"
            );
        }
        for n in 3..=6u32 {
            assert_eq!(
                group_order(&GroupId::lie(LieFamily::U, n, p, k)).unwrap(),
                psu(n, q),
                "U{n}({q})"
            );
        }
        for m in 2..=5u32 {
            assert_eq!(
                group_order(&GroupId::lie(LieFamily::S, 2 * m, p, k)).unwrap(),
                psp(m, q),
                "S{}({q})",
                2 * m
            );
        }
        for m in 3..=5u32 {
            assert_eq!(
                group_order(&GroupId::lie(LieFamily::OOdd, 2 * m + 1, p, k)).unwrap(),
                omega_odd(m, q),
                "O{}({q})",
                2 * m + 1
            );
        }
        for m in 4..=5u32 {
            assert_eq!(
                group_order(&GroupId::lie(LieFamily::OPlus, 2 * m, p, k)).unwrap(),
                omega_plus(m, q),
                "O+{}({q})",
                2 * m
            );
            assert_eq!(
                group_order(&GroupId::lie(LieFamily::OMinus, 2 * m, p, k)).unwrap(),
                omega_minus(m, q),
                "O-{}({q})",
                2 * m
            );
        }
    }
}

#[test]
fn exceptional_families_match_the_naive_oracle() {
    for &(q, p, k) in &PRIME_POWERS {
        assert_eq!(
            group_order(&GroupId::lie(LieFamily::G2, 2, p, k)).unwrap(),
            g2(q),
            "G2({q})"
        );
        assert_eq!(
            group_order(&GroupId::lie(LieFamily::F4, 4, p, k)).unwrap(),
            f4(q),
            "F4({q})"
        );
        assert_eq!(
            group_order(&GroupId::lie(LieFamily::E6, 6, p, k)).unwrap(),
            e6(q),
            "E6({q})"
        );
        assert_eq!(
            group_order(&GroupId::lie(LieFamily::E7, 7, p, k)).unwrap(),
            e7(q),
            "E7({q})"
        );
        assert_eq!(
            group_order(&GroupId::lie(LieFamily::E8, 8, p, k)).unwrap(),
            e8(q),
            "E8({q})"
        );
        assert_eq!(
            group_order(&GroupId::lie(LieFamily::TwE6, 6, p, k)).unwrap(),
            tw_e6(q),
            "2E6({q})"
        );
        assert_eq!(
            group_order(&GroupId::lie(LieFamily::ThD4, 4, p, k)).unwrap(),
            th_d4(q),
            "3D4({q})"
        );
    }
    for k in [3u32, 5] {
        let q = 2u64.pow(k);
        assert_eq!(
            group_order(&GroupId::lie(LieFamily::Sz, 2, 2, k)).unwrap(),
            sz(q),
            "Sz({q})"
        );
        assert_eq!(
            group_order(&GroupId::lie(LieFamily::TwF4, 4, 2, k)).unwrap(),
            tw_f4(q),
            "2F4({q})"
        );
        let q3 = 3u64.pow(k);
        assert_eq!(
            group_order(&GroupId::lie(LieFamily::TwG2, 2, 3, k)).unwrap(),
            tw_g2(q3),
            "2G2({q3})"
        );
    }
}

#[test]
fn alternating_spectra_match_factorial_factorization() {
    let pi = sieve_primes(300).unwrap();
    let mut factorial = BigUint::one();
    for n in 2..=300u64 {
        factorial *= n;
        if n < 5 {
            continue;
        }
        let record = spectrum(&GroupId::Alternating(n as u32), &pi)
            .unwrap()
            .expect("A_n is smooth below its own degree");
        let direct = constrained_factor(&(factorial.clone() / 2u32), &pi);
        assert!(direct.is_smooth());
        assert_eq!(record.order_factors, direct, "A{n}");
    }
}

#[test]
fn lie_spectra_match_direct_factorization_of_the_order() {
    let pi = sieve_primes(10_000).unwrap();
    let ids = [
        GroupId::lie(LieFamily::L, 5, 3, 2),
        GroupId::lie(LieFamily::U, 6, 2, 2),
        GroupId::lie(LieFamily::S, 10, 2, 1),
        GroupId::lie(LieFamily::OOdd, 9, 5, 1),
        GroupId::lie(LieFamily::OPlus, 10, 3, 1),
        GroupId::lie(LieFamily::OMinus, 8, 7, 1),
        GroupId::lie(LieFamily::ThD4, 4, 7, 2),
        GroupId::lie(LieFamily::TwE6, 6, 3, 1),
        GroupId::lie(LieFamily::E8, 8, 2, 1),
        GroupId::lie(LieFamily::Sz, 2, 2, 5),
        GroupId::lie(LieFamily::TwG2, 2, 3, 5),
    ];
    for id in ids {
        let record = spectrum(&id, &pi)
            .unwrap()
            .unwrap_or_else(|| panic!("{id} should be smooth below 10000"));
        let direct = constrained_factor(&group_order(&id).unwrap(), &pi);
        assert!(direct.is_smooth(), "{id}");
        assert_eq!(record.order_factors, direct, "{id}");
    }
}
