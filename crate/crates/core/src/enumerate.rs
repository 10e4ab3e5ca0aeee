//! Candidate generation and the parallel smoothness filter.
//!
//! Any simple group G with pi(G) inside pi lies in S ∪ A_pi ∪ L_pi: the 26
//! sporadic groups (plus the Tits group), the alternating groups A_n with
//! n <= p0 - 1 where p0 is the smallest prime beyond pi, and the groups of
//! Lie type over fields of order p^k with p in pi, k <= t_p and ambient rank
//! at most max{8, t_p}, where t_p = max over r in pi \ {p} of ord_r(p).
//!
//! Per field (p, k) the filter works on multiplicative orders instead of the
//! integers themselves: a prime r divides q^d - 1 exactly when ord_r(p)
//! divides k*d, and the exact exponent follows from the lifting-the-exponent
//! lemma. A term is declared non-smooth via a safe logarithm gap, and every
//! smooth term (hence every accepted group) is re-verified exactly, in
//! machine words when it fits and in big integers otherwise.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::order::{
    self, center_divisor, group_order, is_admissible, GroupId, GroupRecord, LieFamily, LieId,
    ALL_LIE_FAMILIES, ALL_SPORADIC, TITS_DATA,
};
use crate::primes::{
    next_prime_above, val2_minus, val2_plus, valuation, OrderEntry, PrimeSet,
};

/// Tuning knobs for one enumeration run.
#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    /// Multiplies the field-exponent bound k <= t_p. The bound is cited, not
    /// proved, in the underlying scheme; raising the margin lets a run
    /// falsify it empirically without code changes.
    pub k_margin: u32,
    /// Multiplies the rank bound max{8, t_p} (audit instrument).
    pub rank_margin: u32,
    /// Stop a rank chain as soon as a term shared by all higher ranks turns
    /// non-smooth. Always sound; disable to force full-bound iteration.
    pub rank_early_exit: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            k_margin: 1,
            rank_margin: 1,
            rank_early_exit: true,
        }
    }
}

/// Enumeration bounds for one characteristic p in pi.
#[derive(Debug, Clone)]
pub struct CharacteristicBound {
    pub p: u64,
    /// t_p = max over r in pi \ {p} of ord_r(p).
    pub t: u64,
    /// Ambient-rank bound max{8, t_p} (times the audit margin).
    pub rank_max: u32,
    /// Field-exponent bound t_p * k_margin.
    pub k_max: u64,
    entries: Vec<OrderEntry>,
    /// ord -> indices into `entries`; odd moduli only.
    order_buckets: HashMap<u64, Vec<u32>>,
    /// Whether 2 is in pi. For odd p every q^d -+ 1 is even, so without 2 no
    /// term over this characteristic can be smooth.
    has_two: bool,
    v2_p_minus_1: u64,
    v2_p_plus_1: u64,
}

/// Candidate bounds for a whole run.
#[derive(Debug, Clone)]
pub struct CandidateBounds {
    /// Smallest prime greater than every member of pi.
    pub p0: u64,
    /// Largest alternating degree to consider, p0 - 1.
    pub alt_max: u64,
    pub per_char: Vec<CharacteristicBound>,
}

/// Computes p0, the alternating range and the per-characteristic t_p, rank
/// and field-exponent bounds.
pub fn compute_bounds(pi: &PrimeSet, options: &EnumerateOptions) -> CandidateBounds {
    let p0 = next_prime_above(pi.max_prime());
    let per_char: Vec<CharacteristicBound> = pi
        .primes()
        .par_iter()
        .map(|&p| {
            let entries: Vec<OrderEntry> = pi
                .primes()
                .iter()
                .filter(|&&r| r != p)
                .map(|&r| OrderEntry::compute(p, r).expect("r distinct from p"))
                .collect();
            let t = entries.iter().map(|e| e.ord).max().unwrap_or(0);
            let mut order_buckets: HashMap<u64, Vec<u32>> = HashMap::new();
            for (idx, entry) in entries.iter().enumerate() {
                if entry.r != 2 {
                    order_buckets.entry(entry.ord).or_default().push(idx as u32);
                }
            }
            CharacteristicBound {
                p,
                t,
                rank_max: u32::try_from(8.max(t).saturating_mul(options.rank_margin as u64))
                    .expect("rank bound exceeds u32"),
                k_max: t.saturating_mul(options.k_margin as u64),
                entries,
                order_buckets,
                has_two: pi.contains(2),
                v2_p_minus_1: if p == 2 { 0 } else { valuation(p - 1, 2) },
                v2_p_plus_1: if p == 2 { 0 } else { valuation(p + 1, 2) },
            }
        })
        .collect();
    CandidateBounds {
        p0,
        alt_max: p0 - 1,
        per_char,
    }
}

/// All candidate ids in a deterministic order: sporadic groups and the Tits
/// group, alternating groups, then groups of Lie type by characteristic,
/// field exponent, family and subscript. Only admissible ids are yielded.
///
/// This is the audit-grade raw stream; `enumerate_simple_groups` consumes
/// the same candidate set through the chain filter instead.
pub fn candidate_stream(bounds: &CandidateBounds) -> impl Iterator<Item = GroupId> + '_ {
    let sporadic = ALL_SPORADIC
        .iter()
        .map(|&s| GroupId::Sporadic(s))
        .chain(std::iter::once(GroupId::Tits));
    let alternating = (5..=bounds.alt_max.max(4) as u32).map(GroupId::Alternating);
    let lie = bounds.per_char.iter().flat_map(|cb| {
        (1..=cb.k_max).flat_map(move |k| {
            let k = u32::try_from(k).expect("field exponent exceeds u32");
            ALL_LIE_FAMILIES.iter().flat_map(move |&family| {
                family
                    .subscripts_up_to_rank(cb.rank_max)
                    .map(move |n| GroupId::lie(family, n, cb.p, k))
            })
        })
    });
    sporadic
        .chain(alternating)
        .chain(lie)
        .filter(|id| is_admissible(id))
}

/// Exact pi-part of one q^d -+ 1 term. `hits` always lists the exact
/// exponent of every pi-prime dividing the term; `smooth` records whether
/// those account for the whole value.
struct TermFactors {
    hits: Vec<(u64, u64)>,
    smooth: bool,
}

/// Per-field evaluation context: memoized term factorizations for one (p, k).
struct FieldContext<'a> {
    cb: &'a CharacteristicBound,
    k: u64,
    ln_p: f64,
    log2_p: f64,
    k_factors: Vec<(u64, u32)>,
    minus_memo: Vec<Option<TermFactors>>,
    plus_memo: Vec<Option<TermFactors>>,
    divisor_scratch: Vec<u64>,
}

impl<'a> FieldContext<'a> {
    fn new(cb: &'a CharacteristicBound) -> Self {
        Self {
            cb,
            k: 0,
            ln_p: (cb.p as f64).ln(),
            log2_p: (cb.p as f64).log2(),
            k_factors: Vec::new(),
            minus_memo: Vec::new(),
            plus_memo: Vec::new(),
            divisor_scratch: Vec::new(),
        }
    }

    fn reset(&mut self, k: u64) {
        self.k = k;
        self.k_factors.clear();
        factor_u64(k, &mut self.k_factors);
        self.minus_memo.clear();
        self.plus_memo.clear();
    }

    fn minus(&mut self, d: u32) -> bool {
        self.ensure(d, false);
        self.minus_memo[d as usize].as_ref().unwrap().smooth
    }

    fn plus(&mut self, d: u32) -> bool {
        self.ensure(d, true);
        self.plus_memo[d as usize].as_ref().unwrap().smooth
    }

    fn term(&mut self, d: u32, plus: bool) -> bool {
        if plus {
            self.plus(d)
        } else {
            self.minus(d)
        }
    }

    fn ensure(&mut self, d: u32, plus: bool) {
        let memo = if plus {
            &mut self.plus_memo
        } else {
            &mut self.minus_memo
        };
        if memo.len() <= d as usize {
            memo.resize_with(d as usize + 1, || None);
        }
        if memo[d as usize].is_some() {
            return;
        }
        let state = self.compute_term(d, plus);
        let memo = if plus {
            &mut self.plus_memo
        } else {
            &mut self.minus_memo
        };
        memo[d as usize] = Some(state);
    }

    fn stored(&self, d: u32, plus: bool) -> &[(u64, u64)] {
        let memo = if plus { &self.plus_memo } else { &self.minus_memo };
        &memo
            .get(d as usize)
            .and_then(|s| s.as_ref())
            .expect("term evaluated before assembly")
            .hits
    }

    /// Factors q^d - 1 (or q^d + 1) over pi. A prime r with odd modulus
    /// divides q^d - 1 exactly when ord_r(p) | k*d, and divides q^d + 1
    /// exactly when ord_r(p) | 2k*d but not k*d; exponents come from the
    /// lifting-the-exponent lemma. Smoothness is decided exactly: in u128
    /// arithmetic for small terms, otherwise by a logarithm gap (a genuine
    /// leftover contributes at least ln 2) with exact big-integer
    /// confirmation whenever the gap is not decisive.
    fn compute_term(&mut self, d: u32, plus: bool) -> TermFactors {
        let m = self.k * d as u64;
        let mut hits: Vec<(u64, u64)> = Vec::new();
        if self.cb.p != 2 && self.cb.has_two {
            let v = if plus {
                val2_plus(m, self.cb.v2_p_plus_1)
            } else {
                val2_minus(m, self.cb.v2_p_minus_1, self.cb.v2_p_plus_1)
            };
            hits.push((2, v));
        }
        let mut d_factors = Vec::new();
        factor_u64(d as u64, &mut d_factors);
        let mut m_factors = merge_factors(&self.k_factors, &d_factors);
        if plus {
            // divisors of 2m that do not divide m: exactly one more factor 2
            // than m has, times any divisor of the odd part
            let two_exp = m_factors
                .iter()
                .find(|&&(p, _)| p == 2)
                .map(|&(_, e)| e)
                .unwrap_or(0);
            m_factors.retain(|&(p, _)| p != 2);
            enumerate_divisors(&m_factors, &mut self.divisor_scratch);
            let scale = 1u64 << (two_exp + 1);
            for e in &mut self.divisor_scratch {
                *e *= scale;
            }
        } else {
            enumerate_divisors(&m_factors, &mut self.divisor_scratch);
        }
        for i in 0..self.divisor_scratch.len() {
            let e = self.divisor_scratch[i];
            if let Some(bucket) = self.cb.order_buckets.get(&e) {
                for &idx in bucket {
                    let entry = &self.cb.entries[idx as usize];
                    let v = if plus {
                        entry.val_plus(m)
                    } else {
                        entry.val_minus(m)
                    };
                    hits.push((entry.r, v));
                }
            }
        }
        hits.sort_unstable();

        let bits = m as f64 * self.log2_p;
        let smooth = if bits <= 100.0 {
            let mut value = pow_u128(self.cb.p, m);
            if plus {
                value += 1;
            } else {
                value -= 1;
            }
            for &(r, v) in &hits {
                for _ in 0..v {
                    debug_assert!(value % r as u128 == 0, "exponent overshoot at {r}");
                    value /= r as u128;
                }
            }
            value == 1
        } else {
            let collected: f64 = hits
                .iter()
                .map(|&(r, v)| v as f64 * (r as f64).ln())
                .sum();
            let target = m as f64 * self.ln_p;
            if target - collected > 0.5 {
                // a genuine leftover contributes at least ln 2
                false
            } else {
                // near-miss or smooth: confirm exactly
                let mut value =
                    BigUint::from(self.cb.p).pow(u32::try_from(m).expect("term exponent"));
                if plus {
                    value += 1u32;
                } else {
                    value -= 1u32;
                }
                for &(r, v) in &hits {
                    for _ in 0..v {
                        let (quot, rem) = value.div_rem(&BigUint::from(r));
                        assert!(rem.is_zero(), "exponent overshoot at {r}");
                        value = quot;
                    }
                }
                value.is_one()
            }
        };
        TermFactors { hits, smooth }
    }

    /// Smoothness of the 3D4 factor q^8 + q^4 + 1 = (q^12 - 1) / (q^4 - 1).
    /// The raw q^12 - 1 may carry pi-external primes that cancel against
    /// q^4 - 1, so the quotient is judged on its net pi-part.
    fn triality_quotient_smooth(&mut self) -> bool {
        self.ensure(12, false);
        self.ensure(4, false);
        let mut net: BTreeMap<u64, u64> = self.stored(12, false).iter().copied().collect();
        for &(r, v) in self.stored(4, false) {
            let slot = net.get_mut(&r).expect("q^4 - 1 divides q^12 - 1");
            assert!(*slot >= v, "valuation of {r} in q^4 - 1 exceeds q^12 - 1");
            *slot -= v;
        }
        net.retain(|_, v| *v > 0);
        let m4 = self.k * 4;
        let bits = 2.0 * m4 as f64 * self.log2_p;
        if bits <= 100.0 {
            let quarter = pow_u128(self.cb.p, m4);
            let mut value = quarter * quarter + quarter + 1;
            for (&r, &v) in &net {
                for _ in 0..v {
                    if value % r as u128 != 0 {
                        panic!("exponent overshoot at {r} in triality quotient");
                    }
                    value /= r as u128;
                }
            }
            return value == 1;
        }
        let collected: f64 = net.iter().map(|(&r, &v)| v as f64 * (r as f64).ln()).sum();
        let target = 2.0 * m4 as f64 * self.ln_p;
        if target - collected > 0.5 {
            return false;
        }
        let quarter = BigUint::from(self.cb.p).pow(u32::try_from(m4).expect("term exponent"));
        let mut value = &quarter * &quarter + &quarter + 1u32;
        for (&r, &v) in &net {
            for _ in 0..v {
                let (quot, rem) = value.div_rem(&BigUint::from(r));
                assert!(rem.is_zero(), "exponent overshoot at {r} in triality quotient");
                value = quot;
            }
        }
        value.is_one()
    }

    fn all_terms_smooth(&mut self, family: LieFamily, n: u32) -> bool {
        family
            .terms(n)
            .iter()
            .all(|t| self.term(t.exp, t.plus))
    }

    fn try_emit(&self, family: LieFamily, n: u32, out: &mut Vec<GroupRecord>) {
        let lie = LieId {
            family,
            n,
            p: self.cb.p,
            k: u32::try_from(self.k).expect("field exponent exceeds u32"),
        };
        let id = GroupId::Lie(lie);
        if !is_admissible(&id) {
            return;
        }
        let mut factors = BTreeMap::new();
        factors.insert(self.cb.p, family.q_exponent(n) * self.k);
        for term in family.terms(n) {
            let list = self.stored(term.exp, term.plus);
            if term.divides {
                for &(r, v) in list {
                    let slot = factors
                        .get_mut(&r)
                        .unwrap_or_else(|| panic!("exponent of {r} went negative in {id}"));
                    assert!(*slot >= v, "exponent of {r} went negative in {id}");
                    *slot -= v;
                }
            } else {
                for &(r, v) in list {
                    *factors.entry(r).or_insert(0) += v;
                }
            }
        }
        let mut center_factors = Vec::new();
        factor_u64(center_divisor(&lie), &mut center_factors);
        for (r, e) in center_factors {
            let slot = factors
                .get_mut(&r)
                .unwrap_or_else(|| panic!("center prime {r} missing from order of {id}"));
            assert!(*slot >= e as u64, "exponent of {r} went negative in {id}");
            *slot -= e as u64;
        }
        factors.retain(|_, e| *e > 0);
        let record = GroupRecord::from_factors(id, factors);
        // exact end-to-end confirmation of the fast factorization path
        assert_eq!(
            record.order_factors.reconstruct(),
            group_order(&id).expect("admissible id"),
            "factored order of {id} disagrees with the formula"
        );
        out.push(record);
    }

    /// Runs one family's rank chain. A chain breaks when a term occurring in
    /// every higher rank turns non-smooth (the term lists only grow).
    fn run_family(&mut self, family: LieFamily, opts: &EnumerateOptions, out: &mut Vec<GroupRecord>) {
        let rank_max = self.cb.rank_max;
        match family {
            LieFamily::L | LieFamily::U | LieFamily::S | LieFamily::OOdd => {
                for n in family.subscripts_up_to_rank(rank_max) {
                    if self.all_terms_smooth(family, n) {
                        self.try_emit(family, n, out);
                    } else if opts.rank_early_exit {
                        break;
                    }
                }
            }
            LieFamily::OPlus | LieFamily::OMinus => {
                'ranks: for n in family.subscripts_up_to_rank(rank_max) {
                    let m = n / 2;
                    for i in 1..m {
                        if !self.minus(2 * i) {
                            if opts.rank_early_exit {
                                break 'ranks;
                            }
                            continue 'ranks;
                        }
                    }
                    let extra = if family == LieFamily::OPlus {
                        self.minus(m)
                    } else {
                        self.plus(m)
                    };
                    if extra {
                        self.try_emit(family, n, out);
                    }
                }
            }
            _ => {
                let n = family.fixed_subscript().expect("exceptional family");
                if family.ambient_rank(n) > rank_max {
                    return;
                }
                let lie = LieId {
                    family,
                    n,
                    p: self.cb.p,
                    k: u32::try_from(self.k).expect("field exponent exceeds u32"),
                };
                if !is_admissible(&GroupId::Lie(lie)) {
                    return;
                }
                let smooth = if family == LieFamily::ThD4 {
                    self.minus(2) && self.minus(6) && self.triality_quotient_smooth()
                } else {
                    self.all_terms_smooth(family, n)
                };
                if smooth {
                    self.try_emit(family, n, out);
                }
            }
        }
    }
}

/// Enumerates every admissible candidate for one characteristic.
fn evaluate_characteristic(
    cb: &CharacteristicBound,
    opts: &EnumerateOptions,
    out: &mut Vec<GroupRecord>,
) {
    let mut ctx = FieldContext::new(cb);
    for k in 1..=cb.k_max {
        ctx.reset(k);
        // every family except Sz and 2G2 contains the q^2 - 1 factor, so one
        // term evaluation retires almost every field
        if ctx.minus(2) {
            for family in ALL_LIE_FAMILIES {
                ctx.run_family(family, opts, out);
            }
        } else {
            if cb.p == 2 {
                ctx.run_family(LieFamily::Sz, opts, out);
            }
            if cb.p == 3 {
                ctx.run_family(LieFamily::TwG2, opts, out);
            }
        }
    }
}

fn alternating_records(pi: &PrimeSet, alt_max: u64) -> Vec<GroupRecord> {
    let top = alt_max.min(pi.prefix_limit());
    if top < 5 {
        return Vec::new();
    }
    (5..=top)
        .into_par_iter()
        .map(|n| {
            let mut factors = BTreeMap::new();
            for &r in pi.primes() {
                if r > n {
                    break;
                }
                let mut e = order::factorial_valuation(n, r);
                if r == 2 {
                    e -= 1;
                }
                if e > 0 {
                    factors.insert(r, e);
                }
            }
            GroupRecord::from_factors(GroupId::Alternating(n as u32), factors)
        })
        .collect()
}

fn fixed_order_records(pi: &PrimeSet) -> Vec<GroupRecord> {
    let mut out = Vec::new();
    for s in ALL_SPORADIC {
        let data = s.data();
        if data.factors.iter().all(|&(r, _)| pi.contains(r)) {
            out.push(GroupRecord::from_factors(
                GroupId::Sporadic(s),
                data.factors.iter().copied().collect(),
            ));
        }
    }
    if TITS_DATA.factors.iter().all(|&(r, _)| pi.contains(r)) {
        out.push(GroupRecord::from_factors(
            GroupId::Tits,
            TITS_DATA.factors.iter().copied().collect(),
        ));
    }
    out
}

/// Enumerates all non-abelian finite simple groups G with pi(G) inside pi.
///
/// The result is deduplicated by canonical name and sorted by
/// (max_prime, spectrum_size, canonical_name); it is identical for any
/// worker count.
pub fn enumerate_simple_groups(pi: &PrimeSet, options: &EnumerateOptions) -> Vec<GroupRecord> {
    let bounds = compute_bounds(pi, options);
    let mut records = fixed_order_records(pi);
    records.extend(alternating_records(pi, bounds.alt_max));
    let lie: Vec<Vec<GroupRecord>> = bounds
        .per_char
        .par_iter()
        .map(|cb| {
            let mut out = Vec::new();
            evaluate_characteristic(cb, options, &mut out);
            out
        })
        .collect();
    records.extend(lie.into_iter().flatten());
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    records.dedup_by(|a, b| {
        if a.canonical_name == b.canonical_name {
            assert_eq!(a, b, "canonical name collision with different records");
            true
        } else {
            false
        }
    });
    records
}

fn pow_u128(base: u64, exp: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc *= base as u128;
    }
    acc
}

/// Trial-division factorization of a small integer (exponents of k and d and
/// center divisors; all far below 2^40).
fn factor_u64(mut n: u64, out: &mut Vec<(u64, u32)>) {
    out.clear();
    if n <= 1 {
        return;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
}

fn merge_factors(a: &[(u64, u32)], b: &[(u64, u32)]) -> Vec<(u64, u32)> {
    let mut merged: Vec<(u64, u32)> = a.to_vec();
    for &(p, e) in b {
        match merged.iter_mut().find(|(q, _)| *q == p) {
            Some(slot) => slot.1 += e,
            None => merged.push((p, e)),
        }
    }
    merged
}

fn enumerate_divisors(factors: &[(u64, u32)], out: &mut Vec<u64>) {
    out.clear();
    out.push(1);
    for &(p, e) in factors {
        let len = out.len();
        let mut power = 1u64;
        for _ in 0..e {
            power *= p;
            for i in 0..len {
                out.push(out[i] * power);
            }
        }
    }
}
