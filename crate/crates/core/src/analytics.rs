//! Post-processing of one enumeration run: the partition by maximal prime
//! divisor, generic/non-generic classification, spectrum-size strata and the
//! spectrum-size extremes.

use std::collections::BTreeMap;

use crate::error::SpectrumError;
use crate::order::{alias_canonical, display_name, GroupId, GroupRecord, LieFamily};
use crate::primes::{is_prime, next_prime_above};

/// All groups of one run whose largest prime divisor is p, split into the
/// generic part {L2(p), A_p, ..., A_{p'-1}} and the rest.
#[derive(Debug)]
pub struct SpectrumClass<'a> {
    pub p: u64,
    pub members: Vec<&'a GroupRecord>,
    pub generic_members: Vec<&'a GroupRecord>,
    pub nongeneric_members: Vec<&'a GroupRecord>,
    pub is_generic: bool,
}

/// Groups records by their maximal prime divisor. Every record lands in
/// exactly one class.
pub fn partition_by_max_prime(records: &[GroupRecord]) -> BTreeMap<u64, SpectrumClass<'_>> {
    let mut classes: BTreeMap<u64, Vec<&GroupRecord>> = BTreeMap::new();
    for record in records {
        classes.entry(record.max_prime).or_default().push(record);
    }
    classes
        .into_iter()
        .map(|(p, members)| {
            let generic_names: Vec<String> = if p >= 5 && is_prime(p) {
                generic_groups(p)
                    .expect("p >= 5 prime")
                    .iter()
                    .map(display_name)
                    .collect()
            } else {
                Vec::new()
            };
            let mut generic_members = Vec::new();
            let mut nongeneric_members = Vec::new();
            for &record in &members {
                if generic_names.iter().any(|n| *n == record.canonical_name) {
                    generic_members.push(record);
                } else {
                    nongeneric_members.push(record);
                }
            }
            let is_generic = nongeneric_members.is_empty();
            (
                p,
                SpectrumClass {
                    p,
                    members,
                    generic_members,
                    nongeneric_members,
                    is_generic,
                },
            )
        })
        .collect()
}

/// The generic members of S_p: L2(p) followed by A_p, ..., A_{p'-1} where p'
/// is the smallest prime beyond p. Canonicalized, so for p = 5 the L2(5)
/// entry collapses into A5 and the list has p' - p elements instead of
/// p' - p + 1.
pub fn generic_groups(p: u64) -> Result<Vec<GroupId>, SpectrumError> {
    if p < 5 || !is_prime(p) {
        return Err(SpectrumError::GenericRange(p));
    }
    let linear = GroupId::lie(LieFamily::L, 2, p, 1);
    let linear = alias_canonical(&linear).unwrap_or(linear);
    let p_next = next_prime_above(p);
    let mut out = Vec::with_capacity((p_next - p + 1) as usize);
    if !matches!(linear, GroupId::Alternating(_)) {
        out.push(linear);
    }
    for n in p..p_next {
        out.push(GroupId::Alternating(n as u32));
    }
    Ok(out)
}

/// Primes p strictly inside `range` whose class contains only generic
/// groups, in increasing order.
pub fn classify_generic_primes(
    partition: &BTreeMap<u64, SpectrumClass<'_>>,
    range: (u64, u64),
) -> Vec<u64> {
    partition
        .values()
        .filter(|class| range.0 < class.p && class.p < range.1 && class.is_generic)
        .map(|class| class.p)
        .collect()
}

/// All groups of one run whose spectrum has exactly n elements.
#[derive(Debug)]
pub struct KnStratum<'a> {
    pub n: usize,
    pub members: Vec<&'a GroupRecord>,
    pub count: usize,
}

/// Stratifies records by spectrum size, ascending.
pub fn stratify_kn(records: &[GroupRecord]) -> Vec<KnStratum<'_>> {
    let mut strata: BTreeMap<usize, Vec<&GroupRecord>> = BTreeMap::new();
    for record in records {
        strata.entry(record.spectrum_size).or_default().push(record);
    }
    strata
        .into_iter()
        .map(|(n, members)| KnStratum {
            n,
            count: members.len(),
            members,
        })
        .collect()
}

/// The two largest spectrum sizes attained by non-alternating groups, their
/// witnesses, and the witnesses of the maximum grouped by identical spectra.
#[derive(Debug)]
pub struct ExtremesReport<'a> {
    pub max_size: usize,
    pub max_witnesses: Vec<&'a GroupRecord>,
    /// Witnesses of the maximum, grouped by equal prime spectrum.
    pub shared_spectra: Vec<Vec<&'a GroupRecord>>,
    pub second_size: Option<usize>,
    pub second_witnesses: Vec<&'a GroupRecord>,
}

/// Reports the largest spectrum sizes among non-alternating records; `None`
/// when the run contains none.
pub fn extremes(records: &[GroupRecord]) -> Option<ExtremesReport<'_>> {
    let mut by_size: BTreeMap<usize, Vec<&GroupRecord>> = BTreeMap::new();
    for record in records.iter().filter(|r| !r.is_alternating()) {
        by_size.entry(record.spectrum_size).or_default().push(record);
    }
    let (&max_size, max_witnesses) = by_size.iter().next_back()?;
    let max_witnesses = max_witnesses.clone();
    let second = by_size.range(..max_size).next_back();
    let mut spectra: BTreeMap<&[u64], Vec<&GroupRecord>> = BTreeMap::new();
    for &record in &max_witnesses {
        spectra
            .entry(record.spectrum.as_slice())
            .or_default()
            .push(record);
    }
    Some(ExtremesReport {
        max_size,
        shared_spectra: spectra.into_values().collect(),
        max_witnesses,
        second_size: second.map(|(&n, _)| n),
        second_witnesses: second.map(|(_, w)| w.clone()).unwrap_or_default(),
    })
}
