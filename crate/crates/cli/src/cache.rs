//! Versioned binary result cache.
//!
//! Layout, all integers little-endian: the magic string `SSPEC1`, a u32
//! layout version, the 32-byte configuration digest, a u64 record count, the
//! records, and the record count again as a truncation check. The digest
//! binds the sorted prime list, the tool version and the k-margin, so any
//! change of input or tool invalidates the entry and forces a recompute.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use sha2::{Digest, Sha256};
use simple_spectrum_core::order::{ALL_LIE_FAMILIES, ALL_SPORADIC};
use simple_spectrum_core::{GroupId, GroupRecord, LieId, PrimeSet};

const MAGIC: &[u8; 6] = b"SSPEC1";
const LAYOUT_VERSION: u32 = 1;

pub fn config_digest(pi: &PrimeSet, version: &str, k_margin: u32) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(MAGIC);
    hasher.update(version.as_bytes());
    hasher.update(k_margin.to_le_bytes());
    hasher.update((pi.len() as u64).to_le_bytes());
    for &p in pi.primes() {
        hasher.update(p.to_le_bytes());
    }
    hasher.finalize().into()
}

pub enum CacheOutcome {
    Hit(Vec<GroupRecord>),
    NoFile,
    /// The file is a valid cache for some other configuration or version.
    Mismatch,
    Corrupt(String),
}

pub fn load(path: &Path, expected_digest: &[u8; 32]) -> CacheOutcome {
    let bytes = match fs::read(path) {
        Ok(bytes) => bytes,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return CacheOutcome::NoFile,
        Err(e) => return CacheOutcome::Corrupt(e.to_string()),
    };
    match parse(&bytes, expected_digest) {
        Ok(Some(records)) => CacheOutcome::Hit(records),
        Ok(None) => CacheOutcome::Mismatch,
        Err(reason) => CacheOutcome::Corrupt(reason),
    }
}

pub fn store(path: &Path, digest: &[u8; 32], records: &[GroupRecord]) -> io::Result<()> {
    let mut buffer = Vec::new();
    buffer.extend_from_slice(MAGIC);
    buffer.extend_from_slice(&LAYOUT_VERSION.to_le_bytes());
    buffer.extend_from_slice(digest);
    buffer.extend_from_slice(&(records.len() as u64).to_le_bytes());
    for record in records {
        encode_record(record, &mut buffer);
    }
    buffer.extend_from_slice(&(records.len() as u64).to_le_bytes());
    let mut file = fs::File::create(path)?;
    file.write_all(&buffer)?;
    file.flush()
}

fn encode_record(record: &GroupRecord, out: &mut Vec<u8>) {
    match &record.id {
        GroupId::Alternating(n) => {
            out.push(0);
            out.extend_from_slice(&n.to_le_bytes());
        }
        GroupId::Sporadic(s) => {
            out.push(1);
            let index = ALL_SPORADIC.iter().position(|t| t == s).expect("catalogued");
            out.push(index as u8);
        }
        GroupId::Tits => out.push(2),
        GroupId::Lie(lie) => {
            out.push(3);
            let index = ALL_LIE_FAMILIES
                .iter()
                .position(|f| *f == lie.family)
                .expect("catalogued");
            out.push(index as u8);
            out.extend_from_slice(&lie.n.to_le_bytes());
            out.extend_from_slice(&lie.p.to_le_bytes());
            out.extend_from_slice(&lie.k.to_le_bytes());
        }
    }
    let factors = &record.order_factors.factors;
    out.extend_from_slice(&(factors.len() as u32).to_le_bytes());
    for (&prime, &exp) in factors {
        out.extend_from_slice(&prime.to_le_bytes());
        out.extend_from_slice(&exp.to_le_bytes());
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], String> {
        if self.at + n > self.bytes.len() {
            return Err("unexpected end of cache file".into());
        }
        let slice = &self.bytes[self.at..self.at + n];
        self.at += n;
        Ok(slice)
    }

    fn u8(&mut self) -> Result<u8, String> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, String> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, String> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

fn parse(bytes: &[u8], expected_digest: &[u8; 32]) -> Result<Option<Vec<GroupRecord>>, String> {
    let mut reader = Reader { bytes, at: 0 };
    if reader.take(MAGIC.len())? != MAGIC {
        return Err("bad magic".into());
    }
    if reader.u32()? != LAYOUT_VERSION {
        return Ok(None);
    }
    if reader.take(32)? != expected_digest {
        return Ok(None);
    }
    let count = reader.u64()?;
    let mut records = Vec::with_capacity(count.min(1 << 24) as usize);
    for _ in 0..count {
        records.push(decode_record(&mut reader)?);
    }
    if reader.u64()? != count {
        return Err("trailing record count mismatch".into());
    }
    if reader.at != bytes.len() {
        return Err("trailing garbage after cache payload".into());
    }
    Ok(Some(records))
}

fn decode_record(reader: &mut Reader) -> Result<GroupRecord, String> {
    let id = match reader.u8()? {
        0 => GroupId::Alternating(reader.u32()?),
        1 => {
            let index = reader.u8()? as usize;
            GroupId::Sporadic(
                *ALL_SPORADIC
                    .get(index)
                    .ok_or_else(|| format!("sporadic index {index} out of range"))?,
            )
        }
        2 => GroupId::Tits,
        3 => {
            let index = reader.u8()? as usize;
            let family = *ALL_LIE_FAMILIES
                .get(index)
                .ok_or_else(|| format!("family index {index} out of range"))?;
            let n = reader.u32()?;
            let p = reader.u64()?;
            let k = reader.u32()?;
            GroupId::Lie(LieId { family, n, p, k })
        }
        other => return Err(format!("unknown record tag {other}")),
    };
    let len = reader.u32()?;
    let mut factors = BTreeMap::new();
    for _ in 0..len {
        let prime = reader.u64()?;
        let exp = reader.u64()?;
        if factors.insert(prime, exp).is_some() {
            return Err(format!("duplicate prime {prime} in factor list"));
        }
    }
    if factors.is_empty() {
        return Err("record with empty factor list".into());
    }
    Ok(GroupRecord::from_factors(id, factors))
}
