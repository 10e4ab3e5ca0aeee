//! Report emission in text, TSV and JSON-lines formats.
//!
//! Every format ends with a summary line carrying the total count: plain in
//! text, `#`-prefixed in TSV, a `{"total": N}` object in JSON lines.
//! Spectra are printed ascending, comma-separated, without spaces.

use std::io::{self, Write};

use serde::Serialize;
use simple_spectrum_core::analytics::{
    classify_generic_primes, extremes, partition_by_max_prime, stratify_kn, SpectrumClass,
};
use simple_spectrum_core::{display_name, GroupId, GroupRecord};

use crate::config::{Format, ReportKind, RunConfig};

pub fn emit_report(
    records: &[GroupRecord],
    config: &RunConfig,
    out: &mut dyn Write,
) -> io::Result<()> {
    match config.report {
        ReportKind::Groups => groups(records, config.format, out),
        ReportKind::ByMaxPrime => per_prime_table(records, config, out, false),
        ReportKind::NongenericTable => per_prime_table(records, config, out, true),
        ReportKind::GenericPrimes => generic_primes(records, config, out),
        ReportKind::KnTable => kn_table(records, config.format, out),
        ReportKind::Extremes => extremes_report(records, config.format, out),
    }
}

fn write_summary(
    out: &mut dyn Write,
    format: Format,
    count: usize,
    noun: &str,
) -> io::Result<()> {
    match format {
        Format::Text => writeln!(out, "{count} {noun}"),
        Format::Tsv => writeln!(out, "# {count} {noun}"),
        Format::Jsonl => writeln!(out, "{}", serde_json::json!({ "total": count })),
    }
}

fn join_u64(values: impl IntoIterator<Item = u64>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Serialize)]
struct RecordView<'a> {
    name: &'a str,
    family: &'a str,
    p: Option<u64>,
    k: Option<u32>,
    subscript: Option<u32>,
    spectrum: &'a [u64],
    aliases: Vec<String>,
    max_prime: u64,
    spectrum_size: usize,
}

fn view(record: &GroupRecord) -> RecordView<'_> {
    let (p, k, subscript) = match &record.id {
        GroupId::Alternating(n) => (None, None, Some(*n)),
        GroupId::Sporadic(_) | GroupId::Tits => (None, None, None),
        GroupId::Lie(lie) => (Some(lie.p), Some(lie.k), Some(lie.n)),
    };
    RecordView {
        name: &record.canonical_name,
        family: record.id.family_tag(),
        p,
        k,
        subscript,
        spectrum: &record.spectrum,
        aliases: record.aliases.iter().map(display_name).collect(),
        max_prime: record.max_prime,
        spectrum_size: record.spectrum_size,
    }
}

fn opt_field<T: ToString>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

fn groups(records: &[GroupRecord], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Text => {
            for record in records {
                writeln!(out, "{}", record.canonical_name)?;
            }
        }
        Format::Tsv => {
            for record in records {
                let v = view(record);
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    v.name,
                    v.family,
                    opt_field(v.p),
                    opt_field(v.k),
                    opt_field(v.subscript),
                    record.order_bits(),
                    join_u64(record.spectrum.iter().copied()),
                )?;
            }
        }
        Format::Jsonl => {
            for record in records {
                serde_json::to_writer(&mut *out, &view(record))?;
                writeln!(out)?;
            }
        }
    }
    write_summary(out, format, records.len(), "groups")
}

fn in_range(class: &SpectrumClass<'_>, range: (u64, u64)) -> bool {
    range.0 < class.p && class.p < range.1
}

fn member_names<'a>(members: &[&'a GroupRecord]) -> Vec<&'a str> {
    members.iter().map(|r| r.canonical_name.as_str()).collect()
}

fn per_prime_table(
    records: &[GroupRecord],
    config: &RunConfig,
    out: &mut dyn Write,
    nongeneric_only: bool,
) -> io::Result<()> {
    let partition = partition_by_max_prime(records);
    let classes: Vec<&SpectrumClass> = partition
        .values()
        .filter(|c| in_range(c, config.report_range) && !(nongeneric_only && c.is_generic))
        .collect();
    let mut listed = 0usize;
    for class in &classes {
        let names = member_names(&class.nongeneric_members);
        listed += names.len();
        match config.format {
            Format::Text => writeln!(
                out,
                "{} | {} | {}",
                class.p,
                class.members.len(),
                names.join(", ")
            )?,
            Format::Tsv => writeln!(
                out,
                "{}\t{}\t{}",
                class.p,
                class.members.len(),
                names.join(",")
            )?,
            Format::Jsonl => {
                let row = if nongeneric_only {
                    serde_json::json!({
                        "p": class.p,
                        "size": class.members.len(),
                        "nongeneric": names,
                    })
                } else {
                    serde_json::json!({
                        "p": class.p,
                        "size": class.members.len(),
                        "generic": member_names(&class.generic_members),
                        "nongeneric": names,
                    })
                };
                writeln!(out, "{row}")?;
            }
        }
    }
    if nongeneric_only {
        write_summary(out, config.format, listed, "non-generic groups")
    } else {
        write_summary(out, config.format, classes.len(), "classes")
    }
}

fn generic_primes(
    records: &[GroupRecord],
    config: &RunConfig,
    out: &mut dyn Write,
) -> io::Result<()> {
    let partition = partition_by_max_prime(records);
    let primes = classify_generic_primes(&partition, config.report_range);
    for &p in &primes {
        match config.format {
            Format::Text | Format::Tsv => writeln!(out, "{p}")?,
            Format::Jsonl => writeln!(out, "{}", serde_json::json!({ "p": p }))?,
        }
    }
    write_summary(out, config.format, primes.len(), "generic primes")
}

fn kn_table(records: &[GroupRecord], format: Format, out: &mut dyn Write) -> io::Result<()> {
    for stratum in stratify_kn(records) {
        match format {
            Format::Text => writeln!(out, "{} | {}", stratum.n, stratum.count)?,
            Format::Tsv => writeln!(out, "{}\t{}", stratum.n, stratum.count)?,
            Format::Jsonl => writeln!(
                out,
                "{}",
                serde_json::json!({ "n": stratum.n, "count": stratum.count })
            )?,
        }
    }
    write_summary(out, format, records.len(), "groups")
}

fn extremes_report(
    records: &[GroupRecord],
    format: Format,
    out: &mut dyn Write,
) -> io::Result<()> {
    let report = extremes(records);
    match &report {
        None => match format {
            Format::Text => writeln!(out, "no non-alternating groups")?,
            Format::Tsv => writeln!(out, "max-size\t-")?,
            Format::Jsonl => writeln!(out, "{}", serde_json::json!({ "max_size": null }))?,
        },
        Some(report) => {
            let witness_names = member_names(&report.max_witnesses);
            let second_names = member_names(&report.second_witnesses);
            match format {
                Format::Text => {
                    writeln!(
                        out,
                        "largest non-alternating spectrum size: {}",
                        report.max_size
                    )?;
                    writeln!(out, "witnesses: {}", witness_names.join(", "))?;
                    for group in &report.shared_spectra {
                        writeln!(
                            out,
                            "shared spectrum [{}]: {}",
                            member_names(group).join(", "),
                            join_u64(group[0].spectrum.iter().copied()),
                        )?;
                    }
                    if let Some(second) = report.second_size {
                        writeln!(out, "second largest size: {second}")?;
                        writeln!(out, "second witnesses: {}", second_names.join(", "))?;
                    }
                }
                Format::Tsv => {
                    writeln!(out, "max-size\t{}", report.max_size)?;
                    writeln!(out, "max-witnesses\t{}", witness_names.join(","))?;
                    for group in &report.shared_spectra {
                        writeln!(
                            out,
                            "shared-spectrum\t{}\t{}",
                            member_names(group).join(","),
                            join_u64(group[0].spectrum.iter().copied()),
                        )?;
                    }
                    if let Some(second) = report.second_size {
                        writeln!(out, "second-size\t{second}")?;
                        writeln!(out, "second-witnesses\t{}", second_names.join(","))?;
                    }
                }
                Format::Jsonl => {
                    let shared: Vec<serde_json::Value> = report
                        .shared_spectra
                        .iter()
                        .map(|group| {
                            serde_json::json!({
                                "members": member_names(group),
                                "spectrum": group[0].spectrum,
                            })
                        })
                        .collect();
                    writeln!(
                        out,
                        "{}",
                        serde_json::json!({
                            "max_size": report.max_size,
                            "max_witnesses": witness_names,
                            "shared_spectra": shared,
                            "second_size": report.second_size,
                            "second_witnesses": second_names,
                        })
                    )?;
                }
            }
        }
    }
    write_summary(out, format, records.len(), "groups")
}
