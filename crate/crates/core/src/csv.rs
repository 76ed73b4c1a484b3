//! Sweep records as CSV.
//!
//! Fixed column set, `.` decimal separator, LF newlines, UTF-8. Floats are
//! written with the shortest round-tripping representation, so
//! parse(emit(records)) reproduces the records exactly.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::sweep::SweepRecord;

pub const CSV_HEADER: &str =
    "network_kind,n,mean_degree,delta,alpha,realization,rng_seed,G,failed_fraction,rounds";

/// Renders records, header first, one line per record, trailing newline.
pub fn emit_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.network_kind,
            r.n,
            r.mean_degree,
            r.delta,
            r.alpha,
            r.realization,
            r.rng_seed,
            r.giant_fraction,
            r.failed_fraction,
            r.rounds
        ));
    }
    out
}

pub fn write_csv(records: &[SweepRecord], path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, emit_csv(records))?;
    Ok(())
}

/// Parses text produced by [`emit_csv`]. Errors carry 1-based line numbers.
pub fn parse_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(Error::CsvParse {
                line: 1,
                reason: format!("unexpected header `{header}`"),
            })
        }
        None => {
            return Err(Error::CsvParse {
                line: 1,
                reason: "empty input".into(),
            })
        }
    }

    let mut records = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(Error::CsvParse {
                line: line_no,
                reason: format!("expected 10 fields, got {}", fields.len()),
            });
        }
        let field_err = |what: &str, value: &str| Error::CsvParse {
            line: line_no,
            reason: format!("bad {what} `{value}`"),
        };
        records.push(SweepRecord {
            network_kind: fields[0].to_string(),
            n: fields[1].parse().map_err(|_| field_err("n", fields[1]))?,
            mean_degree: fields[2]
                .parse()
                .map_err(|_| field_err("mean_degree", fields[2]))?,
            delta: fields[3]
                .parse()
                .map_err(|_| field_err("delta", fields[3]))?,
            alpha: fields[4]
                .parse()
                .map_err(|_| field_err("alpha", fields[4]))?,
            realization: fields[5]
                .parse()
                .map_err(|_| field_err("realization", fields[5]))?,
            rng_seed: fields[6]
                .parse()
                .map_err(|_| field_err("rng_seed", fields[6]))?,
            giant_fraction: fields[7].parse().map_err(|_| field_err("G", fields[7]))?,
            failed_fraction: fields[8]
                .parse()
                .map_err(|_| field_err("failed_fraction", fields[8]))?,
            rounds: fields[9]
                .parse()
                .map_err(|_| field_err("rounds", fields[9]))?,
        });
    }
    Ok(records)
}

/// Reads and parses a CSV file written by [`write_csv`].
pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<SweepRecord>> {
    parse_csv(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_records() -> Vec<SweepRecord> {
        (0..6)
            .map(|i| SweepRecord {
                network_kind: "er".into(),
                n: 5000,
                mean_degree: 10.0,
                delta: 0.01,
                alpha: 0.01 + 0.01 * i as f64,
                realization: i % 2,
                rng_seed: 0xDEAD_BEEF ^ i as u64,
                giant_fraction: i as f64 / 7.0,
                failed_fraction: 1.0 - i as f64 / 7.0,
                rounds: 3 * i,
            })
            .collect()
    }

    #[test]
    fn empty_input_is_header_only() {
        let text = emit_csv(&[]);
        assert_eq!(text, format!("{CSV_HEADER}\n"));
        assert_eq!(parse_csv(&text).unwrap(), vec![]);
    }

    #[test]
    fn six_records_make_seven_lines() {
        let text = emit_csv(&sample_records());
        assert_eq!(text.lines().count(), 7);
        assert!(text.ends_with('\n'));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn round_trip_identity() {
        let records = sample_records();
        let parsed = parse_csv(&emit_csv(&records)).unwrap();
        assert_eq!(parsed, records);
    }

    #[test]
    fn bad_header_rejected() {
        let err = parse_csv("a,b,c\n").unwrap_err();
        assert!(err.to_string().contains("unexpected header"), "{err}");
    }

    #[test]
    fn bad_field_reports_line() {
        let text = format!("{CSV_HEADER}\ner,10,4,0.01,0.05,0,1,xyz,0.5,2\n");
        let err = parse_csv(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("bad G"), "{msg}");
    }

    #[test]
    fn wrong_arity_reports_line() {
        let text = format!("{CSV_HEADER}\ner,10,4\n");
        let err = parse_csv(&text).unwrap_err();
        assert!(err.to_string().contains("expected 10 fields"), "{err}");
    }
}
