use std::collections::BTreeMap;
use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Space-separated, one record per line.
    Text,
    Csv,
    /// Newline-delimited JSON.
    Json,
}

/// One row of tabular output. `value` is an integer or an exact fraction.
#[derive(Clone, Debug, Serialize)]
pub struct OutputRecord {
    pub family: String,
    #[serde(rename = "N")]
    pub n: u64,
    pub k: u32,
    #[serde(serialize_with = "integer_or_string")]
    pub value: String,
    #[serde(flatten, skip_serializing_if = "BTreeMap::is_empty")]
    pub extras: BTreeMap<String, String>,
}

/// Integers go out as JSON numbers, fractions as strings.
fn integer_or_string<S: serde::Serializer>(v: &str, s: S) -> Result<S::Ok, S::Error> {
    match v.parse::<u64>() {
        Ok(n) => s.serialize_u64(n),
        Err(_) => s.serialize_str(v),
    }
}

impl OutputRecord {
    pub fn new(family: impl Into<String>, n: u64, k: u32, value: impl ToString) -> Self {
        OutputRecord { family: family.into(), n, k, value: value.to_string(), extras: BTreeMap::new() }
    }
}

/// Write records in `format`. Extra columns follow the four fixed ones,
/// in key order, taken from the first record.
pub fn write_records(out: &mut dyn Write, format: Format, records: &[OutputRecord]) -> std::io::Result<()> {
    let extra_keys: Vec<String> = records.first().map(|r| r.extras.keys().cloned().collect()).unwrap_or_default();
    match format {
        Format::Text => {
            for r in records {
                write!(out, "{} {} {} {}", r.family, r.n, r.k, r.value)?;
                for k in &extra_keys {
                    write!(out, " {}", r.extras.get(k).map(String::as_str).unwrap_or(""))?;
                }
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["family".to_string(), "N".into(), "k".into(), "value".into()];
            header.extend(extra_keys.iter().cloned());
            w.write_record(&header)?;
            for r in records {
                let mut row = vec![r.family.clone(), r.n.to_string(), r.k.to_string(), r.value.clone()];
                row.extend(extra_keys.iter().map(|k| r.extras.get(k).cloned().unwrap_or_default()));
                w.write_record(&row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_agree() {
        let mut r = OutputRecord::new("rho0", 22, 2, "0");
        r.extras.insert("g".into(), "2".into());
        let recs = vec![r, OutputRecord::new("g0", 11, 2, 1)];
        let mut csv = Vec::new();
        write_records(&mut csv, Format::Csv, &recs).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap(), "family,N,k,value,g\nrho0,22,2,0,2\ng0,11,2,1,\n");
        let mut json = Vec::new();
        write_records(&mut json, Format::Json, &recs[1..]).unwrap();
        assert_eq!(String::from_utf8(json).unwrap(), "{\"family\":\"g0\",\"N\":11,\"k\":2,\"value\":1}\n");
    }
}
