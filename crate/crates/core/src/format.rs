//! Versioned file formats.
//!
//! * Spec, `golay-spec/1`:
//!   `{"format": "golay-spec/1", "n": N, "perm": [..], "matrices": [{"c": [re, im], "s": [re, im]}, ..], "r": 0|1, "s": 0|1}`
//! * Sequence, `golay-seq/1`: `{"format": "golay-seq/1", "elements": [[re, im], ..]}`.
//!   A bare JSON array of `[re, im]` pairs is accepted on input.
//! * Sequence CSV: one `re,im` line per element. Blank lines and lines
//!   starting with `#` are ignored on input.
//!
//! Floats are written with Rust's shortest round-trip representation, so CSV
//! and JSON carry the full double value.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::boolean::Permutation;
use crate::error::{Error, Result};
use crate::sequence::Sequence;
use crate::unitary::{GeneratorSpec, Unitary2x2, UnitaryChain};

pub const SPEC_FORMAT: &str = "golay-spec/1";
pub const SEQUENCE_FORMAT: &str = "golay-seq/1";
pub const REPORT_FORMAT: &str = "golay-report/1";

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn check_format(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Parse(format!(
            "expected format {expected:?}, found {found:?}"
        )));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct SpecFile {
    format: String,
    n: u32,
    perm: Permutation,
    matrices: Vec<Unitary2x2>,
    r: u8,
    s: u8,
}

pub fn spec_to_json(spec: &GeneratorSpec) -> String {
    let file = SpecFile {
        format: SPEC_FORMAT.into(),
        n: spec.bits(),
        perm: spec.perm().clone(),
        matrices: spec.matrices().to_vec(),
        r: spec.r(),
        s: spec.s(),
    };
    serde_json::to_string_pretty(&file).expect("spec serializes")
}

pub fn spec_from_json(text: &str) -> Result<GeneratorSpec> {
    let file: SpecFile = serde_json::from_str(text).map_err(parse_err)?;
    check_format(&file.format, SPEC_FORMAT)?;
    if file.perm.len() != file.n as usize {
        return Err(Error::InvalidSpec(format!(
            "n = {} but perm has {} entries",
            file.n,
            file.perm.len()
        )));
    }
    UnitaryChain::new(file.perm, file.matrices)?.with_selectors(file.r, file.s)
}

/// `-0.0 + 0.0` is `+0.0`; keeps `-0` out of written files.
fn unsigned_zero(x: f64) -> f64 {
    x + 0.0
}

fn pairs(seq: &[Complex64]) -> Vec<[f64; 2]> {
    seq.iter().map(|z| [unsigned_zero(z.re), unsigned_zero(z.im)]).collect()
}

fn from_pairs(pairs: Vec<[f64; 2]>) -> Result<Sequence> {
    Sequence::new(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
}

#[derive(Serialize, Deserialize)]
struct SequenceFile {
    format: String,
    elements: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct SequenceSetFile<'a> {
    format: &'a str,
    sequences: BTreeMap<&'a str, Vec<[f64; 2]>>,
}

pub fn sequence_to_json(seq: &[Complex64]) -> String {
    serde_json::to_string(&SequenceFile {
        format: SEQUENCE_FORMAT.into(),
        elements: pairs(seq),
    })
    .expect("sequence serializes")
}

/// Several named sequences in one document, e.g. `a` and `b` of a pair.
pub fn sequences_to_json(named: &[(&str, &[Complex64])]) -> String {
    let sequences = named.iter().map(|(name, seq)| (*name, pairs(seq))).collect();
    serde_json::to_string(&SequenceSetFile {
        format: SEQUENCE_FORMAT,
        sequences,
    })
    .expect("sequences serialize")
}

pub fn sequence_from_json(text: &str) -> Result<Sequence> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
    match value {
        serde_json::Value::Array(_) => {
            let pairs: Vec<[f64; 2]> = serde_json::from_value(value).map_err(parse_err)?;
            from_pairs(pairs)
        }
        _ => {
            let file: SequenceFile = serde_json::from_value(value).map_err(parse_err)?;
            check_format(&file.format, SEQUENCE_FORMAT)?;
            from_pairs(file.elements)
        }
    }
}

pub fn sequence_to_csv(seq: &[Complex64]) -> String {
    let mut out = String::with_capacity(seq.len() * 8);
    for z in seq {
        writeln!(out, "{},{}", unsigned_zero(z.re), unsigned_zero(z.im)).expect("writing to a String cannot fail");
    }
    out
}

pub fn sequence_from_csv(text: &str) -> Result<Sequence> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut elements = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(parse_err)?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != 2 {
            return Err(Error::Parse(format!(
                "record {} has {} fields, expected 2",
                line + 1,
                record.len()
            )));
        }
        let field = |i: usize| -> Result<f64> {
            record[i].parse::<f64>().map_err(|_| {
                Error::Parse(format!("record {}: cannot parse {:?}", line + 1, &record[i]))
            })
        };
        elements.push(Complex64::new(field(0)?, field(1)?));
    }
    Sequence::new(elements)
}

/// Reads either format, choosing JSON when the text starts with `{` or `[`.
pub fn sequence_from_str(text: &str) -> Result<Sequence> {
    match text.trim_start().chars().next() {
        Some('{') | Some('[') => sequence_from_json(text),
        _ => sequence_from_csv(text),
    }
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `i`, `-i`, with optional exponents.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot parse complex number {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not at the start and not part of an
    // exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

fn significant(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// `a+bi` with 12 significant digits per component.
pub fn format_complex_text(z: Complex64) -> String {
    let re = significant(unsigned_zero(z.re), 12);
    let im = significant(unsigned_zero(z.im), 12);
    if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

pub fn sequence_to_text(seq: &[Complex64]) -> String {
    let mut out = String::new();
    for z in seq {
        out.push_str(&format_complex_text(*z));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spec_json_layout() {
        let chain = UnitaryChain::new(
            "2,1".parse().unwrap(),
            vec![
                Unitary2x2::ones(),
                Unitary2x2::new(c(1.0, 1.0), c(3.0, -1.0)).unwrap(),
                Unitary2x2::ones(),
            ],
        )
        .unwrap();
        let spec = chain.with_selectors(1, 0).unwrap();
        let json = spec_to_json(&spec);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["format"], "golay-spec/1");
        assert_eq!(value["n"], 2);
        assert_eq!(value["perm"], serde_json::json!([2, 1]));
        assert_eq!(value["matrices"][1], serde_json::json!({"c": [1.0, 1.0], "s": [3.0, -1.0]}));
        assert_eq!(value["r"], 1);
        assert_eq!(value["s"], 0);
        assert_eq!(spec_from_json(&json).unwrap(), spec);
    }

    #[test]
    fn spec_json_rejects_inconsistent_input() {
        let bad_format = r#"{"format":"golay-spec/2","n":0,"perm":[],"matrices":[{"c":[1,0],"s":[1,0]}],"r":0,"s":0}"#;
        assert!(matches!(spec_from_json(bad_format), Err(Error::Parse(_))));
        let bad_n = r#"{"format":"golay-spec/1","n":1,"perm":[],"matrices":[{"c":[1,0],"s":[1,0]}],"r":0,"s":0}"#;
        assert!(matches!(spec_from_json(bad_n), Err(Error::InvalidSpec(_))));
        let bad_perm = r#"{"format":"golay-spec/1","n":2,"perm":[1,1],"matrices":[],"r":0,"s":0}"#;
        assert!(spec_from_json(bad_perm).is_err());
    }

    #[test]
    fn sequence_formats() {
        let seq = Sequence::new(vec![c(1.0, 0.0), c(-0.5, 0.25)]).unwrap();
        let csv = sequence_to_csv(&seq);
        assert_eq!(csv, "1,0\n-0.5,0.25\n");
        assert_eq!(sequence_from_str(&csv).unwrap(), seq);
        let json = sequence_to_json(&seq);
        assert_eq!(json, r#"{"format":"golay-seq/1","elements":[[1.0,0.0],[-0.5,0.25]]}"#);
        assert_eq!(sequence_from_str(&json).unwrap(), seq);
        assert_eq!(sequence_from_str("[[1,0],[-0.5,0.25]]").unwrap(), seq);
        assert_eq!(sequence_from_str("# a\n1,0\n\n-0.5, 0.25\n").unwrap(), seq);
    }

    #[test]
    fn truncated_csv_is_an_error() {
        assert!(sequence_from_csv("1,0\n1,").is_err());
        assert!(sequence_from_csv("1,0\n1,0\n1,0\n").is_err());
        assert!(sequence_from_csv("1\n").is_err());
        assert!(sequence_from_csv("").is_err());
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("3+1i").unwrap(), c(3.0, 1.0));
        assert_eq!(parse_complex("1-2i").unwrap(), c(1.0, -2.0));
        assert_eq!(parse_complex("-2").unwrap(), c(-2.0, 0.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("2.5i").unwrap(), c(0.0, 2.5));
        assert_eq!(parse_complex("1e-3-2e+1i").unwrap(), c(1e-3, -20.0));
        assert_eq!(parse_complex(" 1 + i ").unwrap(), c(1.0, 1.0));
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn text_format() {
        assert_eq!(format_complex_text(c(1.0, -1.0)), "1-1i");
        assert_eq!(format_complex_text(c(0.0, 0.0)), "0+0i");
        assert_eq!(format_complex_text(c(2.0_f64.sqrt(), 0.5)), "1.41421356237+0.5i");
        assert_eq!(format_complex_text(c(-1234.5, 1e-20)), "-1234.5+0.00000000000000000001i");
    }

    proptest! {
        #[test]
        fn csv_and_json_round_trip(values in proptest::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 8)) {
            let seq = Sequence::new(values.iter().map(|&(a, b)| c(a, b)).collect()).unwrap();
            prop_assert_eq!(&sequence_from_str(&sequence_to_csv(&seq)).unwrap(), &seq);
            prop_assert_eq!(&sequence_from_str(&sequence_to_json(&seq)).unwrap(), &seq);
        }
    }
}
