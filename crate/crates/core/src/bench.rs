//! Wall-clock timing of the index form.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::generator::generate_index_form;
use crate::sequence::Sequence;
use crate::unitary::GeneratorSpec;

pub const MIN_REPETITIONS: usize = 100;

/// Timing summary in nanoseconds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub median_ns: f64,
    pub p95_ns: f64,
    pub min_ns: f64,
    pub max_ns: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub n: u32,
    pub length: usize,
    pub repetitions: usize,
    pub per_sequence: Timing,
    pub per_symbol: Timing,
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn summarize(mut samples: Vec<f64>) -> Timing {
    samples.sort_by(f64::total_cmp);
    Timing {
        median_ns: quantile(&samples, 0.5),
        p95_ns: quantile(&samples, 0.95),
        min_ns: samples[0],
        max_ns: samples[samples.len() - 1],
    }
}

/// Times `repetitions` runs of [`generate_index_form`] after one warm-up run.
/// Also returns the generated sequence.
pub fn time_generation(spec: &GeneratorSpec, repetitions: usize) -> Result<(BenchReport, Sequence)> {
    if repetitions < MIN_REPETITIONS {
        return Err(invalid(format!(
            "at least {MIN_REPETITIONS} repetitions are needed, got {repetitions}"
        )));
    }
    let mut last = generate_index_form(spec);
    let mut per_sequence = Vec::with_capacity(repetitions);
    for _ in 0..repetitions {
        let start = Instant::now();
        last = std::hint::black_box(generate_index_form(std::hint::black_box(spec)));
        per_sequence.push(as_ns(start.elapsed()));
    }
    let len = spec.len() as f64;
    let per_symbol = per_sequence.iter().map(|t| t / len).collect();
    let report = BenchReport {
        n: spec.bits(),
        length: spec.len(),
        repetitions,
        per_sequence: summarize(per_sequence),
        per_symbol: summarize(per_symbol),
    };
    Ok((report, last))
}

fn as_ns(d: Duration) -> f64 {
    d.as_secs_f64() * 1e9
}
