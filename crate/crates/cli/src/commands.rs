use std::fs;
use std::path::Path;

use golay_forge::analysis::is_complementary;
use golay_forge::bench::{time_generation, BenchReport};
use golay_forge::constellations::{build_mpsk_spec, MpskParams};
use golay_forge::format::{
    sequence_from_str, sequence_to_csv, sequence_to_json, sequence_to_text, sequences_to_json,
    spec_from_json, spec_to_json, REPORT_FORMAT,
};
use golay_forge::generator::generate_matrix;
use golay_forge::search::{
    census_pairs, enumerate_generator, search_qam_matrices, EnumerationOptions, Family, Grid,
    PermutationSet, SearchOptions,
};
use golay_forge::{Complex64, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::failure::{Failure, NEGATIVE};
use crate::select::{chain_from_args, parse_perm, read_points, Selector, RNG_NAME};
use crate::{BenchArgs, CensusArgs, EnumerateArgs, Format, GenerateArgs, SearchArgs, VerifyArgs};

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

fn rng_metadata(seed: u64) -> Value {
    json!({ "rng": RNG_NAME, "seed": seed })
}

/// Adds `generated_by` to a JSON document when random draws were used.
fn with_metadata(text: String, random: Option<u64>) -> String {
    let Some(seed) = random else {
        return text;
    };
    let mut value: Value = serde_json::from_str(&text).expect("own output is JSON");
    value["generated_by"] = rng_metadata(seed);
    let mut out = serde_json::to_string_pretty(&value).expect("JSON value serializes");
    out.push('\n');
    out
}

pub fn generate(args: &GenerateArgs) -> Result<u8, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (chain, r, s) = match &args.spec {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let spec = spec_from_json(&text)?;
            let (r, s) = (spec.r(), spec.s());
            (spec.into_chain(), r, s)
        }
        None => (chain_from_args(args, &mut rng)?, args.r, args.s_sel),
    };
    let spec = chain.clone().with_selectors(r, s)?;
    let random = args.random.then_some(args.seed);

    if args.emit_spec {
        let text = with_metadata(spec_to_json(&spec) + "\n", random);
        write_or_print(args.out.as_deref(), &text)?;
        return Ok(0);
    }

    let matrix = generate_matrix(&chain);
    let named: Vec<(&str, &[Complex64])> = if args.matrix {
        vec![
            ("m00", matrix.get(0, 0)),
            ("m01", matrix.get(0, 1)),
            ("m10", matrix.get(1, 0)),
            ("m11", matrix.get(1, 1)),
        ]
    } else if args.pair {
        vec![("a", matrix.get(r, 0)), ("b", matrix.get(r, 1))]
    } else {
        vec![("sequence", matrix.get(r, s))]
    };
    let render = |seq: &[Complex64]| match args.format {
        Format::Json => with_metadata(sequence_to_json(seq) + "\n", random),
        Format::Csv => sequence_to_csv(seq),
        Format::Text => sequence_to_text(seq),
    };

    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir)?;
        let ext = match args.format {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        };
        for (name, seq) in &named {
            write_or_print(Some(&dir.join(format!("{name}.{ext}"))), &render(seq))?;
        }
        return Ok(0);
    }
    if named.len() == 1 {
        write_or_print(args.out.as_deref(), &render(named[0].1))?;
        return Ok(0);
    }
    let text = match args.format {
        Format::Json => with_metadata(sequences_to_json(&named) + "\n", random),
        Format::Text => named
            .iter()
            .map(|(name, seq)| format!("# {name}\n{}", sequence_to_text(seq)))
            .collect(),
        Format::Csv => {
            return Err(Failure::usage(
                "CSV holds one sequence per file; use --out-dir with --pair or --matrix",
            ))
        }
    };
    write_or_print(args.out.as_deref(), &text)?;
    Ok(0)
}

fn read_sequence(path: &Path) -> Result<golay_forge::Sequence, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    sequence_from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let a = read_sequence(&args.a)?;
    let b = read_sequence(&args.b)?;
    let verdict = is_complementary(&a, &b, args.tol)?;
    print!("{}", to_json(&verdict));
    Ok(if verdict.complementary { 0 } else { NEGATIVE })
}

fn perm_set(text: &str, bits: u32) -> Result<PermutationSet, Failure> {
    Ok(match text {
        "all" => PermutationSet::All,
        "identity" => PermutationSet::Identity,
        list => PermutationSet::Explicit(
            list.split(';')
                .map(|p| parse_perm(p.trim(), bits))
                .collect::<Result<_, _>>()?,
        ),
    })
}

#[derive(Serialize)]
struct EnumerateReport {
    format: &'static str,
    n: u32,
    constellation: String,
    grid_size: u128,
    chains: u64,
    rejected: u64,
    total_outputs: u64,
    distinct_sequences: usize,
    max_multiplicity: u64,
    ordered_pairs: usize,
    unordered_pairs: usize,
    unsound_lines: Option<u64>,
}

pub fn enumerate(args: &EnumerateArgs) -> Result<u8, Failure> {
    let selector = Selector::parse(&args.constellation)?;
    let perms = perm_set(&args.perms, args.n)?;
    let family = if selector.is_unimodular() {
        if args.qam_pos.is_some() {
            return Err(Failure::usage("--qam-pos needs a QAM, hex or custom constellation"));
        }
        Family::Mpsk {
            order: selector.phase_order(),
        }
    } else {
        let constellation = selector.constellation()?;
        Family::SingleQamU {
            unimodular_order: selector.phase_order(),
            positions: args
                .qam_pos
                .clone()
                .ok_or_else(|| Failure::usage("--qam-pos is required for QAM, hex and custom grids"))?,
            candidates: constellation.points().to_vec(),
            canonical_quadrant: args.canonical_quadrant,
            constellation: Some(constellation),
        }
    };
    let grid = Grid {
        bits: args.n,
        family,
        perms,
    };
    let e = enumerate_generator(
        &grid,
        EnumerationOptions {
            cap: args.cap,
            verify: args.verify,
        },
    )?;
    if let Some(path) = &args.sequences_csv {
        let mut out = String::new();
        for record in e.sequences.values() {
            out.push_str(&record.multiplicity.to_string());
            for z in &record.elements {
                out.push_str(&format!(",{},{}", z.re, z.im));
            }
            out.push('\n');
        }
        write_or_print(Some(path), &out)?;
    }
    let report = EnumerateReport {
        format: REPORT_FORMAT,
        n: args.n,
        constellation: selector.constellation()?.to_string(),
        grid_size: grid.size(),
        chains: e.chains,
        rejected: e.rejected,
        total_outputs: e.total_outputs(),
        distinct_sequences: e.sequences.len(),
        max_multiplicity: e.sequences.values().map(|r| r.multiplicity).max().unwrap_or(0),
        ordered_pairs: e.ordered_pairs.len(),
        unordered_pairs: e.unordered_pairs.len(),
        unsound_lines: args.verify.then_some(e.unsound_lines),
    };
    print!("{}", to_json(&report));
    Ok(0)
}

pub fn census(args: &CensusArgs) -> Result<u8, Failure> {
    let selector = Selector::parse(&args.alphabet)?;
    let alphabet = selector.constellation()?.points().to_vec();
    let census = census_pairs(&alphabet, args.len, args.cap)?;
    let generated = if args.compare {
        if !selector.is_unimodular() {
            return Err(Failure::usage("--compare supports binary and M-PSK alphabets"));
        }
        if !args.len.is_power_of_two() {
            return Err(Failure::usage("--compare needs a power-of-two length"));
        }
        let grid = Grid::mpsk(args.len.trailing_zeros(), selector.phase_order(), PermutationSet::All);
        Some(enumerate_generator(&grid, EnumerationOptions::default())?)
    } else {
        None
    };
    print!("{}", to_json(&census.report(generated.as_ref())));
    Ok(0)
}

pub fn search(args: &SearchArgs) -> Result<u8, Failure> {
    let constellation = Selector::parse(&args.constellation)?.constellation()?;
    let mut candidates = match &args.candidates {
        Some(path) => read_points(path)?,
        None => constellation.points().to_vec(),
    };
    if let Some(limit) = args.max_norm {
        candidates.retain(|z| z.norm_sqr() <= limit + 1e-9);
    }
    let report = search_qam_matrices(
        &constellation,
        Some(&candidates),
        args.n,
        &args.qam_pos,
        SearchOptions {
            canonical_quadrant: args.canonical_quadrant,
            cap: args.cap,
        },
    )?;
    print!("{}", to_json(&report));
    Ok(0)
}

#[derive(Serialize)]
struct BenchOutput {
    format: &'static str,
    generated_by: Value,
    order: u32,
    perm: Permutation,
    phases: Vec<u32>,
    /// Sum of all generated elements, for comparing runs.
    checksum: [f64; 2],
    #[serde(flatten)]
    report: BenchReport,
}

pub fn bench(args: &BenchArgs) -> Result<u8, Failure> {
    if !(6..=20).contains(&args.n) {
        return Err(Failure::usage(format!("--n must be between 6 and 20, got {}", args.n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut map: Vec<u32> = (1..=args.n).collect();
    map.shuffle(&mut rng);
    let perm = Permutation::new(map)?;
    let phases: Vec<u32> = (0..=args.n).map(|_| rng.gen_range(0..args.order.max(1))).collect();
    let params = MpskParams::new(args.order, phases.clone(), perm.clone())?;
    let spec = build_mpsk_spec(&params, 0, 0)?;
    let (report, seq) = time_generation(&spec, args.reps)?;
    let sum: Complex64 = seq.iter().sum();
    let out = BenchOutput {
        format: REPORT_FORMAT,
        generated_by: rng_metadata(args.seed),
        order: args.order,
        perm,
        phases,
        checksum: [sum.re, sum.im],
        report,
    };
    print!("{}", to_json(&out));
    Ok(0)
}
