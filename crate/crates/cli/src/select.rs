//! Constellation selectors and spec assembly from command-line flags.

use std::path::Path;

use golay_forge::constellations::{
    build_mpsk_chain, build_qam64_double, build_single_qamu, in_canonical_quadrant, Constellation,
    Lattice, MpskParams, QamUSlot, QuadrantPolicy,
};
use golay_forge::format::parse_complex;
use golay_forge::{Complex64, Error, Permutation, Unitary2x2, UnitaryChain};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::failure::Failure;
use crate::{GenerateArgs, Quadrant};

/// Name recorded in outputs that depend on random draws.
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha 0.3, seed_from_u64)";

#[derive(Debug, Clone)]
pub enum Selector {
    Binary,
    Mpsk(u32),
    Qam(usize, Lattice),
    Hex,
    Custom(Constellation),
}

impl Selector {
    pub fn parse(text: &str) -> Result<Self, Failure> {
        let bad = || Failure::usage(format!("unknown constellation {text:?}"));
        if let Some(path) = text.strip_prefix("custom:") {
            return Ok(Selector::Custom(read_points(Path::new(path)).and_then(|p| Ok(Constellation::custom(p)?))?));
        }
        if let Some(order) = text.strip_prefix("mpsk:") {
            let order: u32 = order.parse().map_err(|_| bad())?;
            if order < 2 {
                return Err(Failure::usage(format!("M-PSK order must be at least 2, got {order}")));
            }
            return Ok(Selector::Mpsk(order));
        }
        let (name, lattice) = match text.split_once(':') {
            Some((name, "natural")) => (name, Lattice::Natural),
            Some((name, "standard")) => (name, Lattice::Standard),
            Some(_) => return Err(bad()),
            None => (text, Lattice::Standard),
        };
        match name {
            "binary" if text == name => Ok(Selector::Binary),
            "hex" if text == name => Ok(Selector::Hex),
            "qam16" => Ok(Selector::Qam(16, lattice)),
            "qam64" => Ok(Selector::Qam(64, lattice)),
            _ => Err(bad()),
        }
    }

    pub fn constellation(&self) -> Result<Constellation, Failure> {
        Ok(match self {
            Selector::Binary => Constellation::binary(),
            Selector::Mpsk(m) => Constellation::mpsk(*m)?,
            Selector::Qam(order, lattice) => Constellation::qam(*order, *lattice)?,
            Selector::Hex => Constellation::hexagonal(),
            Selector::Custom(c) => c.clone(),
        })
    }

    /// Order of the unimodular phases at the non-QAM-U positions.
    pub fn phase_order(&self) -> u32 {
        match self {
            Selector::Binary => 2,
            Selector::Mpsk(m) => *m,
            Selector::Hex => 6,
            Selector::Qam(..) | Selector::Custom(_) => 4,
        }
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self, Selector::Binary | Selector::Mpsk(_))
    }
}

/// Reads a JSON list of `[re, im]` points.
pub fn read_points(path: &Path) -> Result<Vec<Complex64>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let pairs: Vec<[f64; 2]> = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: expected a JSON list of [re, im] points: {e}", path.display())))?;
    Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
}

pub fn parse_perm(text: &str, bits: u32) -> Result<Permutation, Failure> {
    let perm = if text == "identity" {
        Permutation::identity(bits)
    } else {
        text.parse::<Permutation>()?
    };
    if perm.len() != bits as usize {
        return Err(Failure::usage(format!(
            "--perm has {} entries but --n is {bits}",
            perm.len()
        )));
    }
    Ok(perm)
}

fn parse_values(flag: &str, values: &[String]) -> Result<Vec<Complex64>, Failure> {
    values
        .iter()
        .map(|v| parse_complex(v).map_err(|e| Failure::usage(format!("--{flag}: {e}"))))
        .collect()
}

fn policy(q: Quadrant) -> QuadrantPolicy {
    match q {
        Quadrant::Ignore => QuadrantPolicy::Ignore,
        Quadrant::Warn => QuadrantPolicy::Warn,
        Quadrant::Error => QuadrantPolicy::Error,
    }
}

/// How many random QAM-U draws to try before giving up.
const RANDOM_ATTEMPTS: usize = 10_000;

/// Builds the chain described by the generate flags. Random draws, when
/// requested, fill in whatever the flags leave open.
pub fn chain_from_args(args: &GenerateArgs, rng: &mut ChaCha8Rng) -> Result<UnitaryChain, Failure> {
    let bits = args.n.ok_or_else(|| Failure::usage("--n is required unless --spec is given"))?;
    let perm = match &args.perm {
        Some(text) => parse_perm(text, bits)?,
        None if args.random => {
            let mut map: Vec<u32> = (1..=bits).collect();
            map.shuffle(rng);
            Permutation::new(map)?
        }
        None if bits <= 1 => Permutation::identity(bits),
        None => {
            return Err(Failure::usage(
                "--perm is required when --n > 1 (pass --perm identity for the identity)",
            ))
        }
    };
    let explicit = args.qam_pos.is_none() && !args.c_values.is_empty();
    let selector = match &args.constellation {
        Some(text) => Selector::parse(text)?,
        None if explicit => {
            return explicit_chain(args, perm, None);
        }
        None => Selector::Binary,
    };
    if explicit {
        return explicit_chain(args, perm, Some(&selector));
    }
    let order = selector.phase_order();
    let phases = match &args.m {
        Some(m) => {
            if m.len() != bits as usize + 1 {
                return Err(Failure::usage(format!("--m needs N+1 = {} values, got {}", bits + 1, m.len())));
            }
            if let Some(bad) = m.iter().find(|&&x| x >= order) {
                return Err(Failure::usage(format!("--m value {bad} is outside 0..{order}")));
            }
            m.clone()
        }
        None if args.random => (0..=bits).map(|_| rng.gen_range(0..order)).collect(),
        None => vec![0; bits as usize + 1],
    };
    if selector.is_unimodular() {
        if args.qam_pos.is_some() {
            return Err(Failure::usage("--qam-pos needs a QAM, hex or custom constellation"));
        }
        return Ok(build_mpsk_chain(&MpskParams::new(order, phases, perm)?));
    }

    let constellation = selector.constellation()?;
    let max_slots = match selector {
        Selector::Qam(64, _) | Selector::Custom(_) => 2,
        _ => 1,
    };
    let given_c = parse_values("c", &args.c_values)?;
    let given_s = parse_values("s", &args.s_values)?;
    if !args.random || args.qam_pos.is_some() || !given_c.is_empty() {
        let positions = args
            .qam_pos
            .clone()
            .ok_or_else(|| Failure::usage("--qam-pos is required for QAM, hex and custom constellations"))?;
        if positions.is_empty() || positions.len() > max_slots {
            return Err(Failure::usage(format!(
                "{constellation} takes 1 to {max_slots} QAM-U positions, got {}",
                positions.len()
            )));
        }
        if given_c.len() != positions.len() || given_s.len() != positions.len() {
            return Err(Failure::usage(format!(
                "give one --c and one --s per QAM-U position ({} positions)",
                positions.len()
            )));
        }
        for z in given_c.iter().chain(&given_s) {
            if !constellation.contains(*z) {
                return Err(Error::OffConstellation {
                    value: *z,
                    constellation: constellation.to_string(),
                }
                .into());
            }
        }
        let slots: Vec<QamUSlot> = positions
            .iter()
            .zip(given_c.iter().zip(&given_s))
            .map(|(&p, (&c, &s))| QamUSlot::new(p, c, s))
            .collect();
        return build_slots(&slots, &phases, perm, &constellation, order, policy(args.quadrant));
    }

    // Random QAM-U draw: positions, C from the first quadrant, S anywhere.
    let points = constellation.points();
    let c_points: Vec<Complex64> = points.iter().copied().filter(|&z| in_canonical_quadrant(z)).collect();
    let c_points = if c_points.is_empty() { points.to_vec() } else { c_points };
    for _ in 0..RANDOM_ATTEMPTS {
        let mut positions: Vec<usize> = (0..=bits as usize).collect();
        positions.shuffle(rng);
        positions.truncate(max_slots.min(positions.len()));
        let slots: Vec<QamUSlot> = positions
            .iter()
            .map(|&p| QamUSlot::new(p, *c_points.choose(rng).unwrap(), *points.choose(rng).unwrap()))
            .collect();
        match build_slots(&slots, &phases, perm.clone(), &constellation, order, QuadrantPolicy::Ignore) {
            Err(f) if f.code == crate::failure::VIOLATION => continue,
            other => return other,
        }
    }
    Err(Failure {
        code: crate::failure::VIOLATION,
        message: format!("no admissible random {constellation} spec in {RANDOM_ATTEMPTS} draws"),
    })
}

fn build_slots(
    slots: &[QamUSlot],
    phases: &[u32],
    perm: Permutation,
    constellation: &Constellation,
    order: u32,
    policy: QuadrantPolicy,
) -> Result<UnitaryChain, Failure> {
    if slots.len() == 1 {
        let build = build_single_qamu(order, slots[0], phases, perm, constellation, policy)?;
        for warning in &build.warnings {
            eprintln!("golay-forge: warning: {warning:?}");
        }
        Ok(build.chain)
    } else {
        Ok(build_qam64_double(slots, phases, perm, constellation)?)
    }
}

/// `--c`/`--s` given N+1 times: the matrices are used as they are.
fn explicit_chain(
    args: &GenerateArgs,
    perm: Permutation,
    selector: Option<&Selector>,
) -> Result<UnitaryChain, Failure> {
    let cs = parse_values("c", &args.c_values)?;
    let ss = parse_values("s", &args.s_values)?;
    let needed = perm.len() + 1;
    if cs.len() != needed || ss.len() != needed {
        return Err(Failure::usage(format!(
            "explicit matrices need N+1 = {needed} --c and --s values, got {} and {}",
            cs.len(),
            ss.len()
        )));
    }
    let matrices = cs
        .into_iter()
        .zip(ss)
        .map(|(c, s)| Unitary2x2::new(c, s))
        .collect::<Result<Vec<_>, _>>()?;
    let chain = UnitaryChain::new(perm, matrices)?;
    if let Some(selector) = selector {
        golay_forge::constellations::validate_chain(&chain, &selector.constellation()?)?;
    }
    Ok(chain)
}
