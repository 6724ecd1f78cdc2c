use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Default membership tolerance.
pub const DEFAULT_MEMBERSHIP_TOLERANCE: f64 = 1e-9;

/// Which lattice a square QAM constellation lives on.
///
/// The standard lattice uses odd coordinates, `{±1, ±3, ..}²`. It is not
/// closed under multiplication: `(1+i)(1+i) = 2i`. The natural lattice is the
/// standard one multiplied by `(1-i)/2`, i.e. Gaussian integers `p + qi` with
/// `p + q` odd, which is closed under multiplication. 16-QAM on it is
/// `{1, 2+i, 2-i, 3}` times the four units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lattice {
    Standard,
    Natural,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstellationKind {
    Binary,
    Mpsk(u32),
    Qam { order: usize, lattice: Lattice },
    Hexagonal(usize),
    Custom,
}

/// A finite point set with a tolerance-based membership test.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    kind: ConstellationKind,
    points: Vec<Complex64>,
    tolerance: f64,
}

/// `e^{2πi·m/order}`, exact whenever the angle is a multiple of a quarter
/// turn.
pub fn root_of_unity(m: u32, order: u32) -> Complex64 {
    assert!(order > 0, "root of unity of order zero");
    let m = m % order;
    if (4 * m as u64) % order as u64 == 0 {
        return match (4 * m as u64 / order as u64) % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    Complex64::from_polar(1.0, 2.0 * PI * m as f64 / order as f64)
}

impl Constellation {
    /// Arbitrary finite point set.
    pub fn custom(points: Vec<Complex64>) -> Result<Self> {
        Self::from_parts(ConstellationKind::Custom, points)
    }

    fn from_parts(kind: ConstellationKind, points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(invalid("a constellation needs at least one point"));
        }
        if let Some(z) = points.iter().find(|z| !z.is_finite()) {
            return Err(invalid(format!("constellation point {z} is not finite")));
        }
        Ok(Self {
            kind,
            points,
            tolerance: DEFAULT_MEMBERSHIP_TOLERANCE,
        })
    }

    pub fn binary() -> Self {
        Self {
            kind: ConstellationKind::Binary,
            points: vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
            tolerance: DEFAULT_MEMBERSHIP_TOLERANCE,
        }
    }

    pub fn mpsk(order: u32) -> Result<Self> {
        if order < 2 {
            return Err(invalid(format!("M-PSK order must be at least 2, got {order}")));
        }
        let points = (0..order).map(|m| root_of_unity(m, order)).collect();
        Self::from_parts(ConstellationKind::Mpsk(order), points)
    }

    /// Square QAM of the given order (4, 16, 64, 256, ...).
    pub fn qam(order: usize, lattice: Lattice) -> Result<Self> {
        let side = (order as f64).sqrt().round() as usize;
        if side < 2 || side * side != order || side % 2 != 0 {
            return Err(invalid(format!("QAM order {order} is not an even square")));
        }
        let coords: Vec<f64> = (0..side).map(|i| (2 * i) as f64 - (side - 1) as f64).collect();
        let rotate = Complex64::new(0.5, -0.5);
        let points = coords
            .iter()
            .flat_map(|&re| coords.iter().map(move |&im| Complex64::new(re, im)))
            .map(|z| match lattice {
                Lattice::Standard => z,
                Lattice::Natural => z * rotate,
            })
            .collect();
        Self::from_parts(ConstellationKind::Qam { order, lattice }, points)
    }

    pub fn qam16() -> Self {
        Self::qam(16, Lattice::Standard).expect("16 is an even square")
    }

    pub fn qam64() -> Self {
        Self::qam(64, Lattice::Standard).expect("64 is an even square")
    }

    pub fn qam16_natural() -> Self {
        Self::qam(16, Lattice::Natural).expect("16 is an even square")
    }

    pub fn qam64_natural() -> Self {
        Self::qam(64, Lattice::Natural).expect("64 is an even square")
    }

    /// Nonzero Eisenstein integers `a + b·ω`, `ω = e^{iπ/3}`, with
    /// `|z|² <= 4`: three rings of six points at radii 1, √3 and 2. The set
    /// is closed under rotation by sixth roots of unity and under
    /// conjugation.
    pub fn hexagonal() -> Self {
        let omega = root_of_unity(1, 6);
        let mut points = Vec::new();
        for a in -2i32..=2 {
            for b in -2i32..=2 {
                let norm = a * a + a * b + b * b;
                if norm > 0 && norm <= 4 {
                    points.push(Complex64::new(a as f64, 0.0) + omega * b as f64);
                }
            }
        }
        let n = points.len();
        Self {
            kind: ConstellationKind::Hexagonal(n),
            points,
            tolerance: DEFAULT_MEMBERSHIP_TOLERANCE,
        }
    }

    /// Multiplies every point by a positive scale factor.
    pub fn scaled(mut self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(invalid(format!("scale factor must be positive, got {factor}")));
        }
        for z in &mut self.points {
            *z *= factor;
        }
        Ok(self)
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self> {
        if !(tolerance >= 0.0) {
            return Err(invalid(format!("tolerance must be nonnegative, got {tolerance}")));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn kind(&self) -> &ConstellationKind {
        &self.kind
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn nearest_distance(&self, z: Complex64) -> f64 {
        self.points
            .iter()
            .map(|p| (p - z).norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.nearest_distance(z) <= self.tolerance
    }

    pub(crate) fn require(&self, z: Complex64) -> Result<()> {
        if self.contains(z) {
            Ok(())
        } else {
            Err(Error::OffConstellation {
                value: z,
                constellation: self.to_string(),
            })
        }
    }

    /// Index of the first element of `seq` that is not a point, if any.
    pub fn first_violation(&self, seq: &[Complex64]) -> Option<usize> {
        seq.iter().position(|&z| !self.contains(z))
    }
}

/// `true` iff `z` is within the constellation tolerance of one of its points.
pub fn membership(z: Complex64, constellation: &Constellation) -> bool {
    constellation.contains(z)
}

impl fmt::Display for Constellation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ConstellationKind::Binary => write!(f, "binary"),
            ConstellationKind::Mpsk(m) => write!(f, "{m}-PSK"),
            ConstellationKind::Qam { order, lattice } => {
                let l = match lattice {
                    Lattice::Standard => "standard",
                    Lattice::Natural => "natural",
                };
                write!(f, "{order}-QAM ({l} lattice)")
            }
            ConstellationKind::Hexagonal(n) => write!(f, "hexagonal ({n} points)"),
            ConstellationKind::Custom => write!(f, "custom ({} points)", self.points.len()),
        }
    }
}
