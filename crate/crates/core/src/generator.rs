//! Seeded random and patterned terrain construction.
//!
//! # Random terrains
//!
//! Randomness comes from SplitMix64 so corpora can be reproduced bit for bit
//! by other implementations:
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15              (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9        (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB        (wrapping)
//! output z ^ (z >> 31)
//! ```
//!
//! The state starts at `seed`. A walk starts at `(0, 0)`; for each of the
//! `steps` horizontal runs it draws `run = 1 + next % max_run` and moves right
//! by `run`. Between runs it draws `rise = 1 + next % max_rise` and then
//! `down = next & 1`, moving down by `rise` when `down == 1` and up otherwise.
//! Every run and every vertical move contributes one vertex, so a terrain
//! from `steps` runs has exactly `2 * steps` vertices.

use crate::error::GenError;
use crate::terrain::{BuildMode, Terrain, COORD_LIMIT};

/// SplitMix64 generator (see the module docs for the update rule).
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `[1, m]` (plain modulo reduction).
    pub fn one_to(&mut self, m: u64) -> u64 {
        1 + self.next_u64() % m
    }
}

/// Structured terrain families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// Unit steps up; `steps = 3` is the STAIRS fixture.
    AscendingStairs,
    /// Unit steps down.
    DescendingStairs,
    /// Unit-width notches of depth `max_rise` separated by unit plateaus.
    Comb,
    /// The VALLEY fixture repeated `steps` times.
    PlateauValleys,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [
        Pattern::AscendingStairs,
        Pattern::DescendingStairs,
        Pattern::Comb,
        Pattern::PlateauValleys,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Pattern::AscendingStairs => "ascending_stairs",
            Pattern::DescendingStairs => "descending_stairs",
            Pattern::Comb => "comb",
            Pattern::PlateauValleys => "plateau_valleys",
        }
    }
}

impl std::str::FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown pattern `{s}`"))
    }
}

/// Generator parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub seed: u64,
    /// Number of horizontal runs (teeth or valleys for patterns).
    pub steps: usize,
    pub max_run: i64,
    pub max_rise: i64,
    pub pattern: Option<Pattern>,
}

impl Default for GenSpec {
    fn default() -> Self {
        GenSpec {
            seed: 0,
            steps: 8,
            max_run: 4,
            max_rise: 4,
            pattern: None,
        }
    }
}

impl GenSpec {
    pub fn random(seed: u64, steps: usize) -> Self {
        GenSpec {
            seed,
            steps,
            ..GenSpec::default()
        }
    }

    pub fn pattern(pattern: Pattern, steps: usize) -> Self {
        GenSpec {
            steps,
            pattern: Some(pattern),
            ..GenSpec::default()
        }
    }

    fn check(&self) -> Result<(), GenError> {
        let bad = |m: String| Err(GenError::SpecOutOfRange(m));
        if self.steps == 0 {
            return bad("steps must be at least 1".into());
        }
        if self.max_run < 1 || self.max_rise < 1 {
            return bad("max_run and max_rise must be at least 1".into());
        }
        if self.max_rise > COORD_LIMIT {
            return bad(format!("max_rise {} exceeds {COORD_LIMIT}", self.max_rise));
        }
        let width = (self.steps as i128) * (self.max_run as i128);
        if width > COORD_LIMIT as i128 {
            return bad(format!(
                "{} runs of up to {} units exceed the coordinate range",
                self.steps, self.max_run
            ));
        }
        Ok(())
    }
}

/// Dispatches on `spec.pattern`.
pub fn generate(spec: &GenSpec) -> Result<Terrain, GenError> {
    match spec.pattern {
        Some(_) => generate_pattern(spec),
        None => generate_random(spec),
    }
}

/// Random walk terrain with `2 * steps` vertices.
pub fn generate_random(spec: &GenSpec) -> Result<Terrain, GenError> {
    spec.check()?;
    let mut rng = SplitMix64::new(spec.seed);
    let mut pts = Vec::with_capacity(2 * spec.steps);
    let (mut x, mut y) = (0i64, 0i64);
    pts.push((x, y));
    for s in 0..spec.steps {
        x += rng.one_to(spec.max_run as u64) as i64;
        pts.push((x, y));
        if s + 1 < spec.steps {
            let rise = rng.one_to(spec.max_rise as u64) as i64;
            if rng.next_u64() & 1 == 1 {
                y -= rise;
            } else {
                y += rise;
            }
            if y.abs() > COORD_LIMIT {
                return Err(GenError::SpecOutOfRange(format!(
                    "height walk left the coordinate range at run {s}"
                )));
            }
            pts.push((x, y));
        }
    }
    build(&pts)
}

/// Deterministic adversarial families; `seed` and `max_run` are ignored.
pub fn generate_pattern(spec: &GenSpec) -> Result<Terrain, GenError> {
    let Some(pattern) = spec.pattern else {
        return Err(GenError::SpecOutOfRange("no pattern selected".into()));
    };
    spec.check()?;
    let k = spec.steps as i64;
    if 3 * k + 2 > COORD_LIMIT {
        return Err(GenError::SpecOutOfRange(format!(
            "{k} repetitions exceed the coordinate range"
        )));
    }
    let mut pts = Vec::new();
    match pattern {
        Pattern::AscendingStairs | Pattern::DescendingStairs => {
            let dir = if pattern == Pattern::AscendingStairs {
                1
            } else {
                -1
            };
            pts.push((0, 0));
            for s in 0..k {
                pts.push((s + 1, dir * s));
                if s + 1 < k {
                    pts.push((s + 1, dir * (s + 1)));
                }
            }
        }
        Pattern::Comb => {
            let d = spec.max_rise;
            pts.extend([(0, d), (1, d)]);
            for j in 0..k {
                let x0 = 1 + 2 * j;
                pts.extend([(x0, 0), (x0 + 1, 0), (x0 + 1, d), (x0 + 2, d)]);
            }
        }
        Pattern::PlateauValleys => {
            pts.push((0, 2));
            for j in 0..k {
                let x0 = 1 + 3 * j;
                pts.extend([(x0, 2), (x0, 0), (x0 + 2, 0), (x0 + 2, 2)]);
            }
            pts.push((1 + 3 * k, 2));
        }
    }
    build(&pts)
}

fn build(pts: &[(i64, i64)]) -> Result<Terrain, GenError> {
    Terrain::build(pts, BuildMode::Strict)
        .map_err(|e| GenError::SpecOutOfRange(format!("generated an invalid terrain: {e}")))
}
