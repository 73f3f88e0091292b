//! Horizontal-orientation environments.
//!
//! An environment assigns a sign `eps_y` to every ordinate `y`; the sign is
//! the direction of the one-way horizontal line at level `y`. The stock
//! environments are the alternating lattice (`eps_y = (-1)^y`), the
//! half-plane one-way lattice (`+1` iff `y >= 0`), striped variants of the
//! alternating lattice, i.i.d. Rademacher orientations keyed by a seed, and
//! explicit tables.
//!
//! All queries are pure and `O(1)` in memory: random environments evaluate a
//! keyed counter PRF of `(seed, y)` instead of storing samples, so repeated
//! queries agree regardless of order and trajectories may wander over
//! unbounded ordinate ranges.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::rng::{prf, zigzag};
use crate::{Error, Result, COORD_LIMIT};

/// Orientation sign of a horizontal line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        self.as_i64() as f64
    }

    pub fn from_i64(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::Domain(format!("sign must be +1 or -1, got {other}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i64())
    }
}

/// The sequence `eps_y` of horizontal orientations, indexed by ordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrientationEnvironment {
    /// `eps_y = (-1)^y`.
    Alternate,
    /// `eps_y = +1` iff `y >= 0`.
    HalfPlane,
    /// Constant on bands `[k*l, (k+1)*l)`, alternating in `k`, `eps_0 = +1`.
    Strip { width: u64 },
    /// i.i.d. Rademacher signs, a pure function of `(seed, y)`.
    RandomIid { seed: u64 },
    /// Explicit ordinate -> sign table; queries outside it are errors.
    Explicit(BTreeMap<i64, Sign>),
}

impl OrientationEnvironment {
    pub fn strip(width: u64) -> Result<Self> {
        if width == 0 {
            return Err(Error::InvalidSpec {
                spec: "strip:0".into(),
                reason: "strip width must be a positive integer".into(),
            });
        }
        Ok(OrientationEnvironment::Strip { width })
    }

    pub fn explicit<I: IntoIterator<Item = (i64, Sign)>>(table: I) -> Self {
        OrientationEnvironment::Explicit(table.into_iter().collect())
    }

    /// The orientation `eps_y` at ordinate `y`.
    pub fn epsilon(&self, y: i64) -> Result<Sign> {
        if y.unsigned_abs() >= COORD_LIMIT as u64 {
            return Err(Error::OrdinateOverflow(y));
        }
        Ok(match self {
            OrientationEnvironment::Alternate => {
                if y & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            }
            OrientationEnvironment::HalfPlane => {
                if y >= 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            }
            OrientationEnvironment::Strip { width } => {
                // band index, floor division
                let k = y.div_euclid(*width as i64);
                if k & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            }
            OrientationEnvironment::RandomIid { seed } => {
                if prf(*seed, zigzag(y)) & 1 == 1 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            }
            OrientationEnvironment::Explicit(table) => {
                *table.get(&y).ok_or(Error::UncoveredOrdinate(y))?
            }
        })
    }

    /// `(1/N) * sum_{y=-N..N} eps_y`, returned as the exact fraction
    /// `sum / N`. Vanishes as `N` grows for every stock environment.
    pub fn balance_statistic(&self, n: u64) -> Result<Balance> {
        if n == 0 {
            return Err(Error::Domain("balance statistic needs N >= 1".into()));
        }
        let mut sum = 0i64;
        for y in -(n as i64)..=(n as i64) {
            sum += self.epsilon(y)?.as_i64();
        }
        Ok(Balance {
            numerator: sum,
            denominator: n,
        })
    }
}

/// Exact value of the balance statistic: `numerator / denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Balance {
    pub numerator: i64,
    pub denominator: u64,
}

impl Balance {
    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

/// Parses the CLI lattice spec: `alternate`, `halfplane`, `strip:<l>`,
/// `random:<seed>`, `explicit:<path>` (two-column `y sign` text file).
impl FromStr for OrientationEnvironment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidSpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        match s {
            "alternate" => return Ok(OrientationEnvironment::Alternate),
            "halfplane" => return Ok(OrientationEnvironment::HalfPlane),
            _ => {}
        }
        if let Some(width) = s.strip_prefix("strip:") {
            let width: u64 = width.parse().map_err(|_| bad("strip width must be a positive integer"))?;
            return OrientationEnvironment::strip(width);
        }
        if let Some(seed) = s.strip_prefix("random:") {
            let seed: u64 = seed.parse().map_err(|_| bad("random seed must be a 64-bit unsigned integer"))?;
            return Ok(OrientationEnvironment::RandomIid { seed });
        }
        if let Some(path) = s.strip_prefix("explicit:") {
            return load_explicit(Path::new(path));
        }
        Err(bad("expected alternate | halfplane | strip:<l> | random:<seed> | explicit:<path>"))
    }
}

impl fmt::Display for OrientationEnvironment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrientationEnvironment::Alternate => write!(f, "alternate"),
            OrientationEnvironment::HalfPlane => write!(f, "halfplane"),
            OrientationEnvironment::Strip { width } => write!(f, "strip:{width}"),
            OrientationEnvironment::RandomIid { seed } => write!(f, "random:{seed}"),
            OrientationEnvironment::Explicit(table) => write!(f, "explicit({} rows)", table.len()),
        }
    }
}

/// Loads an explicit environment from a two-column `y sign` text file.
/// Blank lines and `#` comments are skipped.
pub fn load_explicit(path: &Path) -> Result<OrientationEnvironment> {
    let text = std::fs::read_to_string(path)?;
    let mut table = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<i64> {
            tok.and_then(|t| t.parse().ok()).ok_or_else(|| Error::InvalidSpec {
                spec: format!("{}:{}", path.display(), lineno + 1),
                reason: format!("expected `y sign`, got {line:?}"),
            })
        };
        let y = parse(cols.next())?;
        let sign = Sign::from_i64(parse(cols.next())?)?;
        table.insert(y, sign);
    }
    Ok(OrientationEnvironment::Explicit(table))
}

/// The environment read off the worked trajectory figure: four explicit
/// rows covering ordinates -2..=1. Used by tests and the verify suite.
pub fn figure_environment() -> OrientationEnvironment {
    OrientationEnvironment::explicit([
        (-2, Sign::Minus),
        (-1, Sign::Plus),
        (0, Sign::Minus),
        (1, Sign::Plus),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternate_closed_form() {
        let env = OrientationEnvironment::Alternate;
        assert_eq!(env.epsilon(0).unwrap(), Sign::Plus);
        assert_eq!(env.epsilon(3).unwrap(), Sign::Minus);
        for y in -10_000i64..=10_000 {
            let expect = if y.rem_euclid(2) == 0 { 1 } else { -1 };
            assert_eq!(env.epsilon(y).unwrap().as_i64(), expect, "y = {y}");
        }
    }

    #[test]
    fn halfplane_closed_form() {
        let env = OrientationEnvironment::HalfPlane;
        assert_eq!(env.epsilon(-1).unwrap(), Sign::Minus);
        for y in -10_000i64..=10_000 {
            let expect = if y >= 0 { 1 } else { -1 };
            assert_eq!(env.epsilon(y).unwrap().as_i64(), expect, "y = {y}");
        }
    }

    #[test]
    fn strip_bands_alternate_and_anchor_at_zero() {
        let env = OrientationEnvironment::strip(3).unwrap();
        for y in -10_000i64..=10_000 {
            let expect = if y.div_euclid(3) % 2 == 0 { 1 } else { -1 };
            assert_eq!(env.epsilon(y).unwrap().as_i64(), expect, "y = {y}");
        }
        assert_eq!(env.epsilon(0).unwrap(), Sign::Plus);
        // width 1 degenerates to the alternating lattice
        let strip1 = OrientationEnvironment::strip(1).unwrap();
        let alt = OrientationEnvironment::Alternate;
        for y in -500i64..=500 {
            assert_eq!(strip1.epsilon(y).unwrap(), alt.epsilon(y).unwrap());
        }
    }

    #[test]
    fn explicit_figure_rows() {
        let env = figure_environment();
        assert_eq!(env.epsilon(-2).unwrap(), Sign::Minus);
        assert_eq!(env.epsilon(1).unwrap(), Sign::Plus);
        assert!(matches!(env.epsilon(5), Err(Error::UncoveredOrdinate(5))));
    }

    #[test]
    fn random_iid_is_pure_and_seed_sensitive() {
        let a = OrientationEnvironment::RandomIid { seed: 11 };
        let b = OrientationEnvironment::RandomIid { seed: 12 };
        let mut disagreements = 0;
        for y in -2_000i64..=2_000 {
            assert_eq!(a.epsilon(y).unwrap(), a.epsilon(y).unwrap());
            if a.epsilon(y).unwrap() != b.epsilon(y).unwrap() {
                disagreements += 1;
            }
        }
        assert!(disagreements > 1_000, "seeds look correlated: {disagreements}");
    }

    #[test]
    fn random_iid_frequency_near_half() {
        let env = OrientationEnvironment::RandomIid { seed: 0xDEC0DE };
        let n = 1_000_000u64;
        let plus = (0..n as i64)
            .filter(|&y| env.epsilon(y).unwrap() == Sign::Plus)
            .count() as f64;
        let dev = (plus / n as f64 - 0.5).abs();
        assert!(dev < 3.0 * (0.25 / n as f64).sqrt(), "dev = {dev}");
    }

    #[test]
    fn balance_statistic_examples() {
        let alt = OrientationEnvironment::Alternate.balance_statistic(10).unwrap();
        assert_eq!((alt.numerator, alt.denominator), (1, 10));
        let hp = OrientationEnvironment::HalfPlane.balance_statistic(10).unwrap();
        assert_eq!((hp.numerator, hp.denominator), (1, 10));
    }

    #[test]
    fn ordinate_guard() {
        let env = OrientationEnvironment::Alternate;
        assert!(matches!(env.epsilon(COORD_LIMIT), Err(Error::OrdinateOverflow(_))));
        assert!(matches!(env.epsilon(-COORD_LIMIT), Err(Error::OrdinateOverflow(_))));
        assert!(env.epsilon(COORD_LIMIT - 1).is_ok());
    }

    #[test]
    fn spec_string_round_trip() {
        for spec in ["alternate", "halfplane", "strip:4", "random:99"] {
            let env: OrientationEnvironment = spec.parse().unwrap();
            assert_eq!(env.to_string(), spec);
        }
        assert!("strip:0".parse::<OrientationEnvironment>().is_err());
        assert!("mystery".parse::<OrientationEnvironment>().is_err());
    }
}
