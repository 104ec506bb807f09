use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::GameError;

/// Agility function `tau(n)`, the common travel budget at step `n >= 1`.
///
/// Every kind has divergent partial sums: constants and harmonic series by
/// construction, lists because they repeat.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum AgilitySchedule {
    Constant(f64),
    /// `tau(n) = c / n`.
    Harmonic(f64),
    /// `tau(n) = values[(n - 1) % len]`.
    List(Vec<f64>),
}

fn positive(x: f64) -> bool {
    x > 0.0 && x.is_finite()
}

impl AgilitySchedule {
    pub fn constant(c: f64) -> Result<Self, GameError> {
        Self::Constant(c).validated()
    }

    pub fn harmonic(c: f64) -> Result<Self, GameError> {
        Self::Harmonic(c).validated()
    }

    pub fn list(values: Vec<f64>) -> Result<Self, GameError> {
        Self::List(values).validated()
    }

    fn validated(self) -> Result<Self, GameError> {
        let ok = match &self {
            Self::Constant(c) | Self::Harmonic(c) => positive(*c),
            Self::List(v) => !v.is_empty() && v.iter().all(|&x| positive(x)),
        };
        if ok {
            Ok(self)
        } else {
            Err(GameError::BadSchedule(self.to_string()))
        }
    }

    /// Budget at step `n`; steps are 1-based.
    pub fn tau(&self, n: usize) -> f64 {
        let n = n.max(1);
        match self {
            Self::Constant(c) => *c,
            Self::Harmonic(c) => c / n as f64,
            Self::List(v) => v[(n - 1) % v.len()],
        }
    }

    /// Largest value ever returned.
    pub fn max(&self) -> f64 {
        match self {
            Self::Constant(c) | Self::Harmonic(c) => *c,
            Self::List(v) => v.iter().copied().fold(0.0, f64::max),
        }
    }

    /// Constant and harmonic schedules never increase.
    pub fn is_nonincreasing(&self) -> bool {
        match self {
            Self::Constant(_) | Self::Harmonic(_) => true,
            Self::List(v) => v.iter().all(|&x| x == v[0]),
        }
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self {
            Self::Constant(c) => Some(*c),
            _ => None,
        }
    }
}

impl FromStr for AgilitySchedule {
    type Err = GameError;

    /// `const:x`, `harmonic:c` or `list:a,b,...`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GameError::BadSchedule(s.to_owned());
        let (kind, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        match kind {
            "const" => Self::constant(num(arg)?),
            "harmonic" => Self::harmonic(num(arg)?),
            "list" => Self::list(arg.split(',').map(num).collect::<Result<_, _>>()?),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for AgilitySchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "const:{c}"),
            Self::Harmonic(c) => write!(f, "harmonic:{c}"),
            Self::List(v) => {
                let parts: Vec<String> = v.iter().map(f64::to_string).collect();
                write!(f, "list:{}", parts.join(","))
            }
        }
    }
}

impl TryFrom<String> for AgilitySchedule {
    type Error = GameError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<AgilitySchedule> for String {
    fn from(s: AgilitySchedule) -> String {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        let h: AgilitySchedule = "harmonic:2".parse().unwrap();
        assert_eq!(h.tau(1), 2.0);
        assert_eq!(h.tau(4), 0.5);
        let l: AgilitySchedule = "list:1,0.5,0.25".parse().unwrap();
        assert_eq!([l.tau(1), l.tau(3), l.tau(4)], [1.0, 0.25, 1.0]);
        assert_eq!(l.max(), 1.0);
        assert!(!l.is_nonincreasing());
        assert_eq!("const:0.1".parse::<AgilitySchedule>().unwrap().tau(99), 0.1);
    }

    #[test]
    fn rejects_nonpositive() {
        for s in ["const:0", "const:-1", "harmonic:inf", "list:", "list:1,0", "linear:1", "const"] {
            assert!(s.parse::<AgilitySchedule>().is_err(), "{s}");
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["const:0.1", "harmonic:3", "list:1,0.5"] {
            let a: AgilitySchedule = s.parse().unwrap();
            assert_eq!(a.to_string(), s);
            let json = serde_json::to_string(&a).unwrap();
            assert_eq!(serde_json::from_str::<AgilitySchedule>(&json).unwrap(), a);
        }
    }
}
