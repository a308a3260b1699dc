use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Where a semi-infinite region (τ, ∞) was cut, and how much trace was lost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub at: f64,
    pub tail_mass_bound: f64,
}

/// Finite union of disjoint closed intervals, kept sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub intervals: Vec<(f64, f64)>,
    pub tail: Option<Truncation>,
}

impl Region {
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        for &(a, b) in &intervals {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(Error::InvalidParameters(format!("bad interval [{a}, {b}]")));
            }
        }
        intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
        if intervals.windows(2).any(|w| w[0].1 > w[1].0) {
            return Err(Error::InvalidParameters("intervals overlap".into()));
        }
        Ok(Region { intervals, tail: None })
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Region::new(vec![(a, b)])
    }

    pub fn empty() -> Self {
        Region { intervals: Vec::new(), tail: None }
    }

    /// (τ, T) standing in for (τ, ∞), with the neglected tail mass recorded.
    pub fn truncated(tau: f64, at: f64, tail_mass_bound: f64) -> Result<Self> {
        let mut r = Region::interval(tau, at)?;
        r.tail = Some(Truncation { at, tail_mass_bound });
        Ok(r)
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= x && x <= b)
    }

    /// Parse "a,b" or "a,b;c,d".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Region::empty());
        }
        let mut out = Vec::new();
        for part in s.split(';') {
            let v: Vec<&str> = part.split(',').map(str::trim).collect();
            let num = |t: &str| {
                t.parse::<f64>()
                    .map_err(|_| Error::InvalidParameters(format!("bad region bound '{t}'")))
            };
            if v.len() != 2 {
                return Err(Error::InvalidParameters(format!("bad interval '{part}', want a,b")));
            }
            out.push((num(v[0])?, num(v[1])?));
        }
        Region::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Region::new(vec![(0.0, 1.0), (0.5, 2.0)]).is_err());
        assert!(Region::new(vec![(1.0, 1.0)]).is_err());
        let r = Region::new(vec![(2.0, 3.0), (0.0, 1.0)]).unwrap();
        assert_eq!(r.intervals[0], (0.0, 1.0));
        assert_eq!(r.measure(), 2.0);
        assert!(r.contains(2.5) && !r.contains(1.5));
    }

    #[test]
    fn parsing() {
        assert_eq!(Region::parse("0,0.1").unwrap().intervals, vec![(0.0, 0.1)]);
        assert_eq!(Region::parse("0,1;2,3").unwrap().intervals.len(), 2);
        assert!(Region::parse("0;1").is_err());
        assert!(Region::parse("").unwrap().is_empty());
    }
}
