use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A weakly decreasing tuple of nonnegative integers of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Self, Error> {
        if parts.iter().any(|&p| p < 0) {
            return Err(Error::InvalidInput(format!(
                "partition {parts:?} has a negative part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty(n: usize) -> Self {
        Partition { parts: vec![0; n] }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().filter(|&&p| p > 0).count()
    }

    pub fn weight(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> i64 {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    /// Zero-pad (or strip trailing zeros) to length `n`.
    pub fn padded(&self, n: usize) -> Result<Partition, Error> {
        if self.length() > n {
            return Err(Error::InvalidInput(format!(
                "partition {self} has more than {n} nonzero parts"
            )));
        }
        let mut parts: Vec<i64> = self.parts.iter().copied().take(n).collect();
        parts.resize(n, 0);
        Ok(Partition { parts })
    }

    pub fn scale(&self, k: i64) -> Partition {
        assert!(k >= 1, "scale factor must be positive");
        Partition {
            parts: self.parts.iter().map(|p| p * k).collect(),
        }
    }

    /// `(-λ_n, ..., -λ_1)`.
    pub fn dual_weight(&self) -> Vec<i64> {
        dual_weight(&self.parts)
    }

    /// All partitions with exactly `n` slots and parts at most `max_part`.
    pub fn all_bounded(n: usize, max_part: i64) -> Vec<Partition> {
        fn rec(n: usize, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
            if cur.len() == n {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (0..=cap).rev() {
                cur.push(p);
                rec(n, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, max_part, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of `weight` with at most `n` parts, padded to `n`.
    pub fn of_weight(weight: i64, n: usize) -> Vec<Partition> {
        fn rec(rest: i64, slots: usize, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if slots == 0 {
                if rest == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let hi = cap.min(rest);
            for p in (0..=hi).rev() {
                if p * (slots as i64) < rest {
                    break;
                }
                cur.push(p);
                rec(rest - p, slots - 1, p, cur, out);
                cur.pop();
            }
        }
        if weight < 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        rec(weight, n, weight, &mut Vec::new(), &mut out);
        out.into_iter().map(|parts| Partition { parts }).collect()
    }
}

pub fn dual_weight(v: &[i64]) -> Vec<i64> {
    v.iter().rev().map(|p| -p).collect()
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self, Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Vec<i64> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma separated parts; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(Partition { parts: Vec::new() });
        }
        let parts = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidInput(format!("bad partition part `{p}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_increasing_and_negative() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![1, -1]).is_err());
        assert!(Partition::new(vec![2, 2, 0]).is_ok());
    }

    #[test]
    fn dual_weight_reverses_and_negates() {
        assert_eq!(dual_weight(&[2, 1, 0]), vec![0, -1, -2]);
        assert_eq!(dual_weight(&[3, 2, 1]), vec![-1, -2, -3]);
        assert_eq!(dual_weight(&[0, 0]), vec![0, 0]);
    }

    #[test]
    fn scaling() {
        let p: Partition = "3,2,1".parse().unwrap();
        assert_eq!(p.scale(2).parts(), &[6, 4, 2]);
        assert_eq!(p.scale(1), p);
        assert_eq!(Partition::new(vec![1, 0]).unwrap().scale(3).parts(), &[3, 0]);
    }

    #[test]
    fn padding() {
        let p: Partition = "2,1".parse().unwrap();
        assert_eq!(p.padded(4).unwrap().parts(), &[2, 1, 0, 0]);
        assert!(p.padded(1).is_err());
        let q: Partition = "2,0,0".parse().unwrap();
        assert_eq!(q.padded(1).unwrap().parts(), &[2]);
    }

    #[test]
    fn enumeration_counts() {
        // lattice paths in a 3 x 3 box
        assert_eq!(Partition::all_bounded(3, 3).len(), 20);
        assert_eq!(Partition::all_bounded(3, 2).len(), 10);
        assert_eq!(Partition::of_weight(4, 4).len(), 5);
        assert_eq!(Partition::of_weight(4, 2).len(), 3);
        assert_eq!(Partition::of_weight(0, 3).len(), 1);
    }

    #[test]
    fn json_is_an_integer_array() {
        let p: Partition = "3,1".parse().unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,1]");
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
