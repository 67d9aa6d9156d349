use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Disclosure structure `(n_1, ..., n_T)`: `n_t` players act in period `t`
/// and observe the cumulative effort of all earlier periods.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Contest(Vec<u32>);

impl Contest {
    pub fn new(groups: Vec<u32>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::InvalidContest("at least one period is required".into()));
        }
        if let Some(t) = groups.iter().position(|&n| n == 0) {
            return Err(Error::InvalidContest(format!(
                "period {} has no players",
                t + 1
            )));
        }
        Ok(Contest(groups))
    }

    /// All `n` players in one period.
    pub fn simultaneous(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    /// One player per period.
    pub fn sequential(n: u32) -> Result<Self> {
        Self::new(vec![1; n as usize])
    }

    pub fn groups(&self) -> &[u32] {
        &self.0
    }

    pub fn periods(&self) -> usize {
        self.0.len()
    }

    pub fn players(&self) -> u64 {
        self.0.iter().map(|&n| u64::from(n)).sum()
    }

    /// Size of period `t`, 1-based.
    pub fn group(&self, t: usize) -> u32 {
        self.0[t - 1]
    }

    /// The sub-contest played after period `t`: `(n_{t+1}, ..., n_T)`.
    pub fn tail(&self, t: usize) -> &[u32] {
        &self.0[t..]
    }

    /// Same multiset of group sizes, sorted ascending.
    pub fn sorted(&self) -> Contest {
        let mut g = self.0.clone();
        g.sort_unstable();
        Contest(g)
    }

    /// Period of each player, in order of play.
    pub fn player_periods(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(t, &n)| std::iter::repeat_n(t + 1, n as usize))
    }
}

impl TryFrom<Vec<u32>> for Contest {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Contest::new(v)
    }
}

impl From<Contest> for Vec<u32> {
    fn from(c: Contest) -> Self {
        c.0
    }
}

impl fmt::Display for Contest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl FromStr for Contest {
    type Err = Error;

    /// Comma-separated group sizes; `n^k` repeats `n` k times, so `1^5` is
    /// the five-player sequential contest.
    fn from_str(s: &str) -> Result<Self> {
        let mut groups = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            let bad = || Error::InvalidContest(format!("cannot parse {item:?}"));
            let (size, reps) = match item.split_once('^') {
                Some((n, k)) => (
                    n.trim().parse::<u32>().map_err(|_| bad())?,
                    k.trim().parse::<usize>().map_err(|_| bad())?,
                ),
                None => (item.parse::<u32>().map_err(|_| bad())?, 1),
            };
            if reps == 0 {
                return Err(bad());
            }
            groups.extend(std::iter::repeat_n(size, reps));
        }
        Contest::new(groups)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_grammar() {
        assert_eq!("1,2,1".parse::<Contest>().unwrap().groups(), &[1, 2, 1]);
        assert_eq!("1^5".parse::<Contest>().unwrap(), Contest::sequential(5).unwrap());
        assert_eq!("3, 1^2".parse::<Contest>().unwrap().groups(), &[3, 1, 1]);
        for bad in ["", "0", "1,,2", "a", "1^0", "-1", "2^x"] {
            assert!(bad.parse::<Contest>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn derived_sizes() {
        let c = Contest::new(vec![1, 2, 1]).unwrap();
        assert_eq!(c.players(), 4);
        assert_eq!(c.periods(), 3);
        assert_eq!(c.group(2), 2);
        assert_eq!(c.tail(1), &[2, 1]);
        assert!(c.tail(3).is_empty());
        assert_eq!(c.player_periods().collect::<Vec<_>>(), vec![1, 2, 2, 3]);
        assert_eq!(c.to_string(), "1,2,1");
    }

    #[test]
    fn serde_validates() {
        assert!(serde_json::from_str::<Contest>("[1,0]").is_err());
        let c: Contest = serde_json::from_str("[5,5]").unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), "[5,5]");
    }
}
