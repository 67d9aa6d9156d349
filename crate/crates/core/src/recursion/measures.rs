use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::contest::Contest;

/// Elementary symmetric polynomials `S_1, ..., S_T` of the group sizes.
///
/// `S_k` counts the chains of `k` players from distinct periods, i.e. the
/// number of k-th level observations in the contest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfoMeasures {
    levels: Vec<BigUint>,
}

/// Elementwise order between two measure vectors, shorter padded with zeros.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    ADominates,
    BDominates,
    Equal,
    Incomparable,
}

impl InfoMeasures {
    /// Coefficients of `prod_t (1 + n_t z)` beyond the constant term.
    pub fn from_groups(groups: &[u32]) -> Self {
        let mut coeffs = vec![BigUint::from(1u32)];
        for &n in groups {
            coeffs.push(BigUint::zero());
            for k in (1..coeffs.len()).rev() {
                let add = &coeffs[k - 1] * n;
                coeffs[k] += add;
            }
        }
        coeffs.remove(0);
        InfoMeasures { levels: coeffs }
    }

    pub fn levels(&self) -> &[BigUint] {
        &self.levels
    }

    /// `S_k`, 1-based; zero beyond the number of periods.
    pub fn level(&self, k: usize) -> BigUint {
        self.levels.get(k.wrapping_sub(1)).cloned().unwrap_or_default()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.levels.iter().map(|s| s.to_f64().unwrap_or(f64::INFINITY)).collect()
    }

    /// `sum_k S_k alpha^k = prod_t (1 + alpha n_t) - 1`.
    pub fn weighted_total(&self, alpha: f64) -> f64 {
        self.to_f64().iter().rev().fold(0.0, |acc, s| (acc + s) * alpha)
    }

    pub fn total(&self) -> BigUint {
        self.levels.iter().sum()
    }

    pub fn compare(&self, other: &InfoMeasures) -> Dominance {
        let len = self.levels.len().max(other.levels.len());
        let (mut ge, mut le) = (true, true);
        for k in 1..=len {
            match self.level(k).cmp(&other.level(k)) {
                Ordering::Less => ge = false,
                Ordering::Greater => le = false,
                Ordering::Equal => {}
            }
        }
        match (ge, le) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::ADominates,
            (false, true) => Dominance::BDominates,
            (false, false) => Dominance::Incomparable,
        }
    }
}

impl Serialize for InfoMeasures {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.levels.iter().map(|s| s.to_string()))
    }
}

pub fn info_measures(contest: &Contest) -> InfoMeasures {
    InfoMeasures::from_groups(contest.groups())
}

/// Measures of every sub-contest `n^t = (n_{t+1}, ..., n_T)` for
/// `t = 0..=T`, built by suffix products.
pub fn suffix_measures(contest: &Contest) -> Vec<InfoMeasures> {
    let periods = contest.periods();
    let mut out = vec![InfoMeasures { levels: Vec::new() }; periods + 1];
    let mut coeffs = vec![BigUint::from(1u32)];
    for t in (0..periods).rev() {
        let n = contest.groups()[t];
        coeffs.push(BigUint::zero());
        for k in (1..coeffs.len()).rev() {
            let add = &coeffs[k - 1] * n;
            coeffs[k] += add;
        }
        out[t] = InfoMeasures {
            levels: coeffs[1..].to_vec(),
        };
    }
    out
}
