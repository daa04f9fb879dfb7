//! Growth of the maximum inter-solution gap across instance sizes.

use serde::{Deserialize, Serialize};

use crate::enumcore::{run_with_profile_each, DelayProfile, ParamInstance};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRecord {
    pub family: String,
    pub n: usize,
    pub k: usize,
    /// `None` when the run emitted fewer than two solutions.
    pub max_gap_ns: Option<u64>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthRatio {
    pub family: String,
    pub k: usize,
    pub n_from: usize,
    pub n_to: usize,
    pub ratio: f64,
}

/// Per-instance records plus the ratios `maxgap(n2) / maxgap(n1)` between
/// consecutive sizes of the same family and parameter.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DelayGrowthReport {
    records: Vec<GrowthRecord>,
    ratios: Vec<GrowthRatio>,
}

impl DelayGrowthReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, family: &str, n: usize, k: usize, profile: &DelayProfile) {
        self.records.push(GrowthRecord {
            family: family.to_string(),
            n,
            k,
            max_gap_ns: profile.max_gap_ns(),
            count: profile.count,
        });
        self.recompute();
    }

    pub fn records(&self) -> &[GrowthRecord] {
        &self.records
    }

    pub fn ratios(&self) -> &[GrowthRatio] {
        &self.ratios
    }

    /// Largest ratio over all pairs, if any pair had measurable gaps.
    pub fn worst_ratio(&self) -> Option<f64> {
        self.ratios.iter().map(|r| r.ratio).reduce(f64::max)
    }

    fn recompute(&mut self) {
        let mut sorted: Vec<&GrowthRecord> = self.records.iter().collect();
        sorted.sort_by(|a, b| (&a.family, a.k, a.n).cmp(&(&b.family, b.k, b.n)));
        self.ratios = sorted
            .windows(2)
            .filter(|w| w[0].family == w[1].family && w[0].k == w[1].k && w[0].n != w[1].n)
            .filter_map(|w| {
                let from = w[0].max_gap_ns.filter(|&g| g > 0)?;
                let to = w[1].max_gap_ns?;
                Some(GrowthRatio {
                    family: w[0].family.clone(),
                    k: w[0].k,
                    n_from: w[0].n,
                    n_to: w[1].n,
                    ratio: to as f64 / from as f64,
                })
            })
            .collect();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the same enumeration `repeats` times, discarding solutions, and
/// keeps the index-wise minimum delay.
pub fn profile_repeated<P, S, I, F>(
    enumerator: F,
    instance: &ParamInstance<P>,
    repeats: usize,
) -> Result<DelayProfile>
where
    F: Fn(&ParamInstance<P>) -> Result<I>,
    I: Iterator<Item = Result<S>>,
{
    let runs = (0..repeats.max(1))
        .map(|_| run_with_profile_each(&enumerator, instance, drop))
        .collect::<Result<Vec<_>>>()?;
    DelayProfile::elementwise_min(&runs)
}
