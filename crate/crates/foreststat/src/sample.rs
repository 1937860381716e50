//! Uniform rejection sampling over avoiding forests.
//!
//! A uniform parent array in `{0, ..., n}^n` restricted to valid forests is
//! uniform over all forests on `[n]`, and restricting further to avoiders
//! keeps the law uniform over the avoiding class.  Rejection is therefore
//! exact; its price is the acceptance rate, which a configurable floor
//! turns from a silent spin into a diagnostic.

use crate::pmf::DiscretePMF;
use crate::StatError;
use forest_core::{LabeledForest, PatternSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default floor for the observed acceptance rate.
pub const DEFAULT_RATE_FLOOR: f64 = 1e-5;

/// Attempts between acceptance-rate checks.
const RATE_CHECK_INTERVAL: u64 = 1 << 16;

/// A sampling request.  `stream` selects an independent substream of the
/// same seed, so shards of one logical run stay non-overlapping; reports
/// from different streams merge into the same statistics as a single run
/// of the combined size.
#[derive(Clone, Debug)]
pub struct SampleJob {
    pub set: PatternSet,
    pub n: usize,
    pub count: u64,
    pub seed: u64,
    pub stream: u64,
    /// Give up when `accepted / attempts` drops below this; nonpositive
    /// disables the check.
    pub rate_floor: f64,
}

impl SampleJob {
    pub fn new(set: PatternSet, n: usize, count: u64, seed: u64) -> SampleJob {
        SampleJob { set, n, count, seed, stream: 0, rate_floor: DEFAULT_RATE_FLOOR }
    }

    pub fn with_stream(mut self, stream: u64) -> SampleJob {
        self.stream = stream;
        self
    }

    pub fn with_rate_floor(mut self, floor: f64) -> SampleJob {
        self.rate_floor = floor;
        self
    }
}

/// Aggregated statistics of the accepted samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub n: usize,
    pub label: String,
    pub accepted: u64,
    pub attempts: u64,
    /// `component_counts[c]` = samples with exactly `c` components.
    component_counts: Vec<u64>,
    /// `size_totals[k - 1]` = components of size `k` summed over samples.
    size_totals: Vec<u64>,
}

impl SampleReport {
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.attempts as f64
    }

    /// Empirical component-count pmf with `sample_size` recorded.
    pub fn component_count_pmf(&self) -> Result<DiscretePMF, StatError> {
        if self.n == 0 {
            return DiscretePMF::from_counts(vec![0], &[self.accepted], Some(self.accepted));
        }
        DiscretePMF::from_counts(
            (1..=self.n as u64).collect(),
            &self.component_counts[1..],
            Some(self.accepted),
        )
    }

    /// Empirical expectations of the per-size component counts, indexed by
    /// size minus one.
    pub fn expected_size_counts(&self) -> Vec<BigRational> {
        let denom = BigInt::from(self.accepted);
        self.size_totals
            .iter()
            .map(|&t| BigRational::new(BigInt::from(t), denom.clone()))
            .collect()
    }

    /// Combines shard reports; counts add, so the merge is associative and
    /// commutative.
    pub fn merge(&self, other: &SampleReport) -> Result<SampleReport, StatError> {
        if self.n != other.n || self.label != other.label {
            return Err(StatError::BadRequest(format!(
                "cannot merge reports for {{{}}} n={} and {{{}}} n={}",
                self.label, self.n, other.label, other.n
            )));
        }
        let zip_add = |a: &[u64], b: &[u64]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        Ok(SampleReport {
            n: self.n,
            label: self.label.clone(),
            accepted: self.accepted + other.accepted,
            attempts: self.attempts + other.attempts,
            component_counts: zip_add(&self.component_counts, &other.component_counts),
            size_totals: zip_add(&self.size_totals, &other.size_totals),
        })
    }
}

/// Draws `job.count` uniform avoiding forests, aggregating the standard
/// statistics and handing each accepted forest to `visit`.
///
/// Deterministic: identical jobs (including seed and stream) produce the
/// identical sample sequence on every platform.
pub fn sample_avoiding<F: FnMut(&LabeledForest)>(
    job: &SampleJob,
    mut visit: F,
) -> Result<SampleReport, StatError> {
    if job.count == 0 {
        return Err(StatError::BadRequest("sample count must be positive".to_string()));
    }
    let n = job.n;
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    rng.set_stream(job.stream);

    let mut report = SampleReport {
        n,
        label: job.set.normalized_text(),
        accepted: 0,
        attempts: 0,
        component_counts: vec![0; n + 1],
        size_totals: vec![0; n],
    };
    let mut parents = vec![0u32; n];
    // Chain-walk states for the validity pre-check, as in forest
    // construction: 0 unvisited, 1 on the current chain, 2 known acyclic.
    let mut state = vec![0u8; n + 1];

    while report.accepted < job.count {
        report.attempts += 1;
        for slot in parents.iter_mut() {
            *slot = rng.gen_range(0..=n as u32);
        }
        if valid_parent_array(&parents, &mut state) {
            let forest = LabeledForest::new(parents.clone()).expect("prechecked parent array");
            if forest.avoids(&job.set) {
                report.accepted += 1;
                let profile = forest.profile();
                report.component_counts[profile.component_count] += 1;
                for &s in &profile.component_sizes {
                    report.size_totals[s - 1] += 1;
                }
                visit(&forest);
            }
        }
        if job.rate_floor > 0.0
            && report.attempts % RATE_CHECK_INTERVAL == 0
            && (report.accepted as f64) < job.rate_floor * report.attempts as f64
        {
            return Err(StatError::AcceptanceRate {
                attempts: report.attempts,
                accepted: report.accepted,
                floor: job.rate_floor,
            });
        }
    }
    Ok(report)
}

/// [`sample_avoiding`] without a per-sample callback.
pub fn sample_statistics(job: &SampleJob) -> Result<SampleReport, StatError> {
    sample_avoiding(job, |_| {})
}

/// Acyclicity check on a scratch buffer; entries are already in range and
/// self-loops surface as two-step cycles of the chain walk.
fn valid_parent_array(parents: &[u32], state: &mut [u8]) -> bool {
    state.fill(0);
    for start in 1..=parents.len() as u32 {
        if state[start as usize] != 0 {
            continue;
        }
        let mut x = start;
        let chain_from = x;
        loop {
            if x == 0 || state[x as usize] == 2 {
                break;
            }
            if state[x as usize] == 1 {
                return false;
            }
            state[x as usize] = 1;
            x = parents[x as usize - 1];
        }
        // Settle the chain; a second pass is cheaper than tracking it.
        let mut y = chain_from;
        while y != 0 && state[y as usize] == 1 {
            state[y as usize] = 2;
            y = parents[y as usize - 1];
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use forest_core::Kind;

    fn set(text: &str) -> PatternSet {
        PatternSet::parse(text, Kind::Classical).unwrap()
    }

    #[test]
    fn sampling_is_deterministic() {
        let job = SampleJob::new(set("213"), 5, 300, 42);
        let a = sample_statistics(&job).unwrap();
        let b = sample_statistics(&job).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.accepted, 300);
        assert!(a.attempts >= 300);
    }

    #[test]
    fn different_streams_differ_but_merge_cleanly() {
        let base = SampleJob::new(set("213"), 5, 400, 42);
        let a = sample_statistics(&base).unwrap();
        let b = sample_statistics(&base.clone().with_stream(1)).unwrap();
        assert_ne!(a.attempts, b.attempts);
        let ab = a.merge(&b).unwrap();
        let ba = b.merge(&a).unwrap();
        assert_eq!(ab, ba);
        assert_eq!(ab.accepted, 800);
        assert_eq!(ab.attempts, a.attempts + b.attempts);
    }

    #[test]
    fn merge_refuses_mismatched_runs() {
        let a = sample_statistics(&SampleJob::new(set("213"), 4, 10, 1)).unwrap();
        let b = sample_statistics(&SampleJob::new(set("213"), 5, 10, 1)).unwrap();
        assert!(matches!(a.merge(&b), Err(StatError::BadRequest(_))));
    }

    #[test]
    fn samples_are_valid_avoiding_forests() {
        let s = set("213");
        let job = SampleJob::new(s.clone(), 5, 200, 7);
        let report = sample_avoiding(&job, |f| {
            assert_eq!(f.n(), 5);
            assert!(f.avoids(&s));
        })
        .unwrap();
        assert_eq!(report.accepted, 200);
    }

    #[test]
    fn increasing_samples_are_rooted_at_component_minima() {
        // In a 21-avoiding forest labels increase downward, so every root
        // is the minimum of its component.
        let job = SampleJob::new(set("21"), 6, 1000, 9);
        sample_avoiding(&job, |f| {
            let mut minimum = vec![u32::MAX; f.n() + 1];
            for v in 1..=f.n() as u32 {
                let mut x = v;
                while f.parent(x) != 0 {
                    x = f.parent(x);
                }
                minimum[x as usize] = minimum[x as usize].min(v);
            }
            for root in f.roots() {
                assert_eq!(minimum[root as usize], root);
            }
        })
        .unwrap();
    }

    #[test]
    fn empty_vertex_set_accepts_immediately() {
        let job = SampleJob::new(set("213"), 0, 25, 3);
        let report = sample_statistics(&job).unwrap();
        assert_eq!(report.accepted, 25);
        assert_eq!(report.attempts, 25);
        let pmf = report.component_count_pmf().unwrap();
        assert_eq!(pmf.support(), &[0]);
        assert_eq!(pmf.sample_size(), Some(25));
    }

    #[test]
    fn sparse_classes_abort_on_the_rate_floor() {
        // {12, 21} leaves only the edgeless forest: one avoider among
        // 7^6 valid parent arrays, far below a 1e-3 floor.
        let job = SampleJob::new(set("12,21"), 6, 10_000, 5).with_rate_floor(1e-3);
        match sample_statistics(&job) {
            Err(StatError::AcceptanceRate { attempts, floor, .. }) => {
                assert_eq!(attempts % RATE_CHECK_INTERVAL, 0);
                assert_eq!(floor, 1e-3);
            }
            other => panic!("expected rate abort, got {:?}", other.map(|r| r.accepted)),
        }
    }

    #[test]
    fn zero_count_is_rejected() {
        assert!(matches!(
            sample_statistics(&SampleJob::new(set("21"), 3, 0, 1)),
            Err(StatError::BadRequest(_))
        ));
    }
}
