//! Interval classification driver: enumerate all intervals of a given
//! length in a group, deduplicate them through the store chain, and
//! audit the results.
//!
//! The scan only visits intervals whose top stays in the lower half of
//! the length range; the rest of each class is reached through the
//! order-reversing map `x -> x·w0`, so new classes are inserted
//! together with their duals.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::group::{Element, Group, GroupError};
use crate::invariant::{match_interval, StoreChain, StoreError};
use crate::iso::{certificate, find_isomorphism, Certificate};
use crate::order::{dual, interval, leq, Interval, IntervalKey};

/// Per-length statistics of a classification run.
#[derive(Clone, Debug, Default)]
pub struct LengthStats {
    pub length: usize,
    pub scanned: usize,
    pub new_classes: usize,
    pub matcher_calls: u64,
}

/// A classification of one group up to a maximum interval length.
pub struct ClassificationRun {
    pub group: Group,
    pub max_length: usize,
    pub chain: StoreChain,
    pub stats: Vec<LengthStats>,
}

impl ClassificationRun {
    pub fn class_count(&self, length: usize) -> usize {
        self.chain.class_count(length)
    }
}

/// Largest top length scanned directly when classifying length `n`
/// intervals; everything above it is covered by duality.
///
/// With bound `B = floor((len(w0) + n) / 2)`, any interval with
/// `len(v) > B` has a dual whose top length `len(w0) + n - len(v)` is
/// at most `B`, so the direct scan plus duals covers every class.
pub fn scan_bound(g: Group, n: usize) -> usize {
    (g.longest_element().length() + n) / 2
}

/// Scan pairs `(u, v)` at distance `n` with `len(v) <= scan_bound`, in
/// scan order: (bottom length, bottom window, top window).
pub fn scan_pairs(g: Group, n: usize) -> Result<Vec<(Element, Element)>, GroupError> {
    scan_pairs_bounded(g, n, Some(scan_bound(g, n)))
}

fn scan_pairs_bounded(
    g: Group,
    n: usize,
    bound: Option<usize>,
) -> Result<Vec<(Element, Element)>, GroupError> {
    let by_length = g.elements_by_length()?;
    let max_len = by_length.len() - 1;
    let mut pairs = Vec::new();
    for lu in 0..=max_len.saturating_sub(n) {
        let lv = lu + n;
        if let Some(b) = bound {
            if lv > b {
                break;
            }
        }
        for u in &by_length[lu] {
            for v in &by_length[lv] {
                if leq(u, v) {
                    pairs.push((u.clone(), v.clone()));
                }
            }
        }
    }
    Ok(pairs)
}

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// Classifies all length-`n` intervals of the group into the chain.
///
/// Interval materialization is partitioned across `jobs` workers; the
/// classification itself inserts candidates sequentially in scan order,
/// so the resulting stores are identical for any worker count.
pub fn classify_length(
    g: Group,
    n: usize,
    chain: &mut StoreChain,
    jobs: usize,
) -> Result<LengthStats, ClassifyError> {
    let pairs = scan_pairs(g, n)?;
    let intervals = materialize(&pairs, jobs);
    let matcher_calls_before = chain.matcher_calls;
    let mut stats = LengthStats {
        length: n,
        scanned: intervals.len(),
        ..LengthStats::default()
    };
    for iv in intervals {
        let result = chain.classify(&iv)?;
        if result.newly_inserted {
            stats.new_classes += 1;
            let d = Arc::new(dual(&iv));
            let dual_result = chain.classify(&d)?;
            if dual_result.newly_inserted {
                stats.new_classes += 1;
            }
        }
    }
    stats.matcher_calls = chain.matcher_calls - matcher_calls_before;
    Ok(stats)
}

fn materialize(pairs: &[(Element, Element)], jobs: usize) -> Vec<Arc<Interval>> {
    let build = |(u, v): &(Element, Element)| {
        Arc::new(interval(u, v).expect("scan pairs are comparable"))
    };
    if jobs <= 1 {
        pairs.iter().map(build).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool");
        pool.install(|| pairs.par_iter().map(build).collect())
    }
}

/// Classifies lengths `1..=max_length` in scan order.
pub fn classify_up_to(
    g: Group,
    max_length: usize,
    jobs: usize,
) -> Result<ClassificationRun, ClassifyError> {
    let mut chain = StoreChain::new();
    let mut stats = Vec::with_capacity(max_length);
    for n in 1..=max_length {
        stats.push(classify_length(g, n, &mut chain, jobs)?);
    }
    Ok(ClassificationRun {
        group: g,
        max_length,
        chain,
        stats,
    })
}

/// Classifies every length-1 and length-2 interval of the group, with
/// no scan bound, fixing a classifying map for each.
pub fn base_stores(g: Group, chain: &mut StoreChain) -> Result<(), ClassifyError> {
    for n in [1, 2] {
        for (u, v) in scan_pairs_bounded(g, n, None)? {
            let iv = chain.get_interval(&u, &v).map_err(StoreError::from)?;
            chain.classify(&iv)?;
        }
    }
    Ok(())
}

/// A pair of non-isomorphic same-length classes whose coatom
/// subinterval class multisets coincide.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub length: usize,
    pub first: IntervalKey,
    pub second: IntervalKey,
}

/// Audits whether the coatom class multiset alone separates classes:
/// returns every pair of distinct representatives at lengths
/// `2..=max_length` with equal multisets. An empty result means the
/// multiset is a complete invariant for the scanned group and range.
pub fn conjecture_counterexamples(chain: &StoreChain, max_length: usize) -> Vec<Counterexample> {
    let mut out = Vec::new();
    for n in 2..=max_length {
        let reps = chain.reps(n);
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                if reps[i].class_multiset == reps[j].class_multiset {
                    out.push(Counterexample {
                        length: n,
                        first: reps[i].interval.key(),
                        second: reps[j].interval.key(),
                    });
                }
            }
        }
    }
    out
}

/// Verdict for one pair in a representative list audit.
#[derive(Clone, Debug)]
pub struct PairFinding {
    pub first: usize,
    pub second: usize,
    pub isomorphic: bool,
}

/// Report of a pairwise distinctness audit over a list of intervals.
#[derive(Debug, Default)]
pub struct VerifyReport {
    pub intervals: usize,
    pub pairs: usize,
    /// Pairs proven distinct by certificate bucketing alone.
    pub separated_by_certificate: usize,
    /// Pairs with equal certificates, decided by the matcher and the
    /// isomorphism oracle.
    pub checked: Vec<PairFinding>,
    /// Isomorphic pairs: the list fails the audit if any exist.
    pub collisions: Vec<(usize, usize)>,
    /// Pairs where matcher and oracle disagreed; always empty unless
    /// the invariant machinery is broken.
    pub disagreements: Vec<(usize, usize)>,
}

impl VerifyReport {
    pub fn all_distinct(&self) -> bool {
        self.collisions.is_empty() && self.disagreements.is_empty()
    }
}

/// Checks pairwise non-isomorphism of the given intervals.
///
/// Certificates bucket the list first; only pairs sharing a bucket are
/// handed to the matcher, cross-checked against the search oracle.
pub fn verify_representatives(intervals: &[Arc<Interval>]) -> VerifyReport {
    let mut report = VerifyReport {
        intervals: intervals.len(),
        pairs: intervals.len() * intervals.len().saturating_sub(1) / 2,
        ..VerifyReport::default()
    };
    let certs: Vec<Certificate> = intervals.iter().map(|iv| certificate(iv)).collect();
    let mut buckets: HashMap<&Certificate, Vec<usize>> = HashMap::new();
    for (i, c) in certs.iter().enumerate() {
        buckets.entry(c).or_default().push(i);
    }
    let mut chain = StoreChain::new();
    for members in buckets.values() {
        for (pos, &i) in members.iter().enumerate() {
            for &j in &members[pos + 1..] {
                let (i, j) = (i.min(j), i.max(j));
                let by_matcher = match_interval(&mut chain, &intervals[i], &intervals[j])
                    .expect("classification cannot fail on materialized intervals")
                    .is_some();
                let by_oracle = find_isomorphism(&intervals[i], &intervals[j]).is_some();
                report.checked.push(PairFinding {
                    first: i,
                    second: j,
                    isomorphic: by_matcher,
                });
                if by_matcher != by_oracle {
                    report.disagreements.push((i, j));
                }
                if by_matcher || by_oracle {
                    report.collisions.push((i, j));
                }
            }
        }
    }
    report.separated_by_certificate = report.pairs - report.checked.len();
    report
}
