use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::manifest::ClipManifest;
use crate::error::{Error, Result};
use crate::fusion::Sample;
use crate::math;

/// Clip ids per partition; `labeled` and `unlabeled` partition `train`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SplitSpec {
    pub seed: u64,
    pub train: Vec<String>,
    pub val: Vec<String>,
    pub test: Vec<String>,
    pub labeled: Vec<String>,
    pub unlabeled: Vec<String>,
}

/// Integer sizes summing to `n`, by largest remainder (ties to the earlier set).
fn apportion(n: usize, ratios: &[f64]) -> Vec<usize> {
    let exact: Vec<f64> = ratios.iter().map(|r| r * n as f64).collect();
    let mut sizes: Vec<usize> = exact
        .iter()
        .map(|e| math::floor(*e + 1e-9) as usize)
        .collect();
    let assigned: usize = sizes.iter().sum();
    let mut order: Vec<usize> = (0..ratios.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = exact[a] - sizes[a] as f64;
        let rb = exact[b] - sizes[b] as f64;
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &k in order.iter().take(n.saturating_sub(assigned)) {
        sizes[k] += 1;
    }
    sizes
}

/// Seeded train/val/test split with a labeled subset of train.
///
/// Sizes follow the ratios by largest remainder. With `speaker_exclusive`,
/// whole speakers are dealt out (largest first) to the set furthest below
/// its target, every set with a positive ratio receiving at least one.
pub fn split_fractional(
    manifest: &ClipManifest,
    ratios: (f64, f64, f64),
    labeled_fraction: f64,
    speaker_exclusive: bool,
    seed: u64,
) -> Result<SplitSpec> {
    let r = [ratios.0, ratios.1, ratios.2];
    if r.iter().any(|v| !(*v >= 0.0)) || (r.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(
            "split ratios must be non-negative and sum to 1".into(),
        ));
    }
    if !(0.0..=1.0).contains(&labeled_fraction) {
        return Err(Error::OutOfRange {
            value: labeled_fraction,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = manifest.len();
    let targets = apportion(n, &r);
    let mut sets: [Vec<String>; 3] = Default::default();

    if speaker_exclusive {
        let mut by_speaker: BTreeMap<&str, Vec<String>> = BTreeMap::new();
        for rec in manifest.records() {
            by_speaker
                .entry(rec.speaker_id.as_str())
                .or_default()
                .push(rec.clip_id.clone());
        }
        let mut groups: Vec<Vec<String>> = by_speaker.into_values().collect();
        let wanted: Vec<usize> = (0..3).filter(|&k| r[k] > 0.0).collect();
        if groups.len() < wanted.len() {
            return Err(Error::InsufficientSpeakers {
                speakers: groups.len(),
                sets: wanted.len(),
            });
        }
        groups.shuffle(&mut rng);
        groups.sort_by_key(|g| core::cmp::Reverse(g.len()));
        let total = groups.len();
        for (idx, mut group) in groups.into_iter().enumerate() {
            let empty: Vec<usize> = wanted
                .iter()
                .copied()
                .filter(|&k| sets[k].is_empty())
                .collect();
            let pool = if total - idx <= empty.len() {
                &empty
            } else {
                &wanted
            };
            let k = *pool
                .iter()
                .max_by(|&&a, &&b| {
                    let da = targets[a] as f64 - sets[a].len() as f64;
                    let db = targets[b] as f64 - sets[b].len() as f64;
                    da.total_cmp(&db).then(b.cmp(&a))
                })
                .expect("at least one wanted set");
            sets[k].append(&mut group);
        }
    } else {
        let mut ids: Vec<String> = manifest
            .records()
            .iter()
            .map(|r| r.clip_id.clone())
            .collect();
        ids.shuffle(&mut rng);
        let mut rest = ids.into_iter();
        for (k, size) in targets.iter().enumerate() {
            sets[k] = rest.by_ref().take(*size).collect();
        }
    }

    let [train, val, test] = sets;
    let mut shuffled = train.clone();
    shuffled.shuffle(&mut rng);
    let n_lab = math::round(labeled_fraction * train.len() as f64) as usize;
    let unlabeled = shuffled.split_off(n_lab);
    Ok(SplitSpec {
        seed,
        train,
        val,
        test,
        labeled: shuffled,
        unlabeled,
    })
}

/// Samples routed to their partitions; unlabeled samples lose their targets.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PartitionedSamples {
    pub labeled: Vec<Sample>,
    pub unlabeled: Vec<Sample>,
    pub val: Vec<Sample>,
    pub test: Vec<Sample>,
}

fn id_set(ids: &[String]) -> BTreeSet<&str> {
    ids.iter().map(String::as_str).collect()
}

/// Routes samples by clip id; samples not named in the split are ignored.
pub fn apply_split(samples: &[Sample], split: &SplitSpec) -> PartitionedSamples {
    let (lab, unl, val, test) = (
        id_set(&split.labeled),
        id_set(&split.unlabeled),
        id_set(&split.val),
        id_set(&split.test),
    );
    let mut out = PartitionedSamples::default();
    for s in samples {
        let id = s.clip_id.as_str();
        if lab.contains(id) {
            out.labeled.push(s.clone());
        } else if unl.contains(id) {
            out.unlabeled.push(s.clone().unlabeled());
        } else if val.contains(id) {
            out.val.push(s.clone());
        } else if test.contains(id) {
            out.test.push(s.clone());
        }
    }
    out
}
