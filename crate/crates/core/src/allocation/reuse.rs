use std::collections::BTreeMap;

use super::{PlTone, Plan};

/// Two clusters that share a tone.
#[derive(Debug, Clone, PartialEq)]
pub struct ReusePair {
    pub a: usize,
    pub b: usize,
    pub tone: PlTone,
    /// Centroid distance in miles.
    pub distance: f64,
}

/// Result of the same-tone distance check.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReuseReport {
    /// Closest same-tone pair distance; `None` when every tone is unique.
    pub min_distance: Option<f64>,
    pub closest: Option<ReusePair>,
    /// Pairs below the plan's reuse floor, closest first.
    pub violations: Vec<ReusePair>,
}

/// Pairwise check over all clusters sharing a tone, using cluster centroids.
pub fn check_reuse_distance(plan: &Plan) -> ReuseReport {
    let mut by_tone: BTreeMap<PlTone, Vec<usize>> = BTreeMap::new();
    for c in &plan.clusters {
        by_tone.entry(c.pl).or_default().push(c.id);
    }
    let centroids: Vec<_> = (0..plan.clusters.len()).map(|c| plan.cluster_centroid(c)).collect();
    let mut report = ReuseReport::default();
    for (&tone, ids) in &by_tone {
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let pair = ReusePair {
                    a,
                    b,
                    tone,
                    distance: centroids[a].distance(centroids[b]),
                };
                if report.closest.as_ref().is_none_or(|c| order(&pair, c).is_lt()) {
                    report.closest = Some(pair.clone());
                }
                if pair.distance < plan.reuse_min_miles {
                    report.violations.push(pair);
                }
            }
        }
    }
    report.violations.sort_by(order);
    report.min_distance = report.closest.as_ref().map(|p| p.distance);
    report
}

fn order(x: &ReusePair, y: &ReusePair) -> std::cmp::Ordering {
    x.distance
        .total_cmp(&y.distance)
        .then(x.a.cmp(&y.a))
        .then(x.b.cmp(&y.b))
}
