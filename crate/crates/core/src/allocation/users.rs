use super::{Plan, UserId};
use crate::error::{PlanError, Result};

/// Hand out identities round-robin over clusters: user `k` joins cluster
/// `k mod N` on channel `k div N`, so loads differ by at most one.
pub fn assign_users(plan: &Plan, user_count: usize) -> Result<Vec<UserId>> {
    let capacity = plan.capacity();
    if user_count > capacity {
        return Err(PlanError::Capacity {
            requested: user_count,
            capacity,
        });
    }
    let n = plan.clusters.len();
    Ok((0..user_count)
        .map(|k| {
            let cluster = &plan.clusters[k % n];
            UserId {
                gc: plan.gc_of_cluster(cluster.id),
                pl: cluster.pl,
                channel: plan.channel_table.channels[k / n],
            }
        })
        .collect())
}
