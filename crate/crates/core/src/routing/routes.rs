use std::collections::VecDeque;

use crate::allocation::{Mode, Plan};
use crate::error::{PlanError, Result};

const NONE: u32 = u32::MAX;

/// Repeaters visited by one call, source home repeater first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub hops: Vec<usize>,
}

impl Route {
    /// Radio transmissions from source user to destination user: the uplink
    /// plus one transmission per repeater.
    pub fn total_transmissions(&self) -> usize {
        self.hops.len() + 1
    }

    /// Repeater-to-repeater transmissions.
    pub fn links(&self) -> usize {
        self.hops.len().saturating_sub(1)
    }
}

/// Next-hop tables, one breadth-first tree per destination repeater.
#[derive(Debug, Clone)]
pub struct RoutingTable {
    n: usize,
    next: Vec<u32>,
    dist: Vec<u32>,
    excluded: Vec<Vec<usize>>,
}

/// Hop distances from `dst` over the tessellation graph, skipping `blocked`
/// cells. Unreachable cells get `None`.
pub fn bfs_distances(plan: &Plan, dst: usize, blocked: &[bool]) -> Vec<Option<u32>> {
    bfs(&adjacency(plan), dst, blocked)
}

fn adjacency(plan: &Plan) -> Vec<Vec<usize>> {
    let tess = &plan.tessellation;
    (0..tess.len()).map(|u| tess.neighbor_ids(u).collect()).collect()
}

fn bfs(adj: &[Vec<usize>], dst: usize, blocked: &[bool]) -> Vec<Option<u32>> {
    let mut dist = vec![None; adj.len()];
    dist[dst] = Some(0);
    let mut queue = VecDeque::from([dst]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].expect("queued cells have a distance");
        for &v in &adj[u] {
            if dist[v].is_none() && !blocked[v] {
                dist[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Cells a route towards `dst` may not pass through: in group mode, every
/// other cell carrying the destination's tone.
fn forbidden(plan: &Plan, dst: usize) -> Vec<bool> {
    let n = plan.tessellation.len();
    if plan.mode != Mode::Group {
        return vec![false; n];
    }
    let tone = plan.tone_of_repeater(dst);
    (0..n).map(|c| c != dst && plan.tone_of_repeater(c) == tone).collect()
}

pub fn build_routes(plan: &Plan) -> RoutingTable {
    let tess = &plan.tessellation;
    let n = tess.len();
    let mut next = vec![NONE; n * n];
    let mut dist = vec![NONE; n * n];
    let mut excluded = Vec::with_capacity(n);
    let adj = adjacency(plan);
    for dst in 0..n {
        let blocked = forbidden(plan, dst);
        let d = bfs(&adj, dst, &blocked);
        let row = dst * n;
        for u in 0..n {
            if let Some(du) = d[u] {
                dist[row + u] = du;
            }
        }
        for u in 0..n {
            if u == dst {
                continue;
            }
            // Excluded cells may still start a route; they just cannot relay.
            let target = match d[u] {
                Some(du) => Some(du - 1),
                None if blocked[u] => adj[u].iter().filter_map(|&v| d[v]).min(),
                None => None,
            };
            if let Some(t) = target {
                let hop = adj[u]
                    .iter()
                    .copied()
                    .filter(|&v| d[v] == Some(t))
                    .min_by_key(|&v| tess.cells[v].coord)
                    .expect("a neighbor lies one step closer");
                next[row + u] = hop as u32;
            }
        }
        excluded.push(
            blocked
                .iter()
                .enumerate()
                .filter(|(_, b)| **b)
                .map(|(c, _)| plan.cluster_of_cell(c))
                .collect(),
        );
    }
    RoutingTable {
        n,
        next,
        dist,
        excluded,
    }
}

impl RoutingTable {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn next_hop(&self, at: usize, dst: usize) -> Option<usize> {
        match self.next[dst * self.n + at] {
            NONE => None,
            v => Some(v as usize),
        }
    }

    /// Clusters a route to `dst` must avoid.
    pub fn excluded(&self, dst: usize) -> &[usize] {
        &self.excluded[dst]
    }

    pub fn route(&self, src: usize, dst: usize) -> Result<Route> {
        if src >= self.n || dst >= self.n {
            return Err(PlanError::invalid("repeater", src.max(dst), "no such repeater"));
        }
        let no_route = || PlanError::NoRoute {
            src,
            dst,
            excluded: self.excluded[dst].clone(),
        };
        let mut hops = vec![src];
        let mut at = src;
        while at != dst {
            at = self.next_hop(at, dst).ok_or_else(no_route)?;
            hops.push(at);
            if hops.len() > self.n {
                return Err(no_route());
            }
        }
        Ok(Route { hops })
    }

    /// Constrained hop count from a relaying cell, if reachable.
    pub fn distance(&self, at: usize, dst: usize) -> Option<u32> {
        match self.dist[dst * self.n + at] {
            NONE => None,
            d => Some(d),
        }
    }
}
