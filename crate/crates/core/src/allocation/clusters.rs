//! Cluster sizing and the cell-mode partition into one- and three-cell clusters.

use crate::error::{Constraint, PlanError, Result};
use crate::hexgrid::{neighbors, spiral_path, HexCoord, Tessellation};

/// Minimum number of clusters whose combined capacity covers `users`.
pub fn clusters_required(users: usize, capacity: usize) -> Result<usize> {
    if capacity < 1 {
        return Err(PlanError::invalid("capacity", capacity, "must be at least one channel"));
    }
    Ok(users.div_ceil(capacity))
}

/// Whether `n_c = i² + ij + j²` for some non-negative `i`, `j` not both zero.
pub fn is_valid_cluster_size(n_c: u64) -> bool {
    if n_c == 0 {
        return false;
    }
    // For fixed i the equation in j has discriminant 4n − 3i².
    let mut i = 0u64;
    while 3 * i * i <= 4 * n_c {
        let disc = 4 * n_c - 3 * i * i;
        let root = disc.isqrt();
        if root * root == disc && root >= i && (root - i).is_multiple_of(2) {
            return true;
        }
        i += 1;
    }
    false
}

/// Counts of three-cell (`triples`) and single-cell (`singles`) clusters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Partition {
    pub triples: usize,
    pub singles: usize,
}

impl Partition {
    pub fn clusters(&self) -> usize {
        self.triples + self.singles
    }

    /// Cell slots offered, `3x + y`.
    pub fn slots(&self) -> usize {
        3 * self.triples + self.singles
    }
}

/// Solve `3x + y ≥ cells`, `x + y = clusters` with the least `3x + y`.
pub fn partition_counts(num_cells: usize, num_clusters: usize) -> Result<Partition> {
    if num_cells < 1 || num_clusters < 1 {
        return Err(PlanError::invalid(
            "num_clusters",
            format!("{num_clusters} (cells {num_cells})"),
            "cells and clusters must both be at least one",
        ));
    }
    if 3 * num_clusters < num_cells {
        return Err(PlanError::Infeasible {
            constraint: Constraint::Coverage,
            detail: format!(
                "3x + y >= {num_cells} cannot hold with x + y = {num_clusters}: at most {} cells fit",
                3 * num_clusters
            ),
        });
    }
    let triples = num_cells.saturating_sub(num_clusters).div_ceil(2);
    Ok(Partition {
        triples,
        singles: num_clusters - triples,
    })
}

/// Cells of one cell-mode cluster. `phantom` holds positions outside the
/// tessellation that complete a triple on the rim; they carry no repeater.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterCells {
    pub cells: Vec<usize>,
    pub phantom: Vec<HexCoord>,
}

/// Lay the partition out over the spiral path: singles take the innermost
/// cells, then each triple takes the next three path cells, which are
/// always a connected triomino. Surplus slots become phantom cells on the rim.
pub fn partition_cells(tess: &Tessellation, num_clusters: usize) -> Result<(Partition, Vec<ClusterCells>)> {
    let partition = partition_counts(tess.len(), num_clusters)?;
    if num_clusters > tess.len() {
        return Err(PlanError::Infeasible {
            constraint: Constraint::Coverage,
            detail: format!(
                "{num_clusters} clusters need at least {num_clusters} cells, the tessellation has {}",
                tess.len()
            ),
        });
    }
    let path: Vec<usize> = spiral_path(tess.rings)
        .into_iter()
        .filter_map(|c| tess.index_of(c))
        .collect();
    if path.len() != tess.len() {
        return Err(PlanError::Document(
            "tessellation is not a full hexagon of rings".into(),
        ));
    }

    let mut out = Vec::with_capacity(num_clusters);
    let (singles, rest) = path.split_at(partition.singles);
    out.extend(singles.iter().map(|&c| ClusterCells {
        cells: vec![c],
        phantom: Vec::new(),
    }));
    for chunk in rest.chunks(3) {
        out.push(ClusterCells {
            cells: chunk.to_vec(),
            phantom: Vec::new(),
        });
    }
    if let Some(last) = out.last_mut().filter(|c| c.cells.len() < 3 && partition.triples > 0) {
        let mut tail = tess.cells[*last.cells.last().expect("non-empty chunk")].coord;
        while last.cells.len() + last.phantom.len() < 3 {
            let next = neighbors(tail)
                .into_iter()
                .filter(|c| !tess.contains(*c) && !last.phantom.contains(c))
                .min()
                .expect("rim cells have outside neighbors");
            last.phantom.push(next);
            tail = next;
        }
    }
    debug_assert_eq!(out.len(), num_clusters);
    Ok((partition, out))
}
