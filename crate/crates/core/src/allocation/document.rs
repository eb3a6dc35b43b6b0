//! Versioned JSON form of a [`Plan`].

use serde::{Deserialize, Serialize};

use super::{build_channel_table, Cluster, Frequency, Group, GroupKind, Mode, Partition, PlTone, Plan, UserId};
use crate::error::{PlanError, Result};
use crate::hexgrid::{HexCoord, Tessellation};
use crate::terrain::AugmentationPlan;

pub const PLAN_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanDoc {
    version: u32,
    mode: Mode,
    band: BandDoc,
    delta_f: Frequency,
    #[serde(with = "crate::fixed")]
    service_radius_miles: f64,
    #[serde(with = "crate::fixed")]
    cell_radius_miles: f64,
    rings: u32,
    #[serde(with = "crate::fixed")]
    antenna_height_m: f64,
    users_requested: usize,
    #[serde(with = "crate::fixed")]
    reuse_min_miles: f64,
    pl_catalog_size: u16,
    clusters_required: usize,
    partition: Option<Partition>,
    tone_stride: Option<i64>,
    cells: Vec<CellDoc>,
    clusters: Vec<ClusterDoc>,
    groups: Vec<GroupDoc>,
    users: Vec<UserId>,
    #[serde(default)]
    augmentations: Vec<AugmentationPlan>,
    #[serde(default)]
    warnings: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BandDoc {
    f_lo: Frequency,
    f_hi: Frequency,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDoc {
    q: i32,
    s: i32,
    #[serde(with = "crate::fixed")]
    x: f64,
    #[serde(with = "crate::fixed")]
    y: f64,
    #[serde(with = "crate::fixed")]
    r: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClusterDoc {
    id: usize,
    cells: Vec<usize>,
    pl: PlTone,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    phantom: Vec<HexCoord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDoc {
    gc: u32,
    kind: GroupKind,
    composite: Option<usize>,
    clusters: Vec<usize>,
}

impl Plan {
    pub fn to_json(&self) -> Result<String> {
        let doc = PlanDoc {
            version: PLAN_SCHEMA_VERSION,
            mode: self.mode,
            band: BandDoc {
                f_lo: self.channel_table.f_lo,
                f_hi: self.channel_table.f_hi,
            },
            delta_f: self.channel_table.delta_f,
            service_radius_miles: self.tessellation.service_radius,
            cell_radius_miles: self.tessellation.cell_radius,
            rings: self.tessellation.rings,
            antenna_height_m: self.antenna_height_m,
            users_requested: self.users_requested,
            reuse_min_miles: self.reuse_min_miles,
            pl_catalog_size: self.pl_catalog_size,
            clusters_required: self.clusters_required,
            partition: self.partition,
            tone_stride: self.tone_stride,
            cells: self
                .tessellation
                .cells
                .iter()
                .map(|c| CellDoc {
                    q: c.coord.q,
                    s: c.coord.s,
                    x: c.center.x,
                    y: c.center.y,
                    r: c.r,
                })
                .collect(),
            clusters: self
                .clusters
                .iter()
                .map(|c| ClusterDoc {
                    id: c.id,
                    cells: c.cells.clone(),
                    pl: c.pl,
                    phantom: c.phantom.clone(),
                })
                .collect(),
            groups: self
                .groups
                .iter()
                .map(|g| GroupDoc {
                    gc: g.gc,
                    kind: g.kind,
                    composite: g.composite,
                    clusters: g.clusters.clone(),
                })
                .collect(),
            users: self.users.clone(),
            augmentations: self.augmentations.clone(),
            warnings: self.warnings.clone(),
        };
        let mut out = serde_json::to_string_pretty(&doc)?;
        out.push('\n');
        Ok(out)
    }

    /// Parse and validate a plan document.
    pub fn from_json(text: &str) -> Result<Plan> {
        let doc: PlanDoc = serde_json::from_str(text)?;
        if doc.version != PLAN_SCHEMA_VERSION {
            return Err(PlanError::Document(format!(
                "unsupported plan version {} (expected {PLAN_SCHEMA_VERSION})",
                doc.version
            )));
        }
        let table = build_channel_table(doc.band.f_lo.mhz(), doc.band.f_hi.mhz(), doc.delta_f.mhz())?;
        let coords: Vec<HexCoord> = doc.cells.iter().map(|c| HexCoord::new(c.q, c.s)).collect();
        let mut tess = Tessellation::from_coords(&coords, doc.service_radius_miles, doc.cell_radius_miles)?;
        tess.rings = doc.rings;
        let clusters = doc
            .clusters
            .into_iter()
            .map(|c| Cluster {
                id: c.id,
                cells: c.cells,
                phantom: c.phantom,
                pl: c.pl,
            })
            .collect();
        let groups = doc
            .groups
            .into_iter()
            .map(|g| Group {
                gc: g.gc,
                kind: g.kind,
                composite: g.composite,
                clusters: g.clusters,
            })
            .collect();
        let mut plan = Plan::from_parts(
            doc.mode,
            doc.users_requested,
            doc.antenna_height_m,
            tess,
            table,
            clusters,
            groups,
            doc.reuse_min_miles,
            doc.pl_catalog_size,
            doc.clusters_required,
            doc.partition,
            doc.tone_stride,
        );
        plan.users = doc.users;
        plan.augmentations = doc.augmentations;
        plan.warnings = doc.warnings;
        plan.reindex();
        plan.validate()?;
        Ok(plan)
    }
}
