use std::collections::{HashMap, HashSet};

use super::groups::{realize_groups, ToneTemplate};
use super::{
    build_channel_table, build_groups, check_reuse_distance, clusters_required, is_valid_cluster_size, partition_cells,
    ChannelTable, Cluster, Group, GroupCode, GroupKind, Mode, Partition, PlTone, UserId,
};
use crate::config::Config;
use crate::coverage::effective_radius;
use crate::error::{Constraint, PlanError, Result};
use crate::hexgrid::{tessellate, Point, Tessellation, SQRT_3};
use crate::terrain::AugmentationPlan;

/// A complete network design.
#[derive(Debug, Clone)]
pub struct Plan {
    pub mode: Mode,
    pub users_requested: usize,
    pub antenna_height_m: f64,
    pub tessellation: Tessellation,
    pub channel_table: ChannelTable,
    pub clusters: Vec<Cluster>,
    /// Empty in cell mode.
    pub groups: Vec<Group>,
    pub users: Vec<UserId>,
    pub reuse_min_miles: f64,
    pub pl_catalog_size: u16,
    pub clusters_required: usize,
    /// Cell-mode split into three-cell and one-cell clusters.
    pub partition: Option<Partition>,
    /// Group-mode tone template stride.
    pub tone_stride: Option<i64>,
    pub augmentations: Vec<AugmentationPlan>,
    pub warnings: Vec<String>,
    index: PlanIndex,
}

#[derive(Debug, Clone, Default)]
struct PlanIndex {
    cell_cluster: Vec<usize>,
    cluster_group: Vec<Option<usize>>,
    by_identity: HashMap<(Option<GroupCode>, PlTone), usize>,
    users: HashMap<UserId, usize>,
}

/// Headline counts of a plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanSummary {
    pub mode: Mode,
    pub cells: usize,
    pub repeaters: usize,
    pub channels: usize,
    pub clusters: usize,
    pub clusters_required: usize,
    pub tones_used: usize,
    pub group_codes: usize,
    pub big_composites: usize,
    pub small_groups: usize,
    pub partition: Option<Partition>,
    pub users: usize,
}

impl std::fmt::Display for PlanSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} mode: {} repeaters, {} clusters ({} required), {} channels, {} PL tones",
            self.mode, self.repeaters, self.clusters, self.clusters_required, self.channels, self.tones_used
        )?;
        if let Some(p) = self.partition {
            write!(f, ", {} triple + {} single clusters", p.triples, p.singles)?;
        }
        if self.mode == Mode::Group {
            write!(
                f,
                ", {} big composites + {} small groups, {} group codes",
                self.big_composites, self.small_groups, self.group_codes
            )?;
        }
        write!(f, ", {} users", self.users)
    }
}

impl Plan {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        mode: Mode,
        users_requested: usize,
        antenna_height_m: f64,
        tessellation: Tessellation,
        channel_table: ChannelTable,
        clusters: Vec<Cluster>,
        groups: Vec<Group>,
        reuse_min_miles: f64,
        pl_catalog_size: u16,
        clusters_required: usize,
        partition: Option<Partition>,
        tone_stride: Option<i64>,
    ) -> Self {
        let mut plan = Plan {
            mode,
            users_requested,
            antenna_height_m,
            tessellation,
            channel_table,
            clusters,
            groups,
            users: Vec::new(),
            reuse_min_miles,
            pl_catalog_size,
            clusters_required,
            partition,
            tone_stride,
            augmentations: Vec::new(),
            warnings: Vec::new(),
            index: PlanIndex::default(),
        };
        plan.reindex();
        plan
    }

    /// Rebuild lookup tables after clusters, groups or users change.
    pub fn reindex(&mut self) {
        let mut cell_cluster = vec![usize::MAX; self.tessellation.len()];
        for c in &self.clusters {
            for &cell in &c.cells {
                if let Some(slot) = cell_cluster.get_mut(cell) {
                    *slot = c.id;
                }
            }
        }
        let mut cluster_group = vec![None; self.clusters.len()];
        for (g, group) in self.groups.iter().enumerate() {
            for &c in &group.clusters {
                if let Some(slot) = cluster_group.get_mut(c) {
                    *slot = Some(g);
                }
            }
        }
        self.index.cell_cluster = cell_cluster;
        self.index.cluster_group = cluster_group;
        self.index.by_identity = self
            .clusters
            .iter()
            .map(|c| ((self.gc_of_cluster(c.id), c.pl), c.id))
            .collect();
        self.index.users = self.users.iter().enumerate().map(|(i, u)| (*u, i)).collect();
    }

    pub fn cluster_of_cell(&self, repeater: usize) -> usize {
        self.index.cell_cluster[repeater]
    }

    pub fn group_of_cluster(&self, cluster: usize) -> Option<&Group> {
        self.index
            .cluster_group
            .get(cluster)
            .copied()
            .flatten()
            .map(|g| &self.groups[g])
    }

    pub fn gc_of_cluster(&self, cluster: usize) -> Option<GroupCode> {
        self.group_of_cluster(cluster).map(|g| g.gc)
    }

    pub fn tone_of_repeater(&self, repeater: usize) -> PlTone {
        self.clusters[self.cluster_of_cell(repeater)].pl
    }

    /// Mean position of a cluster's repeaters.
    pub fn cluster_centroid(&self, cluster: usize) -> Point {
        let cells = &self.clusters[cluster].cells;
        let n = cells.len() as f64;
        let (x, y) = cells.iter().fold((0.0, 0.0), |(x, y), &id| {
            let p = self.tessellation.cells[id].center;
            (x + p.x, y + p.y)
        });
        Point::new(x / n, y / n)
    }

    pub fn capacity(&self) -> usize {
        self.clusters.len() * self.channel_table.len()
    }

    pub fn user_index(&self, user: &UserId) -> Option<usize> {
        self.index.users.get(user).copied()
    }

    pub fn cluster_of_user(&self, user: &UserId) -> Result<usize> {
        self.index
            .by_identity
            .get(&(user.gc, user.pl))
            .copied()
            .filter(|_| self.channel_table.index_of(user.channel).is_some())
            .ok_or_else(|| PlanError::UnknownUser(user.to_string()))
    }

    /// Repeater serving a user: the user's channel index picks one of the
    /// cluster's cells, so a cluster's users spread over its repeaters.
    pub fn home_repeater(&self, user: &UserId) -> Result<usize> {
        let cluster = &self.clusters[self.cluster_of_user(user)?];
        let ch = self
            .channel_table
            .index_of(user.channel)
            .ok_or_else(|| PlanError::UnknownUser(user.to_string()))?;
        Ok(cluster.cells[ch % cluster.cells.len()])
    }

    pub fn summary(&self) -> PlanSummary {
        let tones: HashSet<_> = self.clusters.iter().map(|c| c.pl).collect();
        PlanSummary {
            mode: self.mode,
            cells: self.tessellation.len(),
            repeaters: self.tessellation.len(),
            channels: self.channel_table.len(),
            clusters: self.clusters.len(),
            clusters_required: self.clusters_required,
            tones_used: tones.len(),
            group_codes: self.groups.len(),
            big_composites: self
                .groups
                .iter()
                .filter(|g| g.kind == GroupKind::Big54 && g.composite.is_some())
                .count(),
            small_groups: self
                .groups
                .iter()
                .filter(|g| g.kind == GroupKind::Small7 && g.composite.is_none())
                .count(),
            partition: self.partition,
            users: self.users.len(),
        }
    }

    /// Check the structural invariants of a plan.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(PlanError::Document(msg));
        let mut seen = vec![false; self.tessellation.len()];
        for (i, c) in self.clusters.iter().enumerate() {
            if c.id != i {
                return fail(format!("cluster {i} has id {}", c.id));
            }
            if c.cells.is_empty() || !is_valid_cluster_size(c.size() as u64) {
                return fail(format!("cluster {i} has invalid size {}", c.size()));
            }
            if c.pl.0 == 0 || c.pl.0 > self.pl_catalog_size {
                return fail(format!("cluster {i} uses {} outside the catalog", c.pl));
            }
            for &cell in &c.cells {
                match seen.get_mut(cell) {
                    Some(s) if !*s => *s = true,
                    _ => return fail(format!("cell {cell} is missing or assigned twice")),
                }
            }
        }
        if let Some(cell) = seen.iter().position(|s| !s) {
            return fail(format!("cell {cell} belongs to no cluster"));
        }
        if self.mode == Mode::Group {
            let mut grouped = vec![false; self.clusters.len()];
            for g in &self.groups {
                if g.clusters.len() > g.kind.size() {
                    return fail(format!("group {} holds {} clusters", g.gc, g.clusters.len()));
                }
                if g.kind == GroupKind::Big54 && g.clusters.len() != g.kind.size() {
                    return fail(format!("54-group {} holds {} clusters", g.gc, g.clusters.len()));
                }
                let mut tones = HashSet::new();
                for &c in &g.clusters {
                    if c >= grouped.len() || std::mem::replace(&mut grouped[c], true) {
                        return fail(format!("cluster {c} is missing or in two groups"));
                    }
                    if !tones.insert(self.clusters[c].pl) {
                        return fail(format!("group {} repeats {}", g.gc, self.clusters[c].pl));
                    }
                }
            }
            if let Some(c) = grouped.iter().position(|g| !g) {
                return fail(format!("cluster {c} belongs to no group"));
            }
        } else {
            let tones: HashSet<_> = self.clusters.iter().map(|c| c.pl).collect();
            if tones.len() != self.clusters.len() {
                return fail("cell-mode clusters must have distinct tones".into());
            }
        }
        let mut load = vec![0usize; self.clusters.len()];
        let mut ids = HashSet::new();
        for u in &self.users {
            if !ids.insert(*u) {
                return fail(format!("duplicate user id {u}"));
            }
            load[self.cluster_of_user(u)?] += 1;
        }
        if load.iter().any(|&l| l > self.channel_table.len()) {
            return fail("a cluster holds more users than channels".into());
        }
        let report = check_reuse_distance(self);
        if !report.violations.is_empty() {
            return Err(PlanError::ReuseViolation {
                min_miles: self.reuse_min_miles,
                pairs: report.violations,
            });
        }
        Ok(())
    }
}

/// Assign PL tones to every cluster and verify the reuse distance.
pub fn assign_pl_tones(plan: &mut Plan) -> Result<()> {
    match plan.mode {
        Mode::Cell => {
            let available = usize::from(plan.pl_catalog_size);
            if plan.clusters.len() > available {
                return Err(PlanError::ToneExhaustion {
                    needed: plan.clusters.len(),
                    available,
                });
            }
            for (i, c) in plan.clusters.iter_mut().enumerate() {
                c.pl = PlTone(i as u16 + 1);
            }
        }
        Mode::Group => {
            let stride = plan
                .tone_stride
                .ok_or_else(|| PlanError::Document("group-mode plan has no tone stride".into()))?;
            let template = ToneTemplate::new(stride)
                .ok_or_else(|| PlanError::Document(format!("stride {stride} is not a valid tone template")))?;
            for c in plan.clusters.iter_mut() {
                c.pl = template.tone(plan.tessellation.cells[c.cells[0]].coord);
            }
        }
    }
    plan.reindex();
    let report = check_reuse_distance(plan);
    if report.violations.is_empty() {
        Ok(())
    } else {
        Err(PlanError::ReuseViolation {
            min_miles: plan.reuse_min_miles,
            pairs: report.violations,
        })
    }
}

pub fn build_plan(config: &Config) -> Result<Plan> {
    config.validate()?;
    let antenna = config.antenna();
    // Stored to micro-mile precision so documents reload to identical geometry.
    let r = (effective_radius(&antenna)? * 1e6).round() / 1e6;
    if let Some(cap) = config.coverage_cap_miles {
        let limit = antenna.physical_limit()?;
        if cap > limit {
            return Err(PlanError::Infeasible {
                constraint: Constraint::Coverage,
                detail: format!(
                    "coverage cap {cap} mi exceeds the {limit:.3} mi line-of-sight limit of a {} m antenna",
                    config.antenna_height_m
                ),
            });
        }
    }
    let tess = tessellate(config.area_radius_miles, r)?;
    let mut warnings = Vec::new();
    let reach = tess.len() as f64 * 1.5 * SQRT_3 * r * r;
    let disk = std::f64::consts::PI * config.area_radius_miles.powi(2);
    if reach < disk {
        warnings.push(format!(
            "{} cells of radius {r} mi cover at most {reach:.1} sq mi, less than the {disk:.1} sq mi service disk",
            tess.len()
        ));
    }
    let table = build_channel_table(config.f_lo, config.f_hi, config.delta_f)?;
    let required = clusters_required(config.users, table.len())?;
    let mode = config.resolve_mode(table.len());
    let catalog = usize::from(config.pl_catalog_size);

    let (clusters, groups, partition, stride) = match mode {
        Mode::Cell => {
            let wanted = required.max(tess.len().div_ceil(3)).max(1);
            if wanted > catalog {
                return Err(PlanError::ToneExhaustion {
                    needed: wanted,
                    available: catalog,
                });
            }
            let (partition, layout) = partition_cells(&tess, wanted)?;
            let clusters = layout
                .into_iter()
                .enumerate()
                .map(|(id, c)| Cluster {
                    id,
                    cells: c.cells,
                    phantom: c.phantom,
                    pl: PlTone(0),
                })
                .collect();
            (clusters, Vec::new(), Some(partition), None)
        }
        Mode::Group => {
            if catalog < super::BIG_GROUP_SIZE {
                return Err(PlanError::ToneExhaustion {
                    needed: super::BIG_GROUP_SIZE,
                    available: catalog,
                });
            }
            if required > tess.len() {
                return Err(PlanError::Infeasible {
                    constraint: Constraint::Channels,
                    detail: format!(
                        "{} users need {required} clusters of {} channels, the layout has {} cells",
                        config.users,
                        table.len(),
                        tess.len()
                    ),
                });
            }
            let assignment = realize_groups(&tess)?;
            warnings.extend(assignment.warnings);
            let clusters = tess
                .cells
                .iter()
                .map(|cell| Cluster {
                    id: cell.repeater_id,
                    cells: vec![cell.repeater_id],
                    phantom: Vec::new(),
                    pl: PlTone(0),
                })
                .collect();
            let groups = assignment
                .groups
                .into_iter()
                .enumerate()
                .map(|(i, g)| Group {
                    gc: i as GroupCode + 1,
                    kind: g.kind,
                    composite: g.composite,
                    clusters: g.cells,
                })
                .collect();
            (clusters, groups, None, Some(assignment.template.stride()))
        }
    };

    let mut plan = Plan::from_parts(
        mode,
        config.users,
        config.antenna_height_m,
        tess,
        table,
        clusters,
        groups,
        config.reuse_min_miles,
        config.pl_catalog_size,
        required,
        partition,
        stride,
    );
    plan.warnings = warnings;
    if mode == Mode::Group {
        let layout = build_groups(plan.clusters.len())?;
        if layout.padded {
            plan.warnings
                .push("cluster count is not a whole number of groups; last group is undersized".into());
        }
    }
    assign_pl_tones(&mut plan)?;
    plan.users = super::assign_users(&plan, config.users)?;
    plan.reindex();
    Ok(plan)
}
