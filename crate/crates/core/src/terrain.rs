//! Mountains as disk obstacles, and the repeaters added to work around them.

use serde::{Deserialize, Serialize};

use crate::allocation::{PlTone, Plan};
use crate::error::{PlanError, Result};
use crate::hexgrid::{hex_center, hex_corners, rings_needed, spiral, Point, SQRT_3};

/// A flat-topped mountain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Obstacle {
    pub center: Point,
    #[serde(with = "crate::fixed")]
    pub radius: f64,
    #[serde(with = "crate::fixed")]
    pub height_m: f64,
}

impl Obstacle {
    pub fn new(center: Point, radius: f64, height_m: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(PlanError::invalid("radius", radius, "must be positive"));
        }
        if !(height_m.is_finite() && height_m >= 0.0) {
            return Err(PlanError::invalid("height_m", height_m, "must be non-negative"));
        }
        Ok(Obstacle {
            center,
            radius,
            height_m,
        })
    }

    pub fn contains(&self, p: Point) -> bool {
        self.center.distance(p) <= self.radius
    }

    /// Whether the segment `a`–`b` touches the disk.
    pub fn intersects_segment(&self, a: Point, b: Point) -> bool {
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let len2 = dx * dx + dy * dy;
        let t = if len2 == 0.0 {
            0.0
        } else {
            (((self.center.x - a.x) * dx + (self.center.y - a.y) * dy) / len2).clamp(0.0, 1.0)
        };
        self.contains(Point::new(a.x + t * dx, a.y + t * dy))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObstacleClass {
    NoEffect,
    Small,
    Large,
}

/// What the network is for: fixed emergency service or mobile users.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TerrainMode {
    Emergency,
    Mobile,
}

impl std::str::FromStr for TerrainMode {
    type Err = PlanError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "emergency" => Ok(TerrainMode::Emergency),
            "mobile" => Ok(TerrainMode::Mobile),
            _ => Err(PlanError::invalid("terrain mode", s, "expected emergency or mobile")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseLabel {
    EmergencySmall,
    EmergencyLarge,
    MobileSmall,
    MobileLarge,
    NoEffect,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AddedRepeater {
    pub position: Point,
    /// Coverage radius of the new antenna.
    #[serde(with = "crate::fixed")]
    pub radius: f64,
    /// Original repeater this one stands in for.
    pub replaces: Option<usize>,
    /// Original repeaters whose channels and PL tone are taken over.
    pub inherits: Vec<usize>,
    pub pl: Option<PlTone>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentationPlan {
    pub obstacle: Obstacle,
    pub mode: TerrainMode,
    pub class: ObstacleClass,
    pub case: CaseLabel,
    pub added: Vec<AddedRepeater>,
    /// Repeaters whose center lies on the obstacle.
    pub affected_cells: Vec<usize>,
    pub blocked_links: Vec<(usize, usize)>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AugmentOptions {
    /// Inner-division cell radius as a multiple of the plan's cell radius.
    pub inner_radius_factor: f64,
}

impl Default for AugmentOptions {
    fn default() -> Self {
        AugmentOptions {
            inner_radius_factor: 2.0,
        }
    }
}

/// Adjacent repeater pairs whose connecting segment meets the obstacle.
pub fn blocked_links(plan: &Plan, obstacle: &Obstacle) -> Vec<(usize, usize)> {
    let cells = &plan.tessellation.cells;
    plan.tessellation
        .adjacent_pairs()
        .into_iter()
        .filter(|&(a, b)| obstacle.intersects_segment(cells[a].center, cells[b].center))
        .collect()
}

/// Repeaters whose center sits on the obstacle.
pub fn covered_repeaters(plan: &Plan, obstacle: &Obstacle) -> Vec<usize> {
    plan.tessellation
        .cells
        .iter()
        .filter(|c| obstacle.contains(c.center))
        .map(|c| c.repeater_id)
        .collect()
}

pub fn classify(plan: &Plan, obstacle: &Obstacle) -> ObstacleClass {
    if obstacle.height_m <= plan.antenna_height_m {
        ObstacleClass::NoEffect
    } else if !covered_repeaters(plan, obstacle).is_empty() {
        ObstacleClass::Large
    } else if !blocked_links(plan, obstacle).is_empty() {
        ObstacleClass::Small
    } else {
        ObstacleClass::NoEffect
    }
}

pub fn augment(
    plan: &Plan,
    obstacle: &Obstacle,
    mode: TerrainMode,
    options: &AugmentOptions,
) -> Result<AugmentationPlan> {
    if !(options.inner_radius_factor.is_finite() && options.inner_radius_factor > 0.0) {
        return Err(PlanError::invalid(
            "inner_radius_factor",
            options.inner_radius_factor,
            "must be positive",
        ));
    }
    let class = classify(plan, obstacle);
    let mut out = AugmentationPlan {
        obstacle: *obstacle,
        mode,
        class,
        case: CaseLabel::NoEffect,
        added: Vec::new(),
        affected_cells: covered_repeaters(plan, obstacle),
        blocked_links: blocked_links(plan, obstacle),
        warnings: Vec::new(),
    };
    if class == ObstacleClass::NoEffect {
        out.affected_cells.clear();
        out.blocked_links.clear();
        return Ok(out);
    }
    match (mode, class) {
        (TerrainMode::Mobile, ObstacleClass::Small) => out.case = CaseLabel::MobileSmall,
        (TerrainMode::Mobile, _) => {
            out.case = CaseLabel::MobileLarge;
            relocate_covered(plan, obstacle, &mut out);
        }
        (TerrainMode::Emergency, ObstacleClass::Small) => {
            let reach = SQRT_3 * plan.tessellation.cell_radius;
            let within: Vec<usize> = plan
                .tessellation
                .cells
                .iter()
                .filter(|c| c.center.distance(obstacle.center) <= reach + 1e-9)
                .map(|c| c.repeater_id)
                .collect();
            if within.len() >= 2 {
                out.case = CaseLabel::EmergencySmall;
                let host = nearest_repeater(plan, obstacle.center);
                out.added.push(AddedRepeater {
                    position: obstacle.center,
                    radius: plan.tessellation.cell_radius,
                    replaces: None,
                    inherits: vec![host],
                    pl: Some(plan.tone_of_repeater(host)),
                    note: format!("summit relay reaching {} repeaters", within.len()),
                });
            } else {
                out.warnings.push(format!(
                    "summit repeater reaches {} repeater(s), fewer than 2; using inner division",
                    within.len()
                ));
                out.case = CaseLabel::EmergencyLarge;
                inner_division(plan, obstacle, options, &mut out)?;
            }
        }
        (TerrainMode::Emergency, _) => {
            out.case = CaseLabel::EmergencyLarge;
            inner_division(plan, obstacle, options, &mut out)?;
        }
    }
    Ok(out)
}

fn nearest_repeater(plan: &Plan, p: Point) -> usize {
    plan.tessellation
        .cells
        .iter()
        .min_by(|a, b| {
            a.center
                .distance(p)
                .total_cmp(&b.center.distance(p))
                .then(a.repeater_id.cmp(&b.repeater_id))
        })
        .map(|c| c.repeater_id)
        .expect("plan has cells")
}

/// Cover the obstacle with its own hexagonal grid of taller antennas. Each
/// displaced repeater hands its channels and tone to the nearest inner cell.
fn inner_division(
    plan: &Plan,
    obstacle: &Obstacle,
    options: &AugmentOptions,
    out: &mut AugmentationPlan,
) -> Result<()> {
    let r_in = plan.tessellation.cell_radius * options.inner_radius_factor;
    let rings = rings_needed(obstacle.radius, r_in)?;
    let centers: Vec<Point> = spiral(rings)
        .into_iter()
        .map(|c| {
            let p = hex_center(c, r_in)?;
            Ok(Point::new(obstacle.center.x + p.x, obstacle.center.y + p.y))
        })
        .collect::<Result<_>>()?;
    let mut displaced = out.affected_cells.clone();
    if displaced.is_empty() {
        displaced.push(nearest_repeater(plan, obstacle.center));
    }
    let mut inherits = vec![Vec::new(); centers.len()];
    for &id in &displaced {
        let p = plan.tessellation.cells[id].center;
        let k = (0..centers.len())
            .min_by(|&a, &b| centers[a].distance(p).total_cmp(&centers[b].distance(p)))
            .expect("at least one inner cell");
        inherits[k].push(id);
    }
    for (k, &center) in centers.iter().enumerate() {
        if inherits[k].is_empty() {
            let nearest = displaced
                .iter()
                .copied()
                .min_by(|&a, &b| {
                    let (pa, pb) = (plan.tessellation.cells[a].center, plan.tessellation.cells[b].center);
                    pa.distance(center).total_cmp(&pb.distance(center)).then(a.cmp(&b))
                })
                .expect("displaced is non-empty");
            inherits[k].push(nearest);
        }
        let inherited = std::mem::take(&mut inherits[k]);
        out.added.push(AddedRepeater {
            position: center,
            radius: r_in,
            replaces: None,
            pl: Some(plan.tone_of_repeater(inherited[0])),
            note: format!("inner division cell {k} of {}", centers.len()),
            inherits: inherited,
        });
    }
    Ok(())
}

/// Move every covered repeater to the closest point of its own hexagon
/// boundary that lies off the mountain.
fn relocate_covered(plan: &Plan, obstacle: &Obstacle, out: &mut AugmentationPlan) {
    for &id in &out.affected_cells {
        let cell = &plan.tessellation.cells[id];
        match nearest_boundary_point_outside(cell.center, cell.r, obstacle) {
            Some(position) => out.added.push(AddedRepeater {
                position,
                radius: cell.r,
                replaces: Some(id),
                inherits: vec![id],
                pl: Some(plan.tone_of_repeater(id)),
                note: "relocated off the mountain with original channels and PL tone".into(),
            }),
            None => out.warnings.push(format!(
                "cell {} lies entirely on the mountain; no boundary site",
                cell.coord
            )),
        }
    }
}

/// Closest point to `center` on the hexagon boundary that is not strictly
/// inside the obstacle disk.
pub fn nearest_boundary_point_outside(center: Point, r: f64, obstacle: &Obstacle) -> Option<Point> {
    let corners = hex_corners(center, r);
    let mut best: Option<(f64, Point)> = None;
    for i in 0..6 {
        let (a, b) = (corners[i], corners[(i + 1) % 6]);
        for t in allowed_candidates(a, b, center, obstacle) {
            let p = Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
            let d = p.distance(center);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, p));
            }
        }
    }
    best.map(|(_, p)| p)
}

/// Candidate parameters on segment `a`–`b`: the foot of the perpendicular
/// from `target` when it is off the disk, otherwise the ends of the part of
/// the segment inside the disk.
fn allowed_candidates(a: Point, b: Point, target: Point, obstacle: &Obstacle) -> Vec<f64> {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let foot = (((target.x - a.x) * dx + (target.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    // |a + t·d − c|² = ρ²
    let (fx, fy) = (a.x - obstacle.center.x, a.y - obstacle.center.y);
    let bq = 2.0 * (fx * dx + fy * dy);
    let cq = fx * fx + fy * fy - obstacle.radius * obstacle.radius;
    let disc = bq * bq - 4.0 * len2 * cq;
    if disc <= 0.0 {
        return vec![foot];
    }
    let root = disc.sqrt();
    let (t1, t2) = ((-bq - root) / (2.0 * len2), (-bq + root) / (2.0 * len2));
    if foot <= t1 || foot >= t2 {
        return vec![foot];
    }
    [t1, t2].into_iter().filter(|t| (0.0..=1.0).contains(t)).collect()
}
