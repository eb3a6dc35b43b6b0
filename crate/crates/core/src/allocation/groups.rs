//! Group-mode layout: 61-cluster composites (a 54-tone group plus a
//! 7-tone group), margin groups of seven, and the periodic PL-tone template
//! that keeps same-tone clusters at least three cells apart.
//!
//! Tones come from a linear colouring of the axial lattice. A cell's residue
//! is `(q + stride·s) mod 61`; the 61 residues map onto 54 tones, with the
//! seven residues of the flower three cells east of the origin repeating the
//! tones of the central flower. Same-tone cells therefore differ by a vector
//! of the residue lattice or of its coset through `(3, 0)`, and the stride is
//! only accepted when both have squared length at least 9.

use std::collections::BTreeSet;

use super::PlTone;
use crate::error::{PlanError, Result};
use crate::hexgrid::{ring_cells, HexCoord, Point, Tessellation, DIRECTIONS};

pub const COMPOSITE_SIZE: usize = 61;
pub const BIG_GROUP_SIZE: usize = 54;
pub const SMALL_GROUP_SIZE: usize = 7;

/// Offset between the central flower and the flower that reuses its tones.
pub const SMALL_FLOWER_OFFSET: HexCoord = HexCoord::new(3, 0);

/// Minimum squared lattice length between same-tone cells.
pub const MIN_REUSE_NORM: i64 = 9;

/// Generator of the hexagonal super-lattice of 61-cell hexagons.
const SUPER_LATTICE: HexCoord = HexCoord::new(5, 4);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Big54,
    Small7,
}

impl GroupKind {
    pub fn size(self) -> usize {
        match self {
            GroupKind::Big54 => BIG_GROUP_SIZE,
            GroupKind::Small7 => SMALL_GROUP_SIZE,
        }
    }
}

/// Group counts for a number of clusters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GroupLayout {
    /// Big54 + Small7 pairs, two group codes each.
    pub composites: usize,
    /// A Big54 without its Small7 partner (0 or 1).
    pub standalone_big: usize,
    /// Small7 groups outside composites.
    pub small_groups: usize,
    /// The last small group holds fewer than seven clusters.
    pub padded: bool,
}

impl GroupLayout {
    pub fn group_codes(&self) -> usize {
        2 * self.composites + self.standalone_big + self.small_groups
    }

    pub fn clusters(&self) -> usize {
        COMPOSITE_SIZE * self.composites + BIG_GROUP_SIZE * self.standalone_big
    }
}

/// Pack composites first, then seven-cluster groups for the remainder.
pub fn build_groups(num_clusters: usize) -> Result<GroupLayout> {
    if num_clusters < 1 {
        return Err(PlanError::invalid("num_clusters", num_clusters, "must be at least one"));
    }
    let composites = num_clusters / COMPOSITE_SIZE;
    let mut rest = num_clusters % COMPOSITE_SIZE;
    let standalone_big = usize::from(rest >= BIG_GROUP_SIZE);
    rest -= standalone_big * BIG_GROUP_SIZE;
    Ok(GroupLayout {
        composites,
        standalone_big,
        small_groups: rest.div_ceil(SMALL_GROUP_SIZE),
        padded: !rest.is_multiple_of(SMALL_GROUP_SIZE),
    })
}

/// The central flower in a fixed order: center, then the six neighbors.
fn flower() -> [HexCoord; 7] {
    let mut out = [HexCoord::ORIGIN; 7];
    out[1..].copy_from_slice(&DIRECTIONS);
    out
}

/// Residue-to-tone map for one stride.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToneTemplate {
    stride: i64,
    tones: [PlTone; COMPOSITE_SIZE],
    small: [bool; COMPOSITE_SIZE],
}

impl ToneTemplate {
    /// `None` when the two flowers do not land on 14 distinct residues or
    /// same-tone cells could come closer than three cells.
    pub fn new(stride: i64) -> Option<Self> {
        let stride = stride.rem_euclid(COMPOSITE_SIZE as i64);
        let residue = |c: HexCoord| residue_of(stride, c);
        let central: Vec<usize> = flower().iter().map(|&d| residue(d)).collect();
        let copies: Vec<usize> = flower().iter().map(|&d| residue(SMALL_FLOWER_OFFSET + d)).collect();
        let distinct: BTreeSet<_> = central.iter().chain(&copies).collect();
        if distinct.len() != 2 * SMALL_GROUP_SIZE {
            return None;
        }
        if lattice_min_norm(stride, 0) < MIN_REUSE_NORM
            || lattice_min_norm(stride, residue(SMALL_FLOWER_OFFSET)) < MIN_REUSE_NORM
        {
            return None;
        }

        let mut tones = [PlTone(0); COMPOSITE_SIZE];
        let mut small = [false; COMPOSITE_SIZE];
        for (i, (&c, &s)) in central.iter().zip(&copies).enumerate() {
            tones[c] = PlTone(i as u16 + 1);
            tones[s] = PlTone(i as u16 + 1);
            small[s] = true;
        }
        let mut next = SMALL_GROUP_SIZE as u16 + 1;
        let mut k = 0;
        while next as usize <= BIG_GROUP_SIZE {
            for c in ring_cells(k) {
                let r = residue(c);
                if tones[r].0 == 0 {
                    tones[r] = PlTone(next);
                    next += 1;
                }
            }
            k += 1;
        }
        Some(ToneTemplate { stride, tones, small })
    }

    pub fn stride(&self) -> i64 {
        self.stride
    }

    pub fn residue(&self, c: HexCoord) -> usize {
        residue_of(self.stride, c)
    }

    pub fn tone(&self, c: HexCoord) -> PlTone {
        self.tones[self.residue(c)]
    }

    /// Whether the cell belongs to a composite's seven-tone group.
    pub fn is_small(&self, c: HexCoord) -> bool {
        self.small[self.residue(c)]
    }

    /// Squared lattice length of the closest possible same-tone pair.
    pub fn min_reuse_norm(&self) -> i64 {
        lattice_min_norm(self.stride, 0).min(lattice_min_norm(self.stride, self.residue(SMALL_FLOWER_OFFSET)))
    }

    /// Squared lattice length between cells with the same residue.
    pub fn repeat_norm(&self) -> i64 {
        lattice_min_norm(self.stride, 0)
    }

    /// Every stride that yields a valid template.
    pub fn candidates() -> Vec<ToneTemplate> {
        (0..COMPOSITE_SIZE as i64).filter_map(ToneTemplate::new).collect()
    }
}

fn residue_of(stride: i64, c: HexCoord) -> usize {
    (i64::from(c.q) + stride * i64::from(c.s)).rem_euclid(COMPOSITE_SIZE as i64) as usize
}

/// Smallest squared length of a non-zero vector with the given residue.
fn lattice_min_norm(stride: i64, target: usize) -> i64 {
    const SPAN: i32 = 12;
    let mut best = i64::MAX;
    for q in -SPAN..=SPAN {
        for s in -SPAN..=SPAN {
            let v = HexCoord::new(q, s);
            if v != HexCoord::ORIGIN && residue_of(stride, v) == target {
                best = best.min(v.norm_sq());
            }
        }
    }
    best
}

/// A realized group: member cells (repeater ids) and bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RealizedGroup {
    pub kind: GroupKind,
    pub composite: Option<usize>,
    pub cells: Vec<usize>,
}

#[derive(Debug, Clone)]
pub(crate) struct GroupAssignment {
    pub template: ToneTemplate,
    pub groups: Vec<RealizedGroup>,
    pub warnings: Vec<String>,
}

/// Composite anchors: super-lattice points nearest the origin.
fn anchors(count: usize, r: f64) -> Vec<Point> {
    if count == 0 {
        return Vec::new();
    }
    let a = SUPER_LATTICE;
    let b = a.rotate();
    let span = (count as f64).sqrt().ceil() as i32 + 2;
    let mut pts = Vec::new();
    for u in -span..=span {
        for v in -span..=span {
            let c = a.scale(u) + b.scale(v);
            let p = crate::hexgrid::hex_center(c, r).expect("positive radius");
            pts.push((c.norm_sq(), angle(p), c));
        }
    }
    pts.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.total_cmp(&y.1)).then(x.2.cmp(&y.2)));
    pts.into_iter()
        .take(count)
        .map(|(_, _, c)| crate::hexgrid::hex_center(c, r).expect("positive radius"))
        .collect()
}

fn angle(p: Point) -> f64 {
    let a = p.y.atan2(p.x);
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// Choose the stride that supports the most composites, then lay out groups.
pub(crate) fn realize_groups(tess: &Tessellation) -> Result<GroupAssignment> {
    let layout = build_groups(tess.len())?;
    let (template, classes, supported) = ToneTemplate::candidates()
        .into_iter()
        .map(|t| {
            let mut classes = vec![Vec::new(); COMPOSITE_SIZE];
            for cell in &tess.cells {
                classes[t.residue(cell.coord)].push(cell.repeater_id);
            }
            let fewest = classes.iter().map(Vec::len).min().unwrap_or(0);
            let supported = layout.composites.min(fewest);
            (t, classes, supported)
        })
        .max_by(|x, y| {
            x.2.cmp(&y.2)
                .then(x.0.min_reuse_norm().cmp(&y.0.min_reuse_norm()))
                .then(x.0.repeat_norm().cmp(&y.0.repeat_norm()))
                .then(y.0.stride().cmp(&x.0.stride()))
        })
        .expect("at least one stride is valid");

    let mut warnings = Vec::new();
    if supported < layout.composites {
        warnings.push(format!(
            "tessellation supports {supported} complete composites instead of {}",
            layout.composites
        ));
    }

    let composites = supported;
    let anchor_pts = anchors(composites + 1, tess.cell_radius);
    let rank = |id: usize| (tess.cells[id].coord.ring(), id);
    let d2 = |id: usize, p: Point| {
        let c = tess.cells[id].center;
        (c.x - p.x).powi(2) + (c.y - p.y).powi(2)
    };

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); composites];
    let mut leftover = Vec::new();
    for class in &classes {
        let mut class = class.clone();
        class.sort_by_key(|&id| rank(id));
        let (keep, rest) = class.split_at(composites);
        leftover.extend_from_slice(rest);
        let mut pairs: Vec<(f64, usize, usize)> = keep
            .iter()
            .flat_map(|&id| (0..composites).map(move |j| (id, j)))
            .map(|(id, j)| (d2(id, anchor_pts[j]), j, id))
            .collect();
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
        let mut taken_anchor = vec![false; composites];
        let mut taken_cell = BTreeSet::new();
        for (_, j, id) in pairs {
            if !taken_anchor[j] && !taken_cell.contains(&id) {
                taken_anchor[j] = true;
                taken_cell.insert(id);
                members[j].push(id);
            }
        }
    }

    let mut groups = Vec::new();
    for (j, cells) in members.into_iter().enumerate() {
        let (small, big): (Vec<usize>, Vec<usize>) = cells
            .into_iter()
            .partition(|&id| template.is_small(tess.cells[id].coord));
        groups.push(RealizedGroup {
            kind: GroupKind::Big54,
            composite: Some(j),
            cells: sorted(big),
        });
        groups.push(RealizedGroup {
            kind: GroupKind::Small7,
            composite: Some(j),
            cells: sorted(small),
        });
    }

    if layout.standalone_big == 1 && composites == layout.composites {
        let anchor = anchor_pts[composites];
        let mut chosen = Vec::with_capacity(BIG_GROUP_SIZE);
        for tone in 1..=BIG_GROUP_SIZE as u16 {
            let best = leftover
                .iter()
                .copied()
                .filter(|&id| template.tone(tess.cells[id].coord).0 == tone)
                .min_by(|&x, &y| d2(x, anchor).total_cmp(&d2(y, anchor)).then(x.cmp(&y)));
            match best {
                Some(id) => chosen.push(id),
                None => break,
            }
        }
        if chosen.len() == BIG_GROUP_SIZE {
            leftover.retain(|id| !chosen.contains(id));
            groups.push(RealizedGroup {
                kind: GroupKind::Big54,
                composite: None,
                cells: sorted(chosen),
            });
        } else {
            warnings.push("leftover clusters do not cover all 54 tones; no standalone 54-group".into());
        }
    }

    let margin = margin_groups(tess, &template, leftover);
    let realized_small = margin.len();
    if let Some(short) = margin.iter().find(|g| g.len() < SMALL_GROUP_SIZE) {
        warnings.push(format!(
            "margin group with {} clusters is below the nominal size of {SMALL_GROUP_SIZE}",
            short.len()
        ));
    }
    groups.extend(margin.into_iter().map(|cells| RealizedGroup {
        kind: GroupKind::Small7,
        composite: None,
        cells: sorted(cells),
    }));

    if composites == layout.composites && realized_small != layout.small_groups {
        warnings.push(format!(
            "{realized_small} margin groups formed where {} were expected",
            layout.small_groups
        ));
    }
    Ok(GroupAssignment {
        template,
        groups,
        warnings,
    })
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Sweep leftover cells by angle around the origin, filling groups of seven
/// with distinct tones.
fn margin_groups(tess: &Tessellation, template: &ToneTemplate, mut cells: Vec<usize>) -> Vec<Vec<usize>> {
    cells.sort_by(|&a, &b| {
        let (pa, pb) = (tess.cells[a].center, tess.cells[b].center);
        angle(pa)
            .total_cmp(&angle(pb))
            .then(pa.norm().total_cmp(&pb.norm()))
            .then(a.cmp(&b))
    });
    let tone = |id: usize| template.tone(tess.cells[id].coord);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for id in cells {
        let fits = |g: &Vec<usize>| g.len() < SMALL_GROUP_SIZE && g.iter().all(|&m| tone(m) != tone(id));
        let slot = match groups.last() {
            Some(g) if fits(g) => Some(groups.len() - 1),
            _ => groups.iter().position(fits),
        };
        match slot {
            Some(i) => groups[i].push(id),
            None => groups.push(vec![id]),
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::tessellate;
    use std::collections::HashSet;

    #[test]
    fn layout_examples() {
        let l = build_groups(469).unwrap();
        assert_eq!((l.composites, l.standalone_big, l.small_groups), (7, 0, 6));
        assert!(!l.padded);
        assert_eq!(l.group_codes(), 20);

        let l = build_groups(61).unwrap();
        assert_eq!((l.composites, l.small_groups, l.group_codes()), (1, 0, 2));

        let l = build_groups(54).unwrap();
        assert_eq!(
            (l.composites, l.standalone_big, l.small_groups, l.group_codes()),
            (0, 1, 0, 1)
        );

        let l = build_groups(10).unwrap();
        assert_eq!((l.small_groups, l.padded), (2, true));
        assert!(build_groups(0).is_err());
    }

    #[test]
    fn hexagonal_super_lattice_is_a_candidate() {
        let t = ToneTemplate::new(14).expect("stride 14 tiles 61-cell hexagons");
        assert_eq!(t.min_reuse_norm(), 9);
        // The ring-4 hexagon is a fundamental domain: every residue once.
        let residues: HashSet<_> = crate::hexgrid::spiral(4).into_iter().map(|c| t.residue(c)).collect();
        assert_eq!(residues.len(), COMPOSITE_SIZE);
    }

    #[test]
    fn template_uses_54_tones_with_central_reuse() {
        for t in ToneTemplate::candidates() {
            let tones: HashSet<_> = t.tones.iter().copied().collect();
            assert_eq!(tones.len(), BIG_GROUP_SIZE);
            assert!(t.tones.iter().all(|p| (1..=54).contains(&p.0)));
            for (i, d) in flower().into_iter().enumerate() {
                assert_eq!(t.tone(d).0 as usize, i + 1);
                assert_eq!(t.tone(SMALL_FLOWER_OFFSET + d), t.tone(d));
                assert!(t.is_small(SMALL_FLOWER_OFFSET + d));
            }
            assert!(t.min_reuse_norm() >= MIN_REUSE_NORM);
        }
    }

    #[test]
    fn same_tone_cells_are_three_apart() {
        for t in ToneTemplate::candidates() {
            let cells = crate::hexgrid::spiral(10);
            for (i, &a) in cells.iter().enumerate() {
                for &b in &cells[i + 1..] {
                    if t.tone(a) == t.tone(b) {
                        assert!((b - a).norm_sq() >= MIN_REUSE_NORM, "stride {}", t.stride());
                    }
                }
            }
        }
    }

    #[test]
    fn realize_469() {
        let tess = tessellate(40.0, 2.0).unwrap();
        let a = realize_groups(&tess).unwrap();
        assert!(a.warnings.is_empty(), "{:?}", a.warnings);
        let big = a.groups.iter().filter(|g| g.kind == GroupKind::Big54).count();
        let composites = a.groups.iter().filter(|g| g.composite.is_some()).count() / 2;
        let margin = a
            .groups
            .iter()
            .filter(|g| g.composite.is_none() && g.kind == GroupKind::Small7)
            .count();
        assert_eq!((big, composites, margin), (7, 7, 6));
        let mut all = HashSet::new();
        for g in &a.groups {
            assert_eq!(g.cells.len(), g.kind.size());
            let tones: HashSet<_> = g
                .cells
                .iter()
                .map(|&id| a.template.tone(tess.cells[id].coord))
                .collect();
            assert_eq!(tones.len(), g.cells.len());
            for &id in &g.cells {
                assert!(all.insert(id));
            }
        }
        assert_eq!(all.len(), 469);
    }

    #[test]
    fn single_hexagon_forms_one_composite() {
        let tess = tessellate(14.0, 2.0).unwrap();
        assert_eq!(tess.len(), 61);
        let a = realize_groups(&tess).unwrap();
        assert_eq!(a.template.stride(), 14);
        assert_eq!(a.groups.len(), 2);
        assert_eq!(a.groups[0].cells.len(), 54);
        assert_eq!(a.groups[1].cells.len(), 7);
    }
}
