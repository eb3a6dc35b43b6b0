//! Axial hexagonal geometry.
//!
//! Cells use pointy-top axial coordinates `(q, s)`. A cell's repeater sits at
//! its center; the coverage disk of radius `r` is the hexagon's circumcircle,
//! so adjacent repeaters are `√3·r` apart.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{PlanError, Result};

pub const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Axial offsets of the six neighbors, walked counter-clockwise from east.
pub const DIRECTIONS: [HexCoord; 6] = [
    HexCoord::new(1, 0),
    HexCoord::new(1, -1),
    HexCoord::new(0, -1),
    HexCoord::new(-1, 0),
    HexCoord::new(-1, 1),
    HexCoord::new(0, 1),
];

/// Planar point in statute miles.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    #[serde(with = "crate::fixed")]
    pub x: f64,
    #[serde(with = "crate::fixed")]
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct HexCoord {
    pub q: i32,
    pub s: i32,
}

impl HexCoord {
    pub const ORIGIN: HexCoord = HexCoord { q: 0, s: 0 };

    pub const fn new(q: i32, s: i32) -> Self {
        HexCoord { q, s }
    }

    /// Hex distance from the origin.
    pub fn ring(self) -> u32 {
        (self.q.unsigned_abs() + self.s.unsigned_abs() + (self.q + self.s).unsigned_abs()) / 2
    }

    /// Squared lattice length in units of the center spacing.
    pub fn norm_sq(self) -> i64 {
        let (q, s) = (i64::from(self.q), i64::from(self.s));
        q * q + q * s + s * s
    }

    /// Rotate 60° counter-clockwise about the origin.
    pub fn rotate(self) -> Self {
        HexCoord::new(-self.s, self.q + self.s)
    }

    pub fn scale(self, k: i32) -> Self {
        HexCoord::new(self.q * k, self.s * k)
    }
}

impl std::ops::Add for HexCoord {
    type Output = HexCoord;
    fn add(self, o: HexCoord) -> HexCoord {
        HexCoord::new(self.q + o.q, self.s + o.s)
    }
}

impl std::ops::Sub for HexCoord {
    type Output = HexCoord;
    fn sub(self, o: HexCoord) -> HexCoord {
        HexCoord::new(self.q - o.q, self.s - o.s)
    }
}

impl fmt::Display for HexCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q, self.s)
    }
}

/// One hexagonal tile and its repeater.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub coord: HexCoord,
    pub center: Point,
    pub r: f64,
    pub repeater_id: usize,
}

impl Cell {
    /// Distance to adjacent repeaters, i.e. the reach of an amplified signal.
    pub fn relay_reach(&self) -> f64 {
        SQRT_3 * self.r
    }

    /// Hexagon vertices, counter-clockwise starting at the top-right corner.
    pub fn corners(&self) -> [Point; 6] {
        hex_corners(self.center, self.r)
    }
}

/// Vertices of a pointy-top hexagon with circumradius `r`.
pub fn hex_corners(center: Point, r: f64) -> [Point; 6] {
    std::array::from_fn(|i| {
        let angle = std::f64::consts::PI / 180.0 * (60.0 * i as f64 + 30.0);
        Point::new(center.x + r * angle.cos(), center.y + r * angle.sin())
    })
}

#[derive(Debug, Clone)]
pub struct Tessellation {
    pub cells: Vec<Cell>,
    pub service_radius: f64,
    pub cell_radius: f64,
    pub rings: u32,
    index: HashMap<HexCoord, usize>,
}

impl Tessellation {
    /// Build from an explicit cell list; repeater ids are reassigned to the
    /// list order.
    pub fn from_coords(coords: &[HexCoord], service_radius: f64, cell_radius: f64) -> Result<Self> {
        check_positive("cell_radius", cell_radius)?;
        let mut cells = Vec::with_capacity(coords.len());
        let mut index = HashMap::with_capacity(coords.len());
        for (id, &coord) in coords.iter().enumerate() {
            if index.insert(coord, id).is_some() {
                return Err(PlanError::Document(format!("duplicate cell {coord}")));
            }
            cells.push(Cell {
                coord,
                center: hex_center(coord, cell_radius)?,
                r: cell_radius,
                repeater_id: id,
            });
        }
        let rings = coords.iter().map(|c| c.ring()).max().unwrap_or(0);
        Ok(Tessellation {
            cells,
            service_radius,
            cell_radius,
            rings,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, coord: HexCoord) -> Option<usize> {
        self.index.get(&coord).copied()
    }

    pub fn contains(&self, coord: HexCoord) -> bool {
        self.index.contains_key(&coord)
    }

    /// Repeater ids of the tessellation neighbors of `id`, in direction order.
    pub fn neighbor_ids(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        neighbors(self.cells[id].coord)
            .into_iter()
            .filter_map(|c| self.index_of(c))
    }

    /// Every adjacent pair `(a, b)` with `a < b`.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for a in 0..self.cells.len() {
            for b in self.neighbor_ids(a) {
                if a < b {
                    pairs.push((a, b));
                }
            }
        }
        pairs.sort_unstable();
        pairs
    }

    /// The cell whose hexagon contains `p`, if it is part of the tessellation.
    pub fn locate(&self, p: Point) -> Option<usize> {
        self.index_of(point_to_hex(p, self.cell_radius))
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(PlanError::invalid(name, v, "must be a positive finite number"))
    }
}

pub fn hex_center(coord: HexCoord, r: f64) -> Result<Point> {
    check_positive("r", r)?;
    Ok(Point::new(
        SQRT_3 * r * (f64::from(coord.q) + f64::from(coord.s) / 2.0),
        1.5 * r * f64::from(coord.s),
    ))
}

/// Inverse of [`hex_center`]: the axial cell whose hexagon contains `p`.
pub fn point_to_hex(p: Point, r: f64) -> HexCoord {
    let fq = (SQRT_3 / 3.0 * p.x - p.y / 3.0) / r;
    let fs = (2.0 / 3.0 * p.y) / r;
    let fz = -fq - fs;
    let (mut q, mut s, z) = (fq.round(), fs.round(), fz.round());
    let (dq, ds, dz) = ((q - fq).abs(), (s - fs).abs(), (z - fz).abs());
    if dq > ds && dq > dz {
        q = -s - z;
    } else if ds > dz {
        s = -q - z;
    }
    HexCoord::new(q as i32, s as i32)
}

/// Smallest ring count `n` with `r·√(3n² + 1) ≥ R`.
pub fn rings_needed(service_radius: f64, r: f64) -> Result<u32> {
    check_positive("R", service_radius)?;
    check_positive("r", r)?;
    let covers = |n: u32| r * (3.0 * f64::from(n).powi(2) + 1.0).sqrt() >= service_radius;
    let ratio = service_radius / r;
    let estimate = ((ratio * ratio - 1.0) / 3.0).max(0.0).sqrt().ceil();
    if estimate > 1e6 {
        return Err(PlanError::invalid(
            "R",
            service_radius,
            "too many rings for the cell radius",
        ));
    }
    let mut n = estimate as u32;
    while !covers(n) {
        n += 1;
    }
    while n > 0 && covers(n - 1) {
        n -= 1;
    }
    Ok(n)
}

pub fn neighbors(coord: HexCoord) -> [HexCoord; 6] {
    DIRECTIONS.map(|d| coord + d)
}

pub fn hex_distance(a: HexCoord, b: HexCoord) -> u32 {
    (b - a).ring()
}

/// Cells at exactly hex distance `k` from the origin, as a closed walk:
/// consecutive entries are adjacent and the last is adjacent to the first.
pub fn ring_cells(k: u32) -> Vec<HexCoord> {
    if k == 0 {
        return vec![HexCoord::ORIGIN];
    }
    let k = k as i32;
    let mut out = Vec::with_capacity(6 * k as usize);
    let mut cur = DIRECTIONS[4].scale(k);
    for dir in DIRECTIONS {
        for _ in 0..k {
            out.push(cur);
            cur = cur + dir;
        }
    }
    out
}

/// All cells with ring ≤ `max_ring`, ring by ring.
pub fn spiral(max_ring: u32) -> Vec<HexCoord> {
    (0..=max_ring).flat_map(ring_cells).collect()
}

/// A path through every cell with ring ≤ `max_ring` in which consecutive
/// cells are adjacent. Each ring is entered next to where the previous one
/// ended and then walked once around.
pub fn spiral_path(max_ring: u32) -> Vec<HexCoord> {
    let mut path = vec![HexCoord::ORIGIN];
    for k in 1..=max_ring {
        let ring = ring_cells(k);
        let last = *path.last().expect("path starts at origin");
        let entry = ring
            .iter()
            .position(|&c| hex_distance(c, last) == 1)
            .expect("every cell has a neighbor in the next ring");
        path.extend(ring[entry..].iter().chain(&ring[..entry]));
    }
    path
}

/// Tessellate the service disk: every cell within `rings_needed(R, r)` rings.
pub fn tessellate(service_radius: f64, r: f64) -> Result<Tessellation> {
    let rings = rings_needed(service_radius, r)?;
    let mut t = Tessellation::from_coords(&spiral(rings), service_radius, r)?;
    t.rings = rings;
    Ok(t)
}

/// Number of cells in `k` rings around a center cell.
pub fn centered_hex_number(k: u32) -> usize {
    let k = k as usize;
    1 + 3 * k * (k + 1)
}
