//! Channel table, clusters, groups, PL tones and user identities.

mod channels;
mod clusters;
mod document;
mod groups;
mod plan;
mod reuse;
mod users;

use std::fmt;

use serde::{Deserialize, Serialize};

pub(crate) use channels::check_in_band;
pub use channels::{build_channel_table, ChannelTable, Frequency, BAND_CEILING, BAND_FLOOR, DUPLEX_OFFSET};
pub use clusters::{
    clusters_required, is_valid_cluster_size, partition_cells, partition_counts, ClusterCells, Partition,
};
pub use document::PLAN_SCHEMA_VERSION;
pub use groups::{
    build_groups, GroupKind, GroupLayout, ToneTemplate, BIG_GROUP_SIZE, COMPOSITE_SIZE, SMALL_GROUP_SIZE,
};
pub use plan::{assign_pl_tones, build_plan, Plan, PlanSummary};
pub use reuse::{check_reuse_distance, ReusePair, ReuseReport};
pub use users::assign_users;

use crate::hexgrid::HexCoord;

/// CTCSS tone, as an index into the tone catalog (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlTone(pub u16);

impl fmt::Display for PlTone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL{}", self.0)
    }
}

pub type GroupCode = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// One PL tone per cluster of one or three cells.
    Cell,
    /// Every cell is its own cluster; group codes separate tone reuse.
    Group,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Cell => "cell",
            Mode::Group => "group",
        })
    }
}

/// A user's identity: characteristic channel plus PL tone, and group code
/// in group mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UserId {
    pub gc: Option<GroupCode>,
    pub pl: PlTone,
    pub channel: Frequency,
}

impl fmt::Display for UserId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.gc {
            Some(gc) => write!(f, "{gc}:{}:{}", self.pl.0, self.channel),
            None => write!(f, "-:{}:{}", self.pl.0, self.channel),
        }
    }
}

impl std::str::FromStr for UserId {
    type Err = crate::PlanError;

    /// Parses `GC:PL:MHZ`, with `-` for the group code in cell mode.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || crate::PlanError::UnknownUser(format!("cannot parse `{s}`, expected GC:PL:MHZ"));
        let mut parts = s.split(':');
        let (Some(gc), Some(pl), Some(ch), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let gc = match gc {
            "-" | "" => None,
            g => Some(g.parse().map_err(|_| bad())?),
        };
        Ok(UserId {
            gc,
            pl: PlTone(pl.parse().map_err(|_| bad())?),
            channel: Frequency::from_mhz(ch.parse().map_err(|_| bad())?).map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub id: usize,
    /// Repeater ids of member cells.
    pub cells: Vec<usize>,
    /// Rim positions that complete the cluster shape without a repeater.
    pub phantom: Vec<HexCoord>,
    pub pl: PlTone,
}

impl Cluster {
    /// Nominal cluster size `n_c`, phantom positions included.
    pub fn size(&self) -> usize {
        self.cells.len() + self.phantom.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub gc: GroupCode,
    pub kind: GroupKind,
    /// Index of the 61-cluster composite this group belongs to, if any.
    pub composite: Option<usize>,
    pub clusters: Vec<usize>,
}
