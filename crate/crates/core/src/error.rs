use std::fmt;

use crate::allocation::ReusePair;

/// The constraint that made a plan impossible to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// Not enough PL tones in the catalog.
    Tones,
    /// Not enough carrier channels / cluster capacity for the users.
    Channels,
    /// The cell layout cannot host the requested clusters.
    Coverage,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Constraint::Tones => "tones",
            Constraint::Channels => "channels",
            Constraint::Coverage => "coverage",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PlanError {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        reason: &'static str,
    },

    #[error("frequency {mhz:.3} MHz is outside the {lo:.1}-{hi:.1} MHz band")]
    BandViolation { mhz: f64, lo: f64, hi: f64 },

    #[error("infeasible ({constraint}): {detail}")]
    Infeasible { constraint: Constraint, detail: String },

    #[error("tone exhaustion: {needed} clusters need distinct PL tones but only {available} exist; use group mode")]
    ToneExhaustion { needed: usize, available: usize },

    #[error("{} same-tone cluster pair(s) closer than {min_miles} mi, closest {:.3} mi", pairs.len(), pairs.first().map_or(0.0, |p| p.distance))]
    ReuseViolation { min_miles: f64, pairs: Vec<ReusePair> },

    #[error("capacity exceeded: {requested} users requested, capacity {capacity} (short by {})", requested - capacity)]
    Capacity { requested: usize, capacity: usize },

    #[error("no route from repeater {src} to repeater {dst} (excluded clusters: {excluded:?})")]
    NoRoute {
        src: usize,
        dst: usize,
        excluded: Vec<usize>,
    },

    #[error("unknown user: {0}")]
    UnknownUser(String),

    #[error("plan document: {0}")]
    Document(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl PlanError {
    pub(crate) fn invalid(name: &'static str, value: impl fmt::Display, reason: &'static str) -> Self {
        PlanError::InvalidParameter {
            name,
            value: value.to_string(),
            reason,
        }
    }

    /// True for errors that mean "this configuration cannot be planned",
    /// as opposed to bad input or I/O failures.
    pub fn is_infeasible(&self) -> bool {
        self.constraint().is_some()
    }

    pub fn constraint(&self) -> Option<Constraint> {
        match self {
            PlanError::Infeasible { constraint, .. } => Some(*constraint),
            PlanError::ToneExhaustion { .. } | PlanError::ReuseViolation { .. } => Some(Constraint::Tones),
            PlanError::Capacity { .. } => Some(Constraint::Channels),
            _ => None,
        }
    }
}

pub type Result<T, E = PlanError> = std::result::Result<T, E>;
