use serde::{Deserialize, Serialize};

use crate::allocation::Mode;
use crate::coverage::AntennaSpec;
use crate::error::{PlanError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeChoice {
    #[default]
    Auto,
    Cell,
    Group,
}

impl std::str::FromStr for ModeChoice {
    type Err = PlanError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(ModeChoice::Auto),
            "cell" => Ok(ModeChoice::Cell),
            "group" => Ok(ModeChoice::Group),
            _ => Err(PlanError::invalid("mode", s, "expected auto, cell or group")),
        }
    }
}

/// Planning inputs. Every field has a default, so partial config files work.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub users: usize,
    pub area_radius_miles: f64,
    pub antenna_height_m: f64,
    pub coverage_cap_miles: Option<f64>,
    pub f_lo: f64,
    pub f_hi: f64,
    pub delta_f: f64,
    pub pl_catalog_size: u16,
    pub mode: ModeChoice,
    /// Largest population planned in cell mode when `mode = auto`.
    /// Defaults to `pl_catalog_size × channel count`.
    pub auto_threshold: Option<usize>,
    pub reuse_min_miles: f64,
    /// Seed for generated call requests.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            users: 1000,
            area_radius_miles: 40.0,
            antenna_height_m: 15.0,
            coverage_cap_miles: None,
            f_lo: 145.0,
            f_hi: 147.4,
            delta_f: 0.1,
            pl_catalog_size: 54,
            mode: ModeChoice::Auto,
            auto_threshold: None,
            reuse_min_miles: 10.0,
            seed: 0,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(PlanError::invalid(name, v, "must be a positive finite number"))
            }
        };
        positive("area_radius_miles", self.area_radius_miles)?;
        positive("antenna_height_m", self.antenna_height_m)?;
        positive("delta_f", self.delta_f)?;
        positive("reuse_min_miles", self.reuse_min_miles)?;
        if let Some(cap) = self.coverage_cap_miles {
            positive("coverage_cap_miles", cap)?;
        }
        if !(self.f_lo.is_finite() && self.f_hi.is_finite() && self.f_lo < self.f_hi) {
            return Err(PlanError::invalid("f_lo", self.f_lo, "must be below f_hi"));
        }
        if self.pl_catalog_size == 0 {
            return Err(PlanError::invalid("pl_catalog_size", 0, "must be at least one"));
        }
        Ok(())
    }

    pub fn antenna(&self) -> AntennaSpec {
        AntennaSpec {
            height_m: self.antenna_height_m,
            cap_miles: self.coverage_cap_miles,
        }
    }

    pub fn resolve_mode(&self, channels: usize) -> Mode {
        match self.mode {
            ModeChoice::Cell => Mode::Cell,
            ModeChoice::Group => Mode::Group,
            ModeChoice::Auto => {
                let threshold = self
                    .auto_threshold
                    .unwrap_or(usize::from(self.pl_catalog_size) * channels);
                if self.users <= threshold {
                    Mode::Cell
                } else {
                    Mode::Group
                }
            }
        }
    }
}
