//! Repeater coverage radius from antenna height.

use crate::error::{PlanError, Result};

/// Earth radius used by the line-of-sight horizon formula, in meters.
pub const EARTH_RADIUS_M: f64 = 6378.0e3;
pub const METERS_PER_MILE: f64 = 1609.344;
pub const FEET_PER_METER: f64 = 3.28084;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaSpec {
    pub height_m: f64,
    /// Administrative radius cap in miles.
    pub cap_miles: Option<f64>,
}

impl AntennaSpec {
    pub fn new(height_m: f64, cap_miles: Option<f64>) -> Result<Self> {
        let spec = AntennaSpec { height_m, cap_miles };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        positive("height_m", self.height_m)?;
        if let Some(cap) = self.cap_miles {
            positive("cap_miles", cap)?;
        }
        Ok(())
    }

    /// The tighter of the two height-based estimates, ignoring the cap.
    pub fn physical_limit(&self) -> Result<f64> {
        Ok(los_radius(self.height_m)?.min(empirical_radius(self.height_m * FEET_PER_METER)?))
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(PlanError::invalid(name, v, "must be a positive finite number"))
    }
}

/// Radio horizon `√(2·R_earth·H)` for an antenna `height_m` meters tall, in miles.
pub fn los_radius(height_m: f64) -> Result<f64> {
    positive("height_m", height_m)?;
    Ok((2.0 * EARTH_RADIUS_M * height_m).sqrt() / METERS_PER_MILE)
}

/// Rule-of-thumb coverage `√(1.5·H)` miles for a height in feet.
pub fn empirical_radius(height_ft: f64) -> Result<f64> {
    positive("height_ft", height_ft)?;
    Ok((1.5 * height_ft).sqrt())
}

pub fn effective_radius(spec: &AntennaSpec) -> Result<f64> {
    spec.validate()?;
    let limit = spec.physical_limit()?;
    Ok(spec.cap_miles.map_or(limit, |cap| cap.min(limit)))
}
