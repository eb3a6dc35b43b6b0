//! One-parameter sweeps over the planning inputs.

use std::io::Write;

use serde::Serialize;

use crate::allocation::{build_channel_table, build_plan, clusters_required};
use crate::config::Config;
use crate::coverage::effective_radius;
use crate::error::{PlanError, Result};
use crate::hexgrid::tessellate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parameter {
    #[serde(rename = "H")]
    AntennaHeight,
    #[serde(rename = "delta_f")]
    DeltaF,
    #[serde(rename = "R")]
    AreaRadius,
    #[serde(rename = "users")]
    Users,
}

impl Parameter {
    pub fn name(self) -> &'static str {
        match self {
            Parameter::AntennaHeight => "H",
            Parameter::DeltaF => "delta_f",
            Parameter::AreaRadius => "R",
            Parameter::Users => "users",
        }
    }

    fn apply(self, base: &Config, value: f64) -> Result<Config> {
        let mut c = base.clone();
        match self {
            Parameter::AntennaHeight => c.antenna_height_m = value,
            Parameter::DeltaF => c.delta_f = value,
            Parameter::AreaRadius => c.area_radius_miles = value,
            Parameter::Users => {
                if !(value >= 0.0 && value.fract() == 0.0 && value <= usize::MAX as f64) {
                    return Err(PlanError::invalid("users", value, "must be a non-negative integer"));
                }
                c.users = value as usize;
            }
        }
        Ok(c)
    }
}

impl std::str::FromStr for Parameter {
    type Err = PlanError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" | "h" | "height" | "antenna_height_m" => Ok(Parameter::AntennaHeight),
            "delta_f" | "df" => Ok(Parameter::DeltaF),
            "R" | "r" | "radius" | "area_radius_miles" => Ok(Parameter::AreaRadius),
            "users" | "N" => Ok(Parameter::Users),
            _ => Err(PlanError::invalid("parameter", s, "expected H, delta_f, R or users")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointStatus {
    Ok,
    Infeasible,
    Invalid,
}

/// Metrics for one sweep value. Geometry and channel counts are recorded
/// even when the full plan cannot be built.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub value: f64,
    pub cells: Option<usize>,
    pub repeaters: Option<usize>,
    pub channels: Option<usize>,
    pub clusters_required: Option<usize>,
    pub clusters: Option<usize>,
    pub group_codes: Option<usize>,
    pub status: PointStatus,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub parameter: Parameter,
    pub points: Vec<SweepPoint>,
}

pub fn sweep(base: &Config, parameter: Parameter, values: &[f64]) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(PlanError::invalid("values", "[]", "sweep needs at least one value"));
    }
    if values.iter().any(|v| !v.is_finite()) || values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PlanError::invalid(
            "values",
            format!("{values:?}"),
            "must be finite and strictly increasing",
        ));
    }
    let points = values
        .iter()
        .map(|&value| {
            let config = parameter.apply(base, value)?;
            Ok(evaluate(&config, value))
        })
        .collect::<Result<_>>()?;
    Ok(SweepResult { parameter, points })
}

fn evaluate(config: &Config, value: f64) -> SweepPoint {
    let mut point = SweepPoint {
        value,
        cells: None,
        repeaters: None,
        channels: None,
        clusters_required: None,
        clusters: None,
        group_codes: None,
        status: PointStatus::Ok,
        error: None,
    };
    let geometry = config
        .validate()
        .and_then(|_| effective_radius(&config.antenna()))
        .and_then(|r| tessellate(config.area_radius_miles, r));
    if let Ok(tess) = &geometry {
        point.cells = Some(tess.len());
        point.repeaters = Some(tess.len());
    }
    if let Ok(table) = build_channel_table(config.f_lo, config.f_hi, config.delta_f) {
        point.channels = Some(table.len());
        point.clusters_required = clusters_required(config.users, table.len()).ok();
    }
    match build_plan(config) {
        Ok(plan) => {
            let s = plan.summary();
            point.clusters = Some(s.clusters);
            point.group_codes = Some(s.group_codes);
        }
        Err(e) => {
            point.status = if e.is_infeasible() {
                PointStatus::Infeasible
            } else {
                PointStatus::Invalid
            };
            point.error = Some(e.to_string());
        }
    }
    point
}

const HEADER: [&str; 10] = [
    "parameter",
    "value",
    "cells",
    "repeaters",
    "channels",
    "clusters_required",
    "clusters",
    "group_codes",
    "status",
    "error",
];

impl SweepResult {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(HEADER)?;
        let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
        for p in &self.points {
            let status = match p.status {
                PointStatus::Ok => "ok",
                PointStatus::Infeasible => "infeasible",
                PointStatus::Invalid => "invalid",
            };
            w.write_record([
                self.parameter.name().to_string(),
                format!("{}", p.value),
                opt(p.cells),
                opt(p.repeaters),
                opt(p.channels),
                opt(p.clusters_required),
                opt(p.clusters),
                opt(p.group_codes),
                status.to_string(),
                p.error.clone().unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| PlanError::Document(e.to_string()))
    }

    pub fn column(&self, f: impl Fn(&SweepPoint) -> Option<usize>) -> Vec<Option<usize>> {
        self.points.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> Config {
        Config {
            coverage_cap_miles: Some(5.0),
            ..Config::default()
        }
    }

    #[test]
    fn radius_sweep_cell_counts() {
        let s = sweep(&base(), Parameter::AreaRadius, &[20.0, 40.0, 80.0]).unwrap();
        assert_eq!(s.column(|p| p.cells), vec![Some(37), Some(91), Some(331)]);
        assert_eq!(s.points[2].status, PointStatus::Infeasible);
    }

    #[test]
    fn delta_f_sweep_channel_counts() {
        let s = sweep(&base(), Parameter::DeltaF, &[0.1, 0.2]).unwrap();
        assert_eq!(s.column(|p| p.channels), vec![Some(24), Some(12)]);
    }

    #[test]
    fn values_must_increase() {
        assert!(sweep(&base(), Parameter::AreaRadius, &[40.0, 20.0]).is_err());
        assert!(sweep(&base(), Parameter::AreaRadius, &[]).is_err());
    }

    #[test]
    fn csv_has_fixed_header() {
        let s = sweep(&base(), Parameter::AreaRadius, &[40.0]).unwrap();
        let csv = s.to_csv().unwrap();
        assert!(csv.starts_with(
            "parameter,value,cells,repeaters,channels,clusters_required,clusters,group_codes,status,error\n"
        ));
        assert!(csv.contains("R,40,91,91,24,42,42,0,ok,"));
    }
}
