use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::Args;
use vhfnet::{Config, ModeChoice};

/// Planning inputs. A config file is read first, then any flag given here wins.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// TOML (key = value) or JSON config file
    #[arg(short, long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub users: Option<usize>,
    /// Service area radius R in miles
    #[arg(long = "radius", value_name = "MILES")]
    pub area_radius_miles: Option<f64>,
    /// Antenna height H in meters
    #[arg(long = "height", value_name = "METERS")]
    pub antenna_height_m: Option<f64>,
    /// Cap on the cell radius, in miles
    #[arg(long = "cap", value_name = "MILES")]
    pub coverage_cap_miles: Option<f64>,
    /// Lowest carrier in MHz
    #[arg(long)]
    pub f_lo: Option<f64>,
    /// Highest carrier in MHz
    #[arg(long)]
    pub f_hi: Option<f64>,
    /// Channel spacing in MHz
    #[arg(long)]
    pub delta_f: Option<f64>,
    #[arg(long = "pl-catalog", value_name = "N")]
    pub pl_catalog_size: Option<u16>,
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<ModeChoice>,
    /// Largest user count planned in cell mode under `--mode auto`
    #[arg(long, value_name = "USERS")]
    pub auto_threshold: Option<usize>,
    /// Minimum distance between same-tone clusters, in miles
    #[arg(long = "reuse-min", value_name = "MILES")]
    pub reuse_min_miles: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

fn parse_mode(s: &str) -> Result<ModeChoice, String> {
    s.parse().map_err(|e: vhfnet::PlanError| e.to_string())
}

pub fn read_config(path: &Path) -> Result<Config> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let config = if path.extension().is_some_and(|e| e == "json") {
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
    } else {
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
    };
    Ok(config)
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<Config> {
        let mut c = match &self.config {
            Some(path) => read_config(path)?,
            None => Config::default(),
        };
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field { c.$field = v; })*
            };
        }
        set!(
            users,
            area_radius_miles,
            antenna_height_m,
            f_lo,
            f_hi,
            delta_f,
            pl_catalog_size,
            mode,
            reuse_min_miles,
            seed
        );
        if self.coverage_cap_miles.is_some() {
            c.coverage_cap_miles = self.coverage_cap_miles;
        }
        if self.auto_threshold.is_some() {
            c.auto_threshold = self.auto_threshold;
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("vhfnet-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.toml");
        std::fs::write(&path, "users = 500\ncoverage_cap_miles = 5.0\n").unwrap();
        let args = ConfigArgs {
            config: Some(path),
            users: Some(700),
            ..ConfigArgs::default()
        };
        let c = args.resolve().unwrap();
        assert_eq!(c.users, 700);
        assert_eq!(c.coverage_cap_miles, Some(5.0));
        assert_eq!(c.area_radius_miles, 40.0);
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<Config>("userz = 3").is_err());
    }
}
