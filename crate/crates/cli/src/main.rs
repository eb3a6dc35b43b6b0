mod config;
mod render;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vhfnet::routing::{bfs_distances, build_routes, simulate, Action, CallRequest};
use vhfnet::sensitivity::{sweep, Parameter};
use vhfnet::terrain::{augment, AugmentOptions, Obstacle, TerrainMode};
use vhfnet::{build_plan, Frequency, Mode, PlTone, Plan, PlanError, Point, UserId};

use config::ConfigArgs;

/// Exit status for each class of failure.
mod exit {
    pub const OK: u8 = 0;
    pub const ERROR: u8 = 1;
    pub const INFEASIBLE: u8 = 2;
    pub const UNKNOWN_USER: u8 = 3;
    pub const NO_ROUTE: u8 = 4;
}

#[derive(Debug, Parser)]
#[command(name = "vhfnet", version, about = "Plan hexagonal VHF repeater networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a plan and write it as JSON
    Plan {
        #[command(flatten)]
        config: ConfigArgs,
        /// Write the plan here; without it the JSON goes to stdout
        #[arg(short, long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Trace one call hop by hop
    Route {
        plan: PathBuf,
        /// Caller: index into the plan's user list, or GC:PL:MHZ (GC is `-` in cell mode)
        #[arg(allow_hyphen_values = true)]
        src: String,
        /// Callee, same forms as SRC
        #[arg(allow_hyphen_values = true)]
        dst: String,
    },
    /// Run a batch of calls through the store-and-forward simulator
    Simulate {
        plan: PathBuf,
        /// Number of random calls to generate
        #[arg(long, default_value_t = 100)]
        calls: usize,
        /// Arrival ticks are drawn from 0..WINDOW
        #[arg(long, default_value_t = 50)]
        window: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Read calls from a file instead: one `SRC DST [ARRIVAL]` per line
        #[arg(long, value_name = "FILE", conflicts_with = "calls")]
        requests: Option<PathBuf>,
        /// Write the JSON-lines log here instead of stdout
        #[arg(short, long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Add a mountain to a plan and work out the extra repeaters
    Terrain {
        plan: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        /// Obstacle radius in miles
        #[arg(long)]
        radius: f64,
        /// Obstacle height in meters
        #[arg(long)]
        height: f64,
        /// emergency or mobile
        #[arg(long, default_value = "emergency")]
        mode: TerrainMode,
        /// Inner-division cell radius as a multiple of the plan's cell radius
        #[arg(long, default_value_t = 2.0)]
        inner_factor: f64,
        /// Write the updated plan here; without it the JSON goes to stdout
        #[arg(short, long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Vary one parameter and tabulate the plan counts as CSV
    Sweep {
        #[command(flatten)]
        config: ConfigArgs,
        /// H, delta_f, R or users
        #[arg(long)]
        param: Parameter,
        /// Comma-separated, strictly increasing
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        values: Vec<f64>,
        #[arg(short, long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Draw a plan as SVG
    Render {
        plan: PathBuf,
        #[arg(short, long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap's own usage code (2) would collide with the infeasible status.
            return ExitCode::from(if e.use_stderr() { exit::ERROR } else { exit::OK });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::from(exit::OK),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let Some(plan_err) = err.chain().find_map(|e| e.downcast_ref::<PlanError>()) else {
        return exit::ERROR;
    };
    match plan_err {
        PlanError::UnknownUser(_) => exit::UNKNOWN_USER,
        PlanError::NoRoute { .. } => exit::NO_ROUTE,
        e if e.is_infeasible() => exit::INFEASIBLE,
        _ => exit::ERROR,
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Plan { config, out } => cmd_plan(&config, out.as_deref()),
        Command::Route { plan, src, dst } => cmd_route(&plan, &src, &dst),
        Command::Simulate {
            plan,
            calls,
            window,
            seed,
            requests,
            out,
        } => cmd_simulate(&plan, calls, window, seed, requests.as_deref(), out.as_deref()),
        Command::Terrain {
            plan,
            x,
            y,
            radius,
            height,
            mode,
            inner_factor,
            out,
        } => {
            let obstacle = Obstacle::new(Point::new(x, y), radius, height)?;
            cmd_terrain(&plan, obstacle, mode, inner_factor, out.as_deref())
        }
        Command::Sweep {
            config,
            param,
            values,
            out,
        } => {
            let result = sweep(&config.resolve()?, param, &values)?;
            emit(out.as_deref(), &result.to_csv()?)
        }
        Command::Render { plan, out } => emit(out.as_deref(), &render::render_svg(&load_plan(&plan)?)),
    }
}

fn load_plan(path: &Path) -> Result<Plan> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Plan::from_json(&text).with_context(|| format!("loading plan {}", path.display()))
}

/// Data goes to the file when one is given, else to stdout.
fn emit(out: Option<&Path>, data: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, data).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(data.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Human-readable lines go to stdout only when stdout is not carrying data.
fn report(to_stdout: bool, line: &str) {
    if to_stdout {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn miles(v: f64) -> String {
    format!("{:.3}", (v * 1000.0).round() / 1000.0 + 0.0)
}

fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

fn headline(plan: &Plan) -> String {
    let s = plan.summary();
    match s.mode {
        Mode::Cell => format!(
            "{}, {}, {}",
            plural(s.repeaters, "repeater", "repeaters"),
            plural(s.clusters, "cluster", "clusters"),
            plural(s.channels, "channel", "channels")
        ),
        Mode::Group => format!(
            "{}, {}, {}",
            plural(s.repeaters, "repeater", "repeaters"),
            plural(s.clusters_required, "required cluster", "required clusters"),
            plural(s.group_codes, "group code", "group codes")
        ),
    }
}

fn cmd_plan(config: &ConfigArgs, out: Option<&Path>) -> Result<()> {
    let config = config.resolve()?;
    let plan = match build_plan(&config) {
        Ok(plan) => plan,
        Err(e) => {
            if let Some(c) = e.constraint() {
                eprintln!("binding constraint: {c}");
            }
            return Err(e.into());
        }
    };
    emit(out, &plan.to_json()?)?;
    let to_stdout = out.is_some();
    report(to_stdout, &headline(&plan));
    report(to_stdout, &plan.summary().to_string());
    for w in &plan.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

/// A user as a list index or as `GC:PL:MHZ`.
fn parse_user(plan: &Plan, text: &str) -> Result<UserId, PlanError> {
    let unknown = || PlanError::UnknownUser(text.to_string());
    if let Ok(i) = text.parse::<usize>() {
        return plan.users.get(i).copied().ok_or_else(unknown);
    }
    let parts: Vec<&str> = text.split(':').collect();
    let [gc, pl, mhz] = parts[..] else {
        return Err(unknown());
    };
    let gc = match gc {
        "-" | "" => None,
        g => Some(g.parse().map_err(|_| unknown())?),
    };
    let pl = PlTone(pl.trim_start_matches("PL").parse().map_err(|_| unknown())?);
    let channel = Frequency::from_mhz(mhz.parse().map_err(|_| unknown())?).map_err(|_| unknown())?;
    let user = UserId { gc, pl, channel };
    plan.user_index(&user).map(|_| user).ok_or_else(unknown)
}

fn describe_repeater(plan: &Plan, id: usize) -> String {
    format!("repeater {id} {}", plan.tessellation.cells[id].coord)
}

fn cmd_route(path: &Path, src: &str, dst: &str) -> Result<()> {
    let plan = load_plan(path)?;
    let (src, dst) = (parse_user(&plan, src)?, parse_user(&plan, dst)?);
    let (a, b) = (plan.home_repeater(&src)?, plan.home_repeater(&dst)?);
    let table = build_routes(&plan);
    let route = table.route(a, b)?;
    println!(
        "{src} -> {dst}: {}, {}",
        plural(route.hops.len(), "repeater", "repeaters"),
        plural(route.total_transmissions(), "transmission", "transmissions")
    );
    let direct = bfs_distances(&plan, b, &vec![false; plan.tessellation.len()])[a];
    if let Some(d) = direct.filter(|&d| d as usize != route.links()) {
        println!(
            "detour: {} links instead of {d}, avoiding {} same-tone repeaters",
            route.links(),
            table.excluded(b).len()
        );
    }

    let log = simulate(&plan, &table, &[CallRequest { src, dst, arrival: 0 }]);
    if let Some(reason) = &log.outcomes[0].failure {
        bail!("call failed: {reason}");
    }
    let mut tx = 1;
    for r in &log.records {
        let (Some(rep), Some(f), Some(pl)) = (r.repeater, r.frequency, r.pl) else {
            continue;
        };
        let line = match r.action {
            Action::Receive if rep == a && tx == 1 => format!("user {src} -> {}", describe_repeater(&plan, rep)),
            Action::Forward => {
                let next = route.hops[tx - 1];
                format!(
                    "{} -> {}",
                    describe_repeater(&plan, rep),
                    describe_repeater(&plan, next)
                )
            }
            Action::Deliver => format!("{} -> user {dst}", describe_repeater(&plan, rep)),
            _ => continue,
        };
        println!("tx {tx}  {line}  {f} MHz  {pl}");
        tx += 1;
    }
    Ok(())
}

fn read_requests(plan: &Plan, path: &Path) -> Result<Vec<CallRequest>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let (src, dst, arrival) = match fields[..] {
            [s, d] => (s, d, 0),
            [s, d, t] => (
                s,
                d,
                t.parse()
                    .with_context(|| format!("line {}: bad arrival `{t}`", n + 1))?,
            ),
            _ => bail!("line {}: expected `SRC DST [ARRIVAL]`", n + 1),
        };
        out.push(CallRequest {
            src: parse_user(plan, src).with_context(|| format!("line {}", n + 1))?,
            dst: parse_user(plan, dst).with_context(|| format!("line {}", n + 1))?,
            arrival,
        });
    }
    Ok(out)
}

fn random_requests(plan: &Plan, calls: usize, window: u64, seed: u64) -> Result<Vec<CallRequest>> {
    if plan.users.is_empty() {
        bail!("plan has no users to call");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = plan.users.len();
    Ok((0..calls)
        .map(|_| CallRequest {
            src: plan.users[rng.gen_range(0..n)],
            dst: plan.users[rng.gen_range(0..n)],
            arrival: rng.gen_range(0..window.max(1)),
        })
        .collect())
}

fn cmd_simulate(
    path: &Path,
    calls: usize,
    window: u64,
    seed: u64,
    requests: Option<&Path>,
    out: Option<&Path>,
) -> Result<()> {
    let plan = load_plan(path)?;
    let requests = match requests {
        Some(file) => read_requests(&plan, file)?,
        None => random_requests(&plan, calls, window, seed)?,
    };
    let table = build_routes(&plan);
    let log = simulate(&plan, &table, &requests);
    emit(out, &log.to_jsonl()?)?;
    let last = log.outcomes.iter().filter_map(|o| o.delivered_at).max();
    report(
        out.is_some(),
        &format!(
            "{} calls: {} delivered, {} failed{}",
            requests.len(),
            log.delivered(),
            log.failed(),
            last.map(|t| format!(", last delivery at tick {t}")).unwrap_or_default()
        ),
    );
    Ok(())
}

fn cmd_terrain(
    path: &Path,
    obstacle: Obstacle,
    mode: TerrainMode,
    inner_factor: f64,
    out: Option<&Path>,
) -> Result<()> {
    let mut plan = load_plan(path)?;
    let options = AugmentOptions {
        inner_radius_factor: inner_factor,
    };
    let aug = augment(&plan, &obstacle, mode, &options)?;
    let to_stdout = out.is_some();
    let case = serde_json::to_value(aug.case)?;
    report(
        to_stdout,
        &format!(
            "{}: {} covered repeaters, {} blocked links, {} added",
            case.as_str().unwrap_or_default(),
            aug.affected_cells.len(),
            aug.blocked_links.len(),
            plural(aug.added.len(), "repeater", "repeaters")
        ),
    );
    for r in &aug.added {
        report(
            to_stdout,
            &format!(
                "  ({}, {}) radius {} mi, {}{}",
                miles(r.position.x),
                miles(r.position.y),
                miles(r.radius),
                r.pl.map(|p| format!("{p}, ")).unwrap_or_default(),
                r.note
            ),
        );
    }
    for w in &aug.warnings {
        eprintln!("warning: {w}");
    }
    plan.augmentations.push(aug);
    emit(out, &plan.to_json()?)
}
