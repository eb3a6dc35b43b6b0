//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{HashMap, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vhfnet::allocation::{check_reuse_distance, is_valid_cluster_size, partition_counts, GroupKind};
use vhfnet::coverage::{empirical_radius, los_radius, FEET_PER_METER};
use vhfnet::hexgrid::{centered_hex_number, hex_distance, neighbors, rings_needed, tessellate};
use vhfnet::routing::{build_routes, simulate, Action, CallRequest};
use vhfnet::sensitivity::{sweep, Parameter, PointStatus};
use vhfnet::terrain::{
    augment, blocked_links, classify, AugmentOptions, CaseLabel, Obstacle, ObstacleClass, TerrainMode,
};
use vhfnet::{build_plan, Config, HexCoord, Mode, Plan, Point, UserId};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn config(users: usize, cap: f64) -> Config {
    Config {
        users,
        area_radius_miles: 40.0,
        coverage_cap_miles: Some(cap),
        f_lo: 145.0,
        f_hi: 147.4,
        delta_f: 0.1,
        ..Config::default()
    }
}

fn plan(users: usize, cap: f64) -> Result<Plan, String> {
    build_plan(&config(users, cap)).map_err(|e| e.to_string())
}

fn timed<T>(limit: Duration, f: impl FnOnce() -> Result<T, String>) -> Result<(T, Duration), String> {
    let start = Instant::now();
    let v = f()?;
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok((v, took))
}

fn thousand_user_plan() -> Outcome {
    let (p, took) = timed(Duration::from_secs(1), || plan(1000, 5.0))?;
    let s = p.summary();
    let part = s.partition.ok_or("no partition")?;
    ensure!(s.mode == Mode::Cell, "mode {}", s.mode);
    ensure!(s.cells == 91, "cells {}", s.cells);
    ensure!(s.clusters == 42, "clusters {}", s.clusters);
    ensure!((part.triples, part.singles) == (25, 17), "partition {part:?}");
    ensure!(s.channels == 24, "channels {}", s.channels);
    ensure!(s.tones_used <= 54, "tones {}", s.tones_used);
    Ok(format!(
        "91 cells, 42 clusters, x=25 y=17, 24 channels, {} tones in {took:.1?}",
        s.tones_used
    ))
}

fn ten_thousand_user_plan() -> Outcome {
    let (p, took) = timed(Duration::from_secs(5), || plan(10000, 2.0))?;
    let s = p.summary();
    ensure!(s.mode == Mode::Group, "mode {}", s.mode);
    ensure!(s.clusters_required == 417, "required {}", s.clusters_required);
    ensure!(s.clusters == 469, "placed {}", s.clusters);
    ensure!(s.big_composites == 7, "big composites {}", s.big_composites);
    ensure!(s.small_groups == 6, "small groups {}", s.small_groups);
    ensure!(s.group_codes == 20, "group codes {}", s.group_codes);
    for g in &p.groups {
        let want = match g.kind {
            GroupKind::Big54 => 54,
            GroupKind::Small7 => 7,
        };
        ensure!(
            g.clusters.len() == want,
            "group {} has {} clusters",
            g.gc,
            g.clusters.len()
        );
    }
    Ok(format!(
        "417 required, 469 placed, 7 big + 6 small, 20 GCs in {took:.1?}"
    ))
}

fn coverage_physics() -> Outcome {
    let h = 15.0;
    let los = los_radius(h).map_err(|e| e.to_string())?;
    let emp = empirical_radius(h * FEET_PER_METER).map_err(|e| e.to_string())?;
    // Independent evaluation of both formulas.
    let los_oracle = (2.0 * 6378.0e3 * h).sqrt() / 1609.344;
    let emp_oracle = (1.5 * h * 3.28084).sqrt();
    ensure!((los - los_oracle).abs() < 1e-9, "los {los} vs {los_oracle}");
    ensure!((emp - emp_oracle).abs() < 1e-9, "empirical {emp} vs {emp_oracle}");
    for (name, v) in [("line of sight", los), ("empirical", emp)] {
        ensure!((8.4..=8.9).contains(&v), "{name} radius {v:.3} outside [8.4, 8.9]");
        ensure!(
            (v - 8.7).abs() <= 0.02 * 8.7,
            "{name} radius {v:.3} not within 2% of 8.7"
        );
    }
    Ok(format!("line of sight {los:.3} mi, empirical {emp:.3} mi"))
}

fn reuse_distance() -> Outcome {
    let p = plan(10000, 2.0)?;
    let report = check_reuse_distance(&p);
    ensure!(report.violations.is_empty(), "{} violations", report.violations.len());
    // Brute-force minimum over all same-tone pairs.
    let mut best = f64::INFINITY;
    for a in &p.clusters {
        for b in &p.clusters {
            if a.id < b.id && a.pl == b.pl {
                best = best.min(p.cluster_centroid(a.id).distance(p.cluster_centroid(b.id)));
            }
        }
    }
    let min = report.min_distance.ok_or("no repeated tone")?;
    ensure!((min - best).abs() < 1e-9, "report {min} vs brute force {best}");
    ensure!((10.0..=10.8).contains(&min), "minimum {min:.3} outside [10.0, 10.8]");
    Ok(format!("minimum same-tone distance {min:.3} mi, no pair under 10 mi"))
}

fn seamless_coverage() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut details = Vec::new();
    for (users, cap) in [(1000, 5.0), (10000, 2.0)] {
        let p = plan(users, cap)?;
        let r = p.tessellation.cell_radius;
        let centers: Vec<Point> = p.tessellation.cells.iter().map(|c| c.center).collect();
        let mut failures = 0;
        let mut worst: f64 = 0.0;
        for _ in 0..100_000 {
            let (x, y) = loop {
                let x = rng.gen_range(-40.0..=40.0);
                let y = rng.gen_range(-40.0..=40.0);
                if f64::hypot(x, y) <= 40.0 {
                    break (x, y);
                }
            };
            let pt = Point::new(x, y);
            let d = centers.iter().map(|c| c.distance(pt)).fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
            if d > r + 1e-9 {
                failures += 1;
            }
        }
        if failures > 0 {
            let disk = std::f64::consts::PI * 40.0 * 40.0;
            let bound = p.tessellation.len() as f64 * 1.5 * 3f64.sqrt() * r * r;
            details.push(format!(
                "r={r}: {failures} of 100000 points uncovered (farthest {worst:.3} mi); {} disks of radius {r} \
                 cover at most {bound:.1} sq mi, the service disk is {disk:.1} sq mi",
                p.tessellation.len()
            ));
            return Err(details.join("; "));
        }
        details.push(format!("r={r}: 0 failures, farthest {worst:.3} mi"));
    }
    Ok(details.join("; "))
}

/// One user homed on each repeater.
fn user_per_repeater(p: &Plan) -> Result<Vec<UserId>, String> {
    let mut by_home: HashMap<usize, UserId> = HashMap::new();
    for u in &p.users {
        by_home
            .entry(p.home_repeater(u).map_err(|e| e.to_string())?)
            .or_insert(*u);
    }
    (0..p.tessellation.len())
        .map(|r| by_home.get(&r).copied().ok_or(format!("no user on repeater {r}")))
        .collect()
}

fn protocol_audit() -> Outcome {
    let ((calls, records), took) = timed(Duration::from_secs(30), || {
        let p = plan(1000, 5.0)?;
        let table = build_routes(&p);
        let users = user_per_repeater(&p)?;
        let n = p.tessellation.len();
        let mut reqs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    reqs.push(CallRequest {
                        src: users[a],
                        dst: users[b],
                        arrival: (reqs.len() / n) as u64,
                    });
                }
            }
        }
        let log = simulate(&p, &table, &reqs);
        ensure!(
            log.delivered() == reqs.len(),
            "{} of {} delivered",
            log.delivered(),
            reqs.len()
        );

        let mut trace: Vec<Vec<(Action, usize, u32, u16)>> = vec![Vec::new(); reqs.len()];
        for r in &log.records {
            if matches!(r.action, Action::Receive | Action::Forward | Action::Deliver) {
                trace[r.msg_id].push((
                    r.action,
                    r.repeater.ok_or("record without repeater")?,
                    r.frequency.ok_or("record without frequency")?.khz(),
                    r.pl.ok_or("record without tone")?.0,
                ));
            }
        }
        for (i, t) in trace.iter().enumerate() {
            let dst = reqs[i].dst;
            let received: Vec<_> = t.iter().filter(|e| e.0 == Action::Receive).collect();
            let sent: Vec<_> = t.iter().filter(|e| e.0 != Action::Receive).collect();
            ensure!(
                received.len() == sent.len(),
                "call {i}: {} receptions, {} sends",
                received.len(),
                sent.len()
            );
            for (rx, tx) in received.iter().zip(&sent) {
                ensure!(rx.1 == tx.1, "call {i}: sent from {} after reception at {}", tx.1, rx.1);
                let tone = p.tone_of_repeater(tx.1).0;
                ensure!(
                    rx.3 == tone,
                    "call {i}: repeater {} (tone {tone}) forwarded stamp {}",
                    tx.1,
                    rx.3
                );
            }
            for w in received.windows(2) {
                ensure!(
                    neighbors(p.tessellation.cells[w[0].1].coord).contains(&p.tessellation.cells[w[1].1].coord),
                    "call {i}: hop {} -> {} is not between neighbors",
                    w[0].1,
                    w[1].1
                );
            }
            let freqs: Vec<u32> = received.iter().map(|e| e.2).chain(sent.last().map(|e| e.2)).collect();
            for w in freqs.windows(2) {
                ensure!(w[0].abs_diff(w[1]) == 600, "call {i}: {} -> {} kHz", w[0], w[1]);
            }
            ensure!(
                freqs.last() == Some(&dst.channel.khz()),
                "call {i}: ends on {:?} kHz, destination channel {}",
                freqs.last(),
                dst.channel
            );
        }
        Ok((reqs.len(), log.records.len()))
    })?;
    Ok(format!(
        "{calls} calls delivered, {records} log records audited in {took:.1?}"
    ))
}

fn bfs_oracle(p: &Plan, src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; p.tessellation.len()];
    dist[src] = Some(0);
    let mut q = VecDeque::from([src]);
    while let Some(u) = q.pop_front() {
        for c in neighbors(p.tessellation.cells[u].coord) {
            if let Some(v) = p.tessellation.index_of(c) {
                if dist[v].is_none() {
                    dist[v] = Some(dist[u].unwrap() + 1);
                    q.push_back(v);
                }
            }
        }
    }
    dist
}

fn group_routing() -> Outcome {
    let p = plan(10000, 2.0)?;
    let table = build_routes(&p);
    let n = p.tessellation.len();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut equal, mut longer, mut pairs) = (0, 0, 0);
    while pairs < 1000 {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        pairs += 1;
        let route = table.route(a, b).map_err(|e| e.to_string())?;
        let tone = p.tone_of_repeater(b);
        for &h in &route.hops[1..route.hops.len() - 1] {
            ensure!(
                p.tone_of_repeater(h) != tone,
                "route {a}->{b} relays through {h} with the destination tone"
            );
        }
        for w in route.hops.windows(2) {
            ensure!(
                hex_distance(p.tessellation.cells[w[0]].coord, p.tessellation.cells[w[1]].coord) == 1,
                "route {a}->{b} jumps {} -> {}",
                w[0],
                w[1]
            );
        }
        let free = bfs_oracle(&p, a)[b].ok_or("disconnected tessellation")?;
        ensure!(
            route.links() >= free,
            "route {a}->{b} shorter than BFS: {} < {free}",
            route.links()
        );
        if route.links() == free {
            equal += 1;
        } else {
            longer += 1;
        }
    }
    let share = equal as f64 / pairs as f64;
    ensure!(share >= 0.9, "only {:.1}% of routes are shortest", 100.0 * share);
    Ok(format!(
        "1000 pairs clean, {equal} shortest, {longer} detoured ({:.1}%)",
        100.0 * share
    ))
}

fn oracle_suites() -> Outcome {
    // Tessellation counts against direct enumeration.
    for k in 0..=20u32 {
        let r = 1.5;
        let big_r = r * (3.0 * f64::from(k).powi(2) + 1.0).sqrt();
        let t = tessellate(big_r, r).map_err(|e| e.to_string())?;
        let k = k as i32;
        let mut count = 0;
        for q in -k..=k {
            for s in -k..=k {
                if q.abs().max(s.abs()).max((q + s).abs()) <= k {
                    count += 1;
                }
            }
        }
        ensure!(
            t.len() == count,
            "k={k}: tessellation {} vs enumeration {count}",
            t.len()
        );
        ensure!(centered_hex_number(k as u32) == count, "k={k}: centered number");
        ensure!(
            rings_needed(big_r, r).map_err(|e| e.to_string())? == k as u32,
            "k={k}: rings"
        );
    }

    // Cluster sizes against brute force.
    let mut brute = vec![false; 1001];
    for i in 0..=40u64 {
        for j in 0..=40u64 {
            let n = i * i + i * j + j * j;
            if (1..=1000).contains(&n) {
                brute[n as usize] = true;
            }
        }
    }
    for n in 1..=1000u64 {
        ensure!(is_valid_cluster_size(n) == brute[n as usize], "cluster size {n}");
    }

    // Partition minimality against exhaustive search.
    for clusters in 1..=100usize {
        for cells in 1..=320usize {
            let best = (0..=clusters)
                .map(|x| (x, clusters - x))
                .filter(|&(x, y)| 3 * x + y >= cells)
                .min_by_key(|&(x, y)| 3 * x + y);
            match (partition_counts(cells, clusters), best) {
                (Ok(p), Some((x, y))) => {
                    ensure!(p.triples + p.singles == clusters, "({cells},{clusters}) sums wrong");
                    ensure!(p.slots() >= cells, "({cells},{clusters}) too few slots");
                    ensure!(
                        p.slots() == 3 * x + y,
                        "({cells},{clusters}) {} vs {}",
                        p.slots(),
                        3 * x + y
                    );
                }
                (Err(_), None) => {}
                (got, want) => return Err(format!("({cells},{clusters}): {got:?} vs {want:?}")),
            }
        }
    }

    // Blocked links against the quadratic segment-disk test.
    let p = plan(1000, 5.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut obstacles = vec![Obstacle::new(Point::new(10.0, 0.0), 6.0, 500.0).map_err(|e| e.to_string())?];
    for _ in 0..200 {
        let c = Point::new(rng.gen_range(-45.0..45.0), rng.gen_range(-45.0..45.0));
        obstacles.push(Obstacle::new(c, rng.gen_range(0.05..8.0), 500.0).map_err(|e| e.to_string())?);
    }
    let centers: Vec<Point> = p.tessellation.cells.iter().map(|c| c.center).collect();
    let mut adjacent = Vec::new();
    for a in 0..centers.len() {
        for b in a + 1..centers.len() {
            if (centers[a].distance(centers[b]) - 5.0 * 3f64.sqrt()).abs() < 1e-6 {
                adjacent.push((a, b));
            }
        }
    }
    ensure!(adjacent.len() == 240, "{} adjacent pairs", adjacent.len());
    for o in &obstacles {
        let want: Vec<(usize, usize)> = adjacent
            .iter()
            .copied()
            .filter(|&(a, b)| segment_hits_disk(centers[a], centers[b], o.center, o.radius))
            .collect();
        let got = blocked_links(&p, o);
        ensure!(
            got == want,
            "obstacle at ({:.2},{:.2}): {} vs {} links",
            o.center.x,
            o.center.y,
            got.len(),
            want.len()
        );
    }

    // Hex distance against breadth-first search on a bounded grid.
    let span = 12;
    for origin in [HexCoord::new(0, 0), HexCoord::new(3, -2), HexCoord::new(-5, 4)] {
        let mut dist: HashMap<HexCoord, u32> = HashMap::from([(origin, 0)]);
        let mut q = VecDeque::from([origin]);
        while let Some(u) = q.pop_front() {
            for v in neighbors(u) {
                if v.q.abs() <= span && v.s.abs() <= span && !dist.contains_key(&v) {
                    dist.insert(v, dist[&u] + 1);
                    q.push_back(v);
                }
            }
        }
        for (&c, &d) in &dist {
            if hex_distance(origin, c) != d && c.q.abs() <= span - 6 && c.s.abs() <= span - 6 {
                return Err(format!(
                    "hex distance {origin} -> {c}: {} vs {d}",
                    hex_distance(origin, c)
                ));
            }
        }
    }
    Ok("tessellation k<=20, cluster sizes n<=1000, partitions N<=100, 201 obstacles, hex distance: all exact".into())
}

/// Does `|a + t(b - a) - c|² = ρ²` have a root in [0, 1], or does the
/// segment start inside the disk?
fn segment_hits_disk(a: Point, b: Point, c: Point, rho: f64) -> bool {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let (fx, fy) = (a.x - c.x, a.y - c.y);
    let qa = dx * dx + dy * dy;
    let qb = 2.0 * (fx * dx + fy * dy);
    let qc = fx * fx + fy * fy - rho * rho;
    if qc <= 0.0 || (b.x - c.x).powi(2) + (b.y - c.y).powi(2) <= rho * rho {
        return true;
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return false;
    }
    let t1 = (-qb - disc.sqrt()) / (2.0 * qa);
    let t2 = (-qb + disc.sqrt()) / (2.0 * qa);
    (0.0..=1.0).contains(&t1) || (0.0..=1.0).contains(&t2)
}

fn non_increasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

fn non_decreasing(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

fn sensitivity() -> Outcome {
    let unwrap = |col: Vec<Option<usize>>, what: &str| -> Result<Vec<usize>, String> {
        col.into_iter().map(|v| v.ok_or(format!("missing {what}"))).collect()
    };
    let cell_mode = Config {
        mode: vhfnet::ModeChoice::Cell,
        ..config(1000, 5.0)
    };

    let uncapped = Config {
        coverage_cap_miles: None,
        ..cell_mode.clone()
    };
    let hs = [3.0, 5.0, 8.0, 10.0, 15.0, 20.0, 30.0, 50.0, 100.0];
    let s = sweep(&uncapped, Parameter::AntennaHeight, &hs).map_err(|e| e.to_string())?;
    let cells = unwrap(s.column(|p| p.cells), "cells")?;
    let h_reps = unwrap(s.column(|p| p.repeaters), "repeaters")?;
    ensure!(non_increasing(&cells), "cells not non-increasing in H: {cells:?}");
    ensure!(non_increasing(&h_reps), "repeaters not non-increasing in H: {h_reps:?}");
    ensure!(cells.first() > cells.last(), "H sweep is flat: {cells:?}");

    let dfs = [0.05, 0.1, 0.2, 0.3, 0.4, 0.6, 0.8, 1.2, 2.4];
    let s = sweep(&cell_mode, Parameter::DeltaF, &dfs).map_err(|e| e.to_string())?;
    let channels = unwrap(s.column(|p| p.channels), "channels")?;
    let tones = unwrap(s.column(|p| p.clusters_required), "tones needed")?;
    ensure!(
        channels[1..3] == [24, 12],
        "channels at 0.1, 0.2: {:?}",
        &channels[1..3]
    );
    ensure!(
        non_increasing(&channels),
        "channels not non-increasing in delta_f: {channels:?}"
    );
    ensure!(
        non_decreasing(&tones),
        "tones needed not non-decreasing in delta_f: {tones:?}"
    );

    let rs = [20.0, 30.0, 40.0, 50.0, 60.0, 80.0, 120.0];
    let s = sweep(&cell_mode, Parameter::AreaRadius, &rs).map_err(|e| e.to_string())?;
    let cells = unwrap(s.column(|p| p.cells), "cells")?;
    let reps = unwrap(s.column(|p| p.repeaters), "repeaters")?;
    ensure!(
        cells[0] == 37 && cells[2] == 91 && cells[5] == 331,
        "R sweep cells {cells:?}"
    );
    ensure!(non_decreasing(&cells), "cells not non-decreasing in R: {cells:?}");
    ensure!(non_decreasing(&reps), "repeaters not non-decreasing in R: {reps:?}");
    // Small R is infeasible for a different reason: fewer cells than clusters.
    let first_ok = s
        .points
        .iter()
        .position(|p| p.status == PointStatus::Ok)
        .ok_or("no feasible point in the R sweep")?;
    let cliff = first_ok
        + s.points[first_ok..]
            .iter()
            .position(|p| p.status != PointStatus::Ok)
            .ok_or("no infeasible point at large R")?;
    for p in &s.points[cliff..] {
        let err = p.error.as_deref().unwrap_or("");
        ensure!(
            p.status == PointStatus::Infeasible && err.contains("tone exhaustion"),
            "R={} past the cliff: {:?} {err}",
            p.value,
            p.status
        );
    }
    Ok(format!(
        "H: repeaters {:?}, delta_f: channels {:?}, R: cells {:?}, tone cliff at R={}",
        h_reps, channels, cells, rs[cliff]
    ))
}

fn terrain_cases() -> Outcome {
    let p = plan(1000, 5.0)?;
    let tess = &p.tessellation;
    let at = |q, s| tess.cells[tess.index_of(HexCoord::new(q, s)).unwrap()].center;
    let opts = AugmentOptions::default();
    let run = |o: &Obstacle, mode| augment(&p, o, mode, &opts).map_err(|e| e.to_string());
    let tall = |c: Point, r: f64| Obstacle::new(c, r, 800.0).map_err(|e| e.to_string());

    let (a, b) = (at(0, 0), at(1, 0));
    let small = tall(Point::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0), 0.3)?;
    ensure!(
        classify(&p, &small) == ObstacleClass::Small,
        "small fixture not classified Small"
    );

    let es = run(&small, TerrainMode::Emergency)?;
    ensure!(
        es.case == CaseLabel::EmergencySmall,
        "emergency/small case {:?}",
        es.case
    );
    ensure!(es.added.len() == 1, "emergency/small added {}", es.added.len());
    let reach = 3f64.sqrt() * tess.cell_radius;
    let near = tess
        .cells
        .iter()
        .filter(|c| c.center.distance(es.added[0].position) <= reach + 1e-9)
        .count();
    ensure!(near >= 2, "summit reaches {near} repeaters");

    let tri = [at(0, 0), at(1, 0), at(0, 1)];
    let centroid = Point::new(
        (tri[0].x + tri[1].x + tri[2].x) / 3.0,
        (tri[0].y + tri[1].y + tri[2].y) / 3.0,
    );
    let large = tall(centroid, 5.5)?;
    ensure!(
        classify(&p, &large) == ObstacleClass::Large,
        "large fixture not classified Large"
    );
    let el = run(&large, TerrainMode::Emergency)?;
    ensure!(
        el.case == CaseLabel::EmergencyLarge,
        "emergency/large case {:?}",
        el.case
    );
    let r_in = 2.0 * tess.cell_radius;
    let expected = centered_hex_number(rings_needed(large.radius, r_in).map_err(|e| e.to_string())?);
    ensure!(
        el.added.len() == expected,
        "inner division has {} cells, want {expected}",
        el.added.len()
    );
    ensure!(
        el.added.iter().all(|r| (r.radius - r_in).abs() < 1e-12),
        "inner cells use the wrong radius"
    );
    let mut inherited: Vec<usize> = el.added.iter().flat_map(|r| r.inherits.iter().copied()).collect();
    inherited.sort_unstable();
    inherited.dedup();
    ensure!(
        inherited == el.affected_cells,
        "inner division does not take over every displaced repeater"
    );

    let wide = tall(Point::ORIGIN, 12.0)?;
    let ew = run(&wide, TerrainMode::Emergency)?;
    ensure!(
        ew.case == CaseLabel::EmergencyLarge,
        "wide emergency case {:?}",
        ew.case
    );
    ensure!(
        ew.added.len() == 7,
        "wide obstacle inner division has {} cells, want 7",
        ew.added.len()
    );
    let mut inherited: Vec<usize> = ew.added.iter().flat_map(|r| r.inherits.iter().copied()).collect();
    inherited.sort_unstable();
    inherited.dedup();
    ensure!(
        inherited == ew.affected_cells,
        "wide inner division misses displaced repeaters"
    );
    for r in &ew.added {
        let pl = r.pl.ok_or("inner cell without tone")?;
        ensure!(
            pl == p.tone_of_repeater(r.inherits[0]),
            "inner cell tone is not inherited"
        );
    }

    let ms = run(&small, TerrainMode::Mobile)?;
    ensure!(
        ms.case == CaseLabel::MobileSmall && ms.added.is_empty(),
        "mobile/small added {}",
        ms.added.len()
    );

    let single = tall(Point::new(a.x + 0.4, a.y + 0.2), 1.5)?;
    let ml1 = run(&single, TerrainMode::Mobile)?;
    ensure!(ml1.case == CaseLabel::MobileLarge, "mobile/large case {:?}", ml1.case);
    ensure!(
        ml1.added.len() == 1,
        "one covered center gave {} repeaters",
        ml1.added.len()
    );
    let ml3 = run(&large, TerrainMode::Mobile)?;
    ensure!(
        ml3.affected_cells.len() == 3,
        "large fixture covers {} centers",
        ml3.affected_cells.len()
    );
    ensure!(
        ml3.added.len() == 3,
        "three covered centers gave {} repeaters",
        ml3.added.len()
    );
    let mut replaced: Vec<_> = ml3.added.iter().map(|r| r.replaces).collect();
    replaced.sort();
    replaced.dedup();
    ensure!(replaced.len() == 3, "a cell gained two replacements");
    for r in ml1.added.iter().chain(&ml3.added) {
        let id = r.replaces.ok_or("replacement without original")?;
        let cell = &tess.cells[id];
        ensure!(
            r.pl == Some(p.tone_of_repeater(id)),
            "replacement for {id} changes tone"
        );
        let obstacle = if ml1.added.contains(r) { &single } else { &large };
        ensure!(
            r.position.distance(obstacle.center) >= obstacle.radius - 1e-9,
            "replacement for {id} is on the mountain"
        );
        ensure!(
            r.position.distance(cell.center) <= cell.r + 1e-9,
            "replacement for {id} left its cell"
        );
        ensure!(
            r.position.distance(cell.center) >= cell.r * 3f64.sqrt() / 2.0 - 1e-9,
            "replacement for {id} is not on the cell boundary"
        );
    }
    Ok(format!(
        "emergency/small 1, emergency/large {} and {} inner cells, mobile/small 0, mobile/large 1 and 3",
        el.added.len(),
        ew.added.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1000-user plan", thousand_user_plan),
        ("10000-user plan", ten_thousand_user_plan),
        ("coverage physics", coverage_physics),
        ("reuse distance", reuse_distance),
        ("seamless coverage", seamless_coverage),
        ("protocol audit", protocol_audit),
        ("group-mode routing", group_routing),
        ("oracle equivalence", oracle_suites),
        ("sensitivity monotonicity", sensitivity),
        ("terrain cases", terrain_cases),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
