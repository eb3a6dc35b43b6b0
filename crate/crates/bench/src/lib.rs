//! Shared fixtures for the benchmarks.

use vhfnet::routing::CallRequest;
use vhfnet::{build_plan, Config, Plan};

pub fn plan_for(users: usize, cap_miles: f64) -> Plan {
    build_plan(&config_for(users, cap_miles)).expect("benchmark configs are feasible")
}

pub fn config_for(users: usize, cap_miles: f64) -> Config {
    Config {
        users,
        coverage_cap_miles: Some(cap_miles),
        ..Config::default()
    }
}

/// `calls` requests spread over the user list with a fixed stride, arriving
/// a few per tick.
pub fn requests(plan: &Plan, calls: usize) -> Vec<CallRequest> {
    let n = plan.users.len();
    (0..calls)
        .map(|k| CallRequest {
            src: plan.users[(k * 7919) % n],
            dst: plan.users[(k * 104_729 + 13) % n],
            arrival: (k / 4) as u64,
        })
        .collect()
}
