use std::collections::VecDeque;

use serde::Serialize;

use super::protocol::{first_hop_frequency, relay_step, Message, RelayOutcome};
use super::routes::{Route, RoutingTable};
use crate::allocation::{Frequency, PlTone, Plan, UserId};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallRequest {
    pub src: UserId,
    pub dst: UserId,
    pub arrival: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Receive,
    Forward,
    Deliver,
    Reject,
    Fail,
}

/// One line of the delivery log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogRecord {
    pub msg_id: usize,
    pub tick: u64,
    pub repeater: Option<usize>,
    pub action: Action,
    pub frequency: Option<Frequency>,
    pub pl: Option<PlTone>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallOutcome {
    pub msg_id: usize,
    pub route: Option<Route>,
    pub delivered_at: Option<u64>,
    /// Frequency of the final transmission to the destination user.
    pub final_frequency: Option<Frequency>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct SimulationLog {
    pub records: Vec<LogRecord>,
    /// Indexed by request position.
    pub outcomes: Vec<CallOutcome>,
}

impl SimulationLog {
    pub fn delivered(&self) -> usize {
        self.outcomes.iter().filter(|o| o.delivered_at.is_some()).count()
    }

    pub fn failed(&self) -> usize {
        self.outcomes.len() - self.delivered()
    }

    /// Line-delimited JSON, one record per line.
    pub fn to_jsonl(&self) -> Result<String> {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r)?);
            out.push('\n');
        }
        Ok(out)
    }
}

struct InFlight {
    msg: Message,
    hops: Vec<usize>,
    at: usize,
}

/// Tick-driven run: each repeater forwards at most one queued message per
/// tick, in arrival order. A message received at tick `t` can leave at
/// `t + 1`. New calls are injected before repeaters are served.
pub fn simulate(plan: &Plan, table: &RoutingTable, requests: &[CallRequest]) -> SimulationLog {
    let n = plan.tessellation.len();
    let mut log = SimulationLog {
        records: Vec::new(),
        outcomes: (0..requests.len())
            .map(|msg_id| CallOutcome {
                msg_id,
                route: None,
                delivered_at: None,
                final_frequency: None,
                failure: None,
            })
            .collect(),
    };
    let mut order: Vec<usize> = (0..requests.len()).collect();
    order.sort_by_key(|&i| requests[i].arrival);

    let mut queues: Vec<VecDeque<(usize, u64)>> = vec![VecDeque::new(); n];
    let mut flights: Vec<Option<InFlight>> = (0..requests.len()).map(|_| None).collect();
    let mut active = 0usize;
    let mut next_req = 0usize;
    let mut tick = order.first().map_or(0, |&i| requests[i].arrival);

    loop {
        if active == 0 {
            match order.get(next_req) {
                Some(&i) => tick = tick.max(requests[i].arrival),
                None => break,
            }
        }
        while let Some(&i) = order.get(next_req).filter(|&&i| requests[i].arrival <= tick) {
            next_req += 1;
            match inject(plan, table, i, &requests[i]) {
                Ok(flight) => {
                    let home = flight.hops[0];
                    log.outcomes[i].route = Some(Route {
                        hops: flight.hops.clone(),
                    });
                    log.records.push(record(&flight.msg, tick, home, Action::Receive));
                    queues[home].push_back((i, tick + 1));
                    flights[i] = Some(flight);
                    active += 1;
                }
                Err(reason) => fail(&mut log, i, tick, None, reason),
            }
        }

        for rep in 0..n {
            let Some(&(i, ready)) = queues[rep].front() else {
                continue;
            };
            if ready > tick {
                continue;
            }
            queues[rep].pop_front();
            let flight = flights[i].as_mut().expect("queued messages are in flight");
            let last = flight.at + 1 == flight.hops.len();
            let next_pl = if last {
                flight.msg.dst.pl
            } else {
                plan.tone_of_repeater(flight.hops[flight.at + 1])
            };
            let out = match relay_step(plan.tone_of_repeater(rep), &flight.msg, next_pl) {
                Ok(RelayOutcome::Forward(m)) => m,
                Ok(RelayOutcome::Reject) => {
                    let msg = flight.msg.clone();
                    log.records.push(LogRecord {
                        reason: Some("stamp does not match repeater tone".into()),
                        ..record(&msg, tick, rep, Action::Reject)
                    });
                    fail(&mut log, i, tick, Some(rep), "dropped by PL filter".into());
                    flights[i] = None;
                    active -= 1;
                    continue;
                }
                Err(e) => {
                    fail(&mut log, i, tick, Some(rep), e.to_string());
                    flights[i] = None;
                    active -= 1;
                    continue;
                }
            };
            if last {
                log.records.push(record(&out, tick, rep, Action::Deliver));
                log.outcomes[i].delivered_at = Some(tick);
                log.outcomes[i].final_frequency = Some(out.carried_frequency);
                flights[i] = None;
                active -= 1;
                continue;
            }
            let next = flight.hops[flight.at + 1];
            log.records.push(record(&out, tick, rep, Action::Forward));
            log.records.push(record(&out, tick, next, Action::Receive));
            for other in plan.tessellation.neighbor_ids(rep) {
                if other != next && plan.tone_of_repeater(other) != out.stamped_pl {
                    log.records.push(record(&out, tick, other, Action::Reject));
                }
            }
            flight.msg = out;
            flight.at += 1;
            queues[next].push_back((i, tick + 1));
        }
        tick += 1;
    }
    log
}

fn inject(plan: &Plan, table: &RoutingTable, id: usize, req: &CallRequest) -> std::result::Result<InFlight, String> {
    let src = plan.home_repeater(&req.src).map_err(|e| e.to_string())?;
    let dst = plan.home_repeater(&req.dst).map_err(|e| e.to_string())?;
    let route = table.route(src, dst).map_err(|e| e.to_string())?;
    let msg = Message {
        id,
        src: req.src,
        dst: req.dst,
        hop_index: 1,
        carried_frequency: first_hop_frequency(req.dst.channel, route.total_transmissions()),
        stamped_pl: plan.tone_of_repeater(src),
        payload: Vec::new(),
    };
    Ok(InFlight {
        msg,
        hops: route.hops,
        at: 0,
    })
}

fn record(msg: &Message, tick: u64, repeater: usize, action: Action) -> LogRecord {
    LogRecord {
        msg_id: msg.id,
        tick,
        repeater: Some(repeater),
        action,
        frequency: Some(msg.carried_frequency),
        pl: Some(msg.stamped_pl),
        reason: None,
    }
}

fn fail(log: &mut SimulationLog, msg_id: usize, tick: u64, repeater: Option<usize>, reason: String) {
    log.outcomes[msg_id].failure = Some(reason.clone());
    log.records.push(LogRecord {
        msg_id,
        tick,
        repeater,
        action: Action::Fail,
        frequency: None,
        pl: None,
        reason: Some(reason),
    });
}
