//! Store-and-forward relaying between repeaters.

mod protocol;
mod routes;
mod sim;

pub use protocol::{first_hop_frequency, relay_step, Message, RelayOutcome};
pub use routes::{bfs_distances, build_routes, Route, RoutingTable};
pub use sim::{simulate, Action, CallRequest, LogRecord, SimulationLog};
