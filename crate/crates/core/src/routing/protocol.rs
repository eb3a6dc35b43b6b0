use crate::allocation::{check_in_band, Frequency, PlTone, UserId, DUPLEX_OFFSET};
use crate::error::Result;

/// A call in flight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    pub id: usize,
    pub src: UserId,
    pub dst: UserId,
    /// Transmissions made so far, the uplink included.
    pub hop_index: usize,
    pub carried_frequency: Frequency,
    /// Tone of the repeater that should pick the signal up next.
    pub stamped_pl: PlTone,
    pub payload: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelayOutcome {
    Forward(Message),
    /// The stamp did not match this repeater's tone; the signal is ignored.
    Reject,
}

/// Uplink frequency such that alternating by the duplex offset on every
/// transmission ends on `dst_channel`.
pub fn first_hop_frequency(dst_channel: Frequency, total_transmissions: usize) -> Frequency {
    if total_transmissions % 2 == 1 {
        dst_channel
    } else {
        Frequency::from_khz(dst_channel.khz() + DUPLEX_OFFSET.khz())
    }
}

/// A repeater with tone `tone` hears `msg`. On a tone match it retransmits on
/// the other side of the duplex pair, stamped with `next_pl`.
pub fn relay_step(tone: PlTone, msg: &Message, next_pl: PlTone) -> Result<RelayOutcome> {
    if msg.stamped_pl != tone {
        return Ok(RelayOutcome::Reject);
    }
    let carried_frequency = msg.carried_frequency.toggled(msg.dst.channel);
    check_in_band(carried_frequency)?;
    Ok(RelayOutcome::Forward(Message {
        hop_index: msg.hop_index + 1,
        carried_frequency,
        stamped_pl: next_pl,
        ..msg.clone()
    }))
}
