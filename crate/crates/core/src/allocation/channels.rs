use std::fmt;

use crate::error::{PlanError, Result};

/// A carrier frequency, stored in whole kHz so channel arithmetic is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frequency(u32);

impl Frequency {
    pub const fn from_khz(khz: u32) -> Self {
        Frequency(khz)
    }

    pub fn from_mhz(mhz: f64) -> Result<Self> {
        let khz = (mhz * 1000.0).round();
        if !mhz.is_finite() || khz < 0.0 || khz > f64::from(u32::MAX) {
            return Err(PlanError::invalid("frequency", mhz, "not a representable frequency"));
        }
        Ok(Frequency(khz as u32))
    }

    pub const fn khz(self) -> u32 {
        self.0
    }

    pub fn mhz(self) -> f64 {
        f64::from(self.0) / 1000.0
    }

    /// The other side of the duplex pair: up by the offset from the base
    /// channel, down from the shifted one.
    pub fn toggled(self, base: Frequency) -> Frequency {
        if self == base {
            Frequency(base.0 + DUPLEX_OFFSET.0)
        } else {
            base
        }
    }
}

impl serde::Serialize for Frequency {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::fixed::serialize(&self.mhz(), s)
    }
}

impl<'de> serde::Deserialize<'de> for Frequency {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let mhz = f64::deserialize(d)?;
        Frequency::from_mhz(mhz).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.3}", self.mhz())
    }
}

/// Repeater transmit/receive separation.
pub const DUPLEX_OFFSET: Frequency = Frequency::from_khz(600);
pub const BAND_FLOOR: Frequency = Frequency::from_khz(145_000);
pub const BAND_CEILING: Frequency = Frequency::from_khz(148_000);

pub(crate) fn check_in_band(f: Frequency) -> Result<()> {
    if f < BAND_FLOOR || f > BAND_CEILING {
        Err(PlanError::BandViolation {
            mhz: f.mhz(),
            lo: BAND_FLOOR.mhz(),
            hi: BAND_CEILING.mhz(),
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelTable {
    pub f_lo: Frequency,
    pub f_hi: Frequency,
    pub delta_f: Frequency,
    pub duplex_offset: Frequency,
    pub channels: Vec<Frequency>,
}

impl ChannelTable {
    pub fn len(&self) -> usize {
        self.channels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }

    pub fn index_of(&self, f: Frequency) -> Option<usize> {
        self.channels.binary_search(&f).ok()
    }
}

/// Carriers at `f_lo`, `f_lo + Δf`, … strictly below `f_hi`.
pub fn build_channel_table(f_lo_mhz: f64, f_hi_mhz: f64, delta_f_mhz: f64) -> Result<ChannelTable> {
    if !(delta_f_mhz.is_finite() && delta_f_mhz > 0.0) {
        return Err(PlanError::invalid("delta_f", delta_f_mhz, "must be positive"));
    }
    if !(f_lo_mhz.is_finite() && f_hi_mhz.is_finite() && f_lo_mhz < f_hi_mhz) {
        return Err(PlanError::invalid("f_lo", f_lo_mhz, "must be below f_hi"));
    }
    let f_lo = Frequency::from_mhz(f_lo_mhz)?;
    let f_hi = Frequency::from_mhz(f_hi_mhz)?;
    let delta_f = Frequency::from_mhz(delta_f_mhz)?;
    if delta_f.khz() == 0 {
        return Err(PlanError::invalid("delta_f", delta_f_mhz, "must be at least 1 kHz"));
    }
    let count = (f_hi.khz() - f_lo.khz()) / delta_f.khz();
    if count == 0 {
        return Err(PlanError::invalid("delta_f", delta_f_mhz, "wider than the band"));
    }
    let channels: Vec<_> = (0..count)
        .map(|i| Frequency::from_khz(f_lo.khz() + i * delta_f.khz()))
        .collect();
    check_in_band(channels[0])?;
    for &ch in &channels {
        check_in_band(Frequency::from_khz(ch.khz() + DUPLEX_OFFSET.khz()))?;
    }
    Ok(ChannelTable {
        f_lo,
        f_hi,
        delta_f,
        duplex_offset: DUPLEX_OFFSET,
        channels,
    })
}
