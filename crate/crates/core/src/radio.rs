//! First-order radio energy model.
//!
//! Transmission spends electronics energy per bit plus an amplifier term
//! that switches from free-space (d^2) to multipath (d^4) at the threshold
//! distance d0 = sqrt(eps_fs / eps_mp). Reception and aggregation spend
//! electronics and fusion energy per bit. The cluster-head round budget
//! combines the three for one data frame per member.

use crate::error::{Result, SimError};

/// Radio energy constants, all strictly positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadioParams {
    /// Electronics energy, joules/bit.
    pub e_elec: f64,
    /// Data-aggregation energy, joules/bit/signal.
    pub e_da: f64,
    /// Free-space amplifier, joules/bit/m^2.
    pub eps_fs: f64,
    /// Multipath amplifier, joules/bit/m^4.
    pub eps_mp: f64,
    /// Frame payload, bits.
    pub payload_bits: u64,
    d0: f64,
}

impl RadioParams {
    pub fn new(
        e_elec: f64,
        e_da: f64,
        eps_fs: f64,
        eps_mp: f64,
        payload_bits: u64,
    ) -> Result<Self> {
        let check = |name: &'static str, value: f64| -> Result<()> {
            if value > 0.0 && value.is_finite() {
                Ok(())
            } else {
                Err(SimError::InvalidParameter {
                    name,
                    reason: format!("must be > 0, got {value}"),
                })
            }
        };
        check("e_elec", e_elec)?;
        check("e_da", e_da)?;
        check("eps_fs", eps_fs)?;
        check("eps_mp", eps_mp)?;
        if payload_bits == 0 {
            return Err(SimError::InvalidParameter {
                name: "payload_bits",
                reason: "must be > 0".into(),
            });
        }
        Ok(Self {
            e_elec,
            e_da,
            eps_fs,
            eps_mp,
            payload_bits,
            d0: (eps_fs / eps_mp).sqrt(),
        })
    }

    /// Free-space / multipath crossover distance, meters.
    pub fn threshold_distance(&self) -> f64 {
        self.d0
    }

    /// Energy to transmit `bits` over distance `d`, joules.
    pub fn tx_energy(&self, bits: u64, d: f64) -> f64 {
        let bits = bits as f64;
        if d < self.d0 {
            bits * self.e_elec + bits * self.eps_fs * d.powi(2)
        } else {
            bits * self.e_elec + bits * self.eps_mp * d.powi(4)
        }
    }

    /// Energy to receive `bits`, joules.
    pub fn rx_energy(&self, bits: u64) -> f64 {
        bits as f64 * self.e_elec
    }

    /// Energy to fuse `signals` frames of `payload_bits` each, joules.
    pub fn aggregation_energy(&self, signals: u64) -> f64 {
        signals as f64 * self.payload_bits as f64 * self.e_da
    }

    /// Total cluster-head energy for one round: receive one frame from each
    /// of `members`, aggregate `members + 1` signals (its own included),
    /// and transmit the fused frame to the base station.
    pub fn ch_round_energy(&self, members: u64, d_to_bs: f64) -> f64 {
        members as f64 * self.rx_energy(self.payload_bits)
            + self.aggregation_energy(members + 1)
            + self.tx_energy(self.payload_bits, d_to_bs)
    }
}

impl Default for RadioParams {
    /// Reference constants: 50 nJ/bit electronics, 50 nJ/bit/signal fusion,
    /// 10 pJ/bit/m^2 free-space and 0.0013 pJ/bit/m^4 multipath amplifiers,
    /// 4000-bit frames.
    fn default() -> Self {
        Self::new(50e-9, 50e-9, 10e-12, 0.0013e-12, 4000).expect("reference constants are valid")
    }
}
