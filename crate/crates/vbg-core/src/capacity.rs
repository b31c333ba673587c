//! Pure-loss quantum capacity of the channel.
//!
//! Per channel use at transmissivity eta the capacity is
//! `q_k = max[log2(eta^(2-k) / (1 - eta)), 0]` with k = 1 for one-way and
//! k = 2 for two-way protocols. Multiplexing over the transmission
//! window integrates q_k across the passband in optical frequency.

use alloc::format;

use crate::attenuation::ChannelLink;
use crate::constants::SPEED_OF_LIGHT;
use crate::error::{CoreError, Result};
use crate::math;

/// One- or two-way communication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    OneWay,
    TwoWay,
}

impl Protocol {
    fn k(self) -> f64 {
        match self {
            Protocol::OneWay => 1.0,
            Protocol::TwoWay => 2.0,
        }
    }
}

/// Capacity of a pure-loss channel per use, qubits/use.
///
/// Zero for eta <= 0.5 in the one-way case (the well-known threshold);
/// eta >= 1 is outside the loss-channel model and rejected.
pub fn pure_loss_capacity(eta: f64, protocol: Protocol) -> Result<f64> {
    if !(eta >= 0.0) || !eta.is_finite() {
        return Err(CoreError::InvalidInput(format!(
            "transmissivity {eta} must be non-negative"
        )));
    }
    if eta >= 1.0 {
        return Err(CoreError::InvalidInput(format!(
            "transmissivity {eta} >= 1: capacity diverges in the pure-loss model"
        )));
    }
    if eta == 0.0 {
        return Ok(0.0);
    }
    let k = protocol.k();
    let q = math::log2(math::powf(eta, 2.0 - k) / (1.0 - eta));
    Ok(q.max(0.0))
}

/// Capacity evaluation for a link at one distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityResult {
    /// Qubits per channel use at the carrier wavelength.
    pub per_use: f64,
    /// Multiplexed total, qubits/s.
    pub total: f64,
    /// 1 or 2.
    pub protocol_k: u8,
}

/// Multiplexed capacity Q_k = ∫ q_k dnu over the passband, qubits/s.
///
/// The integrand is sampled on the passband frequency grid refined to at
/// least 512 points so the q_k kink at eta = 0.5 stays resolved, then
/// integrated with the trapezoid rule (the integrand is piecewise smooth
/// and constant in-band for the flat-window model).
pub fn multiplexed_capacity(link: &ChannelLink, l_km: f64, protocol: Protocol) -> Result<CapacityResult> {
    if !(l_km > 0.0) {
        return Err(CoreError::InvalidInput(format!(
            "distance {l_km} km must be positive"
        )));
    }
    let grid = link.frequency_grid(512);
    let mut total = 0.0;
    let mut prev: Option<(f64, f64)> = None;
    for &nu in &grid {
        let lambda = SPEED_OF_LIGHT / nu;
        let eta = link.transmission_efficiency(l_km, lambda)?;
        // eta < 1 holds for any positive distance and attenuation, but a
        // zero-attenuation spectrum sample would diverge; clip just below 1.
        let q = pure_loss_capacity(eta.min(1.0 - 1e-15), protocol)?;
        if let Some((nu0, q0)) = prev {
            total += 0.5 * (q + q0) * (nu - nu0);
        }
        prev = Some((nu, q));
    }
    let eta_c = link.transmission_efficiency(l_km, link.config.center_wavelength_m)?;
    let per_use = pure_loss_capacity(eta_c.min(1.0 - 1e-15), protocol)?;
    Ok(CapacityResult {
        per_use,
        total,
        protocol_k: protocol.k() as u8,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attenuation::ReflectorKind;
    use crate::config::VbgConfig;
    use approx::assert_relative_eq;

    #[test]
    fn threshold_and_simple_values() {
        assert_eq!(pure_loss_capacity(0.5, Protocol::OneWay).unwrap(), 0.0);
        assert_relative_eq!(
            pure_loss_capacity(0.5, Protocol::TwoWay).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            pure_loss_capacity(0.75, Protocol::OneWay).unwrap(),
            3.0_f64.log2(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn one_way_threshold_is_exact() {
        assert_eq!(pure_loss_capacity(0.499999, Protocol::OneWay).unwrap(), 0.0);
        assert!(pure_loss_capacity(0.500001, Protocol::OneWay).unwrap() > 0.0);
    }

    #[test]
    fn two_way_dominates_one_way() {
        for i in 1..100 {
            let eta = i as f64 / 100.0;
            let q1 = pure_loss_capacity(eta, Protocol::OneWay).unwrap();
            let q2 = pure_loss_capacity(eta, Protocol::TwoWay).unwrap();
            assert!(q2 >= q1);
        }
    }

    #[test]
    fn unity_transmissivity_rejected() {
        assert!(pure_loss_capacity(1.0, Protocol::OneWay).is_err());
        assert!(pure_loss_capacity(1.5, Protocol::TwoWay).is_err());
    }

    #[test]
    fn flat_band_quadrature_matches_q_times_bandwidth() {
        let cfg = VbgConfig::default();
        let link = ChannelLink::flat_window(&cfg, ReflectorKind::Tmrrr).unwrap();
        let l = 1.0e4;
        let eta = link.transmission_efficiency_avg(l);
        let q = pure_loss_capacity(eta, Protocol::OneWay).unwrap();
        let res = multiplexed_capacity(&link, l, Protocol::OneWay).unwrap();
        assert_relative_eq!(res.total, q * link.delta_nu_hz, max_relative = 1e-4);
    }

    #[test]
    fn tmrrr_continental_capacity_is_tens_of_teraqubits() {
        let cfg = VbgConfig::default();
        let link = ChannelLink::flat_window(&cfg, ReflectorKind::Tmrrr).unwrap();
        let res = multiplexed_capacity(&link, 1.0e4, Protocol::OneWay).unwrap();
        assert!(res.total > 1.0e13 && res.total < 4.0e13, "Q1 = {}", res.total);
    }

    #[test]
    fn capacity_vanishes_at_extreme_distance() {
        let cfg = VbgConfig::default();
        let link = ChannelLink::flat_window(&cfg, ReflectorKind::None).unwrap();
        let res = multiplexed_capacity(&link, 1.0e9, Protocol::OneWay).unwrap();
        assert_eq!(res.total, 0.0);
    }

    #[test]
    fn capacity_monotone_in_distance() {
        let cfg = VbgConfig::default();
        let link = ChannelLink::flat_window(&cfg, ReflectorKind::S45m).unwrap();
        let mut prev = f64::INFINITY;
        for &l in &[1e2, 1e3, 1e4, 3e4, 1e5] {
            let q = multiplexed_capacity(&link, l, Protocol::TwoWay).unwrap().total;
            assert!(q <= prev);
            prev = q;
        }
    }
}
