//! Channel attenuation: spectrum composition, reflector geometry, and
//! Gaussian-beam misalignment loss.
//!
//! The total attenuation splits into lens, residual-gas, alignment, and
//! mirror contributions; the mirror term enters scaled by the ratio of
//! section length to mirror spacing. Two deflection-station designs are
//! modeled: a single 45-degree mirror (S45M) and a two-mirror rigid
//! retroreflector (TMRRR).

use alloc::format;
use alloc::vec::Vec;

use crate::config::VbgConfig;
use crate::constants::{EARTH_RADIUS_KM, SPEED_OF_LIGHT};
use crate::curve::{CurveUnit, ExtrapPolicy, InterpLaw, SpectralCurve};
use crate::error::{CoreError, Result};
use crate::math;
use crate::units;

/// Beam-deflection station model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReflectorKind {
    /// All-lens configuration, no deflection stations.
    #[default]
    None,
    /// Single 45-degree incident mirror.
    S45m,
    /// Two-mirror rigid retroreflector.
    Tmrrr,
}

impl ReflectorKind {
    pub fn label(self) -> &'static str {
        match self {
            ReflectorKind::None => "none",
            ReflectorKind::S45m => "s45m",
            ReflectorKind::Tmrrr => "tmrrr",
        }
    }
}

/// Maximum spacing between mirror stations for burial depth `depth_m`,
/// km: sqrt(8 R_E D), set by the Earth's curvature.
pub fn mirror_spacing_max_km(depth_m: f64) -> Result<f64> {
    if !(depth_m > 0.0) {
        return Err(CoreError::InvalidInput(format!(
            "depth {depth_m} m must be positive"
        )));
    }
    Ok(math::sqrt(8.0 * EARTH_RADIUS_KM * depth_m / 1e3))
}

/// TMRRR station geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectorGeometry {
    pub kind: ReflectorKind,
    /// Fixed tipping angle of the first mirror, rad.
    pub tip_angle_rad: f64,
    /// Beam deflection angle L_mirror / (2 R_E), rad.
    pub deflect_angle_rad: f64,
    /// Mirror separation, m.
    pub separation_m: f64,
    /// Mirror radius, m.
    pub mirror_radius_m: f64,
}

impl ReflectorGeometry {
    /// TMRRR geometry at the minimum separation 2 R / sin(beta_s) where
    /// the mirrors just avoid shadowing each other.
    pub fn tmrrr(config: &VbgConfig) -> Result<Self> {
        let tip = config.tmrrr_tip_angle_rad;
        let r = config.lens_radius_m;
        let sep = 2.0 * r / math::sin(tip);
        Self::new(ReflectorKind::Tmrrr, tip, sep, r, config.mirror_spacing_km)
    }

    pub fn new(
        kind: ReflectorKind,
        tip_angle_rad: f64,
        separation_m: f64,
        mirror_radius_m: f64,
        mirror_spacing_km: f64,
    ) -> Result<Self> {
        let deflect = mirror_spacing_km / (2.0 * EARTH_RADIUS_KM);
        if kind == ReflectorKind::Tmrrr {
            let min_sep = 2.0 * mirror_radius_m / math::sin(tip_angle_rad);
            if separation_m < min_sep * (1.0 - 1e-12) {
                return Err(CoreError::InvalidInput(format!(
                    "TMRRR separation {separation_m} m below the shadowing limit \
                     {min_sep} m"
                )));
            }
        }
        Ok(Self {
            kind,
            tip_angle_rad,
            deflect_angle_rad: deflect,
            separation_m,
            mirror_radius_m,
        })
    }
}

/// First-order displacement perturbations of a TMRRR station under a
/// rotation of the rigid body: parallel (`delta_path_m`, along the beam)
/// and transverse (`delta_offset_m`) components for the tip and tilt
/// degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TmrrrPerturbation {
    /// From tipping in the incident plane: (delta L0, delta s).
    pub tip: (f64, f64),
    /// From tilting out of the incident plane: (delta L0, delta s).
    pub tilt: (f64, f64),
}

/// Tip/tilt of the retroreflector maps linearly onto beam displacements:
///   tip:  (dL0, ds) = 2 d dbeta_s (cos^2(beta_s + alpha), sin[2(beta_s + alpha)])
///   tilt: (dL0, ds) = 2 d dbeta_p (0, cos beta_s)
pub fn tmrrr_perturbation(
    dbeta_tip_rad: f64,
    dbeta_tilt_rad: f64,
    geom: &ReflectorGeometry,
) -> TmrrrPerturbation {
    let d = geom.separation_m;
    let angle = geom.tip_angle_rad + geom.deflect_angle_rad;
    TmrrrPerturbation {
        tip: (
            2.0 * d * dbeta_tip_rad * math::cos(angle) * math::cos(angle),
            2.0 * d * dbeta_tip_rad * math::sin(2.0 * angle),
        ),
        tilt: (0.0, 2.0 * d * dbeta_tilt_rad * math::cos(geom.tip_angle_rad)),
    }
}

/// Per-bounce power loss from an S45M tipping misalignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TiltLoss {
    /// Fractional power lost to the (0, +-1) modes.
    pub loss: f64,
    /// False when the loss exceeds 0.1 and the perturbative expansion is
    /// no longer trustworthy.
    pub perturbative: bool,
}

/// Tipping loss of a single 45-degree mirror at distance `z_m` from the
/// beam waist: l = k^2 w(z)^2 dbeta^2. At the waist this equals
/// (2 pi L0 / lambda) F dbeta^2.
pub fn s45m_tilt_loss(dbeta_rad: f64, z_from_waist_m: f64, config: &VbgConfig) -> TiltLoss {
    let k = config.wave_number();
    let w = config.spot_radius_at(z_from_waist_m);
    let loss = k * k * w * w * dbeta_rad * dbeta_rad;
    TiltLoss {
        loss,
        perturbative: loss <= 0.1,
    }
}

/// A configured channel with its attenuation spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelLink {
    pub config: VbgConfig,
    pub reflector: ReflectorKind,
    /// Attenuation vs wavelength (abscissa in m, values in dB/km).
    pub alpha_spectrum: SpectralCurve,
    /// In-band average attenuation, dB/km.
    pub alpha_avg_db_per_km: f64,
    /// Passband edges in wavelength, m.
    pub pass_band_m: (f64, f64),
    /// Passband width in frequency, Hz.
    pub delta_nu_hz: f64,
}

impl ChannelLink {
    /// Flat-window spectrum model: the configured in-band average inside
    /// the passband, a steep power-law wall outside. The band is
    /// symmetric in frequency about the carrier so that its frequency
    /// width equals c * dlambda / lambda_c^2 exactly.
    pub fn flat_window(config: &VbgConfig, reflector: ReflectorKind) -> Result<Self> {
        config.validate()?;
        let alpha = config.average_attenuation_db_per_km(reflector);
        let (lam_lo, lam_hi) = pass_band_wavelengths(config);
        // Wall cap keeps the curve finite while making the out-of-band
        // transmittance negligible over any distance of interest.
        let cap = 1.0e3_f64;
        let reach = math::exp(math::ln(cap / alpha) / config.window_wall_exponent);
        let samples = alloc::vec![
            (lam_lo * 0.8, cap),
            (lam_lo / reach, cap),
            (lam_lo, alpha),
            (lam_hi, alpha),
            (lam_hi * reach, cap),
            (lam_hi * 1.2, cap),
        ];
        let spectrum = SpectralCurve::new(
            samples,
            InterpLaw::LogLog,
            ExtrapPolicy::Clamp,
            ExtrapPolicy::Clamp,
            CurveUnit::AttenuationDbPerKm,
        )?;
        Ok(Self {
            config: config.clone(),
            reflector,
            alpha_spectrum: spectrum,
            alpha_avg_db_per_km: alpha,
            pass_band_m: (lam_lo, lam_hi),
            delta_nu_hz: config.window_width_hz(),
        })
    }

    /// Channel from a tabulated attenuation spectrum (dB/km vs m). The
    /// in-band average is the band mean of the curve; the reflector
    /// surcharge is added on top.
    pub fn from_tabulated(
        config: &VbgConfig,
        base_spectrum: &SpectralCurve,
        reflector: ReflectorKind,
    ) -> Result<Self> {
        config.validate()?;
        let (lam_lo, lam_hi) = pass_band_wavelengths(config);
        if base_spectrum.f_min() > lam_lo || base_spectrum.f_max() < lam_hi {
            return Err(CoreError::InvalidInput(format!(
                "tabulated spectrum [{:.4e}, {:.4e}] m does not cover the passband \
                 [{lam_lo:.4e}, {lam_hi:.4e}] m",
                base_spectrum.f_min(),
                base_spectrum.f_max()
            )));
        }
        let surcharge = config.reflector_surcharge_db_per_km(reflector);
        let spectrum = base_spectrum.mapped(CurveUnit::AttenuationDbPerKm, |_, v| v + surcharge)?;
        let avg = spectrum.integrate(lam_lo, lam_hi)? / (lam_hi - lam_lo);
        Ok(Self {
            config: config.clone(),
            reflector,
            alpha_spectrum: spectrum,
            alpha_avg_db_per_km: avg,
            pass_band_m: (lam_lo, lam_hi),
            delta_nu_hz: config.window_width_hz(),
        })
    }

    /// Transmission efficiency 10^(-0.1 L alpha(lambda)) over `l_km`.
    pub fn transmission_efficiency(&self, l_km: f64, wavelength_m: f64) -> Result<f64> {
        if !(l_km >= 0.0) {
            return Err(CoreError::InvalidInput(format!(
                "distance {l_km} km must be non-negative"
            )));
        }
        let alpha = self.alpha_spectrum.eval(wavelength_m)?;
        Ok(units::transmittance(alpha, l_km))
    }

    /// Transmission efficiency at the in-band average attenuation.
    pub fn transmission_efficiency_avg(&self, l_km: f64) -> f64 {
        units::transmittance(self.alpha_avg_db_per_km, l_km)
    }

    /// Sampled passband in optical frequency, ascending, with at least
    /// `min_points` nodes; used by the multiplexed-capacity quadrature.
    pub fn frequency_grid(&self, min_points: usize) -> Vec<f64> {
        let nu_lo = SPEED_OF_LIGHT / self.pass_band_m.1;
        let nu_hi = SPEED_OF_LIGHT / self.pass_band_m.0;
        let n = min_points.max(2);
        let mut grid = Vec::with_capacity(n);
        for i in 0..n {
            grid.push(nu_lo + (nu_hi - nu_lo) * i as f64 / (n - 1) as f64);
        }
        grid
    }
}

/// Passband edges in wavelength for a frequency-symmetric window.
fn pass_band_wavelengths(config: &VbgConfig) -> (f64, f64) {
    let nu_c = SPEED_OF_LIGHT / config.center_wavelength_m;
    let half = 0.5 * config.window_width_hz();
    (SPEED_OF_LIGHT / (nu_c + half), SPEED_OF_LIGHT / (nu_c - half))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn mirror_spacing_for_subway_depth() {
        // 30 m depth allows roughly 39 km between mirror stations.
        assert_relative_eq!(
            mirror_spacing_max_km(30.0).unwrap(),
            39.1,
            max_relative = 2e-3
        );
        // 200 m pushes it to about 101 km.
        assert_relative_eq!(
            mirror_spacing_max_km(200.0).unwrap(),
            100.9,
            max_relative = 2e-3
        );
        assert!(mirror_spacing_max_km(0.0).is_err());
        // Continuity at small depth.
        assert!(mirror_spacing_max_km(1e-9).unwrap() < 1e-3);
    }

    #[test]
    fn s45m_loss_at_waist_matches_closed_form() {
        let cfg = VbgConfig::default();
        let l = s45m_tilt_loss(1e-7, 0.0, &cfg);
        // (2 pi L0 / lambda) F dbeta^2 ~ 160 ppm for 0.1 urad.
        let expected = 2.0 * core::f64::consts::PI * 4000.0 / 1550e-9 * 1.0 * 1e-14;
        assert_relative_eq!(l.loss, expected, max_relative = 1e-9);
        assert_relative_eq!(l.loss, 1.6e-4, max_relative = 3e-2);
        assert!(l.perturbative);
    }

    #[test]
    fn s45m_loss_is_quadratic_and_zero_at_zero() {
        let cfg = VbgConfig::default();
        assert_eq!(s45m_tilt_loss(0.0, 0.0, &cfg).loss, 0.0);
        let l1 = s45m_tilt_loss(1e-7, 123.0, &cfg).loss;
        let l2 = s45m_tilt_loss(2e-7, 123.0, &cfg).loss;
        assert_relative_eq!(l2, 4.0 * l1, max_relative = 1e-12);
    }

    #[test]
    fn s45m_validity_flag_trips_on_large_angles() {
        let cfg = VbgConfig::default();
        let l = s45m_tilt_loss(3e-5, 0.0, &cfg);
        assert!(l.loss > 0.1);
        assert!(!l.perturbative);
    }

    #[test]
    fn tmrrr_perturbation_matches_worked_example() {
        // beta_s = 10 deg, d = 2R/sin(10 deg) ~ 1.38 m, dbeta = 0.1 mrad.
        let cfg = VbgConfig::default();
        let geom = ReflectorGeometry::tmrrr(&cfg).unwrap();
        assert_relative_eq!(geom.separation_m, 1.382, max_relative = 1e-3);
        let p = tmrrr_perturbation(1e-4, 1e-4, &geom);
        // Tilt: ds = 2 d dbeta cos(beta_s) ~ 0.27 mm.
        assert_relative_eq!(p.tilt.1, 2.72e-4, max_relative = 1e-2);
        assert_eq!(p.tilt.0, 0.0);
        // Tip: dL0 = 2 d dbeta cos^2(beta_s + alpha) ~ 2.7e-4 m.
        assert_relative_eq!(p.tip.0, 2.68e-4, max_relative = 1e-2);
    }

    #[test]
    fn tmrrr_perturbation_is_linear() {
        let cfg = VbgConfig::default();
        let geom = ReflectorGeometry::tmrrr(&cfg).unwrap();
        let p0 = tmrrr_perturbation(0.0, 0.0, &geom);
        assert_eq!(p0.tip, (0.0, 0.0));
        assert_eq!(p0.tilt, (0.0, 0.0));
        let p1 = tmrrr_perturbation(1e-5, 2e-5, &geom);
        let p2 = tmrrr_perturbation(2e-5, 4e-5, &geom);
        assert_relative_eq!(p2.tip.0, 2.0 * p1.tip.0, max_relative = 1e-12);
        assert_relative_eq!(p2.tip.1, 2.0 * p1.tip.1, max_relative = 1e-12);
        assert_relative_eq!(p2.tilt.1, 2.0 * p1.tilt.1, max_relative = 1e-12);
    }

    #[test]
    fn tmrrr_shadowing_limit_enforced() {
        let cfg = VbgConfig::default();
        let err = ReflectorGeometry::new(ReflectorKind::Tmrrr, cfg.tmrrr_tip_angle_rad, 0.5, 0.12, 40.0);
        assert!(err.is_err());
    }

    #[test]
    fn flat_window_reports_configured_averages() {
        let cfg = VbgConfig::default();
        let lens = ChannelLink::flat_window(&cfg, ReflectorKind::None).unwrap();
        assert_eq!(lens.alpha_avg_db_per_km, 3.7e-5);
        let s45m = ChannelLink::flat_window(&cfg, ReflectorKind::S45m).unwrap();
        assert_relative_eq!(s45m.alpha_avg_db_per_km, 1.0e-4, max_relative = 1e-12);
        let tmrrr = ChannelLink::flat_window(&cfg, ReflectorKind::Tmrrr).unwrap();
        assert_relative_eq!(tmrrr.alpha_avg_db_per_km, 4.0e-5, max_relative = 1e-12);
    }

    #[test]
    fn in_band_spectrum_is_flat_and_average_consistent() {
        let cfg = VbgConfig::default();
        let link = ChannelLink::flat_window(&cfg, ReflectorKind::None).unwrap();
        let (lo, hi) = link.pass_band_m;
        let mid = 0.5 * (lo + hi);
        assert_relative_eq!(
            link.alpha_spectrum.eval(mid).unwrap(),
            link.alpha_avg_db_per_km,
            max_relative = 1e-12
        );
        let avg = link.alpha_spectrum.integrate(lo, hi).unwrap() / (hi - lo);
        assert_relative_eq!(avg, link.alpha_avg_db_per_km, max_relative = 1e-9);
    }

    #[test]
    fn passband_width_in_frequency_matches_delta_nu() {
        let cfg = VbgConfig::default();
        let link = ChannelLink::flat_window(&cfg, ReflectorKind::None).unwrap();
        let nu_width = SPEED_OF_LIGHT / link.pass_band_m.0 - SPEED_OF_LIGHT / link.pass_band_m.1;
        assert_relative_eq!(nu_width, link.delta_nu_hz, max_relative = 1e-9);
        assert_relative_eq!(link.delta_nu_hz, cfg.window_width_hz(), max_relative = 1e-12);
    }

    #[test]
    fn transmission_efficiency_examples() {
        let cfg = VbgConfig::default();
        let link = ChannelLink::flat_window(&cfg, ReflectorKind::None).unwrap();
        assert_eq!(link.transmission_efficiency_avg(0.0), 1.0);
        // 3.7e-5 dB/km over 1e4 km: 10^-0.037.
        assert_relative_eq!(
            link.transmission_efficiency_avg(1e4),
            0.9183,
            max_relative = 1e-3
        );
        // Fiber-style sanity: 0.2 dB/km over 50 km is 10 dB, i.e. 0.1.
        assert_relative_eq!(units::transmittance(0.2, 50.0), 0.1, max_relative = 1e-12);
    }

    #[test]
    fn efficiency_is_multiplicative_in_distance() {
        let cfg = VbgConfig::default();
        let link = ChannelLink::flat_window(&cfg, ReflectorKind::Tmrrr).unwrap();
        let (a, b) = (1234.5, 6789.0);
        assert_relative_eq!(
            link.transmission_efficiency_avg(a + b),
            link.transmission_efficiency_avg(a) * link.transmission_efficiency_avg(b),
            max_relative = 1e-12
        );
    }

    #[test]
    fn surcharge_scales_inversely_with_mirror_spacing() {
        let mut cfg = VbgConfig::default();
        let s1 = cfg.reflector_surcharge_db_per_km(ReflectorKind::S45m);
        cfg.mirror_spacing_km /= 2.0;
        let s2 = cfg.reflector_surcharge_db_per_km(ReflectorKind::S45m);
        assert_relative_eq!(s2, 2.0 * s1, max_relative = 1e-12);
    }

    #[test]
    fn out_of_band_transmittance_dies() {
        let cfg = VbgConfig::default();
        let link = ChannelLink::flat_window(&cfg, ReflectorKind::None).unwrap();
        let lam = link.pass_band_m.0 * 0.98;
        let eta = link.transmission_efficiency(1e4, lam).unwrap();
        assert!(eta < 1e-30, "eta = {eta}");
    }
}
