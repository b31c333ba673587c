//! Channel configuration: the nominal VBG parameter set plus material,
//! isolation, sensing-laser, and acoustic environment parameters.
//!
//! Every field has a documented default; absent keys in a config file
//! fall back to these values.

use alloc::format;
use alloc::string::String;

use crate::attenuation::ReflectorKind;
use crate::constants::SPEED_OF_LIGHT;
use crate::curve::{CurveUnit, SpectralCurve};
use crate::error::{CoreError, Result};
use crate::math;

/// Optical-element material parameters used by the dispersion model and
/// the analytic thermal-noise cross-checks.
///
/// The thermal coefficients are *effective* values calibrated so that the
/// analytic fluctuation-dissipation forms land on the fitted coating and
/// substrate noise levels at 1 Hz and 1550 nm; they are not handbook
/// values for any single material.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialParams {
    /// Effective refractive index of the lens substrate.
    pub n_substrate: f64,
    /// Group index of the substrate at the carrier wavelength.
    pub n_group: f64,
    /// Substrate thickness, m.
    pub d_substrate: f64,
    /// Coating thickness, m.
    pub d_coating: f64,
    /// Group-velocity dispersion of the substrate, s^2/m (signed).
    pub gvd: f64,
    /// Substrate birefringence.
    pub delta_n_birefringence: f64,
    /// Mirror-coating birefringence phase, rad.
    pub phi_mirror: f64,
    /// Lens (substrate) birefringence phase, rad.
    pub phi_lens: f64,
    /// Substrate Young's modulus, Pa.
    pub young_substrate: f64,
    /// Coating Young's modulus, Pa.
    pub young_coating: f64,
    /// Coating loss angle, parallel component.
    pub loss_angle_par: f64,
    /// Coating loss angle, orthogonal component.
    pub loss_angle_perp: f64,
    /// Thermal conductivity, W/(m*K).
    pub kappa: f64,
    /// Volumetric heat capacity, J/(m^3*K).
    pub heat_capacity: f64,
    /// Density, kg/m^3.
    pub density: f64,
    /// Effective thermal expansion of the coating, 1/K (calibrated).
    pub alpha_thermal_coating: f64,
    /// Effective thermal expansion of the substrate, 1/K.
    pub alpha_thermal_substrate: f64,
    /// Effective thermo-refractive coefficient of the coating, 1/K.
    pub beta_thermorefractive: f64,
    /// Effective thermo-optic response of the substrate,
    /// dn/dT + alpha (n - 1), 1/K.
    pub beta_thermooptic: f64,
}

impl Default for MaterialParams {
    fn default() -> Self {
        Self {
            n_substrate: 1.46,
            n_group: 1.46,
            d_substrate: 0.02,
            d_coating: 1.0e-6,
            gvd: -2.5855e-26,
            delta_n_birefringence: 1.0e-7,
            phi_mirror: 1.0e-4,
            phi_lens: 8.107e-3,
            young_substrate: 72.0e9,
            young_coating: 140.0e9,
            loss_angle_par: 4.0e-4,
            loss_angle_perp: 4.0e-4,
            kappa: 1.38,
            heat_capacity: 1.64e6,
            density: 2200.0,
            alpha_thermal_coating: 4.2e-5,
            alpha_thermal_substrate: 5.5e-7,
            beta_thermorefractive: 1.3e-5,
            beta_thermooptic: 1.27e-5,
        }
    }
}

impl MaterialParams {
    pub fn validate(&self) -> Result<()> {
        let positives = [
            ("n_substrate", self.n_substrate),
            ("n_group", self.n_group),
            ("d_substrate", self.d_substrate),
            ("d_coating", self.d_coating),
            ("delta_n_birefringence", self.delta_n_birefringence),
            ("phi_mirror", self.phi_mirror),
            ("phi_lens", self.phi_lens),
            ("young_substrate", self.young_substrate),
            ("young_coating", self.young_coating),
            ("loss_angle_par", self.loss_angle_par),
            ("loss_angle_perp", self.loss_angle_perp),
            ("kappa", self.kappa),
            ("heat_capacity", self.heat_capacity),
            ("density", self.density),
            ("alpha_thermal_coating", self.alpha_thermal_coating),
            ("alpha_thermal_substrate", self.alpha_thermal_substrate),
            ("beta_thermorefractive", self.beta_thermorefractive),
            ("beta_thermooptic", self.beta_thermooptic),
        ];
        for (name, v) in positives {
            if !(v > 0.0) || !v.is_finite() {
                return Err(CoreError::InvalidInput(format!(
                    "material parameter {name} = {v} must be positive"
                )));
            }
        }
        if !self.gvd.is_finite() {
            return Err(CoreError::InvalidInput(String::from("gvd must be finite")));
        }
        if self.n_group < 1.0 {
            return Err(CoreError::InvalidInput(format!(
                "group index {} must be >= 1",
                self.n_group
            )));
        }
        Ok(())
    }
}

/// Two-spring passive isolation platform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolationParams {
    /// Damping ratio.
    pub damping_ratio: f64,
    /// Natural frequency, Hz.
    pub natural_freq_hz: f64,
}

impl Default for IsolationParams {
    fn default() -> Self {
        Self {
            damping_ratio: 0.1,
            natural_freq_hz: 0.5,
        }
    }
}

impl IsolationParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.damping_ratio > 0.0 && self.damping_ratio < 1.0) {
            return Err(CoreError::InvalidInput(format!(
                "damping ratio {} must lie in (0, 1)",
                self.damping_ratio
            )));
        }
        if !(self.natural_freq_hz > 0.0) {
            return Err(CoreError::InvalidInput(format!(
                "natural frequency {} Hz must be positive",
                self.natural_freq_hz
            )));
        }
        Ok(())
    }
}

/// Phase-sensing laser for the round-trip cancellation scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct SensingLaser {
    /// Sensing wavelength, m.
    pub wavelength: f64,
    /// Received optical power, W.
    pub power: f64,
    /// Detection efficiency.
    pub detection_efficiency: f64,
    /// Laser frequency-noise PSD, Hz^2/Hz.
    pub freq_noise: SpectralCurve,
}

impl SensingLaser {
    /// The default ultra-stable sensing laser: frequency-noise PSD
    /// `6.4e-5/f + 1.4e-4` Hz^2/Hz at 1542 nm, 1 uW received power, 80%
    /// detection efficiency.
    pub fn ultra_stable_default() -> Self {
        Self {
            wavelength: 1542e-9,
            power: 1e-6,
            detection_efficiency: 0.8,
            freq_noise: Self::freq_noise_from_coefficients(6.4e-5, 1.4e-4),
        }
    }

    /// Tabulate `flicker/f + white` on a dense log grid.
    pub fn freq_noise_from_coefficients(flicker: f64, white: f64) -> SpectralCurve {
        SpectralCurve::from_fn(1e-4, 1e9, 60, CurveUnit::PsdHz2PerHz, |f| flicker / f + white)
            .expect("valid analytic frequency-noise curve")
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.power > 0.0) {
            return Err(CoreError::InvalidInput(format!(
                "sensing power {} W must be positive",
                self.power
            )));
        }
        if !(self.detection_efficiency > 0.0 && self.detection_efficiency <= 1.0) {
            return Err(CoreError::InvalidInput(format!(
                "detection efficiency {} must lie in (0, 1]",
                self.detection_efficiency
            )));
        }
        if !(self.wavelength > 0.0) {
            return Err(CoreError::InvalidInput(String::from(
                "sensing wavelength must be positive",
            )));
        }
        Ok(())
    }
}

/// Residual-gas acoustic environment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcousticParams {
    /// Interior excitation sound level under normal pressure, dB SPL.
    pub sound_level_db: f64,
    /// Sound speed in the residual gas, m/s.
    pub sound_speed_m_s: f64,
    /// Refractive-index pressure response of the gas, 1/Pa.
    pub polarizability_per_pa: f64,
    /// Reference sound pressure, Pa; fixed at 2e-5.
    pub p_ref_pa: f64,
}

impl Default for AcousticParams {
    fn default() -> Self {
        Self {
            sound_level_db: 20.0,
            sound_speed_m_s: 350.0,
            polarizability_per_pa: 3.0e-9,
            p_ref_pa: crate::constants::SOUND_PRESSURE_REF,
        }
    }
}

impl AcousticParams {
    pub fn validate(&self) -> Result<()> {
        if (self.p_ref_pa - crate::constants::SOUND_PRESSURE_REF).abs() > 1e-12 {
            return Err(CoreError::InvalidInput(format!(
                "reference sound pressure {} Pa must equal 2e-5 Pa",
                self.p_ref_pa
            )));
        }
        if !(self.sound_speed_m_s > 0.0) {
            return Err(CoreError::InvalidInput(format!(
                "sound speed {} m/s must be positive",
                self.sound_speed_m_s
            )));
        }
        Ok(())
    }
}

/// The nominal channel parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct VbgConfig {
    /// Section length, km.
    pub section_length_km: f64,
    /// Lens focal length, km.
    pub focal_length_km: f64,
    /// Lens radius, m.
    pub lens_radius_m: f64,
    /// Center wavelength, m.
    pub center_wavelength_m: f64,
    /// Transmission-window width, m.
    pub window_width_m: f64,
    /// Beam spot size at the optical elements, m.
    pub spot_size_m: f64,
    /// Residual gas pressure, Pa.
    pub gas_pressure_pa: f64,
    /// Operating temperature, K.
    pub temperature_k: f64,
    /// Total link length, km.
    pub total_length_km: f64,
    /// Beam-deflection station model.
    pub reflector: ReflectorKind,
    /// Spacing between mirror stations, km.
    pub mirror_spacing_km: f64,
    /// Burial depth available for straight runs, m.
    pub depth_m: f64,
    /// In-band attenuation of the all-lens configuration, dB/km.
    pub alpha_base_db_per_km: f64,
    /// Extra attenuation of an S45M mirror section, dB per km of
    /// mirror-section length (enters scaled by L0/L_mirror).
    pub alpha_mirror_s45m_db_per_km: f64,
    /// Extra attenuation of a TMRRR mirror section, dB per km of
    /// mirror-section length.
    pub alpha_mirror_tmrrr_db_per_km: f64,
    /// Power-law steepness of the window wall outside the passband.
    pub window_wall_exponent: f64,
    /// Seismic surface-wave speed used to derive tilt from translation,
    /// m/s.
    pub seismic_wave_speed_m_s: f64,
    /// Rms jitter of each element's optic-axis orientation, rad.
    pub axis_jitter_rms_rad: f64,
    /// Fixed tipping angle of the TMRRR first mirror, rad.
    pub tmrrr_tip_angle_rad: f64,
    /// Noise-budget grid: lower edge, Hz.
    pub budget_f_lo_hz: f64,
    /// Noise-budget grid: upper edge, Hz.
    pub budget_f_hi_hz: f64,
    /// Noise-budget grid density, points per decade.
    pub grid_points_per_decade: usize,
    /// Bandwidth of the feedforward correction loop, Hz. The round-trip
    /// filter itself cuts off at c/(2 L0); the loop bandwidth says where
    /// the correction (and its sensing noise) is actually applied.
    pub cancellation_bandwidth_hz: f64,
    pub materials: MaterialParams,
    pub isolation: IsolationParams,
    pub sensing: SensingLaser,
    pub acoustic: AcousticParams,
}

impl Default for VbgConfig {
    fn default() -> Self {
        Self {
            section_length_km: 4.0,
            focal_length_km: 2.0,
            lens_radius_m: 0.12,
            center_wavelength_m: 1550e-9,
            window_width_m: 50e-9,
            spot_size_m: 0.04,
            gas_pressure_pa: 1.0,
            temperature_k: 300.0,
            total_length_km: 1.0e4,
            reflector: ReflectorKind::None,
            mirror_spacing_km: 40.0,
            depth_m: 30.0,
            alpha_base_db_per_km: 3.7e-5,
            alpha_mirror_s45m_db_per_km: 6.3e-4,
            alpha_mirror_tmrrr_db_per_km: 3.0e-5,
            window_wall_exponent: 2000.0,
            seismic_wave_speed_m_s: 2200.0,
            axis_jitter_rms_rad: 1.0e-3,
            tmrrr_tip_angle_rad: 10.0_f64.to_radians(),
            budget_f_lo_hz: 0.01,
            budget_f_hi_hz: 1.0e8,
            grid_points_per_decade: 200,
            cancellation_bandwidth_hz: 1.0e3,
            materials: MaterialParams::default(),
            isolation: IsolationParams::default(),
            sensing: SensingLaser::ultra_stable_default(),
            acoustic: AcousticParams::default(),
        }
    }
}

impl VbgConfig {
    pub fn validate(&self) -> Result<()> {
        let positive_lengths = [
            ("section_length_km", self.section_length_km),
            ("focal_length_km", self.focal_length_km),
            ("lens_radius_m", self.lens_radius_m),
            ("center_wavelength_m", self.center_wavelength_m),
            ("window_width_m", self.window_width_m),
            ("spot_size_m", self.spot_size_m),
            ("total_length_km", self.total_length_km),
            ("mirror_spacing_km", self.mirror_spacing_km),
            ("depth_m", self.depth_m),
        ];
        for (name, v) in positive_lengths {
            if !(v > 0.0) || !v.is_finite() {
                return Err(CoreError::InvalidInput(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        if self.window_width_m >= self.center_wavelength_m {
            return Err(CoreError::InvalidInput(format!(
                "window width {} m must be smaller than the carrier wavelength {} m",
                self.window_width_m, self.center_wavelength_m
            )));
        }
        if !(self.gas_pressure_pa > 0.0) {
            return Err(CoreError::InvalidInput(format!(
                "gas pressure {} Pa must be positive",
                self.gas_pressure_pa
            )));
        }
        if 4.0 * self.focal_length_km < self.section_length_km {
            return Err(CoreError::InvalidInput(format!(
                "focal length {} km too short: need 4 f >= L0 = {} km for a real \
                 geometry factor",
                self.focal_length_km, self.section_length_km
            )));
        }
        if !(self.budget_f_lo_hz > 0.0 && self.budget_f_hi_hz > self.budget_f_lo_hz) {
            return Err(CoreError::InvalidInput(String::from(
                "budget frequency range must be positive and increasing",
            )));
        }
        self.materials.validate()?;
        self.isolation.validate()?;
        self.sensing.validate()?;
        self.acoustic.validate()?;
        Ok(())
    }

    /// Carrier wave number 2*pi/lambda, 1/m.
    pub fn wave_number(&self) -> f64 {
        2.0 * core::f64::consts::PI / self.center_wavelength_m
    }

    /// Geometry factor F = sqrt(4 f / L0 - 1); 1 for the confocal layout.
    pub fn geometry_factor(&self) -> f64 {
        math::sqrt(4.0 * self.focal_length_km / self.section_length_km - 1.0)
    }

    /// Beam waist radius at the section center, m: w0^2 = L0 F lambda / (2 pi).
    pub fn waist_radius(&self) -> f64 {
        let l0 = self.section_length_km * 1e3;
        math::sqrt(l0 * self.geometry_factor() * self.center_wavelength_m
            / (2.0 * core::f64::consts::PI))
    }

    /// Rayleigh range of the section beam, m.
    pub fn rayleigh_range(&self) -> f64 {
        core::f64::consts::PI * self.waist_radius() * self.waist_radius()
            / self.center_wavelength_m
    }

    /// Spot radius at distance `z` m from the waist.
    pub fn spot_radius_at(&self, z_m: f64) -> f64 {
        let zr = self.rayleigh_range();
        self.waist_radius() * math::sqrt(1.0 + (z_m / zr) * (z_m / zr))
    }

    /// Gaussian divergence half-angle lambda / (pi w0), rad.
    pub fn divergence_angle(&self) -> f64 {
        self.center_wavelength_m / (core::f64::consts::PI * self.waist_radius())
    }

    /// Transmission-window width in frequency, Hz: c * dlambda / lambda^2.
    pub fn window_width_hz(&self) -> f64 {
        SPEED_OF_LIGHT * self.window_width_m
            / (self.center_wavelength_m * self.center_wavelength_m)
    }

    /// One-way light travel time across a section, s.
    pub fn section_delay_s(&self) -> f64 {
        self.section_length_km * 1e3 / SPEED_OF_LIGHT
    }

    /// Number of sections in the full link.
    pub fn section_count(&self) -> f64 {
        self.total_length_km / self.section_length_km
    }

    /// In-band average attenuation for a reflector choice, dB/km,
    /// composed as base + (L0/L_mirror) * mirror-section surcharge.
    pub fn average_attenuation_db_per_km(&self, reflector: ReflectorKind) -> f64 {
        self.alpha_base_db_per_km + self.reflector_surcharge_db_per_km(reflector)
    }

    /// The (L0/L_mirror)-scaled mirror surcharge, dB/km.
    pub fn reflector_surcharge_db_per_km(&self, reflector: ReflectorKind) -> f64 {
        let ratio = self.section_length_km / self.mirror_spacing_km;
        match reflector {
            ReflectorKind::None => 0.0,
            ReflectorKind::S45m => ratio * self.alpha_mirror_s45m_db_per_km,
            ReflectorKind::Tmrrr => ratio * self.alpha_mirror_tmrrr_db_per_km,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn defaults_validate() {
        VbgConfig::default().validate().unwrap();
    }

    #[test]
    fn confocal_geometry_factor_is_one() {
        let cfg = VbgConfig::default();
        assert_relative_eq!(cfg.geometry_factor(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn waist_and_rayleigh_range() {
        let cfg = VbgConfig::default();
        // w0 = sqrt(4000 * 1 * 1.55e-6 / 2pi) ~ 3.14 cm, zR = L0 F / 2 = 2 km.
        assert_relative_eq!(cfg.waist_radius(), 0.0314, max_relative = 1e-2);
        assert_relative_eq!(cfg.rayleigh_range(), 2000.0, max_relative = 1e-9);
    }

    #[test]
    fn window_width_is_six_thz() {
        let cfg = VbgConfig::default();
        assert_relative_eq!(cfg.window_width_hz(), 6.24e12, max_relative = 1e-2);
    }

    #[test]
    fn reflector_surcharges_match_configured_deltas() {
        let cfg = VbgConfig::default();
        assert_relative_eq!(
            cfg.average_attenuation_db_per_km(ReflectorKind::S45m),
            1.0e-4,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            cfg.average_attenuation_db_per_km(ReflectorKind::Tmrrr),
            4.0e-5,
            max_relative = 1e-12
        );
    }

    #[test]
    fn short_focal_length_rejected() {
        let cfg = VbgConfig {
            focal_length_km: 0.9,
            ..VbgConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn window_wider_than_carrier_rejected() {
        let cfg = VbgConfig {
            window_width_m: 2e-6,
            ..VbgConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
