//! Tabulated spectral curves.
//!
//! A [`SpectralCurve`] carries frequency-indexed samples plus an
//! interpolation law and per-side extrapolation policies. Noise curves
//! span many decades, so log-log interpolation (a power law between
//! nodes) is the default; linear interpolation is opt-in.
//!
//! Integration is exact for pure power-law segments: between two nodes a
//! log-log curve *is* `v_i * (f/f_i)^p`, which has a closed-form
//! antiderivative. Quadrature of arbitrary functions over curves lives
//! with the callers ([`crate::noise`], [`crate::capacity`]).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{CoreError, Result};
use crate::math;

/// What the sample values mean. Used only for validation and labeling;
/// units are fixed per field and documented, never inferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveUnit {
    /// Phase noise PSD, rad^2/Hz (per-km variants share the sign rule).
    PsdRad2PerHz,
    /// Amplitude spectral density of displacement, m/sqrt(Hz).
    AsdMeterPerSqrtHz,
    /// Laser frequency-noise PSD, Hz^2/Hz.
    PsdHz2PerHz,
    /// Attenuation, dB/km.
    AttenuationDbPerKm,
    /// Anything else; no sign constraint.
    Dimensionless,
}

impl CurveUnit {
    /// PSD-like and attenuation units must be non-negative.
    pub fn requires_non_negative(self) -> bool {
        !matches!(self, CurveUnit::Dimensionless)
    }

    pub fn label(self) -> &'static str {
        match self {
            CurveUnit::PsdRad2PerHz => "rad^2/Hz",
            CurveUnit::AsdMeterPerSqrtHz => "m/sqrt(Hz)",
            CurveUnit::PsdHz2PerHz => "Hz^2/Hz",
            CurveUnit::AttenuationDbPerKm => "dB/km",
            CurveUnit::Dimensionless => "1",
        }
    }
}

/// Interpolation between nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InterpLaw {
    /// Power law between nodes (straight line in log-log axes). Falls
    /// back to linear on any segment with a non-positive endpoint.
    #[default]
    LogLog,
    /// Straight line in linear axes.
    Linear,
}

/// What to do outside the sampled domain, chosen per side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtrapPolicy {
    /// Continue the power law fitted to the two outermost samples.
    PowerLawFit,
    /// Continue a power law with a fixed exponent anchored at the
    /// outermost sample.
    PowerLawFixed(f64),
    /// Hold the outermost sample value.
    Clamp,
    /// Refuse to extrapolate.
    Error,
}

/// An ordered set of (frequency, value) samples with interpolation and
/// extrapolation rules. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCurve {
    samples: Vec<(f64, f64)>,
    interp: InterpLaw,
    extrap_low: ExtrapPolicy,
    extrap_high: ExtrapPolicy,
    unit: CurveUnit,
}

impl SpectralCurve {
    /// Build a curve, validating the invariants: frequencies strictly
    /// increasing and positive, all values finite, values non-negative
    /// when the unit demands it.
    pub fn new(
        samples: Vec<(f64, f64)>,
        interp: InterpLaw,
        extrap_low: ExtrapPolicy,
        extrap_high: ExtrapPolicy,
        unit: CurveUnit,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(CoreError::InvalidCurve(String::from("no samples")));
        }
        let mut prev = 0.0;
        for (i, &(f, v)) in samples.iter().enumerate() {
            if !f.is_finite() || f <= 0.0 {
                return Err(CoreError::InvalidCurve(format!(
                    "sample {i}: frequency {f} not finite and positive"
                )));
            }
            if f <= prev {
                return Err(CoreError::InvalidCurve(format!(
                    "sample {i}: frequency {f} not strictly increasing"
                )));
            }
            if !v.is_finite() {
                return Err(CoreError::InvalidCurve(format!(
                    "sample {i}: value {v} not finite"
                )));
            }
            if unit.requires_non_negative() && v < 0.0 {
                return Err(CoreError::InvalidCurve(format!(
                    "sample {i}: negative value {v} for unit {}",
                    unit.label()
                )));
            }
            prev = f;
        }
        Ok(Self {
            samples,
            interp,
            extrap_low,
            extrap_high,
            unit,
        })
    }

    /// Log-log curve with power-law-fit extrapolation on both sides;
    /// the default shape for PSDs and attenuation spectra.
    pub fn log_log(samples: Vec<(f64, f64)>, unit: CurveUnit) -> Result<Self> {
        Self::new(
            samples,
            InterpLaw::LogLog,
            ExtrapPolicy::PowerLawFit,
            ExtrapPolicy::PowerLawFit,
            unit,
        )
    }

    /// Sample a function on a log-spaced grid. Panics only through the
    /// validation in [`SpectralCurve::new`].
    pub fn from_fn(
        f_lo: f64,
        f_hi: f64,
        points_per_decade: usize,
        unit: CurveUnit,
        mut func: impl FnMut(f64) -> f64,
    ) -> Result<Self> {
        if !(f_lo > 0.0 && f_hi > f_lo) {
            return Err(CoreError::InvalidInput(format!(
                "bad sampling range [{f_lo}, {f_hi}]"
            )));
        }
        let decades = math::log10(f_hi / f_lo);
        let n = ((decades * points_per_decade as f64).ceil() as usize).max(1);
        let mut samples = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let f = f_lo * math::powf(f_hi / f_lo, i as f64 / n as f64);
            samples.push((f, func(f)));
        }
        // Guard against round-off at the top node.
        if let Some(last) = samples.last_mut() {
            last.0 = f_hi;
        }
        Self::log_log(samples, unit)
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn unit(&self) -> CurveUnit {
        self.unit
    }

    pub fn interp_law(&self) -> InterpLaw {
        self.interp
    }

    pub fn f_min(&self) -> f64 {
        self.samples[0].0
    }

    pub fn f_max(&self) -> f64 {
        self.samples[self.samples.len() - 1].0
    }

    /// Exponent of the power law used beyond the high end, if the tail
    /// extrapolates as a power law.
    pub fn high_tail_exponent(&self) -> Option<f64> {
        match self.extrap_high {
            ExtrapPolicy::PowerLawFixed(p) => Some(p),
            ExtrapPolicy::Clamp => Some(0.0),
            ExtrapPolicy::PowerLawFit => {
                let n = self.samples.len();
                if n < 2 {
                    Some(0.0)
                } else {
                    Some(segment_exponent(self.samples[n - 2], self.samples[n - 1]))
                }
            }
            ExtrapPolicy::Error => None,
        }
    }

    /// Evaluate the curve at `f`. Node queries reproduce the stored
    /// sample exactly; between nodes the interpolation law applies;
    /// outside the domain the side's extrapolation policy applies.
    pub fn eval(&self, f: f64) -> Result<f64> {
        if !(f > 0.0) || !f.is_finite() {
            return Err(CoreError::InvalidInput(format!("frequency {f} not positive")));
        }
        let s = &self.samples;
        let n = s.len();
        if f < s[0].0 {
            return self.extrapolate(f, true);
        }
        if f > s[n - 1].0 {
            return self.extrapolate(f, false);
        }
        // Binary search for the bracketing segment; exact hits return the
        // stored value untouched.
        let idx = match s.binary_search_by(|&(sf, _)| sf.partial_cmp(&f).unwrap()) {
            Ok(i) => return Ok(s[i].1),
            Err(i) => i,
        };
        let (f0, v0) = s[idx - 1];
        let (f1, v1) = s[idx];
        Ok(interp_segment((f0, v0), (f1, v1), f, self.interp))
    }

    fn extrapolate(&self, f: f64, low_side: bool) -> Result<f64> {
        let n = self.samples.len();
        let (anchor, neighbor) = if low_side {
            (self.samples[0], self.samples.get(1).copied())
        } else {
            (self.samples[n - 1], if n >= 2 { Some(self.samples[n - 2]) } else { None })
        };
        let policy = if low_side { self.extrap_low } else { self.extrap_high };
        match policy {
            ExtrapPolicy::Clamp => Ok(anchor.1),
            ExtrapPolicy::Error => Err(CoreError::OutOfRange {
                f,
                lo: self.f_min(),
                hi: self.f_max(),
            }),
            ExtrapPolicy::PowerLawFixed(p) => Ok(anchor.1 * math::powf(f / anchor.0, p)),
            ExtrapPolicy::PowerLawFit => {
                let p = match neighbor {
                    Some(nb) if anchor.1 > 0.0 && nb.1 > 0.0 => {
                        if low_side {
                            segment_exponent(anchor, nb)
                        } else {
                            segment_exponent(nb, anchor)
                        }
                    }
                    _ => 0.0,
                };
                Ok(anchor.1 * math::powf(f / anchor.0, p))
            }
        }
    }

    /// Integrate the interpolant over `[f_lo, f_hi]`, extending with the
    /// extrapolation policies where the interval leaves the domain.
    ///
    /// Power-law segments integrate in closed form, so pure power laws
    /// are reproduced to round-off, well inside the 1e-6 budget.
    pub fn integrate(&self, f_lo: f64, f_hi: f64) -> Result<f64> {
        if !(f_lo > 0.0) || !(f_hi > f_lo) {
            return Err(CoreError::DegenerateInterval { lo: f_lo, hi: f_hi });
        }
        let mut total = 0.0;
        // Left extension.
        if f_lo < self.f_min() {
            let hi = self.f_min().min(f_hi);
            total += self.integrate_tail(f_lo, hi, true)?;
        }
        // Right extension.
        if f_hi > self.f_max() {
            let lo = self.f_max().max(f_lo);
            total += self.integrate_tail(lo, f_hi, false)?;
        }
        // In-domain part.
        let lo = f_lo.max(self.f_min());
        let hi = f_hi.min(self.f_max());
        if hi > lo {
            let s = &self.samples;
            // First segment index whose right node exceeds `lo`.
            let mut i = match s.binary_search_by(|&(sf, _)| sf.partial_cmp(&lo).unwrap()) {
                Ok(i) => i,
                Err(i) => i.saturating_sub(1),
            };
            while i + 1 < s.len() && s[i + 1].0 <= lo {
                i += 1;
            }
            while i + 1 < s.len() && s[i].0 < hi {
                let a = s[i].0.max(lo);
                let b = s[i + 1].0.min(hi);
                if b > a {
                    total += integrate_segment(s[i], s[i + 1], a, b, self.interp);
                }
                i += 1;
            }
        }
        Ok(total)
    }

    fn integrate_tail(&self, lo: f64, hi: f64, low_side: bool) -> Result<f64> {
        // Piece of ∫ v(f) df where v follows the extrapolation policy.
        let va = self.extrapolate(if low_side { lo } else { hi }, low_side)?;
        let policy = if low_side { self.extrap_low } else { self.extrap_high };
        match policy {
            ExtrapPolicy::Clamp => Ok(va * (hi - lo)),
            ExtrapPolicy::Error => unreachable!("extrapolate already failed"),
            _ => {
                let anchor = if low_side {
                    self.samples[0]
                } else {
                    self.samples[self.samples.len() - 1]
                };
                let vb = self.extrapolate(if low_side { hi } else { lo }, low_side)?;
                let (fa, fb) = (lo, hi);
                let (va2, vb2) = if low_side { (va, vb) } else { (vb, va) };
                let _ = anchor;
                Ok(integrate_power_law(fa, va2, fb, vb2))
            }
        }
    }

    /// New curve with every value multiplied by `factor` (must keep the
    /// sign constraint of the unit).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let samples = self
            .samples
            .iter()
            .map(|&(f, v)| (f, v * factor))
            .collect();
        Self::new(samples, self.interp, self.extrap_low, self.extrap_high, self.unit)
    }

    /// New curve with values transformed by `func` on the same grid.
    pub fn mapped(&self, unit: CurveUnit, mut func: impl FnMut(f64, f64) -> f64) -> Result<Self> {
        let samples = self
            .samples
            .iter()
            .map(|&(f, v)| (f, func(f, v)))
            .collect();
        Self::new(samples, self.interp, self.extrap_low, self.extrap_high, unit)
    }

    /// Resample onto an explicit grid (values via `eval`).
    pub fn resampled(&self, grid: &[f64], unit: CurveUnit) -> Result<Self> {
        let mut samples = Vec::with_capacity(grid.len());
        for &f in grid {
            samples.push((f, self.eval(f)?));
        }
        Self::new(samples, self.interp, self.extrap_low, self.extrap_high, unit)
    }
}

fn segment_exponent(a: (f64, f64), b: (f64, f64)) -> f64 {
    if a.1 <= 0.0 || b.1 <= 0.0 {
        0.0
    } else {
        math::ln(b.1 / a.1) / math::ln(b.0 / a.0)
    }
}

fn interp_segment(a: (f64, f64), b: (f64, f64), f: f64, law: InterpLaw) -> f64 {
    match law {
        InterpLaw::LogLog if a.1 > 0.0 && b.1 > 0.0 => {
            let p = segment_exponent(a, b);
            a.1 * math::powf(f / a.0, p)
        }
        _ => {
            let t = (f - a.0) / (b.0 - a.0);
            a.1 + t * (b.1 - a.1)
        }
    }
}

/// Closed-form ∫ of the power law through (fa, va), (fb, vb) over [fa, fb].
fn integrate_power_law(fa: f64, va: f64, fb: f64, vb: f64) -> f64 {
    if va <= 0.0 || vb <= 0.0 {
        // Degenerate for a log-log law; treat linearly.
        return 0.5 * (va + vb) * (fb - fa);
    }
    let p = math::ln(vb / va) / math::ln(fb / fa);
    if math::abs(p + 1.0) < 1e-12 {
        va * fa * math::ln(fb / fa)
    } else {
        va / (p + 1.0) * (fb * math::powf(fb / fa, p) - fa)
    }
}

fn integrate_segment(a: (f64, f64), b: (f64, f64), lo: f64, hi: f64, law: InterpLaw) -> f64 {
    match law {
        InterpLaw::LogLog if a.1 > 0.0 && b.1 > 0.0 => {
            let vlo = interp_segment(a, b, lo, law);
            let vhi = interp_segment(a, b, hi, law);
            integrate_power_law(lo, vlo, hi, vhi)
        }
        _ => {
            let vlo = interp_segment(a, b, lo, InterpLaw::Linear);
            let vhi = interp_segment(a, b, hi, InterpLaw::Linear);
            0.5 * (vlo + vhi) * (hi - lo)
        }
    }
}

/// The standard budget grid: log-spaced, `points_per_decade` nodes per
/// decade over `[f_lo, f_hi]`, endpoints included.
pub fn log_grid(f_lo: f64, f_hi: f64, points_per_decade: usize) -> Vec<f64> {
    let decades = math::log10(f_hi / f_lo);
    let n = ((decades * points_per_decade as f64).ceil() as usize).max(1);
    let mut grid = Vec::with_capacity(n + 1);
    for i in 0..=n {
        grid.push(f_lo * math::powf(f_hi / f_lo, i as f64 / n as f64));
    }
    grid[n] = f_hi;
    grid
}
