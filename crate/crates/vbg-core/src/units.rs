//! Attenuation unit conversions.

use crate::error::{CoreError, Result};
use crate::math;
use alloc::format;

/// ln(10)/10, the dB-to-natural attenuation factor.
pub const DB_TO_NAT: f64 = core::f64::consts::LN_10 / 10.0;

/// Convert an attenuation rate in dB/km to natural units (1/km) so that
/// `exp(-alpha_nat * L) == 10^(-0.1 * alpha_db * L)`.
pub fn db_per_km_to_natural(alpha_db: f64) -> Result<f64> {
    if !(alpha_db >= 0.0) {
        return Err(CoreError::InvalidInput(format!(
            "attenuation {alpha_db} dB/km must be non-negative"
        )));
    }
    Ok(DB_TO_NAT * alpha_db)
}

/// Inverse of [`db_per_km_to_natural`].
pub fn natural_to_db_per_km(alpha_nat: f64) -> Result<f64> {
    if !(alpha_nat >= 0.0) {
        return Err(CoreError::InvalidInput(format!(
            "attenuation {alpha_nat} /km must be non-negative"
        )));
    }
    Ok(alpha_nat / DB_TO_NAT)
}

/// Transmittance over `l_km` at `alpha_db` dB/km: `10^(-0.1 * alpha * L)`.
pub fn transmittance(alpha_db: f64, l_km: f64) -> f64 {
    math::powf(10.0, -0.1 * alpha_db * l_km)
}
