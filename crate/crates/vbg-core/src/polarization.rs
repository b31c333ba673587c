//! Polarization channel: Jones-matrix elements, the misalignment-induced
//! Kraus channel, and polarization-qubit fidelity.
//!
//! Each lens/mirror acts on the Jones vector as a diagonal birefringent
//! element composed with a rotation of its optic axis. Random axis
//! jitter converts, at first order, into a pair of bit/bit-phase flip
//! Kraus operators of weight p; global amplitude transmission is tracked
//! by the attenuation module so the channel here is trace preserving.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::curve::SpectralCurve;
use crate::error::{CoreError, Result};
use crate::math;

/// Row-major 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [Complex64; 4]);

impl Mat2 {
    pub const fn zero() -> Self {
        Mat2([Complex64::new(0.0, 0.0); 4])
    }

    pub fn identity() -> Self {
        Mat2([
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ])
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &rhs.0;
        Mat2([
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ])
    }

    pub fn adjoint(&self) -> Mat2 {
        let a = &self.0;
        Mat2([a[0].conj(), a[2].conj(), a[1].conj(), a[3].conj()])
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        Mat2([self.0[0] * s, self.0[1] * s, self.0[2] * s, self.0[3] * s])
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        Mat2([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
            self.0[3] + rhs.0[3],
        ])
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        Mat2([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
            self.0[3] - rhs.0[3],
        ])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0] + self.0[3]
    }

    /// Largest entry magnitude; used for completeness checks.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Rotation of the optic axis by `theta`.
    pub fn rotation(theta: f64) -> Mat2 {
        let (s, c) = (math::sin(theta), math::cos(theta));
        Mat2([
            Complex64::new(c, 0.0),
            Complex64::new(-s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(c, 0.0),
        ])
    }
}

/// The antisymmetric flip generator [[0, 1], [-1, 0]].
pub fn flip_generator() -> Mat2 {
    Mat2([
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 0.0),
    ])
}

/// Flip generator with a birefringence phase: [[0, e^{i phi}], [-e^{-i phi}, 0]].
pub fn phased_flip(phi: f64) -> Mat2 {
    Mat2([
        Complex64::new(0.0, 0.0),
        Complex64::from_polar(1.0, phi),
        -Complex64::from_polar(1.0, -phi),
        Complex64::new(0.0, 0.0),
    ])
}

/// One birefringent optical element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationElement {
    /// Overall amplitude transmission.
    pub t0: f64,
    /// Differential transmission between polarization modes (<= 1e-4 for
    /// the coatings considered).
    pub t_diff: f64,
    /// Birefringence phase, rad.
    pub phi: f64,
    /// Static optic-axis angle, rad.
    pub theta: f64,
    /// Rms axis jitter, rad.
    pub dtheta_rms: f64,
}

impl PolarizationElement {
    pub fn validate(&self) -> Result<()> {
        if !(self.t0 > 0.0 && self.t0 <= 1.0) {
            return Err(CoreError::InvalidInput(format!(
                "amplitude transmission {} must lie in (0, 1]",
                self.t0
            )));
        }
        if !(0.0..=1.0).contains(&self.t_diff) {
            return Err(CoreError::InvalidInput(format!(
                "differential transmission {} must lie in [0, 1]",
                self.t_diff
            )));
        }
        Ok(())
    }

    /// Exact transfer matrix t0 * diag(1, (1 - t) e^{i phi}) * R(theta).
    pub fn exact_transfer(&self, theta: f64) -> Mat2 {
        let diag = Mat2([
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::from_polar(1.0 - self.t_diff, self.phi),
        ]);
        diag.mul(&Mat2::rotation(theta)).scale(Complex64::new(self.t0, 0.0))
    }
}

/// First-order transfer matrix of a jittered element: the unperturbed
/// birefringent rotation, minus the differential-transmission term,
/// minus the axis-jitter conversion term.
pub fn element_transfer(elem: &PolarizationElement, dtheta: f64) -> Result<Mat2> {
    elem.validate()?;
    let diag_full = Mat2([
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::from_polar(1.0, elem.phi),
    ]);
    let diag_lower = Mat2([
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::from_polar(1.0, elem.phi),
    ]);
    let r = Mat2::rotation(elem.theta);
    let t0 = Complex64::new(elem.t0, 0.0);
    let term1 = diag_full.mul(&r).scale(t0);
    let term2 = diag_lower.mul(&r).scale(t0 * elem.t_diff);
    let term3 = diag_full
        .mul(&r)
        .mul(&flip_generator())
        .scale(t0 * dtheta);
    Ok(term1.sub(&term2).sub(&term3))
}

/// Flip probability from the axis-jitter noise spectrum:
/// p = 2 ∫ S_theta df over the band of interest.
pub fn flip_probability(s_theta: &SpectralCurve, f_lo: f64, f_hi: f64) -> Result<f64> {
    let p = 2.0 * s_theta.integrate(f_lo, f_hi)?;
    check_flip_probability(p)?;
    Ok(p)
}

/// Worst-case flip probability from the rms jitter alone: p = dtheta_rms^2.
pub fn worst_case_flip_probability(dtheta_rms: f64) -> Result<f64> {
    let p = dtheta_rms * dtheta_rms;
    check_flip_probability(p)?;
    Ok(p)
}

fn check_flip_probability(p: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&p) {
        return Err(CoreError::ValidityBreak(format!(
            "flip probability {p} outside [0, 0.5]: the Kraus model needs 2p < 1"
        )));
    }
    Ok(())
}

/// A complete set of Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    pub operators: Vec<Mat2>,
}

impl KrausSet {
    /// Max-entry deviation of sum K^dag K from the identity.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = Mat2::zero();
        for k in &self.operators {
            sum = sum.add(&k.adjoint().mul(k));
        }
        sum.sub(&Mat2::identity()).max_abs()
    }

    /// Apply the channel once to a density matrix.
    pub fn apply(&self, rho: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for k in &self.operators {
            out = out.add(&k.mul(rho).mul(&k.adjoint()));
        }
        out
    }
}

/// The per-section polarization channel: sqrt(1-2p) I plus the two
/// misalignment flips sqrt(p) {J, J_phi}.
pub fn build_kraus(p: f64, phi_bar: f64) -> Result<KrausSet> {
    if !(0.0..0.5).contains(&(p.max(0.0))) && p != 0.0 {
        return Err(CoreError::InvalidInput(format!(
            "flip probability {p} must satisfy 0 <= 2p < 1"
        )));
    }
    if p < 0.0 {
        return Err(CoreError::InvalidInput(format!(
            "flip probability {p} must be non-negative"
        )));
    }
    if p == 0.0 {
        return Ok(KrausSet {
            operators: alloc::vec![Mat2::identity()],
        });
    }
    let sp = Complex64::new(math::sqrt(p), 0.0);
    let si = Complex64::new(math::sqrt(1.0 - 2.0 * p), 0.0);
    Ok(KrausSet {
        operators: alloc::vec![
            Mat2::identity().scale(si),
            flip_generator().scale(sp),
            phased_flip(phi_bar).scale(sp),
        ],
    })
}

/// Polarization basis states for the CLI and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarizationState {
    H,
    V,
    D,
    A,
    R,
    L,
}

impl PolarizationState {
    pub fn jones(self) -> [Complex64; 2] {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        match self {
            PolarizationState::H => [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            PolarizationState::V => [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            PolarizationState::D => [Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
            PolarizationState::A => [Complex64::new(s, 0.0), Complex64::new(-s, 0.0)],
            PolarizationState::R => [Complex64::new(s, 0.0), Complex64::new(0.0, -s)],
            PolarizationState::L => [Complex64::new(s, 0.0), Complex64::new(0.0, s)],
        }
    }

    pub fn density(self) -> Mat2 {
        let v = self.jones();
        Mat2([
            v[0] * v[0].conj(),
            v[0] * v[1].conj(),
            v[1] * v[0].conj(),
            v[1] * v[1].conj(),
        ])
    }
}

/// Fidelity of a polarization qubit after `n_sections` applications of
/// the per-section channel, by density-matrix evolution.
pub fn polarization_fidelity(
    n_sections: u32,
    p: f64,
    phi_bar: f64,
    input: PolarizationState,
) -> Result<f64> {
    let kraus = build_kraus(p, phi_bar)?;
    let psi = input.jones();
    let mut rho = input.density();
    for _ in 0..n_sections {
        rho = kraus.apply(&rho);
    }
    // <psi| rho |psi>
    let col = [
        rho.0[0] * psi[0] + rho.0[1] * psi[1],
        rho.0[2] * psi[0] + rho.0[3] * psi[1],
    ];
    let fid = (psi[0].conj() * col[0] + psi[1].conj() * col[1]).re;
    Ok(fid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveUnit;
    use approx::assert_relative_eq;

    #[test]
    fn identity_element_is_scaled_identity() {
        let elem = PolarizationElement {
            t0: 0.97,
            t_diff: 0.0,
            phi: 0.0,
            theta: 0.0,
            dtheta_rms: 0.0,
        };
        let t = element_transfer(&elem, 0.0).unwrap();
        assert_relative_eq!(t.0[0].re, 0.97, max_relative = 1e-15);
        assert_eq!(t.0[1], Complex64::new(0.0, 0.0));
        assert_eq!(t.0[2], Complex64::new(0.0, 0.0));
        assert_relative_eq!(t.0[3].re, 0.97, max_relative = 1e-15);
    }

    #[test]
    fn lens_birefringence_phase_from_substrate() {
        // k d dn with d = 2 cm and dn = 1e-7 at 1550 nm is ~8.1e-3 rad.
        let k = 2.0 * core::f64::consts::PI / 1550e-9;
        let phi = k * 0.02 * 1e-7;
        assert_relative_eq!(phi, 8.1e-3, max_relative = 1e-2);
    }

    #[test]
    fn first_order_off_diagonal_magnitude() {
        let elem = PolarizationElement {
            t0: 1.0,
            t_diff: 0.0,
            phi: 0.0,
            theta: 0.0,
            dtheta_rms: 0.0,
        };
        let dtheta = 1e-4;
        let t = element_transfer(&elem, dtheta).unwrap();
        assert_relative_eq!(t.0[1].norm(), dtheta, max_relative = 1e-12);
        assert_relative_eq!(t.0[2].norm(), dtheta, max_relative = 1e-12);
    }

    #[test]
    fn expansion_matches_exact_product_to_second_order() {
        // Richardson-style check: the first-order expansion error falls
        // quadratically with the jitter angle.
        let elem = PolarizationElement {
            t0: 0.999,
            t_diff: 0.0,
            phi: 0.01,
            theta: 0.3,
            dtheta_rms: 0.0,
        };
        let mut errs = alloc::vec::Vec::new();
        for &d in &[1e-3, 1e-4, 1e-5] {
            let approx_t = element_transfer(&elem, d).unwrap();
            let exact = elem.exact_transfer(elem.theta + d);
            errs.push(approx_t.sub(&exact).max_abs());
        }
        // Each decade in dtheta buys two decades in error.
        assert!(errs[0] / errs[1] > 50.0, "ratio {}", errs[0] / errs[1]);
        assert!(errs[1] / errs[2] > 50.0, "ratio {}", errs[1] / errs[2]);
    }

    #[test]
    fn exact_transfer_at_zero_jitter() {
        let elem = PolarizationElement {
            t0: 0.98,
            t_diff: 1e-4,
            phi: 0.01,
            theta: 0.7,
            dtheta_rms: 0.0,
        };
        // At dtheta = 0 the expansion reproduces the unperturbed matrix
        // up to the (second-order) t*J cross term which it drops.
        let t = element_transfer(&elem, 0.0).unwrap();
        let exact = elem.exact_transfer(elem.theta);
        assert!(t.sub(&exact).max_abs() < 1e-12);
    }

    #[test]
    fn flip_probability_from_spectrum_and_worst_case() {
        let s = SpectralCurve::log_log(
            alloc::vec![(0.01, 1e-9), (100.0, 1e-9)],
            CurveUnit::PsdRad2PerHz,
        )
        .unwrap();
        let p = flip_probability(&s, 0.01, 100.0).unwrap();
        assert_relative_eq!(p, 2.0 * 1e-9 * 99.99, max_relative = 1e-9);
        // Worst case with 1 mrad rms: 1 ppm.
        assert_relative_eq!(
            worst_case_flip_probability(1e-3).unwrap(),
            1e-6,
            max_relative = 1e-12
        );
        // Linearity in the spectrum.
        let s2 = s.scaled(2.0).unwrap();
        assert_relative_eq!(
            flip_probability(&s2, 0.01, 100.0).unwrap(),
            2.0 * p,
            max_relative = 1e-12
        );
        assert!(worst_case_flip_probability(0.9).is_err());
    }

    #[test]
    fn kraus_completeness_exact() {
        for &(p, phi) in &[(1e-6, 0.01), (0.1, 1.3), (0.49, 0.0), (0.0, 0.5)] {
            let k = build_kraus(p, phi).unwrap();
            assert!(
                k.completeness_defect() < 1e-12,
                "defect {} at p={p}",
                k.completeness_defect()
            );
        }
    }

    #[test]
    fn zero_p_gives_identity_channel() {
        let k = build_kraus(0.0, 0.3).unwrap();
        assert_eq!(k.operators.len(), 1);
        assert!(k.operators[0].sub(&Mat2::identity()).max_abs() < 1e-15);
    }

    #[test]
    fn zero_phase_degenerates_to_double_weight_flip() {
        let k = build_kraus(1e-4, 0.0).unwrap();
        assert!(k.operators[1].sub(&k.operators[2]).max_abs() < 1e-15);
    }

    #[test]
    fn channel_preserves_trace() {
        let k = build_kraus(1e-3, 0.02).unwrap();
        let mut rho = PolarizationState::D.density();
        for _ in 0..500 {
            rho = k.apply(&rho);
        }
        assert_relative_eq!(rho.trace().re, 1.0, epsilon = 1e-12);
        assert!(rho.trace().im.abs() < 1e-14);
    }

    #[test]
    fn fidelity_examples() {
        assert_eq!(
            polarization_fidelity(0, 1e-6, 0.01, PolarizationState::D).unwrap(),
            1.0
        );
        assert_eq!(
            polarization_fidelity(1000, 0.0, 0.01, PolarizationState::R).unwrap(),
            1.0
        );
        // 2500 sections at 1 ppm: fidelity within 2 N p of unity.
        let f = polarization_fidelity(2500, 1e-6, 0.01, PolarizationState::D).unwrap();
        assert!(f >= 1.0 - 5e-3, "fidelity {f}");
        assert!(f <= 1.0);
    }
}
