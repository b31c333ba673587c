//! Core models for the vacuum beam guide (VBG) quantum channel.
//!
//! A VBG is a relay of lenses and steering mirrors inside a long vacuum
//! tube that guides photonic quantum signals. This crate provides the
//! numerical machinery to characterize such a channel and the protocols
//! that run over it:
//!
//! - [`curve`]: tabulated spectral curves with log-log interpolation,
//!   power-law extrapolation, and adaptive quadrature,
//! - [`attenuation`]: attenuation composition, reflector geometry, and
//!   Gaussian-beam misalignment loss,
//! - [`capacity`]: pure-loss quantum capacity and multiplexed throughput,
//! - [`noise`]: the full phase-noise PSD budget (seismic, residual gas,
//!   thermal, acoustic, sensing) with active cancellation, cumulative rms
//!   and modified Allan deviation,
//! - [`polarization`]: Jones-matrix elements and the misalignment-induced
//!   Kraus channel,
//! - [`dispersion`]: group velocity and GVD pulse-duration bounds,
//! - [`memory`]: the VBG-as-cavity quantum memory model,
//! - [`protocols`]: performance evaluators for DI-QKD, quantum telescope,
//!   BQC, QPV, clock networks, gyroscope, data-center delay, and
//!   non-local computation.
//!
//! The crate is `no_std`-compatible (requires `alloc`); enable the
//! default `std` feature for use in ordinary binaries.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod attenuation;
pub mod capacity;
pub mod config;
pub mod constants;
pub mod curve;
pub mod dispersion;
pub mod error;
pub mod math;
pub mod memory;
pub mod noise;
pub mod polarization;
pub mod protocols;
pub mod units;

pub use attenuation::{ChannelLink, ReflectorGeometry, ReflectorKind};
pub use config::{AcousticParams, IsolationParams, MaterialParams, SensingLaser, VbgConfig};
pub use curve::{CurveUnit, ExtrapPolicy, InterpLaw, SpectralCurve};
pub use error::CoreError;
pub use noise::NoiseBudget;
