//! Quantum hydrodynamics toolkit built around the Madelung transform.
//!
//! A complex wavefunction ψ = √ρ·e^{iχ} defines a probability fluid with
//! density ρ and velocity field v = ∇χ (ħ = m = 1 throughout). Nonzero
//! circulation of v around a closed contour is quantized in units of 2π and
//! can only arise from nodal points of ψ, where the phase — and hence the
//! velocity — is undefined. This crate provides:
//!
//! - [`fields`]: density, velocity, quantum potential and continuity-equation
//!   residuals for any evaluatable wavefunction, with analytic-gradient and
//!   finite-difference paths.
//! - [`scenarios`]: three closed-form systems in which a vortex changes its
//!   topological charge — an anisotropic harmonic trap whose central vortex
//!   flips sign, a free-particle vortex ring that shrinks and annihilates,
//!   and a driven 2D hydrogen atom whose vortices merge into a double charge.
//! - [`topology`]: circulation integrals, integer winding numbers, grid-based
//!   vortex detection, track/event analysis, and 3D nodal-line fitting.
//! - [`advection`]: material-contour transport through the velocity field
//!   with circulation monitoring, testing the Helmholtz-Kelvin theorem and
//!   detecting the singular encounters that break its assumptions.
//! - [`evolver`]: split-step Fourier evolution of linear Schrödinger and
//!   Gross-Pitaevskii fields on a periodic grid, vortex imprinting, and
//!   hydrodynamic-equation residuals, providing non-analytic field sources
//!   for the same topology and advection machinery.
//! - [`runner`]: configuration-driven experiments with CSV/JSON outputs and
//!   shipped presets (`fig1`, `fig2-ring`, `rabi-merge`, `gpe-hkt`).
//!
//! Runnable demonstrations of each capability live in `examples/`; the
//! `madelung` binary exposes the experiment runner on the command line.

pub mod advection;
pub mod evolver;
pub mod fields;
pub(crate) mod geom;
pub mod runner;
pub mod scenarios;
pub mod topology;

pub use fields::{FieldError, FlowField, MadelungFlow, VelocityProbe, Wavefunction};
pub use topology::{ChargeRecord, Contour, DetectedVortex, VortexTrack};
