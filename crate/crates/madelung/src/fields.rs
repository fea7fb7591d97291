//! Madelung decomposition of a complex wavefunction.
//!
//! Writing ψ = √ρ·e^{iχ} turns the Schrödinger equation into fluid equations
//! for the density ρ = |ψ|² and the velocity v = ∇χ (ħ = m = 1). The velocity
//! is computed as Im(∇ψ/ψ), which equals ∇χ wherever ψ ≠ 0 and avoids any
//! branch-cut bookkeeping for the phase. All operations here are pure
//! functions of their arguments and safe to call from many threads.

use num_complex::Complex64;
use thiserror::Error;

/// Default density threshold below which a point counts as nodal.
pub const NODE_FLOOR: f64 = 1e-12;
/// Default cap on |v|; faster flow is treated as a nodal encounter.
pub const SPEED_CAP: f64 = 1e9;
/// Default central-difference step for first derivatives of ψ.
pub const FD_STEP: f64 = 1e-5;
/// Default step for second-derivative stencils (quantum potential,
/// continuity residual), where a larger step balances truncation against
/// roundoff.
pub const STENCIL_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum FieldError {
    /// The evaluation point is on or near the nodal set of ψ, where the
    /// phase and velocity are undefined.
    #[error("point is on or near a nodal line (density {density:.3e})")]
    NearNode { density: f64 },
    #[error("non-finite value encountered in field evaluation")]
    NonFinite,
}

/// An evaluatable complex field ψ(r, t) in 2 or 3 dimensions.
///
/// Implementations may provide an analytic gradient; consumers fall back to
/// central finite differences of [`Wavefunction::amplitude`] otherwise.
/// Scenario units are dimensionless with ħ = m = 1.
pub trait Wavefunction<const N: usize>: Sync {
    fn amplitude(&self, p: [f64; N], t: f64) -> Complex64;

    /// Analytic spatial gradient of ψ, if available.
    fn gradient(&self, p: [f64; N], t: f64) -> Option<[Complex64; N]> {
        let _ = (p, t);
        None
    }
}

impl<const N: usize, W: Wavefunction<N> + ?Sized> Wavefunction<N> for &W {
    fn amplitude(&self, p: [f64; N], t: f64) -> Complex64 {
        (**self).amplitude(p, t)
    }
    fn gradient(&self, p: [f64; N], t: f64) -> Option<[Complex64; N]> {
        (**self).gradient(p, t)
    }
}

/// Velocity evaluation strategy with singularity-proximity guards.
///
/// Evaluation at a point with ρ ≥ `node_floor` returns a finite vector with
/// |v| ≤ `speed_cap`; anything else signals [`FieldError::NearNode`].
#[derive(Debug, Clone, Copy)]
pub struct VelocityProbe {
    /// Density threshold ε_ρ below which the point counts as nodal.
    pub node_floor: f64,
    /// Speeds above this cap are treated as a nodal encounter.
    pub speed_cap: f64,
    /// Central-difference step for ∇ψ when no analytic gradient exists.
    pub fd_step: f64,
    /// Step for second-derivative and flux stencils.
    pub stencil_step: f64,
}

impl Default for VelocityProbe {
    fn default() -> Self {
        Self {
            node_floor: NODE_FLOOR,
            speed_cap: SPEED_CAP,
            fd_step: FD_STEP,
            stencil_step: STENCIL_STEP,
        }
    }
}

impl VelocityProbe {
    pub fn with_node_floor(mut self, floor: f64) -> Self {
        self.node_floor = floor;
        self
    }

    pub fn with_speed_cap(mut self, cap: f64) -> Self {
        self.speed_cap = cap;
        self
    }
}

/// Probability density ρ = |ψ|².
pub fn density<const N: usize>(psi: &dyn Wavefunction<N>, p: [f64; N], t: f64) -> f64 {
    psi.amplitude(p, t).norm_sqr()
}

/// Gradient of ψ: analytic when provided, otherwise central differences.
pub fn wavefunction_gradient<const N: usize>(
    psi: &dyn Wavefunction<N>,
    p: [f64; N],
    t: f64,
    step: f64,
) -> [Complex64; N] {
    if let Some(grad) = psi.gradient(p, t) {
        return grad;
    }
    let mut grad = [Complex64::default(); N];
    for (axis, g) in grad.iter_mut().enumerate() {
        let mut fwd = p;
        let mut bwd = p;
        fwd[axis] += step;
        bwd[axis] -= step;
        *g = (psi.amplitude(fwd, t) - psi.amplitude(bwd, t)) / (2.0 * step);
    }
    grad
}

/// Madelung velocity v = Im(∇ψ/ψ).
///
/// Fails with [`FieldError::NearNode`] when the density is below the probe's
/// node floor or the resulting speed exceeds its cap — both signal that the
/// point is on or near a nodal line where v is undefined.
pub fn madelung_velocity<const N: usize>(
    psi: &dyn Wavefunction<N>,
    p: [f64; N],
    t: f64,
    probe: &VelocityProbe,
) -> Result<[f64; N], FieldError> {
    let amp = psi.amplitude(p, t);
    let rho = amp.norm_sqr();
    if rho < probe.node_floor {
        return Err(FieldError::NearNode { density: rho });
    }
    let grad = wavefunction_gradient(psi, p, t, probe.fd_step);
    let mut v = [0.0; N];
    for i in 0..N {
        v[i] = (grad[i] / amp).im;
    }
    let speed_sq = crate::geom::dot(v, v);
    if !speed_sq.is_finite() {
        return Err(FieldError::NonFinite);
    }
    if speed_sq > probe.speed_cap * probe.speed_cap {
        return Err(FieldError::NearNode { density: rho });
    }
    Ok(v)
}

/// Quantum potential Q = −(1/2)·∇²√ρ/√ρ.
///
/// Uses a second-difference stencil on √ρ with the probe's stencil step.
pub fn quantum_potential<const N: usize>(
    psi: &dyn Wavefunction<N>,
    p: [f64; N],
    t: f64,
    probe: &VelocityProbe,
) -> Result<f64, FieldError> {
    let rho0 = density(psi, p, t);
    if rho0 < probe.node_floor {
        return Err(FieldError::NearNode { density: rho0 });
    }
    let h = probe.stencil_step;
    let s0 = rho0.sqrt();
    let mut laplacian = 0.0;
    for axis in 0..N {
        let mut fwd = p;
        let mut bwd = p;
        fwd[axis] += h;
        bwd[axis] -= h;
        let sf = density(psi, fwd, t).sqrt();
        let sb = density(psi, bwd, t).sqrt();
        laplacian += (sf - 2.0 * s0 + sb) / (h * h);
    }
    let q = -0.5 * laplacian / s0;
    if q.is_finite() {
        Ok(q)
    } else {
        Err(FieldError::NonFinite)
    }
}

/// Residual |∂ρ/∂t + ∇·(vρ)| of the continuity equation, by central
/// differences with the probe's stencil step. Bounded by discretization
/// error for exact solutions.
pub fn continuity_residual<const N: usize>(
    psi: &dyn Wavefunction<N>,
    p: [f64; N],
    t: f64,
    probe: &VelocityProbe,
) -> Result<f64, FieldError> {
    let rho0 = density(psi, p, t);
    if rho0 < probe.node_floor {
        return Err(FieldError::NearNode { density: rho0 });
    }
    let h = probe.stencil_step;
    let drho_dt = (density(psi, p, t + h) - density(psi, p, t - h)) / (2.0 * h);
    // Flux component v_i·ρ differenced along each axis.
    let mut div_flux = 0.0;
    for axis in 0..N {
        let mut fwd = p;
        let mut bwd = p;
        fwd[axis] += h;
        bwd[axis] -= h;
        let flux_f = madelung_velocity(psi, fwd, t, probe)?[axis] * density(psi, fwd, t);
        let flux_b = madelung_velocity(psi, bwd, t, probe)?[axis] * density(psi, bwd, t);
        div_flux += (flux_f - flux_b) / (2.0 * h);
    }
    Ok((drho_dt + div_flux).abs())
}

/// A velocity field that can advect contour points.
///
/// Implementations either evaluate a closed-form expression or derive the
/// velocity from a wavefunction via [`madelung_velocity`].
pub trait FlowField<const N: usize>: Sync {
    fn velocity(&self, p: [f64; N], t: f64) -> Result<[f64; N], FieldError>;
}

impl<const N: usize, F: FlowField<N> + ?Sized> FlowField<N> for &F {
    fn velocity(&self, p: [f64; N], t: f64) -> Result<[f64; N], FieldError> {
        (**self).velocity(p, t)
    }
}

/// [`FlowField`] adapter that reads the velocity off a wavefunction.
pub struct MadelungFlow<'a, const N: usize> {
    pub psi: &'a dyn Wavefunction<N>,
    pub probe: VelocityProbe,
}

impl<'a, const N: usize> MadelungFlow<'a, N> {
    pub fn new(psi: &'a dyn Wavefunction<N>) -> Self {
        Self {
            psi,
            probe: VelocityProbe::default(),
        }
    }

    pub fn with_probe(psi: &'a dyn Wavefunction<N>, probe: VelocityProbe) -> Self {
        Self { psi, probe }
    }
}

impl<const N: usize> FlowField<N> for MadelungFlow<'_, N> {
    fn velocity(&self, p: [f64; N], t: f64) -> Result<[f64; N], FieldError> {
        madelung_velocity(self.psi, p, t, &self.probe)
    }
}

/// Plane wave e^{i k·r}: unit modulus everywhere, uniform velocity k.
#[derive(Debug, Clone, Copy)]
pub struct PlaneWave<const N: usize> {
    pub k: [f64; N],
}

impl<const N: usize> Wavefunction<N> for PlaneWave<N> {
    fn amplitude(&self, p: [f64; N], _t: f64) -> Complex64 {
        Complex64::from_polar(1.0, crate::geom::dot(self.k, p))
    }

    fn gradient(&self, p: [f64; N], t: f64) -> Option<[Complex64; N]> {
        let amp = self.amplitude(p, t);
        let mut grad = [Complex64::default(); N];
        for i in 0..N {
            grad[i] = Complex64::new(0.0, self.k[i]) * amp;
        }
        Some(grad)
    }
}

/// Wrapper that hides an analytic gradient, forcing the finite-difference
/// path. Useful for cross-checking the two evaluation routes.
pub struct NumericOnly<W>(pub W);

impl<const N: usize, W: Wavefunction<N>> Wavefunction<N> for NumericOnly<W> {
    fn amplitude(&self, p: [f64; N], t: f64) -> Complex64 {
        self.0.amplitude(p, t)
    }
}
