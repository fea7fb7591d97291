//! Closed-form wavefunctions with known vortex kinematics.
//!
//! Three analytically solvable systems, each exhibiting a change of vortex
//! topological charge, serve as exact oracles for every numeric path in the
//! crate:
//!
//! - [`HoTrapScenario`]: an anisotropic 2D harmonic trap whose central n = 1
//!   vortex flips to n = −1 when the beat phase Et crosses π/2 (units of the
//!   x-direction oscillator).
//! - [`RingScenario`]: a free-particle vortex ring whose nodal circle has
//!   radius √(1 − t²); it is born at t = −1 and annihilates at t = 1
//!   (dimensionless units).
//! - [`RabiScenario`]: a driven 2D hydrogen atom Rabi-oscillating between
//!   the first and second excited states; an off-center n = 1 vortex moves
//!   in from infinity and merges with the central one into a single n = 2
//!   vortex at Dt = π/2 (atomic units).
//!
//! Normalization constants are left at unity throughout: every exported
//! quantity (velocity, winding, residual ratios) is normalization
//! independent.

use num_complex::Complex64;
use thiserror::Error;

use crate::fields::{FieldError, FlowField, Wavefunction};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ScenarioError {
    #[error("anisotropy lambda = 1 is degenerate: beat energy E = lambda - 1 vanishes and the charge flip never occurs")]
    DegenerateAnisotropy,
    #[error("scenario parameter {name} = {value} out of range (must be > 0)")]
    NonPositiveParameter { name: &'static str, value: f64 },
    #[error("evaluation point lies on the instantaneous nodal line")]
    OnNodalLine,
}

/// Anisotropic 2D harmonic trap, V = x²/2 + λ²y²/2, prepared in the
/// superposition (x + iαy)·e^{−(x² + λy²)/2} of the two lowest excited
/// states.
///
/// The stationary-state phases attached to the two components have energies
/// E_x = 3/2 + λ/2 and E_y = 1/2 + 3λ/2, so their difference is the beat
/// energy E = λ − 1 driving the charge flip.
#[derive(Debug, Clone, Copy)]
pub struct HoTrapScenario {
    pub lambda: f64,
    pub alpha: f64,
}

impl Default for HoTrapScenario {
    /// λ = √2, α = 1.
    fn default() -> Self {
        Self {
            lambda: std::f64::consts::SQRT_2,
            alpha: 1.0,
        }
    }
}

impl HoTrapScenario {
    pub fn new(lambda: f64, alpha: f64) -> Result<Self, ScenarioError> {
        if lambda <= 0.0 {
            return Err(ScenarioError::NonPositiveParameter {
                name: "lambda",
                value: lambda,
            });
        }
        if alpha <= 0.0 {
            return Err(ScenarioError::NonPositiveParameter {
                name: "alpha",
                value: alpha,
            });
        }
        if lambda == 1.0 {
            return Err(ScenarioError::DegenerateAnisotropy);
        }
        Ok(Self { lambda, alpha })
    }

    /// Beat energy E = λ − 1 between the two superposed states.
    pub fn beat_energy(&self) -> f64 {
        self.lambda - 1.0
    }

    /// Energy of the x-excited component, E_x = 3/2 + λ/2.
    pub fn energy_x(&self) -> f64 {
        1.5 + self.lambda / 2.0
    }

    /// Energy of the y-excited component, E_y = 1/2 + 3λ/2.
    pub fn energy_y(&self) -> f64 {
        0.5 + 1.5 * self.lambda
    }

    /// Convert the dimensionless epoch Et to scenario time.
    pub fn time_of_epoch(&self, epoch: f64) -> f64 {
        epoch / self.beat_energy()
    }

    pub fn epoch_of_time(&self, t: f64) -> f64 {
        t * self.beat_energy()
    }

    /// Denominator of the closed-form velocity,
    /// x² + α²y² + 2αxy·sin(Et). Vanishes exactly on the instantaneous
    /// nodal set.
    pub fn velocity_denominator(&self, p: [f64; 2], t: f64) -> f64 {
        let [x, y] = p;
        let a = self.alpha;
        x * x + a * a * y * y + 2.0 * a * x * y * (self.beat_energy() * t).sin()
    }

    /// Closed-form velocity v = α·cos(Et)/(x² + α²y² + 2αxy·sin(Et))·(−y, x).
    pub fn velocity(&self, p: [f64; 2], t: f64) -> Result<[f64; 2], ScenarioError> {
        let denom = self.velocity_denominator(p, t);
        if denom < 1e-300 {
            return Err(ScenarioError::OnNodalLine);
        }
        let f = self.alpha * (self.beat_energy() * t).cos() / denom;
        Ok([-f * p[1], f * p[0]])
    }

    /// Distance from p to the line x + αy·sin(Et) = 0 through the origin,
    /// which carries the nodal line when Et reaches π/2 (mod 2π).
    pub fn distance_to_flip_line(&self, p: [f64; 2], t: f64) -> f64 {
        let s = self.alpha * (self.beat_energy() * t).sin();
        (p[0] + s * p[1]).abs() / (1.0 + s * s).sqrt()
    }

    /// Nodal points of ψ at time t. Away from the flip epoch the only node
    /// is the origin; exactly at Et = π/2 (mod π) the nodal set is a whole
    /// line, still containing the origin.
    pub fn nodes(&self, _t: f64) -> Vec<[f64; 2]> {
        vec![[0.0, 0.0]]
    }
}

impl Wavefunction<2> for HoTrapScenario {
    fn amplitude(&self, p: [f64; 2], t: f64) -> Complex64 {
        let [x, y] = p;
        let phase_x = Complex64::from_polar(1.0, -self.energy_x() * t);
        let phase_y = Complex64::from_polar(1.0, -self.energy_y() * t);
        let superpos = phase_x * x + Complex64::i() * self.alpha * y * phase_y;
        let envelope = (-(x * x + self.lambda * y * y) / 2.0).exp();
        superpos * envelope
    }

    fn gradient(&self, p: [f64; 2], t: f64) -> Option<[Complex64; 2]> {
        let [x, y] = p;
        let phase_x = Complex64::from_polar(1.0, -self.energy_x() * t);
        let phase_y = Complex64::from_polar(1.0, -self.energy_y() * t);
        let superpos = phase_x * x + Complex64::i() * self.alpha * y * phase_y;
        let envelope = (-(x * x + self.lambda * y * y) / 2.0).exp();
        Some([
            (phase_x - superpos * x) * envelope,
            (Complex64::i() * self.alpha * phase_y - superpos * self.lambda * y) * envelope,
        ])
    }
}

/// The closed-form trap velocity as an advection [`FlowField`].
pub struct HoVelocity(pub HoTrapScenario);

impl FlowField<2> for HoVelocity {
    fn velocity(&self, p: [f64; 2], t: f64) -> Result<[f64; 2], FieldError> {
        self.0.velocity(p, t).map_err(|_| FieldError::NearNode {
            density: self.0.velocity_denominator(p, t),
        })
    }
}

/// Geometry of a circular nodal line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodalCircle {
    pub center: [f64; 3],
    pub radius: f64,
    pub normal: [f64; 3],
}

/// Free-particle vortex ring,
/// ψ = [(x − kt)² + y² + z² − 1 + 3i(z + t)]·e^{i(kx − k²t/2)}.
///
/// The nodal line is the intersection of the plane z + t = 0 with the unit
/// sphere centered at (kt, 0, 0); its radius shrinks as √(1 − t²).
#[derive(Debug, Clone, Copy)]
pub struct RingScenario {
    /// Center-of-mass wave number along x.
    pub k: f64,
}

impl RingScenario {
    pub fn new(k: f64) -> Result<Self, ScenarioError> {
        if k < 0.0 {
            return Err(ScenarioError::NonPositiveParameter { name: "k", value: k });
        }
        Ok(Self { k })
    }

    /// The nodal circle at time t: center (kt, 0, −t), radius √(1 − t²),
    /// normal ẑ. Degenerates to a point at |t| = 1 and is absent beyond.
    pub fn nodal_circle(&self, t: f64) -> Option<NodalCircle> {
        if t.abs() > 1.0 {
            return None;
        }
        Some(NodalCircle {
            center: [self.k * t, 0.0, -t],
            radius: (1.0 - t * t).max(0.0).sqrt(),
            normal: [0.0, 0.0, 1.0],
        })
    }

    /// Points sampled on the nodal circle (empty when no node exists).
    pub fn nodes(&self, t: f64, count: usize) -> Vec<[f64; 3]> {
        match self.nodal_circle(t) {
            None => Vec::new(),
            Some(circle) => (0..count)
                .map(|i| {
                    let phi = std::f64::consts::TAU * i as f64 / count as f64;
                    [
                        circle.center[0] + circle.radius * phi.cos(),
                        circle.center[1] + circle.radius * phi.sin(),
                        circle.center[2],
                    ]
                })
                .collect(),
        }
    }
}

impl Wavefunction<3> for RingScenario {
    fn amplitude(&self, p: [f64; 3], t: f64) -> Complex64 {
        let [x, y, z] = p;
        let xr = x - self.k * t;
        let bracket = Complex64::new(xr * xr + y * y + z * z - 1.0, 3.0 * (z + t));
        let phase = Complex64::from_polar(1.0, self.k * x - self.k * self.k * t / 2.0);
        bracket * phase
    }

    fn gradient(&self, p: [f64; 3], t: f64) -> Option<[Complex64; 3]> {
        let [x, y, z] = p;
        let xr = x - self.k * t;
        let bracket = Complex64::new(xr * xr + y * y + z * z - 1.0, 3.0 * (z + t));
        let phase = Complex64::from_polar(1.0, self.k * x - self.k * self.k * t / 2.0);
        let ik = Complex64::new(0.0, self.k);
        Some([
            (Complex64::new(2.0 * xr, 0.0) + ik * bracket) * phase,
            Complex64::new(2.0 * y, 0.0) * phase,
            Complex64::new(2.0 * z, 3.0) * phase,
        ])
    }
}

/// 2D hydrogen energies (atomic units) of the first and second excited
/// states used by the Rabi scenario. They follow from Hψ = Eψ with the
/// radial exponents 2/3 and 2/5 of the two states.
pub const RABI_E1: f64 = -2.0 / 9.0;
pub const RABI_E2: f64 = -2.0 / 25.0;

/// Off-center vortex radii beyond this cap count as "at infinity".
pub const RABI_RADIUS_CAP: f64 = 50.0;

/// Resonantly driven 2D hydrogen atom Rabi-oscillating between
/// ψ₁ ∝ r·e^{−2r/3}·e^{iφ} and ψ₂ ∝ r²·e^{−2r/5}·e^{i2φ}:
///
/// ψ(t) = cos(Dt)·e^{−iE₁t}·ψ₁ + sin(Dt)·e^{−iE₂t}·ψ₂,
///
/// with equal unit prefactors for the two states. D is the dipole matrix
/// element, treated as a free parameter.
#[derive(Debug, Clone, Copy)]
pub struct RabiScenario {
    pub d: f64,
}

impl RabiScenario {
    pub fn new(d: f64) -> Result<Self, ScenarioError> {
        if d <= 0.0 {
            return Err(ScenarioError::NonPositiveParameter { name: "d", value: d });
        }
        Ok(Self { d })
    }

    pub fn time_of_epoch(&self, epoch: f64) -> f64 {
        epoch / self.d
    }

    pub fn epoch_of_time(&self, t: f64) -> f64 {
        t * self.d
    }

    /// Radius of the off-center n = 1 vortex, the positive root of
    /// r·e^{4r/15} = |cot(Dt)|.
    ///
    /// The left side increases strictly from 0, so the root is unique;
    /// it is found by bisection. Returns `None` when Dt is a multiple of π
    /// (vortex at infinity) or the root exceeds [`RABI_RADIUS_CAP`].
    pub fn offcenter_vortex_radius(&self, t: f64) -> Option<f64> {
        let phase = self.d * t;
        let (sin, cos) = phase.sin_cos();
        if sin == 0.0 {
            return None;
        }
        let target = (cos / sin).abs();
        if target == 0.0 {
            return Some(0.0);
        }
        let modulus = |r: f64| r * (4.0 * r / 15.0).exp();
        if modulus(RABI_RADIUS_CAP) < target {
            return None;
        }
        let (mut lo, mut hi) = (0.0, RABI_RADIUS_CAP);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if modulus(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }

    /// Position of the off-center vortex. The angle follows from the phase
    /// condition r·e^{4r/15}·e^{iφ} = −cot(Dt)·e^{i(E₂−E₁)t}.
    pub fn offcenter_vortex_position(&self, t: f64) -> Option<[f64; 2]> {
        let radius = self.offcenter_vortex_radius(t)?;
        let phase = self.d * t;
        let cot = phase.cos() / phase.sin();
        // arg(−cot(Dt)) is π for cot > 0 and 0 for cot < 0.
        let arg = if cot > 0.0 { std::f64::consts::PI } else { 0.0 };
        let angle = arg + (RABI_E2 - RABI_E1) * t;
        Some([radius * angle.cos(), radius * angle.sin()])
    }

    /// Nodal points: the pinned central vortex plus the off-center one when
    /// it sits inside the radius cap.
    pub fn nodes(&self, t: f64) -> Vec<[f64; 2]> {
        let mut nodes = vec![[0.0, 0.0]];
        if let Some(p) = self.offcenter_vortex_position(t) {
            if p != [0.0, 0.0] {
                nodes.push(p);
            }
        }
        nodes
    }
}

impl Wavefunction<2> for RabiScenario {
    fn amplitude(&self, p: [f64; 2], t: f64) -> Complex64 {
        let [x, y] = p;
        let r = (x * x + y * y).sqrt();
        let w = Complex64::new(x, y);
        let phase = self.d * t;
        let c1 = phase.cos() * Complex64::from_polar(1.0, -RABI_E1 * t);
        let c2 = phase.sin() * Complex64::from_polar(1.0, -RABI_E2 * t);
        c1 * w * (-2.0 * r / 3.0).exp() + c2 * w * w * (-2.0 * r / 5.0).exp()
    }

    fn gradient(&self, p: [f64; 2], t: f64) -> Option<[Complex64; 2]> {
        let [x, y] = p;
        let r = (x * x + y * y).sqrt();
        let w = Complex64::new(x, y);
        let phase = self.d * t;
        let c1 = phase.cos() * Complex64::from_polar(1.0, -RABI_E1 * t);
        let c2 = phase.sin() * Complex64::from_polar(1.0, -RABI_E2 * t);
        let e1 = (-2.0 * r / 3.0).exp();
        let e2 = (-2.0 * r / 5.0).exp();
        // Radial unit vector; both states have removable gradient limits at
        // the origin where r̂ is undefined.
        let (rx, ry) = if r > 0.0 { (x / r, y / r) } else { (0.0, 0.0) };
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::i();
        let gx = c1 * e1 * (one - w * (2.0 / 3.0) * rx) + c2 * e2 * (2.0 * w - w * w * (2.0 / 5.0) * rx);
        let gy = c1 * e1 * (i - w * (2.0 / 3.0) * ry) + c2 * e2 * (2.0 * i * w - w * w * (2.0 / 5.0) * ry);
        Some([gx, gy])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{density, madelung_velocity, NumericOnly, VelocityProbe};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn construction_rejects_degenerate_anisotropy() {
        assert_eq!(
            HoTrapScenario::new(1.0, 1.0).unwrap_err(),
            ScenarioError::DegenerateAnisotropy
        );
        assert!(HoTrapScenario::new(2.0, 0.5).is_ok());
        assert!(HoTrapScenario::new(2.0, -1.0).is_err());
    }

    #[test]
    fn trap_wavefunction_substitutions() {
        let s = HoTrapScenario::default();
        // (1, 0) at t = 0: x-component only, envelope e^{−1/2}.
        let a = s.amplitude([1.0, 0.0], 0.0);
        assert_relative_eq!(a.re, (-0.5f64).exp(), max_relative = 1e-12);
        assert_abs_diff_eq!(a.im, 0.0);
        // Permanent node at the origin.
        for t in [0.0, 0.7, 2.3] {
            assert_eq!(s.amplitude([0.0, 0.0], t).norm(), 0.0);
        }
        // (0, 1) at Et = π/2: magnitude e^{−λ/2} up to the global phase.
        let t = s.time_of_epoch(FRAC_PI_2);
        let mag = s.amplitude([0.0, 1.0], t).norm();
        assert_relative_eq!(mag, (-s.lambda / 2.0).exp(), max_relative = 1e-12);
    }

    #[test]
    fn trap_velocity_substitutions() {
        let s = HoTrapScenario::default();
        let v = s.velocity([0.0, 1.0], 0.0).unwrap();
        assert_relative_eq!(v[0], -1.0, max_relative = 1e-12);
        assert_abs_diff_eq!(v[1], 0.0);

        // Et = π: cos = −1, sin = 0; the sign flip marks the n = −1 epoch.
        let t = s.time_of_epoch(PI);
        let v = s.velocity([1.0, 1.0], t).unwrap();
        assert_relative_eq!(v[0], 0.5, max_relative = 1e-9);
        assert_relative_eq!(v[1], -0.5, max_relative = 1e-9);

        // On the nodal line x + αy = 0 at the flip epoch the denominator
        // vanishes exactly.
        let t = s.time_of_epoch(FRAC_PI_2);
        assert_eq!(
            s.velocity([1.0, -1.0], t).unwrap_err(),
            ScenarioError::OnNodalLine
        );
    }

    #[test]
    fn closed_form_velocity_matches_madelung_route() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let s = HoTrapScenario::default();
        let probe = VelocityProbe::default();
        let mut checked = 0;
        while checked < 1000 {
            let p = [rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5)];
            let t = rng.gen_range(0.0..2.0 * PI / s.beat_energy());
            if s.velocity_denominator(p, t) < 1e-3 {
                continue;
            }
            let va = s.velocity(p, t).unwrap();
            let vm = madelung_velocity(&s, p, t, &probe).unwrap();
            let scale = crate::geom::norm(va).max(1e-30);
            let err = crate::geom::dist(va, vm) / scale;
            assert!(err < 1e-9, "relative error {err:.3e} at {p:?}, t={t}");
            checked += 1;
        }
    }

    #[test]
    fn ring_wavefunction_substitutions() {
        let ring = RingScenario { k: 0.0 };
        assert_eq!(ring.amplitude([1.0, 0.0, 0.0], 0.0).norm(), 0.0);
        let a = ring.amplitude([0.0, 0.0, 0.0], 0.0);
        assert_relative_eq!(a.re, -1.0, max_relative = 1e-14);
        assert_abs_diff_eq!(a.im, 0.0);

        // The ring disappears at the point (k, 0, −1) at t = 1.
        let moving = RingScenario { k: 1.0 };
        assert_abs_diff_eq!(moving.amplitude([1.0, 0.0, -1.0], 1.0).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn ring_nodal_circle_geometry() {
        let ring = RingScenario { k: 1.0 };
        let c = ring.nodal_circle(0.0).unwrap();
        assert_eq!(c.center, [0.0, 0.0, 0.0]);
        assert_relative_eq!(c.radius, 1.0);
        assert_eq!(c.normal, [0.0, 0.0, 1.0]);

        let end = ring.nodal_circle(1.0).unwrap();
        assert_eq!(end.center, [1.0, 0.0, -1.0]);
        assert_abs_diff_eq!(end.radius, 0.0);

        assert!(ring.nodal_circle(2.0).is_none());
        assert!(ring.nodal_circle(-1.5).is_none());
    }

    #[test]
    fn ring_vanishes_on_its_nodal_circle() {
        let ring = RingScenario { k: 0.7 };
        for &t in &[-0.9, -0.4, 0.0, 0.35, 0.8, 0.99] {
            for p in ring.nodes(t, 64) {
                let mag = ring.amplitude(p, t).norm();
                assert!(mag < 1e-12, "|psi| = {mag:.3e} on circle at t={t}");
            }
        }
    }

    #[test]
    fn ring_gradient_matches_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let ring = RingScenario { k: 1.3 };
        let numeric = NumericOnly(RingScenario { k: 1.3 });
        let probe = VelocityProbe::default();
        let mut checked = 0;
        while checked < 300 {
            let p = [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ];
            let t = rng.gen_range(-1.5..1.5);
            if density(&ring, p, t) < 1e-3 {
                continue;
            }
            let va = madelung_velocity(&ring, p, t, &probe).unwrap();
            let vn = madelung_velocity(&numeric, p, t, &probe).unwrap();
            let scale = crate::geom::norm(va).max(1.0);
            assert!(
                crate::geom::dist(va, vn) / scale < 1e-6,
                "gradient mismatch at {p:?}, t={t}"
            );
            checked += 1;
        }
    }

    #[test]
    fn rabi_limits_select_pure_states() {
        let s = RabiScenario { d: 1.0 };
        // Dt = 0: pure ψ₁, a single central vortex.
        let p = [0.7, -0.3];
        let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
        let w = Complex64::new(p[0], p[1]);
        let psi1 = w * (-2.0 * r / 3.0).exp();
        let a0 = s.amplitude(p, 0.0);
        assert_relative_eq!((a0 - psi1).norm(), 0.0, epsilon = 1e-14);

        // Dt = π/2: pure ψ₂ up to a global phase.
        let t = s.time_of_epoch(FRAC_PI_2);
        let psi2_mag = (w * w).norm() * (-2.0 * r / 5.0).exp();
        assert_relative_eq!(s.amplitude(p, t).norm(), psi2_mag, max_relative = 1e-12);

        // Both states vanish at the origin at all times.
        for t in [0.0, 0.3, 1.1, 2.9] {
            assert_eq!(s.amplitude([0.0, 0.0], t).norm(), 0.0);
        }
    }

    #[test]
    fn rabi_offcenter_radius_roots() {
        let s = RabiScenario { d: 1.0 };
        // cot(π/2) = 0: the incoming vortex reaches the center.
        assert_abs_diff_eq!(s.offcenter_vortex_radius(FRAC_PI_2).unwrap(), 0.0, epsilon = 1e-12);
        // cot(π/4) = 1: root of r·e^{4r/15} = 1.
        let r = s.offcenter_vortex_radius(FRAC_PI_4).unwrap();
        assert_relative_eq!(r * (4.0 * r / 15.0).exp(), 1.0, max_relative = 1e-10);
        assert!((r - 0.806).abs() < 5e-3, "root {r}");
        // Multiples of π: vortex at infinity.
        assert!(s.offcenter_vortex_radius(0.0).is_none());
        assert!(s.offcenter_vortex_radius(PI).is_none());
        // Dt → 0⁺: the radius diverges and is reported absent above the cap.
        assert!(s.offcenter_vortex_radius(1e-9).is_none());
        // Monotone approach from infinity.
        let r1 = s.offcenter_vortex_radius(0.01).unwrap();
        let r2 = s.offcenter_vortex_radius(0.1).unwrap();
        let r3 = s.offcenter_vortex_radius(FRAC_PI_4).unwrap();
        assert!(r1 > r2 && r2 > r3, "{r1} > {r2} > {r3} violated");
    }

    #[test]
    fn rabi_offcenter_position_is_a_node() {
        let s = RabiScenario { d: 1.0 };
        for &phase in &[0.4, FRAC_PI_4, 1.0, 1.4, 2.0, 2.8] {
            let t = s.time_of_epoch(phase);
            let radius = s.offcenter_vortex_radius(t).unwrap();
            // 1D search over the angle at the known radius.
            let best = (0..20000)
                .map(|i| {
                    let angle = std::f64::consts::TAU * i as f64 / 20000.0;
                    s.amplitude([radius * angle.cos(), radius * angle.sin()], t).norm()
                })
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-4, "min |psi| {best:.3e} at Dt={phase}");
            // The closed-form angle must do at least as well as the scan.
            let p = s.offcenter_vortex_position(t).unwrap();
            let at_formula = s.amplitude(p, t).norm();
            assert!(at_formula < 1e-10, "|psi| = {at_formula:.3e} at formula position, Dt={phase}");
        }
    }

    #[test]
    fn rabi_gradient_matches_finite_differences() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let s = RabiScenario { d: 1.0 };
        let numeric = NumericOnly(RabiScenario { d: 1.0 });
        let probe = VelocityProbe::default();
        let mut checked = 0;
        while checked < 300 {
            let p = [rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)];
            let t = rng.gen_range(0.0..3.0);
            if density(&s, p, t) < 1e-4 {
                continue;
            }
            let va = madelung_velocity(&s, p, t, &probe).unwrap();
            let vn = madelung_velocity(&numeric, p, t, &probe).unwrap();
            let scale = crate::geom::norm(va).max(1.0);
            assert!(
                crate::geom::dist(va, vn) / scale < 1e-6,
                "gradient mismatch at {p:?}, t={t}"
            );
            checked += 1;
        }
    }
}
