//! Element-by-element model of the nested unbalanced-interferometer scheme
//! that realizes the fully thermalizing channel on a polarization qubit.
//!
//! The optical chain is:
//!
//! 1. a first unbalanced Mach-Zehnder interferometer whose path difference
//!    exceeds the coherence length, destroying H/V coherences ([`dephase`]);
//! 2. a half-wave plate rotating |H⟩ → |D⟩ and |V⟩ → |A⟩
//!    ([`rotate_hv_to_da`]), which leaves any dephased input with balanced
//!    H/V populations;
//! 3. a second unbalanced interferometer: a PBS splits H and V, per-arm
//!    wave plates rotate |H⟩ → |φ⟩ = cos φ|H⟩ + sin φ|V⟩ and
//!    |V⟩ → |θ⟩ = cos θ|V⟩ + sin θ|H⟩, and a second PBS (transmitting H,
//!    reflecting V) recombines the arms incoherently into two output ports
//!    ([`second_interferometer`]);
//! 4. both ports hit the same detector, tracing out the spatial degree of
//!    freedom ([`spatial_trace`]).
//!
//! Because the recombination is incoherent and the split is balanced, the
//! two ports depend only on the wave-plate angles; the output state is the
//! Gibbs state of an effective bath whose excited population is
//! [`xi_from_angles`] and whose inverse temperature is [`beta_out`]. Both
//! signs of the temperature are reachable: (θ, φ) = (π/2, 0) gives β = +∞
//! and (0, π/2) gives β = −∞.

use thiserror::Error;

use crate::smallmat::{DensityMatrix, Mat2};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpticsError {
    #[error("invalid bath angles: {0}")]
    InvalidAngles(&'static str),
}

/// cos²x computed through the double angle, (1 + cos 2x)/2.
///
/// This form is exactly 0 at odd multiples of π/2 and exactly 1 at multiples
/// of π, which keeps the pure-state limits of the interferometer exact.
pub fn cos_sq(x: f64) -> f64 {
    0.5 * (1.0 + (2.0 * x).cos())
}

/// sin²x computed through the double angle, (1 − cos 2x)/2.
pub fn sin_sq(x: f64) -> f64 {
    0.5 * (1.0 - (2.0 * x).cos())
}

/// Wave-plate target angles of the second interferometer plus the energy gap
/// used when converting populations to temperatures.
///
/// θ is the V-arm angle, φ the H-arm angle, both in radians; every output is
/// π-periodic in each angle, so no normalization is applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathAngles {
    theta: f64,
    phi: f64,
    eps: f64,
}

impl BathAngles {
    /// Angles with the default gap ε = 1.
    pub fn new(theta: f64, phi: f64) -> Result<Self, OpticsError> {
        Self::with_eps(theta, phi, 1.0)
    }

    pub fn with_eps(theta: f64, phi: f64, eps: f64) -> Result<Self, OpticsError> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(OpticsError::InvalidAngles("angles must be finite"));
        }
        if !eps.is_finite() || eps <= 0.0 {
            return Err(OpticsError::InvalidAngles(
                "energy gap must be finite and positive",
            ));
        }
        Ok(Self { theta, phi, eps })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

/// The two output ports of the second interferometer: normalized states and
/// weights with c_s + c_l = 2, so the recombined state is
/// (c_s·ρ_s + c_l·ρ_l)/2.
///
/// A dark port (weight 0) carries a maximally mixed placeholder that never
/// influences the recombination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortPair {
    pub rho_s: DensityMatrix,
    pub c_s: f64,
    pub rho_l: DensityMatrix,
    pub c_l: f64,
}

/// Destroy H/V coherences: off-diagonals to exactly zero, populations kept.
pub fn dephase(rho: &DensityMatrix) -> DensityMatrix {
    let (p_h, p_v) = rho.diagonal();
    DensityMatrix::from_diag(p_h, p_v).expect("dephasing preserves state invariants")
}

/// Conjugate by the Hadamard-form wave-plate matrix (1/√2)[[1, 1], [1, −1]],
/// sending |H⟩ → |D⟩ and |V⟩ → |A⟩. A state diagonal in H/V becomes diagonal
/// in D/A with the same populations.
pub fn rotate_hv_to_da(rho: &DensityMatrix) -> DensityMatrix {
    let u = Mat2::from_real([[1.0, 1.0], [1.0, -1.0]]).scale_re(std::f64::consts::FRAC_1_SQRT_2);
    DensityMatrix::new(u * rho.mat() * u.adjoint())
        .expect("unitary rotation preserves state invariants")
}

/// The incoherent second interferometer.
///
/// The PBS sends the H and V components down separate arms; because the
/// upstream rotation balances the populations, each arm carries half the
/// input weight. The arm plates prepare |φ⟩ and |θ⟩, and the recombining PBS
/// collects transmitted H and reflected V per port:
///
/// * short port: ρ_s ∝ diag(cos²φ, cos²θ), weight c_s = cos²φ + cos²θ,
/// * long port:  ρ_l ∝ diag(sin²θ, sin²φ), weight c_l = sin²φ + sin²θ,
///
/// scaled by the input trace, so only the trace of `rho2` survives into the
/// ports and the output is independent of the input state.
pub fn second_interferometer(rho2: &DensityMatrix, angles: &BathAngles) -> PortPair {
    let tr = rho2.mat().trace().re;
    let csq_phi = cos_sq(angles.phi);
    let csq_theta = cos_sq(angles.theta);
    let ssq_phi = sin_sq(angles.phi);
    let ssq_theta = sin_sq(angles.theta);

    let short_weight = csq_phi + csq_theta;
    let long_weight = ssq_phi + ssq_theta;

    let normalized = |top: f64, bottom: f64, weight: f64| {
        if weight == 0.0 {
            DensityMatrix::maximally_mixed()
        } else {
            DensityMatrix::from_diag(top / weight, bottom / weight)
                .expect("normalized port populations form a valid state")
        }
    };

    PortPair {
        rho_s: normalized(csq_phi, csq_theta, short_weight),
        c_s: tr * short_weight,
        rho_l: normalized(ssq_theta, ssq_phi, long_weight),
        c_l: tr * long_weight,
    }
}

/// Trace over the spatial degree of freedom by detecting both ports with the
/// same detector: ρ_out = (c_s·ρ_s + c_l·ρ_l)/2.
pub fn spatial_trace(ports: &PortPair) -> DensityMatrix {
    let combined = ports.rho_s.mat().scale_re(ports.c_s) + ports.rho_l.mat().scale_re(ports.c_l);
    DensityMatrix::new(combined.scale_re(0.5))
        .expect("port recombination preserves state invariants")
}

/// The whole optical chain.
///
/// `pre_dephase` selects whether the first interferometer is present; with
/// thermal (already diagonal) inputs it is redundant, and either setting
/// yields the same output: ρ_out = diag(cos²φ + sin²θ, cos²θ + sin²φ)/2
/// regardless of the input state.
pub fn pipeline(rho_in: &DensityMatrix, angles: &BathAngles, pre_dephase: bool) -> DensityMatrix {
    let staged = if pre_dephase {
        dephase(rho_in)
    } else {
        *rho_in
    };
    let rho2 = rotate_hv_to_da(&staged);
    let ports = second_interferometer(&rho2, angles);
    spatial_trace(&ports)
}

/// Effective output inverse temperature,
/// β_out = ε⁻¹·ln[(cos²φ + sin²θ)/(cos²θ + sin²φ)].
///
/// Returns +∞ when the excited output population vanishes and −∞ when the
/// ground population does.
pub fn beta_out(angles: &BathAngles) -> f64 {
    let num = cos_sq(angles.phi) + sin_sq(angles.theta);
    let den = cos_sq(angles.theta) + sin_sq(angles.phi);
    (num / den).ln() / angles.eps
}

/// The bath excited-state population realized by the interferometer,
/// ξ = (cos²θ + sin²φ)/2, identifying the optical scheme with the fully
/// thermalizing channel.
pub fn xi_from_angles(angles: &BathAngles) -> f64 {
    0.5 * (cos_sq(angles.theta) + sin_sq(angles.phi))
}
