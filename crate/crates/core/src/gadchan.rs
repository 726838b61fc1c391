//! The generalized amplitude damping (GAD) channel family.
//!
//! The channel couples the polarization qubit to a bath characterized by its
//! excited-state population ξ and a decay probability p, acting as
//! ρ ↦ Σₖ Γₖ ρ Γₖ† with four Kraus operators. At p = 1 every input relaxes to
//! the bath's Gibbs state diag(1−ξ, ξ): a heat bath with tunable (possibly
//! negative) temperature. ξ > 0.5 corresponds to population inversion, i.e.
//! β < 0.
//!
//! Besides applying the channel through the Kraus sum, this module carries
//! the closed-form single-step output (used as the second route in tests),
//! and CPTP verification via the completeness sum and the Choi matrix.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::smallmat::{DensityMatrix, Mat2, Mat4, MatError};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error("invalid channel parameters: {0}")]
    InvalidParams(&'static str),
    #[error("Kraus set violates completeness (residual {0:e})")]
    IncompleteKraus(f64),
    #[error(transparent)]
    InvalidState(#[from] MatError),
}

/// Bath excited-state population ξ and decay probability p, both in [0, 1].
///
/// The pair may optionally be derived from a damping constant λ and an
/// interaction time t through p = 1 − e^{−λt}; p stays canonical either way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GadParams {
    xi: f64,
    p: f64,
    decay: Option<(f64, f64)>,
}

impl GadParams {
    pub fn new(xi: f64, p: f64) -> Result<Self, ChannelError> {
        if !xi.is_finite() || !(0.0..=1.0).contains(&xi) {
            return Err(ChannelError::InvalidParams(
                "bath excited population must lie in [0, 1]",
            ));
        }
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(ChannelError::InvalidParams(
                "decay probability must lie in [0, 1]",
            ));
        }
        Ok(Self { xi, p, decay: None })
    }

    /// Parameterize the decay by rate and time: p = 1 − e^{−λt}.
    pub fn from_rate(xi: f64, lambda: f64, t: f64) -> Result<Self, ChannelError> {
        if !lambda.is_finite() || lambda < 0.0 || !t.is_finite() || t < 0.0 {
            return Err(ChannelError::InvalidParams(
                "damping constant and time must be finite and non-negative",
            ));
        }
        let p = -(-lambda * t).exp_m1();
        let mut params = Self::new(xi, p)?;
        params.decay = Some((lambda, t));
        Ok(params)
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// The (λ, t) pair when the decay probability was derived from one.
    pub fn decay(&self) -> Option<(f64, f64)> {
        self.decay
    }
}

/// Four Kraus operators satisfying the completeness relation
/// ‖Σₖ ΓₖᵀΓₖ − I‖_max ≤ [`tol::KRAUS_COMPLETENESS`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrausSet {
    ops: [Mat2; 4],
}

impl KrausSet {
    pub fn new(ops: [Mat2; 4]) -> Result<Self, ChannelError> {
        let residual = completeness_residual(&ops);
        if residual > tol::KRAUS_COMPLETENESS {
            return Err(ChannelError::IncompleteKraus(residual));
        }
        Ok(Self { ops })
    }

    pub fn ops(&self) -> &[Mat2; 4] {
        &self.ops
    }
}

/// ‖Σₖ Γₖ†Γₖ − I‖_max for an arbitrary set of four operators.
pub fn completeness_residual(ops: &[Mat2; 4]) -> f64 {
    let mut sum = Mat2::zero();
    for g in ops {
        sum = sum + g.adjoint() * *g;
    }
    (sum - Mat2::identity()).max_abs()
}

/// The GAD Kraus family for the given parameters.
///
/// With q = 1−ξ and s = √(1−p):
/// Γ₀ = √q·diag(1, s), Γ₁ = √q·√p·|H⟩⟨V|, Γ₂ = √ξ·√p·|V⟩⟨H|,
/// Γ₃ = √ξ·diag(s, 1).
pub fn kraus_gad(params: &GadParams) -> KrausSet {
    let sq_ground = (1.0 - params.xi).sqrt();
    let sq_excited = params.xi.sqrt();
    let sq_keep = (1.0 - params.p).sqrt();
    let sq_decay = params.p.sqrt();

    let g0 = Mat2::diag(1.0, sq_keep).scale_re(sq_ground);
    let g1 = Mat2::from_real([[0.0, sq_decay], [0.0, 0.0]]).scale_re(sq_ground);
    let g2 = Mat2::from_real([[0.0, 0.0], [sq_decay, 0.0]]).scale_re(sq_excited);
    let g3 = Mat2::diag(sq_keep, 1.0).scale_re(sq_excited);

    KrausSet::new([g0, g1, g2, g3]).expect("GAD Kraus family is complete by construction")
}

/// Apply a channel through its Kraus sum, ρ ↦ Σₖ Γₖ ρ Γₖ†.
pub fn apply_channel(k: &KrausSet, rho: &DensityMatrix) -> Result<DensityMatrix, ChannelError> {
    let mut out = Mat2::zero();
    for g in k.ops() {
        out = out + *g * rho.mat() * g.adjoint();
    }
    Ok(DensityMatrix::new(out)?)
}

/// Closed-form single-step output of the GAD channel.
///
/// With populations normalized (ρ₀₀ + ρ₁₁ = 1) the output reads
/// diag entries (1 − pξ − ρ₁₁(1−p), ρ₁₁(1−p) + pξ) and off-diagonals scaled
/// by √(1−p).
pub fn gad_closed_form(
    rho: &DensityMatrix,
    params: &GadParams,
) -> Result<DensityMatrix, ChannelError> {
    let (xi, p) = (params.xi, params.p);
    let r11 = rho.at(1, 1).re;
    let damp = (1.0 - p).sqrt();
    let out00 = 1.0 - p * xi - r11 * (1.0 - p);
    let out11 = r11 * (1.0 - p) + p * xi;
    let out = Mat2::new([
        [C64::from(out00), rho.at(0, 1) * damp],
        [rho.at(1, 0) * damp, C64::from(out11)],
    ]);
    Ok(DensityMatrix::new(out)?)
}

/// The bath's Gibbs state diag(1−ξ, ξ): the channel output in the infinite
/// interaction-time limit (p → 1), independent of the input.
pub fn full_thermalization(xi: f64) -> Result<DensityMatrix, ChannelError> {
    if !xi.is_finite() || !(0.0..=1.0).contains(&xi) {
        return Err(ChannelError::InvalidParams(
            "bath excited population must lie in [0, 1]",
        ));
    }
    Ok(DensityMatrix::from_diag(1.0 - xi, xi)?)
}

/// The unnormalized maximally entangled vector |00⟩ + |11⟩ (signal ⊗ idler).
fn entangled_pair() -> [C64; 4] {
    [
        C64::from(1.0),
        C64::from(0.0),
        C64::from(0.0),
        C64::from(1.0),
    ]
}

fn choi_of_ops(ops: &[Mat2; 4]) -> Mat4 {
    let omega = entangled_pair();
    let mut choi = Mat4::zero();
    for g in ops {
        let lifted = g.kron(&Mat2::identity());
        choi = choi + Mat4::outer(lifted.mul_vec(omega));
    }
    choi
}

/// Choi matrix of the channel: the channel applied to one half of an
/// unnormalized maximally entangled pair, so that Tr C = 2 for any
/// trace-preserving set.
pub fn choi_matrix(k: &KrausSet) -> Mat4 {
    choi_of_ops(k.ops())
}

/// Outcome of a CPTP verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CptpReport {
    /// ‖Σₖ Γₖ†Γₖ − I‖_max.
    pub completeness_residual: f64,
    /// Smallest Choi eigenvalue.
    pub min_choi_eigenvalue: f64,
    /// True iff the residual and the eigenvalue are within
    /// [`tol::CPTP_RESIDUAL`] and [`tol::CPTP_CHOI_FLOOR`].
    pub pass: bool,
}

/// Check trace preservation (completeness) and complete positivity (Choi
/// positivity) of an arbitrary four-operator set. No invariants are assumed,
/// so deliberately broken sets can be diagnosed.
pub fn verify_cptp(ops: &[Mat2; 4]) -> CptpReport {
    let residual = completeness_residual(ops);
    let choi = choi_of_ops(ops);
    let min_eig = choi
        .eigvals_hermitian()
        .expect("Choi matrix is Hermitian by construction")[0];
    CptpReport {
        completeness_residual: residual,
        min_choi_eigenvalue: min_eig,
        pass: residual <= tol::CPTP_RESIDUAL && min_eig >= tol::CPTP_CHOI_FLOOR,
    }
}
