//! Thermal (Gibbs) states of the polarization qubit and the map between
//! populations and effective inverse temperature.
//!
//! Horizontal polarization |H⟩ plays the role of the ground state with energy
//! ε₁ and vertical polarization |V⟩ the excited state with energy ε₂; only
//! the gap ε = ε₂ − ε₁ enters any formula. The inverse temperature β is kept
//! in units of 1/energy (k_B = 1) and may be ±∞: those are the pure states
//! |H⟩ and |V⟩, and population inversion (P_V > P_H) shows up as β < 0.

use thiserror::Error;

use crate::smallmat::DensityMatrix;
use crate::tol;

/// Errors for thermal-state construction and temperature estimation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThermalError {
    #[error("invalid thermal spec: {0}")]
    InvalidSpec(&'static str),
}

/// Inverse temperature β (possibly ±∞) together with the qubit energy gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalSpec {
    beta: f64,
    eps: f64,
}

impl ThermalSpec {
    /// β may be any non-NaN value including ±∞; the gap must be finite and
    /// positive.
    pub fn new(beta: f64, eps: f64) -> Result<Self, ThermalError> {
        if beta.is_nan() {
            return Err(ThermalError::InvalidSpec("beta must not be NaN"));
        }
        check_gap(eps)?;
        Ok(Self { beta, eps })
    }

    /// Spec with the default gap ε = 1.
    pub fn with_unit_gap(beta: f64) -> Result<Self, ThermalError> {
        Self::new(beta, 1.0)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

/// A pair of polarization populations that sum to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Populations {
    p_h: f64,
    p_v: f64,
}

impl Populations {
    /// Validates that both values lie in [0, 1] (within the PSD floor) and
    /// sum to one within [`tol::POPULATION_SUM`]. Values inside the tolerance
    /// band but outside [0, 1] are clamped.
    pub fn new(p_h: f64, p_v: f64) -> Result<Self, ThermalError> {
        if !p_h.is_finite() || !p_v.is_finite() {
            return Err(ThermalError::InvalidSpec("populations must be finite"));
        }
        let slack = -tol::PSD_FLOOR;
        if !(-slack..=1.0 + slack).contains(&p_h) || !(-slack..=1.0 + slack).contains(&p_v) {
            return Err(ThermalError::InvalidSpec("populations must lie in [0, 1]"));
        }
        if (p_h + p_v - 1.0).abs() > tol::POPULATION_SUM {
            return Err(ThermalError::InvalidSpec("populations must sum to one"));
        }
        Ok(Self {
            p_h: p_h.clamp(0.0, 1.0),
            p_v: p_v.clamp(0.0, 1.0),
        })
    }

    /// The diagonal of a validated state.
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let (p_h, p_v) = rho.diagonal();
        Self::new(p_h, p_v).expect("diagonal of a validated state is a population pair")
    }

    pub fn p_h(&self) -> f64 {
        self.p_h
    }

    pub fn p_v(&self) -> f64 {
        self.p_v
    }
}

/// 1 / (1 + eˣ), evaluated without overflow for any x including ±∞.
pub(crate) fn stable_logistic(x: f64) -> f64 {
    if x >= 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

fn check_gap(eps: f64) -> Result<(), ThermalError> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(ThermalError::InvalidSpec(
            "energy gap must be finite and positive",
        ))
    }
}

/// Gibbs state diag(P_H, P_V) with P_H = e^{−βε₁}/Z and P_V = e^{−βε₂}/Z.
///
/// Each population is computed through its own stable logistic so that the
/// small one keeps full relative precision and no exponential overflows for
/// any |β·ε|; β = +∞ gives |H⟩⟨H| and β = −∞ gives |V⟩⟨V| exactly.
pub fn thermal_state(spec: &ThermalSpec) -> DensityMatrix {
    let x = spec.beta * spec.eps;
    let p_h = stable_logistic(-x);
    let p_v = stable_logistic(x);
    DensityMatrix::from_diag(p_h, p_v).expect("thermal populations form a valid state")
}

/// Effective inverse temperature β = ε⁻¹ ln(P_H / P_V).
///
/// Returns +∞ for P_V = 0 and −∞ for P_H = 0.
pub fn inverse_temperature(pop: &Populations, eps: f64) -> Result<f64, ThermalError> {
    check_gap(eps)?;
    // P_H = P_V = 0 cannot occur: the pair sums to one.
    debug_assert!(pop.p_h > 0.0 || pop.p_v > 0.0);
    Ok((pop.p_h / pop.p_v).ln() / eps)
}

/// Thermal population of the excited state, ξ = (1 + e^{βε})⁻¹.
///
/// Numerically stable for any |β·ε|; β = +∞ gives 0 and β = −∞ gives 1.
pub fn excited_population(beta: f64, eps: f64) -> Result<f64, ThermalError> {
    if beta.is_nan() {
        return Err(ThermalError::InvalidSpec("beta must not be NaN"));
    }
    check_gap(eps)?;
    Ok(stable_logistic(beta * eps))
}
