//! Monte Carlo model of the heralded-photon experiment.
//!
//! A two-crystal down-conversion source emits polarization-entangled pairs
//! cos α|HH⟩ + e^{iδ} sin α|VV⟩. Detecting the idler without measuring its
//! polarization traces that qubit out and remotely prepares the signal in
//! the mixed state diag(cos²α, sin²α) — a thermal state whose temperature is
//! set by the pump angle α. The signal then traverses the interferometer
//! chain of [`crate::optics`] and is analyzed in the H/V basis by photon
//! counting; the inverse temperature of the output is estimated from the
//! count ratio.
//!
//! Sampling is deterministic: a fixed, portable generator (ChaCha8) is seeded
//! once and every sweep point draws from its own substream, so results are
//! bit-identical for a given seed regardless of execution order or
//! parallelism.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use thiserror::Error;

use crate::optics::{beta_out, cos_sq, pipeline, sin_sq, BathAngles, OpticsError};
use crate::smallmat::{partial_trace_idler, DensityMatrix, Mat4, MatError};
use crate::thermal::stable_logistic;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExpError {
    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("no heralded events recorded")]
    EmptyRun,
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error(transparent)]
    State(#[from] MatError),
}

/// Pump-controlled source settings: mixing angle α (signal P_H = cos²α) and
/// the relative phase δ of the |VV⟩ component. The phase is invisible after
/// the idler trace but kept for fidelity of the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceConfig {
    alpha: f64,
    delta: f64,
}

impl SourceConfig {
    pub fn new(alpha: f64, delta: f64) -> Result<Self, ExpError> {
        if !alpha.is_finite() || !delta.is_finite() {
            return Err(ExpError::InvalidConfig("source angles must be finite"));
        }
        Ok(Self { alpha, delta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Tallies of one heralded counting run plus the temperature estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountRecord {
    /// Heralded events N = n_h + n_v.
    pub n_total: u64,
    /// Events analyzed as horizontal polarization.
    pub n_h: u64,
    /// Events analyzed as vertical polarization.
    pub n_v: u64,
    /// β̂ = ε⁻¹ ln(n_h/n_v); ±∞ when one count is zero.
    pub beta_hat: f64,
    /// One standard error, ε⁻¹ √(1/n_h + 1/n_v); +∞ when a count is zero.
    pub beta_err: f64,
}

/// Seed for the fixed, portable generator (ChaCha8) with one substream per
/// sweep point. Identical seed and configuration give bit-identical counts
/// on any platform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RngStream {
    seed: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The generator for one sweep point; distinct indices give statistically
    /// independent streams.
    pub fn substream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

/// Two-photon state emitted by the two-crystal source,
/// |ψ⟩ = cos α|HH⟩ + e^{iδ} sin α|VV⟩, as a 4×4 density matrix
/// (signal ⊗ idler).
pub fn source_state(cfg: &SourceConfig) -> Mat4 {
    let phase = num_complex::Complex64::from_polar(1.0, cfg.delta);
    let amplitudes = [
        num_complex::Complex64::from(cfg.alpha.cos()),
        num_complex::Complex64::from(0.0),
        num_complex::Complex64::from(0.0),
        phase * cfg.alpha.sin(),
    ];
    Mat4::outer(amplitudes)
}

/// Signal state heralded by an idler detection that ignores polarization:
/// the idler trace of [`source_state`], diag(cos²α, sin²α). The phase δ has
/// no effect.
pub fn heralded_signal(cfg: &SourceConfig) -> DensityMatrix {
    partial_trace_idler(&source_state(cfg)).expect("pure source state is a valid two-qubit state")
}

fn check_gap(eps: f64) -> Result<(), ExpError> {
    if eps.is_finite() && eps > 0.0 {
        Ok(())
    } else {
        Err(ExpError::InvalidConfig(
            "energy gap must be finite and positive",
        ))
    }
}

fn beta_estimates(n_h: u64, n_v: u64, eps: f64) -> (f64, f64) {
    match (n_h, n_v) {
        (0, 0) => unreachable!("callers guard against empty runs"),
        (_, 0) => (f64::INFINITY, f64::INFINITY),
        (0, _) => (f64::NEG_INFINITY, f64::INFINITY),
        _ => {
            let (h, v) = (n_h as f64, n_v as f64);
            ((h / v).ln() / eps, (1.0 / h + 1.0 / v).sqrt() / eps)
        }
    }
}

/// Projective H/V analysis of `n` heralded photons: n_h is binomial with
/// success probability P_H, the ground-state population of `rho`.
/// Deterministic for a given generator state.
pub fn sample_counts<R: Rng + ?Sized>(
    rho: &DensityMatrix,
    n: u64,
    eps: f64,
    rng: &mut R,
) -> Result<CountRecord, ExpError> {
    check_gap(eps)?;
    if n == 0 {
        return Err(ExpError::EmptyRun);
    }
    let p_h = rho.at(0, 0).re.clamp(0.0, 1.0);
    let n_h = Binomial::new(n, p_h)
        .expect("clamped population is a valid probability")
        .sample(rng);
    let n_v = n - n_h;
    let (beta_hat, beta_err) = beta_estimates(n_h, n_v, eps);
    Ok(CountRecord {
        n_total: n,
        n_h,
        n_v,
        beta_hat,
        beta_err,
    })
}

/// Inverse-temperature estimate from recorded counts:
/// β̂ = ε⁻¹ ln(n_h/n_v) with the delta-method standard error
/// σ_β = ε⁻¹ √(1/n_h + 1/n_v). Returns (±∞, +∞) when one count is zero.
pub fn estimate_beta(counts: &CountRecord, eps: f64) -> Result<(f64, f64), ExpError> {
    check_gap(eps)?;
    if counts.n_total == 0 {
        return Err(ExpError::EmptyRun);
    }
    Ok(beta_estimates(counts.n_h, counts.n_v, eps))
}

/// One input state of a sweep: a display label, the nominal inverse
/// temperature, and the source setting that prepares it.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepInput {
    pub id: String,
    pub beta_in: f64,
    pub source: SourceConfig,
}

impl SweepInput {
    /// Input specified directly by the pump mixing angle.
    pub fn from_alpha(id: impl Into<String>, alpha: f64, eps: f64) -> Result<Self, ExpError> {
        check_gap(eps)?;
        let source = SourceConfig::new(alpha, 0.0)?;
        let beta_in = (cos_sq(alpha) / sin_sq(alpha)).ln() / eps;
        Ok(Self {
            id: id.into(),
            beta_in,
            source,
        })
    }

    /// Input specified by its inverse temperature; β = ±∞ are the pure
    /// states |H⟩ and |V⟩. The pump angle follows from cos²α = P_H.
    pub fn from_beta(id: impl Into<String>, beta: f64, eps: f64) -> Result<Self, ExpError> {
        check_gap(eps)?;
        if beta.is_nan() {
            return Err(ExpError::InvalidConfig("beta must not be NaN"));
        }
        let p_h = stable_logistic(-beta * eps);
        let alpha = p_h.sqrt().acos();
        Ok(Self {
            id: id.into(),
            beta_in: beta,
            source: SourceConfig::new(alpha, 0.0)?,
        })
    }
}

/// One emitted row of a sweep. Monte Carlo columns are `None` in analytic
/// sweeps and filled by [`run_experiment`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub input_id: String,
    pub alpha: f64,
    pub phi: f64,
    pub theta: f64,
    pub beta_in: f64,
    pub beta_out_analytic: f64,
    pub n_total: Option<u64>,
    pub n_h: Option<u64>,
    pub n_v: Option<u64>,
    pub beta_hat: Option<f64>,
    pub beta_err: Option<f64>,
}

fn check_sweep_args(inputs: &[SweepInput], phis: &[f64], thetas: &[f64]) -> Result<(), ExpError> {
    if inputs.is_empty() || phis.is_empty() || thetas.is_empty() {
        return Err(ExpError::InvalidConfig(
            "inputs, phi list and theta grid must be nonempty",
        ));
    }
    if phis.iter().chain(thetas).any(|a| !a.is_finite()) {
        return Err(ExpError::InvalidConfig("sweep angles must be finite"));
    }
    Ok(())
}

/// All sweep points in emission order: lexicographic by
/// (input id, φ, θ).
fn sorted_points<'a>(
    inputs: &'a [SweepInput],
    phis: &[f64],
    thetas: &[f64],
) -> Vec<(&'a SweepInput, f64, f64)> {
    let mut inputs_sorted: Vec<&SweepInput> = inputs.iter().collect();
    inputs_sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let mut phis_sorted = phis.to_vec();
    phis_sorted.sort_by(f64::total_cmp);
    let mut thetas_sorted = thetas.to_vec();
    thetas_sorted.sort_by(f64::total_cmp);

    let mut points = Vec::with_capacity(inputs.len() * phis.len() * thetas.len());
    for input in &inputs_sorted {
        for &phi in &phis_sorted {
            for &theta in &thetas_sorted {
                points.push((*input, phi, theta));
            }
        }
    }
    points
}

/// Analytic sweep: one row per (input, φ, θ) with the Monte Carlo columns
/// left empty.
pub fn analytic_rows(
    inputs: &[SweepInput],
    phis: &[f64],
    thetas: &[f64],
    eps: f64,
) -> Result<Vec<SweepRow>, ExpError> {
    check_gap(eps)?;
    check_sweep_args(inputs, phis, thetas)?;
    sorted_points(inputs, phis, thetas)
        .into_iter()
        .map(|(input, phi, theta)| {
            let angles = BathAngles::with_eps(theta, phi, eps)?;
            Ok(SweepRow {
                input_id: input.id.clone(),
                alpha: input.source.alpha(),
                phi,
                theta,
                beta_in: input.beta_in,
                beta_out_analytic: beta_out(&angles),
                n_total: None,
                n_h: None,
                n_v: None,
                beta_hat: None,
                beta_err: None,
            })
        })
        .collect()
}

/// Full Monte Carlo sweep: for every (input, φ, θ) prepare the heralded
/// signal, pass it through the interferometer chain (no first
/// interferometer: the inputs are already thermal), count `n_per_point`
/// analyzed photons and estimate β̂.
///
/// Sweep points are independent and evaluated in parallel; each point draws
/// from its own substream of `rng`, indexed by its position in the sorted
/// row order, so the output is deterministic for a fixed seed.
pub fn run_experiment(
    inputs: &[SweepInput],
    phis: &[f64],
    thetas: &[f64],
    n_per_point: u64,
    eps: f64,
    rng: &RngStream,
) -> Result<Vec<SweepRow>, ExpError> {
    check_gap(eps)?;
    check_sweep_args(inputs, phis, thetas)?;
    if n_per_point == 0 {
        return Err(ExpError::EmptyRun);
    }
    sorted_points(inputs, phis, thetas)
        .into_par_iter()
        .enumerate()
        .map(|(index, (input, phi, theta))| {
            let angles = BathAngles::with_eps(theta, phi, eps)?;
            let signal = heralded_signal(&input.source);
            let out = pipeline(&signal, &angles, false);
            let mut point_rng = rng.substream(index as u64);
            let counts = sample_counts(&out, n_per_point, eps, &mut point_rng)?;
            Ok(SweepRow {
                input_id: input.id.clone(),
                alpha: input.source.alpha(),
                phi,
                theta,
                beta_in: input.beta_in,
                beta_out_analytic: beta_out(&angles),
                n_total: Some(counts.n_total),
                n_h: Some(counts.n_h),
                n_v: Some(counts.n_v),
                beta_hat: Some(counts.beta_hat),
                beta_err: Some(counts.beta_err),
            })
        })
        .collect()
}
