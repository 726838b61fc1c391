//! Simulation of a tunable-temperature heat bath acting on a photonic
//! polarization qubit.
//!
//! The crate models the full chain from theory to (simulated) lab bench:
//!
//! * [`smallmat`] — exact-size 2×2/4×4 complex matrices, Hermitian
//!   eigenvalues, tensor product, partial trace, and the validated
//!   [`DensityMatrix`];
//! * [`thermal`] — Gibbs states of the polarization qubit and the map
//!   between populations and effective inverse temperature (β may be ±∞;
//!   negative temperatures are population-inverted states);
//! * [`gadchan`] — the generalized amplitude damping channel: Kraus
//!   construction, application, closed-form output, the full-thermalization
//!   limit, and CPTP verification through completeness and Choi positivity;
//! * [`optics`] — the nested unbalanced-interferometer scheme that realizes
//!   full thermalization on polarization, element by element;
//! * [`expsim`] — a deterministic Monte Carlo model of the heralded-photon
//!   experiment with binomial counting statistics and temperature
//!   estimation.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to share across threads.

pub mod expsim;
pub mod gadchan;
pub mod optics;
pub mod smallmat;
pub mod thermal;
pub mod tol;

pub use expsim::{
    analytic_rows, estimate_beta, heralded_signal, run_experiment, sample_counts, source_state,
    CountRecord, ExpError, RngStream, SourceConfig, SweepInput, SweepRow,
};
pub use gadchan::{
    apply_channel, choi_matrix, completeness_residual, full_thermalization, gad_closed_form,
    kraus_gad, verify_cptp, ChannelError, CptpReport, GadParams, KrausSet,
};
pub use optics::{
    beta_out, cos_sq, dephase, pipeline, rotate_hv_to_da, second_interferometer, sin_sq,
    spatial_trace, xi_from_angles, BathAngles, OpticsError, PortPair,
};
pub use smallmat::{
    partial_trace_idler, trace_distance, Complex64, DensityMatrix, Mat2, Mat4, MatError,
};
pub use thermal::{
    excited_population, inverse_temperature, thermal_state, Populations, ThermalError, ThermalSpec,
};
