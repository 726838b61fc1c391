//! Shared fixtures for the benchmark targets.

use gadsim_core::{Complex64, DensityMatrix, Mat2};

/// A representative state with coherences.
pub fn coherent_state() -> DensityMatrix {
    DensityMatrix::new(Mat2::new([
        [Complex64::new(0.7, 0.0), Complex64::new(0.1, -0.2)],
        [Complex64::new(0.1, 0.2), Complex64::new(0.3, 0.0)],
    ]))
    .expect("fixture state is valid")
}
