//! Fixed-size complex matrices (2×2 and 4×4) and the validated qubit state
//! built on them.
//!
//! The whole library lives in one- and two-qubit Hilbert spaces, so there is
//! no general-N linear algebra here: matrices are stack-allocated arrays,
//! Hermitian eigenvalues come from the closed-form quadratic (2×2) or a
//! cyclic Jacobi iteration (4×4), and [`DensityMatrix`] enforces the usual
//! state invariants (Hermitian, unit trace, positive semidefinite) at
//! construction time.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tol;

pub use num_complex::Complex64;

/// Errors produced by matrix validation and eigenvalue routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatError {
    /// An entry is NaN or infinite.
    #[error("matrix entries must be finite")]
    NonFinite,
    /// Asymmetry larger than the allowed tolerance.
    #[error("matrix is not Hermitian (max deviation {found:e}, allowed {allowed:e})")]
    NonHermitianInput { found: f64, allowed: f64 },
    /// The trace of a would-be state differs from one.
    #[error("invalid state: trace deviates from one by {0:e}")]
    TraceNotOne(f64),
    /// A would-be state has an eigenvalue below the PSD floor.
    #[error("invalid state: minimum eigenvalue {0:e} is negative")]
    NotPositive(f64),
    /// The Jacobi iteration failed to reach its off-diagonal target.
    #[error("eigensolver did not converge within {0} sweeps")]
    NoConvergence(usize),
}

// ---------------------------------------------------------------------------
// Mat2
// ---------------------------------------------------------------------------

/// A general 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "MatrixJson", into = "MatrixJson")]
pub struct Mat2 {
    e: [[C64; 2]; 2],
}

impl Mat2 {
    pub fn new(entries: [[C64; 2]; 2]) -> Self {
        Self { e: entries }
    }

    /// Build from real entries.
    pub fn from_real(entries: [[f64; 2]; 2]) -> Self {
        Self {
            e: entries.map(|row| row.map(C64::from)),
        }
    }

    pub fn zero() -> Self {
        Self::from_real([[0.0; 2]; 2])
    }

    pub fn identity() -> Self {
        Self::from_real([[1.0, 0.0], [0.0, 1.0]])
    }

    /// Diagonal matrix with the given real entries; off-diagonals exactly zero.
    pub fn diag(d0: f64, d1: f64) -> Self {
        Self::from_real([[d0, 0.0], [0.0, d1]])
    }

    pub fn at(&self, row: usize, col: usize) -> C64 {
        self.e[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.e[row][col] = value;
    }

    pub fn entries(&self) -> &[[C64; 2]; 2] {
        &self.e
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] = self.e[c][r].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        self.e[0][0] + self.e[1][1]
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = *self;
        for row in out.e.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::from(s))
    }

    pub fn is_finite(&self) -> bool {
        self.e
            .iter()
            .flatten()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Largest entrywise deviation from Hermiticity, max |a_ij − conj(a_ji)|.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                dev = dev.max((self.e[r][c] - self.e[c][r].conj()).norm());
            }
        }
        dev
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise difference |a_ij − b_ij|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut dev: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                dev = dev.max((self.e[r][c] - other.e[r][c]).norm());
            }
        }
        dev
    }

    /// Both eigenvalues of a Hermitian matrix in ascending order, from the
    /// closed-form quadratic.
    ///
    /// The input may deviate from exact Hermiticity by at most
    /// [`tol::EIG_HERMITICITY`]; the computation uses the Hermitian part.
    pub fn eigvals_hermitian(&self) -> Result<(f64, f64), MatError> {
        if !self.is_finite() {
            return Err(MatError::NonFinite);
        }
        let dev = self.hermiticity_deviation();
        if dev > tol::EIG_HERMITICITY {
            return Err(MatError::NonHermitianInput {
                found: dev,
                allowed: tol::EIG_HERMITICITY,
            });
        }
        let a = self.e[0][0].re;
        let d = self.e[1][1].re;
        let off = 0.5 * (self.e[0][1] + self.e[1][0].conj());
        let mid = 0.5 * (a + d);
        let rad = (0.25 * (a - d) * (a - d) + off.norm_sqr()).sqrt();
        Ok((mid - rad, mid + rad))
    }

    /// Kronecker product, first factor on the left (signal ⊗ idler).
    pub fn kron(&self, other: &Self) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out.e[2 * i + k][2 * j + l] = self.e[i][j] * other.e[k][l];
                    }
                }
            }
        }
        out
    }
}

impl std::ops::Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] += rhs.e[r][c];
            }
        }
        out
    }
}

impl std::ops::Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] -= rhs.e[r][c];
            }
        }
        out
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] = self.e[r][0] * rhs.e[0][c] + self.e[r][1] * rhs.e[1][c];
            }
        }
        out
    }
}

/// JSON wire form of a 2×2 complex matrix: real and imaginary parts as
/// row-major nested arrays.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    re: [[f64; 2]; 2],
    im: [[f64; 2]; 2],
}

impl From<MatrixJson> for Mat2 {
    fn from(j: MatrixJson) -> Self {
        let mut m = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                m.e[r][c] = C64::new(j.re[r][c], j.im[r][c]);
            }
        }
        m
    }
}

impl From<Mat2> for MatrixJson {
    fn from(m: Mat2) -> Self {
        let mut re = [[0.0; 2]; 2];
        let mut im = [[0.0; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                re[r][c] = m.e[r][c].re;
                im[r][c] = m.e[r][c].im;
            }
        }
        MatrixJson { re, im }
    }
}

// ---------------------------------------------------------------------------
// Mat4
// ---------------------------------------------------------------------------

/// A general 4×4 complex matrix, row-major. Used for two-qubit states and
/// Choi matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4 {
    e: [[C64; 4]; 4],
}

impl Mat4 {
    pub fn new(entries: [[C64; 4]; 4]) -> Self {
        Self { e: entries }
    }

    pub fn zero() -> Self {
        Self {
            e: [[C64::from(0.0); 4]; 4],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.e[i][i] = C64::from(1.0);
        }
        m
    }

    pub fn diag(d: [f64; 4]) -> Self {
        let mut m = Self::zero();
        for (i, &v) in d.iter().enumerate() {
            m.e[i][i] = C64::from(v);
        }
        m
    }

    pub fn at(&self, row: usize, col: usize) -> C64 {
        self.e[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.e[row][col] = value;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                out.e[r][c] = self.e[c][r].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..4).map(|i| self.e[i][i]).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.e
            .iter()
            .flatten()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                dev = dev.max((self.e[r][c] - self.e[c][r].conj()).norm());
            }
        }
        dev
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut dev: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                dev = dev.max((self.e[r][c] - other.e[r][c]).norm());
            }
        }
        dev
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: [C64; 4]) -> [C64; 4] {
        let mut out = [C64::from(0.0); 4];
        for (r, slot) in out.iter_mut().enumerate() {
            *slot = (0..4).map(|c| self.e[r][c] * v[c]).sum();
        }
        out
    }

    /// Rank-one matrix v v†.
    pub fn outer(v: [C64; 4]) -> Self {
        let mut out = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                out.e[r][c] = v[r] * v[c].conj();
            }
        }
        out
    }

    fn offdiag_norm(&self) -> f64 {
        let mut sum = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                if r != c {
                    sum += self.e[r][c].norm_sqr();
                }
            }
        }
        sum.sqrt()
    }

    /// All four eigenvalues of a Hermitian matrix in ascending order.
    ///
    /// Cyclic Jacobi rotations on the Hermitian part, iterated until the
    /// off-diagonal norm drops below [`tol::JACOBI_OFFDIAG_NORM`] or
    /// [`tol::JACOBI_MAX_SWEEPS`] sweeps have run.
    pub fn eigvals_hermitian(&self) -> Result<[f64; 4], MatError> {
        if !self.is_finite() {
            return Err(MatError::NonFinite);
        }
        let dev = self.hermiticity_deviation();
        if dev > tol::EIG_HERMITICITY {
            return Err(MatError::NonHermitianInput {
                found: dev,
                allowed: tol::EIG_HERMITICITY,
            });
        }

        // Work on the Hermitian part so the rotations see exact symmetry.
        let mut a = Self::zero();
        for r in 0..4 {
            for c in 0..4 {
                a.e[r][c] = 0.5 * (self.e[r][c] + self.e[c][r].conj());
            }
        }

        let mut converged = false;
        for _ in 0..tol::JACOBI_MAX_SWEEPS {
            if a.offdiag_norm() <= tol::JACOBI_OFFDIAG_NORM {
                converged = true;
                break;
            }
            for p in 0..3 {
                for q in (p + 1)..4 {
                    jacobi_rotate(&mut a, p, q);
                }
            }
        }
        if !converged && a.offdiag_norm() > tol::JACOBI_OFFDIAG_NORM {
            return Err(MatError::NoConvergence(tol::JACOBI_MAX_SWEEPS));
        }

        let mut vals = [0.0; 4];
        for (i, v) in vals.iter_mut().enumerate() {
            *v = a.e[i][i].re;
        }
        vals.sort_by(f64::total_cmp);
        Ok(vals)
    }
}

impl std::ops::Add for Mat4 {
    type Output = Mat4;
    fn add(self, rhs: Mat4) -> Mat4 {
        let mut out = self;
        for r in 0..4 {
            for c in 0..4 {
                out.e[r][c] += rhs.e[r][c];
            }
        }
        out
    }
}

impl std::ops::Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, rhs: Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for r in 0..4 {
            for c in 0..4 {
                out.e[r][c] = (0..4).map(|k| self.e[r][k] * rhs.e[k][c]).sum();
            }
        }
        out
    }
}

/// One Jacobi step: a unitary plane rotation in the (p, q) plane that zeroes
/// the a[p][q] entry of a Hermitian matrix.
fn jacobi_rotate(a: &mut Mat4, p: usize, q: usize) {
    let apq = a.e[p][q];
    let m = apq.norm();
    if m == 0.0 {
        return;
    }
    let app = a.e[p][p].re;
    let aqq = a.e[q][q].re;
    let beta = (app - aqq) / (2.0 * m);
    // Smaller-magnitude root of t² − 2βt − 1 = 0.
    let t = if beta == 0.0 {
        1.0
    } else {
        -beta.signum() / (beta.abs() + (beta * beta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase = apq / m;

    let mut rot = Mat4::identity();
    rot.e[p][p] = C64::from(c);
    rot.e[q][q] = C64::from(c);
    rot.e[p][q] = phase * s;
    rot.e[q][p] = -phase.conj() * s;

    *a = rot.adjoint() * *a * rot;
}

// ---------------------------------------------------------------------------
// DensityMatrix
// ---------------------------------------------------------------------------

/// A validated single-qubit state: Hermitian, unit trace, and positive
/// semidefinite within the tolerances in [`crate::tol`].
///
/// Basis convention: index 0 is horizontal polarization |H⟩ (ground state),
/// index 1 is vertical polarization |V⟩ (excited state).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct DensityMatrix {
    m: Mat2,
}

impl DensityMatrix {
    /// Validate raw entries as a physical state.
    pub fn new(m: Mat2) -> Result<Self, MatError> {
        if !m.is_finite() {
            return Err(MatError::NonFinite);
        }
        let dev = m.hermiticity_deviation();
        if dev > tol::HERMITICITY {
            return Err(MatError::NonHermitianInput {
                found: dev,
                allowed: tol::HERMITICITY,
            });
        }
        let tr = m.trace();
        let tr_dev = (tr - C64::from(1.0)).norm();
        if tr_dev > tol::UNIT_TRACE {
            return Err(MatError::TraceNotOne(tr_dev));
        }
        let (lo, _) = m.eigvals_hermitian()?;
        if lo < tol::PSD_FLOOR {
            return Err(MatError::NotPositive(lo));
        }
        Ok(Self { m })
    }

    /// Diagonal state with the given populations.
    pub fn from_diag(p_h: f64, p_v: f64) -> Result<Self, MatError> {
        Self::new(Mat2::diag(p_h, p_v))
    }

    /// |H⟩⟨H|, the polarization ground state.
    pub fn pure_h() -> Self {
        Self {
            m: Mat2::diag(1.0, 0.0),
        }
    }

    /// |V⟩⟨V|, the polarization excited state.
    pub fn pure_v() -> Self {
        Self {
            m: Mat2::diag(0.0, 1.0),
        }
    }

    /// The maximally mixed state I/2.
    pub fn maximally_mixed() -> Self {
        Self {
            m: Mat2::diag(0.5, 0.5),
        }
    }

    pub fn mat(&self) -> Mat2 {
        self.m
    }

    pub fn at(&self, row: usize, col: usize) -> C64 {
        self.m.at(row, col)
    }

    /// Diagonal populations (P_H, P_V) as real numbers.
    pub fn diagonal(&self) -> (f64, f64) {
        (self.m.at(0, 0).re, self.m.at(1, 1).re)
    }

    /// Both eigenvalues, ascending.
    pub fn eigvals(&self) -> (f64, f64) {
        self.m
            .eigvals_hermitian()
            .expect("validated state is Hermitian")
    }
}

impl TryFrom<MatrixJson> for DensityMatrix {
    type Error = MatError;
    fn try_from(j: MatrixJson) -> Result<Self, MatError> {
        DensityMatrix::new(Mat2::from(j))
    }
}

impl From<DensityMatrix> for MatrixJson {
    fn from(d: DensityMatrix) -> Self {
        d.m.into()
    }
}

// ---------------------------------------------------------------------------
// Two-qubit helpers
// ---------------------------------------------------------------------------

fn validate_two_qubit_state(s: &Mat4) -> Result<(), MatError> {
    if !s.is_finite() {
        return Err(MatError::NonFinite);
    }
    let dev = s.hermiticity_deviation();
    if dev > tol::HERMITICITY {
        return Err(MatError::NonHermitianInput {
            found: dev,
            allowed: tol::HERMITICITY,
        });
    }
    let tr_dev = (s.trace() - C64::from(1.0)).norm();
    if tr_dev > tol::UNIT_TRACE {
        return Err(MatError::TraceNotOne(tr_dev));
    }
    let vals = s.eigvals_hermitian()?;
    if vals[0] < tol::PSD_FLOOR {
        return Err(MatError::NotPositive(vals[0]));
    }
    Ok(())
}

/// Reduced signal-qubit state of a two-qubit (signal ⊗ idler) state,
/// obtained by tracing out the idler.
///
/// The input must be a valid two-qubit density matrix.
pub fn partial_trace_idler(state: &Mat4) -> Result<DensityMatrix, MatError> {
    validate_two_qubit_state(state)?;
    let mut reduced = Mat2::zero();
    for i in 0..2 {
        for j in 0..2 {
            let mut sum = C64::from(0.0);
            for k in 0..2 {
                sum += state.at(2 * i + k, 2 * j + k);
            }
            reduced.set(i, j, sum);
        }
    }
    DensityMatrix::new(reduced)
}

/// Trace distance ½‖ρ − σ‖₁ between two states.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let d = a.mat() - b.mat();
    let (lo, hi) = d
        .eigvals_hermitian()
        .expect("difference of Hermitian states is Hermitian");
    0.5 * (lo.abs() + hi.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Independent oracle: |det(A − λI)| for a 2×2 matrix.
    fn charpoly_residual_2(a: &Mat2, lambda: f64) -> f64 {
        let l = C64::from(lambda);
        let det = (a.at(0, 0) - l) * (a.at(1, 1) - l) - a.at(0, 1) * a.at(1, 0);
        det.norm()
    }

    /// Independent oracle: |det(A − λI)| for a 4×4 matrix, by Laplace
    /// expansion along the first row.
    fn charpoly_residual_4(a: &Mat4, lambda: f64) -> f64 {
        let mut m = [[C64::from(0.0); 4]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (col, cell) in row.iter_mut().enumerate() {
                *cell = a.at(r, col);
            }
            row[r] -= C64::from(lambda);
        }
        fn det3(m: [[C64; 3]; 3]) -> C64 {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        let mut det = C64::from(0.0);
        let mut sign = 1.0;
        for col in 0..4 {
            let mut minor = [[C64::from(0.0); 3]; 3];
            for (mc, c2) in (0..4).filter(|&c| c != col).enumerate() {
                for r2 in 1..4 {
                    minor[r2 - 1][mc] = m[r2][c2];
                }
            }
            det += C64::from(sign) * m[0][col] * det3(minor);
            sign = -sign;
        }
        det.norm()
    }

    fn sigma_x() -> Mat2 {
        Mat2::from_real([[0.0, 1.0], [1.0, 0.0]])
    }

    #[test]
    fn mul_identity_leaves_matrix_unchanged() {
        let a = Mat2::new([[c(1.0, 2.0), c(-0.5, 0.25)], [c(0.0, -1.0), c(3.0, 0.0)]]);
        assert_eq!(Mat2::identity() * a, a);
        assert_eq!(a * Mat2::identity(), a);
    }

    #[test]
    fn mul_diagonal_matrices() {
        let a = Mat2::diag(2.0, 3.0);
        let b = Mat2::diag(5.0, 7.0);
        assert_eq!(a * b, Mat2::diag(10.0, 21.0));
    }

    #[test]
    fn sigma_x_squares_to_identity() {
        assert_eq!(sigma_x() * sigma_x(), Mat2::identity());
    }

    #[test]
    fn adjoint_of_hermitian_is_itself() {
        let a = Mat2::new([[c(0.7, 0.0), c(0.1, -0.2)], [c(0.1, 0.2), c(0.3, 0.0)]]);
        assert_eq!(a.adjoint(), a);
    }

    #[test]
    fn adjoint_transposes_nilpotent() {
        let a = Mat2::from_real([[0.0, 1.0], [0.0, 0.0]]);
        assert_eq!(a.adjoint(), Mat2::from_real([[0.0, 0.0], [1.0, 0.0]]));
    }

    #[test]
    fn adjoint_conjugates_entries() {
        let a = Mat2::new([[c(0.0, 0.0), c(0.0, 1.0)], [c(0.0, 0.0), c(0.0, 0.0)]]);
        let expect = Mat2::new([[c(0.0, 0.0), c(0.0, 0.0)], [c(0.0, -1.0), c(0.0, 0.0)]]);
        assert_eq!(a.adjoint(), expect);
    }

    #[test]
    fn eig2_diagonal() {
        let (lo, hi) = Mat2::diag(0.25, 0.75).eigvals_hermitian().unwrap();
        assert_eq!((lo, hi), (0.25, 0.75));
    }

    #[test]
    fn eig2_sigma_x() {
        let (lo, hi) = sigma_x().eigvals_hermitian().unwrap();
        assert_eq!((lo, hi), (-1.0, 1.0));
    }

    #[test]
    fn eig2_mixed_with_coherence() {
        // ½I + 0.3σx has eigenvalues 0.5 ∓ 0.3.
        let a = Mat2::from_real([[0.5, 0.3], [0.3, 0.5]]);
        let (lo, hi) = a.eigvals_hermitian().unwrap();
        assert!((lo - 0.2).abs() < 1e-14);
        assert!((hi - 0.8).abs() < 1e-14);
        assert!(charpoly_residual_2(&a, lo) < 1e-9);
        assert!(charpoly_residual_2(&a, hi) < 1e-9);
    }

    #[test]
    fn eig2_rejects_non_hermitian() {
        let a = Mat2::from_real([[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(
            a.eigvals_hermitian(),
            Err(MatError::NonHermitianInput { .. })
        ));
    }

    #[test]
    fn eig4_diagonal() {
        let vals = Mat4::diag([1.0, 2.0, 3.0, 4.0])
            .eigvals_hermitian()
            .unwrap();
        assert_eq!(vals, [1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn eig4_scaled_bell_projector() {
        // 2·|Φ+⟩⟨Φ+| with |Φ+⟩ = (|00⟩ + |11⟩)/√2: rank one, eigenvalues (0,0,0,2).
        let omega = [
            C64::from(1.0),
            C64::from(0.0),
            C64::from(0.0),
            C64::from(1.0),
        ];
        let m = Mat4::outer(omega);
        // Projector oracle: (m/2)² = m/2 and Tr(m/2) = 1.
        let half = {
            let mut h = m;
            for r in 0..4 {
                for c2 in 0..4 {
                    h.set(r, c2, h.at(r, c2) * 0.5);
                }
            }
            h
        };
        assert!((half * half).max_abs_diff(&half) < 1e-15);
        assert!((half.trace() - C64::from(1.0)).norm() < 1e-15);

        let vals = m.eigvals_hermitian().unwrap();
        for v in &vals[..3] {
            assert!(v.abs() < 1e-12);
        }
        assert!((vals[3] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn eig4_trace_identity_and_residuals() {
        // Deterministic "random" Hermitian matrices from a simple LCG.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        for _ in 0..25 {
            let mut m = Mat4::zero();
            for r in 0..4 {
                m.set(r, r, C64::from(next()));
                for c2 in (r + 1)..4 {
                    let v = c(next(), next());
                    m.set(r, c2, v);
                    m.set(c2, r, v.conj());
                }
            }
            let vals = m.eigvals_hermitian().unwrap();
            let sum: f64 = vals.iter().sum();
            assert!((sum - m.trace().re).abs() < 1e-10);
            for v in vals {
                assert!(charpoly_residual_4(&m, v) < 1e-9, "residual too large");
            }
        }
    }

    #[test]
    fn eig4_rejects_non_hermitian() {
        let mut m = Mat4::zero();
        m.set(0, 1, C64::from(1.0));
        assert!(matches!(
            m.eigvals_hermitian(),
            Err(MatError::NonHermitianInput { .. })
        ));
    }

    #[test]
    fn kron_identities() {
        assert_eq!(Mat2::identity().kron(&Mat2::identity()), Mat4::identity());
        assert_eq!(
            Mat2::diag(1.0, 0.0).kron(&Mat2::diag(1.0, 0.0)),
            Mat4::diag([1.0, 0.0, 0.0, 0.0])
        );
    }

    #[test]
    fn kron_trace_is_multiplicative() {
        let a = Mat2::new([[c(0.3, 0.1), c(1.0, -2.0)], [c(0.5, 0.5), c(-0.7, 0.2)]]);
        let b = Mat2::new([[c(-1.0, 0.4), c(0.2, 0.0)], [c(0.9, -0.3), c(0.6, 1.1)]]);
        let lhs = a.kron(&b).trace();
        let rhs = a.trace() * b.trace();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn partial_trace_of_product_pure_state() {
        let hh = Mat2::diag(1.0, 0.0).kron(&Mat2::diag(1.0, 0.0));
        let reduced = partial_trace_idler(&hh).unwrap();
        assert_eq!(reduced, DensityMatrix::pure_h());
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let phi_plus = [
            C64::from(inv),
            C64::from(0.0),
            C64::from(0.0),
            C64::from(inv),
        ];
        let reduced = partial_trace_idler(&Mat4::outer(phi_plus)).unwrap();
        assert!(reduced.mat().max_abs_diff(&Mat2::diag(0.5, 0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_of_partially_entangled_state() {
        let alpha = 0.7f64;
        let v = [
            C64::from(alpha.cos()),
            C64::from(0.0),
            C64::from(0.0),
            C64::from(alpha.sin()),
        ];
        let state = Mat4::outer(v);
        let reduced = partial_trace_idler(&state).unwrap();

        // Oracle: contract ⟨i| ⊗ ⟨k| ρ |j⟩ ⊗ |k⟩ with explicit basis vectors.
        let basis = |n: usize| {
            let mut e = [C64::from(0.0); 4];
            e[n] = C64::from(1.0);
            e
        };
        let mut oracle = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut sum = C64::from(0.0);
                for k in 0..2 {
                    let col = state.mul_vec(basis(2 * j + k));
                    sum += col[2 * i + k];
                }
                oracle.set(i, j, sum);
            }
        }
        assert!(reduced.mat().max_abs_diff(&oracle) < 1e-15);
        let (p_h, p_v) = reduced.diagonal();
        assert!((p_h - alpha.cos().powi(2)).abs() < 1e-15);
        assert!((p_v - alpha.sin().powi(2)).abs() < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_unnormalized_input() {
        let bad = Mat2::diag(2.0, 0.0).kron(&Mat2::diag(1.0, 0.0));
        assert!(matches!(
            partial_trace_idler(&bad),
            Err(MatError::TraceNotOne(_))
        ));
    }

    #[test]
    fn density_matrix_rejects_violations() {
        let non_herm = Mat2::new([[c(0.5, 0.0), c(0.3, 0.0)], [c(0.2, 0.0), c(0.5, 0.0)]]);
        assert!(matches!(
            DensityMatrix::new(non_herm),
            Err(MatError::NonHermitianInput { .. })
        ));

        let bad_trace = Mat2::diag(0.6, 0.6);
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(MatError::TraceNotOne(_))
        ));

        // Hermitian, unit trace, but indefinite.
        let indefinite = Mat2::from_real([[0.5, 0.7], [0.7, 0.5]]);
        assert!(matches!(
            DensityMatrix::new(indefinite),
            Err(MatError::NotPositive(_))
        ));

        let nan = Mat2::from_real([[f64::NAN, 0.0], [0.0, 1.0]]);
        assert!(matches!(DensityMatrix::new(nan), Err(MatError::NonFinite)));
    }

    #[test]
    fn trace_distance_basics() {
        let h = DensityMatrix::pure_h();
        let v = DensityMatrix::pure_v();
        assert_eq!(trace_distance(&h, &h), 0.0);
        assert!((trace_distance(&h, &v) - 1.0).abs() < 1e-15);
        assert_eq!(trace_distance(&h, &v), trace_distance(&v, &h));
    }

    #[test]
    fn json_round_trip() {
        let rho = DensityMatrix::new(Mat2::new([
            [c(0.7, 0.0), c(0.1, -0.2)],
            [c(0.1, 0.2), c(0.3, 0.0)],
        ]))
        .unwrap();
        let text = serde_json::to_string(&rho).unwrap();
        assert!(text.contains("\"re\""));
        assert!(text.contains("\"im\""));
        let back: DensityMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rho);
    }

    #[test]
    fn json_rejects_invalid_state() {
        let text = r#"{"re":[[0.9,0.0],[0.0,0.9]],"im":[[0.0,0.0],[0.0,0.0]]}"#;
        assert!(serde_json::from_str::<DensityMatrix>(text).is_err());
    }
}
