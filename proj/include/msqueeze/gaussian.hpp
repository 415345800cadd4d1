// Copyright 2026 The msqueeze developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Continuous-variable backend operating purely on quadrature covariance
// matrices.
//
// An M-mode bosonic system is described in the quadrature ordering
// q = (x_1, p_1, ..., x_M, p_M) with x = (a + a^dag)/2 and
// p = -i (a - a^dag)/2, so the vacuum covariance is Gamma = I/4 and
// [q_j, q_k] = (i/2) Omega_jk with the block-diagonal symplectic form Omega.
// Displacement sensing along commuting generators H = R q then has the
// closed-form moment matrix Mtilde = (1/4) Omega^T Gamma^-1 Omega (equal to
// the quantum Fisher matrix of the displacement family for every Gaussian
// state) and the measurement-optimized squeezing matrix
// Xi^2 = 4 R Omega^T Gamma Omega R^T against the shot-noise reference 1_M.

#ifndef MSQUEEZE_GAUSSIAN_HPP
#define MSQUEEZE_GAUSSIAN_HPP

#include <random>
#include <vector>

#include "msqueeze/linalg.hpp"
#include "msqueeze/quantum.hpp"

namespace msq {

/// Raised when a requested phase-space encoding H = R q contains generators
/// that fail to commute (R Omega R^T != 0).
struct NoncommutingEncoding : Error {
    using Error::Error;
};

/// Gaussian state of M bosonic modes: 2M x 2M quadrature covariance matrix
/// (ordering x_1, p_1, ..., x_M, p_M) plus a real displacement vector.
/// Construction validates the uncertainty relation Gamma + (i/4) Omega >= 0
/// (Hermitian eigenvalues above -1e-9 relative to the covariance scale).
class GaussianState {
   public:
    /// An empty displacement vector defaults to zero.
    GaussianState(RealSymMatrix gamma, Vector displacement);
    explicit GaussianState(RealSymMatrix gamma);

    /// Vacuum of `modes` modes: Gamma = I/4, zero displacement.
    static GaussianState vacuum(Eigen::Index modes);

    Eigen::Index modes() const { return modes_; }
    const RealSymMatrix& gamma() const { return gamma_; }
    const Vector& displacement() const { return displacement_; }

    /// True when det(4 Gamma) = 1 within 1e-9.
    bool is_pure() const;

   private:
    RealSymMatrix gamma_;
    Vector displacement_;
    Eigen::Index modes_ = 0;
};

/// Multimode squeezed vacuum: per-mode squeezing parameters r_k followed by
/// a passive (orthogonal symplectic) transformation O. The covariance is
/// Gamma = O^T (1/4) diag(e^{2 r_1}, e^{-2 r_1}, ...) O, so for r_k > 0 the
/// p quadrature of mode k is squeezed and x is anti-squeezed.
struct SqueezedVacuumSpec {
    Vector r;
    Matrix o;
};

/// Builds the squeezed-vacuum state of a spec; O must be orthogonal
/// symplectic within 1e-10.
GaussianState squeezed_vacuum(const SqueezedVacuumSpec& spec);

/// Moment matrix of multimode displacement sensing,
/// Mtilde = (1/4) Omega^T Gamma^-1 Omega. For Gaussian states this equals
/// the quantum Fisher matrix of displacements, so the method of moments is
/// optimal. Raises SingularMatrixError when Gamma is numerically singular.
RealSymMatrix cv_moment_matrix(const GaussianState& state);

/// Squeezing matrix of the displacement encoding H = R q, optimized over
/// phase-space measurement observables: Xi^2 = 4 R Omega^T Gamma Omega R^T
/// with shot-noise reference F_SN = 1. The encoding rows must be orthonormal
/// (R R^T = 1 within 1e-10, DomainError) and mutually commuting
/// (R Omega R^T = 0 within 1e-10, NoncommutingEncoding).
SqueezingReport cv_squeezing_matrix(const GaussianState& state, const Matrix& encoding);

/// Encoding rows minimizing the squeezing-matrix spectrum, assembled by
/// greedy symplectic deflation of B = 4 Omega^T Gamma Omega: each accepted
/// unit row u removes span{u, Omega u} from the search space (which keeps
/// the remainder Omega-invariant), and the next row is the smallest
/// eigendirection of B restricted to the remainder. For a pure squeezed
/// vacuum the rows are eigenvectors of B and the resulting Xi^2 spectrum
/// equals the M smallest eigenvalues of B, i.e. {e^{-2 r_k}} in the
/// normal-form basis. Commutativity of the rows is re-verified; failure
/// raises NoncommutingEncoding.
Matrix optimal_cv_encoding(const GaussianState& state);

/// Outcome of the spectral squeezing test on a covariance matrix.
struct SimonCheck {
    /// True when lambda_min(Gamma) < 1/4 - 1e-12.
    bool squeezed = false;
    /// Smallest eigenvalue of Gamma.
    double lambda_min = 0.0;
    /// Optimal encoding rows; their squeezing matrix attains
    /// 4 lambda_min(Gamma) as its smallest eigenvalue, so it certifies
    /// sub-shot-noise sensitivity exactly when `squeezed` is true.
    Matrix witness;
    /// Smallest squeezing-matrix eigenvalue of the witness encoding.
    double witness_min_xi2 = 0.0;
};

/// Spectral squeezing test: lambda_min(Gamma) < 1/4 if and only if some
/// commuting displacement encoding beats shot noise, and the returned
/// witness encoding attains the bound.
SimonCheck simon_check(const GaussianState& state);

/// Orthogonal symplectic basis change W assembled from an orthonormal basis
/// {n_1, ..., n_M} of R^M: row 2k of W carries n_k on the x slots and row
/// 2k+1 carries n_k on the p slots. Squeezing the rotated modes
/// (Gamma = W^T D W / 4) and encoding along the canonical x generators
/// yields Xi^2 = sum_k e^{-2 r_k} n_k n_k^T.
Matrix basis_change_W(const std::vector<Vector>& n_basis);

/// Canonical commuting encoding H_k = x_k (rows e_{2k}^T). Displacements
/// generated by x_k shift p_k, the quadrature squeezed for r_k > 0.
Matrix canonical_mode_encoding(Eigen::Index modes);

/// Squeezing split of a mode-separable probe for estimating the average
/// along a direction n: minimizes sum_k n_k^2 e^{-2 r_k} under the photon
/// budget sum_k sinh^2(r_k) = N. Stationarity makes e^{4 r_k} - 1
/// proportional to n_k^2; the common factor t is found by bisection (the
/// photon count is monotone in t).
struct MsepAllocation {
    Vector r;
    double variance = 0.0;
    /// Common factor t with e^{4 r_k} = 1 + n_k^2 t.
    double multiplier = 0.0;
    /// Max deviation of (e^{4 r_k} - 1)/t from n_k^2.
    double stationarity_residual = 0.0;
    /// |sum_k sinh^2(r_k) - N|.
    double photon_residual = 0.0;
};

/// Requires a unit vector n with every component nonzero (drop modes with
/// zero weight and rerun with fewer modes; enforced via DomainError) and
/// N > 0.
MsepAllocation msep_allocation(const Vector& n, double total_photons, double tol = 1e-12);

/// Squeezing split of the mode-entangled probe: one squeezed mode rotated
/// onto the target direction, r' = arcsinh(sqrt(N)), variance e^{-2 r'}.
struct MentAllocation {
    double r_prime = 0.0;
    double variance = 0.0;
};

MentAllocation ment_allocation(double total_photons);

/// One point of the mode-entanglement gain scan at equal total photon
/// number M sinh^2 r.
struct ModeEntanglementGainRow {
    double r = 0.0;
    /// Variance ratio mode-entangled / mode-separable,
    /// e^{-2 r'} / e^{-2 r} with sinh^2 r' = M sinh^2 r.
    double ratio = 0.0;
    /// Weak-squeezing reference curve e^{-2 (sqrt(M) - 1) r}.
    double approx_small_r = 0.0;
    /// Strong-squeezing limit 1 / M.
    double approx_large_r = 0.0;
};

/// Scans the mode-entanglement gain for a uniform target direction over a
/// grid of per-mode squeezing parameters r >= 0. Requires modes >= 2.
std::vector<ModeEntanglementGainRow> fig3_scan(Eigen::Index modes, const Vector& r_grid);

/// Largest quadrature-variance amplification over vacuum at mean photon
/// number N: returns 2N + 1 + 2 sqrt(N (N + 1)), which equals e^{2r} for
/// r = arcsinh(sqrt(N)) (the identity is verified internally to 1e-12).
double max_variance_identity(double total_photons);

/// Haar-like random orthogonal symplectic matrix (a passive mode mixing),
/// built from a random unitary on the mode space.
Matrix random_orthogonal_symplectic(std::mt19937_64& rng, Eigen::Index modes);

}  // namespace msq

#endif
