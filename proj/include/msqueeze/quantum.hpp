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
// Method-of-moments toolbox for finite-dimensional quantum systems.
//
// A sensing run encodes parameters theta through unitaries generated by a
// Hamiltonian family H = (H_1, ..., H_M) and estimates them from the sample
// means of measured observables X = (X_1, ..., X_K). In the central limit
// the estimator covariance is (mu * M)^-1 where mu is the number of
// repetitions and
//
//     M = C^T Gamma^-1 C,
//     Gamma_kl = <X_k X_l + X_l X_k>/2 - <X_k><X_l>,
//     C_kl     = -i <[X_k, H_l]>,
//
// is the moment matrix. It obeys the sensitivity chain
// M <= F <= F_Q (Loewner order) with F the classical Fisher information of
// the measurement and F_Q the quantum Fisher information of the generators.

#ifndef MSQUEEZE_QUANTUM_HPP
#define MSQUEEZE_QUANTUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "msqueeze/linalg.hpp"

namespace msq {

/// Pure state vector or density operator on a finite-dimensional Hilbert
/// space. Unit norm (or unit trace plus positivity) is validated on
/// construction within 1e-10.
class QuantumState {
   public:
    static QuantumState pure(ComplexVector psi);
    static QuantumState density(ComplexMatrix rho);

    bool is_pure() const { return psi_.size() > 0; }
    Eigen::Index dim() const { return is_pure() ? psi_.size() : rho_.rows(); }

    /// <A> for an arbitrary operator A (complex in general).
    Complex expectation(const ComplexMatrix& op) const;

    /// <A> for a Hermitian operator; raises DomainError when the imaginary
    /// residue exceeds 1e-10 relative to the operator scale.
    double expectation_real(const ComplexMatrix& op) const;

    /// A |psi> for pure states (DomainError on density operators).
    ComplexVector apply(const ComplexMatrix& op) const;

    /// The state as a density operator (materializes |psi><psi|).
    ComplexMatrix density_matrix() const;

    const ComplexVector& vector() const;

   private:
    QuantumState() = default;
    ComplexVector psi_;
    ComplexMatrix rho_;
};

/// Ordered family of Hermitian observables acting on one Hilbert space.
class ObservableSet {
   public:
    explicit ObservableSet(std::vector<ComplexMatrix> ops, std::string label = "");

    Eigen::Index size() const { return static_cast<Eigen::Index>(ops_.size()); }
    Eigen::Index dim() const { return ops_.empty() ? 0 : ops_[0].rows(); }
    const ComplexMatrix& op(Eigen::Index k) const { return ops_[static_cast<size_t>(k)]; }
    const std::string& label() const { return label_; }

    /// New family B_i = sum_k W_ik A_k for a real coefficient matrix W.
    ObservableSet transformed(const Matrix& w, std::string label = "") const;

   private:
    std::vector<ComplexMatrix> ops_;
    std::string label_;
};

/// Row-orthonormal coefficient pair H = R A (M x L) and X = S A (K x L),
/// validated within 1e-10.
struct TransformPair {
    Matrix r;
    Matrix s;
    TransformPair(Matrix r_in, Matrix s_in);
};

/// Moment matrix together with its covariance/commutator building blocks.
struct MomentReport {
    RealSymMatrix moment;      // M x M
    RealSymMatrix covariance;  // K x K
    Matrix commutator;         // K x M
    Vector theta;              // parameter point the state was evolved to
    Eigen::Index gamma_rank = 0;
    /// Set when Gamma or C is rank deficient below the parameter count, in
    /// which case some parameter combinations are invisible to X.
    bool redundant_observables = false;
};

/// Squeezing matrix Xi^2 = F_SN^{1/2} M^+ F_SN^{1/2} and its spectrum.
struct SqueezingReport {
    RealSymMatrix xi2;
    RealSymMatrix shot_noise;
    /// Ascending spectrum of xi2; directions along which the moment matrix
    /// has no support are reported as +infinity.
    Vector eigenvalues;
    /// Number of eigenvalues below 1 - 1e-9.
    Eigen::Index shot_noise_rank = 0;
    /// True when every eigenvalue beats shot noise.
    bool full_multiparameter_squeezing = false;
    bool infinite_uncertainty = false;
    std::vector<Eigen::Index> infinite_directions;
};

/// Observable family reaching (or approaching) the accessible bound.
struct OptimalObservables {
    ObservableSet observables;
    Matrix coeffs;  // M x L, rows give X_k = sum_l coeffs_kl A_l
    /// Max-abs entry of [X_i, X_j] for every pair.
    Matrix commutator_norms;
    /// True when the realized moment matrix reaches R Mtilde R^T within
    /// 1e-8 relative; false signals that the pseudoinversion of Gamma
    /// annihilated directions the bound requires (saturation not achievable).
    bool saturated = false;
    double saturation_residual = 0.0;
};

/// Encoding directions returned by optimal_hamiltonians.
struct OptimalHamiltonians {
    Matrix r;  // M x L, rows are eigenvectors for the M largest eigenvalues
    /// True when the spectrum is degenerate at the cut; the returned rows
    /// are then one deterministic choice among equivalent optima.
    bool degenerate_cut = false;
    double tied_eigenvalue = 0.0;
};

/// Accessible moment matrix with its building blocks.
struct AccessibleMoment {
    RealSymMatrix moment;      // L x L
    RealSymMatrix covariance;  // L x L
    Matrix commutator;         // L x L, antisymmetric
};

/// Evolved state exp(-i sum_k H_k theta_k) applied to `state`, computed via
/// Hermitian eigendecomposition of the summed generator.
QuantumState evolve(const QuantumState& state, const ObservableSet& h, const Vector& theta);

/// Symmetrized covariance matrix Gamma_kl = <A_k A_l + A_l A_k>/2 - <A_k><A_l>.
RealSymMatrix covariance_matrix(const QuantumState& state, const ObservableSet& a);

/// Commutator matrix C_kl = -i <[X_k, H_l]>, shape K x M. For unitary
/// encodings this equals the derivative d<X_k>/d(theta_l).
Matrix commutator_matrix(const QuantumState& state, const ObservableSet& x,
                         const ObservableSet& h);

/// Moment matrix M = C^T Gamma^+ C of the estimation scheme (H, X) on the
/// (already evolved) state. `theta` is carried into the report unmodified.
MomentReport moment_matrix(const QuantumState& state, const ObservableSet& h,
                           const ObservableSet& x, const Vector& theta = Vector());

/// Matrix core of the moment matrix: C^T Gamma^+ C.
RealSymMatrix moment_from_blocks(const RealSymMatrix& gamma, const Matrix& c,
                                 double rel_cutoff = 1e-12);

/// Accessible moment matrix Mtilde = Ctilde^T Gamma^+ Ctilde over the
/// accessible family A, with Ctilde_kl = -i <[A_k, A_l]>.
AccessibleMoment accessible_moment_matrix(const QuantumState& state, const ObservableSet& a);

/// Upper bound R Mtilde R^T on the moment matrix of any scheme with
/// H = R A and X built from A. Requires R R^T = 1 within 1e-10.
RealSymMatrix optimal_moment_matrix(const QuantumState& state, const Matrix& r,
                                    const ObservableSet& a);

/// Moment-bound saturating observables X = T R Ctilde^T Gamma^+ A for an
/// arbitrary invertible T (M x M). Defaults to T = 1.
OptimalObservables optimal_observables(const QuantumState& state, const Matrix& r,
                                       const ObservableSet& a, const Matrix& t = Matrix());

/// Coefficient core of optimal_observables: W = T R Ctilde^T Gamma^+.
Matrix optimal_observable_coeffs(const RealSymMatrix& gamma, const Matrix& ctilde,
                                 const Matrix& r, const Matrix& t,
                                 double rel_cutoff = 1e-12);

/// Rows spanning the most sensitive encoding directions: eigenvectors of
/// Mtilde for its M largest eigenvalues.
OptimalHamiltonians optimal_hamiltonians(const QuantumState& state, const ObservableSet& a,
                                         Eigen::Index m);

/// Quantum Fisher information matrix. Pure states use F_Q = 4 Gamma[psi, H];
/// mixed states use symmetric logarithmic derivatives on the support
/// (probability floor 1e-12).
RealSymMatrix quantum_fisher_matrix(const QuantumState& state, const ObservableSet& h);

/// Symmetric logarithmic derivatives L_k solving
/// -i [H_k, rho] = (L_k rho + rho L_k) / 2 on the support of rho.
std::vector<ComplexMatrix> sld_operators(const QuantumState& state, const ObservableSet& h);

/// Classical Fisher information of the POVM {Pi_x} at the encoded state:
/// F_kl = sum_x dp_k dp_l / p_x with dp_k = -i <[Pi_x, H_k]> and outcomes
/// below probability 1e-12 excluded. The POVM must resolve the identity
/// within 1e-10.
RealSymMatrix classical_fisher_matrix(const QuantumState& state,
                                      const std::vector<ComplexMatrix>& povm,
                                      const ObservableSet& h);

/// Squeezing matrix Xi^2 = F_SN^{1/2} M^+ F_SN^{1/2} relative to the
/// shot-noise reference F_SN, with spectrum diagnostics.
SqueezingReport squeezing_matrix(const RealSymMatrix& moment, const RealSymMatrix& shot_noise);

}  // namespace msq

#endif
