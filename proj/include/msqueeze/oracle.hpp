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
// Slow reference implementations used to validate the production code
// paths: collective-spin results recomputed on the full 2^N qubit space,
// Gaussian results recomputed in a truncated Fock basis, closed-form
// minimizations recomputed on dense grids, and Fisher matrices recomputed
// by finite differences. Everything here trades speed for independence.

#ifndef MSQUEEZE_ORACLE_HPP
#define MSQUEEZE_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "msqueeze/quantum.hpp"
#include "msqueeze/spin.hpp"

namespace msq {

/// Size limits and randomization defaults for oracle computations.
struct OracleBudget {
    Eigen::Index max_qubits = 8;
    Eigen::Index fock_cutoff = 40;
    int grid_points = 10000;
    int random_trials = 200;
    std::uint64_t seed = 20260814;
};

/// Spin network represented on the full 2^N qubit space (first qubit is
/// the most significant bit; bit value 0 means spin up).
class FullQubitSpin {
   public:
    FullQubitSpin(SpinNetwork net, const OracleBudget& budget = OracleBudget());

    const SpinNetwork& network() const { return net_; }
    Eigen::Index dim() const { return dim_; }

    /// Collective J_alpha of one mode as a dense full-space operator.
    ComplexMatrix jx(Eigen::Index mode) const;
    ComplexMatrix jy(Eigen::Index mode) const;
    ComplexMatrix jz(Eigen::Index mode) const;

    /// Half Pauli operator of a single qubit.
    ComplexMatrix qubit_spin(Eigen::Index qubit, char axis) const;

    /// All spins up.
    QuantumState css_up() const;

    /// Lifts a symmetric-sector network state into the qubit space.
    ComplexVector lift(const ComplexVector& network_state) const;

    /// Product state of independently oriented qubits, qubit q along the
    /// Bloch direction (theta_q, phi_q).
    QuantumState product_state(const Vector& theta, const Vector& phi) const;

   private:
    ComplexMatrix mode_sum(Eigen::Index mode, char axis) const;
    SpinNetwork net_;
    Eigen::Index dim_;
    std::vector<Eigen::Index> offsets_;  // first qubit of each mode
};

/// Planar direction minimizing the spin variance of one mode, found by a
/// dense angle grid plus golden-section refinement (reference for the
/// closed-form minimizer).
LocalXiMin grid_minimize_direction(const SpinNetwork& net, const ComplexVector& psi,
                                   Eigen::Index mode, int grid_points = 10000);

/// Classical Fisher information recomputed from central finite differences
/// of the outcome probabilities p(x|theta) around theta = 0.
Matrix finite_diff_fisher(const QuantumState& state, const ObservableSet& h,
                          const std::vector<ComplexMatrix>& povm, double step = 1e-5);

/// Truncated-Fock scrutiny of the Gaussian formulas for one squeezed mode.
struct FockCvCheck {
    RealSymMatrix gamma = RealSymMatrix::zero(2);           // quadrature covariance
    RealSymMatrix quantum_fisher = RealSymMatrix::zero(2);  // for (x, p) displacements
    double truncation_tail = 0.0;  // population of the two highest levels
};

FockCvCheck fock_cv_check(double r, Eigen::Index cutoff);

/// Annihilation operator on a truncated Fock space.
ComplexMatrix fock_annihilation(Eigen::Index cutoff);

/// Quadratures x = (a + a^dag)/2, p = -i (a - a^dag)/2.
ObservableSet fock_quadratures(Eigen::Index cutoff);

/// Squeezed vacuum exp(r (a^dag^2 - a^2) / 2) |0> (p-quadrature squeezed
/// for r > 0) in a truncated Fock space.
QuantumState fock_squeezed_vacuum(double r, Eigen::Index cutoff);

/// Checks F_Q[psi, Jperp] <= diag(N_1, N_1, ..., N_M, N_M) on random
/// particle-product states (the bound defining the shot-noise reference).
struct ProductStateFisherCheck {
    int violations = 0;
    double max_excess = 0.0;  // largest positive eigenvalue of F_Q - F_SN
    double min_slack = 0.0;   // smallest diagonal gap observed
};

ProductStateFisherCheck random_product_state_fisher(const SpinNetwork& net, int trials,
                                                    std::uint64_t seed = 20260814);

/// Randomized check of the matrix Cauchy-Schwarz inequality
/// A^T A >= A^T B (B^T B)^-1 B^T A including its saturation manifold A = B E.
struct CauchySchwarzCheck {
    int violations = 0;
    double max_psd_violation = 0.0;        // most negative eigenvalue seen
    double max_saturation_residual = 0.0;  // worst deviation on A = B E
};

CauchySchwarzCheck cauchy_schwarz_lemma_test(Eigen::Index rows, Eigen::Index cols_a,
                                             Eigen::Index cols_b, int trials,
                                             std::uint64_t seed = 20260814);

}  // namespace msq

#endif
