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
// End-to-end estimation simulator: sample projective measurements of
// commuting observables, estimate theta by matching the calibrated
// expectation values to the sample means, and compare the empirical
// estimator covariance with the moment-matrix prediction (mu M)^-1.

#ifndef MSQUEEZE_MONTECARLO_HPP
#define MSQUEEZE_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <random>

#include "msqueeze/linalg.hpp"
#include "msqueeze/quantum.hpp"

namespace msq {

/// Raised when the observables requested for a joint measurement fail to
/// commute.
struct NonCommutingObservables : Error {
    using Error::Error;
};

/// Raised when the calibration Jacobian (or the predicted moment matrix)
/// cannot resolve every parameter.
struct UnidentifiableParameters : Error {
    using Error::Error;
};

/// Joint projective measurement of a commuting observable family: the
/// common eigenbasis together with the eigenvalue of each observable on
/// each basis vector.
class MeasurementModel {
   public:
    /// Columns are the joint eigenvectors (the measured projectors).
    const ComplexMatrix& basis() const { return basis_; }
    /// K x d table; entry (k, x) is the value of X_k on basis vector x.
    const Matrix& values() const { return values_; }
    const ObservableSet& source() const { return source_; }
    Eigen::Index outcomes() const { return values_.cols(); }
    Eigen::Index observables() const { return values_.rows(); }

   private:
    MeasurementModel(ComplexMatrix basis, Matrix values, ObservableSet source);
    friend MeasurementModel build_model(const ObservableSet& x);
    ComplexMatrix basis_;
    Matrix values_;
    ObservableSet source_;
};

/// Simultaneously diagonalizes a commuting family: eigendecomposition of a
/// generic fixed-seed real combination of the X_k, refined inside every
/// degenerate block. Pairwise commutator norms above 1e-9 (relative to the
/// operator scale) raise NonCommutingObservables; the reconstruction
/// X_k = sum_x values(k, x) |x><x| is verified to 1e-10.
MeasurementModel build_model(const ObservableSet& x);

/// Born-rule outcome distribution p(x) = <x|rho|x> over the model basis.
/// Raises DomainError when the probabilities fail to sum to 1 within 1e-10.
Vector outcome_probabilities(const MeasurementModel& model, const QuantumState& state);

/// Draws mu independent outcomes by inverse-CDF sampling and returns the
/// vector of sample means of the measured observables. Deterministic for a
/// fixed generator state.
Vector sample(const MeasurementModel& model, const QuantumState& state, std::int64_t mu,
              std::mt19937_64& rng);

/// Map theta -> vector of expectation values of the measured observables.
using CalibrationMap = std::function<Vector(const Vector&)>;

struct EstimateResult {
    Vector theta;
    /// Final 2-norm of calibration(theta) - xbar.
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Solves calibration(theta) = xbar in the least-squares sense (K >= M) by
/// damped Newton iteration with a central-difference Jacobian, starting
/// from theta_init. Stops at relative residual 1e-10 or 100 iterations.
/// A Jacobian of numerical rank below M raises UnidentifiableParameters.
EstimateResult estimate(const MeasurementModel& model, const CalibrationMap& calibration,
                        const Vector& xbar, const Vector& theta_init);

/// Repetition budget for one covariance experiment.
struct EstimationRun {
    std::int64_t mu = 10000;    // repetitions averaged into one sample mean
    std::int64_t trials = 1000; // independent estimates entering the covariance
    Vector theta_true;
    std::uint64_t seed = 0;
};

/// Empirical estimator covariance against the moment-matrix prediction.
struct CovarianceComparison {
    RealSymMatrix empirical;
    RealSymMatrix predicted;  // (mu M)^-1 at theta_true
    /// Element-wise (empirical - predicted) / se with the normal-sampling
    /// standard error se = sqrt((pred_kk pred_ll + pred_kl^2) / trials).
    Matrix z_scores;
    double max_abs_z = 0.0;
    Vector mean_estimate;
    /// Moment-matrix report of the scheme at theta_true.
    MomentReport moment;
    /// Trials whose Newton solve stalled before reaching the residual goal.
    std::int64_t failed_trials = 0;
};

/// Runs `trials` independent simulated estimations of theta_true: the probe
/// evolves under H, the commuting family X is measured mu times, and theta
/// is estimated from the sample means (initialized at theta_true, so the
/// comparison probes local consistency). Per-trial RNG streams are derived
/// from (seed, trial index), making the result reproducible bit-for-bit.
/// Requires mu >= 1000, trials >= 2, and an invertible moment matrix at
/// theta_true (otherwise UnidentifiableParameters).
CovarianceComparison covariance_experiment(const EstimationRun& run, const QuantumState& probe,
                                           const ObservableSet& h, const ObservableSet& x);

}  // namespace msq

#endif
