// Copyright 2026 The msqueeze developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "msqueeze/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

namespace msq {

namespace {

constexpr double kCommutatorTol = 1e-9;
constexpr double kReconstructTol = 1e-10;
constexpr double kBlockGapTol = 1e-8;

/// Coefficient stream for the generic observable combination. The seed is a
/// fixed internal constant so that model construction is a pure function of
/// the observables.
constexpr std::uint64_t kModelSeed = 0x6d73712d6d632d31ULL;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the per-trial random stream. Trials are decoupled by hashing
/// (seed, trial index), so results do not depend on scheduling order.
std::uint64_t trial_seed(std::uint64_t seed, std::int64_t trial) {
    return splitmix64(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(trial + 1));
}

/// Uniform double in [0, 1) with 53 random bits, identical on every
/// platform for a given engine state.
double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double max_abs(const ComplexMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace

MeasurementModel::MeasurementModel(ComplexMatrix basis, Matrix values, ObservableSet source)
    : basis_(std::move(basis)), values_(std::move(values)), source_(std::move(source)) {}

MeasurementModel build_model(const ObservableSet& x) {
    const Eigen::Index count = x.size();
    const Eigen::Index dim = x.dim();
    if (count < 1 || dim < 1) {
        throw DimensionError("build_model: need at least one observable");
    }

    // Commuting family gate: every pairwise commutator must vanish relative
    // to the product of the operator scales.
    std::vector<double> scale(static_cast<size_t>(count));
    for (Eigen::Index k = 0; k < count; ++k) {
        scale[static_cast<size_t>(k)] = max_abs(x.op(k));
    }
    double worst_norm = 0.0;
    double worst_ratio = 0.0;
    for (Eigen::Index i = 0; i < count; ++i) {
        for (Eigen::Index j = i + 1; j < count; ++j) {
            const ComplexMatrix comm = x.op(i) * x.op(j) - x.op(j) * x.op(i);
            const double norm = max_abs(comm);
            const double gate =
                std::max(1.0, scale[static_cast<size_t>(i)] * scale[static_cast<size_t>(j)]);
            worst_norm = std::max(worst_norm, norm);
            worst_ratio = std::max(worst_ratio, norm / gate);
        }
    }
    if (worst_ratio > kCommutatorTol) {
        std::ostringstream msg;
        msg << "build_model: observables do not commute (max commutator entry " << worst_norm
            << " exceeds the tolerance " << kCommutatorTol << " at the operator scale)";
        throw NonCommutingObservables(msg.str());
    }

    // Common eigenbasis: diagonalize a generic real combination, then refine
    // every degenerate block against each observable in turn. Rotations stay
    // inside the current blocks, so observables handled earlier (which are
    // scalar on those blocks) remain diagonal.
    std::mt19937_64 rng(kModelSeed);
    std::uniform_real_distribution<double> coefficient(0.5, 1.5);
    ComplexMatrix generic = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < count; ++k) {
        const double s = scale[static_cast<size_t>(k)];
        generic += (coefficient(rng) / std::max(1e-300, s)) * x.op(k);
    }
    HermEig seed_eig = herm_eig(HermitianOp(generic));
    ComplexMatrix basis = seed_eig.eigenvectors;

    using Block = std::pair<Eigen::Index, Eigen::Index>;  // (start, length)
    std::vector<Block> blocks;
    {
        const double gap = kBlockGapTol * std::max(1.0, seed_eig.eigenvalues.cwiseAbs().maxCoeff());
        Eigen::Index start = 0;
        for (Eigen::Index i = 1; i <= dim; ++i) {
            if (i == dim || seed_eig.eigenvalues(i) - seed_eig.eigenvalues(i - 1) > gap) {
                blocks.emplace_back(start, i - start);
                start = i;
            }
        }
    }

    for (Eigen::Index k = 0; k < count; ++k) {
        std::vector<Block> refined;
        for (const auto& [start, len] : blocks) {
            if (len == 1) {
                refined.emplace_back(start, len);
                continue;
            }
            const ComplexMatrix sub = basis.middleCols(start, len);
            const HermEig sub_eig = herm_eig(HermitianOp(ComplexMatrix(sub.adjoint() * x.op(k) * sub)));
            basis.middleCols(start, len) = sub * sub_eig.eigenvectors;
            const double gap =
                kBlockGapTol * std::max(1.0, sub_eig.eigenvalues.cwiseAbs().maxCoeff());
            Eigen::Index b0 = 0;
            for (Eigen::Index i = 1; i <= len; ++i) {
                if (i == len || sub_eig.eigenvalues(i) - sub_eig.eigenvalues(i - 1) > gap) {
                    refined.emplace_back(start + b0, i - b0);
                    b0 = i;
                }
            }
        }
        blocks = std::move(refined);
    }

    // Outcome values and the reconstruction check X_k = V diag(values_k) V^+.
    Matrix values(count, dim);
    for (Eigen::Index k = 0; k < count; ++k) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            values(k, c) = std::real(Complex(basis.col(c).dot(x.op(k) * basis.col(c))));
        }
        const Vector row = values.row(k).transpose();
        const ComplexMatrix rebuilt =
            basis * row.cast<Complex>().asDiagonal() * basis.adjoint();
        const double err = max_abs(rebuilt - x.op(k));
        if (err > kReconstructTol * std::max(1.0, scale[static_cast<size_t>(k)])) {
            std::ostringstream msg;
            msg << "build_model: common eigenbasis does not reproduce observable " << k
                << " (max entry error " << err << ")";
            throw DecompositionError(msg.str());
        }
    }

    return MeasurementModel(std::move(basis), std::move(values), x);
}

Vector outcome_probabilities(const MeasurementModel& model, const QuantumState& state) {
    if (state.dim() != model.outcomes()) {
        throw DimensionError("outcome_probabilities: state dimension does not match the model");
    }
    const Eigen::Index n = model.outcomes();
    Vector p(n);
    if (state.is_pure()) {
        const ComplexVector amps = model.basis().adjoint() * state.vector();
        p = amps.cwiseAbs2();
    } else {
        const ComplexMatrix rho = state.density_matrix();
        for (Eigen::Index c = 0; c < n; ++c) {
            p(c) = std::real(Complex(model.basis().col(c).dot(rho * model.basis().col(c))));
        }
    }
    if (p.minCoeff() < -1e-10) {
        throw DomainError("outcome_probabilities: negative probability from an invalid state");
    }
    p = p.cwiseMax(0.0);
    const double total = p.sum();
    if (std::abs(total - 1.0) > 1e-10) {
        throw DomainError("outcome_probabilities: probabilities sum to " + std::to_string(total) +
                          " instead of 1");
    }
    return p / total;
}

Vector sample(const MeasurementModel& model, const QuantumState& state, std::int64_t mu,
              std::mt19937_64& rng) {
    if (mu < 1) {
        throw DomainError("sample: need at least one repetition");
    }
    const Vector p = outcome_probabilities(model, state);
    const Eigen::Index n = p.size();
    Vector cdf(n);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        acc += p(i);
        cdf(i) = acc;
    }
    cdf(n - 1) = 1.0;  // guard against rounding: u < 1 always lands inside

    std::vector<std::int64_t> counts(static_cast<size_t>(n), 0);
    for (std::int64_t s = 0; s < mu; ++s) {
        const double u = uniform_unit(rng);
        const double* hit = std::upper_bound(cdf.data(), cdf.data() + n, u);
        Eigen::Index idx = hit - cdf.data();
        if (idx >= n) {
            idx = n - 1;
        }
        ++counts[static_cast<size_t>(idx)];
    }

    Vector frequency(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        frequency(i) = static_cast<double>(counts[static_cast<size_t>(i)]) /
                       static_cast<double>(mu);
    }
    return model.values() * frequency;
}

EstimateResult estimate(const MeasurementModel& model, const CalibrationMap& calibration,
                        const Vector& xbar, const Vector& theta_init) {
    const Eigen::Index k_count = model.observables();
    const Eigen::Index m = theta_init.size();
    if (xbar.size() != k_count) {
        throw DimensionError("estimate: sample mean size does not match the observable count");
    }
    if (m < 1) {
        throw DimensionError("estimate: need at least one parameter");
    }
    if (k_count < m) {
        throw UnidentifiableParameters(
            "estimate: fewer observables than parameters; the system is underdetermined");
    }
    if (!xbar.allFinite() || !theta_init.allFinite()) {
        throw DomainError("estimate: inputs must be finite");
    }

    const auto misfit_of = [&](const Vector& theta) {
        Vector predicted = calibration(theta);
        if (predicted.size() != k_count) {
            throw DimensionError("estimate: calibration output size does not match the model");
        }
        return Vector(predicted - xbar);
    };
    const auto jacobian_of = [&](const Vector& theta) {
        Matrix jac(k_count, m);
        for (Eigen::Index l = 0; l < m; ++l) {
            const double h = 1e-6 * std::max(1.0, std::abs(theta(l)));
            Vector up = theta;
            Vector down = theta;
            up(l) += h;
            down(l) -= h;
            jac.col(l) = (calibration(up) - calibration(down)) / (2.0 * h);
        }
        return jac;
    };

    const double goal = 1e-10 * std::max(1.0, xbar.cwiseAbs().maxCoeff());
    EstimateResult result{theta_init, 0.0, 0, false};
    Vector misfit = misfit_of(result.theta);
    result.residual = misfit.norm();

    while (result.iterations < 100) {
        if (result.residual < goal) {
            result.converged = true;
            break;
        }
        const Matrix jac = jacobian_of(result.theta);
        if (numerical_rank(jac) < m) {
            throw UnidentifiableParameters(
                "estimate: calibration Jacobian has rank below the parameter count");
        }
        const Vector step = pinv(jac) * (-misfit);
        if (step.norm() <= 1e-12 * std::max(1.0, result.theta.norm())) {
            // Gauss-Newton stationary point: the least-squares solution of an
            // overdetermined system, where the residual does not vanish.
            result.converged = true;
            break;
        }
        double alpha = 1.0;
        bool improved = false;
        Vector candidate = result.theta;
        Vector candidate_misfit = misfit;
        for (int back = 0; back <= 20; ++back) {
            candidate = result.theta + alpha * step;
            candidate_misfit = misfit_of(candidate);
            if (candidate_misfit.norm() < result.residual) {
                improved = true;
                break;
            }
            alpha *= 0.5;
        }
        ++result.iterations;
        if (!improved) {
            break;  // damping exhausted without progress
        }
        result.theta = candidate;
        misfit = candidate_misfit;
        result.residual = misfit.norm();
    }
    if (!result.converged && result.residual < goal) {
        result.converged = true;
    }
    return result;
}

CovarianceComparison covariance_experiment(const EstimationRun& run, const QuantumState& probe,
                                           const ObservableSet& h, const ObservableSet& x) {
    const Eigen::Index m = run.theta_true.size();
    if (m < 1) {
        throw DimensionError("covariance_experiment: theta_true must be non-empty");
    }
    if (h.size() != m) {
        throw DimensionError("covariance_experiment: need one Hamiltonian per parameter");
    }
    if (h.dim() != probe.dim() || x.dim() != probe.dim()) {
        throw DimensionError("covariance_experiment: operator dimensions do not match the probe");
    }
    if (run.mu < 1000) {
        throw DomainError("covariance_experiment: need mu >= 1000 repetitions per trial");
    }
    if (run.trials < 2) {
        throw DomainError("covariance_experiment: need at least two trials");
    }
    if (!run.theta_true.allFinite()) {
        throw DomainError("covariance_experiment: theta_true must be finite");
    }

    const MeasurementModel model = build_model(x);
    const QuantumState at_truth = evolve(probe, h, run.theta_true);
    MomentReport moment = moment_matrix(at_truth, h, x, run.theta_true);
    if (numerical_rank(moment.moment.mat()) < m) {
        throw UnidentifiableParameters(
            "covariance_experiment: the moment matrix is singular at theta_true, so some "
            "parameter combination leaves every sample mean unchanged");
    }
    const Matrix predicted = pinv(moment.moment.mat()) / static_cast<double>(run.mu);

    const CalibrationMap calibration = [&probe, &h, &x](const Vector& theta) {
        const QuantumState evolved = evolve(probe, h, theta);
        Vector mean(x.size());
        for (Eigen::Index k = 0; k < x.size(); ++k) {
            mean(k) = evolved.expectation_real(x.op(k));
        }
        return mean;
    };

    Matrix estimates(run.trials, m);
    std::int64_t failed = 0;
    for (std::int64_t t = 0; t < run.trials; ++t) {
        std::mt19937_64 rng(trial_seed(run.seed, t));
        const Vector xbar = sample(model, at_truth, run.mu, rng);
        const EstimateResult fit = estimate(model, calibration, xbar, run.theta_true);
        if (!fit.converged) {
            ++failed;
        }
        estimates.row(t) = fit.theta.transpose();
    }

    const Vector mean_estimate = estimates.colwise().mean().transpose();
    const Matrix centered = estimates.rowwise() - mean_estimate.transpose();
    const Matrix empirical = (centered.transpose() * centered) /
                             static_cast<double>(run.trials - 1);

    Matrix z(m, m);
    double max_z = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index l = 0; l < m; ++l) {
            const double se = std::sqrt((predicted(k, k) * predicted(l, l) +
                                         predicted(k, l) * predicted(k, l)) /
                                        static_cast<double>(run.trials));
            z(k, l) = (empirical(k, l) - predicted(k, l)) / se;
            max_z = std::max(max_z, std::abs(z(k, l)));
        }
    }

    return CovarianceComparison{RealSymMatrix(empirical), RealSymMatrix(predicted),
                                std::move(z),             max_z,
                                mean_estimate,            std::move(moment),
                                failed};
}

}  // namespace msq
