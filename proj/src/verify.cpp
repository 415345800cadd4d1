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

#include "msqueeze/verify.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <random>

#include "msqueeze/gaussian.hpp"
#include "msqueeze/montecarlo.hpp"
#include "msqueeze/quantum.hpp"
#include "msqueeze/spin.hpp"

namespace msq {

namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> dist;
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = dist(rng);
        }
    }
    return m;
}

ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
    const Matrix re = random_matrix(rng, n, n);
    const Matrix im = random_matrix(rng, n, n);
    ComplexMatrix a = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
    return ComplexMatrix(0.5 * (a + a.adjoint().eval()));
}

ComplexVector random_state_vector(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> dist;
    ComplexVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = Complex(dist(rng), dist(rng));
    }
    return v / v.norm();
}

Vector random_vector_in(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = dist(rng);
    }
    return v;
}

/// Positive magnitude of the worst Loewner violation of a >= b, normalized
/// like loewner_geq.
double loewner_violation(const RealSymMatrix& a, const RealSymMatrix& b) {
    const RealSymMatrix diff(a.mat() - b.mat());
    const double scale = std::max(1.0, diff.mat().cwiseAbs().maxCoeff());
    return std::max(0.0, -sym_eig(diff).eigenvalues.minCoeff() / scale);
}

/// Rank-one projectors onto the eigenbasis of a Hermitian operator.
std::vector<ComplexMatrix> eigenbasis_povm(const ComplexMatrix& op) {
    const HermEig eig = herm_eig(HermitianOp(op));
    std::vector<ComplexMatrix> povm;
    for (Eigen::Index c = 0; c < op.cols(); ++c) {
        povm.push_back(eig.eigenvectors.col(c) * eig.eigenvectors.col(c).adjoint());
    }
    return povm;
}

using CheckBody = std::function<double()>;

void run_check(std::vector<CheckResult>& out, const std::string& name, double tolerance,
               const CheckBody& body) {
    CheckResult result{name, tolerance, 0.0, false, ""};
    try {
        result.residual = body();
        result.pass = result.residual <= tolerance;
    } catch (const std::exception& err) {
        result.residual = std::numeric_limits<double>::infinity();
        result.note = err.what();
    }
    out.push_back(std::move(result));
}

}  // namespace

VerifyReport run_verification(const OracleBudget& budget, const VerifyHooks& hooks) {
    const auto start = std::chrono::steady_clock::now();
    VerifyReport report;
    auto& checks = report.checks;
    const int trials = std::max(8, budget.random_trials / 8);

    run_check(checks, "symplectic-form-antisymmetry", 0.0, [&] {
        double worst = 0.0;
        for (Eigen::Index m : {1, 2, 4}) {
            const Matrix omega = hooks.omega(m);
            worst = std::max(worst, (omega + omega.transpose()).cwiseAbs().maxCoeff());
        }
        return worst;
    });

    run_check(checks, "symplectic-form-square", 0.0, [&] {
        double worst = 0.0;
        for (Eigen::Index m : {1, 2, 4}) {
            const Matrix omega = hooks.omega(m);
            const Matrix identity = Matrix::Identity(2 * m, 2 * m);
            worst = std::max(worst, (omega * omega + identity).cwiseAbs().maxCoeff());
        }
        return worst;
    });

    run_check(checks, "symplectic-rotation-invariance", 1e-12, [&] {
        std::mt19937_64 rng(budget.seed);
        const Matrix omega = hooks.omega(3);
        double worst = 0.0;
        for (int t = 0; t < 5; ++t) {
            const Matrix o = random_orthogonal_symplectic(rng, 3);
            worst = std::max(worst,
                             (o.transpose() * omega * o - omega).cwiseAbs().maxCoeff());
        }
        return worst;
    });

    run_check(checks, "squeezed-vacuum-purity", 1e-9, [&] {
        std::mt19937_64 rng(budget.seed + 1);
        const Matrix omega = hooks.omega(3);
        double worst = 0.0;
        for (int t = 0; t < 5; ++t) {
            const SqueezedVacuumSpec spec{random_vector_in(rng, 3, -1.0, 1.0),
                                          random_orthogonal_symplectic(rng, 3)};
            const Matrix four_gamma = 4.0 * squeezed_vacuum(spec).gamma().mat();
            worst = std::max(worst,
                             (four_gamma * omega * four_gamma - omega).cwiseAbs().maxCoeff());
        }
        return worst;
    });

    run_check(checks, "quadrature-moment-inverse-identity", 1e-8, [&] {
        // the moment matrix of the quadrature family inverts the
        // conjugated covariance: Mtilde (4 Omega^T Gamma Omega) = 1
        std::mt19937_64 rng(budget.seed + 2);
        const Matrix omega = hooks.omega(3);
        const Matrix identity = Matrix::Identity(6, 6);
        double worst = 0.0;
        for (int t = 0; t < 5; ++t) {
            const SqueezedVacuumSpec spec{random_vector_in(rng, 3, -1.0, 1.0),
                                          random_orthogonal_symplectic(rng, 3)};
            const GaussianState state = squeezed_vacuum(spec);
            const Matrix direct = cv_moment_matrix(state).mat();
            const Matrix conjugated =
                4.0 * omega.transpose() * state.gamma().mat() * omega;
            worst = std::max(worst, (direct * conjugated - identity).cwiseAbs().maxCoeff());
        }
        return worst;
    });

    run_check(checks, "squeezed-vacuum-optimal-spectrum", 1e-10, [&] {
        std::mt19937_64 rng(budget.seed + 3);
        double worst = 0.0;
        for (int t = 0; t < 10; ++t) {
            Vector r = random_vector_in(rng, 3, -1.0, 1.0);
            const SqueezedVacuumSpec spec{r, random_orthogonal_symplectic(rng, 3)};
            const GaussianState state = squeezed_vacuum(spec);
            const SqueezingReport rep =
                cv_squeezing_matrix(state, optimal_cv_encoding(state));
            Vector expected = (-2.0 * r.cwiseAbs()).array().exp();
            std::sort(expected.data(), expected.data() + expected.size());
            worst = std::max(worst, (rep.eigenvalues - expected).cwiseAbs().maxCoeff());
        }
        return worst;
    });

    run_check(checks, "squeezing-witness-equivalence", 0.0, [&] {
        std::mt19937_64 rng(budget.seed + 4);
        std::uniform_real_distribution<double> mix(0.0, 0.4);
        double disagreements = 0.0;
        for (int t = 0; t < trials; ++t) {
            const SqueezedVacuumSpec spec{random_vector_in(rng, 2, -0.8, 0.8),
                                          random_orthogonal_symplectic(rng, 2)};
            Matrix gamma = squeezed_vacuum(spec).gamma().mat();
            if (t % 2 == 1) {
                gamma += mix(rng) * Matrix::Identity(4, 4);
            }
            const GaussianState state{RealSymMatrix(gamma), Vector()};
            const SimonCheck simon = simon_check(state);
            const bool witness_beats = simon.witness_min_xi2 < 1.0 - 1e-10;
            if (simon.squeezed != witness_beats) {
                disagreements += 1.0;
            }
        }
        return disagreements;
    });

    run_check(checks, "fisher-information-chain", 1e-8, [&] {
        std::mt19937_64 rng(budget.seed + 5);
        std::normal_distribution<double> normal;
        double worst = 0.0;
        for (int t = 0; t < 20; ++t) {
            const Eigen::Index d = 4;
            const QuantumState psi = QuantumState::pure(random_state_vector(rng, d));
            const ObservableSet h({random_hermitian(rng, d), random_hermitian(rng, d)});
            const auto povm = eigenbasis_povm(random_hermitian(rng, d));
            std::vector<ComplexMatrix> x_ops;
            for (int k = 0; k < 2; ++k) {
                ComplexMatrix x = ComplexMatrix::Zero(d, d);
                for (const auto& pi : povm) {
                    x += normal(rng) * pi;
                }
                x_ops.push_back(x);
            }
            const MomentReport m = moment_matrix(psi, h, ObservableSet(x_ops));
            const RealSymMatrix f = classical_fisher_matrix(psi, povm, h);
            const RealSymMatrix fq = quantum_fisher_matrix(psi, h);
            worst = std::max(worst, loewner_violation(f, m.moment));
            worst = std::max(worst, loewner_violation(fq, f));
        }
        return worst;
    });

    run_check(checks, "matrix-cauchy-schwarz", 1e-9, [&] {
        const CauchySchwarzCheck cs =
            cauchy_schwarz_lemma_test(7, 3, 4, budget.random_trials, budget.seed);
        return std::max(cs.max_psd_violation, cs.max_saturation_residual);
    });

    run_check(checks, "spin-squeezing-oracle-agreement", 1e-9, [&] {
        const SpinNetwork net({2, 2});
        const QuantumState probe = oat_local(net, 0.3);
        const ComplexVector psi = probe.vector();
        Vector angles(2);
        for (Eigen::Index mode = 0; mode < 2; ++mode) {
            angles(mode) = local_xi_min(net, psi, mode).angle;
        }
        const SqueezingReport fast = spin_squeezing_matrix(net, psi, angles);

        const FullQubitSpin full(net, budget);
        const QuantumState lifted = QuantumState::pure(full.lift(psi));
        Matrix slow(2, 2);
        Vector mz(2);
        std::vector<ComplexMatrix> planar;
        for (Eigen::Index mode = 0; mode < 2; ++mode) {
            planar.push_back(std::cos(angles(mode)) * full.jx(mode) +
                             std::sin(angles(mode)) * full.jy(mode));
            mz(mode) = lifted.expectation_real(full.jz(mode));
        }
        for (Eigen::Index k = 0; k < 2; ++k) {
            for (Eigen::Index l = 0; l < 2; ++l) {
                const double cov =
                    0.5 * lifted.expectation_real(planar[static_cast<size_t>(k)] *
                                                      planar[static_cast<size_t>(l)] +
                                                  planar[static_cast<size_t>(l)] *
                                                      planar[static_cast<size_t>(k)]) -
                    lifted.expectation_real(planar[static_cast<size_t>(k)]) *
                        lifted.expectation_real(planar[static_cast<size_t>(l)]);
                slow(k, l) = std::sqrt(static_cast<double>(net.particles(k)) *
                                       static_cast<double>(net.particles(l))) *
                             cov / (mz(k) * mz(l));
            }
        }
        return (fast.xi2.mat() - slow).cwiseAbs().maxCoeff();
    });

    run_check(checks, "planar-minimizer-grid-agreement", 1e-6, [&] {
        std::mt19937_64 rng(budget.seed + 6);
        const SpinNetwork net({3, 4});
        double worst = 0.0;
        for (int t = 0; t < 3; ++t) {
            const ComplexVector psi = random_state_vector(rng, net.total_dim());
            for (Eigen::Index mode = 0; mode < 2; ++mode) {
                const LocalXiMin closed = local_xi_min(net, psi, mode);
                const LocalXiMin grid =
                    grid_minimize_direction(net, psi, mode, budget.grid_points);
                worst = std::max(worst, std::abs(closed.xi2 - grid.xi2));
            }
        }
        return worst;
    });

    run_check(checks, "product-state-shot-noise-bound", 1e-8, [&] {
        const ProductStateFisherCheck psc =
            random_product_state_fisher(SpinNetwork({2, 2}), trials, budget.seed);
        return std::max(psc.max_excess, static_cast<double>(psc.violations));
    });

    run_check(checks, "twin-fock-saturation", 1e-4, [&] {
        const TwinFockResult tf = twin_fock_extrapolated(4);
        return std::max(tf.rel_error_moment, tf.rel_error_fisher);
    });

    run_check(checks, "mode-gain-baseline", 0.0, [&] {
        const auto rows = fig3_scan(4, Vector::Zero(1));
        return std::abs(rows.front().ratio - 1.0);
    });

    run_check(checks, "mode-gain-asymptote", 0.01, [&] {
        double worst = 0.0;
        for (Eigen::Index m : {2, 10}) {
            const auto rows = fig3_scan(m, Vector::Constant(1, 5.0));
            worst = std::max(worst,
                             std::abs(static_cast<double>(m) * rows.front().ratio - 1.0));
        }
        return worst;
    });

    run_check(checks, "photon-allocation-uniform", 1e-10, [&] {
        const Eigen::Index m = 3;
        const double n_total = 2.0;
        const Vector weights = Vector::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
        const MsepAllocation alloc = msep_allocation(weights, n_total);
        const double expected = std::asinh(std::sqrt(n_total / static_cast<double>(m)));
        return (alloc.r.array() - expected).abs().maxCoeff();
    });

    run_check(checks, "photon-allocation-order", 1e-12, [&] {
        std::mt19937_64 rng(budget.seed + 7);
        std::uniform_real_distribution<double> photons(0.5, 8.0);
        double worst = 0.0;
        for (int t = 0; t < 5; ++t) {
            Vector weights = random_vector_in(rng, 3, 0.2, 1.0);
            weights /= weights.norm();
            const double n_total = photons(rng);
            const MsepAllocation sep = msep_allocation(weights, n_total);
            const MentAllocation ent = ment_allocation(n_total);
            worst = std::max(worst, ent.variance - sep.variance);
        }
        return worst;
    });

    run_check(checks, "monte-carlo-central-limit", 4.0, [&] {
        const Eigen::Index n = 8;
        const SpinNetwork net({n});
        const SpinOps ops = collective_spin_ops(n);
        const QuantumState probe =
            evolve(css_up(net), ObservableSet({ops.jy}), Vector::Constant(1, M_PI / 2.0));
        const EstimationRun run{2000, 400, Vector::Zero(1), budget.seed};
        const CovarianceComparison cmp =
            covariance_experiment(run, probe, ObservableSet({ops.jz}),
                                  ObservableSet({ops.jy}));
        return cmp.max_abs_z;
    });

    run_check(checks, "estimator-fixed-point", 1e-12, [&] {
        ComplexMatrix sz(2, 2);
        sz << 0.5, 0.0, 0.0, -0.5;
        const MeasurementModel model = build_model(ObservableSet({sz}));
        const CalibrationMap cal = [](const Vector& theta) {
            return Vector::Constant(1, 0.5 * std::cos(theta(0))).eval();
        };
        const Vector truth = Vector::Constant(1, 0.4);
        const EstimateResult fit = estimate(model, cal, cal(truth), truth);
        return std::abs(fit.theta(0) - 0.4);
    });

    report.all_passed = true;
    for (const CheckResult& check : checks) {
        report.all_passed = report.all_passed && check.pass;
    }
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace msq
