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
// Acceptance gate: every headline capability of the library is re-verified
// end to end with pinned tolerances and runtime budgets. One line is
// printed per criterion; the exit code is nonzero when any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "msqueeze/gaussian.hpp"
#include "msqueeze/minimize.hpp"
#include "msqueeze/montecarlo.hpp"
#include "msqueeze/oracle.hpp"
#include "msqueeze/quantum.hpp"
#include "msqueeze/spin.hpp"

namespace {

using namespace msq;

constexpr std::uint64_t kSeed = 20260814;

// --- shared helpers -------------------------------------------------------

std::string fmt(const char* pattern, double value) {
    char buffer[96];
    std::snprintf(buffer, sizeof(buffer), pattern, value);
    return buffer;
}

Vector linspace(double lo, double hi, Eigen::Index points) {
    Vector grid(points);
    for (Eigen::Index i = 0; i < points; ++i) {
        grid(i) = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
    std::normal_distribution<double> normal;
    ComplexMatrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            a(i, j) = Complex(normal(rng), normal(rng));
        }
    }
    return 0.5 * (a + a.adjoint().eval());
}

ComplexVector random_state_vector(std::mt19937_64& rng, Eigen::Index dim) {
    std::normal_distribution<double> normal;
    ComplexVector psi(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        psi(i) = Complex(normal(rng), normal(rng));
    }
    return psi / psi.norm();
}

Matrix random_orthogonal(std::mt19937_64& rng, Eigen::Index dim) {
    std::normal_distribution<double> normal;
    Matrix g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            g(i, j) = normal(rng);
        }
    }
    return Matrix(Eigen::HouseholderQR<Matrix>(g).householderQ());
}

std::vector<ComplexMatrix> eigenbasis_povm(const ComplexMatrix& h) {
    const HermEig eig = herm_eig(HermitianOp(h));
    std::vector<ComplexMatrix> povm;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const ComplexVector v = eig.eigenvectors.col(i);
        povm.push_back(v * v.adjoint());
    }
    return povm;
}

/// Relative Loewner violation of a >= b: positive part of the most negative
/// eigenvalue of a - b, scaled by the difference magnitude.
double loewner_violation(const RealSymMatrix& a, const RealSymMatrix& b) {
    const Matrix diff = a.mat() - b.mat();
    const double scale = std::max(1.0, diff.cwiseAbs().maxCoeff());
    const double lambda_min =
        sym_eig(RealSymMatrix(0.5 * (diff + diff.transpose().eval()))).eigenvalues.minCoeff();
    return std::max(0.0, -lambda_min / scale);
}

/// Squeezing of the sum (+) and difference (-) spin combinations of a
/// two-mode state at measurement angles (t1, t2); `flip` negates the
/// second-mode observable (the Heisenberg picture of a pi rotation).
std::pair<double, double> xi_pair(const SpinNetwork& net, const ComplexVector& psi,
                                  double t1, double t2, double flip = 1.0) {
    std::vector<SpinObservable> obs{planar_spin(net, 0, t1),
                                    planar_spin(net, 1, t2, flip)};
    const Matrix g = spin_covariance(net, psi, obs).mat();
    const Vector mz = mean_spin_z(net, psi);
    const double a0 = std::sqrt(static_cast<double>(net.particles(0))) / mz(0);
    const double a1 = std::sqrt(static_cast<double>(net.particles(1))) / mz(1);
    const double common = a0 * a0 * g(0, 0) + a1 * a1 * g(1, 1);
    const double cross = 2.0 * a0 * a1 * g(0, 1);
    return {0.5 * (common + cross), 0.5 * (common - cross)};
}

// --- full qubit-space recomputation of the two-mode twisting scan ---------

ComplexVector evolve_phase(const ComplexMatrix& generator, double t,
                           const ComplexVector& psi) {
    const HermEig eig = herm_eig(HermitianOp(generator));
    ComplexVector rotated = eig.eigenvectors.adjoint() * psi;
    for (Eigen::Index i = 0; i < rotated.size(); ++i) {
        rotated[i] *= std::exp(Complex(0.0, -t * eig.eigenvalues[i]));
    }
    return eig.eigenvectors * rotated;
}

struct QubitPlanar {
    Matrix gamma = Matrix::Zero(4, 4);  // covariance of (Jx1, Jy1, Jx2, Jy2)
    Vector mean_z = Vector::Zero(2);
};

QubitPlanar qubit_planar(const FullQubitSpin& full, const ComplexVector& psi) {
    const std::vector<ComplexMatrix> family = {full.jx(0), full.jy(0), full.jx(1),
                                               full.jy(1)};
    std::vector<ComplexVector> applied;
    Vector mean(4);
    for (size_t i = 0; i < family.size(); ++i) {
        applied.push_back(family[i] * psi);
        mean[static_cast<Eigen::Index>(i)] = psi.dot(applied[i]).real();
    }
    QubitPlanar out;
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) {
            out.gamma(i, j) =
                applied[static_cast<size_t>(i)].dot(applied[static_cast<size_t>(j)]).real() -
                mean[i] * mean[j];
        }
    }
    out.mean_z[0] = psi.dot(full.jz(0) * psi).real();
    out.mean_z[1] = psi.dot(full.jz(1) * psi).real();
    return out;
}

// --- the acceptance criteria ----------------------------------------------

bool criterion_twin_fock(std::string& detail) {
    double worst_analytic = 0.0;
    double worst_fisher = 0.0;
    for (const Eigen::Index n : {4, 10, 20}) {
        const TwinFockResult tf = twin_fock_extrapolated(n);
        const double analytic = static_cast<double>(n) * static_cast<double>(n + 2) / 2.0;
        const Matrix target = analytic * Matrix::Identity(2, 2);
        worst_analytic = std::max(
            worst_analytic, (tf.moment.mat() - target).cwiseAbs().maxCoeff() / analytic);
        worst_fisher = std::max(
            worst_fisher,
            (tf.moment.mat() - tf.quantum_fisher.mat()).cwiseAbs().maxCoeff() / analytic);
    }
    detail = fmt("max rel deviation %.2e", std::max(worst_analytic, worst_fisher));
    return worst_analytic <= 1e-4 && worst_fisher <= 1e-4;
}

bool criterion_mode_entanglement_gain(std::string& detail) {
    double worst_asymptote = 0.0;
    bool baseline_exact = true;
    for (const Eigen::Index m : {2, 5, 10, 100}) {
        const double ratio5 = fig3_scan(m, Vector::Constant(1, 5.0)).front().ratio;
        worst_asymptote =
            std::max(worst_asymptote, std::abs(static_cast<double>(m) * ratio5 - 1.0));
        baseline_exact =
            baseline_exact && fig3_scan(m, Vector::Zero(1)).front().ratio == 1.0;
    }
    const double ratio_small = fig3_scan(4, Vector::Constant(1, 0.01)).front().ratio;
    const double weak_reference = std::exp(-2.0 * (std::sqrt(4.0) - 1.0) * 0.01);
    const double weak_error = std::abs(ratio_small / weak_reference - 1.0);
    detail = fmt("asymptote error %.2e, ", worst_asymptote) +
             fmt("weak-squeezing error %.2e", weak_error);
    return worst_asymptote <= 0.01 && weak_error <= 0.02 && baseline_exact;
}

bool criterion_cv_optimum(std::string& detail) {
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> rdist(0.1, 1.2);
    const Eigen::Index m = 3;
    double worst_matrix = 0.0;
    double worst_spectrum = 0.0;
    for (int t = 0; t < 100; ++t) {
        Vector r(m);
        for (Eigen::Index k = 0; k < m; ++k) {
            r(k) = rdist(rng);
        }

        // Squeezing along a rotated mode basis with canonical encodings
        // realizes the closed-form squeezing matrix exactly.
        const Matrix u = random_orthogonal(rng, m);
        std::vector<Vector> basis;
        for (Eigen::Index k = 0; k < m; ++k) {
            basis.push_back(u.col(k));
        }
        const GaussianState rotated = squeezed_vacuum({r, basis_change_W(basis)});
        const SqueezingReport report =
            cv_squeezing_matrix(rotated, canonical_mode_encoding(m));
        const Vector decay = (-2.0 * r).array().exp();
        const Matrix expected = u * decay.asDiagonal() * u.transpose();
        worst_matrix = std::max(worst_matrix,
                                (report.xi2.mat() - expected).cwiseAbs().maxCoeff());

        // An arbitrary passive mixing hides the normal form; the optimal
        // encoding must still reach the squeezed spectrum.
        const GaussianState mixed =
            squeezed_vacuum({r, random_orthogonal_symplectic(rng, m)});
        const SqueezingReport optimal =
            cv_squeezing_matrix(mixed, optimal_cv_encoding(mixed));
        Vector sorted = decay;
        std::sort(sorted.data(), sorted.data() + sorted.size());
        worst_spectrum = std::max(worst_spectrum,
                                  (optimal.eigenvalues - sorted).cwiseAbs().maxCoeff());
    }
    detail = fmt("matrix error %.2e, ", worst_matrix) +
             fmt("spectrum error %.2e", worst_spectrum);
    return worst_matrix <= 1e-10 && worst_spectrum <= 1e-8;
}

bool criterion_witness_equivalence(std::string& detail) {
    std::mt19937_64 rng(kSeed + 4);
    std::uniform_real_distribution<double> rdist(-0.8, 0.8);
    std::uniform_real_distribution<double> mix(0.0, 0.4);
    int disagreements = 0;
    for (int t = 0; t < 200; ++t) {
        Vector r(2);
        r << rdist(rng), rdist(rng);
        Matrix gamma =
            squeezed_vacuum({r, random_orthogonal_symplectic(rng, 2)}).gamma().mat();
        if (t % 2 == 1) {
            gamma += mix(rng) * Matrix::Identity(4, 4);  // admissible mixed state
        }
        const GaussianState state{RealSymMatrix(gamma), Vector()};
        const SimonCheck simon = simon_check(state);
        const bool spectral = simon.lambda_min < 0.25 - 1e-12;
        const bool witness_beats = simon.witness_min_xi2 < 1.0 - 1e-10;
        if (spectral != witness_beats || spectral != simon.squeezed) {
            ++disagreements;
        }
    }
    detail = "disagreements " + std::to_string(disagreements) + " of 200";
    return disagreements == 0;
}

bool criterion_fisher_chain(std::string& detail) {
    std::mt19937_64 rng(kSeed + 5);
    std::normal_distribution<double> normal;
    double worst_chain = 0.0;
    for (const Eigen::Index dim : {2, 4, 8, 16}) {
        for (int t = 0; t < 50; ++t) {
            const QuantumState psi = QuantumState::pure(random_state_vector(rng, dim));
            const ObservableSet h(
                {random_hermitian(rng, dim), random_hermitian(rng, dim)});
            const auto povm = eigenbasis_povm(random_hermitian(rng, dim));
            std::vector<ComplexMatrix> x_ops;
            for (int k = 0; k < 2; ++k) {
                ComplexMatrix x = ComplexMatrix::Zero(dim, dim);
                for (const auto& pi : povm) {
                    x += normal(rng) * pi;
                }
                x_ops.push_back(x);
            }
            const MomentReport m = moment_matrix(psi, h, ObservableSet(x_ops));
            const RealSymMatrix f = classical_fisher_matrix(psi, povm, h);
            const RealSymMatrix fq = quantum_fisher_matrix(psi, h);
            worst_chain = std::max(worst_chain, loewner_violation(f, m.moment));
            worst_chain = std::max(worst_chain, loewner_violation(fq, f));
        }
    }

    // Observables spanning every outcome function of the measurement make
    // the moment matrix reach the classical Fisher information.
    double worst_equality = 0.0;
    for (int t = 0; t < 50; ++t) {
        const Eigen::Index dim = t % 2 == 0 ? 4 : 8;
        const QuantumState psi = QuantumState::pure(random_state_vector(rng, dim));
        const ObservableSet h({random_hermitian(rng, dim), random_hermitian(rng, dim)});
        const auto povm = eigenbasis_povm(random_hermitian(rng, dim));
        std::vector<ComplexMatrix> x_ops(povm.begin(), povm.end() - 1);
        const MomentReport m = moment_matrix(psi, h, ObservableSet(x_ops));
        const RealSymMatrix f = classical_fisher_matrix(psi, povm, h);
        const double scale = std::max(1.0, f.mat().cwiseAbs().maxCoeff());
        worst_equality = std::max(
            worst_equality, (m.moment.mat() - f.mat()).cwiseAbs().maxCoeff() / scale);
    }
    detail = fmt("chain violation %.2e, ", worst_chain) +
             fmt("projector gap %.2e", worst_equality);
    return worst_chain <= 1e-8 && worst_equality <= 1e-8;
}

bool criterion_cauchy_schwarz(std::string& detail) {
    const CauchySchwarzCheck check = cauchy_schwarz_lemma_test(7, 3, 4, 500, kSeed);
    detail = fmt("psd violation %.2e, ", check.max_psd_violation) +
             fmt("saturation residual %.2e", check.max_saturation_residual);
    return check.violations == 0 && check.max_psd_violation <= 1e-9 &&
           check.max_saturation_residual <= 1e-9;
}

bool criterion_spin_oracle(std::string& detail) {
    double worst_exact = 0.0;   // against the full qubit space, tol 1e-9
    double worst_grid = 0.0;    // closed form against the dense grid, tol 1e-6
    double worst_search = 0.0;  // independent direction search, rel tol 1e-6
    const std::vector<std::vector<Eigen::Index>> layouts = {
        {2, 2}, {3, 3}, {4, 2}, {1, 2, 3}};
    for (const auto& layout : layouts) {
        const SpinNetwork net(layout);
        const FullQubitSpin full(net);
        for (const QuantumState& probe :
             {oat_local(net, 0.3), oat_nonlocal(net, 0.2)}) {
            const ComplexVector psi = probe.vector();
            const QuantumState lifted = QuantumState::pure(full.lift(psi));
            const Eigen::Index m = net.modes();

            Vector angles(m);
            for (Eigen::Index mode = 0; mode < m; ++mode) {
                const LocalXiMin closed = local_xi_min(net, psi, mode);
                angles(mode) = closed.angle;

                // Closed-form minimum against the qubit-space covariance.
                const ComplexMatrix jx = full.jx(mode);
                const ComplexMatrix jy = full.jy(mode);
                const double vxx = lifted.expectation_real(jx * jx) -
                                   std::pow(lifted.expectation_real(jx), 2);
                const double vyy = lifted.expectation_real(jy * jy) -
                                   std::pow(lifted.expectation_real(jy), 2);
                const double vxy =
                    0.5 * lifted.expectation_real(jx * jy + jy * jx) -
                    lifted.expectation_real(jx) * lifted.expectation_real(jy);
                const double dplus = 0.5 * (vxx + vyy);
                const double dminus = 0.5 * (vxx - vyy);
                const double mz = lifted.expectation_real(full.jz(mode));
                const double n_mode = static_cast<double>(net.particles(mode));
                const double xi2_qubit =
                    n_mode * (dplus - std::sqrt(vxy * vxy + dminus * dminus)) / (mz * mz);
                worst_exact = std::max(worst_exact, std::abs(closed.xi2 - xi2_qubit));

                // Closed form against the dense direction grid.
                const LocalXiMin grid = grid_minimize_direction(net, psi, mode, 10000);
                worst_grid = std::max(worst_grid, std::abs(closed.xi2 - grid.xi2));
            }

            // Full squeezing matrix against the lifted computation.
            const SqueezingReport fast = spin_squeezing_matrix(net, psi, angles);
            std::vector<ComplexMatrix> planar;
            Vector mz(m);
            for (Eigen::Index mode = 0; mode < m; ++mode) {
                planar.push_back(std::cos(angles(mode)) * full.jx(mode) +
                                 std::sin(angles(mode)) * full.jy(mode));
                mz(mode) = lifted.expectation_real(full.jz(mode));
            }
            for (Eigen::Index k = 0; k < m; ++k) {
                for (Eigen::Index l = 0; l < m; ++l) {
                    const auto& ak = planar[static_cast<size_t>(k)];
                    const auto& al = planar[static_cast<size_t>(l)];
                    const double cov = 0.5 * lifted.expectation_real(ak * al + al * ak) -
                                       lifted.expectation_real(ak) *
                                           lifted.expectation_real(al);
                    const double slow = std::sqrt(static_cast<double>(net.particles(k)) *
                                                  static_cast<double>(net.particles(l))) *
                                        cov / (mz(k) * mz(l));
                    worst_exact = std::max(
                        worst_exact, std::abs(fast.xi2.mat()(k, l) - slow));
                }
            }
        }
    }

    // Scan gains at N = 4 against the dense qubit recomputation, evaluated
    // at the directions the scan itself selected, plus a from-scratch
    // optimization (mirrored schedule) confirming those directions.
    const SpinNetwork net4({2, 2});
    const FullQubitSpin full4(net4);
    const ComplexVector css4 = full4.css_up().vector();
    const ComplexMatrix jy_sum = full4.jy(0) + full4.jy(1);
    Vector chi(2);
    chi << 0.06, 0.12;
    const auto rows = fig2_scan(4, chi);
    for (const TwistingScanRow& row : rows) {
        const ComplexVector psi_nl = evolve_phase(jy_sum * jy_sum, row.chi_t, css4);
        const QubitPlanar nl = qubit_planar(full4, psi_nl);
        Vector a(2);
        for (Eigen::Index k = 0; k < 2; ++k) {
            a[k] = std::sqrt(2.0) / nl.mean_z[k];
        }
        const auto xi_form = [&](double t1, double t2, double sign) {
            Vector u(4);
            u << a[0] * std::cos(t1), a[0] * std::sin(t1), sign * a[1] * std::cos(t2),
                sign * a[1] * std::sin(t2);
            return 0.5 * u.dot(nl.gamma * u);
        };
        worst_exact = std::max(
            worst_exact, std::abs(row.gain_sum_nonlocal_db +
                                  10.0 * std::log10(xi_form(row.angle_1, row.angle_2, 1.0))));
        worst_exact = std::max(
            worst_exact,
            std::abs(row.gain_diff_nonlocal_db +
                     10.0 * std::log10(xi_form(row.angle_1, row.angle_2, -1.0))));
        worst_exact = std::max(worst_exact, std::abs(row.mean_spin_1 - nl.mean_z[0]));
        worst_exact = std::max(worst_exact, std::abs(row.mean_spin_2 - nl.mean_z[1]));

        // Independent direction search (same grid and refinement schedule).
        const int grid_points = 720;
        const double step = 2.0 * M_PI / grid_points;
        double best1 = 0.0;
        double best2 = 0.0;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < grid_points; ++i) {
            for (int j = 0; j < grid_points; ++j) {
                const double q = xi_form(i * step, j * step, 1.0);
                if (q < best) {
                    best = q;
                    best1 = i * step;
                    best2 = j * step;
                }
            }
        }
        for (int round = 0; round < 3; ++round) {
            best1 = golden_section_min([&](double x) { return xi_form(x, best2, 1.0); },
                                       best1 - step, best1 + step)
                        .first;
            auto refined = golden_section_min(
                [&](double x) { return xi_form(best1, x, 1.0); }, best2 - step,
                best2 + step);
            best2 = refined.first;
            best = refined.second;
        }
        // Near-degenerate minima can make the two searches settle on
        // slightly different stationary points; require matching values,
        // not matching iterates.
        const double xi_scan = std::pow(10.0, -row.gain_sum_nonlocal_db / 10.0);
        worst_search = std::max(worst_search, std::abs(best - xi_scan) / xi_scan);

        const ComplexVector psi_loc = evolve_phase(
            ComplexMatrix(full4.jy(0) * full4.jy(0) + full4.jy(1) * full4.jy(1)),
            row.chi_t, css4);
        const QubitPlanar loc = qubit_planar(full4, psi_loc);
        const double dplus = 0.5 * (loc.gamma(0, 0) + loc.gamma(1, 1));
        const double dminus = 0.5 * (loc.gamma(0, 0) - loc.gamma(1, 1));
        const double cxy = loc.gamma(0, 1);
        const double var_min = dplus - std::sqrt(cxy * cxy + dminus * dminus);
        const double local_db =
            -10.0 * std::log10(2.0 * var_min / (loc.mean_z[0] * loc.mean_z[0]));
        worst_exact = std::max(worst_exact, std::abs(row.gain_local_db - local_db));
    }

    detail = fmt("qubit-space deviation %.2e, ", worst_exact) +
             fmt("grid deviation %.2e, ", worst_grid) +
             fmt("search deviation %.2e", worst_search);
    return worst_exact <= 1e-9 && worst_grid <= 1e-6 && worst_search <= 1e-6;
}

bool criterion_twisting_scan(std::string& detail) {
    const SpinNetwork net({50, 50});
    const Vector grid = linspace(0.0, 0.05, 50);
    const auto rows = fig2_scan(100, grid);
    bool ok = rows.size() == 50;

    // No twisting, no gain.
    ok = ok && std::abs(rows[0].gain_sum_nonlocal_db) <= 1e-12 &&
         std::abs(rows[0].gain_diff_nonlocal_db) <= 1e-12 &&
         std::abs(rows[0].gain_local_db) <= 1e-12 &&
         std::abs(rows[0].gain_avg_nonlocal_db) <= 1e-12;

    // Nonlocal twisting beats local twisting across the scanned window.
    double min_margin = std::numeric_limits<double>::infinity();
    for (const TwistingScanRow& row : rows) {
        ok = ok && !row.mean_spin_collapsed;
        if (row.chi_t > 0.0) {
            min_margin =
                std::min(min_margin, row.gain_sum_nonlocal_db - row.gain_local_db);
        }
        ok = ok && row.gain_sum_nonlocal_db >= row.gain_local_db - 1e-9;
    }

    // The locally twisted probe has a diagonal squeezing matrix with equal
    // entries: both parameter combinations perform identically.
    double worst_offdiag = 0.0;
    for (size_t index = 7; index < rows.size(); index += 7) {
        const double chi_t = rows[index].chi_t;
        const ComplexVector psi_loc = oat_local(net, chi_t).vector();
        Vector angles(2);
        for (Eigen::Index mode = 0; mode < 2; ++mode) {
            angles(mode) = local_xi_min(net, psi_loc, mode).angle;
        }
        const SqueezingReport report = spin_squeezing_matrix(net, psi_loc, angles);
        worst_offdiag = std::max(worst_offdiag, std::abs(report.xi2.mat()(0, 1)));
        worst_offdiag = std::max(
            worst_offdiag, std::abs(report.xi2.mat()(0, 0) - report.xi2.mat()(1, 1)));
        const auto [plus, minus] = xi_pair(net, psi_loc, angles(0), angles(1));
        worst_offdiag = std::max(worst_offdiag, std::abs(plus - minus));
    }
    ok = ok && worst_offdiag <= 1e-10;

    // Rotating one mode by pi swaps the sum and difference combinations.
    double worst_swap = 0.0;
    for (const size_t index : {size_t(10), size_t(30), size_t(49)}) {
        const TwistingScanRow& row = rows[index];
        const ComplexVector psi = oat_nonlocal(net, row.chi_t).vector();
        const auto [plus, minus] = xi_pair(net, psi, row.angle_1, row.angle_2);
        const auto [plus_flip, minus_flip] =
            xi_pair(net, psi, row.angle_1, row.angle_2, -1.0);
        worst_swap = std::max(worst_swap, std::abs(plus_flip - minus));
        worst_swap = std::max(worst_swap, std::abs(minus_flip - plus));
        // The reported gain is exactly the sum combination at these angles.
        ok = ok && std::abs(plus - std::pow(10.0, -row.gain_sum_nonlocal_db / 10.0)) <=
                       1e-9 * std::max(1.0, plus);
    }
    // State-level pi rotation on a small network, via the product-space
    // unitary rather than an observable sign flip.
    {
        const SpinNetwork net4({2, 2});
        const ComplexVector psi4 = oat_nonlocal(net4, 0.1).vector();
        const SpinOps ops = collective_spin_ops(2);
        const ComplexVector rotated =
            evolve(QuantumState::pure(psi4),
                   ObservableSet({embed_mode_op(net4, 1, ops.jz)}),
                   Vector::Constant(1, M_PI))
                .vector();
        const auto [plus, minus] = xi_pair(net4, psi4, 0.3, 1.1);
        const auto [plus_rot, minus_rot] = xi_pair(net4, rotated, 0.3, 1.1);
        worst_swap = std::max(worst_swap, std::abs(plus_rot - minus));
        worst_swap = std::max(worst_swap, std::abs(minus_rot - plus));
    }
    ok = ok && worst_swap <= 1e-12;

    detail = fmt("min nonlocal margin %.3f dB, ", min_margin) +
             fmt("swap residual %.2e", worst_swap);
    return ok;
}

bool criterion_monte_carlo(std::string& detail) {
    // Collective Ramsey interferometer at the shot-noise limit.
    const Eigen::Index n = 20;
    const SpinNetwork net({n});
    const SpinOps ops = collective_spin_ops(n);
    const QuantumState probe =
        evolve(css_up(net), ObservableSet({ops.jy}), Vector::Constant(1, M_PI / 2.0));
    const EstimationRun run{10000, 2000, Vector::Zero(1), kSeed};
    const CovarianceComparison ramsey = covariance_experiment(
        run, probe, ObservableSet({ops.jy}), ObservableSet({ops.jz}));
    const double mu = 10000.0;
    bool ok = ramsey.max_abs_z <= 4.0 && ramsey.failed_trials == 0;
    ok = ok && std::abs(ramsey.moment.moment.mat()(0, 0) - static_cast<double>(n)) <=
                   1e-6 * static_cast<double>(n);
    ok = ok && std::abs(ramsey.predicted(0, 0) * mu * static_cast<double>(n) - 1.0) <= 1e-6;

    // Locally squeezed two-mode network: both phases resolved below shot
    // noise with the empirical covariance matching the prediction.
    const SpinNetwork net2({4, 4});
    const QuantumState squeezed = oat_local(net2, 0.35);
    const ComplexVector psi = squeezed.vector();
    std::vector<ComplexMatrix> measured;
    std::vector<ComplexMatrix> generators;
    bool sub_shot_noise_probe = true;
    for (Eigen::Index mode = 0; mode < 2; ++mode) {
        const LocalXiMin lm = local_xi_min(net2, psi, mode);
        sub_shot_noise_probe = sub_shot_noise_probe && lm.xi2 < 1.0;
        const SpinOps mode_ops = collective_spin_ops(net2.particles(mode));
        const ComplexMatrix direction = std::cos(lm.angle) * mode_ops.jx +
                                        std::sin(lm.angle) * mode_ops.jy;
        const ComplexMatrix conjugate = std::cos(lm.angle + M_PI / 2.0) * mode_ops.jx +
                                        std::sin(lm.angle + M_PI / 2.0) * mode_ops.jy;
        measured.push_back(embed_mode_op(net2, mode, direction));
        generators.push_back(embed_mode_op(net2, mode, conjugate));
    }
    const EstimationRun run2{1000, 1000, Vector::Zero(2), kSeed};
    const CovarianceComparison network = covariance_experiment(
        run2, squeezed, ObservableSet(generators), ObservableSet(measured));
    ok = ok && sub_shot_noise_probe && network.max_abs_z <= 4.0 &&
         network.failed_trials == 0;
    double worst_over_shot_noise = 0.0;
    for (Eigen::Index mode = 0; mode < 2; ++mode) {
        const double shot_noise_floor =
            1.0 / (1000.0 * static_cast<double>(net2.particles(mode)));
        worst_over_shot_noise = std::max(
            worst_over_shot_noise, network.empirical(mode, mode) / shot_noise_floor);
    }
    ok = ok && worst_over_shot_noise < 1.0;

    detail = fmt("max |z| %.2f, ", std::max(ramsey.max_abs_z, network.max_abs_z)) +
             fmt("worst variance / shot noise %.2f", worst_over_shot_noise);
    return ok;
}

bool criterion_shot_noise(std::string& detail) {
    // Exact diagonal reference for the planar generator family.
    const SpinNetwork net({3, 5});
    const Matrix f_sn = shot_noise_jperp(net).mat();
    bool ok = true;
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j) {
            const double expected = i != j ? 0.0 : (i < 2 ? 3.0 : 5.0);
            ok = ok && f_sn(i, j) == expected;
        }
    }

    // Particle-product states never exceed it.
    const ProductStateFisherCheck product =
        random_product_state_fisher(SpinNetwork({2, 2}), 200, kSeed);
    ok = ok && product.violations == 0 && product.max_excess <= 1e-8;

    // A polarized state saturates the diagonal.
    const SpinNetwork net2({3, 2});
    const SpinOps s0 = collective_spin_ops(3);
    const SpinOps s1 = collective_spin_ops(2);
    const ObservableSet jperp({embed_mode_op(net2, 0, s0.jx), embed_mode_op(net2, 0, s0.jy),
                               embed_mode_op(net2, 1, s1.jx),
                               embed_mode_op(net2, 1, s1.jy)});
    const RealSymMatrix fq = quantum_fisher_matrix(css_up(net2), jperp);
    const double saturation =
        (fq.mat() - shot_noise_jperp(net2).mat()).cwiseAbs().maxCoeff();
    ok = ok && saturation <= 1e-8;

    detail = fmt("product-state excess %.2e, ", product.max_excess) +
             fmt("polarized saturation gap %.2e", saturation);
    return ok;
}

bool criterion_photon_allocation(std::string& detail) {
    // Uniform weights: closed-form split.
    const Eigen::Index m = 4;
    const double n_total = 3.0;
    const MsepAllocation uniform =
        msep_allocation(Vector::Constant(m, 0.5), n_total);
    const double expected = std::asinh(std::sqrt(n_total / static_cast<double>(m)));
    const double uniform_error = (uniform.r.array() - expected).abs().maxCoeff();
    bool ok = uniform_error <= 1e-10;

    // Non-uniform weights against a dense grid search over the feasible
    // photon splits.
    Vector w(3);
    w << 0.25, 0.55, 0.8;
    w /= w.norm();
    const double budget = 2.5;
    const MsepAllocation split = msep_allocation(w, budget);
    const double r_cap = std::asinh(std::sqrt(budget));
    const auto value = [&](double r1, double r2) {
        const double used = std::sinh(r1) * std::sinh(r1) + std::sinh(r2) * std::sinh(r2);
        if (r1 < 0.0 || r2 < 0.0 || used > budget) {
            return std::numeric_limits<double>::infinity();
        }
        const double r3 = std::asinh(std::sqrt(budget - used));
        return w(0) * w(0) * std::exp(-2.0 * r1) + w(1) * w(1) * std::exp(-2.0 * r2) +
               w(2) * w(2) * std::exp(-2.0 * r3);
    };
    const int grid_points = 500;
    const double step = r_cap / grid_points;
    double best1 = 0.0;
    double best2 = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid_points; ++i) {
        for (int j = 0; j <= grid_points; ++j) {
            const double v = value(i * step, j * step);
            if (v < best) {
                best = v;
                best1 = i * step;
                best2 = j * step;
            }
        }
    }
    for (int round = 0; round < 4; ++round) {
        best1 = golden_section_min([&](double x) { return value(x, best2); },
                                   std::max(0.0, best1 - step), best1 + step)
                    .first;
        auto refined = golden_section_min([&](double x) { return value(best1, x); },
                                          std::max(0.0, best2 - step), best2 + step);
        best2 = refined.first;
        best = refined.second;
    }
    const double grid_error = std::abs(best - split.variance);
    ok = ok && grid_error <= 1e-6 && split.photon_residual <= 1e-9;

    // The mode-entangled probe is never worse than the split one.
    std::mt19937_64 rng(kSeed + 11);
    std::uniform_real_distribution<double> wdist(0.2, 1.0);
    std::uniform_real_distribution<double> ndist(0.5, 8.0);
    double worst_order = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < 30; ++t) {
        Vector weights(3);
        for (Eigen::Index k = 0; k < 3; ++k) {
            weights(k) = wdist(rng);
        }
        weights /= weights.norm();
        const double photons = ndist(rng);
        const MsepAllocation sep = msep_allocation(weights, photons);
        const MentAllocation ent = ment_allocation(photons);
        worst_order = std::max(worst_order, ent.variance - sep.variance);
    }
    ok = ok && worst_order <= 1e-12;

    detail = fmt("uniform error %.2e, ", uniform_error) +
             fmt("grid gap %.2e, ", grid_error) + fmt("order slack %.2e", worst_order);
    return ok;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* label;
        double time_limit_seconds;
        std::function<bool(std::string&)> body;
    };
    const std::vector<Criterion> criteria = {
        {1, "twin-Fock moment matrix saturates the quantum Fisher matrix", 10.0,
         criterion_twin_fock},
        {2, "mode-entanglement gain approaches 1/M", 1.0,
         criterion_mode_entanglement_gain},
        {3, "squeezed-vacuum squeezing matrix and optimal spectrum", 5.0,
         criterion_cv_optimum},
        {4, "spectral witness equivalence for Gaussian states", 5.0,
         criterion_witness_equivalence},
        {5, "moment / classical / quantum Fisher sensitivity chain", 30.0,
         criterion_fisher_chain},
        {6, "matrix Cauchy-Schwarz inequality and saturation", 2.0,
         criterion_cauchy_schwarz},
        {7, "spin module agrees with the full qubit-space oracle", 60.0,
         criterion_spin_oracle},
        {8, "two-mode twisting scan properties at N = 100", 300.0,
         criterion_twisting_scan},
        {9, "Monte Carlo covariance matches the moment-matrix prediction", 300.0,
         criterion_monte_carlo},
        {10, "shot-noise matrix bounds product-state Fisher information", 60.0,
         criterion_shot_noise},
        {11, "photon allocation optima", 10.0, criterion_photon_allocation},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
            ok = false;
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (seconds >= criterion.time_limit_seconds) {
            ok = false;
            detail += fmt(" [over time budget %.0f s]", criterion.time_limit_seconds);
        }
        if (!ok) {
            ++failures;
        }
        std::printf("%s %2d %-58s %7.2f s  %s\n", ok ? "PASS" : "FAIL", criterion.id,
                    criterion.label, seconds, detail.c_str());
    }
    std::printf("%d/%zu acceptance criteria passed\n",
                static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
