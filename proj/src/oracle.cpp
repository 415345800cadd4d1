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

#include "msqueeze/oracle.hpp"

#include <cmath>
#include <random>

#include "msqueeze/minimize.hpp"

namespace msq {

namespace {

double binomial(Eigen::Index n, Eigen::Index k) {
    double out = 1.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        out *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return out;
}

}  // namespace

FullQubitSpin::FullQubitSpin(SpinNetwork net, const OracleBudget& budget)
    : net_(std::move(net)) {
    const Eigen::Index total = net_.total_particles();
    if (total > budget.max_qubits) {
        throw DomainError("FullQubitSpin: particle count exceeds the oracle budget");
    }
    dim_ = Eigen::Index(1) << total;
    Eigen::Index offset = 0;
    for (Eigen::Index k = 0; k < net_.modes(); ++k) {
        offsets_.push_back(offset);
        offset += net_.particles(k);
    }
}

ComplexMatrix FullQubitSpin::qubit_spin(Eigen::Index qubit, char axis) const {
    const Eigen::Index total = net_.total_particles();
    if (qubit < 0 || qubit >= total) {
        throw DimensionError("qubit_spin: qubit index out of range");
    }
    const Eigen::Index mask = Eigen::Index(1) << (total - 1 - qubit);
    ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) {
        const bool down = (i & mask) != 0;
        switch (axis) {
            case 'x':
                out(i ^ mask, i) = 0.5;
                break;
            case 'y':
                out(i ^ mask, i) = down ? Complex(0.0, -0.5) : Complex(0.0, 0.5);
                break;
            case 'z':
                out(i, i) = down ? -0.5 : 0.5;
                break;
            default:
                throw DomainError("qubit_spin: axis must be x, y or z");
        }
    }
    return out;
}

ComplexMatrix FullQubitSpin::mode_sum(Eigen::Index mode, char axis) const {
    ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
    const Eigen::Index first = offsets_[static_cast<size_t>(mode)];
    for (Eigen::Index q = 0; q < net_.particles(mode); ++q) {
        out += qubit_spin(first + q, axis);
    }
    return out;
}

ComplexMatrix FullQubitSpin::jx(Eigen::Index mode) const { return mode_sum(mode, 'x'); }
ComplexMatrix FullQubitSpin::jy(Eigen::Index mode) const { return mode_sum(mode, 'y'); }
ComplexMatrix FullQubitSpin::jz(Eigen::Index mode) const { return mode_sum(mode, 'z'); }

QuantumState FullQubitSpin::css_up() const {
    ComplexVector psi = ComplexVector::Zero(dim_);
    psi[0] = 1.0;
    return QuantumState::pure(psi);
}

ComplexVector FullQubitSpin::lift(const ComplexVector& network_state) const {
    if (network_state.size() != net_.total_dim()) {
        throw DimensionError("lift: state size does not match the network");
    }
    // Dicke level i of an n-qubit mode is the normalized sum over basis
    // states with i down spins.
    std::vector<std::vector<ComplexVector>> dicke;
    for (Eigen::Index k = 0; k < net_.modes(); ++k) {
        const Eigen::Index n = net_.particles(k);
        const Eigen::Index d = Eigen::Index(1) << n;
        std::vector<ComplexVector> levels;
        for (Eigen::Index i = 0; i <= n; ++i) {
            ComplexVector v = ComplexVector::Zero(d);
            const double norm = 1.0 / std::sqrt(binomial(n, i));
            for (Eigen::Index b = 0; b < d; ++b) {
                if (Eigen::Index(__builtin_popcountll(static_cast<unsigned long long>(b))) == i) {
                    v[b] = norm;
                }
            }
            levels.push_back(std::move(v));
        }
        dicke.push_back(std::move(levels));
    }

    ComplexVector full = ComplexVector::Zero(dim_);
    for (Eigen::Index idx = 0; idx < network_state.size(); ++idx) {
        if (network_state[idx] == Complex(0.0, 0.0)) continue;
        Eigen::Index rest = idx;
        std::vector<Eigen::Index> levels(static_cast<size_t>(net_.modes()));
        for (Eigen::Index k = net_.modes() - 1; k >= 0; --k) {
            levels[static_cast<size_t>(k)] = rest % net_.mode_dim(k);
            rest /= net_.mode_dim(k);
        }
        ComplexVector prod = ComplexVector::Ones(1);
        for (Eigen::Index k = 0; k < net_.modes(); ++k) {
            const ComplexVector& factor =
                dicke[static_cast<size_t>(k)][static_cast<size_t>(levels[static_cast<size_t>(k)])];
            ComplexVector next(prod.size() * factor.size());
            for (Eigen::Index i = 0; i < prod.size(); ++i) {
                next.segment(i * factor.size(), factor.size()) = prod[i] * factor;
            }
            prod = std::move(next);
        }
        full += network_state[idx] * prod;
    }
    return full;
}

QuantumState FullQubitSpin::product_state(const Vector& theta, const Vector& phi) const {
    const Eigen::Index total = net_.total_particles();
    if (theta.size() != total || phi.size() != total) {
        throw DimensionError("product_state: one Bloch direction per qubit required");
    }
    ComplexVector psi = ComplexVector::Ones(1);
    for (Eigen::Index q = 0; q < total; ++q) {
        ComplexVector single(2);
        single << Complex(std::cos(theta[q] / 2.0), 0.0),
            std::exp(Complex(0.0, phi[q])) * std::sin(theta[q] / 2.0);
        ComplexVector next(psi.size() * 2);
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            next[2 * i] = psi[i] * single[0];
            next[2 * i + 1] = psi[i] * single[1];
        }
        psi = std::move(next);
    }
    return QuantumState::pure(psi);
}

LocalXiMin grid_minimize_direction(const SpinNetwork& net, const ComplexVector& psi,
                                   Eigen::Index mode, int grid_points) {
    const double n = static_cast<double>(net.particles(mode));
    const Vector mz = mean_spin_z(net, psi);
    if (std::abs(mz[mode]) <= 1e-8 * n) {
        throw ZeroMeanSpinError("grid_minimize_direction: mean spin vanishes");
    }
    const auto variance = [&](double angle) {
        const SpinObservable obs = planar_spin(net, mode, angle);
        const ComplexVector applied = apply_observable(net, psi, obs);
        const double mean = psi.dot(applied).real();
        return applied.squaredNorm() - mean * mean;
    };
    const auto [angle, var_min] = grid_refine_min(variance, 0.0, M_PI, grid_points);
    return LocalXiMin{n * var_min / (mz[mode] * mz[mode]), angle};
}

Matrix finite_diff_fisher(const QuantumState& state, const ObservableSet& h,
                          const std::vector<ComplexMatrix>& povm, double step) {
    const Eigen::Index m = h.size();
    const Eigen::Index outcomes = static_cast<Eigen::Index>(povm.size());
    const auto probabilities = [&](const Vector& theta) {
        const QuantumState evolved = evolve(state, h, theta);
        Vector p(outcomes);
        for (Eigen::Index x = 0; x < outcomes; ++x) {
            p[x] = evolved.expectation(povm[static_cast<size_t>(x)]).real();
        }
        return p;
    };
    const Vector p0 = probabilities(Vector::Zero(m));
    Matrix dp(outcomes, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        Vector plus = Vector::Zero(m);
        plus[k] = step;
        Vector minus = Vector::Zero(m);
        minus[k] = -step;
        dp.col(k) = (probabilities(plus) - probabilities(minus)) / (2.0 * step);
    }
    Matrix f = Matrix::Zero(m, m);
    for (Eigen::Index x = 0; x < outcomes; ++x) {
        if (p0[x] <= 1e-12) continue;
        f += dp.row(x).transpose() * dp.row(x) / p0[x];
    }
    return f;
}

ComplexMatrix fock_annihilation(Eigen::Index cutoff) {
    if (cutoff < 2) throw DomainError("fock_annihilation: cutoff too small");
    ComplexMatrix a = ComplexMatrix::Zero(cutoff, cutoff);
    for (Eigen::Index n = 1; n < cutoff; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

ObservableSet fock_quadratures(Eigen::Index cutoff) {
    const ComplexMatrix a = fock_annihilation(cutoff);
    const ComplexMatrix x = 0.5 * (a + a.adjoint());
    const ComplexMatrix p = Complex(0.0, -0.5) * (a - a.adjoint());
    return ObservableSet({x, p}, "quadratures");
}

QuantumState fock_squeezed_vacuum(double r, Eigen::Index cutoff) {
    const ComplexMatrix a = fock_annihilation(cutoff);
    const ComplexMatrix a2 = a * a;
    // exp(r (a^dag^2 - a^2)/2) = exp(-i G) with G = i r (a^dag^2 - a^2)/2.
    const ComplexMatrix g = Complex(0.0, 0.5 * r) * (a2.adjoint() - a2);
    const HermEig eig = herm_eig(HermitianOp(g));
    ComplexVector vac = ComplexVector::Zero(cutoff);
    vac[0] = 1.0;
    ComplexVector c = eig.eigenvectors.adjoint() * vac;
    for (Eigen::Index i = 0; i < cutoff; ++i) {
        c[i] *= std::exp(Complex(0.0, -eig.eigenvalues[i]));
    }
    ComplexVector psi = eig.eigenvectors * c;
    return QuantumState::pure(psi / psi.norm());
}

FockCvCheck fock_cv_check(double r, Eigen::Index cutoff) {
    const QuantumState psi = fock_squeezed_vacuum(r, cutoff);
    const ObservableSet quads = fock_quadratures(cutoff);
    FockCvCheck out;
    out.gamma = covariance_matrix(psi, quads);
    out.quantum_fisher = quantum_fisher_matrix(psi, quads);
    out.truncation_tail = psi.vector().tail(2).squaredNorm();
    return out;
}

ProductStateFisherCheck random_product_state_fisher(const SpinNetwork& net, int trials,
                                                    std::uint64_t seed) {
    const FullQubitSpin full(net);
    std::vector<ComplexMatrix> jperp;
    for (Eigen::Index k = 0; k < net.modes(); ++k) {
        jperp.push_back(full.jx(k));
        jperp.push_back(full.jy(k));
    }
    const ObservableSet family(jperp, "J_perp");
    const RealSymMatrix f_sn = shot_noise_jperp(net);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const Eigen::Index total = net.total_particles();

    ProductStateFisherCheck out;
    out.min_slack = std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        Vector theta(total), phi(total);
        for (Eigen::Index q = 0; q < total; ++q) {
            theta[q] = std::acos(2.0 * u01(rng) - 1.0);
            phi[q] = 2.0 * M_PI * u01(rng);
        }
        const QuantumState psi = full.product_state(theta, phi);
        const RealSymMatrix fq = quantum_fisher_matrix(psi, family);
        const RealSymMatrix diff(f_sn.mat() - fq.mat());
        const double lam_min = sym_eig(diff).eigenvalues.minCoeff();
        if (lam_min < -1e-8 * std::max(1.0, f_sn.mat().maxCoeff())) ++out.violations;
        out.max_excess = std::max(out.max_excess, -lam_min);
        out.min_slack = std::min(out.min_slack, diff.mat().diagonal().minCoeff());
    }
    return out;
}

CauchySchwarzCheck cauchy_schwarz_lemma_test(Eigen::Index rows, Eigen::Index cols_a,
                                             Eigen::Index cols_b, int trials,
                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const auto randm = [&](Eigen::Index r, Eigen::Index c) {
        Matrix m(r, c);
        for (Eigen::Index i = 0; i < r; ++i) {
            for (Eigen::Index j = 0; j < c; ++j) m(i, j) = normal(rng);
        }
        return m;
    };

    CauchySchwarzCheck out;
    for (int t = 0; t < trials; ++t) {
        const Matrix a = randm(rows, cols_a);
        const Matrix b = randm(rows, cols_b);
        const Matrix gram = b.transpose() * b;
        const Matrix d =
            a.transpose() * a - a.transpose() * b * pinv(gram) * b.transpose() * a;
        const double scale = std::max(1.0, (a.transpose() * a).cwiseAbs().maxCoeff());
        const double lam_min =
            sym_eig(RealSymMatrix(0.5 * (d + d.transpose().eval()))).eigenvalues.minCoeff();
        if (lam_min < -1e-9 * scale) ++out.violations;
        out.max_psd_violation = std::max(out.max_psd_violation, -lam_min / scale);

        const Matrix a_sat = b * randm(cols_b, cols_a);
        const Matrix d_sat = a_sat.transpose() * a_sat -
                             a_sat.transpose() * b * pinv(gram) * b.transpose() * a_sat;
        const double sat_scale =
            std::max(1.0, (a_sat.transpose() * a_sat).cwiseAbs().maxCoeff());
        out.max_saturation_residual = std::max(
            out.max_saturation_residual, d_sat.cwiseAbs().maxCoeff() / sat_scale);
    }
    return out;
}

}  // namespace msq
