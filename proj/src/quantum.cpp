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

#include "msqueeze/quantum.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

namespace msq {

namespace {

constexpr double kStateTol = 1e-10;
constexpr double kImagTol = 1e-10;
constexpr double kRowOrthoTol = 1e-10;
constexpr double kPovmTol = 1e-10;
constexpr double kProbFloor = 1e-12;
constexpr double kSupportFloor = 1e-12;
constexpr double kSaturationTol = 1e-8;
constexpr double kDegenerateTol = 1e-10;
constexpr double kShotNoiseSlack = 1e-9;
constexpr double kInfiniteTol = 1e-8;

// Tr(a * b) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a.transpose().cwiseProduct(b)).sum();
}

void require_same_dim(const QuantumState& state, const ObservableSet& ops) {
    if (ops.size() == 0) {
        throw DimensionError("observable family is empty");
    }
    if (ops.dim() != state.dim()) {
        throw DimensionError("observable dimension does not match the state");
    }
}

void require_row_orthonormal(const Matrix& r, const char* what) {
    const Matrix gram = r * r.transpose();
    const Matrix eye = Matrix::Identity(r.rows(), r.rows());
    if ((gram - eye).cwiseAbs().maxCoeff() > kRowOrthoTol) {
        throw DomainError(std::string(what) + ": rows are not orthonormal");
    }
}

}  // namespace

QuantumState QuantumState::pure(ComplexVector psi) {
    if (psi.size() == 0) {
        throw DimensionError("QuantumState::pure: empty vector");
    }
    if (!psi.allFinite()) {
        throw DomainError("QuantumState::pure: non-finite amplitudes");
    }
    const double n = psi.norm();
    if (std::abs(n - 1.0) > kStateTol) {
        throw DomainError("QuantumState::pure: norm deviates from 1 by " +
                          std::to_string(std::abs(n - 1.0)));
    }
    QuantumState s;
    s.psi_ = psi / n;
    return s;
}

QuantumState QuantumState::density(ComplexMatrix rho) {
    HermitianOp h(std::move(rho));
    const double tr = h.mat().trace().real();
    if (std::abs(tr - 1.0) > kStateTol) {
        throw DomainError("QuantumState::density: trace deviates from 1 by " +
                          std::to_string(std::abs(tr - 1.0)));
    }
    const Vector evals = herm_eig(h).eigenvalues;
    if (evals.minCoeff() < -kStateTol) {
        throw DomainError("QuantumState::density: negative eigenvalue " +
                          std::to_string(evals.minCoeff()));
    }
    QuantumState s;
    s.rho_ = h.mat() / tr;
    return s;
}

Complex QuantumState::expectation(const ComplexMatrix& op) const {
    if (op.rows() != dim() || op.cols() != dim()) {
        throw DimensionError("expectation: operator dimension mismatch");
    }
    if (is_pure()) {
        return psi_.dot(op * psi_);
    }
    return trace_product(rho_, op);
}

double QuantumState::expectation_real(const ComplexMatrix& op) const {
    const Complex e = expectation(op);
    const double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
    if (std::abs(e.imag()) > kImagTol * scale) {
        throw DomainError("expectation_real: imaginary residue " +
                          std::to_string(e.imag()));
    }
    return e.real();
}

ComplexVector QuantumState::apply(const ComplexMatrix& op) const {
    if (!is_pure()) {
        throw DomainError("apply: state is not pure");
    }
    return op * psi_;
}

ComplexMatrix QuantumState::density_matrix() const {
    if (is_pure()) {
        return psi_ * psi_.adjoint();
    }
    return rho_;
}

const ComplexVector& QuantumState::vector() const {
    if (!is_pure()) {
        throw DomainError("vector: state is not pure");
    }
    return psi_;
}

ObservableSet::ObservableSet(std::vector<ComplexMatrix> ops, std::string label)
    : label_(std::move(label)) {
    if (ops.empty()) {
        throw DimensionError("ObservableSet: empty family");
    }
    ops_.reserve(ops.size());
    const Eigen::Index d = ops[0].rows();
    for (auto& op : ops) {
        if (op.rows() != d || op.cols() != d) {
            throw DimensionError("ObservableSet: inconsistent dimensions");
        }
        ops_.push_back(HermitianOp(std::move(op)).mat());
    }
}

ObservableSet ObservableSet::transformed(const Matrix& w, std::string label) const {
    if (w.cols() != size()) {
        throw DimensionError("transformed: coefficient columns must match family size");
    }
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<size_t>(w.rows()));
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        ComplexMatrix b = ComplexMatrix::Zero(dim(), dim());
        for (Eigen::Index k = 0; k < size(); ++k) {
            if (w(i, k) != 0.0) b += w(i, k) * op(k);
        }
        out.push_back(std::move(b));
    }
    return ObservableSet(std::move(out), std::move(label));
}

TransformPair::TransformPair(Matrix r_in, Matrix s_in)
    : r(std::move(r_in)), s(std::move(s_in)) {
    if (r.cols() != s.cols()) {
        throw DimensionError("TransformPair: R and S must share the accessible family");
    }
    require_row_orthonormal(r, "TransformPair R");
    require_row_orthonormal(s, "TransformPair S");
}

QuantumState evolve(const QuantumState& state, const ObservableSet& h, const Vector& theta) {
    require_same_dim(state, h);
    if (theta.size() != h.size()) {
        throw DimensionError("evolve: theta size must match the generator count");
    }
    ComplexMatrix g = ComplexMatrix::Zero(h.dim(), h.dim());
    for (Eigen::Index k = 0; k < h.size(); ++k) g += theta[k] * h.op(k);
    const HermEig eig = herm_eig(HermitianOp(g));
    ComplexVector phases(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) {
        phases[i] = std::exp(Complex(0.0, -eig.eigenvalues[i]));
    }
    if (state.is_pure()) {
        ComplexVector c = eig.eigenvectors.adjoint() * state.vector();
        c.array() *= phases.array();
        return QuantumState::pure(eig.eigenvectors * c);
    }
    const ComplexMatrix u =
        eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
    return QuantumState::density(u * state.density_matrix() * u.adjoint());
}

RealSymMatrix covariance_matrix(const QuantumState& state, const ObservableSet& a) {
    require_same_dim(state, a);
    const Eigen::Index k = a.size();
    Vector means(k);
    Matrix gamma(k, k);
    if (state.is_pure()) {
        std::vector<ComplexVector> applied;
        applied.reserve(static_cast<size_t>(k));
        for (Eigen::Index i = 0; i < k; ++i) applied.push_back(state.apply(a.op(i)));
        for (Eigen::Index i = 0; i < k; ++i) {
            means[i] = state.vector().dot(applied[static_cast<size_t>(i)]).real();
        }
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = i; j < k; ++j) {
                const Complex corr =
                    applied[static_cast<size_t>(i)].dot(applied[static_cast<size_t>(j)]);
                gamma(i, j) = gamma(j, i) = corr.real() - means[i] * means[j];
            }
        }
    } else {
        const ComplexMatrix rho = state.density_matrix();
        std::vector<ComplexMatrix> products;
        products.reserve(static_cast<size_t>(k));
        for (Eigen::Index i = 0; i < k; ++i) products.push_back(rho * a.op(i));
        for (Eigen::Index i = 0; i < k; ++i) {
            means[i] = products[static_cast<size_t>(i)].trace().real();
        }
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = i; j < k; ++j) {
                const Complex corr =
                    trace_product(products[static_cast<size_t>(i)], a.op(j));
                gamma(i, j) = gamma(j, i) = corr.real() - means[i] * means[j];
            }
        }
    }
    return RealSymMatrix(gamma);
}

Matrix commutator_matrix(const QuantumState& state, const ObservableSet& x,
                         const ObservableSet& h) {
    require_same_dim(state, x);
    require_same_dim(state, h);
    Matrix c(x.size(), h.size());
    if (state.is_pure()) {
        std::vector<ComplexVector> xs, hs;
        for (Eigen::Index i = 0; i < x.size(); ++i) xs.push_back(state.apply(x.op(i)));
        for (Eigen::Index j = 0; j < h.size(); ++j) hs.push_back(state.apply(h.op(j)));
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            for (Eigen::Index j = 0; j < h.size(); ++j) {
                // -i<[X,H]> = 2 Im <X H>
                c(i, j) = 2.0 * xs[static_cast<size_t>(i)].dot(hs[static_cast<size_t>(j)]).imag();
            }
        }
    } else {
        const ComplexMatrix rho = state.density_matrix();
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const ComplexMatrix rx = rho * x.op(i);
            for (Eigen::Index j = 0; j < h.size(); ++j) {
                c(i, j) = -2.0 * trace_product(rx, h.op(j)).imag();
            }
        }
    }
    return c;
}

RealSymMatrix moment_from_blocks(const RealSymMatrix& gamma, const Matrix& c,
                                 double rel_cutoff) {
    if (gamma.dim() != c.rows()) {
        throw DimensionError("moment_from_blocks: Gamma and C are incompatible");
    }
    const Matrix m = c.transpose() * pinv(gamma.mat(), rel_cutoff) * c;
    return RealSymMatrix(0.5 * (m + m.transpose().eval()));
}

MomentReport moment_matrix(const QuantumState& state, const ObservableSet& h,
                           const ObservableSet& x, const Vector& theta) {
    RealSymMatrix gamma = covariance_matrix(state, x);
    Matrix c = commutator_matrix(state, x, h);
    const Eigen::Index m = h.size();
    MomentReport report{moment_from_blocks(gamma, c), std::move(gamma), std::move(c),
                        theta.size() > 0 ? theta : Vector::Zero(m)};
    report.gamma_rank = numerical_rank(report.covariance.mat());
    report.redundant_observables =
        report.gamma_rank < m || numerical_rank(report.commutator) < m;
    return report;
}

AccessibleMoment accessible_moment_matrix(const QuantumState& state, const ObservableSet& a) {
    RealSymMatrix gamma = covariance_matrix(state, a);
    Matrix ctilde = commutator_matrix(state, a, a);
    const double scale = std::max(1.0, ctilde.cwiseAbs().maxCoeff());
    if ((ctilde + ctilde.transpose()).cwiseAbs().maxCoeff() > kImagTol * scale) {
        throw DomainError("accessible_moment_matrix: commutator matrix is not antisymmetric");
    }
    RealSymMatrix moment = moment_from_blocks(gamma, ctilde);
    return AccessibleMoment{std::move(moment), std::move(gamma), std::move(ctilde)};
}

RealSymMatrix optimal_moment_matrix(const QuantumState& state, const Matrix& r,
                                    const ObservableSet& a) {
    if (r.cols() != a.size()) {
        throw DimensionError("optimal_moment_matrix: R columns must match family size");
    }
    require_row_orthonormal(r, "optimal_moment_matrix");
    const AccessibleMoment acc = accessible_moment_matrix(state, a);
    const Matrix m = r * acc.moment.mat() * r.transpose();
    return RealSymMatrix(0.5 * (m + m.transpose().eval()));
}

Matrix optimal_observable_coeffs(const RealSymMatrix& gamma, const Matrix& ctilde,
                                 const Matrix& r, const Matrix& t, double rel_cutoff) {
    Matrix w = r * ctilde.transpose() * pinv(gamma.mat(), rel_cutoff);
    if (t.size() > 0) {
        if (t.rows() != r.rows() || t.cols() != r.rows()) {
            throw DimensionError("optimal_observable_coeffs: T must be M x M");
        }
        if (numerical_rank(t) < t.rows()) {
            throw DomainError("optimal_observable_coeffs: T must be invertible");
        }
        w = t * w;
    }
    return w;
}

OptimalObservables optimal_observables(const QuantumState& state, const Matrix& r,
                                       const ObservableSet& a, const Matrix& t) {
    if (r.cols() != a.size()) {
        throw DimensionError("optimal_observables: R columns must match family size");
    }
    require_row_orthonormal(r, "optimal_observables");
    const AccessibleMoment acc = accessible_moment_matrix(state, a);
    const Matrix w = optimal_observable_coeffs(acc.covariance, acc.commutator, r, t);
    ObservableSet xs = a.transformed(w, "X_opt");
    const ObservableSet hs = a.transformed(r, "H_opt");

    const Eigen::Index m = r.rows();
    Matrix norms = Matrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i + 1; j < m; ++j) {
            const ComplexMatrix comm = xs.op(i) * xs.op(j) - xs.op(j) * xs.op(i);
            norms(i, j) = norms(j, i) = comm.cwiseAbs().maxCoeff();
        }
    }

    const Matrix bound = r * acc.moment.mat() * r.transpose();
    const Matrix realized = moment_matrix(state, hs, xs).moment.mat();
    const double resid = (realized - bound).cwiseAbs().maxCoeff() /
                         std::max(1.0, bound.cwiseAbs().maxCoeff());

    OptimalObservables out{std::move(xs), w, std::move(norms), resid < kSaturationTol, resid};
    return out;
}

OptimalHamiltonians optimal_hamiltonians(const QuantumState& state, const ObservableSet& a,
                                         Eigen::Index m) {
    const Eigen::Index l = a.size();
    if (m < 1 || m > l) {
        throw DimensionError("optimal_hamiltonians: parameter count out of range");
    }
    const AccessibleMoment acc = accessible_moment_matrix(state, a);
    const SymEig eig = sym_eig(acc.moment);
    OptimalHamiltonians out;
    out.r = Matrix(m, l);
    for (Eigen::Index k = 0; k < m; ++k) {
        out.r.row(k) = eig.eigenvectors.col(l - 1 - k).transpose();
    }
    if (m < l) {
        const double scale = std::max(1.0, std::abs(eig.eigenvalues[l - 1]));
        const double gap = eig.eigenvalues[l - m] - eig.eigenvalues[l - m - 1];
        if (std::abs(gap) <= kDegenerateTol * scale) {
            out.degenerate_cut = true;
            out.tied_eigenvalue = eig.eigenvalues[l - m];
        }
    }
    return out;
}

std::vector<ComplexMatrix> sld_operators(const QuantumState& state, const ObservableSet& h) {
    require_same_dim(state, h);
    const HermEig eig = herm_eig(HermitianOp(state.density_matrix()));
    const Vector& p = eig.eigenvalues;
    const ComplexMatrix& v = eig.eigenvectors;
    std::vector<ComplexMatrix> slds;
    slds.reserve(static_cast<size_t>(h.size()));
    for (Eigen::Index k = 0; k < h.size(); ++k) {
        const ComplexMatrix ht = v.adjoint() * h.op(k) * v;
        ComplexMatrix lt = ComplexMatrix::Zero(ht.rows(), ht.cols());
        for (Eigen::Index i = 0; i < ht.rows(); ++i) {
            for (Eigen::Index j = 0; j < ht.cols(); ++j) {
                const double denom = p[i] + p[j];
                if (denom > kSupportFloor) {
                    lt(i, j) = Complex(0.0, 2.0) * ht(i, j) * (p[i] - p[j]) / denom;
                }
            }
        }
        slds.push_back(v * lt * v.adjoint());
    }
    return slds;
}

RealSymMatrix quantum_fisher_matrix(const QuantumState& state, const ObservableSet& h) {
    require_same_dim(state, h);
    if (state.is_pure()) {
        return RealSymMatrix(4.0 * covariance_matrix(state, h).mat());
    }
    const std::vector<ComplexMatrix> slds = sld_operators(state, h);
    const ComplexMatrix rho = state.density_matrix();
    const Eigen::Index m = h.size();
    Matrix f(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const ComplexMatrix rl = rho * slds[static_cast<size_t>(k)];
        for (Eigen::Index l = k; l < m; ++l) {
            f(k, l) = f(l, k) = trace_product(rl, slds[static_cast<size_t>(l)]).real();
        }
    }
    return RealSymMatrix(f);
}

RealSymMatrix classical_fisher_matrix(const QuantumState& state,
                                      const std::vector<ComplexMatrix>& povm,
                                      const ObservableSet& h) {
    if (povm.empty()) {
        throw DimensionError("classical_fisher_matrix: empty POVM");
    }
    ComplexMatrix sum = ComplexMatrix::Zero(state.dim(), state.dim());
    for (const auto& e : povm) sum += e;
    const ComplexMatrix eye = ComplexMatrix::Identity(state.dim(), state.dim());
    if ((sum - eye).cwiseAbs().maxCoeff() > kPovmTol) {
        throw DomainError("classical_fisher_matrix: POVM does not resolve the identity");
    }
    const ObservableSet elements(povm, "POVM");
    const Matrix dp = commutator_matrix(state, elements, h);
    const Eigen::Index m = h.size();
    Matrix f = Matrix::Zero(m, m);
    for (Eigen::Index x = 0; x < elements.size(); ++x) {
        const double px = state.expectation_real(elements.op(x));
        if (px <= kProbFloor) continue;
        f += dp.row(x).transpose() * dp.row(x) / px;
    }
    return RealSymMatrix(f);
}

SqueezingReport squeezing_matrix(const RealSymMatrix& moment, const RealSymMatrix& shot_noise) {
    if (moment.dim() != shot_noise.dim()) {
        throw DimensionError("squeezing_matrix: dimension mismatch");
    }
    const Eigen::Index m = moment.dim();
    const Matrix s = sym_sqrt(shot_noise).mat();
    const Matrix mp = pinv(moment.mat());
    const Matrix x = s * mp * s;
    SqueezingReport report{RealSymMatrix(0.5 * (x + x.transpose().eval())), shot_noise,
                           Vector::Zero(m)};

    const SymEig eig = sym_eig(report.xi2);
    report.eigenvalues = eig.eigenvalues;

    // Directions whose shot-noise image leaves the range of the moment
    // matrix have diverging uncertainty even though the pseudoinverse
    // reports a finite (deceptively small) eigenvalue.
    const Matrix range_proj = moment.mat() * mp;
    for (Eigen::Index i = 0; i < m; ++i) {
        const Vector su = s * eig.eigenvectors.col(i);
        const double resid = (su - range_proj * su).norm() / std::max(1.0, su.norm());
        if (resid > kInfiniteTol) {
            report.eigenvalues[i] = std::numeric_limits<double>::infinity();
        }
    }
    // Replacing pseudoinverse zeros by infinities breaks the ascending
    // order, so restore it and record where the divergent directions ended
    // up.
    std::sort(report.eigenvalues.data(), report.eigenvalues.data() + m);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (std::isinf(report.eigenvalues[i])) report.infinite_directions.push_back(i);
    }
    report.infinite_uncertainty = !report.infinite_directions.empty();
    for (Eigen::Index i = 0; i < m; ++i) {
        if (report.eigenvalues[i] < 1.0 - kShotNoiseSlack) ++report.shot_noise_rank;
    }
    report.full_multiparameter_squeezing = report.shot_noise_rank == m;
    return report;
}

}  // namespace msq
