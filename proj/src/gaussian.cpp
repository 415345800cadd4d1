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

#include "msqueeze/gaussian.hpp"

#include <Eigen/QR>
#include <cmath>
#include <utility>
#include <vector>

namespace msq {

namespace {

constexpr double kOrthoTol = 1e-10;
constexpr double kUncertaintyTol = 1e-9;
constexpr double kPurityTol = 1e-9;

void require_even_dim(const RealSymMatrix& gamma) {
    if (gamma.dim() < 2 || gamma.dim() % 2 != 0) {
        throw DimensionError("GaussianState: covariance must be 2M x 2M with M >= 1");
    }
}

/// B = 4 Omega^T Gamma Omega, the operator whose Rayleigh quotients along
/// encoding rows give squeezing-matrix entries.
Matrix conjugated_covariance(const GaussianState& state) {
    const Matrix omega = symplectic_form(state.modes());
    return 4.0 * omega.transpose() * state.gamma().mat() * omega;
}

}  // namespace

GaussianState::GaussianState(RealSymMatrix gamma, Vector displacement)
    : gamma_(std::move(gamma)), displacement_(std::move(displacement)) {
    require_even_dim(gamma_);
    modes_ = gamma_.dim() / 2;
    if (displacement_.size() == 0) {
        displacement_ = Vector::Zero(gamma_.dim());
    } else if (displacement_.size() != gamma_.dim()) {
        throw DimensionError("GaussianState: displacement length must match 2M");
    }
    if (!displacement_.allFinite() || !gamma_.mat().allFinite()) {
        throw DomainError("GaussianState: non-finite entries");
    }
    const Matrix omega = symplectic_form(modes_);
    ComplexMatrix heisenberg = gamma_.mat().cast<Complex>() + Complex(0.0, 0.25) * omega.cast<Complex>();
    const HermEig eig = herm_eig(HermitianOp(std::move(heisenberg)));
    const double scale = std::max(1.0, gamma_.mat().cwiseAbs().maxCoeff());
    if (eig.eigenvalues(0) < -kUncertaintyTol * scale) {
        throw DomainError("GaussianState: covariance violates the uncertainty relation");
    }
}

GaussianState::GaussianState(RealSymMatrix gamma)
    : GaussianState(std::move(gamma), Vector()) {}

GaussianState GaussianState::vacuum(Eigen::Index modes) {
    if (modes < 1) {
        throw DimensionError("GaussianState::vacuum: mode count must be positive");
    }
    Matrix gamma = 0.25 * Matrix::Identity(2 * modes, 2 * modes);
    return GaussianState(RealSymMatrix(gamma), Vector::Zero(2 * modes));
}

bool GaussianState::is_pure() const {
    const double det = (4.0 * gamma_.mat()).determinant();
    return std::abs(det - 1.0) <= kPurityTol;
}

GaussianState squeezed_vacuum(const SqueezedVacuumSpec& spec) {
    const Eigen::Index m = spec.r.size();
    if (m < 1) {
        throw DimensionError("squeezed_vacuum: need at least one mode");
    }
    if (spec.o.rows() != 2 * m || spec.o.cols() != 2 * m) {
        throw DimensionError("squeezed_vacuum: passive transform must be 2M x 2M");
    }
    if (!spec.r.allFinite()) {
        throw DomainError("squeezed_vacuum: squeezing parameters must be finite");
    }
    if (!is_orthogonal_symplectic(spec.o, kOrthoTol)) {
        throw DomainError("squeezed_vacuum: passive transform must be orthogonal symplectic");
    }
    Vector diag(2 * m);
    for (Eigen::Index k = 0; k < m; ++k) {
        diag(2 * k) = std::exp(2.0 * spec.r(k));
        diag(2 * k + 1) = std::exp(-2.0 * spec.r(k));
    }
    Matrix gamma = 0.25 * spec.o.transpose() * diag.asDiagonal() * spec.o;
    return GaussianState(RealSymMatrix(std::move(gamma)), Vector::Zero(2 * m));
}

RealSymMatrix cv_moment_matrix(const GaussianState& state) {
    const SymEig eig = sym_eig(state.gamma());
    const double lambda_max = eig.eigenvalues.cwiseAbs().maxCoeff();
    if (eig.eigenvalues(0) <= 1e-14 * std::max(1.0, lambda_max)) {
        throw SingularMatrixError("cv_moment_matrix: covariance is numerically singular");
    }
    const Matrix inverse =
        eig.eigenvectors * eig.eigenvalues.cwiseInverse().asDiagonal() * eig.eigenvectors.transpose();
    const Matrix omega = symplectic_form(state.modes());
    return RealSymMatrix(0.25 * omega.transpose() * inverse * omega);
}

SqueezingReport cv_squeezing_matrix(const GaussianState& state, const Matrix& encoding) {
    const Eigen::Index m = encoding.rows();
    if (m < 1 || encoding.cols() != 2 * state.modes()) {
        throw DimensionError("cv_squeezing_matrix: encoding must be K x 2M with K >= 1");
    }
    const Matrix omega = symplectic_form(state.modes());
    const Matrix gram = encoding * encoding.transpose();
    if ((gram - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > kOrthoTol) {
        throw DomainError("cv_squeezing_matrix: encoding rows must be orthonormal");
    }
    if ((encoding * omega * encoding.transpose()).cwiseAbs().maxCoeff() > kOrthoTol) {
        throw NoncommutingEncoding("cv_squeezing_matrix: generators do not commute");
    }
    SqueezingReport report{
        RealSymMatrix(encoding * conjugated_covariance(state) * encoding.transpose()),
        RealSymMatrix::identity(m),
        Vector(),
        0,
        false,
        false,
        {}};
    const SymEig eig = sym_eig(report.xi2);
    report.eigenvalues = eig.eigenvalues;
    report.shot_noise_rank = 0;
    for (Eigen::Index k = 0; k < m; ++k) {
        if (report.eigenvalues(k) < 1.0 - 1e-9) {
            ++report.shot_noise_rank;
        }
    }
    report.full_multiparameter_squeezing = report.shot_noise_rank == m;
    report.infinite_uncertainty = false;
    return report;
}

Matrix optimal_cv_encoding(const GaussianState& state) {
    const Eigen::Index m = state.modes();
    const Eigen::Index dim = 2 * m;
    const Matrix omega = symplectic_form(m);
    const Matrix b = conjugated_covariance(state);

    Matrix rows(m, dim);
    // Orthonormal columns spanning the still-admissible subspace; removing
    // span{u, Omega u} after each accepted row keeps it Omega-invariant, so
    // a full set of commuting rows always exists.
    Matrix basis = Matrix::Identity(dim, dim);
    for (Eigen::Index k = 0; k < m; ++k) {
        const RealSymMatrix restricted(basis.transpose() * b * basis);
        const SymEig eig = sym_eig(restricted);
        Vector u = basis * eig.eigenvectors.col(0);
        u.normalize();
        rows.row(k) = u.transpose();
        if (k + 1 == m) {
            break;
        }
        const Eigen::Index d = basis.cols();
        Matrix pair(d, 2);
        pair.col(0) = basis.transpose() * u;
        pair.col(1) = basis.transpose() * (omega * u);
        Eigen::HouseholderQR<Matrix> qr(pair);
        const Matrix full_q = qr.householderQ() * Matrix::Identity(d, d);
        basis = basis * full_q.rightCols(d - 2);
    }

    const double orth = (rows * rows.transpose() - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
    if (orth > kOrthoTol) {
        throw DecompositionError("optimal_cv_encoding: constructed rows lost orthonormality");
    }
    const double iso = (rows * omega * rows.transpose()).cwiseAbs().maxCoeff();
    if (iso > kOrthoTol) {
        throw NoncommutingEncoding("optimal_cv_encoding: constructed generators do not commute");
    }
    return rows;
}

SimonCheck simon_check(const GaussianState& state) {
    SimonCheck out;
    const SymEig eig = sym_eig(state.gamma());
    out.lambda_min = eig.eigenvalues(0);
    out.squeezed = out.lambda_min < 0.25 - 1e-12;
    out.witness = optimal_cv_encoding(state);
    const SqueezingReport report = cv_squeezing_matrix(state, out.witness);
    out.witness_min_xi2 = report.eigenvalues(0);
    return out;
}

Matrix basis_change_W(const std::vector<Vector>& n_basis) {
    const Eigen::Index m = static_cast<Eigen::Index>(n_basis.size());
    if (m < 1) {
        throw DimensionError("basis_change_W: need at least one basis vector");
    }
    Matrix stacked(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        if (n_basis[static_cast<size_t>(k)].size() != m) {
            throw DimensionError("basis_change_W: basis vectors must have length M");
        }
        stacked.row(k) = n_basis[static_cast<size_t>(k)].transpose();
    }
    const double orth = (stacked * stacked.transpose() - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
    if (orth > kOrthoTol) {
        throw DomainError("basis_change_W: basis is not orthonormal");
    }
    Matrix w = Matrix::Zero(2 * m, 2 * m);
    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index j = 0; j < m; ++j) {
            w(2 * k, 2 * j) = stacked(k, j);
            w(2 * k + 1, 2 * j + 1) = stacked(k, j);
        }
    }
    return w;
}

Matrix canonical_mode_encoding(Eigen::Index modes) {
    if (modes < 1) {
        throw DimensionError("canonical_mode_encoding: mode count must be positive");
    }
    Matrix r = Matrix::Zero(modes, 2 * modes);
    for (Eigen::Index k = 0; k < modes; ++k) {
        r(k, 2 * k) = 1.0;
    }
    return r;
}

MsepAllocation msep_allocation(const Vector& n, double total_photons, double tol) {
    const Eigen::Index m = n.size();
    if (m < 1) {
        throw DimensionError("msep_allocation: direction must have at least one component");
    }
    if (!n.allFinite() || std::abs(n.norm() - 1.0) > 1e-10) {
        throw DomainError("msep_allocation: direction must be a unit vector");
    }
    for (Eigen::Index k = 0; k < m; ++k) {
        if (std::abs(n(k)) < 1e-12) {
            throw DomainError(
                "msep_allocation: direction component " + std::to_string(k) +
                " is zero; the mode takes no squeezing, drop it and rerun with fewer modes");
        }
    }
    if (!(total_photons > 0.0) || !std::isfinite(total_photons)) {
        throw DomainError("msep_allocation: total photon number must be positive");
    }
    if (!(tol > 0.0)) {
        throw DomainError("msep_allocation: tolerance must be positive");
    }

    // Photon count as a function of the common stationarity factor t, with
    // r_k(t) = (1/4) log(1 + n_k^2 t); strictly increasing in t.
    const auto photons = [&](double t) {
        double sum = 0.0;
        for (Eigen::Index k = 0; k < m; ++k) {
            const double s = std::sinh(0.25 * std::log1p(n(k) * n(k) * t));
            sum += s * s;
        }
        return sum;
    };

    double lo = 0.0;
    double hi = 1.0;
    int growth = 0;
    while (photons(hi) < total_photons && growth < 2000) {
        lo = hi;
        hi *= 2.0;
        ++growth;
    }
    if (photons(hi) < total_photons) {
        throw DecompositionError("msep_allocation: failed to bracket the photon constraint");
    }
    for (int iter = 0; iter < 4000 && (hi - lo) > 1e-16 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (photons(mid) < total_photons) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double t = 0.5 * (lo + hi);

    MsepAllocation out;
    out.r = Vector(m);
    out.multiplier = t;
    out.variance = 0.0;
    double photon_sum = 0.0;
    double stationarity = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
        out.r(k) = 0.25 * std::log1p(n(k) * n(k) * t);
        out.variance += n(k) * n(k) * std::exp(-2.0 * out.r(k));
        const double s = std::sinh(out.r(k));
        photon_sum += s * s;
        stationarity = std::max(stationarity, std::abs(std::expm1(4.0 * out.r(k)) / t - n(k) * n(k)));
    }
    out.photon_residual = std::abs(photon_sum - total_photons);
    out.stationarity_residual = stationarity;
    if (out.photon_residual > tol * std::max(1.0, total_photons) || out.stationarity_residual > tol) {
        throw DecompositionError("msep_allocation: optimality residuals exceed the tolerance");
    }
    return out;
}

MentAllocation ment_allocation(double total_photons) {
    if (!(total_photons >= 0.0) || !std::isfinite(total_photons)) {
        throw DomainError("ment_allocation: total photon number must be non-negative");
    }
    MentAllocation out;
    out.r_prime = std::asinh(std::sqrt(total_photons));
    out.variance = std::exp(-2.0 * out.r_prime);
    return out;
}

std::vector<ModeEntanglementGainRow> fig3_scan(Eigen::Index modes, const Vector& r_grid) {
    if (modes < 2) {
        throw DimensionError("fig3_scan: need at least two modes");
    }
    const double root_m = std::sqrt(static_cast<double>(modes));
    std::vector<ModeEntanglementGainRow> rows;
    rows.reserve(static_cast<size_t>(r_grid.size()));
    for (Eigen::Index i = 0; i < r_grid.size(); ++i) {
        const double r = r_grid(i);
        if (!(r >= 0.0) || !std::isfinite(r)) {
            throw DomainError("fig3_scan: squeezing parameters must be non-negative");
        }
        ModeEntanglementGainRow row;
        row.r = r;
        const double r_prime = std::asinh(root_m * std::sinh(r));
        row.ratio = std::exp(-2.0 * (r_prime - r));
        row.approx_small_r = std::exp(-2.0 * (root_m - 1.0) * r);
        row.approx_large_r = 1.0 / static_cast<double>(modes);
        rows.push_back(row);
    }
    return rows;
}

double max_variance_identity(double total_photons) {
    if (!(total_photons >= 0.0) || !std::isfinite(total_photons)) {
        throw DomainError("max_variance_identity: mean photon number must be non-negative");
    }
    const double n = total_photons;
    const double value = 2.0 * n + 1.0 + 2.0 * std::sqrt(n * (n + 1.0));
    const double reference = std::exp(2.0 * std::asinh(std::sqrt(n)));
    if (std::abs(value - reference) > 1e-12 * std::max(1.0, value)) {
        throw DecompositionError("max_variance_identity: closed form deviates from e^{2r}");
    }
    return value;
}

Matrix random_orthogonal_symplectic(std::mt19937_64& rng, Eigen::Index modes) {
    if (modes < 1) {
        throw DimensionError("random_orthogonal_symplectic: need at least one mode");
    }
    std::normal_distribution<double> dist;
    ComplexMatrix h(modes, modes);
    for (Eigen::Index i = 0; i < modes; ++i) {
        for (Eigen::Index j = 0; j < modes; ++j) {
            h(i, j) = Complex(dist(rng), dist(rng));
        }
    }
    h = 0.5 * (h + h.adjoint().eval());
    const ComplexMatrix u = herm_eig(HermitianOp(h)).eigenvectors;
    Matrix o(2 * modes, 2 * modes);
    for (Eigen::Index j = 0; j < modes; ++j) {
        for (Eigen::Index k = 0; k < modes; ++k) {
            o(2 * j, 2 * k) = std::real(u(j, k));
            o(2 * j, 2 * k + 1) = -std::imag(u(j, k));
            o(2 * j + 1, 2 * k) = std::imag(u(j, k));
            o(2 * j + 1, 2 * k + 1) = std::real(u(j, k));
        }
    }
    return o;
}

}  // namespace msq
