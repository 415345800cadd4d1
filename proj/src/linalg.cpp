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

#include "msqueeze/linalg.hpp"

#include <cmath>

namespace msq {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kSignFloor = 1e-8;

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) {
        throw DecompositionError(std::string(what) + ": non-finite input");
    }
}

void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.allFinite()) {
        throw DecompositionError(std::string(what) + ": non-finite input");
    }
}

}  // namespace

RealSymMatrix::RealSymMatrix(Matrix m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("RealSymMatrix: matrix is not square");
    }
    require_finite(m, "RealSymMatrix");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol * scale) {
        throw DomainError("RealSymMatrix: asymmetry " + std::to_string(asym) +
                          " exceeds tolerance");
    }
    m_ = 0.5 * (m + m.transpose().eval());
}

RealSymMatrix RealSymMatrix::identity(Eigen::Index n) {
    return RealSymMatrix(Matrix::Identity(n, n));
}

RealSymMatrix RealSymMatrix::zero(Eigen::Index n) {
    return RealSymMatrix(Matrix::Zero(n, n));
}

HermitianOp::HermitianOp(ComplexMatrix m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("HermitianOp: matrix is not square");
    }
    require_finite(m, "HermitianOp");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > kSymmetryTol * scale) {
        throw DomainError("HermitianOp: deviation from Hermiticity " +
                          std::to_string(dev) + " exceeds tolerance");
    }
    m_ = 0.5 * (m + m.adjoint().eval());
}

SymEig sym_eig(const RealSymMatrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat());
    if (solver.info() != Eigen::Success) {
        throw DecompositionError("sym_eig: eigensolver did not converge");
    }
    SymEig out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) {
        for (Eigen::Index i = 0; i < out.eigenvectors.rows(); ++i) {
            const double v = out.eigenvectors(i, k);
            if (std::abs(v) > kSignFloor) {
                if (v < 0) out.eigenvectors.col(k) *= -1.0;
                break;
            }
        }
    }
    return out;
}

HermEig herm_eig(const HermitianOp& a) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.mat());
    if (solver.info() != Eigen::Success) {
        throw DecompositionError("herm_eig: eigensolver did not converge");
    }
    HermEig out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) {
        for (Eigen::Index i = 0; i < out.eigenvectors.rows(); ++i) {
            const Complex v = out.eigenvectors(i, k);
            if (std::abs(v) > kSignFloor) {
                out.eigenvectors.col(k) *= std::conj(v) / std::abs(v);
                break;
            }
        }
    }
    return out;
}

bool loewner_geq(const RealSymMatrix& a, const RealSymMatrix& b, double tol) {
    if (a.dim() != b.dim()) {
        throw DimensionError("loewner_geq: dimension mismatch");
    }
    const RealSymMatrix diff(a.mat() - b.mat());
    const double scale = std::max(1.0, diff.mat().cwiseAbs().maxCoeff());
    const Vector evals = sym_eig(diff).eigenvalues;
    return evals.minCoeff() >= -tol * scale;
}

RealSymMatrix sym_sqrt(const RealSymMatrix& a, double tol) {
    SymEig eig = sym_eig(a);
    const double scale = std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff());
    Vector roots(eig.eigenvalues.size());
    for (Eigen::Index i = 0; i < roots.size(); ++i) {
        const double lam = eig.eigenvalues[i];
        if (lam < -tol * scale) {
            throw DomainError("sym_sqrt: eigenvalue " + std::to_string(lam) +
                              " is negative beyond tolerance");
        }
        roots[i] = std::sqrt(std::max(0.0, lam));
    }
    Matrix root = eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.transpose();
    return RealSymMatrix(root);
}

Matrix pinv(const Matrix& a, double rel_cutoff) {
    require_finite(a, "pinv");
    if (a.size() == 0) return Matrix(a.cols(), a.rows());
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& s = svd.singularValues();
    const double cutoff = rel_cutoff * (s.size() > 0 ? s[0] : 0.0);
    Vector inv = Vector::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s[i] > cutoff && s[i] > 0.0) inv[i] = 1.0 / s[i];
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Eigen::Index numerical_rank(const Matrix& a, double rel_cutoff) {
    require_finite(a, "numerical_rank");
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(a);
    const Vector& s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0) return 0;
    const double cutoff = rel_cutoff * s[0];
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s[i] > cutoff) ++rank;
    }
    return rank;
}

Matrix symplectic_form(Eigen::Index modes) {
    if (modes < 1) {
        throw DimensionError("symplectic_form: mode count must be positive");
    }
    Matrix omega = Matrix::Zero(2 * modes, 2 * modes);
    for (Eigen::Index k = 0; k < modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

bool is_orthogonal_symplectic(const Matrix& v, double tol) {
    if (v.rows() != v.cols()) {
        throw DimensionError("is_orthogonal_symplectic: matrix is not square");
    }
    if (v.rows() % 2 != 0) {
        throw DimensionError("is_orthogonal_symplectic: size must be even");
    }
    require_finite(v, "is_orthogonal_symplectic");
    const Eigen::Index m = v.rows() / 2;
    const Matrix omega = symplectic_form(m);
    const Matrix eye = Matrix::Identity(v.rows(), v.rows());
    const double orth = (v * v.transpose() - eye).cwiseAbs().maxCoeff();
    const double symp = (v * omega * v.transpose() - omega).cwiseAbs().maxCoeff();
    return orth <= tol && symp <= tol;
}

}  // namespace msq
