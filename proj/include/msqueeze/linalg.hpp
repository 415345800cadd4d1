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

#ifndef MSQUEEZE_LINALG_HPP
#define MSQUEEZE_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace msq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operands have incompatible shapes.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// Input violates a mathematical precondition (asymmetry, negativity, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// An iterative decomposition failed to converge or met non-finite input.
struct DecompositionError : Error {
    explicit DecompositionError(const std::string& msg) : Error(msg) {}
};

/// A matrix required to be invertible is numerically singular.
struct SingularMatrixError : Error {
    explicit SingularMatrixError(const std::string& msg) : Error(msg) {}
};

/// Real symmetric matrix. The constructor symmetrizes its argument and
/// rejects inputs whose asymmetry exceeds 1e-12 relative to the largest
/// absolute entry.
class RealSymMatrix {
   public:
    explicit RealSymMatrix(Matrix m);

    static RealSymMatrix identity(Eigen::Index n);
    static RealSymMatrix zero(Eigen::Index n);

    const Matrix& mat() const { return m_; }
    double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
    Eigen::Index dim() const { return m_.rows(); }

   private:
    Matrix m_;
};

/// Complex Hermitian operator. The constructor hermitizes its argument and
/// rejects inputs whose deviation from Hermiticity exceeds 1e-12 relative
/// to the largest absolute entry.
class HermitianOp {
   public:
    explicit HermitianOp(ComplexMatrix m);

    const ComplexMatrix& mat() const { return m_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
    Eigen::Index dim() const { return m_.rows(); }

   private:
    ComplexMatrix m_;
};

/// Eigensystem of a real symmetric matrix, eigenvalues ascending.
struct SymEig {
    Vector eigenvalues;
    Matrix eigenvectors;  // column k pairs with eigenvalues[k]
};

/// Eigensystem of a complex Hermitian matrix, eigenvalues ascending.
struct HermEig {
    Vector eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Full eigensystem with eigenvalues in ascending order. To make results
/// reproducible each eigenvector's first component of absolute value above
/// 1e-8 is made positive.
SymEig sym_eig(const RealSymMatrix& a);

/// Hermitian analogue of sym_eig; the sign convention rotates each
/// eigenvector so its first component of absolute value above 1e-8 is real
/// and positive.
HermEig herm_eig(const HermitianOp& a);

/// True when A - B is positive semidefinite up to `tol` relative to the
/// largest absolute entry of the difference (floor 1).
bool loewner_geq(const RealSymMatrix& a, const RealSymMatrix& b, double tol = 1e-9);

/// Symmetric positive-semidefinite square root. Eigenvalues in
/// [-tol*scale, 0) are clamped to zero; anything lower raises DomainError.
RealSymMatrix sym_sqrt(const RealSymMatrix& a, double tol = 1e-10);

/// Moore-Penrose pseudoinverse. Singular values below
/// rel_cutoff * s_max are treated as zero.
Matrix pinv(const Matrix& a, double rel_cutoff = 1e-12);

/// Numerical rank: number of singular values above rel_cutoff * s_max.
Eigen::Index numerical_rank(const Matrix& a, double rel_cutoff = 1e-12);

/// Block-diagonal symplectic form of m modes: Omega = diag(w, ..., w) with
/// w = [[0, 1], [-1, 0]], a 2m x 2m matrix.
Matrix symplectic_form(Eigen::Index modes);

/// True when V is simultaneously orthogonal (V V^T = 1) and symplectic
/// (V Omega V^T = Omega) within `tol`. Raises DimensionError on odd sizes.
bool is_orthogonal_symplectic(const Matrix& v, double tol = 1e-10);

}  // namespace msq

#endif
