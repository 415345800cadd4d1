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

#include "msqueeze/spin.hpp"

#include <cmath>
#include <limits>

#include "msqueeze/minimize.hpp"

namespace msq {

namespace {

constexpr double kZeroMeanFloor = 1e-8;
constexpr double kThetaWindowLo = 1e-6;
constexpr double kThetaWindowHi = 1e-2;
constexpr int kAngleGridPoints = 720;

double db_gain(double xi2) { return -10.0 * std::log10(xi2); }

// Applies a mode-local matrix to the product-space vector: the state is a
// tensor with one index per mode and `op` contracts the index of `mode`.
ComplexVector apply_mode_matrix(const SpinNetwork& net, const ComplexVector& psi,
                                Eigen::Index mode, const ComplexMatrix& op) {
    const Eigen::Index d = net.mode_dim(mode);
    if (op.rows() != d || op.cols() != d) {
        throw DimensionError("apply_mode_matrix: operator does not fit the mode");
    }
    if (psi.size() != net.total_dim()) {
        throw DimensionError("apply_mode_matrix: state size mismatch");
    }
    Eigen::Index stride = 1;
    for (Eigen::Index k = mode + 1; k < net.modes(); ++k) stride *= net.mode_dim(k);
    const Eigen::Index block = stride * d;
    ComplexVector out = ComplexVector::Zero(psi.size());
    for (Eigen::Index base = 0; base < psi.size(); base += block) {
        for (Eigen::Index inner = 0; inner < stride; ++inner) {
            for (Eigen::Index a = 0; a < d; ++a) {
                Complex acc(0.0, 0.0);
                for (Eigen::Index b = 0; b < d; ++b) {
                    acc += op(a, b) * psi[base + inner + b * stride];
                }
                out[base + inner + a * stride] = acc;
            }
        }
    }
    return out;
}

std::vector<ComplexVector> apply_all(const SpinNetwork& net, const ComplexVector& psi,
                                     const std::vector<SpinObservable>& obs) {
    std::vector<ComplexVector> out;
    out.reserve(obs.size());
    for (const auto& o : obs) out.push_back(apply_observable(net, psi, o));
    return out;
}

struct PlanarMoments {
    Matrix gamma;    // 4 x 4 covariance of (Jx1, Jy1, Jx2, Jy2)
    Matrix ctilde;   // 4 x 4 commutator matrix
    Vector mean_z;   // <Jz_k>
    Vector mean_xy;  // means of the four planar components
};

PlanarMoments two_mode_planar_moments(const SpinNetwork& net, const ComplexVector& psi) {
    std::vector<SpinObservable> family;
    for (Eigen::Index k = 0; k < 2; ++k) {
        family.push_back(planar_spin(net, k, 0.0));
        family.push_back(planar_spin(net, k, M_PI / 2.0));
    }
    PlanarMoments pm;
    pm.gamma = spin_covariance(net, psi, family).mat();
    pm.ctilde = spin_commutator(net, psi, family, family);
    pm.mean_z = mean_spin_z(net, psi);
    pm.mean_xy = Vector(4);
    for (Eigen::Index i = 0; i < 4; ++i) {
        pm.mean_xy[i] = spin_expectation(net, psi, family[static_cast<size_t>(i)]);
    }
    return pm;
}

// Quadratic form n^T Xi^2 n of the local-encoding squeezing matrix for
// measurement angles (psi1, psi2) and relative sign `s` between the modes,
// expressed through the planar covariance block.
double pair_xi_form(const PlanarMoments& pm, const Vector& a, double psi1, double psi2,
                    double s) {
    Vector u(4);
    u << a[0] * std::cos(psi1), a[0] * std::sin(psi1), s * a[1] * std::cos(psi2),
        s * a[1] * std::sin(psi2);
    return 0.5 * u.dot(pm.gamma * u);
}

}  // namespace

SpinNetwork::SpinNetwork(std::vector<Eigen::Index> particles_per_mode)
    : particles_(std::move(particles_per_mode)) {
    if (particles_.empty()) {
        throw DimensionError("SpinNetwork: at least one mode required");
    }
    for (Eigen::Index n : particles_) {
        if (n < 1) throw DomainError("SpinNetwork: every mode needs at least one particle");
    }
}

Eigen::Index SpinNetwork::particles(Eigen::Index mode) const {
    if (mode < 0 || mode >= modes()) {
        throw DimensionError("SpinNetwork: mode index out of range");
    }
    return particles_[static_cast<size_t>(mode)];
}

Eigen::Index SpinNetwork::total_particles() const {
    Eigen::Index n = 0;
    for (Eigen::Index p : particles_) n += p;
    return n;
}

Eigen::Index SpinNetwork::total_dim() const {
    Eigen::Index d = 1;
    for (Eigen::Index p : particles_) d *= p + 1;
    return d;
}

SpinOps collective_spin_ops(Eigen::Index n) {
    if (n < 1) throw DomainError("collective_spin_ops: particle count must be positive");
    const Eigen::Index d = n + 1;
    const double j = n / 2.0;
    ComplexMatrix jp = ComplexMatrix::Zero(d, d);  // raising operator J+
    for (Eigen::Index i = 1; i < d; ++i) {
        const double m = j - i;  // basis ordered m = +j, ..., -j
        jp(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const ComplexMatrix jm = jp.adjoint();
    SpinOps ops;
    ops.jx = 0.5 * (jp + jm);
    ops.jy = Complex(0.0, -0.5) * (jp - jm);
    ops.jz = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) ops.jz(i, i) = j - i;
    return ops;
}

SpinObservable planar_spin(const SpinNetwork& net, Eigen::Index mode, double angle,
                           double weight) {
    const SpinOps ops = collective_spin_ops(net.particles(mode));
    SpinObservable obs;
    obs.terms.push_back(
        {weight, mode, std::cos(angle) * ops.jx + std::sin(angle) * ops.jy});
    return obs;
}

ComplexMatrix embed_mode_op(const SpinNetwork& net, Eigen::Index mode,
                            const ComplexMatrix& op) {
    if (op.rows() != net.mode_dim(mode) || op.cols() != net.mode_dim(mode)) {
        throw DimensionError("embed_mode_op: operator does not fit the mode");
    }
    ComplexMatrix out = ComplexMatrix::Ones(1, 1);
    for (Eigen::Index k = 0; k < net.modes(); ++k) {
        const Eigen::Index d = net.mode_dim(k);
        const ComplexMatrix& factor =
            (k == mode) ? op : ComplexMatrix(ComplexMatrix::Identity(d, d));
        ComplexMatrix next(out.rows() * d, out.cols() * d);
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            for (Eigen::Index j = 0; j < out.cols(); ++j) {
                next.block(i * d, j * d, d, d) = out(i, j) * factor;
            }
        }
        out = std::move(next);
    }
    return out;
}

ComplexVector apply_observable(const SpinNetwork& net, const ComplexVector& psi,
                               const SpinObservable& obs) {
    ComplexVector out = ComplexVector::Zero(psi.size());
    for (const auto& term : obs.terms) {
        out += term.weight * apply_mode_matrix(net, psi, term.mode, term.op);
    }
    return out;
}

double spin_expectation(const SpinNetwork& net, const ComplexVector& psi,
                        const SpinObservable& obs) {
    return psi.dot(apply_observable(net, psi, obs)).real();
}

RealSymMatrix spin_covariance(const SpinNetwork& net, const ComplexVector& psi,
                              const std::vector<SpinObservable>& obs) {
    const auto applied = apply_all(net, psi, obs);
    const Eigen::Index k = static_cast<Eigen::Index>(obs.size());
    Vector means(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        means[i] = psi.dot(applied[static_cast<size_t>(i)]).real();
    }
    Matrix gamma(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = i; j < k; ++j) {
            const Complex corr =
                applied[static_cast<size_t>(i)].dot(applied[static_cast<size_t>(j)]);
            gamma(i, j) = gamma(j, i) = corr.real() - means[i] * means[j];
        }
    }
    return RealSymMatrix(gamma);
}

Matrix spin_commutator(const SpinNetwork& net, const ComplexVector& psi,
                       const std::vector<SpinObservable>& x,
                       const std::vector<SpinObservable>& h) {
    const auto xs = apply_all(net, psi, x);
    const auto hs = apply_all(net, psi, h);
    Matrix c(static_cast<Eigen::Index>(x.size()), static_cast<Eigen::Index>(h.size()));
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        for (Eigen::Index j = 0; j < c.cols(); ++j) {
            c(i, j) =
                2.0 * xs[static_cast<size_t>(i)].dot(hs[static_cast<size_t>(j)]).imag();
        }
    }
    return c;
}

QuantumState css_up(const SpinNetwork& net) {
    ComplexVector psi = ComplexVector::Zero(net.total_dim());
    psi[0] = 1.0;  // index 0 carries m = +j in every mode
    return QuantumState::pure(psi);
}

QuantumState oat_local(const SpinNetwork& net, double chi_t) {
    ComplexVector psi = css_up(net).vector();
    for (Eigen::Index k = 0; k < net.modes(); ++k) {
        const SpinOps ops = collective_spin_ops(net.particles(k));
        const HermEig eig = herm_eig(HermitianOp(ops.jy));
        ComplexVector phases(eig.eigenvalues.size());
        for (Eigen::Index i = 0; i < phases.size(); ++i) {
            const double m = eig.eigenvalues[i];
            phases[i] = std::exp(Complex(0.0, -chi_t * m * m));
        }
        const ComplexMatrix u =
            eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
        psi = apply_mode_matrix(net, psi, k, u);
    }
    return QuantumState::pure(psi);
}

QuantumState oat_nonlocal(const SpinNetwork& net, double chi_t) {
    ComplexVector psi = css_up(net).vector();
    // Rotate every mode into its Jy eigenbasis; the summed-spin twisting is
    // then a pure phase in the collective magnetic quantum numbers.
    std::vector<HermEig> eigs;
    for (Eigen::Index k = 0; k < net.modes(); ++k) {
        const SpinOps ops = collective_spin_ops(net.particles(k));
        eigs.push_back(herm_eig(HermitianOp(ops.jy)));
        psi = apply_mode_matrix(net, psi, k, eigs.back().eigenvectors.adjoint());
    }
    for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
        Eigen::Index rest = idx;
        double msum = 0.0;
        for (Eigen::Index k = net.modes() - 1; k >= 0; --k) {
            const Eigen::Index d = net.mode_dim(k);
            msum += eigs[static_cast<size_t>(k)].eigenvalues[rest % d];
            rest /= d;
        }
        psi[idx] *= std::exp(Complex(0.0, -chi_t * msum * msum));
    }
    for (Eigen::Index k = 0; k < net.modes(); ++k) {
        psi = apply_mode_matrix(net, psi, k, eigs[static_cast<size_t>(k)].eigenvectors);
    }
    return QuantumState::pure(psi);
}

Vector mean_spin_z(const SpinNetwork& net, const ComplexVector& psi) {
    Vector mz(net.modes());
    for (Eigen::Index k = 0; k < net.modes(); ++k) {
        const SpinOps ops = collective_spin_ops(net.particles(k));
        SpinObservable obs;
        obs.terms.push_back({1.0, k, ops.jz});
        mz[k] = spin_expectation(net, psi, obs);
    }
    return mz;
}

SqueezingReport spin_squeezing_matrix(const SpinNetwork& net, const ComplexVector& psi,
                                      const Vector& angles) {
    const Eigen::Index m = net.modes();
    if (angles.size() != m) {
        throw DimensionError("spin_squeezing_matrix: one angle per mode required");
    }
    const Vector mz = mean_spin_z(net, psi);
    for (Eigen::Index k = 0; k < m; ++k) {
        if (std::abs(mz[k]) <= kZeroMeanFloor * static_cast<double>(net.particles(k))) {
            throw ZeroMeanSpinError("spin_squeezing_matrix: mean spin of mode " +
                                    std::to_string(k) + " vanishes");
        }
    }
    std::vector<SpinObservable> measured;
    for (Eigen::Index k = 0; k < m; ++k) {
        measured.push_back(planar_spin(net, k, angles[k]));
    }
    const Matrix cov = spin_covariance(net, psi, measured).mat();
    Matrix xi2(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index l = 0; l < m; ++l) {
            const double nk = static_cast<double>(net.particles(k));
            const double nl = static_cast<double>(net.particles(l));
            xi2(k, l) = std::sqrt(nk * nl) * cov(k, l) / (mz[k] * mz[l]);
        }
    }
    SqueezingReport report{RealSymMatrix(xi2), shot_noise_local(net), Vector::Zero(m)};
    report.eigenvalues = sym_eig(report.xi2).eigenvalues;
    for (Eigen::Index i = 0; i < m; ++i) {
        if (report.eigenvalues[i] < 1.0 - 1e-9) ++report.shot_noise_rank;
    }
    report.full_multiparameter_squeezing = report.shot_noise_rank == m;
    return report;
}

LocalXiMin local_xi_min(const SpinNetwork& net, const ComplexVector& psi,
                        Eigen::Index mode) {
    const double n = static_cast<double>(net.particles(mode));
    std::vector<SpinObservable> planar{planar_spin(net, mode, 0.0),
                                       planar_spin(net, mode, M_PI / 2.0)};
    const Matrix cov = spin_covariance(net, psi, planar).mat();
    const Vector mz = mean_spin_z(net, psi);
    if (std::abs(mz[mode]) <= kZeroMeanFloor * n) {
        throw ZeroMeanSpinError("local_xi_min: mean spin vanishes");
    }
    const double dplus = 0.5 * (cov(0, 0) + cov(1, 1));
    const double dminus = 0.5 * (cov(0, 0) - cov(1, 1));
    const double c = cov(0, 1);
    const double var_min = dplus - std::sqrt(c * c + dminus * dminus);
    LocalXiMin out;
    out.xi2 = n * var_min / (mz[mode] * mz[mode]);
    out.angle = 0.5 * std::atan2(-c, -dminus);
    return out;
}

RealSymMatrix shot_noise_jperp(const SpinNetwork& net) {
    const Eigen::Index m = net.modes();
    Matrix f = Matrix::Zero(2 * m, 2 * m);
    for (Eigen::Index k = 0; k < m; ++k) {
        f(2 * k, 2 * k) = f(2 * k + 1, 2 * k + 1) = static_cast<double>(net.particles(k));
    }
    return RealSymMatrix(f);
}

RealSymMatrix shot_noise_local(const SpinNetwork& net) {
    const Eigen::Index m = net.modes();
    Matrix f = Matrix::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k) f(k, k) = static_cast<double>(net.particles(k));
    return RealSymMatrix(f);
}

RealSymMatrix shot_noise_encoded(const SpinNetwork& net, const Matrix& r) {
    if (r.cols() != 2 * net.modes()) {
        throw DimensionError("shot_noise_encoded: R must act on the planar family");
    }
    const Matrix f = r * shot_noise_jperp(net).mat() * r.transpose();
    return RealSymMatrix(0.5 * (f + f.transpose().eval()));
}

std::vector<TwistingScanRow> fig2_scan(Eigen::Index n_total, const Vector& chi_t_grid) {
    if (n_total < 2 || n_total % 2 != 0) {
        throw DomainError("fig2_scan: total particle number must be even and >= 2");
    }
    const SpinNetwork net({n_total / 2, n_total / 2});
    const Vector n_modes =
        (Vector(2) << static_cast<double>(net.particles(0)),
         static_cast<double>(net.particles(1)))
            .finished();

    std::vector<TwistingScanRow> rows;
    rows.reserve(static_cast<size_t>(chi_t_grid.size()));
    for (Eigen::Index it = 0; it < chi_t_grid.size(); ++it) {
        TwistingScanRow row;
        row.chi_t = chi_t_grid[it];
        const ComplexVector psi_nl = oat_nonlocal(net, row.chi_t).vector();
        const ComplexVector psi_loc = oat_local(net, row.chi_t).vector();

        const PlanarMoments pm = two_mode_planar_moments(net, psi_nl);
        row.mean_spin_1 = pm.mean_z[0];
        row.mean_spin_2 = pm.mean_z[1];
        const Vector mz_loc = mean_spin_z(net, psi_loc);

        bool collapsed = false;
        for (Eigen::Index k = 0; k < 2; ++k) {
            if (std::abs(pm.mean_z[k]) <= kZeroMeanFloor * n_modes[k] ||
                std::abs(mz_loc[k]) <= kZeroMeanFloor * n_modes[k]) {
                collapsed = true;
            }
        }
        row.mean_spin_collapsed = collapsed;
        if (collapsed) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.gain_sum_nonlocal_db = row.gain_diff_nonlocal_db = nan;
            row.gain_local_db = row.gain_avg_nonlocal_db = nan;
            rows.push_back(row);
            continue;
        }

        Vector a(2);
        for (Eigen::Index k = 0; k < 2; ++k) a[k] = std::sqrt(n_modes[k]) / pm.mean_z[k];

        // Joint measurement directions maximizing the gain of the sum
        // combination: dense grid over both angles, then coordinate-wise
        // golden-section refinement.
        double best1 = 0.0, best2 = 0.0;
        double best = std::numeric_limits<double>::infinity();
        const double step = 2.0 * M_PI / kAngleGridPoints;
        for (int i = 0; i < kAngleGridPoints; ++i) {
            for (int j = 0; j < kAngleGridPoints; ++j) {
                const double q = pair_xi_form(pm, a, i * step, j * step, 1.0);
                if (q < best) {
                    best = q;
                    best1 = i * step;
                    best2 = j * step;
                }
            }
        }
        for (int round = 0; round < 3; ++round) {
            auto r1 = golden_section_min(
                [&](double x) { return pair_xi_form(pm, a, x, best2, 1.0); },
                best1 - step, best1 + step);
            best1 = r1.first;
            auto r2 = golden_section_min(
                [&](double x) { return pair_xi_form(pm, a, best1, x, 1.0); },
                best2 - step, best2 + step);
            best2 = r2.first;
            best = r2.second;
        }
        row.angle_1 = best1;
        row.angle_2 = best2;
        row.gain_sum_nonlocal_db = db_gain(best);
        row.gain_diff_nonlocal_db = db_gain(pair_xi_form(pm, a, best1, best2, -1.0));

        // Trace gain: tr Sigma_SN / tr Sigma = 2 / tr Xi^2 for equal modes.
        Vector u1(4), u2(4);
        u1 << a[0] * std::cos(best1), a[0] * std::sin(best1), 0.0, 0.0;
        u2 << 0.0, 0.0, a[1] * std::cos(best2), a[1] * std::sin(best2);
        const double trace_xi2 = u1.dot(pm.gamma * u1) + u2.dot(pm.gamma * u2);
        row.gain_avg_nonlocal_db = 10.0 * std::log10(2.0 / trace_xi2);

        row.gain_local_db = db_gain(local_xi_min(net, psi_loc, 0).xi2);
        rows.push_back(row);
    }
    return rows;
}

NonlocalEncodingResult nonlocal_encoding_scenario(Eigen::Index n_total, double chi_t) {
    if (n_total < 2 || n_total % 2 != 0) {
        throw DomainError("nonlocal_encoding_scenario: total particle number must be even");
    }
    const SpinNetwork net({n_total / 2, n_total / 2});
    return nonlocal_encoding_on(net, oat_nonlocal(net, chi_t).vector());
}

NonlocalEncodingResult nonlocal_encoding_on(const SpinNetwork& net, const ComplexVector& psi) {
    if (net.modes() != 2 || net.particles(0) != net.particles(1)) {
        throw DimensionError("nonlocal_encoding_on: need two modes of equal size");
    }
    const PlanarMoments pm = two_mode_planar_moments(net, psi);

    const auto xi2_of = [&](double phi) {
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        const double inv = 1.0 / std::sqrt(2.0);
        Matrix r(2, 4), x(2, 4);
        // H1 = (J_{r1,1} + J_{r1,2})/sqrt(2), H2 = (J_{r2,1} - J_{r2,2})/sqrt(2)
        r.row(0) << c, s, c, s;
        r.row(1) << -s, c, s, -c;
        r *= inv;
        // X1 = (J_{r2,1} + J_{r2,2})/sqrt(2), X2 = (J_{r1,2} - J_{r1,1})/sqrt(2)
        x.row(0) << -s, c, -s, c;
        x.row(1) << -c, -s, c, s;
        x *= inv;
        const Matrix gamma_x = x * pm.gamma * x.transpose();
        const Matrix c_xh = x * pm.ctilde * r.transpose();
        const RealSymMatrix moment =
            moment_from_blocks(RealSymMatrix(0.5 * (gamma_x + gamma_x.transpose().eval())),
                               c_xh);
        const RealSymMatrix shot = shot_noise_encoded(net, r);
        return squeezing_matrix(moment, shot);
    };

    const auto [phi_opt, xi_plus] = grid_refine_min(
        [&](double phi) { return xi2_of(phi).xi2.mat()(0, 0); }, 0.0, M_PI,
        kAngleGridPoints);
    (void)xi_plus;
    const SqueezingReport report = xi2_of(phi_opt);

    NonlocalEncodingResult out;
    out.angle = phi_opt;
    out.xi2 = report.xi2;
    out.xi_plus2 = report.xi2.mat()(0, 0);
    out.xi_minus2 = report.xi2.mat()(1, 1);
    out.offdiag = std::abs(report.xi2.mat()(0, 1));
    return out;
}

ComplexVector dicke_state(Eigen::Index n, Eigen::Index two_m) {
    if ((n + two_m) % 2 != 0 || std::abs(two_m) > n) {
        throw DomainError("dicke_state: 2m must match the particle number parity");
    }
    ComplexVector psi = ComplexVector::Zero(n + 1);
    const Eigen::Index index = (n - two_m) / 2;  // basis ordered m = +j, ..., -j
    psi[index] = 1.0;
    return psi;
}

double twin_fock_q(Eigen::Index n) {
    return static_cast<double>(n) * static_cast<double>(n + 2) / 8.0;
}

TwinFockMoment twin_fock_moment(Eigen::Index n, const Vector& theta) {
    if (n < 2 || n % 2 != 0) {
        throw DomainError("twin_fock_moment: particle number must be even and >= 2");
    }
    if (theta.size() != 2) {
        throw DimensionError("twin_fock_moment: theta must have two components");
    }
    const SpinOps ops = collective_spin_ops(n);
    const ComplexVector tf = dicke_state(n, 0);
    const ComplexMatrix proj = tf * tf.adjoint();
    const ObservableSet h({ops.jx, ops.jy}, "J_perp");
    const ObservableSet x({ops.jx * proj * ops.jx, ops.jy * proj * ops.jy}, "TF filters");

    const QuantumState probe = QuantumState::pure(tf);
    const QuantumState evolved = evolve(probe, h, theta);

    TwinFockMoment out{moment_matrix(evolved, h, x, theta), false};
    for (Eigen::Index i = 0; i < 2; ++i) {
        const double t = std::abs(theta[i]);
        if (t < kThetaWindowLo || t > kThetaWindowHi) out.conditioning_warning = true;
    }
    return out;
}

TwinFockResult twin_fock_extrapolated(Eigen::Index n) {
    // Richardson extrapolation in the step h of theta = h * u; the moment
    // matrix is even in theta, so the error expands in powers of h^2.
    const Vector u = (Vector(2) << 0.6, 0.8).finished();
    constexpr int kLevels = 4;
    const double h0 = 8e-3;
    std::vector<Matrix> table;
    for (int j = 0; j < kLevels; ++j) {
        const double h = h0 / std::pow(2.0, j);
        table.push_back(twin_fock_moment(n, h * u).report.moment.mat());
    }
    for (int k = 1; k < kLevels; ++k) {
        const double w = std::pow(4.0, k);
        for (int j = kLevels - 1; j >= k; --j) {
            table[static_cast<size_t>(j)] =
                (w * table[static_cast<size_t>(j)] - table[static_cast<size_t>(j - 1)]) /
                (w - 1.0);
        }
    }

    const SpinOps ops = collective_spin_ops(n);
    const QuantumState probe = QuantumState::pure(dicke_state(n, 0));
    const ObservableSet h({ops.jx, ops.jy}, "J_perp");

    TwinFockResult out;
    out.moment = RealSymMatrix(0.5 * (table.back() + table.back().transpose().eval()));
    out.quantum_fisher = quantum_fisher_matrix(probe, h);
    out.analytic = static_cast<double>(n) * static_cast<double>(n + 2) / 2.0;
    const Matrix target = out.analytic * Matrix::Identity(2, 2);
    out.rel_error_moment =
        (out.moment.mat() - target).cwiseAbs().maxCoeff() / out.analytic;
    out.rel_error_fisher =
        (out.quantum_fisher.mat() - target).cwiseAbs().maxCoeff() / out.analytic;
    return out;
}

}  // namespace msq
