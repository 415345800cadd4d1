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
// Collective-spin sensor networks. Each of the M modes holds N_k spin-1/2
// particles whose permutationally symmetric sector is a single collective
// spin j_k = N_k / 2 of dimension N_k + 1; the network state lives on the
// tensor product of these sectors. Operators local to a mode are applied
// without materializing their embedding into the product space, which keeps
// particle numbers around 100 cheap.

#ifndef MSQUEEZE_SPIN_HPP
#define MSQUEEZE_SPIN_HPP

#include <utility>
#include <vector>

#include "msqueeze/linalg.hpp"
#include "msqueeze/quantum.hpp"

namespace msq {

/// A mode with vanishing mean spin cannot normalize a squeezing
/// coefficient.
struct ZeroMeanSpinError : Error {
    explicit ZeroMeanSpinError(const std::string& msg) : Error(msg) {}
};

/// Layout of a sensor network: particles per mode.
class SpinNetwork {
   public:
    explicit SpinNetwork(std::vector<Eigen::Index> particles_per_mode);

    Eigen::Index modes() const { return static_cast<Eigen::Index>(particles_.size()); }
    Eigen::Index particles(Eigen::Index mode) const;
    Eigen::Index total_particles() const;
    Eigen::Index mode_dim(Eigen::Index mode) const { return particles(mode) + 1; }
    Eigen::Index total_dim() const;

   private:
    std::vector<Eigen::Index> particles_;
};

/// Collective spin components on the symmetric sector of n spin-1/2
/// particles (dimension n + 1, basis ordered m = +j, ..., -j).
struct SpinOps {
    ComplexMatrix jx;
    ComplexMatrix jy;
    ComplexMatrix jz;
};

SpinOps collective_spin_ops(Eigen::Index n);

/// Weighted sum of mode-local operators, sum_i w_i op_i acting on mode_i.
struct SpinObservable {
    struct Term {
        double weight;
        Eigen::Index mode;
        ComplexMatrix op;  // mode_dim x mode_dim
    };
    std::vector<Term> terms;
};

/// In-plane spin component cos(angle) Jx + sin(angle) Jy of one mode.
SpinObservable planar_spin(const SpinNetwork& net, Eigen::Index mode, double angle,
                           double weight = 1.0);

/// op embedded into the full product space (small networks only).
ComplexMatrix embed_mode_op(const SpinNetwork& net, Eigen::Index mode,
                            const ComplexMatrix& op);

/// obs |psi> evaluated mode-locally.
ComplexVector apply_observable(const SpinNetwork& net, const ComplexVector& psi,
                               const SpinObservable& obs);

double spin_expectation(const SpinNetwork& net, const ComplexVector& psi,
                        const SpinObservable& obs);

/// Symmetrized covariance matrix of a family of spin observables.
RealSymMatrix spin_covariance(const SpinNetwork& net, const ComplexVector& psi,
                              const std::vector<SpinObservable>& obs);

/// C_kl = -i <[X_k, H_l]> for spin observable families.
Matrix spin_commutator(const SpinNetwork& net, const ComplexVector& psi,
                       const std::vector<SpinObservable>& x,
                       const std::vector<SpinObservable>& h);

/// Coherent spin state along +z in every mode.
QuantumState css_up(const SpinNetwork& net);

/// One-axis twisting within each mode: exp(-i chi_t sum_k Jy_k^2) |CSS>.
QuantumState oat_local(const SpinNetwork& net, double chi_t);

/// One-axis twisting of the summed spin: exp(-i chi_t (sum_k Jy_k)^2) |CSS>.
QuantumState oat_nonlocal(const SpinNetwork& net, double chi_t);

/// <Jz_k> for every mode.
Vector mean_spin_z(const SpinNetwork& net, const ComplexVector& psi);

/// Spin-squeezing matrix for local measurement directions s_k (angles in the
/// xy-plane):
///
///   (Xi^2)_kl = sqrt(N_k N_l) Cov(J_{s_k,k}, J_{s_l,l}) / (<Jz_k><Jz_l>).
///
/// Raises ZeroMeanSpinError when |<Jz_k>| <= 1e-8 N_k for some mode.
SqueezingReport spin_squeezing_matrix(const SpinNetwork& net, const ComplexVector& psi,
                                      const Vector& angles);

struct LocalXiMin {
    double xi2;
    double angle;
};

/// Best single-mode squeezing coefficient over planar directions,
///
///   xi_min^2 = N_k / <Jz_k>^2 (D+ - sqrt(Cov(Jx,Jy)^2 + D-^2)),
///   2 D+- = Var(Jx) +- Var(Jy),
///
/// together with the minimizing measurement angle.
LocalXiMin local_xi_min(const SpinNetwork& net, const ComplexVector& psi, Eigen::Index mode);

/// Shot-noise matrix diag(N_1, N_1, ..., N_M, N_M) of the planar generator
/// family (Jx_1, Jy_1, ..., Jx_M, Jy_M).
RealSymMatrix shot_noise_jperp(const SpinNetwork& net);

/// Shot-noise matrix diag(N_1, ..., N_M) of one planar generator per mode.
RealSymMatrix shot_noise_local(const SpinNetwork& net);

/// Shot-noise matrix R F_SN R^T of encoded generators H = R Jperp.
RealSymMatrix shot_noise_encoded(const SpinNetwork& net, const Matrix& r);

/// One row of the two-mode twisting comparison scan.
struct TwistingScanRow {
    double chi_t = 0.0;
    /// Gain of the sum combination n+ for the nonlocally twisted state,
    /// directions chosen to maximize it.
    double gain_sum_nonlocal_db = 0.0;
    /// Gain of the difference combination n- at the same directions.
    double gain_diff_nonlocal_db = 0.0;
    /// Gain of the locally twisted state (equal for n+ and n-).
    double gain_local_db = 0.0;
    /// Trace gain 10 log10(tr Sigma_SN / tr Sigma) of the nonlocal state.
    double gain_avg_nonlocal_db = 0.0;
    double mean_spin_1 = 0.0;  // <Jz_1> of the nonlocal state
    double mean_spin_2 = 0.0;
    double angle_1 = 0.0;  // optimized measurement directions
    double angle_2 = 0.0;
    /// Set when some |<Jz_k>| collapsed below 1e-8 N_k; gains are NaN then.
    bool mean_spin_collapsed = false;
};

/// Metrological gains of locally vs nonlocally twisted states of N
/// particles split into two equal modes, for each twisting strength.
std::vector<TwistingScanRow> fig2_scan(Eigen::Index n_total, const Vector& chi_t_grid);

/// Sum/difference encoding on a nonlocally twisted state. The generator
/// pair H1 = (J_{r1,1} + J_{r1,2})/sqrt(2), H2 = (J_{r2,1} - J_{r2,2})/sqrt(2)
/// with conjugate observables diagonalizes the squeezing matrix; both
/// parameter combinations then beat shot noise simultaneously.
struct NonlocalEncodingResult {
    double xi_plus2 = 0.0;   // squeezing of the sum parameter
    double xi_minus2 = 0.0;  // squeezing of the difference parameter
    double offdiag = 0.0;    // |off-diagonal| of the squeezing matrix
    double angle = 0.0;      // optimized direction r1
    RealSymMatrix xi2 = RealSymMatrix::zero(2);
};

NonlocalEncodingResult nonlocal_encoding_scenario(Eigen::Index n_total, double chi_t);

/// The same sum/difference encoding evaluated on a caller-supplied state of
/// two equal modes, so differently prepared probes can be compared under an
/// identical parametrization.
NonlocalEncodingResult nonlocal_encoding_on(const SpinNetwork& net, const ComplexVector& psi);

/// Dicke state |j = n/2, m> of one collective spin.
ComplexVector dicke_state(Eigen::Index n, Eigen::Index two_m);

/// Second moment Q = <TF| Jx^2 |TF> = N (N + 2) / 8 of the twin-Fock state.
double twin_fock_q(Eigen::Index n);

/// Moment matrix of the twin-Fock scheme at a finite working point theta:
/// probe |TF> (the m = 0 Dicke state), generators (Jx, Jy), observables
/// X1 = Jx |TF><TF| Jx and X2 = Jy |TF><TF| Jy.
struct TwinFockMoment {
    MomentReport report;
    /// Set when some |theta_i| leaves the well-conditioned window
    /// [1e-6, 1e-2].
    bool conditioning_warning = false;
};

TwinFockMoment twin_fock_moment(Eigen::Index n, const Vector& theta);

/// Richardson extrapolation of the twin-Fock moment matrix to theta -> 0,
/// where it converges to N (N + 2) / 2 times the identity and saturates the
/// quantum Fisher information of the probe.
struct TwinFockResult {
    RealSymMatrix moment = RealSymMatrix::zero(2);
    RealSymMatrix quantum_fisher = RealSymMatrix::zero(2);
    double analytic = 0.0;  // N (N + 2) / 2
    double rel_error_moment = 0.0;
    double rel_error_fisher = 0.0;
};

TwinFockResult twin_fock_extrapolated(Eigen::Index n);

}  // namespace msq

#endif
