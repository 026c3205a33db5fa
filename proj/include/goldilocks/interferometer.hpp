#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "goldilocks/physics.hpp"

namespace goldilocks {

/// 2x2 spin density matrix of the embedded qubit: Hermitian, unit
/// trace, positive semidefinite.
struct SpinState {
  Eigen::Matrix2cd rho;

  static SpinState plus();  // |+><+|
  /// Validates Hermiticity, trace and positivity to 1e-12.
  static SpinState from_density(const Eigen::Matrix2cd& rho);
  /// (1/2) [[a, A e^{i phi}], [A e^{-i phi}, b]] (validated).
  static SpinState coherence(double a, double b, double A, double phi);

  double purity() const;  // tr(rho^2), in [1/2, 1]
};

/// Off-diagonal magnitude and accumulated phase after a time t:
/// A = e^{-deco_rate t}, phi = phase_rate t.
struct VisibilityPhase {
  double A = 1.0;
  double phi = 0.0;

  static VisibilityPhase from_rate(const ComplexRate& rate, double t);
};

/// Non-unitary evolution of the off-diagonals:
/// rho_12(t) = rho_12(0) exp(-(deco_rate - i phase_rate) t); the
/// diagonal is untouched (free evolution of the spin neglected).
SpinState evolve(const SpinState& rho0, const ComplexRate& rate, double t);

/// H S rho S^dag H with S = diag(1, i) and H the Hadamard gate; for
/// rho = (1/2)[[a, Ae^{i phi}],[Ae^{-i phi}, b]] the output diagonal is
/// (a + b +- 2 A sin phi)/4. Note diag(1, -i) would flip the signal sign.
SpinState apply_readout_gates(const SpinState& rho);

/// rho_f11 - rho_f22 of the post-gate state; equals A sin(phi) for the
/// a = b = 1 normalization and 2 Im rho_12 of the pre-gate state in
/// general.
double signal(const SpinState& rho_f);

/// Click-detector efficiency <-|rho(t)|-> for rho(0) = |+><+|:
/// (1 - e^{-deco_rate t} cos(phase_rate t))/2, in [0, 1] by construction.
double efficiency(const ComplexRate& rate, double t);

/// Phase model for signal maps: phase accumulated from the rate, or the
/// geometric parametrization phi = 2 pi dx/lambda (time-independent
/// phase, visibility still evolving) kept for comparison.
enum class PhaseModel { kernel_rate, geometric };

/// S(i, j) = A(dx_i, t_j) sin(phi(dx_i, t_j)) over the separation and
/// time grids. Rows follow dx_over_lambda, columns follow t_s. Grid
/// evaluation may be sharded over `threads`; the result is
/// deterministic regardless.
Eigen::MatrixXd signal_map(const BeamSpec& beam, const CrossSectionModel& xs,
                           EnvironmentMode mode,
                           const Eigen::ArrayXd& dx_over_lambda,
                           const Eigen::ArrayXd& t_s,
                           KernelMethod method = KernelMethod::closed_form,
                           double tol = 1e-10, int threads = 1,
                           PhaseModel phase_model = PhaseModel::kernel_rate);

struct GoldilocksCriterion {
  enum class Kind { max_abs_im_kernel, signal_threshold };

  Kind kind = Kind::max_abs_im_kernel;
  double s0 = 0.95;  // window threshold as a fraction of the optimum

  static GoldilocksCriterion max_abs_im_kernel();
  static GoldilocksCriterion signal_threshold(double s0);
};

struct GoldilocksResult {
  double z_star = 0.0;
  double window_lo = 0.0;  // z units, contiguous region >= s0 * optimum
  double window_hi = 0.0;
  double criterion_at_star = 0.0;
};

class NoOptimumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Locate the separation maximizing the chosen criterion over a
/// log-spaced z grid refined by golden-section search. Throws
/// NoOptimumError for a flat objective (e.g. isotropic mode).
GoldilocksResult goldilocks_search(const BeamSpec& beam, const CrossSectionModel& xs,
                                   EnvironmentMode mode, double t,
                                   const GoldilocksCriterion& criterion,
                                   double z_lo = 1e-3, double z_hi = 1e2,
                                   int grid_points = 600);

}  // namespace goldilocks
