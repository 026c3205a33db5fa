#include "goldilocks/interferometer.hpp"

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

namespace goldilocks {

namespace {

using namespace std::complex_literals;

constexpr double kStateTol = 1e-12;

const Eigen::Matrix2cd& hadamard() {
  static const Eigen::Matrix2cd h =
      (Eigen::Matrix2cd() << 1, 1, 1, -1).finished() / std::numbers::sqrt2;
  return h;
}

const Eigen::Matrix2cd& phase_gate() {
  static const Eigen::Matrix2cd s = (Eigen::Matrix2cd() << 1, 0, 0, 1i).finished();
  return s;
}

void check_time(double t) {
  if (t < 0.0 || !std::isfinite(t)) {
    throw std::domain_error("time must be non-negative and finite");
  }
}

void check_rate(const ComplexRate& rate) {
  if (rate.deco_rate < 0.0 || !std::isfinite(rate.deco_rate) ||
      !std::isfinite(rate.phase_rate)) {
    throw std::domain_error("rate: deco_rate must be >= 0 and finite");
  }
}

void check_grid(const Eigen::ArrayXd& g, const char* name) {
  if (g.size() == 0) {
    throw std::invalid_argument(std::string(name) + ": grid must be non-empty");
  }
  for (Eigen::Index i = 1; i < g.size(); ++i) {
    if (!(g[i] > g[i - 1])) {
      throw std::invalid_argument(std::string(name) + ": grid must be ascending");
    }
  }
}

}  // namespace

SpinState SpinState::plus() {
  SpinState s;
  s.rho << 0.5, 0.5, 0.5, 0.5;
  return s;
}

SpinState SpinState::from_density(const Eigen::Matrix2cd& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStateTol) {
    throw std::invalid_argument("spin state: density matrix must be Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > kStateTol) {
    throw std::invalid_argument("spin state: density matrix must have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStateTol) {
    throw std::invalid_argument("spin state: density matrix must be positive semidefinite");
  }
  return SpinState{rho};
}

SpinState SpinState::coherence(double a, double b, double A, double phi) {
  Eigen::Matrix2cd rho;
  const std::complex<double> off = 0.5 * A * std::exp(1i * phi);
  rho << 0.5 * a, off, std::conj(off), 0.5 * b;
  return from_density(rho);
}

double SpinState::purity() const { return (rho * rho).trace().real(); }

VisibilityPhase VisibilityPhase::from_rate(const ComplexRate& rate, double t) {
  check_rate(rate);
  check_time(t);
  return {std::exp(-rate.deco_rate * t), rate.phase_rate * t};
}

SpinState evolve(const SpinState& rho0, const ComplexRate& rate, double t) {
  check_rate(rate);
  check_time(t);
  const std::complex<double> damping =
      std::exp(-(std::complex<double>(rate.deco_rate, -rate.phase_rate)) * t);
  SpinState out = rho0;
  out.rho(0, 1) *= damping;
  out.rho(1, 0) = std::conj(out.rho(0, 1));
  return out;
}

SpinState apply_readout_gates(const SpinState& rho) {
  const Eigen::Matrix2cd u = hadamard() * phase_gate();
  SpinState out;
  out.rho = u * rho.rho * u.adjoint();
  return out;
}

double signal(const SpinState& rho_f) {
  return (rho_f.rho(0, 0) - rho_f.rho(1, 1)).real();
}

double efficiency(const ComplexRate& rate, double t) {
  check_rate(rate);
  check_time(t);
  return 0.5 * (1.0 - std::exp(-rate.deco_rate * t) * std::cos(rate.phase_rate * t));
}

Eigen::MatrixXd signal_map(const BeamSpec& beam, const CrossSectionModel& xs,
                           EnvironmentMode mode,
                           const Eigen::ArrayXd& dx_over_lambda,
                           const Eigen::ArrayXd& t_s, KernelMethod method,
                           double tol, int threads, PhaseModel phase_model) {
  check_grid(dx_over_lambda, "dx_over_lambda");
  check_grid(t_s, "t_s");
  if (dx_over_lambda[0] < 0.0) {
    throw std::invalid_argument("dx_over_lambda: grid must be non-negative");
  }
  if (t_s[0] < 0.0) {
    throw std::invalid_argument("t_s: grid must be non-negative");
  }
  const double lambda = beam.wavelength();
  Eigen::MatrixXd out(dx_over_lambda.size(), t_s.size());

  const auto fill_row = [&](Eigen::Index i) {
    const ComplexRate rate =
        localization_rate(beam, xs, dx_over_lambda[i] * lambda, mode, method, tol);
    for (Eigen::Index j = 0; j < t_s.size(); ++j) {
      const VisibilityPhase vp = VisibilityPhase::from_rate(rate, t_s[j]);
      const double phi = phase_model == PhaseModel::kernel_rate
                             ? vp.phi
                             : 2.0 * std::numbers::pi * dx_over_lambda[i];
      out(i, j) = vp.A * std::sin(phi);
    }
  };

  const int n_workers = std::clamp<int>(threads, 1, 64);
  if (n_workers == 1 || dx_over_lambda.size() < 2) {
    for (Eigen::Index i = 0; i < dx_over_lambda.size(); ++i) fill_row(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) {
      pool.emplace_back([&, w] {
        for (Eigen::Index i = w; i < dx_over_lambda.size(); i += n_workers) {
          fill_row(i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

GoldilocksCriterion GoldilocksCriterion::max_abs_im_kernel() {
  return {Kind::max_abs_im_kernel, 0.95};
}

GoldilocksCriterion GoldilocksCriterion::signal_threshold(double s0) {
  if (!(s0 > 0.0 && s0 < 1.0)) {
    throw std::domain_error("goldilocks criterion: s0 must lie in (0, 1)");
  }
  return {Kind::signal_threshold, s0};
}

GoldilocksResult goldilocks_search(const BeamSpec& beam, const CrossSectionModel& xs,
                                   EnvironmentMode mode, double t,
                                   const GoldilocksCriterion& criterion,
                                   double z_lo, double z_hi, int grid_points) {
  check_time(t);
  if (!(z_lo > 0.0 && z_hi > z_lo) || grid_points < 8) {
    throw std::domain_error("goldilocks_search: invalid search range");
  }
  if (!(criterion.s0 > 0.0 && criterion.s0 < 1.0)) {
    throw std::domain_error("goldilocks criterion: s0 must lie in (0, 1)");
  }
  const AngularShape shape = to_shape(mode);

  const auto objective = [&](double z) -> double {
    if (criterion.kind == GoldilocksCriterion::Kind::max_abs_im_kernel) {
      return std::abs(
          evaluate_kernel(z, shape, KernelMethod::closed_form, 1e-10).value.imag());
    }
    const ComplexRate rate =
        localization_rate(beam, xs, z / beam.q0, mode, KernelMethod::closed_form, 1e-10);
    const VisibilityPhase vp = VisibilityPhase::from_rate(rate, t);
    return std::abs(vp.A * std::sin(vp.phi));
  };

  // coarse log-spaced scan
  const double lo = std::log(z_lo), hi = std::log(z_hi);
  std::vector<double> val(static_cast<std::size_t>(grid_points));
  int best = 0;
  for (int i = 0; i < grid_points; ++i) {
    const double z = std::exp(lo + (hi - lo) * i / (grid_points - 1));
    val[static_cast<std::size_t>(i)] = objective(z);
    if (val[static_cast<std::size_t>(i)] > val[static_cast<std::size_t>(best)]) best = i;
  }
  if (val[static_cast<std::size_t>(best)] < 1e-9) {
    throw NoOptimumError("goldilocks_search: objective is flat (no optimum)");
  }

  // golden-section refinement in log space around the best grid point
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo + (hi - lo) * std::max(0, best - 1) / (grid_points - 1);
  double b = lo + (hi - lo) * std::min(grid_points - 1, best + 1) / (grid_points - 1);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = objective(std::exp(x1)), f2 = objective(std::exp(x2));
  for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = objective(std::exp(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = objective(std::exp(x1));
    }
  }
  GoldilocksResult res;
  res.z_star = std::exp(0.5 * (a + b));
  res.criterion_at_star = objective(res.z_star);

  // contiguous window around z_star where the criterion stays above
  // s0 * optimum; edges located by bisection
  const double threshold = criterion.s0 * res.criterion_at_star;
  const auto bisect_edge = [&](double inside, double outside) {
    for (int it = 0; it < 60; ++it) {
      const double mid = std::sqrt(inside * outside);  // log midpoint
      if (objective(mid) >= threshold) {
        inside = mid;
      } else {
        outside = mid;
      }
    }
    return inside;
  };

  const int n_scan = 400;
  double below_lo = -1.0, below_hi = -1.0;
  for (int i = 0; i < n_scan; ++i) {
    const double z = res.z_star * std::exp(-std::log(res.z_star / z_lo) * i / (n_scan - 1.0));
    if (objective(z) < threshold) {
      below_lo = z;
      break;
    }
  }
  for (int i = 0; i < n_scan; ++i) {
    const double z = res.z_star * std::exp(std::log(z_hi / res.z_star) * i / (n_scan - 1.0));
    if (objective(z) < threshold) {
      below_hi = z;
      break;
    }
  }
  res.window_lo = below_lo > 0.0 ? bisect_edge(res.z_star, below_lo) : z_lo;
  res.window_hi = below_hi > 0.0 ? bisect_edge(res.z_star, below_hi) : z_hi;
  return res;
}

}  // namespace goldilocks
