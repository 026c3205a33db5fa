#pragma once

#include <complex>
#include <cstdint>

#include "goldilocks/physics.hpp"

namespace goldilocks {

/// Stochastic estimate of the angular kernel with per-component
/// standard errors. Identical (seed, n_samples, z, mode) reproduce
/// bit-identical output, independent of the worker count.
struct McEstimate {
  std::complex<double> mean{0.0, 0.0};
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
};

/// Directional mode draws u = cos(theta') from the density
/// (3/8)(1+u^2) by inverse CDF (Newton solve of u^3 + 3u = 8 xi - 4)
/// and averages (2/3)(1 - e^{iz(1-u)}); isotropic mode draws both
/// directions uniformly on the sphere and averages
/// (1 - e^{iz(u - u')}) (1 + cos^2 Theta)/2, matching the
/// isotropic_kernel normalization. Requires n_samples >= 1e3.
///
/// Reproducibility: mt19937_64 per shard with splitmix64-derived child
/// seeds, fixed 65536-sample shard boundaries intrinsic to n_samples,
/// and pairwise summation in a fixed order, so the result does not
/// depend on scheduling.
McEstimate mc_kernel(double z, EnvironmentMode mode, long n_samples,
                     std::uint64_t seed, int threads = 1);

/// Empirical moments of the directional sampler against the analytic
/// values E[u] = 0, E[u^2] = 2/5 of the (3/8)(1+u^2) density. The
/// sigma fields are the analytic standard errors of the estimators.
struct MomentReport {
  double mean_u = 0.0;
  double mean_u2 = 0.0;
  double analytic_u = 0.0;
  double analytic_u2 = 0.4;
  double sigma_u = 0.0;
  double sigma_u2 = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
};

/// Requires n_samples >= 1e5.
MomentReport sampler_selftest(long n_samples, std::uint64_t seed);

/// splitmix64 step; used to derive per-shard child seeds.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Inverse CDF of the (3/8)(1+u^2) density on [-1, 1], xi in [0, 1).
double sample_cos_theta(double xi);

}  // namespace goldilocks
