#include "goldilocks/montecarlo.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace goldilocks {

namespace {

constexpr long kShardSize = 65536;

double to_unit_double(std::uint64_t x) {
  // 53 uniform bits in [0, 1)
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Streaming pairwise summation: a binary-counter stack of partial sums,
// equivalent to a fixed balanced reduction tree over the input order.
class PairwiseSum {
 public:
  void add(double v) {
    std::uint64_t c = count_;
    int k = 0;
    while (c & 1u) {
      v += level_[static_cast<std::size_t>(k)];
      c >>= 1;
      ++k;
    }
    level_[static_cast<std::size_t>(k)] = v;
    ++count_;
  }

  double total() const {
    double s = 0.0;
    std::uint64_t c = count_;
    for (int k = 0; c != 0; ++k, c >>= 1) {
      if (c & 1u) s += level_[static_cast<std::size_t>(k)];
    }
    return s;
  }

 private:
  std::array<double, 64> level_{};
  std::uint64_t count_ = 0;
};

struct ShardSums {
  double re = 0.0, im = 0.0, re2 = 0.0, im2 = 0.0;
};

struct SampleAccumulator {
  PairwiseSum re, im, re2, im2;

  void add(std::complex<double> v) {
    re.add(v.real());
    im.add(v.imag());
    re2.add(v.real() * v.real());
    im2.add(v.imag() * v.imag());
  }

  ShardSums sums() const {
    return {re.total(), im.total(), re2.total(), im2.total()};
  }
};

template <class Body>
std::vector<ShardSums> run_shards(long n_samples, std::uint64_t seed, int threads,
                                  const Body& body) {
  const long n_shards = (n_samples + kShardSize - 1) / kShardSize;
  std::vector<std::uint64_t> child_seeds(static_cast<std::size_t>(n_shards));
  std::uint64_t state = seed;
  for (auto& s : child_seeds) s = splitmix64_next(state);

  std::vector<ShardSums> shard_sums(static_cast<std::size_t>(n_shards));
  const auto run_range = [&](long first, long last) {
    for (long s = first; s < last; ++s) {
      const long count =
          std::min(kShardSize, n_samples - s * kShardSize);
      std::mt19937_64 eng(child_seeds[static_cast<std::size_t>(s)]);
      SampleAccumulator acc;
      for (long i = 0; i < count; ++i) body(eng, acc);
      shard_sums[static_cast<std::size_t>(s)] = acc.sums();
    }
  };

  const int n_workers =
      static_cast<int>(std::clamp<long>(threads, 1, std::min<long>(n_shards, 64)));
  if (n_workers == 1) {
    run_range(0, n_shards);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    const long chunk = (n_shards + n_workers - 1) / n_workers;
    for (int w = 0; w < n_workers; ++w) {
      const long first = w * chunk;
      const long last = std::min(n_shards, first + chunk);
      if (first >= last) break;
      pool.emplace_back(run_range, first, last);
    }
    for (auto& th : pool) th.join();
  }
  return shard_sums;
}

// Fixed reduction tree over the shard partials, independent of how the
// shards were scheduled.
ShardSums reduce_shards(const std::vector<ShardSums>& shards) {
  PairwiseSum re, im, re2, im2;
  for (const auto& s : shards) {
    re.add(s.re);
    im.add(s.im);
    re2.add(s.re2);
    im2.add(s.im2);
  }
  return {re.total(), im.total(), re2.total(), im2.total()};
}

double stderr_from(double sum, double sum2, long n) {
  if (n < 2) return 0.0;
  const double mean = sum / static_cast<double>(n);
  double var = (sum2 - static_cast<double>(n) * mean * mean) /
               static_cast<double>(n - 1);
  if (var < 0.0) var = 0.0;  // rounding
  return std::sqrt(var / static_cast<double>(n));
}

}  // namespace

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t x = (state += 0x9E3779B97F4A7C15ull);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double sample_cos_theta(double xi) {
  // CDF: (3/8)(u + u^3/3) + 1/2 = xi  =>  u^3 + 3u = 8 xi - 4.
  // Newton from u0 = r/3 converges monotonically on the cubic; only
  // IEEE +-*/ are used, so the result is platform-reproducible.
  const double r = 8.0 * xi - 4.0;
  double u = r / 3.0;
  for (int it = 0; it < 64; ++it) {
    const double f = u * u * u + 3.0 * u - r;
    const double fp = 3.0 * u * u + 3.0;
    const double step = f / fp;
    u -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(u))) break;
  }
  if (std::abs(u) > 1.0 + 1e-9) {
    throw std::logic_error("sample_cos_theta: root left [-1, 1]; sampler bug");
  }
  return std::clamp(u, -1.0, 1.0);
}

McEstimate mc_kernel(double z, EnvironmentMode mode, long n_samples,
                     std::uint64_t seed, int threads) {
  if (!std::isfinite(z) || z < 0.0) {
    throw std::domain_error("mc_kernel: z must be finite and non-negative");
  }
  if (n_samples < 1000) {
    throw std::domain_error("mc_kernel: n_samples must be >= 1e3");
  }

  std::vector<ShardSums> shards;
  if (mode == EnvironmentMode::directional) {
    shards = run_shards(n_samples, seed, threads,
                        [z](std::mt19937_64& eng, SampleAccumulator& acc) {
                          const double u = sample_cos_theta(to_unit_double(eng()));
                          const double theta = z * (1.0 - u);
                          acc.add({(2.0 / 3.0) * (1.0 - std::cos(theta)),
                                   -(2.0 / 3.0) * std::sin(theta)});
                        });
  } else {
    shards = run_shards(
        n_samples, seed, threads,
        [z](std::mt19937_64& eng, SampleAccumulator& acc) {
          const double u = 2.0 * to_unit_double(eng()) - 1.0;
          const double up = 2.0 * to_unit_double(eng()) - 1.0;
          const double dphi = 2.0 * std::numbers::pi * to_unit_double(eng());
          const double cos_big =
              u * up + std::sqrt((1.0 - u * u) * (1.0 - up * up)) * std::cos(dphi);
          const double w = 0.5 * (1.0 + cos_big * cos_big);
          const double theta = z * (u - up);
          acc.add({w * (1.0 - std::cos(theta)), -w * std::sin(theta)});
        });
  }

  const ShardSums total = reduce_shards(shards);
  McEstimate est;
  est.n_samples = n_samples;
  est.seed = seed;
  est.mean = {total.re / static_cast<double>(n_samples),
              total.im / static_cast<double>(n_samples)};
  est.stderr_re = stderr_from(total.re, total.re2, n_samples);
  est.stderr_im = stderr_from(total.im, total.im2, n_samples);
  return est;
}

MomentReport sampler_selftest(long n_samples, std::uint64_t seed) {
  if (n_samples < 100000) {
    throw std::domain_error("sampler_selftest: n_samples must be >= 1e5");
  }
  // accumulate (u, u^2) through the same sharded machinery
  const auto shards = run_shards(n_samples, seed, 1,
                                 [](std::mt19937_64& eng, SampleAccumulator& acc) {
                                   const double u = sample_cos_theta(to_unit_double(eng()));
                                   acc.add({u, u * u});
                                 });
  const ShardSums total = reduce_shards(shards);

  MomentReport rep;
  rep.n_samples = n_samples;
  rep.seed = seed;
  rep.mean_u = total.re / static_cast<double>(n_samples);
  rep.mean_u2 = total.im / static_cast<double>(n_samples);
  // Var(u) = E[u^2] = 2/5; Var(u^2) = E[u^4] - E[u^2]^2 = 9/35 - 4/25
  rep.sigma_u = std::sqrt(0.4 / static_cast<double>(n_samples));
  rep.sigma_u2 = std::sqrt((9.0 / 35.0 - 0.16) / static_cast<double>(n_samples));
  return rep;
}

}  // namespace goldilocks
