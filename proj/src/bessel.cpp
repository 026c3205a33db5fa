#include "goldilocks/bessel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace goldilocks {

namespace {

constexpr int kMaxOrder = 10000;
constexpr double kMaxArg = 1.0e4;
constexpr double kRescaleThreshold = 1.0e250;

void check_domain(int n, double x) {
  if (n < 0 || n > kMaxOrder) {
    throw std::domain_error("bessel_jn: order out of range [0, 1e4]");
  }
  if (!std::isfinite(x) || x < 0.0 || x > kMaxArg) {
    throw std::domain_error("bessel_jn: argument out of range [0, 1e4]");
  }
}

// Ascending series sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!).
// Cancellation-free when terms decrease from the start, i.e.
// (x/2)^2 <= (n+1); also acceptable for x <= 6 where at most ~3
// digits cancel.
double series_jn(int n, double x) {
  const double h = 0.5 * x;
  double term = 1.0;
  for (int j = 1; j <= n; ++j) {
    term *= h / static_cast<double>(j);
    if (term == 0.0) return 0.0;  // underflow: |J_n| < 1e-300
  }
  double sum = term;
  const double h2 = h * h;
  for (int k = 1; k <= 200; ++k) {
    term *= -h2 / (static_cast<double>(k) * static_cast<double>(n + k));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

bool series_is_safe(int n, double x) {
  return x <= 6.0 || 0.25 * x * x <= 0.5 * static_cast<double>(n + 1);
}

// Miller's algorithm: downward recurrence from a start order well above
// both n_max and the turning point k ~ x, normalized afterwards with
// J_0(x) + 2 sum_{k>=1} J_{2k}(x) = 1.
std::vector<double> miller_all(int n_max, double x) {
  const int k0 = std::max(n_max, static_cast<int>(std::ceil(x)));
  const int start = k0 + 16 + static_cast<int>(std::ceil(14.0 * std::cbrt(k0 + 1.0)));

  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  double jp = 0.0;       // J_{k+1}
  double jc = 1.0e-30;   // J_k
  double norm = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k <= n_max) out[static_cast<std::size_t>(k)] = jc;
    if (k == 0) {
      norm += jc;
    } else if (k % 2 == 0) {
      norm += 2.0 * jc;
    }
    if (k > 0) {
      double jm = (2.0 * k / x) * jc - jp;
      jp = jc;
      jc = jm;
      if (std::abs(jc) > kRescaleThreshold) {
        const double s = 1.0 / kRescaleThreshold;
        jc *= s;
        jp *= s;
        norm *= s;
        for (double& v : out) v *= s;
      }
    }
  }
  for (double& v : out) v /= norm;
  return out;
}

}  // namespace

double bessel_jn(int n, double x) {
  check_domain(n, x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (series_is_safe(n, x)) return series_jn(n, x);
  return miller_all(n, x).back();
}

std::vector<double> bessel_jn_all(int n_max, double x) {
  check_domain(n_max, x);
  if (x == 0.0) {
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  if (x <= 6.0) {
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int k = 0; k <= n_max; ++k) out[static_cast<std::size_t>(k)] = series_jn(k, x);
    return out;
  }
  return miller_all(n_max, x);
}

}  // namespace goldilocks
