#include "goldilocks/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "goldilocks/bessel.hpp"

namespace goldilocks {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_z(double z) {
  if (!std::isfinite(z) || z < 0.0) {
    throw std::domain_error("kernel: z must be finite and non-negative");
  }
}

// ---------------------------------------------------------------------
// Gauss-Kronrod 7-15 pair (QUADPACK dqk15 abscissae/weights).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
  std::complex<double> value{0.0, 0.0};
  double err = 0.0;
  long evals = 0;
  bool converged = true;
};

template <class F>
void gk15(const F& f, double a, double b, std::complex<double>& k15,
          std::complex<double>& g7) {
  const double xm = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  const std::complex<double> fc = f(xm);
  k15 = kWgk[7] * fc;
  g7 = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const std::complex<double> fsum = f(xm - hl * kXgk[i]) + f(xm + hl * kXgk[i]);
    k15 += kWgk[i] * fsum;
    if (i % 2 == 1) g7 += kWg[i / 2] * fsum;
  }
  k15 *= hl;
  g7 *= hl;
}

// Adaptive bisection with an error budget proportional to interval
// length; `presplit` resolves the oscillation before adaptivity starts.
template <class F>
GkResult adaptive_gk(const F& f, double a, double b, double tol, int presplit,
                     const QuadratureOptions& opts) {
  struct Seg {
    double a, b;
    int depth;
  };
  const double budget_per_len = tol / (b - a);
  std::vector<Seg> stack;
  stack.reserve(64);
  const int m = std::max(1, presplit);
  for (int i = m - 1; i >= 0; --i) {
    const double sa = a + (b - a) * static_cast<double>(i) / m;
    const double sb = a + (b - a) * static_cast<double>(i + 1) / m;
    stack.push_back({sa, sb, 0});
  }

  GkResult out;
  long processed = 0;
  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    std::complex<double> k15, g7;
    gk15(f, s.a, s.b, k15, g7);
    out.evals += 15;
    ++processed;
    const double err = std::abs(k15 - g7);
    const bool out_of_budget = processed > opts.max_segments;
    if (err <= budget_per_len * (s.b - s.a) || s.depth >= opts.max_depth ||
        out_of_budget) {
      out.value += k15;
      out.err += err;
      if (err > budget_per_len * (s.b - s.a)) out.converged = false;
    } else {
      const double mid = 0.5 * (s.a + s.b);
      stack.push_back({mid, s.b, s.depth + 1});
      stack.push_back({s.a, mid, s.depth + 1});
    }
  }
  return out;
}

int presplit_count(double z) {
  if (z <= 500.0) return 1;
  return static_cast<int>(std::ceil(2.0 * z / std::numbers::pi));
}

// M_n = (1/4) Int (1+u^2)(1-u)^n du = 2^n [1/(n+1) - 2/(n+2) + 2/(n+3)]
double weight_moment(int n) {
  return std::pow(2.0, n) * (1.0 / (n + 1) - 2.0 / (n + 2) + 2.0 / (n + 3));
}

// Int_{-1}^{1} (1+u^2) T_n(u) du for even n (odd vanish); T_n are
// Chebyshev polynomials, u^2 T_n = T_n/2 + (T_{n+2} + T_{|n-2|})/4 and
// Int T_m du = 2/(1-m^2) for even m.
double chebyshev_weight(int n) {
  if (n == 0) return 8.0 / 3.0;
  const double nn = static_cast<double>(n);
  return 3.0 / (1.0 - nn * nn) + 0.5 / (1.0 - (nn + 2.0) * (nn + 2.0)) +
         0.5 / (1.0 - (nn - 2.0) * (nn - 2.0));
}

std::complex<double> small_z_series(double z, double& err, long& terms) {
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> izn{1.0, 0.0};
  const std::complex<double> iz{0.0, z};
  double factorial = 1.0;
  terms = 0;
  err = 0.0;
  for (int n = 1; n <= 40; ++n) {
    izn *= iz;
    factorial *= n;
    const std::complex<double> term = -izn * (weight_moment(n) / factorial);
    sum += term;
    ++terms;
    if (std::abs(term) <= 0.5 * kEps * std::abs(sum) && n >= 4) {
      err = std::abs(term) + kEps * std::abs(sum);
      break;
    }
    err = std::abs(term);
  }
  return sum;
}

}  // namespace

KernelResult closed_form_kernel(double z, double switchover) {
  check_z(z);
  // the series branch is tuned for small arguments only
  if (!(switchover > 0.0 && switchover <= 0.5)) {
    throw std::domain_error("closed_form_kernel: switchover must lie in (0, 0.5]");
  }
  KernelResult r;
  r.method = KernelMethod::closed_form;
  if (z <= switchover) {
    r.value = small_z_series(z, r.abs_error_estimate, r.terms_or_evals);
    return r;
  }
  const double s = std::sin(z);
  const double c = std::cos(z);
  const double g = s / z + c / (z * z) - s / (z * z * z);
  r.value = 2.0 / 3.0 - std::complex<double>(c, s) * g;
  r.abs_error_estimate = 2.0 * kEps + 3.0 * kEps / (z * z);
  r.terms_or_evals = 1;
  return r;
}

KernelResult quadrature_kernel(double z, double tol, const QuadratureOptions& opts) {
  check_z(z);
  if (!(tol > 1e-14 && tol < 1e-2)) {
    throw std::domain_error("quadrature_kernel: tol must lie in (1e-14, 1e-2)");
  }
  const auto integrand = [z](double u) {
    const double theta = z * (1.0 - u);
    const std::complex<double> osc{1.0 - std::cos(theta), -std::sin(theta)};
    return 0.25 * (1.0 + u * u) * osc;
  };
  const GkResult gk = adaptive_gk(integrand, -1.0, 1.0, tol, presplit_count(z), opts);
  KernelResult r;
  r.value = gk.value;
  r.abs_error_estimate = gk.err;
  r.method = KernelMethod::quadrature;
  r.terms_or_evals = gk.evals;
  if (!gk.converged) {
    throw ConvergenceError("quadrature_kernel: subdivision limit reached", r);
  }
  return r;
}

KernelResult series_kernel(double z, double tol) {
  check_z(z);
  if (!(tol > 0.0)) {
    throw std::domain_error("series_kernel: tol must be positive");
  }
  KernelResult r;
  r.method = KernelMethod::jacobi_anger;
  if (z == 0.0) {
    r.value = {0.0, 0.0};
    r.terms_or_evals = 1;
    return r;
  }
  const long n_max_terms = static_cast<long>(std::ceil(z)) + 200;
  const int max_order =
      static_cast<int>(std::min<long>(2 * (n_max_terms - 1), 10000));
  const std::vector<double> jn = bessel_jn_all(max_order, z);

  // I(z) = a_0 J_0(z) + 2 sum_m (-1)^m a_{2m} J_{2m}(z), with a_n the
  // projections of (1+u^2) on the cosine harmonics.
  double partial = 0.0;
  double last3[3] = {std::numeric_limits<double>::max(),
                     std::numeric_limits<double>::max(),
                     std::numeric_limits<double>::max()};
  long terms = 0;
  bool converged = false;
  for (long m = 0; m < n_max_terms; ++m) {
    const int order = static_cast<int>(2 * m);
    if (order > max_order) break;
    double term;
    if (m == 0) {
      term = chebyshev_weight(0) * jn[0];
    } else {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      term = 2.0 * sign * chebyshev_weight(order) * jn[static_cast<std::size_t>(order)];
    }
    partial += term;
    ++terms;
    last3[m % 3] = std::abs(term);
    const double threshold = tol * std::max(std::abs(partial), 1.0);
    if (terms >= 3 && last3[0] < threshold && last3[1] < threshold &&
        last3[2] < threshold) {
      converged = true;
      break;
    }
  }
  const std::complex<double> phase{std::cos(z), std::sin(z)};
  r.value = 2.0 / 3.0 - 0.25 * phase * partial;
  r.abs_error_estimate = 0.25 * (last3[0] + last3[1] + last3[2]) + 4.0 * kEps;
  r.terms_or_evals = terms;
  if (!converged) {
    throw ConvergenceError("series_kernel: term budget exhausted", r);
  }
  return r;
}

KernelResult taylor_kernel(double z, int order) {
  check_z(z);
  if (order < 1 || order > 3) {
    throw std::domain_error("taylor_kernel: order must be 1, 2 or 3");
  }
  KernelResult r;
  r.method = KernelMethod::taylor;
  std::complex<double> v = kSmallZCoeff1 * z;
  double next = kSmallZCoeff2 * z * z;
  if (order >= 2) {
    v += std::complex<double>(next, 0.0);
    next = std::abs(kSmallZCoeff3) * z * z * z;
  }
  if (order >= 3) {
    v += kSmallZCoeff3 * (z * z * z);
    next = std::abs(kSmallZCoeff4) * z * z * z * z;
  }
  r.value = v;
  r.abs_error_estimate = next;
  r.terms_or_evals = order;
  return r;
}

KernelResult isotropic_kernel(double z, double tol, const QuadratureOptions& opts) {
  check_z(z);
  if (!(tol > 1e-12 && tol < 1e-2)) {
    throw std::domain_error("isotropic_kernel: tol must lie in (1e-12, 1e-2)");
  }
  const auto plane_wave = [z](double u) {
    return std::complex<double>{std::cos(z * u), std::sin(z * u)};
  };
  const auto plane_wave_u2 = [z](double u) {
    return (u * u) * std::complex<double>{std::cos(z * u), std::sin(z * u)};
  };
  const int presplit = presplit_count(z);
  const GkResult qc = adaptive_gk(plane_wave, -1.0, 1.0, 0.5 * tol, presplit, opts);
  const GkResult qd = adaptive_gk(plane_wave_u2, -1.0, 1.0, 0.5 * tol, presplit, opts);

  const std::complex<double> C = qc.value;
  const std::complex<double> D = qd.value;
  const std::complex<double> E = C - D;
  const std::complex<double> B = 0.125 * (C * C + D * D) + 0.0625 * E * E;

  KernelResult r;
  r.method = KernelMethod::quadrature;
  r.value = 2.0 / 3.0 - B;
  r.abs_error_estimate = (0.25 * std::abs(C) + 0.125 * std::abs(E)) * qc.err +
                         (0.25 * std::abs(D) + 0.125 * std::abs(E)) * qd.err +
                         4.0 * kEps;
  r.terms_or_evals = qc.evals + qd.evals;
  if (!qc.converged || !qd.converged) {
    throw ConvergenceError("isotropic_kernel: subdivision limit reached", r);
  }
  return r;
}

AsymptoticLimits asymptotic_limits(AngularShape shape) {
  // Mean of the normalized angular weight; identical for the
  // directional and the doubly averaged isotropic reduction.
  (void)shape;
  return {2.0 / 3.0, 0.0};
}

KernelResult evaluate_kernel(double z, AngularShape shape, KernelMethod method,
                             double tol) {
  if (shape == AngularShape::isotropic_powerlaw) {
    return isotropic_kernel(z, std::clamp(tol, 2e-12, 9e-3));
  }
  switch (method) {
    case KernelMethod::closed_form:
      return closed_form_kernel(z);
    case KernelMethod::quadrature:
      return quadrature_kernel(z, std::clamp(tol, 2e-14, 9e-3));
    case KernelMethod::jacobi_anger:
      return series_kernel(z, tol);
    case KernelMethod::taylor:
      return taylor_kernel(z, 3);
    case KernelMethod::asymptotic: {
      const AsymptoticLimits lim = asymptotic_limits(shape);
      KernelResult r;
      r.value = {lim.re, lim.im};
      r.method = KernelMethod::asymptotic;
      r.terms_or_evals = 1;
      return r;
    }
  }
  throw std::domain_error("evaluate_kernel: unknown method");
}

}  // namespace goldilocks
