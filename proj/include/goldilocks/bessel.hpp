#pragma once

#include <vector>

namespace goldilocks {

/// Integer-order Bessel function of the first kind J_n(x).
///
/// Valid for 0 <= n <= 1e4 and 0 <= x <= 1e4; absolute error <= 1e-12 on
/// that domain. Uses the ascending power series where it is
/// cancellation-free and Miller's downward recurrence with the
/// J_0 + 2*sum J_{2k} = 1 normalization otherwise.
/// Out-of-domain arguments throw std::domain_error.
double bessel_jn(int n, double x);

/// All orders J_0(x) .. J_{n_max}(x) from a single downward pass.
std::vector<double> bessel_jn_all(int n_max, double x);

}  // namespace goldilocks
