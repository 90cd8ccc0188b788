#pragma once

// Test-only reference computations, deliberately routed differently from the
// library: QR least squares in extended precision, bisection for crossings.

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "blscale/core.hpp"

namespace oracle {

struct Line {
  long double intercept = 0;  // lg C
  long double slope = 0;      // exponent
  long double sse = 0;
};

/// lg phi = intercept + slope * lg eta by Householder QR on the design matrix.
inline Line qr_loglog(const Eigen::ArrayXd& eta, const Eigen::ArrayXd& phi) {
  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const Eigen::Index n = eta.size();
  MatL X(n, 2);
  VecL y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    X(i, 0) = 1;
    X(i, 1) = std::log10(static_cast<long double>(eta[i]));
    y[i] = std::log10(static_cast<long double>(phi[i]));
  }
  const VecL beta = X.householderQr().solve(y);
  Line out{beta[0], beta[1], (y - X * beta).squaredNorm()};
  return out;
}

/// Breakpoint minimizing the two-segment SSE, smallest index on ties.
inline Eigen::Index brute_force_break(const Eigen::ArrayXd& eta, const Eigen::ArrayXd& phi,
                                      int min_seg) {
  const Eigen::Index n = eta.size();
  Eigen::Index best = -1;
  long double best_sse = std::numeric_limits<long double>::infinity();
  for (Eigen::Index k = min_seg - 1; k <= n - min_seg - 1; ++k) {
    const long double sse = qr_loglog(eta.head(k + 1), phi.head(k + 1)).sse +
                            qr_loglog(eta.tail(n - k - 1), phi.tail(n - k - 1)).sse;
    if (sse < best_sse) {
      best_sse = sse;
      best = k;
    }
  }
  return best;
}

/// Crossing of two power laws found by bisection on ln eta.
inline double bisect_interface(const blscale::PowerLawd& a, const blscale::PowerLawd& b) {
  auto diff = [&](long double t) {
    return std::log(static_cast<long double>(a.prefactor)) + a.exponent * t -
           std::log(static_cast<long double>(b.prefactor)) - b.exponent * t;
  };
  long double lo = -700, hi = 700;
  const bool rising = diff(hi) > diff(lo);
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if ((diff(mid) > 0) == rising)
      hi = mid;
    else
      lo = mid;
  }
  return static_cast<double>(std::exp(0.5L * (lo + hi)));
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace oracle
