#pragma once

// Reynolds numbers and length scales derived from a two-layer fit.
//
//   ln Re1 = sqrt(3) (A - 5/2)          ln Re2 = 3 / (2 alpha)
//   ln Re  = (ln Re1 + ln Re2) / 2      delta  = |ln Re1 - ln Re2| / ln Re
//   lambda = eta* nu / u_star           Lambda = Re nu / U
//   lg(Lambda / lambda) = (lg Re - lg eta*) + lg(u_star / U)

#include <cmath>
#include <numbers>

#include "blscale/core.hpp"
#include "blscale/segfit.hpp"

namespace blscale {

/// The dimensional inputs the scale computation needs.
struct FlowMetadata {
  double u_star = 0;
  double U_inf = 0;
  double nu = 0;
};

inline FlowMetadata metadata_of(const Run& run) { return {run.u_star, run.U_inf, run.nu}; }

struct ScaleReport {
  double ln_re1 = 0;
  double ln_re2 = 0;
  double delta = 0;
  double ln_re_eff = 0;
  double lambda_wall = 0;  // [m]
  double lambda_cap = 0;   // [m]
  double lg_ratio = 0;
  double u_star_over_U = 0;
  FitFlags flags;
};

template <typename Scalar>
Scalar re1_from_A(Scalar prefactor) {
  using std::sqrt;
  if (!(prefactor > Scalar(5) / Scalar(2)))
    throw NonphysicalFitError("re1_from_A: prefactor must exceed 5/2");
  return sqrt(Scalar(3)) * (prefactor - Scalar(5) / Scalar(2));
}

template <typename Scalar>
Scalar re2_from_alpha(Scalar alpha) {
  if (!(alpha > Scalar(0))) throw NonphysicalFitError("re2_from_alpha: exponent must be positive");
  return Scalar(3) / (Scalar(2) * alpha);
}

template <typename Scalar>
struct EffectiveRe {
  Scalar ln_re{};
  Scalar delta{};
};

/// Mean of the two ln Re solutions and their relative gap.
template <typename Scalar>
EffectiveRe<Scalar> effective_re(Scalar ln_re1, Scalar ln_re2) {
  using std::abs;
  if (!(ln_re1 > Scalar(0)) || !(ln_re2 > Scalar(0)))
    throw DomainError("effective_re: both ln Re values must be positive");
  const Scalar mean = (ln_re1 + ln_re2) / Scalar(2);
  return {mean, abs(ln_re1 - ln_re2) / mean};
}

/// lg(Lambda/lambda) in the decomposed form (lg Re - lg eta*) + lg(u*/U).
/// Takes ln Re so that Re itself never has to be formed.
template <typename Scalar>
Scalar lg_scale_ratio(Scalar u_star_over_U, Scalar ln_re, Scalar eta_star) {
  using std::log10;
  return (ln_re / std::numbers::ln10_v<Scalar> - log10(eta_star)) + log10(u_star_over_U);
}

/// Lambda/lambda in the direct form (u*/U) Re / eta*.
template <typename Scalar>
Scalar scale_ratio(Scalar u_star_over_U, Scalar re, Scalar eta_star) {
  return u_star_over_U * re / eta_star;
}

ScaleReport compute_scales(const TwoLayerFit& fit, const FlowMetadata& flow);
inline ScaleReport compute_scales(const TwoLayerFit& fit, const Run& run) {
  return compute_scales(fit, metadata_of(run));
}

}  // namespace blscale
