#pragma once

// Two-segment least-squares identification of the intermediate structure:
// each layer is a straight line in (lg eta, lg phi), the breakpoint is chosen
// by exhaustive search and the interface comes from intersecting the laws.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blscale/core.hpp"

namespace blscale {

struct FitConfig {
  double eta_min = 30.0;      // viscous-sublayer cutoff in wall units
  double frac_u_max = 0.99;   // drop points with u / U_inf above this
  int min_seg_points = 5;
  double exponent_tol = kDefaultExponentTol;
};

/// Throws DomainError if the config is outside its documented ranges.
void validate_config(const FitConfig& config);

enum class FitFlag : std::uint8_t {
  NoDistinctLayers = 1u << 0,
  EtaStarOutOfRange = 1u << 1,
  FreeStreamOvershoot = 1u << 2,
};

class FitFlags {
 public:
  constexpr FitFlags() = default;
  constexpr void set(FitFlag f) { bits_ |= static_cast<std::uint8_t>(f); }
  constexpr bool has(FitFlag f) const { return (bits_ & static_cast<std::uint8_t>(f)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool operator==(const FitFlags&) const = default;

  /// Comma-separated flag names in fixed order; "" when empty.
  std::string to_string() const;
  std::vector<std::string> names() const;

 private:
  std::uint8_t bits_ = 0;
};

const char* flag_name(FitFlag f);

template <typename Scalar>
struct OlsResult {
  PowerLaw<Scalar> law;
  Scalar r2{};
  Scalar sse{};
};

/// Ordinary least squares of lg phi on lg eta, taking already-logged
/// coordinates. Two-pass centered sums keep exact data exact to rounding.
template <typename DerivedX, typename DerivedY>
OlsResult<typename DerivedX::Scalar> ols_lg(const Eigen::ArrayBase<DerivedX>& lg_eta,
                                            const Eigen::ArrayBase<DerivedY>& lg_phi) {
  using Scalar = typename DerivedX::Scalar;
  using std::pow;
  const Eigen::Index n = lg_eta.size();
  if (n < 2 || lg_phi.size() != n)
    throw InsufficientDataError("loglog_ols: need at least two points");
  const Scalar mean_x = lg_eta.mean();
  const Scalar mean_y = lg_phi.mean();
  const auto dx = (lg_eta - mean_x).eval();
  const auto dy = (lg_phi - mean_y).eval();
  const Scalar sxx = dx.square().sum();
  if (!(sxx > Scalar(0))) throw InsufficientDataError("loglog_ols: degenerate abscissa");
  const Scalar slope = (dx * dy).sum() / sxx;
  const Scalar intercept = mean_y - slope * mean_x;
  const Scalar sse = (dy - slope * dx).square().sum();
  const Scalar sst = dy.square().sum();
  OlsResult<Scalar> out;
  out.law = {pow(Scalar(10), intercept), slope};
  out.sse = sse;
  out.r2 = sst > Scalar(0) ? Scalar(1) - sse / sst : Scalar(1);
  return out;
}

/// Fits phi = C * eta^e to positive samples by OLS in lg-lg coordinates.
template <typename DerivedX, typename DerivedY>
OlsResult<typename DerivedX::Scalar> loglog_ols(const Eigen::ArrayBase<DerivedX>& eta,
                                                const Eigen::ArrayBase<DerivedY>& phi) {
  using Scalar = typename DerivedX::Scalar;
  if (eta.size() < 2 || phi.size() != eta.size())
    throw InsufficientDataError("loglog_ols: need at least two points");
  if (!(eta > Scalar(0)).all() || !(phi > Scalar(0)).all())
    throw DomainError("loglog_ols: samples must be positive");
  return ols_lg(eta.log10().eval(), phi.log10().eval());
}

struct TwoLayerFit {
  PowerLawd wall_law;
  PowerLawd outer_law;
  Eigen::Index break_index = 0;  // last retained point of the wall layer
  std::optional<double> eta_star;
  double r2_wall = 0;
  double r2_outer = 0;
  double sse_total = 0;
  FitFlags flags;
  // Retained points (after eta_min and free-stream exclusion).
  Eigen::ArrayXd eta;
  Eigen::ArrayXd phi;
};

/// Applies the eta_min and free-stream filters; returns the retained mask.
Eigen::Array<bool, Eigen::Dynamic, 1> retained_mask(const DimensionlessProfile& profile,
                                                    const FitConfig& config);

/// Total lg-residual SSE of the two segments split after index `k` of the
/// retained lg coordinates.
double split_sse(const Eigen::ArrayXd& lg_eta, const Eigen::ArrayXd& lg_phi, Eigen::Index k);

TwoLayerFit fit_two_layer(const DimensionlessProfile& profile, const FitConfig& config = {});

}  // namespace blscale
