#include "blscale/segfit.hpp"

#include <limits>
#include <sstream>

namespace blscale {

namespace {

constexpr FitFlag kAllFlags[] = {FitFlag::NoDistinctLayers, FitFlag::EtaStarOutOfRange,
                                 FitFlag::FreeStreamOvershoot};

}  // namespace

const char* flag_name(FitFlag f) {
  switch (f) {
    case FitFlag::NoDistinctLayers: return "NO_DISTINCT_LAYERS";
    case FitFlag::EtaStarOutOfRange: return "ETA_STAR_OUT_OF_RANGE";
    case FitFlag::FreeStreamOvershoot: return "FREE_STREAM_OVERSHOOT";
  }
  return "UNKNOWN";
}

std::vector<std::string> FitFlags::names() const {
  std::vector<std::string> out;
  for (FitFlag f : kAllFlags)
    if (has(f)) out.emplace_back(flag_name(f));
  return out;
}

std::string FitFlags::to_string() const {
  std::string out;
  for (const auto& n : names()) {
    if (!out.empty()) out += ',';
    out += n;
  }
  return out;
}

void validate_config(const FitConfig& config) {
  if (!(config.eta_min > 0) || !std::isfinite(config.eta_min))
    throw DomainError("config: eta_min must be positive");
  if (!(config.frac_u_max > 0 && config.frac_u_max <= 1))
    throw DomainError("config: frac_u_max must lie in (0, 1]");
  if (config.min_seg_points < 3) throw DomainError("config: min_seg_points must be >= 3");
  if (!(config.exponent_tol >= 0) || !std::isfinite(config.exponent_tol))
    throw DomainError("config: exponent_tol must be non-negative");
}

Eigen::Array<bool, Eigen::Dynamic, 1> retained_mask(const DimensionlessProfile& profile,
                                                    const FitConfig& config) {
  Eigen::Array<bool, Eigen::Dynamic, 1> keep = profile.eta() >= config.eta_min;
  if (const auto phi_inf = profile.phi_inf())
    keep = keep && (profile.phi() / *phi_inf <= config.frac_u_max);
  return keep;
}

double split_sse(const Eigen::ArrayXd& lg_eta, const Eigen::ArrayXd& lg_phi, Eigen::Index k) {
  const Eigen::Index n = lg_eta.size();
  const auto wall = ols_lg(lg_eta.head(k + 1), lg_phi.head(k + 1));
  const auto outer = ols_lg(lg_eta.tail(n - k - 1), lg_phi.tail(n - k - 1));
  return wall.sse + outer.sse;
}

TwoLayerFit fit_two_layer(const DimensionlessProfile& profile, const FitConfig& config) {
  validate_config(config);

  const auto keep = retained_mask(profile, config);
  const Eigen::Index n = keep.count();
  const Eigen::Index min_seg = config.min_seg_points;
  if (n < 2 * min_seg) {
    std::ostringstream os;
    os << "fit_two_layer: " << n << " points retained after filtering, need at least "
       << 2 * min_seg;
    throw InsufficientDataError(os.str());
  }

  TwoLayerFit fit;
  fit.eta.resize(n);
  fit.phi.resize(n);
  for (Eigen::Index i = 0, j = 0; i < profile.size(); ++i) {
    if (!keep[i]) continue;
    fit.eta[j] = profile.eta()[i];
    fit.phi[j] = profile.phi()[i];
    ++j;
  }
  const Eigen::ArrayXd lg_eta = fit.eta.log10();
  const Eigen::ArrayXd lg_phi = fit.phi.log10();

  // Wall segment is [0..k], outer segment is [k+1..n-1].
  Eigen::Index best_k = -1;
  double best_sse = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = min_seg - 1; k <= n - min_seg - 1; ++k) {
    const double sse = split_sse(lg_eta, lg_phi, k);
    if (sse < best_sse) {
      best_sse = sse;
      best_k = k;
    }
  }
  if (best_k < 0) throw InsufficientDataError("fit_two_layer: no admissible breakpoint");

  const auto wall = ols_lg(lg_eta.head(best_k + 1), lg_phi.head(best_k + 1));
  const auto outer = ols_lg(lg_eta.tail(n - best_k - 1), lg_phi.tail(n - best_k - 1));
  fit.wall_law = wall.law;
  fit.outer_law = outer.law;
  fit.break_index = best_k;
  fit.r2_wall = wall.r2;
  fit.r2_outer = outer.r2;
  fit.sse_total = wall.sse + outer.sse;

  if (const auto phi_inf = profile.phi_inf(); phi_inf && (profile.phi() >= *phi_inf).any())
    fit.flags.set(FitFlag::FreeStreamOvershoot);

  if (std::abs(fit.outer_law.exponent - fit.wall_law.exponent) <= config.exponent_tol) {
    fit.flags.set(FitFlag::NoDistinctLayers);
  } else {
    try {
      fit.eta_star = interface_eta(fit.wall_law, fit.outer_law, config.exponent_tol);
    } catch (const NoIntersectionError&) {
      // Crossing beyond double range: certainly outside the data.
      fit.flags.set(FitFlag::EtaStarOutOfRange);
    }
    if (fit.eta_star && (*fit.eta_star < fit.eta[0] || *fit.eta_star > fit.eta[n - 1]))
      fit.flags.set(FitFlag::EtaStarOutOfRange);
  }
  return fit;
}

}  // namespace blscale
