#include "blscale/core.hpp"

#include <sstream>

namespace blscale {

namespace {

constexpr double kMetadataRelTol = 1e-6;

[[noreturn]] void invalid(const Run& run, const std::string& what) {
  throw InvalidRunError("run '" + run.name + "': " + what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0; }

}  // namespace

void validate_run(const Run& run) {
  if (!positive_finite(run.u_star)) invalid(run, "u_star must be positive");
  if (!positive_finite(run.U_inf)) invalid(run, "U_inf must be positive");
  if (!positive_finite(run.nu)) invalid(run, "nu must be positive");
  if (run.y.size() != run.u.size()) invalid(run, "y and u differ in length");
  for (Eigen::Index i = 0; i < run.y.size(); ++i) {
    if (!positive_finite(run.y[i]) || !positive_finite(run.u[i])) {
      std::ostringstream os;
      os << "point " << i << " has non-positive y or u";
      invalid(run, os.str());
    }
    if (i > 0 && !(run.y[i] > run.y[i - 1])) {
      std::ostringstream os;
      os << "y not strictly increasing at point " << i;
      invalid(run, os.str());
    }
  }
  if (run.tau && run.rho) {
    if (!positive_finite(*run.tau) || !positive_finite(*run.rho))
      invalid(run, "tau and rho must be positive");
    const double implied = std::sqrt(*run.tau / *run.rho);
    if (std::abs(run.u_star - implied) / run.u_star > kMetadataRelTol)
      invalid(run, "u_star inconsistent with sqrt(tau/rho)");
  }
  if (run.re_theta && !positive_finite(*run.re_theta)) invalid(run, "re_theta must be positive");
  if (run.theta) {
    if (!positive_finite(*run.theta)) invalid(run, "theta must be positive");
    if (run.re_theta) {
      const double implied = run.U_inf * *run.theta / run.nu;
      if (std::abs(*run.re_theta - implied) / *run.re_theta > kMetadataRelTol)
        invalid(run, "re_theta inconsistent with U_inf*theta/nu");
    }
  }
}

bool has_free_stream_overshoot(const Run& run) { return (run.u >= run.U_inf).any(); }

DimensionlessProfile::DimensionlessProfile(Eigen::ArrayXd eta, Eigen::ArrayXd phi,
                                           std::optional<double> phi_inf)
    : eta_(std::move(eta)), phi_(std::move(phi)), phi_inf_(phi_inf) {
  if (eta_.size() != phi_.size()) throw InvalidRunError("profile: eta and phi differ in length");
  for (Eigen::Index i = 0; i < eta_.size(); ++i) {
    if (!positive_finite(eta_[i]) || !positive_finite(phi_[i]))
      throw InvalidRunError("profile: eta and phi must be positive and finite");
    if (i > 0 && !(eta_[i] > eta_[i - 1]))
      throw InvalidRunError("profile: eta must be strictly increasing");
  }
  if (phi_inf_ && !positive_finite(*phi_inf_))
    throw InvalidRunError("profile: phi_inf must be positive");
}

DimensionlessProfile nondimensionalize(const Run& run) {
  validate_run(run);
  Eigen::ArrayXd eta = run.y * (run.u_star / run.nu);
  Eigen::ArrayXd phi = run.u / run.u_star;
  return DimensionlessProfile(std::move(eta), std::move(phi), run.U_inf / run.u_star);
}

}  // namespace blscale
