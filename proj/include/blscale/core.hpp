#pragma once

// Wall-unit representation of boundary-layer profiles and the scaling-law
// algebra shared by fitting, scale computation and synthesis.
//
//   eta = u_star * y / nu        phi = u / u_star
//   phi = C * eta^e              (one self-similar layer)
//   pipe-flow wall law:  C = ln Re / sqrt(3) + 5/2,  e = 3 / (2 ln Re)

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "blscale/errors.hpp"

namespace blscale {

inline constexpr double kDefaultExponentTol = 1e-6;

template <typename Scalar>
struct PowerLaw {
  Scalar prefactor{1};
  Scalar exponent{0};
};

using PowerLawd = PowerLaw<double>;

/// One experiment: dimensional profile plus flow metadata (SI units).
struct Run {
  std::string name;
  Eigen::ArrayXd y;  // wall distance [m]
  Eigen::ArrayXd u;  // mean velocity [m/s]
  double u_star = 0;
  double U_inf = 0;
  double nu = 0;
  std::optional<double> re_theta;
  std::optional<double> tau;    // [Pa]
  std::optional<double> rho;    // [kg/m^3]
  std::optional<double> theta;  // [m]
};

/// Throws InvalidRunError naming the first violated invariant.
void validate_run(const Run& run);

/// True when some u >= U_inf (measurement overshoot past the free stream).
bool has_free_stream_overshoot(const Run& run);

/// (eta, phi) samples in wall units, eta strictly increasing, both positive.
/// `phi_inf` is U_inf / u_star when the free-stream velocity is known; the
/// fitter uses it for free-stream exclusion.
class DimensionlessProfile {
 public:
  DimensionlessProfile() = default;
  DimensionlessProfile(Eigen::ArrayXd eta, Eigen::ArrayXd phi,
                       std::optional<double> phi_inf = std::nullopt);

  const Eigen::ArrayXd& eta() const { return eta_; }
  const Eigen::ArrayXd& phi() const { return phi_; }
  std::optional<double> phi_inf() const { return phi_inf_; }
  Eigen::Index size() const { return eta_.size(); }

 private:
  Eigen::ArrayXd eta_;
  Eigen::ArrayXd phi_;
  std::optional<double> phi_inf_;
};

DimensionlessProfile nondimensionalize(const Run& run);

/// prefactor * eta^exponent. Accepts a scalar or any Eigen array expression.
template <typename Scalar>
Scalar eval_law(const PowerLaw<Scalar>& law, Scalar eta) {
  if (!(eta > Scalar(0))) throw DomainError("eval_law: eta must be positive");
  using std::pow;
  return law.prefactor * pow(eta, law.exponent);
}

template <typename Derived>
auto eval_law(const PowerLaw<typename Derived::Scalar>& law,
              const Eigen::ArrayBase<Derived>& eta) {
  if (!(eta > typename Derived::Scalar(0)).all())
    throw DomainError("eval_law: eta must be positive");
  return (law.prefactor * eta.derived().pow(law.exponent)).eval();
}

/// Pipe-flow wall law at a given ln Re.
template <typename Scalar>
PowerLaw<Scalar> wall_law_from_re(Scalar ln_re) {
  if (!(ln_re > Scalar(0))) throw DomainError("wall_law_from_re: ln Re must be positive");
  using std::sqrt;
  return {ln_re / sqrt(Scalar(3)) + Scalar(5) / Scalar(2), Scalar(3) / (Scalar(2) * ln_re)};
}

/// Wall-unit coordinate where the two laws intersect, evaluated in log space:
/// lg eta* = (lg A - lg B) / (beta - alpha).
template <typename Scalar>
Scalar interface_eta(const PowerLaw<Scalar>& wall, const PowerLaw<Scalar>& outer,
                     Scalar exponent_tol = Scalar(kDefaultExponentTol)) {
  using std::abs;
  using std::isfinite;
  using std::log10;
  using std::pow;
  if (!(wall.prefactor > Scalar(0)) || !(outer.prefactor > Scalar(0)))
    throw DomainError("interface_eta: prefactors must be positive");
  const Scalar gap = outer.exponent - wall.exponent;
  if (!(abs(gap) > exponent_tol))
    throw NoIntersectionError("interface_eta: exponents equal within tolerance (parallel laws)");
  const Scalar lg_eta = (log10(wall.prefactor) - log10(outer.prefactor)) / gap;
  const Scalar eta = pow(Scalar(10), lg_eta);
  if (!isfinite(eta) || !(eta > Scalar(0)))
    throw NoIntersectionError("interface_eta: intersection outside representable range");
  return eta;
}

}  // namespace blscale
