#include "blscale/synth.hpp"

#include <random>

namespace blscale {

namespace {

void apply_noise(Eigen::ArrayXd& phi, double sigma, std::uint64_t seed) {
  if (sigma == 0) return;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  for (Eigen::Index i = 0; i < phi.size(); ++i) phi[i] *= std::exp(normal(rng));
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0; }

}  // namespace

void validate_spec(const SynthSpec& s) {
  if (!positive_finite(s.ln_re)) throw InvalidSpecError("synth: ln_re must be positive");
  if (!positive_finite(s.eta_lo) || !std::isfinite(s.eta_hi) ||
      !(s.eta_lo < s.eta_star && s.eta_star < s.eta_hi))
    throw InvalidSpecError("synth: need 0 < eta_lo < eta_star < eta_hi");
  if (s.n_points < 10) throw InvalidSpecError("synth: n_points must be >= 10");
  if (!(s.noise_sigma >= 0) || !std::isfinite(s.noise_sigma))
    throw InvalidSpecError("synth: noise_sigma must be non-negative");
  if (!std::isfinite(s.beta)) throw InvalidSpecError("synth: beta must be finite");
  if (!positive_finite(s.u_star_over_U) || !positive_finite(s.nu) || !positive_finite(s.u_star))
    throw InvalidSpecError("synth: u_star_over_U, nu and u_star must be positive");
  if (s.re_theta && !positive_finite(*s.re_theta))
    throw InvalidSpecError("synth: re_theta must be positive");
}

Eigen::ArrayXd log_spaced(double lo, double hi, int n) {
  Eigen::ArrayXd out = Eigen::ArrayXd::LinSpaced(n, std::log10(lo), std::log10(hi));
  out = Eigen::pow(10.0, out);
  out[0] = lo;
  out[n - 1] = hi;
  return out;
}

SynthRun gen_two_layer(const SynthSpec& spec) {
  validate_spec(spec);
  GroundTruth truth;
  truth.wall_law = wall_law_from_re(spec.ln_re);
  truth.outer_law = {truth.wall_law.prefactor *
                         std::pow(spec.eta_star, truth.wall_law.exponent - spec.beta),
                     spec.beta};
  truth.eta_star = spec.eta_star;

  const Eigen::ArrayXd eta = log_spaced(spec.eta_lo, spec.eta_hi, spec.n_points);
  Eigen::ArrayXd phi(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i)
    phi[i] = eval_law(eta[i] <= spec.eta_star ? truth.wall_law : truth.outer_law, eta[i]);
  apply_noise(phi, spec.noise_sigma, spec.seed);

  const double U_inf = spec.u_star / spec.u_star_over_U;
  SynthRun out{dimensionalize(DimensionlessProfile(eta, phi), spec.name, spec.u_star, U_inf,
                              spec.nu, spec.re_theta),
               truth};
  return out;
}

DimensionlessProfile gen_single_law(const PowerLawd& law, double eta_lo, double eta_hi,
                                    int n_points, double noise_sigma, std::uint64_t seed) {
  if (!positive_finite(eta_lo) || !std::isfinite(eta_hi) || !(eta_lo < eta_hi))
    throw InvalidSpecError("gen_single_law: need 0 < eta_lo < eta_hi");
  if (n_points < 2) throw InvalidSpecError("gen_single_law: n_points must be >= 2");
  if (!(noise_sigma >= 0)) throw InvalidSpecError("gen_single_law: noise_sigma must be >= 0");
  if (!positive_finite(law.prefactor))
    throw InvalidSpecError("gen_single_law: prefactor must be positive");
  const Eigen::ArrayXd eta = log_spaced(eta_lo, eta_hi, n_points);
  Eigen::ArrayXd phi = eval_law(law, eta);
  apply_noise(phi, noise_sigma, seed);
  return DimensionlessProfile(eta, std::move(phi));
}

Run dimensionalize(const DimensionlessProfile& profile, std::string name, double u_star,
                   double U_inf, double nu, std::optional<double> re_theta) {
  Run run;
  run.name = std::move(name);
  run.u_star = u_star;
  run.U_inf = U_inf;
  run.nu = nu;
  run.re_theta = re_theta;
  run.y = profile.eta() * (nu / u_star);
  run.u = profile.phi() * u_star;
  validate_run(run);
  return run;
}

}  // namespace blscale
