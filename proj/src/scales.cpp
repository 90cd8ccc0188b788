#include "blscale/scales.hpp"

namespace blscale {

ScaleReport compute_scales(const TwoLayerFit& fit, const FlowMetadata& flow) {
  if (!fit.eta_star) throw NoInterfaceError("compute_scales: fit has no interface eta*");
  if (!(flow.u_star > 0) || !(flow.U_inf > 0) || !(flow.nu > 0))
    throw DomainError("compute_scales: u_star, U_inf and nu must be positive");

  ScaleReport r;
  r.flags = fit.flags;
  r.ln_re1 = re1_from_A(fit.wall_law.prefactor);
  r.ln_re2 = re2_from_alpha(fit.wall_law.exponent);
  const auto eff = effective_re(r.ln_re1, r.ln_re2);
  r.ln_re_eff = eff.ln_re;
  r.delta = eff.delta;
  r.u_star_over_U = flow.u_star / flow.U_inf;

  const double eta_star = *fit.eta_star;
  r.lambda_wall = eta_star * flow.nu / flow.u_star;
  r.lambda_cap = std::exp(r.ln_re_eff) * flow.nu / flow.U_inf;
  r.lg_ratio = lg_scale_ratio(r.u_star_over_U, r.ln_re_eff, eta_star);
  if (!std::isfinite(r.lambda_cap))
    throw DomainError("compute_scales: effective Re overflows double range");
  return r;
}

}  // namespace blscale
