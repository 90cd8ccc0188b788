#include <doctest.h>

#include <random>

#include "blscale/scales.hpp"
#include "oracle.hpp"

using namespace blscale;

namespace {

TwoLayerFit fit_with(double A, double alpha, std::optional<double> eta_star) {
  TwoLayerFit fit;
  fit.wall_law = {A, alpha};
  fit.outer_law = {1.0, 0.3};
  fit.eta_star = eta_star;
  return fit;
}

}  // namespace

TEST_CASE("re1_from_A") {
  CHECK(re1_from_A(8.27350) == doctest::Approx(10.0).epsilon(1e-5));
  CHECK(re1_from_A(8.273502691896258) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(re1_from_A(2.5 + 1 / std::sqrt(3.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(re1_from_A(2.5), NonphysicalFitError);
  CHECK_THROWS_AS(re1_from_A(1.0), NonphysicalFitError);
}

TEST_CASE("re2_from_alpha") {
  CHECK(re2_from_alpha(0.15) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(re2_from_alpha(1.5) == 1.0);
  CHECK_THROWS_AS(re2_from_alpha(0.0), NonphysicalFitError);
  CHECK_THROWS_AS(re2_from_alpha(-0.1), NonphysicalFitError);
}

TEST_CASE("effective_re") {
  const auto e = effective_re(10.2, 9.8);
  CHECK(e.ln_re == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(e.delta == doctest::Approx(0.04).epsilon(1e-13));
  const auto same = effective_re(10.0, 10.0);
  CHECK(same.ln_re == 10.0);
  CHECK(same.delta == 0.0);
  CHECK_THROWS_AS(effective_re(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(effective_re(1.0, -1.0), DomainError);
}

TEST_CASE("compute_scales examples") {
  const auto w = wall_law_from_re(10.0);
  const auto fit = fit_with(w.prefactor, w.exponent, 256.0);

  // lambda = 256 * 1.5e-5 / 0.5
  const auto r = compute_scales(fit, FlowMetadata{0.5, 14.2857, 1.5e-5});
  CHECK(r.lambda_wall == doctest::Approx(7.68e-3).epsilon(1e-14));
  // Lambda = e^10 * 1.5e-5 / 14.2857
  CHECK(r.lambda_cap == doctest::Approx(0.023127812212359267).epsilon(1e-12));
  CHECK(r.ln_re_eff == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(r.delta < 1e-14);
  CHECK(r.ln_re_eff == (r.ln_re1 + r.ln_re2) / 2);
  CHECK(std::abs(r.lg_ratio - (std::log10(r.lambda_cap) - std::log10(r.lambda_wall))) < 1e-12);

  // u*/U = 0.035: Lambda/lambda = 0.035 e^10 / 256
  const auto r2 = compute_scales(fit, FlowMetadata{0.035 * 14.2857, 14.2857, 1.5e-5});
  CHECK(r2.lambda_cap / r2.lambda_wall == doctest::Approx(3.011430870383731).epsilon(1e-12));
  CHECK(r2.lg_ratio == doctest::Approx(0.47877289807094436).epsilon(1e-12));
  CHECK(std::log10(scale_ratio(0.035, std::exp(10.0), 256.0)) ==
        doctest::Approx(0.47877289807094436).epsilon(1e-13));
}

TEST_CASE("compute_scales errors and flag propagation") {
  const auto w = wall_law_from_re(10.0);
  CHECK_THROWS_AS(compute_scales(fit_with(w.prefactor, w.exponent, std::nullopt), FlowMetadata{0.5, 14, 1.5e-5}),
                  NoInterfaceError);
  CHECK_THROWS_AS(compute_scales(fit_with(2.4, 0.15, 256.0), FlowMetadata{0.5, 14, 1.5e-5}),
                  NonphysicalFitError);
  CHECK_THROWS_AS(compute_scales(fit_with(8.0, -0.1, 256.0), FlowMetadata{0.5, 14, 1.5e-5}),
                  NonphysicalFitError);
  CHECK_THROWS_AS(compute_scales(fit_with(8.0, 0.15, 256.0), FlowMetadata{0.5, 0, 1.5e-5}), DomainError);

  auto flagged = fit_with(w.prefactor, w.exponent, 256.0);
  flagged.flags.set(FitFlag::EtaStarOutOfRange);
  CHECK(compute_scales(flagged, FlowMetadata{0.5, 14, 1.5e-5}).flags.has(FitFlag::EtaStarOutOfRange));
}

TEST_CASE("decomposed and direct ratio forms agree") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> us(0.01, 0.08), ln_re(5, 15), lg_eta(1.5, 3.5);
  for (int i = 0; i < 500; ++i) {
    const double u = us(rng), lr = ln_re(rng), e = std::pow(10.0, lg_eta(rng));
    CHECK(std::abs(lg_scale_ratio(u, lr, e) - std::log10(scale_ratio(u, std::exp(lr), e))) <= 1e-12);
  }
}

TEST_CASE("length scales are linear in nu") {
  const auto w = wall_law_from_re(10.5);
  const auto fit = fit_with(w.prefactor, w.exponent, 300.0);
  const auto base = compute_scales(fit, FlowMetadata{0.4, 12, 1e-5});
  for (double c : {0.1, 2.0, 37.0}) {
    const auto r = compute_scales(fit, FlowMetadata{0.4, 12, c * 1e-5});
    CHECK(r.lambda_wall == doctest::Approx(c * base.lambda_wall).epsilon(1e-14));
    CHECK(r.lambda_cap == doctest::Approx(c * base.lambda_cap).epsilon(1e-14));
    CHECK(r.lg_ratio == base.lg_ratio);
  }
}

TEST_CASE("equal scales give a zero log ratio") {
  // Choose u*/U so that (u*/U) e^lnRe = eta*.
  const auto w = wall_law_from_re(10.0);
  const double eta_star = 256.0;
  const double U = 20.0;
  const double u_star = U * eta_star / std::exp(10.0);
  const auto r = compute_scales(fit_with(w.prefactor, w.exponent, eta_star), FlowMetadata{u_star, U, 1.5e-5});
  CHECK(std::abs(r.lg_ratio) < 1e-13);
  CHECK(r.lambda_cap == doctest::Approx(r.lambda_wall).epsilon(1e-13));
}
