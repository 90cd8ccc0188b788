#pragma once

// Synthetic profiles with known ground truth. The wall layer follows the
// pipe-flow law at the requested ln Re; the outer law is anchored so the two
// laws meet exactly at eta_star.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>

#include "blscale/core.hpp"

namespace blscale {

struct SynthSpec {
  std::string name = "synth";
  double ln_re = 10.0;
  double eta_star = 256.0;
  double beta = 0.08;
  double eta_lo = 30.0;
  double eta_hi = 1.0e4;
  int n_points = 200;
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;
  double u_star_over_U = 0.03;
  double nu = 1.5e-5;   // [m^2/s]
  double u_star = 0.5;  // [m/s]
  std::optional<double> re_theta;
};

void validate_spec(const SynthSpec& spec);

struct GroundTruth {
  PowerLawd wall_law;
  PowerLawd outer_law;
  double eta_star = 0;
};

struct SynthRun {
  Run run;
  GroundTruth truth;
};

/// n log-spaced values covering [lo, hi] with both endpoints exact.
Eigen::ArrayXd log_spaced(double lo, double hi, int n);

SynthRun gen_two_layer(const SynthSpec& spec);

DimensionlessProfile gen_single_law(const PowerLawd& law, double eta_lo, double eta_hi,
                                    int n_points, double noise_sigma, std::uint64_t seed);

/// Wraps a wall-unit profile as a dimensional run with the given flow metadata.
Run dimensionalize(const DimensionlessProfile& profile, std::string name, double u_star,
                   double U_inf, double nu, std::optional<double> re_theta = std::nullopt);

}  // namespace blscale
