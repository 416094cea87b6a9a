#pragma once

#include <cstdint>
#include <string>

#include "scaledim/point_cloud.hpp"

namespace scaledim {

enum class Family { line_toy, circle, swiss_roll, henon, gaussian };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

// x uniform on [0,1), vertical N(0, sigma^2) noise
PointCloud gen_line_toy(std::size_t n, double sigma, std::uint64_t seed);

// radius-5 circle with N(0, noise_std^2) jitter per coordinate; ambient 6
// appends four pure-noise coordinates. noise_std 0.5 matches N(0, 0.25)
// read as variance.
PointCloud gen_circle(std::size_t n, int ambient, std::uint64_t seed,
                      double noise_std = 0.5);

// (t cos t, h, t sin t), t uniform on [3pi/2, 9pi/2), h uniform on [0, 21),
// plus isotropic 3-d N(0, sigma^2) noise
PointCloud gen_swiss_roll(std::size_t n, double sigma, std::uint64_t seed);

// quadratic map trajectory from the origin, burn_in iterates dropped, then
// per-coordinate N(0, sigma^2) observational noise
PointCloud gen_henon(std::size_t n, std::size_t burn_in, double sigma,
                     std::uint64_t seed);

// i.i.d. standard normal entries
PointCloud gen_gaussian(std::size_t n, std::size_t d, std::uint64_t seed);

struct GeneratorSpec {
  Family family = Family::gaussian;
  std::size_t n = 100;
  double sigma = 0.0;     // noise std; circle defaults to 0.5 when unset
  int ambient = 2;        // circle: 2 or 6; gaussian: dimension
  std::size_t burn_in = 100;  // henon
  std::uint64_t seed = 0;
  bool sigma_set = false;

  std::string describe() const;
};

PointCloud generate(const GeneratorSpec& spec);

}  // namespace scaledim
