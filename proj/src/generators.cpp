#include "scaledim/generators.hpp"

#include <cmath>
#include <sstream>

#include "scaledim/errors.hpp"
#include "scaledim/rng.hpp"

namespace scaledim {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::line_toy:
      return "line-toy";
    case Family::circle:
      return "circle";
    case Family::swiss_roll:
      return "swiss-roll";
    case Family::henon:
      return "henon";
    case Family::gaussian:
      return "gaussian";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  if (s == "line-toy") return Family::line_toy;
  if (s == "circle") return Family::circle;
  if (s == "swiss-roll") return Family::swiss_roll;
  if (s == "henon") return Family::henon;
  if (s == "gaussian") return Family::gaussian;
  throw ParameterError("unknown generator family: " + s);
}

PointCloud gen_line_toy(std::size_t n, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  PointCloud cloud(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    cloud(i, 0) = rng.uniform();
    cloud(i, 1) = sigma == 0.0 ? 0.0 : rng.normal(0.0, sigma);
  }
  return cloud;
}

PointCloud gen_circle(std::size_t n, int ambient, std::uint64_t seed,
                      double noise_std) {
  if (ambient != 2 && ambient != 6) {
    throw ParameterError("circle ambient dimension must be 2 or 6");
  }
  Rng rng(seed);
  PointCloud cloud(n, static_cast<std::size_t>(ambient));
  for (std::size_t i = 0; i < n; ++i) {
    double lambda = rng.uniform_range(0.0, 2.0 * kPi);
    cloud(i, 0) = 5.0 * std::sin(lambda);
    cloud(i, 1) = 5.0 * std::cos(lambda);
    if (noise_std != 0.0) {
      cloud(i, 0) += rng.normal(0.0, noise_std);
      cloud(i, 1) += rng.normal(0.0, noise_std);
    }
    for (int j = 2; j < ambient; ++j) {
      cloud(i, static_cast<std::size_t>(j)) =
          noise_std == 0.0 ? 0.0 : rng.normal(0.0, noise_std);
    }
  }
  return cloud;
}

PointCloud gen_swiss_roll(std::size_t n, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  PointCloud cloud(n, 3);
  for (std::size_t i = 0; i < n; ++i) {
    double t = rng.uniform_range(1.5 * kPi, 4.5 * kPi);
    double h = rng.uniform_range(0.0, 21.0);
    cloud(i, 0) = t * std::cos(t);
    cloud(i, 1) = h;
    cloud(i, 2) = t * std::sin(t);
    if (sigma != 0.0) {
      cloud(i, 0) += rng.normal(0.0, sigma);
      cloud(i, 1) += rng.normal(0.0, sigma);
      cloud(i, 2) += rng.normal(0.0, sigma);
    }
  }
  return cloud;
}

PointCloud gen_henon(std::size_t n, std::size_t burn_in, double sigma,
                     std::uint64_t seed) {
  Rng rng(seed);
  PointCloud cloud(n, 2);
  double x = 0.0;
  double y = 0.0;
  for (std::size_t step = 0; step < burn_in + n; ++step) {
    double x_next = y + 1.0 - 1.4 * x * x;
    double y_next = 0.3 * x;
    x = x_next;
    y = y_next;
    if (std::fabs(x) > 10.0) {
      throw NumericEscapeError("henon trajectory diverged at iterate " +
                               std::to_string(step + 1));
    }
    if (step >= burn_in) {
      std::size_t i = step - burn_in;
      cloud(i, 0) = x;
      cloud(i, 1) = y;
    }
  }
  if (sigma != 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      cloud(i, 0) += rng.normal(0.0, sigma);
      cloud(i, 1) += rng.normal(0.0, sigma);
    }
  }
  return cloud;
}

PointCloud gen_gaussian(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  PointCloud cloud(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      cloud(i, j) = rng.normal();
    }
  }
  return cloud;
}

std::string GeneratorSpec::describe() const {
  std::ostringstream out;
  out << to_string(family) << " n=" << n;
  out.precision(17);
  switch (family) {
    case Family::line_toy:
    case Family::swiss_roll:
      out << " sigma=" << sigma;
      break;
    case Family::circle:
      out << " ambient=" << ambient
          << " noise_std=" << (sigma_set ? sigma : 0.5);
      break;
    case Family::henon:
      out << " burn_in=" << burn_in << " sigma=" << sigma;
      break;
    case Family::gaussian:
      out << " d=" << ambient;
      break;
  }
  out << " seed=" << seed;
  return out.str();
}

PointCloud generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::line_toy:
      return gen_line_toy(spec.n, spec.sigma, spec.seed);
    case Family::circle:
      return gen_circle(spec.n, spec.ambient, spec.seed,
                        spec.sigma_set ? spec.sigma : 0.5);
    case Family::swiss_roll:
      return gen_swiss_roll(spec.n, spec.sigma, spec.seed);
    case Family::henon:
      return gen_henon(spec.n, spec.burn_in, spec.sigma, spec.seed);
    case Family::gaussian:
      return gen_gaussian(spec.n, static_cast<std::size_t>(spec.ambient),
                          spec.seed);
  }
  throw ParameterError("unknown generator family");
}

}  // namespace scaledim
