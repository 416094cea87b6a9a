#include "scaledim/normalizers.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "scaledim/errors.hpp"
#include "scaledim/numerics.hpp"
#include "scaledim/rng.hpp"

namespace scaledim {

namespace {

constexpr double kPi = 3.14159265358979323846;

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = f(lm);
  double frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  double fa = f(a);
  double fb = f(b);
  double fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// 2*Gamma((k+1)/2) / (sqrt(pi)*Gamma(k/2))
double coordinate_density_constant(int k) {
  return 2.0 *
         std::exp(std::lgamma((k + 1) / 2.0) - std::lgamma(k / 2.0)) /
         std::sqrt(kPi);
}

double normalizer_exact(int k) {
  switch (k) {
    case 1:
      return kPi / 4.0;
    case 2:
      return kPi / 2.0 - 1.0;
    case 3:
      return 4.0 / kPi * (kPi * kPi / 16.0 - 0.25);
    default:
      throw ParameterError(
          "no closed form wired for k=" + std::to_string(k) +
          "; use quadrature or monte-carlo");
  }
}

double normalizer_quadrature(int k) {
  // a_k = C_k * int_0^{pi/2} u cos^{k-1}(u) du
  auto integrand = [k](double u) {
    return u * std::pow(std::cos(u), static_cast<double>(k - 1));
  };
  double integral = integrate(integrand, 0.0, kPi / 2.0, 1e-11);
  return coordinate_density_constant(k) * integral;
}

double normalizer_monte_carlo(int k, std::uint64_t samples,
                              std::uint64_t seed) {
  if (samples == 0) {
    throw ParameterError("monte-carlo normalizer needs samples > 0");
  }
  Rng rng(derive_stream(seed, 0x616b /* "ak" */));
  NeumaierSum sum;
  std::vector<double> dir(k + 1);
  for (std::uint64_t s = 0; s < samples; ++s) {
    double norm2 = 0.0;
    for (int j = 0; j <= k; ++j) {
      dir[j] = rng.normal();
      norm2 += dir[j] * dir[j];
    }
    double t = dir[0] / std::sqrt(norm2);
    sum.add(std::asin(std::fabs(t)));
  }
  return sum.value() / static_cast<double>(samples);
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::exact:
      return "exact";
    case Provenance::quadrature:
      return "quadrature";
    case Provenance::monte_carlo:
      return "monte-carlo";
  }
  return "?";
}

double compute_normalizer(int k, NormalizerMethod method,
                          std::uint64_t samples, std::uint64_t seed) {
  if (k < 1) {
    throw ParameterError("normalizer order k must be >= 1");
  }
  switch (method) {
    case NormalizerMethod::exact:
      return normalizer_exact(k);
    case NormalizerMethod::quadrature:
      return normalizer_quadrature(k);
    case NormalizerMethod::monte_carlo:
      return normalizer_monte_carlo(k, samples, seed);
  }
  throw ParameterError("unknown normalizer method");
}

NormalizerTable NormalizerTable::standard(int k_max) {
  if (k_max < 1) {
    throw ParameterError("k_max must be >= 1");
  }
  NormalizerTable table;
  for (int k = 1; k <= k_max; ++k) {
    if (k <= 3) {
      table.set({k, normalizer_exact(k), Provenance::exact});
    } else {
      table.set({k, normalizer_quadrature(k), Provenance::quadrature});
    }
  }
  return table;
}

void NormalizerTable::set(NormalizerEntry entry) {
  entries_[entry.k] = entry;
}

double NormalizerTable::value(int k) const { return entry(k).value; }

const NormalizerEntry& NormalizerTable::entry(int k) const {
  auto it = entries_.find(k);
  if (it == entries_.end()) {
    throw ParameterError("normalizer table has no entry for k=" +
                         std::to_string(k));
  }
  return it->second;
}

std::string NormalizerTable::to_text() const {
  std::ostringstream out;
  out << "# k a_k provenance\n";
  out.precision(17);
  for (const auto& [k, e] : entries_) {
    out << k << ' ' << e.value << ' ' << to_string(e.provenance) << '\n';
  }
  return out.str();
}

NormalizerTable NormalizerTable::from_text(const std::string& text) {
  NormalizerTable table;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int k = 0;
    double value = 0.0;
    std::string prov;
    if (!(row >> k >> value >> prov)) {
      throw CacheIntegrityError("malformed normalizer table row: " + line);
    }
    Provenance p;
    if (prov == "exact") {
      p = Provenance::exact;
    } else if (prov == "quadrature") {
      p = Provenance::quadrature;
    } else if (prov == "monte-carlo") {
      p = Provenance::monte_carlo;
    } else {
      throw CacheIntegrityError("unknown provenance tag: " + prov);
    }
    table.set({k, value, p});
  }
  return table;
}

}  // namespace scaledim
