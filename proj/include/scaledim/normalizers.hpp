#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace scaledim {

enum class Provenance { exact, quadrature, monte_carlo };

std::string to_string(Provenance p);

enum class NormalizerMethod { exact, quadrature, monte_carlo };

// a_k: the mean angle between a uniform direction on the unit sphere in
// (k+1)-space and a k-dimensional subspace. With t one coordinate of the
// direction (density proportional to (1-t^2)^((k-2)/2)), a_k = E arcsin|t|.
// a_1 = pi/4 exactly.
double compute_normalizer(int k, NormalizerMethod method,
                          std::uint64_t samples = 0, std::uint64_t seed = 0);

struct NormalizerEntry {
  int k;
  double value;
  Provenance provenance;
};

class NormalizerTable {
 public:
  // exact closed forms for k <= 3, quadrature beyond
  static NormalizerTable standard(int k_max);

  void set(NormalizerEntry entry);
  double value(int k) const;
  const NormalizerEntry& entry(int k) const;
  bool contains(int k) const { return entries_.count(k) != 0; }
  const std::map<int, NormalizerEntry>& entries() const { return entries_; }

  // audit table: one "k value provenance" row per entry
  std::string to_text() const;
  static NormalizerTable from_text(const std::string& text);

 private:
  std::map<int, NormalizerEntry> entries_;
};

}  // namespace scaledim
