#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scaledim/scale_grid.hpp"

namespace scaledim {

struct NullKey {
  int k = 1;
  std::uint64_t n = 0;
  double step_percent = 5.0;
  NormalizerMode mode = NormalizerMode::max_pairwise;
  int replicates = 1000;
  double alpha = 0.05;  // part of the key: bands are percentile cuts
  std::uint64_t seed = 0;

  std::string canonical() const;
  std::string hash_hex() const;  // cache file stem
  bool operator==(const NullKey& other) const {
    return canonical() == other.canonical();
  }
};

struct NullBandRow {
  double label_percent;
  double raw_scale_mean;  // mean raw scale at this label across replicates
  double mean;
  double lower;  // alpha/2 percentile, nearest rank
  double upper;  // 1-alpha/2 percentile, nearest rank
};

struct NullTable {
  NullKey key;
  std::vector<NullBandRow> rows;

  const NullBandRow& row_for_label(double percent) const;
};

// T_k bands under the (k+1)-d standard normal: each replicate draws its own
// sample, builds its own percentile grid and contributes T_k at every label.
// Replicate r uses the stream derived from (seed, r), so results do not
// depend on scheduling.
NullTable generate_null(int k, std::uint64_t n, int replicates = 1000,
                        double alpha = 0.05, std::uint64_t seed = 0,
                        double step_percent = 5.0,
                        NormalizerMode mode = NormalizerMode::max_pairwise);

// one table per file, written atomically; returns the file path
std::filesystem::path store_null(const NullTable& table,
                                 const std::filesystem::path& cache_dir);

// absent result on missing key; CacheIntegrityError on a corrupt file
std::optional<NullTable> load_null(const NullKey& key,
                                   const std::filesystem::path& cache_dir);

}  // namespace scaledim
