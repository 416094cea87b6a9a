#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scaledim/angle_field.hpp"
#include "scaledim/null_table.hpp"

namespace scaledim {

enum class BandRelation { below, within, above };

std::string to_string(BandRelation r);

struct TriedOrder {
  int k;
  double t;
  BandRelation relation;
};

struct ScaleVerdict {
  double label_percent = 0.0;
  double raw_scale = 0.0;
  double standardized_scale = 0.0;
  std::vector<TriedOrder> tried;      // orders 1..k in escalation order
  std::optional<int> accepted_k;      // empty: unresolved
  double effective_dim = 0.0;         // T_k at acceptance; meaningless unless accepted
  bool reliable = false;
  std::string note;                   // e.g. ">= k_max+1" for unresolved labels
};

struct ProfileSummary {
  double min_effective_dim = 0.0;
  double min_label_percent = 0.0;
  bool has_min = false;
  // T_1(s_min) - T_1(s_5%); positive values flag small-scale noise
  double noise_indicator = 0.0;
  bool has_noise_indicator = false;
};

struct DimensionProfile {
  std::vector<ScaleVerdict> verdicts;  // one per grid label
  ProfileSummary summary;
};

struct SequentialTestResult {
  DimensionProfile profile;
  std::map<int, TProfile> t_profiles;   // one single-order profile per k tried
  std::map<int, NullTable> nulls_used;
};

using NullProvider = std::function<std::optional<NullTable>(const NullKey&)>;

struct TestOptions {
  double alpha = 0.05;
  int k_max = 0;  // 0: min(d-1, n-2, 10)
  bool bonferroni = false;  // divide alpha by the number of grid labels
  int null_replicates = 1000;
  std::uint64_t null_seed = 0;
};

// Per grid label, escalate k = 1, 2, ... : accept the first order whose
// T_k(s) does not exceed the upper null band; "below" vs "within" records
// which side of the lower band the accepted value fell on.
SequentialTestResult sequential_test(const PointCloud& cloud,
                                     const DistanceIndex& index,
                                     const ScaleGrid& grid,
                                     const NormalizerTable& normalizers,
                                     const NullProvider& nulls,
                                     const TestOptions& options);

}  // namespace scaledim
