#include "scaledim/dimension_test.hpp"

#include <algorithm>
#include <cmath>

#include "scaledim/errors.hpp"

namespace scaledim {

std::string to_string(BandRelation r) {
  switch (r) {
    case BandRelation::below:
      return "below";
    case BandRelation::within:
      return "within";
    case BandRelation::above:
      return "above";
  }
  return "?";
}

SequentialTestResult sequential_test(const PointCloud& cloud,
                                     const DistanceIndex& index,
                                     const ScaleGrid& grid,
                                     const NormalizerTable& normalizers,
                                     const NullProvider& nulls,
                                     const TestOptions& options) {
  const std::size_t n = cloud.n();
  const std::size_t labels = grid.size();
  const int k_cap = static_cast<int>(
      std::min({cloud.dim() - 1, n - 2, static_cast<std::size_t>(10)}));
  const int k_max = options.k_max > 0 ? options.k_max : k_cap;
  if (k_max < 1 || k_max > static_cast<int>(std::min(cloud.dim() - 1, n - 2))) {
    throw ParameterError("k_max must lie in [1, min(d-1, n-2)]");
  }
  const double alpha_eff =
      options.bonferroni ? options.alpha / static_cast<double>(labels)
                         : options.alpha;

  SequentialTestResult result;
  result.profile.verdicts.resize(labels);
  for (std::size_t label = 0; label < labels; ++label) {
    ScaleVerdict& v = result.profile.verdicts[label];
    v.label_percent = grid.points()[label].percent;
    v.raw_scale = grid.points()[label].raw;
    v.standardized_scale = grid.points()[label].standardized;
  }

  std::vector<bool> resolved(labels, false);
  std::size_t unresolved = labels;

  for (int k = 1; k <= k_max && unresolved > 0; ++k) {
    AngleField field = compute_angle_field(cloud, index, grid, k, k);
    TProfile t_profile = compute_T(field, normalizers);

    NullKey key;
    key.k = k;
    key.n = n;
    key.step_percent = grid.step_percent();
    key.mode = grid.mode();
    key.replicates = options.null_replicates;
    key.alpha = alpha_eff;
    key.seed = options.null_seed;

    std::optional<NullTable> null_table = nulls(key);
    if (!null_table) {
      throw MissingNullError("no null table for key {" + key.canonical() +
                             "}; pre-generate it or allow generation");
    }
    if (!(null_table->key == key)) {
      throw MissingNullError("null provider returned key {" +
                             null_table->key.canonical() +
                             "} for requested {" + key.canonical() + "}");
    }

    for (std::size_t label = 0; label < labels; ++label) {
      if (resolved[label]) continue;
      ScaleVerdict& v = result.profile.verdicts[label];
      const TCell& cell = t_profile.cell(k, label);
      if (!cell.available) {
        v.note = "no usable points at order " + std::to_string(k);
        resolved[label] = true;
        --unresolved;
        continue;
      }
      const NullBandRow& band = null_table->row_for_label(v.label_percent);
      BandRelation relation;
      if (cell.t > band.upper) {
        relation = BandRelation::above;
      } else if (cell.t < band.lower) {
        relation = BandRelation::below;
      } else {
        relation = BandRelation::within;
      }
      v.tried.push_back({k, cell.t, relation});
      if (relation != BandRelation::above) {
        v.accepted_k = k;
        v.effective_dim = cell.t;
        v.reliable = cell.reliable;
        resolved[label] = true;
        --unresolved;
      }
    }

    result.t_profiles.emplace(k, std::move(t_profile));
    result.nulls_used.emplace(k, std::move(*null_table));
  }

  for (std::size_t label = 0; label < labels; ++label) {
    ScaleVerdict& v = result.profile.verdicts[label];
    if (!resolved[label]) {
      v.note = ">= " + std::to_string(k_max + 1);
    }
  }

  ProfileSummary& summary = result.profile.summary;
  for (const ScaleVerdict& v : result.profile.verdicts) {
    if (!v.accepted_k) continue;
    if (!summary.has_min || v.effective_dim < summary.min_effective_dim) {
      summary.min_effective_dim = v.effective_dim;
      summary.min_label_percent = v.label_percent;
      summary.has_min = true;
    }
  }
  auto t1 = result.t_profiles.find(1);
  if (t1 != result.t_profiles.end() && labels >= 2) {
    const TCell& first = t1->second.cell(1, 0);
    const TCell& second = t1->second.cell(1, 1);
    if (first.available && second.available) {
      summary.noise_indicator = first.t - second.t;
      summary.has_noise_indicator = true;
    }
  }
  return result;
}

}  // namespace scaledim
