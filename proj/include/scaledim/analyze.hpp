#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scaledim/csv_io.hpp"
#include "scaledim/dimension_test.hpp"
#include "scaledim/generators.hpp"

#include <json.hpp>

namespace scaledim {

struct InputSpec {
  enum class Kind { csv, generator };
  Kind kind = Kind::generator;
  std::filesystem::path csv_path;
  CsvOptions csv_options;
  GeneratorSpec generator;
};

struct NullPolicy {
  std::optional<std::filesystem::path> cache_dir;
  bool allow_generation = false;
  int replicates = 1000;
  std::uint64_t seed = 0;
};

struct AnalysisConfig {
  InputSpec input;
  double step_percent = 5.0;
  NormalizerMode mode = NormalizerMode::max_pairwise;
  double alpha = 0.05;
  bool bonferroni = false;
  int k_max = 0;  // 0: min(d-1, n-2, 10)
  NullPolicy nulls;
  std::ostream* log = nullptr;  // cache-hit / generation notes
};

struct NullSource {
  int k;
  std::string source;  // "cache" | "generated" | "generated+stored"
  std::string file;
};

struct AnalysisReport {
  AnalysisConfig config;
  std::size_t n = 0;
  std::size_t d = 0;
  double s_min = 0.0;
  double s_max = 0.0;
  std::size_t duplicate_pairs = 0;
  int k_max_effective = 0;
  ScaleGrid grid{{}, NormalizerMode::max_pairwise, 1.0, 5.0};
  NormalizerTable normalizers;
  SequentialTestResult result;
  std::vector<NullSource> null_sources;
  std::vector<std::pair<std::string, double>> timing_ms;
};

AnalysisReport run_analyze(const AnalysisConfig& config);

// hierarchical machine-readable form; every number the plot tables carry
// comes from this object
nlohmann::ordered_json report_to_json(const AnalysisReport& report);

AnalysisConfig config_from_json(const nlohmann::ordered_json& j);

void write_report(const std::filesystem::path& path,
                  const nlohmann::ordered_json& report_json);
nlohmann::ordered_json read_report(const std::filesystem::path& path);

// one T table per tried order plus a verdict table, all derived from the
// JSON report so re-emission cannot drift
std::vector<std::filesystem::path> write_plot_tables(
    const nlohmann::ordered_json& report_json, const std::string& prefix);

}  // namespace scaledim
