#include "scaledim/analyze.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <type_traits>

#include "scaledim/errors.hpp"

namespace scaledim {

namespace {

using nlohmann::ordered_json;

class PhaseTimer {
 public:
  explicit PhaseTimer(std::vector<std::pair<std::string, double>>& sink)
      : sink_(sink) {}

  template <typename F>
  auto run(const std::string& name, F&& f) {
    auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(name, start);
    } else {
      auto value = f();
      record(name, start);
      return value;
    }
  }

 private:
  void record(const std::string& name,
              std::chrono::steady_clock::time_point start) {
    auto end = std::chrono::steady_clock::now();
    sink_.emplace_back(
        name, std::chrono::duration<double, std::milli>(end - start).count());
  }

  std::vector<std::pair<std::string, double>>& sink_;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

AnalysisReport run_analyze(const AnalysisConfig& config) {
  std::ostream* log = config.log;
  AnalysisReport report;
  report.config = config;
  PhaseTimer timer(report.timing_ms);

  PointCloud cloud = timer.run("load", [&] {
    if (config.input.kind == InputSpec::Kind::csv) {
      return ingest_csv(config.input.csv_path, config.input.csv_options);
    }
    return generate(config.input.generator);
  });
  cloud.validate();
  report.n = cloud.n();
  report.d = cloud.dim();

  DistanceIndex index =
      timer.run("index", [&] { return build_distance_index(cloud); });
  report.s_min = index.s_min();
  report.s_max = index.s_max();
  report.duplicate_pairs = index.duplicate_pairs().size();
  if (log && !index.duplicate_pairs().empty()) {
    *log << "warning: " << index.duplicate_pairs().size()
         << " coincident point pair(s); excluded from angle statistics\n";
  }

  report.grid = timer.run("grid", [&] {
    return build_scale_grid(index, config.step_percent, config.mode);
  });

  const int k_cap = static_cast<int>(std::min(
      {cloud.dim() - 1, cloud.n() - 2, static_cast<std::size_t>(10)}));
  report.k_max_effective = config.k_max > 0 ? config.k_max : k_cap;
  report.normalizers = NormalizerTable::standard(report.k_max_effective);

  NullProvider provider = [&](const NullKey& key) -> std::optional<NullTable> {
    if (config.nulls.cache_dir) {
      auto cached = load_null(key, *config.nulls.cache_dir);
      if (cached) {
        auto file = *config.nulls.cache_dir / (key.hash_hex() + ".nulltab");
        if (log) *log << "null cache hit: " << file.string() << '\n';
        report.null_sources.push_back({key.k, "cache", file.string()});
        return cached;
      }
    }
    if (!config.nulls.allow_generation) {
      return std::nullopt;
    }
    if (log) *log << "generating null table {" << key.canonical() << "}\n";
    NullTable table =
        generate_null(key.k, key.n, key.replicates, key.alpha, key.seed,
                      key.step_percent, key.mode);
    if (config.nulls.cache_dir) {
      auto file = store_null(table, *config.nulls.cache_dir);
      report.null_sources.push_back({key.k, "generated+stored", file.string()});
    } else {
      report.null_sources.push_back({key.k, "generated", ""});
    }
    return table;
  };

  TestOptions options;
  options.alpha = config.alpha;
  options.k_max = report.k_max_effective;
  options.bonferroni = config.bonferroni;
  options.null_replicates = config.nulls.replicates;
  options.null_seed = config.nulls.seed;

  report.result = timer.run("test", [&] {
    return sequential_test(cloud, index, report.grid, report.normalizers,
                           provider, options);
  });
  return report;
}

ordered_json report_to_json(const AnalysisReport& report) {
  const AnalysisConfig& config = report.config;
  ordered_json j;
  j["tool"] = "scaledim";
  j["report_version"] = 1;

  ordered_json input;
  if (config.input.kind == InputSpec::Kind::csv) {
    input["kind"] = "csv";
    input["path"] = config.input.csv_path.string();
    input["delimiter"] = std::string(1, config.input.csv_options.delimiter);
    input["header"] = config.input.csv_options.header;
  } else {
    const GeneratorSpec& g = config.input.generator;
    input["kind"] = "generator";
    input["family"] = to_string(g.family);
    input["n"] = g.n;
    input["sigma"] = g.sigma;
    input["sigma_set"] = g.sigma_set;
    input["ambient"] = g.ambient;
    input["burn_in"] = g.burn_in;
    input["seed"] = g.seed;
  }
  ordered_json nulls;
  nulls["replicates"] = config.nulls.replicates;
  nulls["seed"] = config.nulls.seed;
  nulls["cache_dir"] = config.nulls.cache_dir
                           ? ordered_json(config.nulls.cache_dir->string())
                           : ordered_json(nullptr);
  nulls["allow_generation"] = config.nulls.allow_generation;
  j["config"] = {{"input", input},
                 {"step_percent", config.step_percent},
                 {"normalizer_mode", to_string(config.mode)},
                 {"alpha", config.alpha},
                 {"bonferroni", config.bonferroni},
                 {"k_max", config.k_max},
                 {"nulls", nulls}};

  j["data"] = {{"n", report.n},
               {"d", report.d},
               {"s_min", report.s_min},
               {"s_max", report.s_max},
               {"duplicate_pairs", report.duplicate_pairs},
               {"k_max_effective", report.k_max_effective}};

  ordered_json grid_points = ordered_json::array();
  for (const GridPoint& p : report.grid.points()) {
    grid_points.push_back({{"percent", p.percent},
                           {"raw", p.raw},
                           {"std", p.standardized}});
  }
  j["grid"] = {{"step_percent", report.grid.step_percent()},
               {"normalizer_mode", to_string(report.grid.mode())},
               {"normalizer", report.grid.normalizer()},
               {"points", grid_points}};

  ordered_json normalizers = ordered_json::array();
  for (const auto& [k, e] : report.normalizers.entries()) {
    normalizers.push_back({{"k", k},
                           {"a", e.value},
                           {"provenance", to_string(e.provenance)}});
  }
  j["normalizers"] = normalizers;

  ordered_json t_profiles = ordered_json::array();
  for (const auto& [k, profile] : report.result.t_profiles) {
    ordered_json cells = ordered_json::array();
    for (std::size_t label = 0; label < profile.labels(); ++label) {
      const TCell& cell = profile.cell(k, label);
      ordered_json c;
      c["label"] = report.grid.points()[label].percent;
      c["t"] = cell.available ? ordered_json(cell.t) : ordered_json(nullptr);
      c["count"] = cell.count;
      c["reliable"] = cell.reliable;
      cells.push_back(c);
    }
    t_profiles.push_back({{"k", k}, {"cells", cells}});
  }
  j["t_profiles"] = t_profiles;

  ordered_json nulls_used = ordered_json::array();
  for (const auto& [k, table] : report.result.nulls_used) {
    ordered_json rows = ordered_json::array();
    for (const NullBandRow& r : table.rows) {
      rows.push_back({{"label", r.label_percent},
                      {"raw_scale_mean", r.raw_scale_mean},
                      {"mean", r.mean},
                      {"lower", r.lower},
                      {"upper", r.upper}});
    }
    nulls_used.push_back({{"key",
                           {{"k", table.key.k},
                            {"n", table.key.n},
                            {"step_percent", table.key.step_percent},
                            {"normalizer_mode", to_string(table.key.mode)},
                            {"replicates", table.key.replicates},
                            {"alpha", table.key.alpha},
                            {"seed", table.key.seed},
                            {"hash", table.key.hash_hex()}}},
                          {"rows", rows}});
  }
  j["nulls_used"] = nulls_used;

  ordered_json verdicts = ordered_json::array();
  for (const ScaleVerdict& v : report.result.profile.verdicts) {
    ordered_json tried = ordered_json::array();
    for (const TriedOrder& t : v.tried) {
      tried.push_back(
          {{"k", t.k}, {"t", t.t}, {"relation", to_string(t.relation)}});
    }
    ordered_json vj;
    vj["label"] = v.label_percent;
    vj["raw"] = v.raw_scale;
    vj["std"] = v.standardized_scale;
    vj["tried"] = tried;
    vj["accepted_k"] =
        v.accepted_k ? ordered_json(*v.accepted_k) : ordered_json(nullptr);
    vj["effective_dim"] =
        v.accepted_k ? ordered_json(v.effective_dim) : ordered_json(nullptr);
    vj["reliable"] = v.reliable;
    vj["note"] = v.note;
    verdicts.push_back(vj);
  }
  const ProfileSummary& s = report.result.profile.summary;
  ordered_json summary;
  summary["min_effective_dim"] =
      s.has_min ? ordered_json(s.min_effective_dim) : ordered_json(nullptr);
  summary["min_label"] =
      s.has_min ? ordered_json(s.min_label_percent) : ordered_json(nullptr);
  summary["noise_indicator"] = s.has_noise_indicator
                                   ? ordered_json(s.noise_indicator)
                                   : ordered_json(nullptr);
  j["profile"] = {{"verdicts", verdicts}, {"summary", summary}};

  ordered_json phases;
  for (const auto& [name, ms] : report.timing_ms) phases[name] = ms;
  ordered_json sources = ordered_json::array();
  for (const NullSource& src : report.null_sources) {
    sources.push_back(
        {{"k", src.k}, {"source", src.source}, {"file", src.file}});
  }
  j["timing"] = {{"phases_ms", phases}, {"null_sources", sources}};
  return j;
}

AnalysisConfig config_from_json(const ordered_json& j) {
  AnalysisConfig config;
  const auto& c = j.at("config");
  const auto& input = c.at("input");
  if (input.at("kind") == "csv") {
    config.input.kind = InputSpec::Kind::csv;
    config.input.csv_path = input.at("path").get<std::string>();
    config.input.csv_options.delimiter =
        input.at("delimiter").get<std::string>().at(0);
    config.input.csv_options.header = input.at("header").get<bool>();
  } else {
    config.input.kind = InputSpec::Kind::generator;
    GeneratorSpec& g = config.input.generator;
    g.family = family_from_string(input.at("family").get<std::string>());
    g.n = input.at("n").get<std::size_t>();
    g.sigma = input.at("sigma").get<double>();
    g.sigma_set = input.at("sigma_set").get<bool>();
    g.ambient = input.at("ambient").get<int>();
    g.burn_in = input.at("burn_in").get<std::size_t>();
    g.seed = input.at("seed").get<std::uint64_t>();
  }
  config.step_percent = c.at("step_percent").get<double>();
  config.mode =
      normalizer_mode_from_string(c.at("normalizer_mode").get<std::string>());
  config.alpha = c.at("alpha").get<double>();
  config.bonferroni = c.at("bonferroni").get<bool>();
  config.k_max = c.at("k_max").get<int>();
  const auto& nulls = c.at("nulls");
  config.nulls.replicates = nulls.at("replicates").get<int>();
  config.nulls.seed = nulls.at("seed").get<std::uint64_t>();
  if (!nulls.at("cache_dir").is_null()) {
    config.nulls.cache_dir = nulls.at("cache_dir").get<std::string>();
  }
  config.nulls.allow_generation = nulls.at("allow_generation").get<bool>();
  return config;
}

void write_report(const std::filesystem::path& path,
                  const ordered_json& report_json) {
  std::ofstream f(path);
  if (!f) {
    throw IoError("cannot write " + path.string());
  }
  f << report_json.dump(2) << '\n';
  if (!f) {
    throw IoError("failed while writing " + path.string());
  }
}

ordered_json read_report(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) {
    throw IoError("cannot open " + path.string());
  }
  ordered_json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CsvFormatError("cannot parse report " + path.string() + ": " +
                         e.what());
  }
  return j;
}

std::vector<std::filesystem::path> write_plot_tables(
    const ordered_json& report_json, const std::string& prefix) {
  std::vector<std::filesystem::path> written;

  // label -> (raw, std) from the grid block
  std::map<double, std::pair<double, double>> scales;
  for (const auto& p : report_json.at("grid").at("points")) {
    scales[p.at("percent").get<double>()] = {p.at("raw").get<double>(),
                                             p.at("std").get<double>()};
  }

  // relation of a (k, label) pair, if that order was tried there
  std::map<std::pair<int, double>, std::string> relations;
  for (const auto& v : report_json.at("profile").at("verdicts")) {
    double label = v.at("label").get<double>();
    for (const auto& t : v.at("tried")) {
      relations[{t.at("k").get<int>(), label}] =
          t.at("relation").get<std::string>();
    }
  }

  std::map<int, const ordered_json*> null_rows;
  for (const auto& nu : report_json.at("nulls_used")) {
    null_rows[nu.at("key").at("k").get<int>()] = &nu.at("rows");
  }

  for (const auto& tp : report_json.at("t_profiles")) {
    int k = tp.at("k").get<int>();
    std::filesystem::path path = prefix + "_T" + std::to_string(k) + ".tsv";
    std::ofstream f(path);
    if (!f) {
      throw IoError("cannot write " + path.string());
    }
    f << "label_percent\traw_scale\tstd_scale\tT\tcount\treliable\t"
         "null_mean\tnull_lower\tnull_upper\trelation\n";

    std::map<double, const ordered_json*> bands;
    if (auto it = null_rows.find(k); it != null_rows.end()) {
      for (const auto& r : *it->second) {
        bands[r.at("label").get<double>()] = &r;
      }
    }
    for (const auto& cell : tp.at("cells")) {
      double label = cell.at("label").get<double>();
      auto [raw, std_scale] = scales.at(label);
      f << fmt17(label) << '\t' << fmt17(raw) << '\t' << fmt17(std_scale)
        << '\t';
      if (cell.at("t").is_null()) {
        f << "";
      } else {
        f << fmt17(cell.at("t").get<double>());
      }
      f << '\t' << cell.at("count").get<std::uint64_t>() << '\t'
        << (cell.at("reliable").get<bool>() ? "true" : "false") << '\t';
      if (auto it = bands.find(label); it != bands.end()) {
        const auto& b = *it->second;
        f << fmt17(b.at("mean").get<double>()) << '\t'
          << fmt17(b.at("lower").get<double>()) << '\t'
          << fmt17(b.at("upper").get<double>()) << '\t';
      } else {
        f << "\t\t\t";
      }
      if (auto it = relations.find({k, label}); it != relations.end()) {
        f << it->second;
      }
      f << '\n';
    }
    written.push_back(path);
  }

  std::filesystem::path vpath = prefix + "_verdicts.tsv";
  std::ofstream f(vpath);
  if (!f) {
    throw IoError("cannot write " + vpath.string());
  }
  f << "label_percent\traw_scale\tstd_scale\taccepted_k\teffective_dim\t"
       "relation\treliable\tnote\n";
  for (const auto& v : report_json.at("profile").at("verdicts")) {
    f << fmt17(v.at("label").get<double>()) << '\t'
      << fmt17(v.at("raw").get<double>()) << '\t'
      << fmt17(v.at("std").get<double>()) << '\t';
    if (v.at("accepted_k").is_null()) {
      f << "none\t\t";
    } else {
      f << v.at("accepted_k").get<int>() << '\t'
        << fmt17(v.at("effective_dim").get<double>()) << '\t';
      // relation recorded at the accepted order
    }
    std::string relation;
    if (!v.at("accepted_k").is_null()) {
      int ak = v.at("accepted_k").get<int>();
      for (const auto& t : v.at("tried")) {
        if (t.at("k").get<int>() == ak) {
          relation = t.at("relation").get<std::string>();
        }
      }
    }
    f << relation << '\t' << (v.at("reliable").get<bool>() ? "true" : "false")
      << '\t' << v.at("note").get<std::string>() << '\n';
  }
  written.push_back(vpath);
  return written;
}

}  // namespace scaledim
