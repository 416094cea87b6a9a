// scaledim: per-scale effective dimension estimation for point clouds.
//
// Subcommands:
//   analyze    run the full pipeline on a CSV file or a generated dataset
//   nulls      pre-generate reference bands into a cache directory
//   generate   emit a synthetic dataset as CSV
//   plot-data  re-emit a stored report as flat plot tables

#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scaledim/analyze.hpp"
#include "scaledim/errors.hpp"

namespace {

using namespace scaledim;

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0   success\n"
    "  2   usage error (unknown flag, missing argument)\n"
    "  3   degenerate input (all points identical, degenerate grid)\n"
    "  4   invalid parameter value\n"
    "  5   malformed CSV or report file\n"
    "  6   file I/O failure\n"
    "  7   required null table missing from cache\n"
    "  8   corrupt null cache file\n"
    "  9   numeric escape (diverging trajectory)\n"
    "  10  internal error\n";

struct GeneratorCliOptions {
  std::string family;
  std::size_t n = 100;
  double sigma = 0.0;
  bool sigma_set = false;
  int ambient = 2;
  std::size_t d = 2;
  std::size_t burn_in = 100;
  std::uint64_t seed = 0;
};

void add_generator_options(CLI::App* cmd, GeneratorCliOptions& opts,
                           bool require_family) {
  auto* fam = cmd->add_option("--family", opts.family,
                              "dataset family: line-toy, circle, swiss-roll, "
                              "henon, gaussian");
  if (require_family) fam->required();
  cmd->add_option("--n", opts.n, "number of observations");
  cmd->add_option("--sigma", opts.sigma, "noise standard deviation")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--ambient", opts.ambient,
                  "circle ambient dimension (2 or 6)");
  cmd->add_option("--d", opts.d, "gaussian dimension");
  cmd->add_option("--burn-in", opts.burn_in, "henon iterates to discard");
  cmd->add_option("--data-seed", opts.seed, "generator seed");
}

GeneratorSpec to_spec(const GeneratorCliOptions& opts, const CLI::App* cmd) {
  GeneratorSpec spec;
  spec.family = family_from_string(opts.family);
  spec.n = opts.n;
  spec.sigma = opts.sigma;
  spec.sigma_set = cmd->count("--sigma") > 0;
  spec.ambient = spec.family == Family::gaussian ? static_cast<int>(opts.d)
                                                 : opts.ambient;
  spec.burn_in = opts.burn_in;
  spec.seed = opts.seed;
  return spec;
}

int run(int argc, char** argv) {
  CLI::App app{"scale-space effective dimension estimation"};
  app.require_subcommand(1);
  app.footer(kExitCodeHelp);

  // ---- analyze ----
  auto* analyze = app.add_subcommand(
      "analyze", "estimate the per-scale effective dimension profile");
  std::string input_path;
  std::string delimiter = ",";
  bool header = false;
  GeneratorCliOptions gen_opts;
  double step_percent = 5.0;
  std::string mode = "max-pairwise";
  double alpha = 0.05;
  bool bonferroni = false;
  int k_max = 0;
  int replicates = 1000;
  std::uint64_t null_seed = 0;
  std::string cache_dir;
  bool generate_nulls = false;
  std::string report_path;
  std::string tables_prefix;
  bool quiet = false;

  auto* input_opt =
      analyze->add_option("--input", input_path, "CSV file to analyze");
  analyze->add_option("--delimiter", delimiter, "CSV delimiter (default ,)");
  analyze->add_flag("--header", header, "skip one CSV header row");
  add_generator_options(analyze, gen_opts, false);
  analyze->add_option("--step-percent", step_percent,
                      "grid step as percent of pairwise distances (default 5)");
  analyze->add_option("--mode", mode,
                      "scale normalizer: max-pairwise or p95-pairwise");
  analyze->add_option("--alpha", alpha, "test significance level (default 0.05)");
  analyze->add_flag("--bonferroni", bonferroni,
                    "divide alpha by the number of grid labels");
  analyze->add_option("--k-max", k_max,
                      "highest order to test (default min(d-1, n-2, 10))");
  analyze->add_option("--replicates", replicates,
                      "null table replicates (default 1000)");
  analyze->add_option("--null-seed", null_seed, "null generation seed");
  analyze->add_option("--cache-dir", cache_dir, "null table cache directory")
      ->envname("SCALEDIM_CACHE_DIR");
  analyze->add_flag("--generate-nulls", generate_nulls,
                    "permit in-process null generation on cache miss");
  analyze->add_option("--report", report_path, "write the JSON report here");
  analyze->add_option("--tables", tables_prefix,
                      "write plot tables with this path prefix");
  analyze->add_flag("--quiet", quiet, "suppress the stdout summary");

  // ---- nulls ----
  auto* nulls_cmd = app.add_subcommand(
      "nulls", "pre-generate null tables into the cache directory");
  std::vector<int> null_ks{1};
  std::uint64_t null_n = 100;
  double n_step = 5.0;
  std::string n_mode = "max-pairwise";
  int n_replicates = 1000;
  double n_alpha = 0.05;
  std::uint64_t n_seed = 0;
  std::string n_cache;
  nulls_cmd->add_option("--k", null_ks, "orders to generate (repeatable)")
      ->required();
  nulls_cmd->add_option("--n", null_n, "sample size to match")->required();
  nulls_cmd->add_option("--step-percent", n_step, "grid step percent");
  nulls_cmd->add_option("--mode", n_mode, "scale normalizer mode");
  nulls_cmd->add_option("--replicates", n_replicates, "replicates (default 1000)");
  nulls_cmd->add_option("--alpha", n_alpha, "band significance level");
  nulls_cmd->add_option("--seed", n_seed, "generation seed");
  nulls_cmd->add_option("--cache-dir", n_cache, "cache directory")
      ->envname("SCALEDIM_CACHE_DIR")
      ->required();

  // ---- generate ----
  auto* gen_cmd =
      app.add_subcommand("generate", "emit a synthetic dataset as CSV");
  GeneratorCliOptions g_opts;
  std::string g_out;
  add_generator_options(gen_cmd, g_opts, true);
  gen_cmd->add_option("--seed", g_opts.seed, "generator seed");
  gen_cmd->add_option("-o,--output", g_out, "output CSV path")->required();

  // ---- plot-data ----
  auto* plot_cmd = app.add_subcommand(
      "plot-data", "re-emit a stored report as flat plot tables");
  std::string p_report;
  std::string p_prefix;
  plot_cmd->add_option("--report", p_report, "stored JSON report")->required();
  plot_cmd->add_option("--tables", p_prefix, "output path prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorClass::usage);
  }

  if (analyze->parsed()) {
    if (input_opt->count() == 0 && gen_opts.family.empty()) {
      std::cerr << "analyze needs --input or --family\n";
      return static_cast<int>(ErrorClass::usage);
    }
    if (input_opt->count() > 0 && !gen_opts.family.empty()) {
      std::cerr << "analyze takes either --input or --family, not both\n";
      return static_cast<int>(ErrorClass::usage);
    }
    AnalysisConfig config;
    if (input_opt->count() > 0) {
      config.input.kind = InputSpec::Kind::csv;
      config.input.csv_path = input_path;
      if (delimiter.size() != 1) {
        std::cerr << "--delimiter must be a single character\n";
        return static_cast<int>(ErrorClass::usage);
      }
      config.input.csv_options.delimiter = delimiter[0];
      config.input.csv_options.header = header;
    } else {
      config.input.kind = InputSpec::Kind::generator;
      config.input.generator = to_spec(gen_opts, analyze);
    }
    config.step_percent = step_percent;
    config.mode = normalizer_mode_from_string(mode);
    config.alpha = alpha;
    config.bonferroni = bonferroni;
    config.k_max = k_max;
    config.nulls.replicates = replicates;
    config.nulls.seed = null_seed;
    if (!cache_dir.empty()) config.nulls.cache_dir = cache_dir;
    config.nulls.allow_generation = generate_nulls;
    config.log = &std::cerr;

    AnalysisReport report = run_analyze(config);
    auto json = report_to_json(report);
    if (!report_path.empty()) write_report(report_path, json);
    if (!tables_prefix.empty()) write_plot_tables(json, tables_prefix);

    if (!quiet) {
      std::printf("n=%zu d=%zu s_min=%.6g s_max=%.6g\n", report.n, report.d,
                  report.s_min, report.s_max);
      std::printf("%-8s %-12s %-10s %-14s %s\n", "label", "std_scale",
                  "accepted", "eff_dim", "relation");
      for (const ScaleVerdict& v : report.result.profile.verdicts) {
        std::string rel;
        if (v.accepted_k) {
          for (const TriedOrder& t : v.tried) {
            if (t.k == *v.accepted_k) rel = to_string(t.relation);
          }
        }
        std::printf("s_%-6.6g %-12.6g %-10s %-14.6g %s\n", v.label_percent,
                    v.standardized_scale,
                    v.accepted_k ? std::to_string(*v.accepted_k).c_str()
                                 : "none",
                    v.accepted_k ? v.effective_dim
                                 : std::numeric_limits<double>::quiet_NaN(),
                    v.accepted_k ? rel.c_str() : v.note.c_str());
      }
      const ProfileSummary& s = report.result.profile.summary;
      if (s.has_min) {
        std::printf("min effective dimension %.6g at label s_%.6g\n",
                    s.min_effective_dim, s.min_label_percent);
      }
      if (s.has_noise_indicator) {
        std::printf("noise indicator T1(s_min)-T1(s_5%%) = %.6g\n",
                    s.noise_indicator);
      }
    }
    return 0;
  }

  if (nulls_cmd->parsed()) {
    NormalizerMode m = normalizer_mode_from_string(n_mode);
    for (int k : null_ks) {
      NullKey key{k, null_n, n_step, m, n_replicates, n_alpha, n_seed};
      if (auto existing = load_null(key, n_cache)) {
        std::cerr << "null cache hit: "
                  << (std::filesystem::path(n_cache) /
                      (key.hash_hex() + ".nulltab"))
                         .string()
                  << " (skipped)\n";
        continue;
      }
      NullTable table = generate_null(k, null_n, n_replicates, n_alpha, n_seed,
                                      n_step, m);
      auto path = store_null(table, n_cache);
      std::cerr << "stored null table {" << key.canonical() << "} -> "
                << path.string() << '\n';
    }
    return 0;
  }

  if (gen_cmd->parsed()) {
    GeneratorSpec spec = to_spec(g_opts, gen_cmd);
    PointCloud cloud = generate(spec);
    write_csv(g_out, cloud);
    std::cerr << "wrote " << cloud.n() << "x" << cloud.dim() << " CSV to "
              << g_out << " (" << spec.describe() << ")\n";
    return 0;
  }

  if (plot_cmd->parsed()) {
    auto json = read_report(p_report);
    auto files = write_plot_tables(json, p_prefix);
    for (const auto& f : files) std::cerr << "wrote " << f.string() << '\n';
    return 0;
  }

  return static_cast<int>(ErrorClass::usage);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return static_cast<int>(ErrorClass::internal);
  }
}
