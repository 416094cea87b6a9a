#include "scaledim/null_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "scaledim/angle_field.hpp"
#include "scaledim/errors.hpp"
#include "scaledim/generators.hpp"
#include "scaledim/numerics.hpp"
#include "scaledim/rng.hpp"

namespace scaledim {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::size_t nearest_rank(double q, std::size_t count) {
  auto rank = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(count)));
  if (rank < 1) rank = 1;
  if (rank > count) rank = count;
  return rank;
}

}  // namespace

std::string NullKey::canonical() const {
  std::ostringstream out;
  out << "k=" << k << "|n=" << n << "|step=" << fmt17(step_percent)
      << "|mode=" << to_string(mode) << "|R=" << replicates
      << "|alpha=" << fmt17(alpha) << "|seed=" << seed;
  return out.str();
}

std::string NullKey::hash_hex() const {
  // FNV-1a over the canonical key string
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

const NullBandRow& NullTable::row_for_label(double percent) const {
  for (const NullBandRow& r : rows) {
    if (r.label_percent == percent) return r;
  }
  throw MissingNullError("null table " + key.canonical() +
                         " has no row for label " + fmt17(percent));
}

NullTable generate_null(int k, std::uint64_t n, int replicates, double alpha,
                        std::uint64_t seed, double step_percent,
                        NormalizerMode mode) {
  if (k < 1) {
    throw ParameterError("null order k must be >= 1");
  }
  if (n < static_cast<std::uint64_t>(k) + 3) {
    throw ParameterError("null sample size must be at least k+3");
  }
  if (replicates < 50) {
    throw ParameterError(
        "refusing to build null bands from fewer than 50 replicates");
  }
  if (!(alpha > 0.0) || alpha >= 1.0) {
    throw ParameterError("alpha must lie in (0, 1)");
  }

  NormalizerTable normalizers = NormalizerTable::standard(k);

  // one probe replicate fixes the label layout (it only depends on step)
  std::vector<double> label_percents;
  {
    PointCloud probe = gen_gaussian(n, k + 1, derive_stream(seed, 0));
    DistanceIndex index = build_distance_index(probe);
    ScaleGrid grid = build_scale_grid(index, step_percent, mode);
    for (const GridPoint& p : grid.points()) label_percents.push_back(p.percent);
  }
  const std::size_t labels = label_percents.size();
  const auto reps = static_cast<std::size_t>(replicates);

  std::vector<double> t_values(reps * labels);
  std::vector<double> raw_values(reps * labels);

  parallel_for(reps, [&](std::size_t r) {
    PointCloud cloud = gen_gaussian(n, k + 1, derive_stream(seed, r));
    DistanceIndex index = build_distance_index(cloud);
    ScaleGrid grid = build_scale_grid(index, step_percent, mode);
    AngleField field = compute_angle_field(cloud, index, grid, k, k);
    TProfile profile = compute_T(field, normalizers);
    for (std::size_t label = 0; label < labels; ++label) {
      const TCell& cell = profile.cell(k, label);
      if (!cell.available) {
        throw InternalError("null replicate produced an unavailable T cell");
      }
      t_values[r * labels + label] = cell.t;
      raw_values[r * labels + label] = grid.points()[label].raw;
    }
  });

  NullTable table;
  table.key = {k, n, step_percent, mode, replicates, alpha, seed};
  table.rows.reserve(labels);

  std::vector<double> column(reps);
  for (std::size_t label = 0; label < labels; ++label) {
    NeumaierSum t_sum;
    NeumaierSum raw_sum;
    for (std::size_t r = 0; r < reps; ++r) {
      t_sum.add(t_values[r * labels + label]);
      raw_sum.add(raw_values[r * labels + label]);
      column[r] = t_values[r * labels + label];
    }
    std::sort(column.begin(), column.end());
    NullBandRow row;
    row.label_percent = label_percents[label];
    row.raw_scale_mean = raw_sum.value() / static_cast<double>(reps);
    row.mean = t_sum.value() / static_cast<double>(reps);
    row.lower = column[nearest_rank(alpha / 2.0, reps) - 1];
    row.upper = column[nearest_rank(1.0 - alpha / 2.0, reps) - 1];
    table.rows.push_back(row);
  }
  return table;
}

std::filesystem::path store_null(const NullTable& table,
                                 const std::filesystem::path& cache_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  if (ec) {
    throw IoError("cannot create cache directory " + cache_dir.string() +
                  ": " + ec.message());
  }
  fs::path target = cache_dir / (table.key.hash_hex() + ".nulltab");
  fs::path tmp = target;
  tmp += ".tmp";

  std::ostringstream out;
  out << "scaledim-null-table v1\n";
  out << "k " << table.key.k << '\n';
  out << "n " << table.key.n << '\n';
  out << "step_percent " << fmt17(table.key.step_percent) << '\n';
  out << "normalizer_mode " << to_string(table.key.mode) << '\n';
  out << "replicates " << table.key.replicates << '\n';
  out << "alpha " << fmt17(table.key.alpha) << '\n';
  out << "seed " << table.key.seed << '\n';
  out << "labels " << table.rows.size() << '\n';
  out << "# label raw_scale_mean mean lower upper\n";
  for (const NullBandRow& r : table.rows) {
    out << fmt17(r.label_percent) << ' ' << fmt17(r.raw_scale_mean) << ' '
        << fmt17(r.mean) << ' ' << fmt17(r.lower) << ' ' << fmt17(r.upper)
        << '\n';
  }
  out << "end\n";

  {
    std::ofstream f(tmp);
    if (!f) {
      throw IoError("cannot write " + tmp.string());
    }
    f << out.str();
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    throw IoError("cannot move " + tmp.string() + " into place: " +
                  ec.message());
  }
  return target;
}

std::optional<NullTable> load_null(const NullKey& key,
                                   const std::filesystem::path& cache_dir) {
  namespace fs = std::filesystem;
  fs::path target = cache_dir / (key.hash_hex() + ".nulltab");
  if (!fs::exists(target)) {
    return std::nullopt;
  }
  std::ifstream f(target);
  if (!f) {
    throw IoError("cannot open " + target.string());
  }

  auto corrupt = [&](const std::string& why) -> CacheIntegrityError {
    return CacheIntegrityError("corrupt null cache file " + target.string() +
                               ": " + why);
  };

  std::string line;
  if (!std::getline(f, line) || line != "scaledim-null-table v1") {
    throw corrupt("bad magic line");
  }

  NullTable table;
  std::size_t labels = 0;
  std::string mode_str;
  auto read_kv = [&](const std::string& name, auto& value) {
    if (!std::getline(f, line)) throw corrupt("truncated header");
    std::istringstream row(line);
    std::string got;
    if (!(row >> got >> value) || got != name) {
      throw corrupt("expected header field '" + name + "', got: " + line);
    }
  };
  read_kv("k", table.key.k);
  read_kv("n", table.key.n);
  read_kv("step_percent", table.key.step_percent);
  read_kv("normalizer_mode", mode_str);
  table.key.mode = normalizer_mode_from_string(mode_str);
  read_kv("replicates", table.key.replicates);
  read_kv("alpha", table.key.alpha);
  read_kv("seed", table.key.seed);
  read_kv("labels", labels);
  if (!std::getline(f, line) || line.empty() || line[0] != '#') {
    throw corrupt("missing column comment line");
  }
  for (std::size_t i = 0; i < labels; ++i) {
    if (!std::getline(f, line)) throw corrupt("truncated rows");
    std::istringstream row(line);
    NullBandRow r;
    if (!(row >> r.label_percent >> r.raw_scale_mean >> r.mean >> r.lower >>
          r.upper)) {
      throw corrupt("malformed row: " + line);
    }
    table.rows.push_back(r);
  }
  if (!std::getline(f, line) || line != "end") {
    throw corrupt("missing end marker");
  }
  if (!(table.key == key)) {
    throw corrupt("stored key " + table.key.canonical() +
                  " does not match requested " + key.canonical());
  }
  return table;
}

}  // namespace scaledim
