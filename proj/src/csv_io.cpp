#include "scaledim/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "scaledim/errors.hpp"

namespace scaledim {

namespace {

// cell bounds within a line, delimiter-separated; empty fields preserved
std::vector<std::string_view> split_fields(const std::string& line,
                                           char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delimiter, start);
    if (pos == std::string::npos) {
      fields.emplace_back(line.data() + start, line.size() - start);
      break;
    }
    fields.emplace_back(line.data() + start, pos - start);
    start = pos + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

PointCloud ingest_csv(const std::filesystem::path& path,
                      const CsvOptions& options) {
  std::ifstream file(path);
  if (!file) {
    throw IoError("cannot open " + path.string());
  }

  std::vector<double> data;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  bool skipped_header = false;

  while (std::getline(file, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (options.header && !skipped_header) {
      skipped_header = true;
      continue;
    }
    auto fields = split_fields(line, options.delimiter);
    if (cols == 0) {
      cols = fields.size();
    } else if (fields.size() != cols) {
      throw CsvFormatError(path.string() + ": row " + std::to_string(line_no) +
                           " has " + std::to_string(fields.size()) +
                           " fields, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      std::string_view cell = trim(fields[c]);
      double value = 0.0;
      auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || ptr != cell.data() + cell.size() ||
          cell.empty()) {
        throw CsvFormatError(path.string() + ": non-numeric cell at row " +
                             std::to_string(line_no) + ", column " +
                             std::to_string(c + 1) + ": '" +
                             std::string(cell) + "'");
      }
      data.push_back(value);
    }
    ++rows;
  }

  if (rows == 0) {
    throw CsvFormatError(path.string() + ": no data rows");
  }
  if (rows < 3) {
    throw CsvFormatError(path.string() + ": needs at least 3 observations, got " +
                         std::to_string(rows));
  }
  if (cols < 2) {
    throw CsvFormatError(path.string() +
                         ": needs at least 2 coordinate columns, got " +
                         std::to_string(cols));
  }
  return PointCloud(rows, cols, std::move(data));
}

void write_csv(const std::filesystem::path& path, const PointCloud& cloud,
               char delimiter) {
  std::ofstream file(path);
  if (!file) {
    throw IoError("cannot write " + path.string());
  }
  char buf[40];
  for (std::size_t i = 0; i < cloud.n(); ++i) {
    for (std::size_t j = 0; j < cloud.dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", cloud(i, j));
      if (j > 0) file << delimiter;
      file << buf;
    }
    file << '\n';
  }
  if (!file) {
    throw IoError("failed while writing " + path.string());
  }
}

}  // namespace scaledim
