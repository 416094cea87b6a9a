#pragma once

#include <filesystem>

#include "scaledim/point_cloud.hpp"

namespace scaledim {

struct CsvOptions {
  char delimiter = ',';
  bool header = false;  // skip one leading header row
};

// rows are observations, columns coordinates; rectangular and numeric
PointCloud ingest_csv(const std::filesystem::path& path,
                      const CsvOptions& options = {});

// 17 significant digits so a round trip is bit-exact
void write_csv(const std::filesystem::path& path, const PointCloud& cloud,
               char delimiter = ',');

}  // namespace scaledim
