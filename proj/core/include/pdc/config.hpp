#pragma once

#include <map>
#include <string>
#include <vector>

#include "pdc/stokes.hpp"

namespace pdc {

// Fully resolved run configuration assembled from the INI file plus
// command-line overrides.
struct RunConfig {
  CrystalConfig crystal;
  DetectionParams detection;
  int nx = 256, ny = 256;
  double extent = 4.0;  // |x|/X0
  FilterSpec filter;
  CompensationSpec comp;
  bool comp_optimal = false;  // length_ratio = "optimal"
  std::string output_dir = ".";
  bool write_csv = true;
  bool write_pgm = false;

  // Resolve "optimal" into a concrete ratio for the configured sigma.
  CompensationSpec resolved_compensation() const;
};

// Parse a flat-sectioned key=value file. Unknown sections or keys and
// malformed values are hard errors carrying the line number. `overrides`
// entries have the form "section.key=value" and are applied after the file
// (an empty path starts from built-in defaults).
RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides = {});

}
