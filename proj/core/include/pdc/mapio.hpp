#pragma once

#include <map>
#include <string>
#include <vector>

#include "pdc/stokes.hpp"

namespace pdc {

using Metadata = std::map<std::string, std::string>;

// Format with 9 significant digits (the on-disk precision contract).
std::string format_value(double v);

// Write `content` to `path` atomically (temp file in the same directory,
// then rename).
void atomic_write(const std::string& path, const std::string& content);

// CSV serialization: '# key=value' metadata lines, a column header, then
// row-major 'x_over_X0,y_over_X0,value' rows.
void write_map_csv(const std::string& path, const FarFieldMap& map,
                   const Metadata& meta);

struct LoadedMap {
  FarFieldMap map;
  Metadata meta;
};
LoadedMap read_map_csv(const std::string& path);

// Plain-text P2 PGM with linear min-max scaling; metadata goes into comment
// lines.
void write_map_pgm(const std::string& path, const FarFieldMap& map,
                   const Metadata& meta);

// Two-column CSV for curves and profiles.
void write_rows_csv(const std::string& path, const std::string& header,
                    const std::vector<std::pair<double, double>>& rows,
                    const Metadata& meta);

}
