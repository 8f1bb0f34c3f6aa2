#include "pdc/mapio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "pdc/errors.hpp"
#include "pdc/version.hpp"

namespace pdc {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp =
      target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out) throw config_error("short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

static std::string meta_block(const FarFieldMap* map, const Metadata& meta) {
  std::ostringstream out;
  out << "# version=" << version << "\n";
  if (map != nullptr) {
    out << "# kind=" << to_string(map->kind) << "\n";
    out << "# sigma=" << format_value(map->sigma) << "\n";
    const char* fk = map->filter.kind == FilterSpec::Kind::step ? "step"
                     : map->filter.kind == FilterSpec::Kind::gaussian ? "gaussian"
                                                                      : "none";
    out << "# filter_kind=" << fk << "\n";
    out << "# filter_fwhm_nm=" << format_value(map->filter.fwhm_lambda * 1e9)
        << "\n";
    out << "# compensation=" << (map->comp.enabled ? "on" : "off") << "\n";
    out << "# length_ratio=" << format_value(map->comp.length_ratio) << "\n";
    out << "# nx=" << map->nx << "\n";
    out << "# ny=" << map->ny << "\n";
    out << "# extent_X0=" << format_value(map->extent) << "\n";
  }
  for (const auto& [k, v] : meta) {
    static const char* derived[] = {"version",      "kind",        "sigma",
                                    "filter_kind",  "filter_fwhm_nm",
                                    "compensation", "length_ratio", "nx",
                                    "ny",           "extent_X0"};
    bool skip = false;
    if (map != nullptr)
      for (const char* d : derived)
        if (k == d) { skip = true; break; }
    if (k == "version") skip = true;
    if (!skip) out << "# " << k << "=" << v << "\n";
  }
  return out.str();
}

void write_map_csv(const std::string& path, const FarFieldMap& map,
                   const Metadata& meta) {
  std::ostringstream out;
  out << meta_block(&map, meta);
  out << "x_over_X0,y_over_X0,value\n";
  for (int iy = 0; iy < map.ny; ++iy)
    for (int ix = 0; ix < map.nx; ++ix)
      out << format_value(map.x_of(ix)) << ',' << format_value(map.y_of(iy))
          << ',' << format_value(map.at(ix, iy)) << '\n';
  atomic_write(path, out.str());
}

LoadedMap read_map_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open '" + path + "'");
  LoadedMap loaded;
  std::string line;
  std::vector<double> xs, ys, vs;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        key.erase(0, key.find_first_not_of(' '));
        loaded.meta[key] = line.substr(eq + 1);
      }
      continue;
    }
    if (!saw_header) {
      if (line != "x_over_X0,y_over_X0,value")
        throw config_error(path + ": unexpected column header '" + line + "'");
      saw_header = true;
      continue;
    }
    std::istringstream row(line);
    double x, y, v;
    char c1, c2;
    if (!(row >> x >> c1 >> y >> c2 >> v) || c1 != ',' || c2 != ',')
      throw config_error(path + ": malformed row '" + line + "'");
    xs.push_back(x);
    ys.push_back(y);
    vs.push_back(v);
  }
  FarFieldMap& m = loaded.map;
  m.kind = map_kind_from_string(loaded.meta.count("kind") ? loaded.meta["kind"]
                                                          : "s2diff");
  m.nx = std::stoi(loaded.meta.at("nx"));
  m.ny = std::stoi(loaded.meta.at("ny"));
  m.extent = std::stod(loaded.meta.at("extent_X0"));
  m.sigma = loaded.meta.count("sigma") ? std::stod(loaded.meta["sigma"]) : 0.0;
  if (vs.size() != static_cast<std::size_t>(m.nx) * m.ny)
    throw config_error(path + ": row count does not match nx*ny");
  m.values = vs;
  return loaded;
}

void write_map_pgm(const std::string& path, const FarFieldMap& map,
                   const Metadata& meta) {
  double lo = map.values.empty() ? 0.0 : map.values.front();
  double hi = lo;
  for (double v : map.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi > lo ? hi - lo : 1.0;

  std::ostringstream out;
  out << "P2\n";
  {
    std::istringstream metas(meta_block(&map, meta));
    std::string line;
    while (std::getline(metas, line)) out << line << "\n";
  }
  out << map.nx << ' ' << map.ny << "\n255\n";
  for (int iy = 0; iy < map.ny; ++iy) {
    for (int ix = 0; ix < map.nx; ++ix) {
      const int g = static_cast<int>(
          std::lround(255.0 * (map.at(ix, iy) - lo) / span));
      out << g << (ix + 1 == map.nx ? '\n' : ' ');
    }
  }
  atomic_write(path, out.str());
}

void write_rows_csv(const std::string& path, const std::string& header,
                    const std::vector<std::pair<double, double>>& rows,
                    const Metadata& meta) {
  std::ostringstream out;
  out << meta_block(nullptr, meta);
  out << header << "\n";
  for (const auto& [a, b] : rows)
    out << format_value(a) << ',' << format_value(b) << '\n';
  atomic_write(path, out.str());
}

}
