#include "pdc/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pdc/gain.hpp"

namespace pdc {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct KeyValue {
  std::string section, key, value;
  std::string where;  // "file:line" for diagnostics
};

std::vector<KeyValue> parse_ini(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::vector<KeyValue> out;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    if (t.front() == '[') {
      if (t.back() != ']')
        throw config_error(where + ": malformed section header '" + t + "'");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw config_error(where + ": expected key = value, got '" + t + "'");
    if (section.empty())
      throw config_error(where + ": key outside any [section]");
    out.push_back({section, trim(t.substr(0, eq)), trim(t.substr(eq + 1)), where});
  }
  return out;
}

double parse_double(const KeyValue& kv) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(kv.value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != kv.value.size())
    throw config_error(kv.where + ": '" + kv.key + "' expects a number, got '" +
                       kv.value + "'");
  return v;
}

int parse_int(const KeyValue& kv) {
  const double v = parse_double(kv);
  const int i = static_cast<int>(std::lround(v));
  if (static_cast<double>(i) != v)
    throw config_error(kv.where + ": '" + kv.key + "' expects an integer");
  return i;
}

bool parse_bool(const KeyValue& kv) {
  if (kv.value == "true" || kv.value == "on" || kv.value == "1") return true;
  if (kv.value == "false" || kv.value == "off" || kv.value == "0") return false;
  throw config_error(kv.where + ": '" + kv.key + "' expects true/false");
}

void apply(RunConfig& cfg, const KeyValue& kv) {
  const std::string& s = kv.section;
  const std::string& k = kv.key;
  if (s == "crystal") {
    if (k == "preset") {
      if (kv.value != "BBO-default")
        throw config_error(kv.where + ": unknown crystal preset '" + kv.value + "'");
      cfg.crystal.sellmeier = bbo_sellmeier();
    } else if (k == "cut_angle_deg") {
      cfg.crystal.cut_angle = parse_double(kv) * M_PI / 180.0;
    } else if (k == "length_mm") {
      cfg.crystal.length = parse_double(kv) * 1e-3;
    } else if (k == "pump_nm") {
      cfg.crystal.pump_wavelength = parse_double(kv) * 1e-9;
    } else if (k == "sigma") {
      cfg.crystal.sigma = parse_double(kv);
    } else if (k == "no_a") {
      cfg.crystal.sellmeier.ordinary.A = parse_double(kv);
    } else if (k == "no_b") {
      cfg.crystal.sellmeier.ordinary.B = parse_double(kv);
    } else if (k == "no_c") {
      cfg.crystal.sellmeier.ordinary.C = parse_double(kv);
    } else if (k == "no_d") {
      cfg.crystal.sellmeier.ordinary.D = parse_double(kv);
    } else if (k == "ne_a") {
      cfg.crystal.sellmeier.extraordinary.A = parse_double(kv);
    } else if (k == "ne_b") {
      cfg.crystal.sellmeier.extraordinary.B = parse_double(kv);
    } else if (k == "ne_c") {
      cfg.crystal.sellmeier.extraordinary.C = parse_double(kv);
    } else if (k == "ne_d") {
      cfg.crystal.sellmeier.extraordinary.D = parse_double(kv);
    } else {
      throw config_error(kv.where + ": unknown key '" + k + "' in [crystal]");
    }
  } else if (s == "detection") {
    if (k == "focal_mm") {
      cfg.detection.focal_length = parse_double(kv) * 1e-3;
    } else if (k == "detection_time_s") {
      cfg.detection.detection_time = parse_double(kv);
    } else if (k == "resolution_area_m2") {
      cfg.detection.resolution_area = parse_double(kv);
    } else if (k == "nx") {
      cfg.nx = parse_int(kv);
    } else if (k == "ny") {
      cfg.ny = parse_int(kv);
    } else if (k == "extent_X0") {
      cfg.extent = parse_double(kv);
    } else {
      throw config_error(kv.where + ": unknown key '" + k + "' in [detection]");
    }
  } else if (s == "filter") {
    if (k == "kind") {
      if (kv.value == "step") cfg.filter.kind = FilterSpec::Kind::step;
      else if (kv.value == "gaussian") cfg.filter.kind = FilterSpec::Kind::gaussian;
      else if (kv.value == "none") cfg.filter.kind = FilterSpec::Kind::none;
      else throw config_error(kv.where + ": unknown filter kind '" + kv.value + "'");
    } else if (k == "fwhm_nm") {
      cfg.filter.fwhm_lambda = parse_double(kv) * 1e-9;
    } else {
      throw config_error(kv.where + ": unknown key '" + k + "' in [filter]");
    }
  } else if (s == "compensation") {
    if (k == "enabled") {
      cfg.comp.enabled = parse_bool(kv);
    } else if (k == "length_ratio") {
      if (kv.value == "optimal") {
        cfg.comp_optimal = true;
      } else {
        cfg.comp_optimal = false;
        cfg.comp.length_ratio = parse_double(kv);
        if (cfg.comp.length_ratio < 0.0 || cfg.comp.length_ratio > 1.0)
          throw config_error(kv.where + ": length_ratio must be in [0, 1]");
      }
    } else {
      throw config_error(kv.where + ": unknown key '" + k + "' in [compensation]");
    }
  } else if (s == "output") {
    if (k == "directory") {
      cfg.output_dir = kv.value;
    } else if (k == "formats") {
      if (kv.value == "csv") { cfg.write_csv = true; cfg.write_pgm = false; }
      else if (kv.value == "pgm") { cfg.write_csv = false; cfg.write_pgm = true; }
      else if (kv.value == "both") { cfg.write_csv = true; cfg.write_pgm = true; }
      else throw config_error(kv.where + ": formats must be csv, pgm or both");
    } else {
      throw config_error(kv.where + ": unknown key '" + k + "' in [output]");
    }
  } else {
    throw config_error(kv.where + ": unknown section [" + s + "]");
  }
}

}  // namespace

CompensationSpec RunConfig::resolved_compensation() const {
  CompensationSpec c = comp;
  if (comp_optimal)
    c.length_ratio =
        optimal_compensation_length(crystal.sigma, crystal.length) / crystal.length;
  return c;
}

RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides) {
  RunConfig cfg;
  if (!path.empty())
    for (const KeyValue& kv : parse_ini(path)) apply(cfg, kv);
  int n = 0;
  for (const std::string& ov : overrides) {
    ++n;
    const auto dot = ov.find('.');
    const auto eq = ov.find('=');
    if (dot == std::string::npos || eq == std::string::npos || dot > eq)
      throw config_error("override #" + std::to_string(n) +
                         " must look like section.key=value, got '" + ov + "'");
    KeyValue kv;
    kv.section = trim(ov.substr(0, dot));
    kv.key = trim(ov.substr(dot + 1, eq - dot - 1));
    kv.value = trim(ov.substr(eq + 1));
    kv.where = "override '" + ov + "'";
    apply(cfg, kv);
  }
  cfg.crystal.validate();
  cfg.filter.validate();
  if (cfg.nx < 2 || cfg.ny < 2) throw config_error("grid must be at least 2x2");
  if (!(cfg.extent > 0.0)) throw config_error("extent_X0 must be > 0");
  return cfg;
}

}
