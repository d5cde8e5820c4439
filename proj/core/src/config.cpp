#include "tapersim/config.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tapersim/errors.hpp"
#include "tapersim/field_io.hpp"

namespace tapersim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos)
    return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

} // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) +
                         ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw config_error("config line " + std::to_string(lineno) +
                         ": empty key");
    cfg.entries_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream is(path);
  if (!is)
    throw config_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse(buf.str());
}

bool KeyValueConfig::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end())
    throw config_error("missing config key '" + key + "'");
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
  const std::string s = get_string(key);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw config_error("config key '" + key + "': '" + s +
                       "' is not a number");
  return v;
}

double KeyValueConfig::get_double(const std::string& key,
                                  double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int KeyValueConfig::get_int(const std::string& key) const {
  const double v = get_double(key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw config_error("config key '" + key + "' must be an integer");
  return i;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::vector<double> KeyValueConfig::get_double_list(
    const std::string& key) const {
  const std::string s = get_string(key);
  std::vector<double> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty())
      continue;
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0')
      throw config_error("config key '" + key + "': '" + item +
                         "' is not a number");
    out.push_back(v);
  }
  if (out.empty())
    throw config_error("config key '" + key + "': empty list");
  return out;
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (double v : get_double_list(key)) {
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
      throw config_error("config key '" + key + "' must list integers");
    out.push_back(i);
  }
  return out;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

void KeyValueConfig::set(const std::string& key, double value) {
  entries_[key] = format_double(value);
}

void KeyValueConfig::set(const std::string& key, int value) {
  entries_[key] = std::to_string(value);
}

std::string KeyValueConfig::serialize() const {
  std::string out;
  for (const auto& [key, value] : entries_) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

MaterialModel material_from_config(const KeyValueConfig& cfg,
                                   const std::string& prefix) {
  MaterialModel defaults;
  MaterialModel m;
  m.dn_max = cfg.get_double(prefix + "dn_max", defaults.dn_max);
  m.wx0_um = cfg.get_double(prefix + "wx0_um", defaults.wx0_um);
  m.wy0_um = cfg.get_double(prefix + "wy0_um", defaults.wy0_um);
  m.volume_slope_x =
      cfg.get_double(prefix + "volume_slope_x", defaults.volume_slope_x);
  m.volume_slope_y =
      cfg.get_double(prefix + "volume_slope_y", defaults.volume_slope_y);
  m.rerun_threshold_factor = cfg.get_double(prefix + "rerun_threshold_factor",
                                            defaults.rerun_threshold_factor);
  m.saturation_dose =
      cfg.get_double(prefix + "saturation_dose", defaults.saturation_dose);
  m.contrast_rise =
      cfg.get_double(prefix + "contrast_rise", defaults.contrast_rise);
  m.n_clad = cfg.get_double(prefix + "n_clad", defaults.n_clad);
  m.validate();
  return m;
}

void material_to_config(const MaterialModel& model, KeyValueConfig& cfg,
                        const std::string& prefix) {
  cfg.set(prefix + "dn_max", model.dn_max);
  cfg.set(prefix + "wx0_um", model.wx0_um);
  cfg.set(prefix + "wy0_um", model.wy0_um);
  cfg.set(prefix + "volume_slope_x", model.volume_slope_x);
  cfg.set(prefix + "volume_slope_y", model.volume_slope_y);
  cfg.set(prefix + "rerun_threshold_factor", model.rerun_threshold_factor);
  cfg.set(prefix + "saturation_dose", model.saturation_dose);
  cfg.set(prefix + "contrast_rise", model.contrast_rise);
  cfg.set(prefix + "n_clad", model.n_clad);
}

InscriptionParams params_from_config(const KeyValueConfig& cfg,
                                     const std::string& prefix) {
  InscriptionParams defaults;
  InscriptionParams p;
  p.p0 = cfg.get_double(prefix + "p0", defaults.p0);
  p.pa_over_p0 = cfg.get_double(prefix + "pa_over_p0", defaults.pa_over_p0);
  p.reps = cfg.get_int(prefix + "reps", defaults.reps);
  p.taper_length_mm =
      cfg.get_double(prefix + "taper_length_mm", defaults.taper_length_mm);
  const std::string ramp = cfg.get_string(prefix + "ramp", "linear");
  if (ramp != "linear")
    throw config_error("params: unsupported ramp shape '" + ramp + "'");
  p.ramp = RampShape::linear;
  p.validate();
  return p;
}

void params_to_config(const InscriptionParams& params, KeyValueConfig& cfg,
                      const std::string& prefix) {
  cfg.set(prefix + "p0", params.p0);
  cfg.set(prefix + "pa_over_p0", params.pa_over_p0);
  cfg.set(prefix + "reps", params.reps);
  cfg.set(prefix + "taper_length_mm", params.taper_length_mm);
  cfg.set(prefix + "ramp", "linear");
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

} // namespace tapersim
