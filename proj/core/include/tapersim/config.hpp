#ifndef TAPERSIM_CONFIG_HPP
#define TAPERSIM_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "tapersim/inscription.hpp"

namespace tapersim {

/// Flat `key = value` store ('#' starts a comment, blank lines
/// ignored). Keys keep insertion-independent sorted order when
/// serialized so files hash reproducibly.
class KeyValueConfig {
public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, int value);

  std::string serialize() const;

private:
  std::map<std::string, std::string> entries_;
};

/// MaterialModel <-> config file.
MaterialModel material_from_config(const KeyValueConfig& cfg,
                                   const std::string& prefix = "");
void material_to_config(const MaterialModel& model, KeyValueConfig& cfg,
                        const std::string& prefix = "");

/// InscriptionParams <-> config file.
InscriptionParams params_from_config(const KeyValueConfig& cfg,
                                     const std::string& prefix = "");
void params_to_config(const InscriptionParams& params, KeyValueConfig& cfg,
                      const std::string& prefix = "");

/// FNV-1a 64-bit hash as fixed-width hex; used for run.meta stamps.
std::string fnv1a_hex(const std::string& bytes);

} // namespace tapersim

#endif
