#pragma once

// Flat key=value configuration files: '#' comments, one binding per line,
// no sections.  Readers consume keys through typed getters; finish()
// rejects any key that was never consumed, so misspelled options fail
// loudly instead of being ignored.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dimerarc {

class KeyValues {
 public:
  static KeyValues parse_text(const std::string& text, const std::string& origin = "<string>");
  static KeyValues parse_file(const std::string& path);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& fallback);
  long long get_int(const std::string& key);
  long long get_int(const std::string& key, long long fallback);
  double get_double(const std::string& key);
  double get_double(const std::string& key, double fallback);
  bool get_bool(const std::string& key);
  bool get_bool(const std::string& key, bool fallback);

  // Throws if any key was never consumed by a getter.
  void finish() const;

  // All bindings in file order, consumed or not.
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  // FNV-1a digest of the canonicalized bindings (sorted by key), used to
  // stamp output manifests.
  std::uint64_t digest() const;

 private:
  std::string raw(const std::string& key);
  std::optional<std::string> raw_opt(const std::string& key);

  std::string origin_;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::map<std::string, std::string> values_;
  std::map<std::string, bool> consumed_;
};

}  // namespace dimerarc
