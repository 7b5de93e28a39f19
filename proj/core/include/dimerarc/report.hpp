#pragma once

// Deterministic run reports.  A report owns an output directory, collects
// named CSV, JSON and text files, and finishes with a manifest recording
// the tool name, library version, git commit, seed, thread count and the
// FNV-1a digest of the configuration.  With the timestamp suppressed a
// rerun reproduces every output byte for byte.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dimerarc {

// Shortest decimal form that round-trips through a double.
std::string format_double(double v);

// RFC 4180 style quoting: fields with commas, quotes or newlines are
// wrapped in double quotes with inner quotes doubled.
std::string csv_field(const std::string& s);

struct RunReport {
  std::string directory;
  std::string tool;
  std::uint64_t seed = 0;
  std::uint64_t config_digest = 0;
  int threads = 1;
  bool with_timestamp = true;

  RunReport(std::string dir, std::string tool_name);

  void add_param(const std::string& key, const std::string& value);

  // Each writer stores the file under the report directory and records
  // its name in the manifest's output list; the full path is returned.
  std::string write_csv(const std::string& name,
                        const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows);
  std::string write_text(const std::string& name, const std::string& content);

  // Serializes `body` (pre-rendered JSON) under the given name.
  std::string write_json(const std::string& name, const std::string& body);

  // Writes manifest.json and returns its path.
  std::string write_manifest() const;

 private:
  std::string store(const std::string& name, const std::string& content);

  std::vector<std::pair<std::string, std::string>> params_;
  std::vector<std::string> outputs_;
};

}  // namespace dimerarc
