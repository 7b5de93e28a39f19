#include "dimerarc/report.hpp"

#include <charconv>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "dimerarc/error.hpp"
#include "dimerarc/version.hpp"

namespace dimerarc {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  require(res.ec == std::errc{}, "double formatting failed");
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[std::size_t(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunReport::RunReport(std::string dir, std::string tool_name)
    : directory(std::move(dir)), tool(std::move(tool_name)) {
  std::filesystem::create_directories(directory);
}

void RunReport::add_param(const std::string& key, const std::string& value) {
  params_.emplace_back(key, value);
}

std::string RunReport::store(const std::string& name,
                             const std::string& content) {
  require(name.find('/') == std::string::npos, "output names must be flat");
  const std::string path = directory + "/" + name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(bool(out), "cannot open output file " + path);
  out << content;
  require(bool(out), "write failed for " + path);
  outputs_.push_back(name);
  return path;
}

std::string RunReport::write_csv(const std::string& name,
                                 const std::vector<std::string>& header,
                                 const std::vector<std::vector<std::string>>& rows) {
  std::string body;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) body += ',';
    body += csv_field(header[i]);
  }
  body += '\n';
  for (const auto& row : rows) {
    require(row.size() == header.size(), "csv row width mismatch in " + name);
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) body += ',';
      body += csv_field(row[i]);
    }
    body += '\n';
  }
  return store(name, body);
}

std::string RunReport::write_text(const std::string& name,
                                  const std::string& content) {
  return store(name, content);
}

std::string RunReport::write_json(const std::string& name,
                                  const std::string& body) {
  return store(name, body);
}

std::string RunReport::write_manifest() const {
  nlohmann::ordered_json doc;
  doc["tool"] = tool;
  doc["version"] = kVersion;
  doc["commit"] = kGitCommit;
  doc["seed"] = seed;
  doc["threads"] = threads;
  doc["config_digest"] = "fnv1a:" + hex64(config_digest);
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params_) params[k] = v;
  doc["params"] = std::move(params);
  doc["outputs"] = outputs_;
  if (with_timestamp) doc["timestamp"] = utc_now();

  const std::string path = directory + "/manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(bool(out), "cannot open output file " + path);
  out << doc.dump(2) << '\n';
  require(bool(out), "write failed for " + path);
  return path;
}

}  // namespace dimerarc
