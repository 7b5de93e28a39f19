#include "dimerarc/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "dimerarc/error.hpp"

namespace dimerarc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

KeyValues KeyValues::parse_text(const std::string& text, const std::string& origin) {
  KeyValues kv;
  kv.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    require(eq != std::string::npos, origin + ":" + std::to_string(lineno) +
                                         ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    require(!key.empty(), origin + ":" + std::to_string(lineno) + ": empty key");
    require(kv.values_.find(key) == kv.values_.end(),
            origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv.values_[key] = value;
    kv.consumed_[key] = false;
    kv.entries_.emplace_back(key, value);
  }
  return kv;
}

KeyValues KeyValues::parse_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

bool KeyValues::has(const std::string& key) const {
  return values_.find(key) != values_.end();
}

std::optional<std::string> KeyValues::raw_opt(const std::string& key) {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  consumed_[key] = true;
  return it->second;
}

std::string KeyValues::raw(const std::string& key) {
  auto v = raw_opt(key);
  require(bool(v), origin_ + ": missing required key '" + key + "'");
  return *v;
}

std::string KeyValues::get_string(const std::string& key) { return raw(key); }

std::string KeyValues::get_string(const std::string& key, const std::string& fallback) {
  auto v = raw_opt(key);
  return v ? *v : fallback;
}

long long KeyValues::get_int(const std::string& key) {
  const std::string s = raw(key);
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    fail(origin_ + ": key '" + key + "' is not an integer: " + s);
  }
  require(pos == s.size(), origin_ + ": key '" + key + "' is not an integer: " + s);
  return v;
}

long long KeyValues::get_int(const std::string& key, long long fallback) {
  return has(key) ? get_int(key) : fallback;
}

double KeyValues::get_double(const std::string& key) {
  const std::string s = raw(key);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail(origin_ + ": key '" + key + "' is not a number: " + s);
  }
  require(pos == s.size(), origin_ + ": key '" + key + "' is not a number: " + s);
  return v;
}

double KeyValues::get_double(const std::string& key, double fallback) {
  return has(key) ? get_double(key) : fallback;
}

bool KeyValues::get_bool(const std::string& key) {
  std::string s = raw(key);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
  if (s == "0" || s == "false" || s == "no" || s == "off") return false;
  fail(origin_ + ": key '" + key + "' is not a boolean: " + s);
}

bool KeyValues::get_bool(const std::string& key, bool fallback) {
  return has(key) ? get_bool(key) : fallback;
}

void KeyValues::finish() const {
  std::vector<std::string> unknown;
  for (const auto& [key, used] : consumed_)
    if (!used) unknown.push_back(key);
  if (!unknown.empty()) {
    std::string msg = origin_ + ": unknown key(s):";
    for (const auto& k : unknown) msg += " '" + k + "'";
    fail(msg);
  }
}

std::uint64_t KeyValues::digest() const {
  // FNV-1a over "key=value\n" in sorted key order.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& [key, value] : values_) {
    mix(key);
    mix("=");
    mix(value);
    mix("\n");
  }
  return h;
}

}  // namespace dimerarc
