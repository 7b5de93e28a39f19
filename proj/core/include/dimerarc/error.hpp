#pragma once

#include <stdexcept>
#include <string>

namespace dimerarc {

// Thrown for invalid inputs and violated preconditions (bad descriptors,
// unmatchable graphs, missing connection data, ...).
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& what) { throw Error(what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(what);
}

}  // namespace dimerarc
