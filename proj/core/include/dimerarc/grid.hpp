#pragma once

// Exact integer geometry for the square lattice with mesh eps.  All node
// coordinates are stored in half-lattice units (multiples of eps/2), so
// lattice vertices sit at (even, even) points, face centers at (odd, odd),
// vertical-edge midpoints at (even, odd) and horizontal-edge midpoints at
// (odd, even).  eps enters only when converting to continuum positions.

#include <complex>
#include <cstdint>
#include <cstdlib>

namespace dimerarc {

struct GridPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

inline GridPoint operator+(GridPoint a, GridPoint b) { return {a.x + b.x, a.y + b.y}; }
inline GridPoint operator-(GridPoint a, GridPoint b) { return {a.x - b.x, a.y - b.y}; }

// Reflection across the horizontal axis y = 0.
inline GridPoint mirrored(GridPoint p) { return {p.x, -p.y}; }

inline bool odd(int v) { return (v & 1) != 0; }

// Node classes of the extended bipartite graph: B1 are lattice vertices,
// B0 are faces, W0 are vertical edges, W1 are horizontal edges.  The class
// is determined by coordinate parity alone.
enum class NodeClass : std::uint8_t { B1, B0, W0, W1 };

inline NodeClass classify(GridPoint p) {
  if (odd(p.x)) return odd(p.y) ? NodeClass::B0 : NodeClass::W1;
  return odd(p.y) ? NodeClass::W0 : NodeClass::B1;
}

inline bool is_black(NodeClass c) { return c == NodeClass::B1 || c == NodeClass::B0; }
inline bool is_white(NodeClass c) { return c == NodeClass::W0 || c == NodeClass::W1; }
inline bool is_black(GridPoint p) { return is_black(classify(p)); }
inline bool is_white(GridPoint p) { return is_white(classify(p)); }

inline const char* class_name(NodeClass c) {
  switch (c) {
    case NodeClass::B1: return "B1";
    case NodeClass::B0: return "B0";
    case NodeClass::W0: return "W0";
    case NodeClass::W1: return "W1";
  }
  return "??";
}

// Continuum position of a node, half-units scaled by eps / 2.
inline std::complex<double> position(GridPoint p, double eps) {
  return {0.5 * eps * p.x, 0.5 * eps * p.y};
}

// Squared Euclidean distance in half-units.
inline long long dist2(GridPoint a, GridPoint b) {
  const long long dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct GridPointHash {
  std::size_t operator()(GridPoint p) const noexcept {
    std::uint64_t v =
        (std::uint64_t(std::uint32_t(p.x)) << 32) | std::uint32_t(p.y);
    v ^= v >> 33;
    v *= 0xff51afd7ed558ccdULL;
    v ^= v >> 33;
    v *= 0xc4ceb9fe1a85ec53ULL;
    v ^= v >> 33;
    return std::size_t(v);
  }
};

}  // namespace dimerarc
