#pragma once

// SVG rendering of lattice graphs, matchings and double-dimer
// superpositions.  Output is plain inline SVG with deterministic number
// formatting so identical inputs produce identical bytes.

#include <string>
#include <vector>

#include "dimerarc/arcs.hpp"
#include "dimerarc/lattice.hpp"
#include "dimerarc/zipper.hpp"

namespace dimerarc {

struct SvgOptions {
  double scale = 14.0;   // pixels per half-step of the lattice
  double margin = 2.0;   // border, in half-steps
  bool show_nodes = true;
  bool show_edges = true;  // faint background edges of the graph
};

// The bare graph: background edges plus white and black nodes.
std::string render_graph_svg(const BipartiteGraph& g,
                             const SvgOptions& opt = {});

// A single dimer cover drawn as thick edge segments over the graph.
std::string render_matching_svg(const BipartiteGraph& g, const Matching& m,
                                const SvgOptions& opt = {});

// A superposition: doubled edges in grey, loops in blue, arcs in red,
// with an optional dual path overlaid as a dashed line.  A non-null
// `colors` entry overrides the default color of the same-index
// component; empty strings keep the default.
std::string render_superposition_svg(const BipartiteGraph& g,
                                     const std::vector<Component>& comps,
                                     const Polyline* dual_path = nullptr,
                                     const SvgOptions& opt = {},
                                     const std::vector<std::string>* colors = nullptr);

}  // namespace dimerarc
