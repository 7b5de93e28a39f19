#include "dimerarc/svg.hpp"

#include <algorithm>
#include <limits>

#include "dimerarc/error.hpp"
#include "dimerarc/report.hpp"

namespace dimerarc {

namespace {

// Maps lattice half-step coordinates to pixel coordinates with the y
// axis flipped so larger y is drawn higher.
struct Frame {
  double scale, ox, oy;
  long maxy;

  double px(double x) const { return (x + ox) * scale; }
  double py(double y) const { return (double(maxy) + oy - y) * scale; }
};

Frame make_frame(const BipartiteGraph& g, const SvgOptions& opt,
                 double* width, double* height) {
  int minx = std::numeric_limits<int>::max(), maxx = std::numeric_limits<int>::min();
  int miny = minx, maxy = maxx;
  auto touch = [&](GridPoint p) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  };
  for (const GridPoint& p : g.whites) touch(p);
  for (const GridPoint& p : g.blacks) touch(p);
  require(minx <= maxx, "cannot render an empty graph");
  Frame f{opt.scale, opt.margin - double(minx), opt.margin, maxy};
  *width = (double(maxx - minx) + 2.0 * opt.margin) * opt.scale;
  *height = (double(maxy - miny) + 2.0 * opt.margin) * opt.scale;
  return f;
}

std::string num(double v) {
  // Two decimals are plenty at screen scale and keep the files small.
  const double r = v < 0 ? -1.0 : 1.0;
  const long cents = long(v * 100.0 + r * 0.5);
  std::string s = std::to_string(cents / 100);
  const long frac = std::abs(cents % 100);
  if (frac == 0) return s;
  s += '.';
  s += char('0' + frac / 10);
  if (frac % 10) s += char('0' + frac % 10);
  return s;
}

void line(std::string& out, const Frame& f, double x1, double y1, double x2,
          double y2, const std::string& style) {
  out += "<line x1=\"" + num(f.px(x1)) + "\" y1=\"" + num(f.py(y1)) +
         "\" x2=\"" + num(f.px(x2)) + "\" y2=\"" + num(f.py(y2)) + "\" " +
         style + "/>\n";
}

void node(std::string& out, const Frame& f, GridPoint p, bool white,
          double r) {
  out += "<circle cx=\"" + num(f.px(double(p.x))) + "\" cy=\"" +
         num(f.py(double(p.y))) + "\" r=\"" + num(r) + "\" ";
  if (white)
    out += "fill=\"#ffffff\" stroke=\"#333333\" stroke-width=\"1\"";
  else
    out += "fill=\"#222222\"";
  out += "/>\n";
}

std::string open_svg(double width, double height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) +
         " " + num(height) + "\">\n";
}

void graph_background(std::string& out, const Frame& f,
                      const BipartiteGraph& g, const SvgOptions& opt) {
  if (opt.show_edges) {
    const std::string style =
        "stroke=\"#cccccc\" stroke-width=\"1\"";
    for (int w = 0; w < g.white_count(); ++w)
      for (int b : g.adj[w])
        line(out, f, double(g.whites[w].x), double(g.whites[w].y),
             double(g.blacks[b].x), double(g.blacks[b].y), style);
  }
  if (opt.show_nodes) {
    for (const GridPoint& p : g.blacks) node(out, f, p, false, 2.4);
    for (const GridPoint& p : g.whites) node(out, f, p, true, 2.4);
  }
}

}  // namespace

std::string render_graph_svg(const BipartiteGraph& g, const SvgOptions& opt) {
  double w = 0, h = 0;
  const Frame f = make_frame(g, opt, &w, &h);
  std::string out = open_svg(w, h);
  graph_background(out, f, g, opt);
  out += "</svg>\n";
  return out;
}

std::string render_matching_svg(const BipartiteGraph& g, const Matching& m,
                                const SvgOptions& opt) {
  double w = 0, h = 0;
  const Frame f = make_frame(g, opt, &w, &h);
  std::string out = open_svg(w, h);
  graph_background(out, f, g, opt);
  const std::string style =
      "stroke=\"#2266bb\" stroke-width=\"4\" stroke-linecap=\"round\"";
  for (const EdgeKey& e : m)
    line(out, f, double(e.w.x), double(e.w.y), double(e.b.x), double(e.b.y),
         style);
  out += "</svg>\n";
  return out;
}

std::string render_superposition_svg(const BipartiteGraph& g,
                                     const std::vector<Component>& comps,
                                     const Polyline* dual_path,
                                     const SvgOptions& opt,
                                     const std::vector<std::string>* colors) {
  double w = 0, h = 0;
  const Frame f = make_frame(g, opt, &w, &h);
  std::string out = open_svg(w, h);
  graph_background(out, f, g, opt);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const Component& c = comps[ci];
    std::string color = "#888888";
    if (c.kind == Component::Kind::loop) color = "#2266bb";
    if (c.kind == Component::Kind::arc) color = "#cc3322";
    if (colors != nullptr && ci < colors->size() && !(*colors)[ci].empty())
      color = (*colors)[ci];
    const std::string style = "stroke=\"" + color +
                              "\" stroke-width=\"3\" stroke-linecap=\"round\"";
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      const GridPoint a = c.vertices[i];
      const GridPoint b = c.vertices[(i + 1) % c.vertices.size()];
      line(out, f, double(a.x), double(a.y), double(b.x), double(b.y), style);
    }
  }
  if (dual_path != nullptr && dual_path->pts.size() >= 2) {
    // Dual path points live in quarter-step units.
    out += "<polyline fill=\"none\" stroke=\"#ee8800\" stroke-width=\"2\" "
           "stroke-dasharray=\"6 4\" points=\"";
    for (std::size_t i = 0; i < dual_path->pts.size(); ++i) {
      if (i) out += ' ';
      out += num(f.px(double(dual_path->pts[i][0]) / 4.0)) + "," +
             num(f.py(double(dual_path->pts[i][1]) / 4.0));
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dimerarc
