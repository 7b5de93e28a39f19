// Command-line front end: reproducible experiment runs with CSV/JSON/SVG
// outputs and a manifest per run.  Exit code 0 means every check in the
// run passed its tolerance, 1 a tolerance failure or runtime error, 2 a
// usage or configuration error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "dimerarc/arcs.hpp"
#include "dimerarc/config.hpp"
#include "dimerarc/continuum.hpp"
#include "dimerarc/corpus.hpp"
#include "dimerarc/cylinder.hpp"
#include "dimerarc/enumerate.hpp"
#include "dimerarc/error.hpp"
#include "dimerarc/kasteleyn.hpp"
#include "dimerarc/lattice.hpp"
#include "dimerarc/report.hpp"
#include "dimerarc/rng.hpp"
#include "dimerarc/sampler.hpp"
#include "dimerarc/svg.hpp"
#include "dimerarc/zipper.hpp"

namespace {

using namespace dimerarc;

constexpr double kPi = std::numbers::pi;

struct CommonOpts {
  std::string config;
  std::string out = "out";
  std::uint64_t seed = 20260822;
  int threads = 1;
  bool no_timestamp = false;
};

// Configuration problems exit with code 2 instead of the tolerance
// failure code 1.
struct UsageError : Error {
  using Error::Error;
};

void add_common(CLI::App* cmd, CommonOpts* co) {
  cmd->add_option("--config", co->config, "Key-value configuration file");
  cmd->add_option("--out", co->out, "Output directory");
  cmd->add_option("--seed", co->seed, "Random seed");
  cmd->add_option("--threads", co->threads, "Worker thread count")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--no-timestamp", co->no_timestamp,
                "Omit the timestamp from the manifest");
}

// KeyValues wrapper rethrowing every configuration error as UsageError.
class Cfg {
  template <typename Fn>
  static auto wrap(Fn&& fn) {
    try {
      return fn();
    } catch (const UsageError&) {
      throw;
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }

 public:
  explicit Cfg(const CommonOpts& co)
      : kv_(wrap([&co] {
          if (co.config.empty()) return KeyValues::parse_text("", "<default>");
          return KeyValues::parse_file(co.config);
        })) {}

  long long get_int(const std::string& k, long long f) {
    return wrap([&] { return kv_.get_int(k, f); });
  }
  double get_double(const std::string& k, double f) {
    return wrap([&] { return kv_.get_double(k, f); });
  }
  std::string get_string(const std::string& k, const std::string& f) {
    return wrap([&] { return kv_.get_string(k, f); });
  }
  bool get_bool(const std::string& k, bool f) {
    return wrap([&] { return kv_.get_bool(k, f); });
  }
  void finish() {
    wrap([&] { kv_.finish(); return 0; });
  }
  std::uint64_t digest() const { return kv_.digest(); }

 private:
  KeyValues kv_;
};

RunReport make_report(const CommonOpts& co, const std::string& tool,
                      const Cfg& kv) {
  RunReport rep(co.out, tool);
  rep.seed = co.seed;
  rep.threads = co.threads;
  rep.config_digest = kv.digest();
  rep.with_timestamp = !co.no_timestamp;
  return rep;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    const std::string piece = text.substr(pos, next - pos);
    require(!piece.empty(), "empty entry in numeric list '" + text + "'");
    std::size_t used = 0;
    const double v = std::stod(piece, &used);
    require(used == piece.size(), "bad numeric entry '" + piece + "'");
    out.push_back(v);
    pos = next + 1;
  }
  require(!out.empty(), "numeric list is empty");
  return out;
}

// Strip of height pi/2 above the axis: `height` lattice rows between the
// axis and the top, lattice spacing pi/height, marked point at relative
// width position xfrac and absolute height y.
SymmetricDomain strip_domain(int height, int width, double xfrac, double y) {
  DomainDescriptor d;
  d.shape = "rectangle";
  d.eps = kPi / double(height);
  d.width = width;
  d.height = height;
  d.zx = xfrac * double(width) * d.eps;
  d.zy = y;
  return SymmetricDomain::build(d);
}

// Mean of prod over arcs of (1 + winding * alpha) for a list of sampled
// or enumerated winding counts.
double winding_average(const std::vector<WindingCounts>& ws, double alpha) {
  double sum = 0.0;
  for (const WindingCounts& w : ws)
    sum += std::pow(1.0 + alpha, w.plus) * std::pow(1.0 - alpha, w.minus);
  return sum / double(ws.size());
}

Connection random_connection(const FoldedGraph& fg, std::mt19937_64& rng) {
  Connection conn;
  auto unit_square = [&rng]() {
    return cplx(2.0 * uniform_double(rng) - 1.0, 2.0 * uniform_double(rng) - 1.0);
  };
  const BipartiteGraph& g = fg.base;
  for (int w = 0; w < g.white_count(); ++w) {
    const GridPoint wp = g.whites[w];
    for (int b : g.adj[w]) {
      const GridPoint bp = g.blacks[b];
      const EdgeKey e{wp, bp};
      const bool wf = fg.is_folded(wp), bf = fg.is_folded(bp);
      if (!wf && !bf) {
        conn.phi[e] = random_sl2(rng, true);
      } else if (wf && bf) {
        conn.nu[e] = unit_square();
      } else {
        Eigen::Vector2cd psi;
        psi << unit_square(), unit_square();
        conn.psi[e] = psi;
      }
    }
  }
  return conn;
}

int cmd_verify_kenyon(const CommonOpts& co) {
  Cfg kv(co);
  const int connections = int(kv.get_int("connections", 20));
  const double tol = kv.get_double("tol", 1e-9);
  const auto cap = std::size_t(kv.get_int("cap", 2000000));
  const bool corrupt = kv.get_bool("corrupt_edge", false);
  kv.finish();

  RunReport rep = make_report(co, "verify-kenyon", kv);
  rep.add_param("connections", std::to_string(connections));
  rep.add_param("tol", format_double(tol));
  rep.add_param("corrupt_edge", corrupt ? "true" : "false");

  bool ok = true;
  std::vector<std::vector<std::string>> rows;
  auto corpus = identity_corpus();
  for (std::size_t gi = 0; gi < corpus.size(); ++gi) {
    CorpusEntry& ce = corpus[gi];
    if (corrupt && gi == 0) ce.phases.begin()->second *= -1.0;
    const auto configs = enumerate_omega(ce.fg, cap);
    const double sign = expansion_sign(ce.fg, ce.phases, cap);
    double worst = 0.0;
    for (int c = 0; c < connections; ++c) {
      std::mt19937_64 rng = substream(co.seed, gi * 1000 + std::size_t(c));
      const Connection conn =
          c == 0 ? Connection{} : random_connection(ce.fg, rng);
      const cplx pf = pfaffian(assemble_K(ce.fg, ce.phases, conn)).value();
      cplx rhs = 0.0;
      for (const auto& cfg : configs) rhs += config_weight(conn, cfg);
      rhs *= sign;
      const double err =
          std::abs(pf - rhs) / std::max(1.0, std::abs(pf));
      worst = std::max(worst, err);
    }
    ok = ok && worst <= tol;
    rows.push_back({ce.name, std::to_string(ce.fg.n()),
                    std::to_string(configs.size()), format_double(worst),
                    worst <= tol ? "pass" : "FAIL"});
  }
  rep.write_csv("kenyon.csv",
                {"graph", "dim", "configurations", "max_rel_err", "status"},
                rows);
  rep.write_manifest();
  return ok ? 0 : 1;
}

int cmd_moments(const CommonOpts& co) {
  Cfg kv(co);
  const auto ys = parse_double_list(
      kv.get_string("y_list", "0.5235987755982988,0.7853981633974483,"
                              "1.0471975511965976"));
  const int n_max = int(kv.get_int("n_max", 4));
  const int panels = int(kv.get_int("panels", 64));
  const double tol_routes = kv.get_double("tol_routes", 1e-9);
  const double tol_closed = kv.get_double("tol_closed", 1e-8);
  kv.finish();
  if (n_max < 4) throw UsageError("moment formulas need at least four coefficients");

  RunReport rep = make_report(co, "moments", kv);
  rep.add_param("n_max", std::to_string(n_max));

  bool ok = true;
  std::vector<std::vector<std::string>> rows;
  for (double y : ys) {
    const auto c = continuum_trace_coefficients(y, n_max, panels);
    const ContinuumMoments bell = bell_moments(c);
    const ContinuumMoments series = series_moments(c);
    const AleTargets ale = ale_targets(y);
    const double route_gap = std::max(
        {std::abs(bell.odd - series.odd), std::abs(bell.pairs - series.pairs),
         std::abs(bell.pair_odd - series.pair_odd),
         std::abs(bell.pairs2 - series.pairs2)});
    const double closed_gap = std::max(std::abs(bell.odd - ale.odd),
                                       std::abs(bell.count - ale.count));
    const bool pass = route_gap <= tol_routes && closed_gap <= tol_closed;
    ok = ok && pass;
    rows.push_back({format_double(y), format_double(c[0]), format_double(c[1]),
                    format_double(c[2]), format_double(c[3]),
                    format_double(bell.odd), format_double(bell.count),
                    format_double(bell.pairs), format_double(bell.count2),
                    format_double(bell.var_count), format_double(ale.odd),
                    format_double(ale.count), format_double(route_gap),
                    format_double(closed_gap), pass ? "pass" : "FAIL"});
  }
  rep.write_csv("moments.csv",
                {"y", "c1", "c2", "c3", "c4", "odd", "count", "pairs",
                 "count2", "var_count", "closed_odd", "closed_count",
                 "route_gap", "closed_gap", "status"},
                rows);
  rep.write_manifest();
  return ok ? 0 : 1;
}

int cmd_trace(const CommonOpts& co) {
  Cfg kv(co);
  const int height = int(kv.get_int("height", 16));
  const int width_factor = int(kv.get_int("width_factor", 6));
  const double y = kv.get_double("y", kPi / 4.0);
  const int k_max = int(kv.get_int("k_max", 4));
  const int panels = int(kv.get_int("panels", 64));
  kv.finish();

  RunReport rep = make_report(co, "trace", kv);
  rep.add_param("height", std::to_string(height));
  rep.add_param("y", format_double(y));

  const SymmetricDomain dom =
      strip_domain(height, width_factor * height, 0.5, y);
  const GridPoint face = dom.marked_face();

  const FoldedModel fm = build_folded_model(dom);
  const Zipper z = build_zipper(fm.fg.base, face);
  const auto tf = folded_trace_powers(fm, z, k_max);

  const ShiftedModel sm = build_shifted_model(dom);
  const Zipper z1 = build_zipper(sm.g1, face);
  const auto ts = shifted_trace_powers(sm, z1, k_max);

  const auto c = continuum_trace_coefficients(y, k_max, panels);

  std::vector<std::vector<std::string>> rows;
  for (int k = 0; k < k_max; ++k) {
    rows.push_back({std::to_string(k + 1), format_double(tf[std::size_t(k)].real()),
                    format_double(ts[std::size_t(k)].real()),
                    format_double(c[std::size_t(k)]),
                    format_double(std::abs(tf[std::size_t(k)].real() - c[std::size_t(k)])),
                    format_double(std::abs(ts[std::size_t(k)].real() - c[std::size_t(k)]))});
  }
  rep.write_csv("trace.csv",
                {"k", "folded_T", "shifted_T", "continuum_c", "folded_gap",
                 "shifted_gap"},
                rows);
  rep.write_manifest();
  return 0;
}

int cmd_identity(const CommonOpts& co) {
  Cfg kv(co);
  const auto alphas = parse_double_list(kv.get_string("alphas", "0.1,0.25,0.5"));
  const double tol = kv.get_double("tol", 1e-8);
  const auto cap = std::size_t(kv.get_int("cap", 2000000));
  const double c1 = kv.get_double("c1", 1.0);
  const double c2 = kv.get_double("c2", -1.0);
  kv.finish();

  RunReport rep = make_report(co, "identity", kv);
  rep.add_param("tol", format_double(tol));

  bool ok = true;
  std::vector<std::vector<std::string>> rows;
  for (auto& [name, dom0] : small_domains()) {
    SymmetricDomain dom = dom0;
    // Mark a face in the lowest strict row, slightly off center.
    int maxx = 0;
    for (const GridPoint& p : dom.vertices()) maxx = std::max(maxx, p.x);
    dom.mark_point(0.51 * 0.5 * static_cast<double>(maxx), 0.5);
    const GridPoint face = dom.marked_face();

    const FoldedModel fm = build_folded_model(dom);
    const ShiftedModel sm = build_shifted_model(dom);
    const Zipper z = build_zipper(fm.fg.base, face);

    // Enumerated winding counts: folded over single covers of the whole
    // symmetric domain, shifted over independent cover pairs.
    std::vector<WindingCounts> folded_ws;
    {
      const BipartiteGraph full = dom.full_graph();
      for (const auto& match : enumerate_matchings(full, cap)) {
        const FoldedPair fp = fold_matching(matching_edges(full, match));
        folded_ws.push_back(arc_windings(superimpose(fp.m1, fp.m2), face));
      }
    }
    std::vector<WindingCounts> shifted_ws;
    {
      const auto covers1 = enumerate_matchings(sm.g1, cap);
      const auto covers2 = enumerate_matchings(sm.g2, cap);
      for (const auto& a : covers1) {
        const Matching ma = matching_edges(sm.g1, a);
        for (const auto& b : covers2) {
          shifted_ws.push_back(arc_windings(
              superimpose(ma, matching_edges(sm.g2, b)), face));
        }
      }
    }

    for (double alpha : alphas) {
      const double f_lhs = winding_average(folded_ws, alpha);
      const double f_det = folded_det_ratio_sqrt(fm, z, alpha).real();
      const double f_pf = folded_pf_ratio(fm, z, alpha).real();
      const double f_gap =
          std::max(std::abs(f_lhs - f_det), std::abs(f_lhs - f_pf));
      ok = ok && f_gap <= tol;
      rows.push_back({name, "folded", format_double(alpha),
                      format_double(f_lhs), format_double(f_det),
                      format_double(f_gap), f_gap <= tol ? "pass" : "FAIL"});

      const double s_lhs = winding_average(shifted_ws, alpha);
      const double s_det = shifted_det_ratio(sm, z, alpha, c1, c2).real();
      const double s_gap = std::abs(s_lhs - s_det);
      ok = ok && s_gap <= tol;
      rows.push_back({name, "shifted", format_double(alpha),
                      format_double(s_lhs), format_double(s_det),
                      format_double(s_gap), s_gap <= tol ? "pass" : "FAIL"});
    }
  }
  rep.write_csv("identity.csv",
                {"domain", "model", "alpha", "enumerated", "determinant",
                 "gap", "status"},
                rows);
  rep.write_manifest();
  return ok ? 0 : 1;
}

int cmd_strip_check(const CommonOpts& co) {
  Cfg kv(co);
  const int height = int(kv.get_int("height", 40));
  const int width_factor = int(kv.get_int("width_factor", 5));
  const auto ys = parse_double_list(
      kv.get_string("y_list", "0.5235987755982988,0.7853981633974483,"
                              "1.0471975511965976"));
  const int samples = int(kv.get_int("samples", 10000));
  const double tol_odd = kv.get_double("tol_odd", 0.03);
  const double tol_count = kv.get_double("tol_count", 0.05);
  kv.finish();

  RunReport rep = make_report(co, "strip-check", kv);
  rep.add_param("height", std::to_string(height));
  rep.add_param("samples", std::to_string(samples));

  bool ok = true;
  std::vector<std::vector<std::string>> rows;
  for (double y : ys) {
    const SymmetricDomain dom =
        strip_domain(height, width_factor * height, 0.5, y);
    const auto ws = sample_windings(dom, co.seed, samples, co.threads);
    const ArcMoments est = estimate_moments(ws);
    const AleTargets ale = ale_targets(y);
    const double gap_o = est.odd.mean - ale.odd;
    const double gap_n = est.count.mean - ale.count;
    const double z_o = gap_o / std::max(est.odd.se, 1e-300);
    const double z_n = gap_n / std::max(est.count.se, 1e-300);
    const bool pass =
        std::abs(gap_o) <= std::max(tol_odd, 5.0 * est.odd.se) &&
        std::abs(gap_n) <= std::max(tol_count, 5.0 * est.count.se);
    ok = ok && pass;
    rows.push_back({format_double(y), format_double(est.odd.mean),
                    format_double(est.odd.se), format_double(ale.odd),
                    format_double(z_o), format_double(est.count.mean),
                    format_double(est.count.se), format_double(ale.count),
                    format_double(z_n), pass ? "pass" : "FAIL"});
  }
  rep.write_csv("strip_check.csv",
                {"y", "odd_mc", "odd_se", "odd_closed", "odd_z", "count_mc",
                 "count_se", "count_closed", "count_z", "status"},
                rows);
  rep.write_manifest();
  return ok ? 0 : 1;
}

int cmd_cylinder(const CommonOpts& co) {
  Cfg kv(co);
  const int n = int(kv.get_int("n", 4));
  const int m = int(kv.get_int("m", 4));
  const auto ys = parse_double_list(kv.get_string("y_list", "1.1,1.25,1.5,2,3"));
  const bool brute = kv.get_bool("brute", 2 * n * m <= 64);
  const auto cap = std::size_t(kv.get_int("cap", 4000000));
  const double tol = kv.get_double("tol", 1e-9);
  kv.finish();

  RunReport rep = make_report(co, "cylinder", kv);
  rep.add_param("n", std::to_string(n));
  rep.add_param("m", std::to_string(m));

  const CylinderModel cm = build_cylinder_model(n, m);
  const double q = std::exp(-kPi * double(n) / double(m));

  std::vector<double> hist;
  if (brute) hist = glued_winding_histogram(n, m, cap);

  bool ok = std::abs(cylinder_limit_gf(q, 1.0) - 1.0) <= 1e-12;
  std::vector<std::vector<std::string>> rows;
  for (double big_y : ys) {
    const double finite = cylinder_gf(cm, big_y);
    const double limit = cylinder_limit_gf(q, big_y);
    std::string brute_s = "-", gap_s = "-";
    if (brute) {
      double bg = 0.0, pw = 1.0;
      for (double p : hist) {
        bg += p * pw;
        pw *= big_y * big_y;
      }
      const double gap = std::abs(finite - bg);
      ok = ok && gap <= tol;
      brute_s = format_double(bg);
      gap_s = format_double(gap);
    }
    rows.push_back({std::to_string(n), std::to_string(m), format_double(big_y),
                    format_double(finite), brute_s, gap_s,
                    format_double(limit),
                    format_double(std::abs(finite - limit))});
  }
  rep.write_csv("cylinder.csv",
                {"n", "m", "Y", "pfaffian_gf", "brute_gf", "gap", "limit_gf",
                 "limit_gap"},
                rows);

  const auto dist = cylinder_distribution(cm);
  const auto limit_dist = cylinder_limit_distribution(q);
  std::vector<std::vector<std::string>> drows;
  const std::size_t kmax = std::max(dist.size(), limit_dist.size());
  for (std::size_t k = 0; k < kmax; ++k) {
    drows.push_back(
        {std::to_string(k), k < dist.size() ? format_double(dist[k]) : "0",
         brute && k < hist.size() ? format_double(hist[k]) : "-",
         k < limit_dist.size() ? format_double(limit_dist[k]) : "0"});
  }
  rep.write_csv("distribution.csv", {"pairs", "pfaffian", "brute", "limit"},
                drows);
  rep.write_manifest();
  return ok ? 0 : 1;
}

int cmd_render(const CommonOpts& co) {
  Cfg kv(co);
  const int height = int(kv.get_int("height", 12));
  const int width = int(kv.get_int("width", 20));
  const double y = kv.get_double("y", kPi / 4.0);
  kv.finish();

  RunReport rep = make_report(co, "render", kv);
  rep.add_param("height", std::to_string(height));
  rep.add_param("width", std::to_string(width));

  const SymmetricDomain dom = strip_domain(height, width, 0.5, y);
  const GridPoint face = dom.marked_face();

  std::mt19937_64 rng = substream(co.seed, 0);
  const Matching full = sample_full_matching(dom, rng);
  const FoldedPair fp = fold_matching(full);
  const auto comps = superimpose(fp.m1, fp.m2);

  // Arcs colored by winding orientation around the marked face: red for
  // positive, green for negative, amber for non-winding.
  const RayAnchor ray = ray_from_face(face);
  std::vector<std::string> colors(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].kind != Component::Kind::arc) continue;
    const int w = net_ray_crossings(comps[i].vertices, ray);
    colors[i] = w > 0 ? "#cc3322" : (w < 0 ? "#228855" : "#dd9922");
  }

  const BipartiteGraph g = dom.upper_closed_graph();
  const Zipper z = build_zipper(g, face);
  rep.write_text("superposition.svg",
                 render_superposition_svg(g, comps, &z.path, {}, &colors));
  rep.write_manifest();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Folded and shifted double-dimer arc statistics"};
  app.require_subcommand(1);

  CommonOpts co;
  int (*runner)(const CommonOpts&) = nullptr;
  const std::pair<const char*, int (*)(const CommonOpts&)> commands[] = {
      {"verify-kenyon", &cmd_verify_kenyon},
      {"moments", &cmd_moments},
      {"trace", &cmd_trace},
      {"identity", &cmd_identity},
      {"strip-check", &cmd_strip_check},
      {"cylinder", &cmd_cylinder},
      {"render", &cmd_render}};
  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    add_common(sub, &co);
    sub->callback([&runner, fn] { runner = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return runner(co);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const dimerarc::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
