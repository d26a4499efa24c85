#include "harmonia/zigzag.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "harmonia/rng.hpp"

namespace harmonia {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double side_length(const MoebiusStructure& m, const PointPair& axis,
                   const HmPoint& v0, const HmPoint& v1) {
  const double eps = m.tol().eps_angle;
  return line_distance_on_axis(m, axis, v0.other_axis(axis, eps),
                               v1.other_axis(axis, eps));
}

ZZPath build_path(const MoebiusStructure& m, std::vector<HmPoint> vertices,
                  std::vector<PointPair> axes) {
  ZZPath p{std::move(vertices), std::move(axes), {}};
  p.side_lengths.resize(p.side_axes.size());
  for (size_t i = 0; i < p.side_axes.size(); ++i)
    p.side_lengths[i] = side_length(m, p.side_axes[i], p.vertices[i],
                                    p.vertices[i + 1]);
  return p;
}

}  // namespace

double ZZPath::length() const {
  double total = 0.0;
  for (double l : side_lengths) total += l;
  return total;
}

bool ZZPath::is_closed(double eps_angle) const {
  return !side_axes.empty() &&
         vertices.front().approx_eq(vertices.back(), eps_angle);
}

nlohmann::ordered_json ZZPath::to_json() const {
  nlohmann::ordered_json j;
  auto pair_json = [](const PointPair& p) {
    return nlohmann::ordered_json::array({p.lo().angle(), p.hi().angle()});
  };
  auto verts = nlohmann::ordered_json::array();
  for (const auto& v : vertices)
    verts.push_back({pair_json(v.first()), pair_json(v.second())});
  auto axes = nlohmann::ordered_json::array();
  for (const auto& a : side_axes) axes.push_back(pair_json(a));
  j["vertices"] = std::move(verts);
  j["side_axes"] = std::move(axes);
  j["side_lengths"] = side_lengths;
  j["length"] = length();
  return j;
}

PathDiagnostics validate(const MoebiusStructure& m, const ZZPath& path) {
  const double eps = m.tol().eps_angle;
  if (path.vertices.size() != path.side_axes.size() + 1 ||
      path.side_lengths.size() != path.side_axes.size())
    return {false, "inconsistent vertex/side counts", -1};
  for (size_t i = 0; i < path.vertices.size(); ++i) {
    const HmPoint& v = path.vertices[i];
    try {
      if (!pairs_separate(v.first(), v.second()))
        return {false, "vertex axes do not separate", static_cast<int>(i)};
      if (harmonic_residual(m, v.first(), v.second()) > m.tol().eps_harm)
        return {false, "vertex is not harmonic", static_cast<int>(i)};
    } catch (const std::exception&) {
      return {false, "degenerate vertex", static_cast<int>(i)};
    }
  }
  for (size_t i = 0; i < path.side_axes.size(); ++i) {
    const PointPair& axis = path.side_axes[i];
    if (!path.vertices[i].has_axis(axis, eps) ||
        !path.vertices[i + 1].has_axis(axis, eps))
      return {false, "side axis missing from its vertices", static_cast<int>(i)};
    if (i + 1 < path.side_axes.size() &&
        axis.approx_eq(path.side_axes[i + 1], eps))
      return {false, "consecutive sides share an axis (non-alternating)",
              static_cast<int>(i)};
    const double len = side_length(m, axis, path.vertices[i], path.vertices[i + 1]);
    if (std::fabs(len - path.side_lengths[i]) > m.tol().eps_cr)
      return {false, "cached side length mismatch", static_cast<int>(i)};
  }
  return {};
}

ZZPath make_empty_path(const HarmonicPair& q) {
  return {{HmPoint(q)}, {}, {}};
}

ZZPath make_segment_path(const MoebiusStructure& m, const HarmonicPair& q,
                         const HarmonicPair& q2) {
  const double eps = m.tol().eps_angle;
  const HmPoint h1(q), h2(q2);
  if (h1.approx_eq(h2, eps)) return make_empty_path(q);
  for (const PointPair& axis : {q.left_axis(), q.right_axis()}) {
    if (h2.has_axis(axis, eps))
      return build_path(m, {h1, h2}, {axis});
  }
  throw std::invalid_argument("not collinear");
}

ZZPath connect_five(const MoebiusStructure& m, const HarmonicPair& q,
                    const HarmonicPair& q2, const PointPair& a2) {
  // Zero-length sides are retained: they keep the sequence alternating when
  // the construction degenerates (shared axes make the two perpendiculars
  // coincide) and contribute nothing to the length.
  const PointPair& a = q.left_axis();
  const PointPair& a_prime = q2.left_axis();
  const PointPair bt = common_perpendicular(m, a, a2);
  const PointPair bt_prime = a_prime == a ? bt : common_perpendicular(m, a_prime, a2);
  std::vector<HmPoint> verts = {HmPoint(q),          HmPoint(a, bt),
                                HmPoint(bt, a2),     HmPoint(a2, bt_prime),
                                HmPoint(bt_prime, a_prime), HmPoint(q2)};
  std::vector<PointPair> axes = {a, bt, a2, bt_prime, a_prime};
  return build_path(m, std::move(verts), std::move(axes));
}

ZZPath concatenate(const MoebiusStructure& m, const ZZPath& s1, const ZZPath& s2) {
  const double eps = m.tol().eps_angle;
  if (s1.vertices.empty() || s2.vertices.empty())
    throw std::invalid_argument("empty path container");
  if (!s1.vertices.back().approx_eq(s2.vertices.front(), eps))
    throw std::invalid_argument("paths do not share an endpoint");
  if (s1.side_axes.empty()) return s2;
  if (s2.side_axes.empty()) return s1;
  std::vector<HmPoint> verts = s1.vertices;
  std::vector<PointPair> axes = s1.side_axes;
  if (axes.back().approx_eq(s2.side_axes.front(), eps)) {
    // junction sides on one line merge into the single spanning segment
    verts.back() = s2.vertices[1];
    verts.insert(verts.end(), s2.vertices.begin() + 2, s2.vertices.end());
    axes.insert(axes.end(), s2.side_axes.begin() + 1, s2.side_axes.end());
  } else {
    verts.insert(verts.end(), s2.vertices.begin() + 1, s2.vertices.end());
    axes.insert(axes.end(), s2.side_axes.begin(), s2.side_axes.end());
  }
  return build_path(m, std::move(verts), std::move(axes));
}

ZZPath make_closed_path(const MoebiusStructure& m, const HarmonicPair& q,
                        const HarmonicPair& q2, const PointPair& a2) {
  // Connector through the non-shared axes: with the shared axis as the left
  // axis the two perpendiculars coincide and the closed path degenerates, so
  // the detour is built from the j-representatives and closed along the
  // shared axis.
  const ZZPath detour = connect_five(m, involution_j(q), involution_j(q2), a2);
  const ZZPath back = make_segment_path(m, q2, q);
  if (back.sides() == 0) throw std::invalid_argument("coincident endpoints");
  return concatenate(m, detour, back);
}

ClosedPathReport closed_path_check(const MoebiusStructure& m, const ZZPath& path) {
  const double eps = m.tol().eps_angle;
  if (!path.is_closed(eps)) throw std::invalid_argument("path is not closed");
  const PathDiagnostics diag = validate(m, path);
  if (!diag.valid) throw std::invalid_argument("invalid closed path: " + diag.message);
  if (path.side_axes.size() >= 2 &&
      path.side_axes.front().approx_eq(path.side_axes.back(), eps))
    throw std::invalid_argument(
        "consecutive sides share an axis (non-alternating)");
  ClosedPathReport rep;
  const double total = path.length();
  rep.side_slacks.resize(path.side_lengths.size());
  for (size_t i = 0; i < path.side_lengths.size(); ++i) {
    rep.side_slacks[i] = total - 2.0 * path.side_lengths[i];
    if (i == 0 || rep.side_slacks[i] < rep.min_slack) {
      rep.min_slack = rep.side_slacks[i];
      rep.worst_side = static_cast<int>(i);
    }
  }
  return rep;
}

namespace {

// Shared search driver behind delta_upper and verify_geodesic.
struct DeltaSearch {
  const MoebiusStructure& m;
  const HarmonicPair& q;
  const HarmonicPair& q2;
  long long budget;
  std::uint64_t seed;
  bool exclude_direct;

  DeltaSearch(const MoebiusStructure& m_, const HarmonicPair& q_,
              const HarmonicPair& q2_, long long budget_, std::uint64_t seed_,
              bool exclude_direct_)
      : m(m_), q(q_), q2(q2_), budget(budget_), seed(seed_),
        exclude_direct(exclude_direct_) {}

  long long consumed = 0;
  double best_len = kInf;
  ZZPath best;
  bool have_best = false;
  std::vector<std::pair<long long, double>> trace;

  bool exhausted() const { return consumed >= budget; }

  void offer(ZZPath path) {
    // A one-side candidate is the direct segment regardless of how the
    // search produced it.
    if (exclude_direct && path.sides() <= 1) return;
    const double len = path.length();
    if (len >= best_len) return;
    if (!validate(m, path).valid) return;
    best_len = len;
    best = std::move(path);
    have_best = true;
    trace.emplace_back(consumed, len);
  }

  // Constructs (and counts) one five-side candidate; +inf on failure.
  double try_five(const HarmonicPair& from, const HarmonicPair& to,
                  const PointPair& a2) {
    ++consumed;
    try {
      ZZPath p = connect_five(m, from, to, a2);
      const double len = p.length();
      offer(std::move(p));
      return len;
    } catch (const std::exception&) {
      return kInf;
    }
  }

  static std::vector<Arc> complementary_arcs(const PointPair& p1,
                                             const PointPair& p2) {
    std::vector<double> angs = {p1.lo().angle(), p1.hi().angle(), p2.lo().angle(),
                                p2.hi().angle()};
    std::sort(angs.begin(), angs.end());
    angs.erase(std::unique(angs.begin(), angs.end()), angs.end());
    std::vector<Arc> arcs;
    for (size_t i = 0; i < angs.size(); ++i) {
      const CirclePoint f{angs[i]}, t{angs[(i + 1) % angs.size()]};
      if (f != t) arcs.emplace_back(f, t);
    }
    return arcs;
  }

  // Nelder-Mead over the two angles of a2 inside one arc.
  void simplex_descent(const HarmonicPair& from, const HarmonicPair& to,
                       const Arc& arc, std::uint64_t restart_seed,
                       long long allotment) {
    if (allotment <= 0) return;
    const double len = arc.length();
    SampleRng rng(restart_seed);
    long long left = allotment;
    auto objective = [&](double o1, double o2) {
      if (!(o1 > 0.0 && o1 < len && o2 > 0.0 && o2 < len)) return kInf;
      if (std::fabs(o1 - o2) < 1e-9 * len) return kInf;
      if (left <= 0 || exhausted()) return kInf;
      --left;
      return try_five(from, to,
                      PointPair(advance(arc.from, o1), advance(arc.from, o2)));
    };
    struct Vertex {
      double x, y, f;
    };
    std::array<Vertex, 3> s;
    for (auto& v : s) {
      v.x = len * rng.uniform(0.05, 0.95);
      v.y = len * rng.uniform(0.05, 0.95);
      v.f = objective(v.x, v.y);
    }
    const double tol = m.tol().nm_diameter;
    while (left > 0 && !exhausted()) {
      std::sort(s.begin(), s.end(),
                [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      const double diam = std::max(
          {std::fabs(s[0].x - s[2].x), std::fabs(s[0].y - s[2].y),
           std::fabs(s[0].x - s[1].x), std::fabs(s[0].y - s[1].y)});
      if (diam < tol) break;
      const double cx = 0.5 * (s[0].x + s[1].x), cy = 0.5 * (s[0].y + s[1].y);
      Vertex refl{cx + (cx - s[2].x), cy + (cy - s[2].y), 0.0};
      refl.f = objective(refl.x, refl.y);
      if (refl.f < s[0].f) {
        Vertex exp{cx + 2.0 * (cx - s[2].x), cy + 2.0 * (cy - s[2].y), 0.0};
        exp.f = objective(exp.x, exp.y);
        s[2] = (exp.f < refl.f) ? exp : refl;
      } else if (refl.f < s[1].f) {
        s[2] = refl;
      } else {
        Vertex con{cx + 0.5 * (s[2].x - cx), cy + 0.5 * (s[2].y - cy), 0.0};
        con.f = objective(con.x, con.y);
        if (con.f < s[2].f) {
          s[2] = con;
        } else {
          for (int i = 1; i < 3; ++i) {
            s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
            s[i].y = s[0].y + 0.5 * (s[i].y - s[0].y);
            s[i].f = objective(s[i].x, s[i].y);
          }
        }
      }
    }
  }

  // One random-walk-and-connect candidate.
  void try_walk(std::uint64_t walk_seed) {
    ++consumed;
    SampleRng rng(walk_seed);
    const int k = 1 + static_cast<int>(rng.index(m.tol().walk_cap));
    try {
      std::vector<HmPoint> verts = {HmPoint(q)};
      std::vector<PointPair> axes_seq = {q.left_axis()};
      std::vector<PointPair> side_axes;
      for (int i = 0; i < k; ++i) {
        const PointPair& travel = axes_seq.back();
        CirclePoint z = rng.angle();
        while (travel.contains(z)) z = rng.angle();
        const PointPair next(z, reflection(m, travel, z));
        verts.emplace_back(travel, next);
        side_axes.push_back(travel);
        axes_seq.push_back(next);
      }
      const PointPair& dk = axes_seq.back();
      const PointPair& dk_prev = axes_seq[axes_seq.size() - 2];
      const double resid = harmonic_residual(m, dk, dk_prev);
      const HarmonicPair cur(HarmonicPair::unchecked_t{}, dk, dk_prev, resid);
      const auto arcs = complementary_arcs(dk, q2.left_axis());
      const size_t pick = rng.index(arcs.size());
      const Arc& arc = arcs[pick];
      const CirclePoint p1 = rng.angle_in(arc);
      CirclePoint p2 = rng.angle_in(arc);
      while (p2 == p1) p2 = rng.angle_in(arc);
      ZZPath walk = build_path(m, std::move(verts), std::move(side_axes));
      ZZPath tail = connect_five(m, cur, q2, PointPair(p1, p2));
      offer(concatenate(m, walk, tail));
    } catch (const std::exception&) {
    }
  }

  DeltaEstimate run(std::span<const ZZPath> extra) {
    DeltaEstimate est;
    est.seed = seed;
    if (HmPoint(q).approx_eq(HmPoint(q2), m.tol().eps_angle)) {
      est.upper = 0.0;
      est.witness = make_empty_path(q);
      return est;
    }
    if (!exclude_direct) {
      try {
        ++consumed;
        offer(make_segment_path(m, q, q2));
      } catch (const std::invalid_argument&) {
        --consumed;  // no shared axis: candidate does not exist
      }
    }
    for (const ZZPath& p : extra) offer(p);

    // Two connector families: through the designated left axes and through
    // the j-swapped representatives (for collinear endpoints the former
    // degenerates to out-and-back detours, the latter stays generic).
    const HarmonicPair qj = involution_j(q), q2j = involution_j(q2);
    const std::array<std::pair<const HarmonicPair*, const HarmonicPair*>, 2>
        families = {{{&q, &q2}, {&qj, &q2j}}};
    const int restarts = m.tol().nm_restarts;
    const long long family_budget = (budget * 3) / 4;
    for (size_t fi = 0; fi < families.size() && !exhausted(); ++fi) {
      const auto arcs = complementary_arcs(families[fi].first->left_axis(),
                                           families[fi].second->left_axis());
      if (arcs.empty()) continue;
      const long long share = std::max<long long>(
          1, family_budget / (static_cast<long long>(families.size()) *
                              static_cast<long long>(arcs.size()) * restarts));
      for (size_t ai = 0; ai < arcs.size() && !exhausted(); ++ai)
        for (int r = 0; r < restarts && !exhausted(); ++r)
          simplex_descent(*families[fi].first, *families[fi].second, arcs[ai],
                          derive_seed(seed, fi * 7919 + ai * 131 + r),
                          std::min<long long>(share, budget - consumed));
    }
    for (std::uint64_t w = 0; !exhausted(); ++w)
      try_walk(derive_seed(seed, (1ull << 20) | w));

    est.budget_consumed = consumed;
    est.trace = std::move(trace);
    if (!have_best)
      throw std::runtime_error("no zig-zag path found within budget");
    est.upper = best_len;
    est.witness = std::move(best);
    return est;
  }
};

}  // namespace

DeltaEstimate delta_upper(const MoebiusStructure& m, const HarmonicPair& q,
                          const HarmonicPair& q2, long long budget,
                          std::uint64_t seed, std::span<const ZZPath> extra) {
  if (budget < 1) throw std::invalid_argument("empty sample budget");
  DeltaSearch search(m, q, q2, budget, seed, /*exclude_direct=*/false);
  return search.run(extra);
}

GeodesicReport verify_geodesic(const MoebiusStructure& m, const Line& line,
                               const HarmonicPair& q, const HarmonicPair& q2,
                               long long budget, std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("empty sample budget");
  const double eps = m.tol().eps_angle;
  if (!q.left_axis().approx_eq(line.axis, eps) ||
      !q2.left_axis().approx_eq(line.axis, eps))
    throw std::invalid_argument("pair is not on the line");
  GeodesicReport rep;
  rep.segment_length =
      line_distance_on_axis(m, line.axis, q.right_axis(), q2.right_axis());
  DeltaSearch search(m, q, q2, budget, seed, /*exclude_direct=*/true);
  DeltaEstimate est = search.run({});
  rep.min_found = est.upper;
  rep.margin = est.upper - rep.segment_length;
  rep.paths_tried = est.budget_consumed;
  rep.best = std::move(est.witness);
  rep.trace = std::move(est.trace);
  return rep;
}

}  // namespace harmonia
