#include "hwire/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace hwire {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RatPoint = std::vector<Rational>;

Rational rational_from_double(double v) {
  if (!std::isfinite(v))
    throw ValidationError("coordinates must be finite");
  int exp = 0;
  double mant = std::frexp(v, &exp);
  auto mi = static_cast<std::int64_t>(std::ldexp(mant, 53));  // exact
  int e2 = exp - 53;
  BigInt num = mi;
  if (e2 >= 0) return Rational(num << e2);
  return Rational(num, BigInt(1) << (-e2));
}

RatPoint promote(const std::vector<double>& p) {
  RatPoint out;
  out.reserve(p.size());
  for (double v : p) out.push_back(rational_from_double(v));
  return out;
}

BigInt rat_floor(const Rational& r) {
  BigInt n = numerator(r), d = denominator(r);
  BigInt q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

BigInt rat_ceil(const Rational& r) {
  BigInt n = numerator(r), d = denominator(r);
  BigInt q = n / d;
  if (n > 0 && q * d != n) ++q;
  return q;
}

std::int64_t to_i64(const BigInt& v) {
  if (v < std::numeric_limits<std::int64_t>::min() ||
      v > std::numeric_limits<std::int64_t>::max())
    throw OverflowError("lattice coordinate outside 64-bit range");
  return static_cast<std::int64_t>(v);
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

// All lattice cubes containing the point: per axis {v_i - 1, v_i} when v_i
// is an integer, {floor(v_i)} otherwise.
void add_point_cubes(const RatPoint& v, std::set<LatticePoint>& out) {
  const std::size_t d = v.size();
  std::vector<std::vector<std::int64_t>> cands(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::int64_t f = to_i64(rat_floor(v[i]));
    if (is_integer(v[i]))
      cands[i] = {f - 1, f};
    else
      cands[i] = {f};
  }
  LatticePoint cur(d, 0);
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) cur[i] = cands[i][idx[i]];
    out.insert(cur);
    std::size_t axis = d;
    while (axis > 0) {
      --axis;
      if (++idx[axis] < cands[axis].size()) break;
      idx[axis] = 0;
      if (axis == 0) return;
    }
  }
}

RatPoint segment_point(const RatPoint& p, const RatPoint& q, const Rational& t) {
  RatPoint out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    out[i] = p[i] + t * (q[i] - p[i]);
  return out;
}

// Closed cubes meeting a closed segment: the cube set is constant between
// consecutive integer-plane crossings, so sampling all crossings plus the
// interval midpoints is exhaustive.
void cubes_on_segment(const RatPoint& p, const RatPoint& q,
                      std::set<LatticePoint>& out) {
  const std::size_t d = p.size();
  std::set<Rational> ts{Rational(0), Rational(1)};
  for (std::size_t i = 0; i < d; ++i) {
    Rational di = q[i] - p[i];
    if (di == 0) continue;
    Rational lo = std::min(p[i], q[i]), hi = std::max(p[i], q[i]);
    for (BigInt m = rat_ceil(lo); m <= rat_floor(hi); ++m) {
      Rational t = (Rational(m) - p[i]) / di;
      ts.insert(t);
    }
  }
  std::vector<Rational> sorted(ts.begin(), ts.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    add_point_cubes(segment_point(p, q, sorted[i]), out);
    if (i + 1 < sorted.size())
      add_point_cubes(
          segment_point(p, q, (sorted[i] + sorted[i + 1]) / 2), out);
  }
}

std::vector<RatPoint> promote_polyline(const Polyline& poly) {
  if (poly.points.size() < 1)
    throw ValidationError("polyline needs at least one point");
  std::size_t d = poly.points[0].size();
  if (d < 1) throw ValidationError("polyline points need dimension >= 1");
  std::vector<RatPoint> out;
  for (const auto& p : poly.points) {
    if (p.size() != d)
      throw ValidationError("polyline points have mixed dimensions");
    out.push_back(promote(p));
  }
  return out;
}

std::set<LatticePoint> cube_set(const std::vector<RatPoint>& pts) {
  std::set<LatticePoint> cubes;
  if (pts.size() == 1) {
    add_point_cubes(pts[0], cubes);
  } else {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      cubes_on_segment(pts[i], pts[i + 1], cubes);
  }
  return cubes;
}

LatticePoint floor_point(const RatPoint& p) {
  LatticePoint out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = to_i64(rat_floor(p[i]));
  return out;
}

// --- exact squared distances -------------------------------------------

Rational sq_norm(const RatPoint& a, const RatPoint& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

Rational dot(const RatPoint& a, const RatPoint& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatPoint minus(const RatPoint& a, const RatPoint& b) {
  RatPoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Rational sq_dist_point_segment(const RatPoint& p, const RatPoint& a,
                               const RatPoint& b) {
  RatPoint d = minus(b, a);
  Rational dd = dot(d, d);
  if (dd == 0) return sq_norm(p, a);
  Rational t = dot(minus(p, a), d) / dd;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return sq_norm(p, segment_point(a, b, t));
}

Rational sq_dist_segment_segment(const RatPoint& a, const RatPoint& b,
                                 const RatPoint& c, const RatPoint& d) {
  Rational best = sq_dist_point_segment(a, c, d);
  best = std::min(best, sq_dist_point_segment(b, c, d));
  best = std::min(best, sq_dist_point_segment(c, a, b));
  best = std::min(best, sq_dist_point_segment(d, a, b));
  // Interior critical point of the quadratic, when the segments are skew.
  RatPoint u = minus(b, a), v = minus(d, c), w = minus(c, a);
  Rational uu = dot(u, u), vv = dot(v, v), uv = dot(u, v);
  Rational den = uu * vv - uv * uv;
  if (den != 0) {
    Rational s = (dot(w, u) * vv - dot(w, v) * uv) / den;
    Rational t = (dot(w, u) * uv - dot(w, v) * uu) / den;
    if (s >= 0 && s <= 1 && t >= 0 && t <= 1)
      best = std::min(best,
                      sq_norm(segment_point(a, b, s), segment_point(c, d, t)));
  }
  return best;
}

Rational sq_dist_point_polyline(const RatPoint& p,
                                const std::vector<RatPoint>& line) {
  if (line.size() == 1) return sq_norm(p, line[0]);
  Rational best = sq_dist_point_segment(p, line[0], line[1]);
  for (std::size_t i = 1; i + 1 < line.size(); ++i)
    best = std::min(best, sq_dist_point_segment(p, line[i], line[i + 1]));
  return best;
}

Rational sq_dist_polyline_polyline(const std::vector<RatPoint>& l1,
                                   const std::vector<RatPoint>& l2) {
  Rational best;
  bool first = true;
  for (std::size_t i = 0; i + 1 < l1.size() || (l1.size() == 1 && i == 0); ++i)
    for (std::size_t j = 0; j + 1 < l2.size() || (l2.size() == 1 && j == 0);
         ++j) {
      const RatPoint& a = l1[i];
      const RatPoint& b = l1[std::min(i + 1, l1.size() - 1)];
      const RatPoint& c = l2[j];
      const RatPoint& e = l2[std::min(j + 1, l2.size() - 1)];
      Rational v = sq_dist_segment_segment(a, b, c, e);
      if (first || v < best) {
        best = v;
        first = false;
      }
    }
  return best;
}

LatticePathResult lattice_path_impl(const std::vector<RatPoint>& pts) {
  const std::size_t d = pts[0].size();
  std::set<LatticePoint> cubes = cube_set(pts);
  LatticePoint start = floor_point(pts.front());
  LatticePoint goal = floor_point(pts.back());
  if (!cubes.count(start) || !cubes.count(goal))
    throw Error("lattice_path internal error: end cube missing from Q");

  // BFS over the cube graph; neighbors enumerated in lexicographic offset
  // order for reproducibility.
  std::map<LatticePoint, LatticePoint> parent;
  std::map<LatticePoint, int> depth;
  std::vector<LatticePoint> frontier{start};
  depth[start] = 0;
  bool found = (start == goal);
  while (!found && !frontier.empty()) {
    std::vector<LatticePoint> next;
    for (const LatticePoint& cur : frontier) {
      LatticePoint nb(d, 0);
      std::vector<int> off(d, -1);
      for (;;) {
        bool zero = true;
        for (std::size_t i = 0; i < d; ++i) {
          nb[i] = cur[i] + off[i];
          if (off[i] != 0) zero = false;
        }
        if (!zero && cubes.count(nb) && !depth.count(nb)) {
          depth[nb] = depth[cur] + 1;
          parent[nb] = cur;
          next.push_back(nb);
          if (nb == goal) {
            found = true;
          }
        }
        std::size_t axis = d;
        bool done = false;
        while (axis > 0) {
          --axis;
          if (++off[axis] <= 1) break;
          off[axis] = -1;
          if (axis == 0) done = true;
        }
        if (done) break;
      }
      if (found) break;
    }
    frontier = std::move(next);
  }
  if (!found)
    throw Error(
        "lattice_path internal error: cube graph disconnected between the "
        "end cubes");

  std::vector<LatticePoint> cube_path{goal};
  while (cube_path.back() != start) cube_path.push_back(parent[cube_path.back()]);
  std::reverse(cube_path.begin(), cube_path.end());

  // Realize the cube path along 1-skeletons: walk to the lexicographically
  // lowest shared corner of each consecutive pair, axes in increasing order.
  LatticePathResult res;
  res.cube_count = cubes.size();
  res.bfs_depth = depth[goal];
  std::vector<LatticePoint>& path = res.path;
  LatticePoint cur = start;
  path.push_back(cur);
  auto walk_to = [&](const LatticePoint& corner) {
    for (std::size_t i = 0; i < d; ++i) {
      while (cur[i] != corner[i]) {
        cur[i] += corner[i] > cur[i] ? 1 : -1;
        path.push_back(cur);
      }
    }
  };
  for (std::size_t s = 0; s + 1 < cube_path.size(); ++s) {
    LatticePoint shared(d, 0);
    for (std::size_t i = 0; i < d; ++i)
      shared[i] = std::max(cube_path[s][i], cube_path[s + 1][i]);
    walk_to(shared);
  }
  walk_to(goal);

  // Tube bound and endpoint law, verified on every run.
  if (path.front() != start || path.back() != goal)
    throw Error("lattice_path internal error: endpoint law violated");
  if (res.bfs_depth > static_cast<int>(res.cube_count))
    throw Error("lattice_path internal error: BFS depth exceeds |Q|");
  const Rational bound(static_cast<int>(d));
  for (const LatticePoint& w : path) {
    RatPoint wr(d);
    for (std::size_t i = 0; i < d; ++i) wr[i] = Rational(w[i]);
    if (sq_dist_point_polyline(wr, pts) > bound)
      throw Error("lattice_path internal error: tube bound violated at " +
                  [&] {
                    std::string s2 = "(";
                    for (std::size_t i = 0; i < d; ++i)
                      s2 += (i ? "," : "") + std::to_string(w[i]);
                    return s2 + ")";
                  }());
  }
  return res;
}

GroupElement lattice_to_element(const LatticePoint& p) {
  GroupElement g;
  g.a = p.size() > 0 ? p[0] : 0;
  g.b = p.size() > 1 ? p[1] : 0;
  g.c = p.size() > 2 ? p[2] : 0;
  return g;
}

std::int64_t thickness_scale_num(int dim) {
  // Numerator of the smallest multiple of 1/1024 whose square is >= 9*dim.
  BigInt target = BigInt(9 * dim) * 1024 * 1024;
  auto n = static_cast<std::int64_t>(
      std::ceil(3.0 * std::sqrt(static_cast<double>(dim)) * 1024.0));
  BigInt num = n;
  while (num * num < target) ++num;
  while ((num - 1) * (num - 1) >= target) --num;
  return to_i64(num);
}

}  // namespace

bool CubeGraph::contains(const LatticePoint& q) const {
  return std::binary_search(cubes.begin(), cubes.end(), q);
}

CubeGraph cubes_touched(const Polyline& poly) {
  std::vector<RatPoint> pts = promote_polyline(poly);
  std::set<LatticePoint> cubes = cube_set(pts);
  CubeGraph g;
  g.dim = static_cast<int>(pts[0].size());
  g.cubes.assign(cubes.begin(), cubes.end());
  return g;
}

LatticePathResult lattice_path(const Polyline& poly) {
  return lattice_path_impl(promote_polyline(poly));
}

RdEmbedding rd_embedding_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("drawing JSON parse error: ") +
                          ex.what());
  }
  try {
    RdEmbedding e;
    e.dim = j.at("d").get<int>();
    for (const auto& v : j.at("vertices"))
      e.vertices.push_back(v.get<std::vector<double>>());
    for (const auto& ed : j.at("edges")) {
      RdEmbedding::Edge edge;
      edge.u = ed.at("u").get<int>();
      edge.v = ed.at("v").get<int>();
      for (const auto& p : ed.at("points"))
        edge.points.push_back(p.get<std::vector<double>>());
      e.edges.push_back(std::move(edge));
    }
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("drawing JSON: ") + ex.what());
  }
}

std::string rd_embedding_to_json(const RdEmbedding& e) {
  nlohmann::ordered_json j;
  j["d"] = e.dim;
  j["vertices"] = e.vertices;
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& ed : e.edges) {
    nlohmann::ordered_json je;
    je["u"] = ed.u;
    je["v"] = ed.v;
    je["points"] = ed.points;
    j["edges"].push_back(std::move(je));
  }
  return j.dump() + "\n";
}

ConvertResult convert_embedding(const RdEmbedding& drawing) {
  const int d = drawing.dim;
  if (d < 2 || d > 3)
    throw ValidationError(
        "convert_embedding supports dimensions 2 and 3 (got " +
        std::to_string(d) + ")");
  const int n = static_cast<int>(drawing.vertices.size());

  std::vector<RatPoint> verts;
  for (const auto& v : drawing.vertices) {
    if (static_cast<int>(v.size()) != d)
      throw ValidationError("vertex coordinate dimension mismatch");
    verts.push_back(promote(v));
  }

  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<RatPoint>> lines;
  for (const auto& e : drawing.edges) {
    pairs.emplace_back(e.u, e.v);
    if (e.points.size() < 2)
      throw ValidationError("edge polyline needs at least two points");
    std::vector<RatPoint> line;
    for (const auto& p : e.points) {
      if (static_cast<int>(p.size()) != d)
        throw ValidationError("edge polyline dimension mismatch");
      line.push_back(promote(p));
    }
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw ValidationError("edge endpoints out of range");
    // Normalize so the polyline runs u -> v.
    if (line.front() == verts[static_cast<std::size_t>(e.v)] &&
        line.back() == verts[static_cast<std::size_t>(e.u)])
      std::reverse(line.begin(), line.end());
    if (!(line.front() == verts[static_cast<std::size_t>(e.u)] &&
          line.back() == verts[static_cast<std::size_t>(e.v)]))
      throw ValidationError("edge " + std::to_string(e.u) + "-" +
                            std::to_string(e.v) +
                            " polyline does not join its vertices");
    lines.push_back(std::move(line));
  }
  FiniteGraph graph = FiniteGraph::from_edge_list(n, pairs);

  // Exact 1-thickness precondition over all non-adjacent feature pairs.
  const Rational one(1);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (sq_norm(verts[static_cast<std::size_t>(u)],
                  verts[static_cast<std::size_t>(v)]) < one)
        throw ValidationError("input not 1-thick: vertices " +
                              std::to_string(u) + " and " + std::to_string(v) +
                              " are closer than 1");
  for (int e = 0; e < graph.edge_count(); ++e)
    for (int v = 0; v < n; ++v) {
      if (graph.edge_contains(e, v)) continue;
      if (sq_dist_point_polyline(verts[static_cast<std::size_t>(v)],
                                 lines[static_cast<std::size_t>(e)]) < one)
        throw ValidationError("input not 1-thick: vertex " +
                              std::to_string(v) + " and edge " +
                              std::to_string(e) + " are closer than 1");
    }
  for (int e = 0; e < graph.edge_count(); ++e)
    for (int t = e + 1; t < graph.edge_count(); ++t) {
      if (graph.edges_adjacent(e, t)) continue;
      if (sq_dist_polyline_polyline(lines[static_cast<std::size_t>(e)],
                                    lines[static_cast<std::size_t>(t)]) < one)
        throw ValidationError("input not 1-thick: edges " + std::to_string(e) +
                              " and " + std::to_string(t) +
                              " are closer than 1");
    }

  // Scale and convert.
  const std::int64_t scale_num = thickness_scale_num(d);
  const Rational scale(scale_num, 1024);
  auto scale_point = [&](const RatPoint& p) {
    RatPoint out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] * scale;
    return out;
  };

  ConvertResult res{CombinatorialWiring{standard_lattice_genset(d), graph,
                                        {}, {}},
                    {}, {}, scale_num, 1024};

  for (const RatPoint& v : verts)
    res.wiring.vertex_map.push_back(
        lattice_to_element(floor_point(scale_point(v))));

  for (std::size_t e = 0; e < lines.size(); ++e) {
    std::vector<RatPoint> scaled;
    scaled.reserve(lines[e].size());
    for (const RatPoint& p : lines[e]) scaled.push_back(scale_point(p));
    LatticePathResult lp = lattice_path_impl(scaled);
    Walk road;
    road.start = lattice_to_element(lp.path.front());
    for (std::size_t i = 0; i + 1 < lp.path.size(); ++i) {
      const LatticePoint& a = lp.path[i];
      const LatticePoint& b = lp.path[i + 1];
      for (int axis = 0; axis < d; ++axis) {
        if (a[static_cast<std::size_t>(axis)] !=
            b[static_cast<std::size_t>(axis)]) {
          road.letters.push_back(GeneratorLabel{
              axis,
              b[static_cast<std::size_t>(axis)] >
                      a[static_cast<std::size_t>(axis)]
                  ? 1
                  : -1});
        }
      }
    }
    res.edge_paths.push_back(std::move(lp));
    res.wiring.roads.push_back(std::move(road));
  }

  res.report = verify(res.wiring);
  return res;
}

RetargetResult retarget_zd(const CombinatorialWiring& f,
                           const GeneratingSet& s, int radius_cap,
                           std::size_t element_cap) {
  const Group& grp = f.genset.group();
  if (grp.kind != GroupKind::lattice)
    throw ValidationError("retarget_zd expects a lattice wiring");
  if (!(f.genset == standard_lattice_genset(grp.dim)))
    throw ValidationError("retarget_zd expects the standard basis wiring");
  if (s.group() != grp)
    throw ValidationError("retarget_zd: generating set dimension mismatch");

  const int d = grp.dim;

  // Canonical shortest S-words for each basis vector, via a growing ball.
  std::vector<Word> basis_words(static_cast<std::size_t>(d));
  std::vector<int> basis_norms(static_cast<std::size_t>(d), -1);
  for (int radius = 1;;) {
    Ball ball(s, radius, element_cap);
    bool all = true;
    for (int i = 0; i < d; ++i) {
      GroupElement ei = f.genset.element(static_cast<std::size_t>(i));
      if (basis_norms[static_cast<std::size_t>(i)] < 0 && ball.contains(ei)) {
        basis_norms[static_cast<std::size_t>(i)] = *ball.distance(ei);
        basis_words[static_cast<std::size_t>(i)] = ball.geodesic_word(ei);
      }
      all = all && basis_norms[static_cast<std::size_t>(i)] >= 0;
    }
    if (all || radius >= radius_cap) break;
    radius = std::min(radius * 2, radius_cap);
  }
  for (int i = 0; i < d; ++i)
    if (basis_norms[static_cast<std::size_t>(i)] < 0)
      throw ValidationError("generating set does not reach basis vector e" +
                            std::to_string(i + 1) + " within radius " +
                            std::to_string(radius_cap) +
                            " (it may not generate Z^d)");

  // l1 norms of the generators bound ||.||_1 by M ||.||_S; basis norms bound
  // the other direction.
  int max_gen_l1 = 0;
  for (const GroupElement& e : s.elements()) {
    std::int64_t l1 = std::abs(e.a) + std::abs(e.b) + std::abs(e.c);
    max_gen_l1 = std::max<int>(max_gen_l1, static_cast<int>(l1));
  }
  int M = std::max(max_gen_l1,
                   *std::max_element(basis_norms.begin(), basis_norms.end()));
  int m = 0;
  for (int i = 0; i < d; ++i)
    m = std::max(m, M * basis_norms[static_cast<std::size_t>(i)]);
  m += 1;

  RetargetResult res{CombinatorialWiring{s, f.graph, {}, {}}, {}, M, m};
  auto scale_elem = [&](const GroupElement& p) {
    return GroupElement{checked_mul(m, p.a, "a"), checked_mul(m, p.b, "b"),
                        checked_mul(m, p.c, "c")};
  };
  for (const GroupElement& p : f.vertex_map)
    res.wiring.vertex_map.push_back(scale_elem(p));
  for (const Walk& road : f.roads) {
    Walk nroad;
    nroad.start = scale_elem(road.start);
    for (const GeneratorLabel& l : road.letters) {
      const Word& w = basis_words[static_cast<std::size_t>(l.index)];
      Word block = l.sign >= 0 ? w : inverse_word(w);
      for (int rep = 0; rep < m; ++rep)
        nroad.letters.insert(nroad.letters.end(), block.begin(), block.end());
    }
    res.wiring.roads.push_back(std::move(nroad));
  }
  res.report = verify(res.wiring);
  return res;
}

}  // namespace hwire
