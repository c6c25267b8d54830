#include "hwire/wiring.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include <json.hpp>

namespace hwire {

namespace {

struct PointEdge {
  GroupElement pt;
  std::int32_t edge;
  friend bool operator<(const PointEdge& l, const PointEdge& r) {
    if (l.pt != r.pt) return l.pt < r.pt;
    return l.edge < r.edge;
  }
};

struct PointVertex {
  GroupElement pt;
  std::int32_t vertex;
  friend bool operator<(const PointVertex& l, const PointVertex& r) {
    if (l.pt != r.pt) return l.pt < r.pt;
    return l.vertex < r.vertex;
  }
};

bool road_letters_valid(const Walk& road, const GeneratingSet& s) {
  for (const GeneratorLabel& l : road.letters) {
    if (l.index < 0 || static_cast<std::size_t>(l.index) >= s.size())
      return false;
    if (l.sign != 1 && l.sign != -1) return false;
  }
  return true;
}

// Deduplicated points of each valid road, tagged with the edge id.
std::vector<PointEdge> collect_road_points(const CombinatorialWiring& f,
                                           const std::vector<bool>& valid) {
  std::vector<PointEdge> out;
  std::vector<GroupElement> scratch;
  for (std::size_t e = 0; e < f.roads.size(); ++e) {
    if (!valid[e]) continue;
    scratch.clear();
    scratch.reserve(f.roads[e].vertex_count());
    walk_visit(f.roads[e], f.genset,
               [&](const GroupElement& g) { scratch.push_back(g); });
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    for (const GroupElement& g : scratch)
      out.push_back({g, static_cast<std::int32_t>(e)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t isqrt_ceil(std::int64_t v) {
  if (v <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && (r - 1) * (r - 1) >= v) --r;
  while (r * r < v) ++r;
  return r;
}

std::int64_t abs64(std::int64_t v, const char* component) {
  return v < 0 ? checked_sub(0, v, component) : v;
}

// Norm proxy: bi-Lipschitz to the {x,y} word metric on the Heisenberg group,
// exactly the l1 norm on lattice groups.
std::int64_t proxy_norm(const Group& grp, const GroupElement& g) {
  std::int64_t ab =
      checked_add(abs64(g.a, "a"), abs64(g.b, "b"), "proxy norm");
  if (grp.kind == GroupKind::lattice)
    return checked_add(ab, abs64(g.c, "c"), "proxy norm");
  return checked_add(ab, isqrt_ceil(abs64(g.c, "c")), "proxy norm");
}

std::vector<GroupElement> unique_image(const CombinatorialWiring& f) {
  std::vector<GroupElement> pts(f.vertex_map.begin(), f.vertex_map.end());
  for (const Walk& road : f.roads)
    walk_visit(road, f.genset,
               [&](const GroupElement& g) { pts.push_back(g); });
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::int64_t exact_set_diameter(const std::vector<GroupElement>& image,
                                const GeneratingSet& s,
                                const MetricsLimits& limits) {
  if (image.size() <= 1) return 0;
  if (image.size() > limits.max_exact_image)
    throw ResourceError("image too large for exact diameter (" +
                            std::to_string(image.size()) + " > " +
                            std::to_string(limits.max_exact_image) + ")",
                        image.size());
  const Group& grp = s.group();
  std::vector<GroupElement> targets;
  targets.reserve(image.size() * (image.size() - 1) / 2);
  for (std::size_t i = 0; i < image.size(); ++i) {
    GroupElement vi = grp.inv(image[i]);
    for (std::size_t j = i + 1; j < image.size(); ++j)
      targets.push_back(grp.mul(vi, image[j]));
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  std::unordered_set<GroupElement, GroupElementHash> remaining(
      targets.begin(), targets.end());
  remaining.erase(grp.identity());

  // BFS from identity until every pairwise difference has a distance.
  std::unordered_set<GroupElement, GroupElementHash> seen{grp.identity()};
  std::vector<GroupElement> frontier{grp.identity()};
  std::int64_t dist = 0;
  while (!remaining.empty()) {
    std::vector<GroupElement> next;
    for (const GroupElement& cur : frontier) {
      for (std::size_t gi = 0; gi < s.size(); ++gi) {
        for (int sign : {+1, -1}) {
          GroupElement nxt = grp.mul(
              cur, s.letter_value({static_cast<std::int32_t>(gi), sign}));
          if (seen.insert(nxt).second) {
            if (seen.size() > limits.ball_cap)
              throw ResourceError("ball cap exceeded during exact diameter",
                                  seen.size());
            remaining.erase(nxt);
            next.push_back(nxt);
          }
        }
      }
    }
    if (next.empty())
      throw DomainError(
          "exact diameter: image spans elements the generating set cannot "
          "connect");
    frontier = std::move(next);
    ++dist;
  }
  return dist;
}

nlohmann::ordered_json element_to_json(const GroupElement& g, int dim) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  arr.push_back(g.a);
  if (dim >= 2) arr.push_back(g.b);
  if (dim >= 3) arr.push_back(g.c);
  return arr;
}

GroupElement element_from_json(const nlohmann::json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ValidationError("wiring JSON: element must be an array of " +
                          std::to_string(dim) + " integers");
  GroupElement g;
  g.a = j.at(0).get<std::int64_t>();
  if (dim >= 2) g.b = j.at(1).get<std::int64_t>();
  if (dim >= 3) g.c = j.at(2).get<std::int64_t>();
  return g;
}

}  // namespace

int LoadMap::load() const {
  int best = 0;
  for (const auto& [pt, c] : counts)
    best = std::max(best, std::max(c.vertex_load, c.road_load));
  return best;
}

LoadMap load_of(const CombinatorialWiring& f) {
  LoadMap m;
  for (const GroupElement& g : f.vertex_map) m.counts[g].vertex_load++;
  std::vector<GroupElement> scratch;
  for (const Walk& road : f.roads) {
    scratch.clear();
    walk_visit(road, f.genset,
               [&](const GroupElement& g) { scratch.push_back(g); });
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    for (const GroupElement& g : scratch) m.counts[g].road_load++;
  }
  return m;
}

std::string to_string(DiameterMode m) {
  return m == DiameterMode::exact ? "exact" : "proxy";
}

namespace {

WiringMetrics metrics_impl(const CombinatorialWiring& f, DiameterMode mode,
                           const MetricsLimits& limits,
                           const std::vector<GroupElement>& image) {
  WiringMetrics m;
  m.volume = static_cast<std::int64_t>(image.size());
  for (const Walk& road : f.roads)
    m.road_length_total += static_cast<std::int64_t>(road.letters.size());
  m.load = load_of(f).load();
  m.diameter_mode = mode;
  if (image.empty()) {
    m.diameter = 0;
  } else if (mode == DiameterMode::exact) {
    m.diameter = exact_set_diameter(image, f.genset, limits);
  } else {
    // Doubled proxy eccentricity of a base point (first vertex image when
    // present). Reported only with the "proxy" tag.
    GroupElement base = f.vertex_map.empty() ? image.front() : f.vertex_map[0];
    GroupElement base_inv = f.genset.group().inv(base);
    std::int64_t ecc = 0;
    for (const GroupElement& g : image)
      ecc = std::max(ecc,
                     proxy_norm(f.genset.group(), f.genset.group().mul(base_inv, g)));
    m.diameter = 2 * ecc;
  }
  return m;
}

}  // namespace

WiringMetrics metrics_of(const CombinatorialWiring& f, DiameterMode mode,
                         const MetricsLimits& limits) {
  return metrics_impl(f, mode, limits, unique_image(f));
}

WiringMetrics metrics_auto(const CombinatorialWiring& f,
                           const MetricsLimits& limits) {
  std::vector<GroupElement> image = unique_image(f);
  if (image.size() <= limits.max_exact_image) {
    try {
      return metrics_impl(f, DiameterMode::exact, limits, image);
    } catch (const ResourceError&) {
      // image fits but the connecting ball does not; fall back
    }
  }
  return metrics_impl(f, DiameterMode::proxy, limits, image);
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const CheckResult& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool VerificationReport::passed(const std::string& name) const {
  const CheckResult* c = find(name);
  return c != nullptr && c->pass;
}

bool VerificationReport::embedding_ok() const {
  return passed(kCheckWalkValidity) && passed(kCheckRoadEndpoints) &&
         passed(kCheckVertexInjective) && passed(kCheckRoadsDisjoint) &&
         passed(kCheckVertexIsolation);
}

bool VerificationReport::wiring_ok() const {
  if (!passed(kCheckWalkValidity) || !passed(kCheckRoadEndpoints)) return false;
  if (k.has_value() && !passed(kCheckLoadWithinK)) return false;
  return true;
}

bool VerificationReport::all_ok() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

VerificationReport verify(const CombinatorialWiring& f, std::optional<int> k) {
  VerificationReport rep;
  rep.k = k;
  const FiniteGraph& G = f.graph;
  const int n = G.vertex_count();
  const int m = G.edge_count();
  if (static_cast<int>(f.vertex_map.size()) != n ||
      static_cast<int>(f.roads.size()) != m)
    throw ValidationError("wiring arrays not aligned with the graph");

  // Walk validity: letters must index the generating set.
  std::vector<bool> valid(static_cast<std::size_t>(m), true);
  {
    CheckResult c{kCheckWalkValidity, true, ""};
    for (int e = 0; e < m; ++e) {
      if (!road_letters_valid(f.roads[static_cast<std::size_t>(e)], f.genset)) {
        valid[static_cast<std::size_t>(e)] = false;
        if (c.pass) {
          c.pass = false;
          c.witness = "road of edge " + std::to_string(e) +
                      " uses a letter outside the generating set";
        }
      }
    }
    rep.checks.push_back(std::move(c));
  }

  // Road endpoints must be the images of the edge endpoints (either order).
  {
    CheckResult c{kCheckRoadEndpoints, true, ""};
    for (int e = 0; e < m && c.pass; ++e) {
      if (!valid[static_cast<std::size_t>(e)]) continue;
      const Walk& road = f.roads[static_cast<std::size_t>(e)];
      auto [u, v] = G.edge(e);
      const GroupElement& fu = f.vertex_map[static_cast<std::size_t>(u)];
      const GroupElement& fv = f.vertex_map[static_cast<std::size_t>(v)];
      GroupElement a = road.start;
      GroupElement b = walk_endpoint(road, f.genset);
      bool ok = (a == fu && b == fv) || (a == fv && b == fu);
      if (!ok) {
        c.pass = false;
        c.witness = "road of edge " + std::to_string(e) + " runs " +
                    to_string(a) + " -> " + to_string(b) +
                    " but the endpoint images are " + to_string(fu) + ", " +
                    to_string(fv);
      }
    }
    rep.checks.push_back(std::move(c));
  }

  // Vertex injectivity.
  std::vector<PointVertex> vpts;
  vpts.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    vpts.push_back({f.vertex_map[static_cast<std::size_t>(v)], v});
  std::sort(vpts.begin(), vpts.end());
  int max_vertex_load = 0;
  {
    CheckResult c{kCheckVertexInjective, true, ""};
    std::size_t i = 0;
    while (i < vpts.size()) {
      std::size_t j = i;
      while (j < vpts.size() && vpts[j].pt == vpts[i].pt) ++j;
      max_vertex_load = std::max<int>(max_vertex_load, static_cast<int>(j - i));
      if (j - i > 1 && c.pass) {
        c.pass = false;
        c.witness = "vertices " + std::to_string(vpts[i].vertex) + " and " +
                    std::to_string(vpts[i + 1].vertex) + " both map to " +
                    to_string(vpts[i].pt);
      }
      i = j;
    }
    rep.checks.push_back(std::move(c));
  }

  // Element -> edges map (set semantics per road), sorted for run scans.
  std::vector<PointEdge> epts = collect_road_points(f, valid);
  int max_road_load = 0;

  {
    CheckResult c{kCheckRoadsDisjoint, true, ""};
    std::size_t i = 0;
    while (i < epts.size()) {
      std::size_t j = i;
      while (j < epts.size() && epts[j].pt == epts[i].pt) ++j;
      max_road_load = std::max<int>(max_road_load, static_cast<int>(j - i));
      if (c.pass) {
        for (std::size_t p = i; p < j && c.pass; ++p)
          for (std::size_t q = p + 1; q < j && c.pass; ++q)
            if (!G.edges_adjacent(epts[p].edge, epts[q].edge)) {
              c.pass = false;
              c.witness = "roads of non-adjacent edges " +
                          std::to_string(epts[p].edge) + " and " +
                          std::to_string(epts[q].edge) + " share element " +
                          to_string(epts[i].pt);
            }
      }
      i = j;
    }
    rep.checks.push_back(std::move(c));
  }

  // Vertices are isolated from roads: merge-join vertex images and road
  // points over the shared element.
  {
    CheckResult c{kCheckVertexIsolation, true, ""};
    std::size_t vi = 0, ei = 0;
    while (vi < vpts.size() && ei < epts.size() && c.pass) {
      if (vpts[vi].pt < epts[ei].pt) {
        ++vi;
      } else if (epts[ei].pt < vpts[vi].pt) {
        ++ei;
      } else {
        std::size_t vj = vi, ej = ei;
        while (vj < vpts.size() && vpts[vj].pt == vpts[vi].pt) ++vj;
        while (ej < epts.size() && epts[ej].pt == epts[ei].pt) ++ej;
        for (std::size_t p = vi; p < vj && c.pass; ++p)
          for (std::size_t q = ei; q < ej && c.pass; ++q)
            if (!G.edge_contains(epts[q].edge, vpts[p].vertex)) {
              c.pass = false;
              c.witness = "image of vertex " + std::to_string(vpts[p].vertex) +
                          " lies on the road of edge " +
                          std::to_string(epts[q].edge) + " at " +
                          to_string(vpts[p].pt);
            }
        vi = vj;
        ei = ej;
      }
    }
    rep.checks.push_back(std::move(c));
  }

  rep.load = std::max(max_vertex_load, max_road_load);
  if (k.has_value()) {
    CheckResult c{kCheckLoadWithinK, true, ""};
    if (rep.load > *k) {
      c.pass = false;
      c.witness = "load " + std::to_string(rep.load) + " exceeds k = " +
                  std::to_string(*k);
    }
    rep.checks.push_back(std::move(c));
  }

  {
    CheckResult c{kCheckNeighborsDistinct, true, ""};
    for (int e = 0; e < m && c.pass; ++e) {
      auto [u, v] = G.edge(e);
      if (f.vertex_map[static_cast<std::size_t>(u)] ==
          f.vertex_map[static_cast<std::size_t>(v)]) {
        c.pass = false;
        c.witness = "edge " + std::to_string(e) + " endpoints " +
                    std::to_string(u) + "," + std::to_string(v) +
                    " share image " +
                    to_string(f.vertex_map[static_cast<std::size_t>(u)]);
      }
    }
    rep.checks.push_back(std::move(c));
  }

  return rep;
}

ThickBounds thick_embedding_bounds(const WiringMetrics& m,
                                   const GeneratingSet& s) {
  ThickBounds b;
  b.volume_bound = checked_mul(m.volume, s.cayley_degree(), "volume bound");
  b.diameter_bound = checked_add(m.diameter, 2, "diameter bound");
  return b;
}

std::string wiring_to_json(const CombinatorialWiring& f) {
  nlohmann::ordered_json j;
  const Group& grp = f.genset.group();
  int dim = grp.kind == GroupKind::heisenberg ? 3 : grp.dim;
  if (grp.kind == GroupKind::lattice) {
    j["group"] = "zd";
    j["dim"] = dim;
  }
  j["genset"] = nlohmann::ordered_json::array();
  for (const GroupElement& e : f.genset.elements())
    j["genset"].push_back(element_to_json(e, dim));
  j["n"] = f.graph.vertex_count();
  j["edges"] = nlohmann::ordered_json::array();
  for (auto [u, v] : f.graph.edges())
    j["edges"].push_back(nlohmann::ordered_json::array({u, v}));
  j["vertex_map"] = nlohmann::ordered_json::array();
  for (const GroupElement& e : f.vertex_map)
    j["vertex_map"].push_back(element_to_json(e, dim));
  j["roads"] = nlohmann::ordered_json::array();
  for (const Walk& road : f.roads) {
    nlohmann::ordered_json r;
    r["start"] = element_to_json(road.start, dim);
    r["word"] = nlohmann::ordered_json::array();
    for (const GeneratorLabel& l : road.letters)
      r["word"].push_back(nlohmann::ordered_json::array({l.index, l.sign}));
    j["roads"].push_back(std::move(r));
  }
  return j.dump() + "\n";
}

CombinatorialWiring wiring_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("wiring JSON parse error: ") + ex.what());
  }
  try {
    Group grp = heisenberg_group();
    if (j.contains("group")) {
      std::string g = j.at("group").get<std::string>();
      if (g == "zd")
        grp = lattice_group(j.at("dim").get<int>());
      else if (g != "heisenberg")
        throw ValidationError("wiring JSON: unknown group '" + g + "'");
    }
    int dim = grp.kind == GroupKind::heisenberg ? 3 : grp.dim;
    std::vector<GroupElement> gens;
    for (const auto& e : j.at("genset"))
      gens.push_back(element_from_json(e, dim));
    GeneratingSet genset(grp, std::move(gens));
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : j.at("edges"))
      pairs.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    FiniteGraph graph = FiniteGraph::from_edge_list(n, std::move(pairs));
    std::vector<GroupElement> vmap;
    for (const auto& e : j.at("vertex_map"))
      vmap.push_back(element_from_json(e, dim));
    if (static_cast<int>(vmap.size()) != n)
      throw ValidationError("wiring JSON: vertex_map size mismatch");
    std::vector<Walk> roads;
    for (const auto& r : j.at("roads")) {
      Walk w;
      w.start = element_from_json(r.at("start"), dim);
      for (const auto& l : r.at("word")) {
        GeneratorLabel lab{l.at(0).get<std::int32_t>(),
                           l.at(1).get<std::int32_t>()};
        if (lab.sign != 1 && lab.sign != -1)
          throw ValidationError("wiring JSON: letter sign must be +1 or -1");
        w.letters.push_back(lab);
      }
      roads.push_back(std::move(w));
    }
    if (roads.size() != static_cast<std::size_t>(graph.edge_count()))
      throw ValidationError("wiring JSON: roads size mismatch");
    return CombinatorialWiring{std::move(genset), std::move(graph),
                               std::move(vmap), std::move(roads)};
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("wiring JSON: ") + ex.what());
  }
}

std::string report_to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& c : r.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    if (!c.witness.empty()) cj["witness"] = c.witness;
    j["checks"].push_back(std::move(cj));
  }
  j["load"] = r.load;
  if (r.k.has_value())
    j["k"] = *r.k;
  else
    j["k"] = nullptr;
  j["embedding_ok"] = r.embedding_ok();
  j["wiring_ok"] = r.wiring_ok();
  return j.dump();
}

}  // namespace hwire
