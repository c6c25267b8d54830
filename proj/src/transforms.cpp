#include "hwire/transforms.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

namespace hwire {

namespace {

int euclid_mod(std::int64_t a, std::int64_t b) {
  std::int64_t r = a % b;
  if (r < 0) r += b;
  return static_cast<int>(r);
}

void append_run(Word& w, GeneratorLabel l, std::int64_t count) {
  for (std::int64_t i = 0; i < count; ++i) w.push_back(l);
}

// x y x^-1 y^-1 evaluates to z; its sign-flipped reverse to z^-1.
void append_z_over_xy(Word& w, int sign) {
  const GeneratorLabel X{0, 1}, Y{1, 1};
  if (sign >= 0) {
    w.push_back(X);
    w.push_back(Y);
    w.push_back(X.inverse());
    w.push_back(Y.inverse());
  } else {
    w.push_back(Y);
    w.push_back(X);
    w.push_back(Y.inverse());
    w.push_back(X.inverse());
  }
}

}  // namespace

int position_color(const GroupElement& p) {
  return 4 * euclid_mod(p.a, 4) + euclid_mod(p.b, 4);
}

int ColoringAssignment::color_of_point(const GroupElement& p, int edge) const {
  auto it = point_edge_color.find(PointEdgeKey{p, edge});
  if (it == point_edge_color.end())
    throw DomainError("no color assigned for point " + to_string(p) +
                      " on edge " + std::to_string(edge));
  return it->second;
}

ColoringAssignment assign_coloring(const CombinatorialWiring& f) {
  if (!f.genset.is_xy())
    throw ValidationError("coloring requires the {x,y} generating set");
  LoadMap loads = load_of(f);
  const int k = std::max(1, loads.load());

  VerificationReport rep = verify(f, k);
  if (!rep.wiring_ok() || !rep.passed(kCheckNeighborsDistinct))
    throw ValidationError(
        "coloring requires a verified k-wiring with distinct neighbor "
        "images");

  ColoringAssignment c;
  c.k = k;

  // eta_V: distinct indices in [0,k) per image element, in vertex-id order.
  const int n = f.graph.vertex_count();
  c.vertex_color.assign(static_cast<std::size_t>(n), 0);
  {
    std::unordered_map<GroupElement, int, GroupElementHash> next_index;
    for (int v = 0; v < n; ++v) {
      const GroupElement& p = f.vertex_map[static_cast<std::size_t>(v)];
      int eta = next_index[p]++;
      c.vertex_color[static_cast<std::size_t>(v)] =
          position_color(p) * k + eta;
    }
  }

  // eta_E: distinct indices in [0,k) per element among the edges whose road
  // contains it, in edge-id order. Endpoint-image points inherit the vertex
  // color instead.
  {
    std::unordered_map<GroupElement, int, GroupElementHash> next_index;
    std::vector<GroupElement> scratch;
    for (int e = 0; e < f.graph.edge_count(); ++e) {
      auto [u, v] = f.graph.edge(e);
      const GroupElement& fu = f.vertex_map[static_cast<std::size_t>(u)];
      const GroupElement& fv = f.vertex_map[static_cast<std::size_t>(v)];
      scratch.clear();
      walk_visit(f.roads[static_cast<std::size_t>(e)], f.genset,
                 [&](const GroupElement& p) { scratch.push_back(p); });
      std::sort(scratch.begin(), scratch.end());
      scratch.erase(std::unique(scratch.begin(), scratch.end()),
                    scratch.end());
      for (const GroupElement& p : scratch) {
        int color;
        if (p == fu) {
          color = c.vertex_color[static_cast<std::size_t>(u)];
        } else if (p == fv) {
          color = c.vertex_color[static_cast<std::size_t>(v)];
        } else {
          int eta = next_index[p]++;
          color = (16 + position_color(p)) * k + eta;
        }
        c.point_edge_color.emplace(
            ColoringAssignment::PointEdgeKey{p, e}, color);
      }
    }
  }
  return c;
}

Word relief_word(GeneratorLabel s, int alpha, int alpha2, std::int64_t K) {
  if (s.index != 0 && s.index != 1)
    throw DomainError("relief_word letters must come from {x,y}");
  if (alpha < 0 || alpha2 < 0)
    throw DomainError("relief_word colors must be non-negative");
  if (K % 2 != 0 || K / 2 <= std::max(alpha, alpha2))
    throw DomainError("relief_word needs even K with K/2 above both colors");

  // Over the {x,y,z} set: x=0, y=1, z=2. The conjugating letter is the
  // other one of x,y.
  const GeneratorLabel step{s.index, s.sign};
  const GeneratorLabel conj{s.index == 0 ? 1 : 0, 1};
  const int dz = alpha2 - alpha;

  Word w;
  w.reserve(static_cast<std::size_t>(K + 2 + std::abs(dz)));
  append_run(w, step, K / 2 + alpha);
  w.push_back(conj);
  append_run(w, GeneratorLabel{2, dz >= 0 ? 1 : -1}, std::abs(dz));
  w.push_back(conj.inverse());
  append_run(w, step, K / 2 - alpha);
  return w;
}

CombinatorialWiring burden_relief(const CombinatorialWiring& f,
                                  const ReliefConfig& config) {
  ColoringAssignment c = assign_coloring(f);
  const int k = c.k;
  const std::int64_t K =
      static_cast<std::int64_t>(config.factor) * static_cast<std::int64_t>(k);
  if (K % 2 != 0 || K <= 64 * static_cast<std::int64_t>(k))
    throw ValidationError("relief factor must keep K = factor*k even and > 64k");

  GeneratingSet target = xyz_genset();
  CombinatorialWiring out{target, f.graph, {}, {}};

  auto z_power = [](std::int64_t t) { return GroupElement{0, 0, t}; };
  out.vertex_map.reserve(f.vertex_map.size());
  for (int v = 0; v < f.graph.vertex_count(); ++v)
    out.vertex_map.push_back(
        mul(z_power(c.color_of_vertex(v)),
            lambda_k(K, f.vertex_map[static_cast<std::size_t>(v)])));

  out.roads.reserve(f.roads.size());
  for (int e = 0; e < f.graph.edge_count(); ++e) {
    const Walk& road = f.roads[static_cast<std::size_t>(e)];
    std::vector<GroupElement> pts = walk_vertices(road, f.genset);
    Walk nroad;
    nroad.start =
        mul(z_power(c.color_of_point(pts[0], e)), lambda_k(K, pts[0]));
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      int a = c.color_of_point(pts[i], e);
      int a2 = c.color_of_point(pts[i + 1], e);
      Word step = relief_word(road.letters[i], a, a2, K);
      nroad.letters.insert(nroad.letters.end(), step.begin(), step.end());
    }
    out.roads.push_back(std::move(nroad));
  }
  return out;
}

CombinatorialWiring remove_z(const CombinatorialWiring& f) {
  if (!f.genset.is_xyz())
    throw ValidationError("remove_z requires the {x,y,z} generating set");

  GeneratingSet target = xy_genset();
  CombinatorialWiring out{target, f.graph, {}, {}};
  out.vertex_map.reserve(f.vertex_map.size());
  for (const GroupElement& p : f.vertex_map)
    out.vertex_map.push_back(lambda_k(2, p));

  out.roads.reserve(f.roads.size());
  for (const Walk& road : f.roads) {
    Walk nroad;
    nroad.start = lambda_k(2, road.start);
    nroad.letters.reserve(road.letters.size() * 2);
    for (const GeneratorLabel& l : road.letters) {
      if (l.index == 2) {
        for (int rep = 0; rep < 4; ++rep) append_z_over_xy(nroad.letters, l.sign);
      } else {
        nroad.letters.push_back(l);
        nroad.letters.push_back(l);
      }
    }
    out.roads.push_back(std::move(nroad));
  }
  return out;
}

BilipData bilip_and_m(const GeneratingSet& s, int radius_cap,
                      std::size_t element_cap) {
  if (s.group().kind != GroupKind::heisenberg)
    throw ValidationError("bilip_and_m expects a Heisenberg generating set");
  GeneratingSet xy = xy_genset();

  // ||s||_{x,y} for every generator of S.
  int max_gen_norm = 0;
  for (const GroupElement& e : s.elements()) {
    auto norm = word_norm(xy, e, radius_cap, element_cap);
    if (!norm)
      throw ResourceError("no {x,y}-word of length <= " +
                              std::to_string(radius_cap) +
                              " for generator " + to_string(e),
                          static_cast<std::size_t>(radius_cap));
    max_gen_norm = std::max(max_gen_norm, *norm);
  }

  // ||x||_S, ||y||_S and canonical shortest S-words via a growing ball.
  BilipData out;
  int norm_x = -1, norm_y = -1;
  for (int radius = 1;;) {
    Ball ball(s, radius, element_cap);
    if (norm_x < 0 && ball.contains(kGenX)) {
      norm_x = *ball.distance(kGenX);
      out.w_x = ball.geodesic_word(kGenX);
    }
    if (norm_y < 0 && ball.contains(kGenY)) {
      norm_y = *ball.distance(kGenY);
      out.w_y = ball.geodesic_word(kGenY);
    }
    if ((norm_x >= 0 && norm_y >= 0) || radius >= radius_cap) break;
    radius = std::min(radius * 2, radius_cap);
  }
  if (norm_x < 0 || norm_y < 0)
    throw ResourceError(
        "generating set does not reach x and y within radius " +
            std::to_string(radius_cap),
        static_cast<std::size_t>(radius_cap));

  out.M = std::max({max_gen_norm, norm_x, norm_y});
  out.m = std::max(out.M * norm_x, out.M * norm_y) + 1;
  return out;
}

CombinatorialWiring to_general_genset(const CombinatorialWiring& f,
                                      const GeneratingSet& s,
                                      const BilipData& bilip) {
  if (!f.genset.is_xy())
    throw ValidationError(
        "to_general_genset requires input over the {x,y} generating set");

  const int m = bilip.m;
  const Word w_x_inv = inverse_word(bilip.w_x);
  const Word w_y_inv = inverse_word(bilip.w_y);

  CombinatorialWiring out{s, f.graph, {}, {}};
  out.vertex_map.reserve(f.vertex_map.size());
  for (const GroupElement& p : f.vertex_map)
    out.vertex_map.push_back(lambda_k(m, p));

  out.roads.reserve(f.roads.size());
  for (const Walk& road : f.roads) {
    Walk nroad;
    nroad.start = lambda_k(m, road.start);
    for (const GeneratorLabel& l : road.letters) {
      const Word& block = l.index == 0 ? (l.sign >= 0 ? bilip.w_x : w_x_inv)
                                       : (l.sign >= 0 ? bilip.w_y : w_y_inv);
      for (int rep = 0; rep < m; ++rep)
        nroad.letters.insert(nroad.letters.end(), block.begin(), block.end());
    }
    out.roads.push_back(std::move(nroad));
  }
  return out;
}

CombinatorialWiring to_general_genset(const CombinatorialWiring& f,
                                      const GeneratingSet& s) {
  return to_general_genset(f, s, bilip_and_m(s));
}

bool PipelineResult::all_verified() const {
  for (const StageReport& r : stages) {
    if (r.stage == "wire") {
      if (!r.verify.wiring_ok() ||
          !r.verify.passed(kCheckNeighborsDistinct))
        return false;
    } else if (!r.verify.embedding_ok()) {
      return false;
    }
  }
  return true;
}

double general_genset_volume_bound(const GeneratingSet& s, const BilipData& b,
                                   std::size_t ball_cap) {
  const std::size_t len =
      std::max(b.w_x.size(), b.w_y.size());
  Ball xy_ball(xy_genset(), b.m / 2, ball_cap);
  Ball s_ball(s, static_cast<int>(len / 2), ball_cap);
  return static_cast<double>(xy_ball.size()) *
         static_cast<double>(s_ball.size());
}

PipelineResult embed_graph(const FiniteGraph& g, const GeneratingSet& s,
                           const PipelineConfig& config) {
  GeneratingSet xy = xy_genset();
  GenerateResult gen = generate(g, xy, config.wiring, config.ball_cap);
  CombinatorialWiring cur = gen.wiring;
  PipelineResult res{cur, {}, std::move(gen), {}};

  auto push_stage = [&](const std::string& name,
                        const CombinatorialWiring& w, std::optional<int> k,
                        double ratio_bound, double prev_volume) {
    StageReport rep;
    rep.stage = name;
    rep.verify = verify(w, k);
    rep.metrics = metrics_auto(w, config.metrics);
    rep.volume_ratio_bound = ratio_bound;
    rep.volume_ratio = prev_volume > 0
                           ? static_cast<double>(rep.metrics.volume) / prev_volume
                           : 1.0;
    res.stages.push_back(std::move(rep));
    return static_cast<double>(res.stages.back().metrics.volume);
  };

  double vol = push_stage("wire", cur, res.generation.threshold, 1.0, 0.0);

  // Burden relief: vol ratio bounded by 4402 k^2 for K = 1000k.
  const int k = std::max(1, load_of(cur).load());
  CombinatorialWiring relieved = burden_relief(cur, config.relief);
  vol = push_stage("relief", relieved, std::nullopt,
                   4402.0 * static_cast<double>(k) * static_cast<double>(k),
                   vol);
  cur = std::move(relieved);

  // Removing z: constant-factor bound (engineering surrogate 64).
  CombinatorialWiring flattened = remove_z(cur);
  vol = push_stage("remove-z", flattened, std::nullopt, 64.0, vol);
  cur = std::move(flattened);

  // General generating set.
  res.bilip = bilip_and_m(s);
  CombinatorialWiring retargeted = to_general_genset(cur, s, res.bilip);
  push_stage("general-genset", retargeted, std::nullopt,
             general_genset_volume_bound(s, res.bilip, config.ball_cap), vol);
  res.wiring = std::move(retargeted);
  return res;
}

std::string stage_report_to_json(const StageReport& r) {
  nlohmann::ordered_json j;
  j["stage"] = r.stage;
  j["volume"] = r.metrics.volume;
  j["diameter"] = r.metrics.diameter;
  j["diameter_mode"] = to_string(r.metrics.diameter_mode);
  j["load"] = r.metrics.load;
  j["road_length_total"] = r.metrics.road_length_total;
  j["volume_ratio"] = r.volume_ratio;
  j["volume_ratio_bound"] = r.volume_ratio_bound;
  j["verify"] = nlohmann::ordered_json::parse(report_to_json(r.verify));
  return j.dump();
}

}  // namespace hwire
