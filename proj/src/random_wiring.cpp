#include "hwire/random_wiring.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "hwire/rng.hpp"

namespace hwire {

int radius_for(std::int64_t n, int alpha) {
  if (n < 1) throw DomainError("radius_for needs n >= 1");
  if (alpha < 2) throw DomainError("radius_for needs integer alpha > 1");
  const int e = alpha - 1;
  auto pow_at_least = [e, n](std::int64_t r) {
    // r^e >= n by exact integer comparison; the early exit keeps the
    // accumulator well inside 128 bits.
    __int128 acc = 1;
    for (int i = 0; i < e; ++i) {
      acc *= r;
      if (acc >= n) return true;
    }
    return acc >= n;
  };
  std::int64_t lo = 1, hi = 1;
  while (!pow_at_least(hi)) hi *= 2;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (pow_at_least(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return static_cast<int>(lo);
}

int load_threshold(std::int64_t n, double load_threshold_constant) {
  double t = load_threshold_constant * std::log1p(static_cast<double>(n));
  return static_cast<int>(std::ceil(t));
}

std::pair<CombinatorialWiring, EventOutcome> sample_wiring(
    const FiniteGraph& g, const GeneratingSet& s,
    const RandomWiringConfig& config, const Ball& ball, std::uint64_t attempt) {
  const int n = g.vertex_count();
  if (n < 1) throw DomainError("sample_wiring needs at least one vertex");
  const int r = radius_for(n, config.alpha);
  if (ball.radius() < 2 * r)
    throw DomainError("sample_wiring needs a ball of radius >= 2r = " +
                      std::to_string(2 * r) + ", got " +
                      std::to_string(ball.radius()));
  if (!(ball.genset() == s))
    throw DomainError("sample_wiring: ball was built over a different "
                      "generating set");

  SplitMix64 rng(substream_seed(config.seed, attempt));
  const std::size_t ball_r = ball.count_within(r);

  CombinatorialWiring f{ball.genset(), g, {}, {}};
  f.vertex_map.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::size_t idx = static_cast<std::size_t>(rng.uniform_below(ball_r));
    f.vertex_map.push_back(ball.order()[idx]);
  }

  const Group& grp = s.group();
  Orientation dir = orient(g);
  f.roads.reserve(dir.arcs.size());
  for (auto [u, v] : dir.arcs) {
    const GroupElement& gu = f.vertex_map[static_cast<std::size_t>(u)];
    const GroupElement& gv = f.vertex_map[static_cast<std::size_t>(v)];
    GroupElement h = grp.mul(grp.inv(gu), gv);
    f.roads.push_back(Walk{gu, ball.geodesic_word(h)});
  }

  EventOutcome out;
  out.threshold = load_threshold(n, config.load_threshold_constant);

  std::unordered_map<GroupElement, int, GroupElementHash> vertex_counts;
  for (const GroupElement& p : f.vertex_map) {
    if (++vertex_counts[p] >= out.threshold) out.e1 = true;
  }

  std::unordered_map<GroupElement, int, GroupElementHash> road_counts;
  std::vector<GroupElement> scratch;
  for (const Walk& road : f.roads) {
    scratch.clear();
    walk_visit(road, s, [&](const GroupElement& p) { scratch.push_back(p); });
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    for (const GroupElement& p : scratch)
      if (++road_counts[p] >= out.threshold) out.e2 = true;
  }

  for (auto [u, v] : g.edges())
    if (f.vertex_map[static_cast<std::size_t>(u)] ==
        f.vertex_map[static_cast<std::size_t>(v)])
      out.e3 = true;

  return {std::move(f), out};
}

GenerateResult generate(const FiniteGraph& g, const GeneratingSet& s,
                        const RandomWiringConfig& config, std::size_t ball_cap) {
  if (config.max_attempts < 1)
    throw DomainError("generate needs max_attempts >= 1");
  const int r = radius_for(std::max(1, g.vertex_count()), config.alpha);
  Ball ball(s, 2 * r, ball_cap);

  int e1 = 0, e2 = 0, e3 = 0;
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    auto [f, out] =
        sample_wiring(g, s, config, ball, static_cast<std::uint64_t>(attempt));
    if (!out.any()) {
      GenerateResult res{std::move(f), r, attempt + 1, out.threshold,
                         e1,           e2, e3};
      return res;
    }
    e1 += out.e1 ? 1 : 0;
    e2 += out.e2 ? 1 : 0;
    e3 += out.e3 ? 1 : 0;
  }
  throw GenerationError(
      "no event-free wiring in " + std::to_string(config.max_attempts) +
          " attempts (e1 fired " + std::to_string(e1) + ", e2 " +
          std::to_string(e2) + ", e3 " + std::to_string(e3) +
          " times); raise --max-attempts or --load-const",
      config.max_attempts);
}

std::vector<EventRateRow> monte_carlo(const std::vector<int>& ns, int degree,
                                      const GeneratingSet& s,
                                      const RandomWiringConfig& config,
                                      int trials, std::size_t ball_cap) {
  if (trials < 1) throw DomainError("monte_carlo needs trials >= 1");
  std::vector<EventRateRow> rows;
  for (int n : ns) {
    FiniteGraph g = random_regular(
        n, degree, substream_seed(config.seed, 0x6000u + static_cast<std::uint64_t>(n)));
    const int r = radius_for(n, config.alpha);
    Ball ball(s, 2 * r, ball_cap);
    int c1 = 0, c2 = 0, c3 = 0;
    for (int t = 0; t < trials; ++t) {
      auto [f, out] =
          sample_wiring(g, s, config, ball, static_cast<std::uint64_t>(t));
      c1 += out.e1 ? 1 : 0;
      c2 += out.e2 ? 1 : 0;
      c3 += out.e3 ? 1 : 0;
    }
    EventRateRow row;
    row.n = n;
    row.radius = r;
    row.ball_r_size = static_cast<std::int64_t>(ball.count_within(r));
    row.trials = trials;
    auto rate = [trials](int c) {
      return static_cast<double>(c) / static_cast<double>(trials);
    };
    auto se = [trials](double p) {
      return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    };
    row.rate_e1 = rate(c1);
    row.rate_e2 = rate(c2);
    row.rate_e3 = rate(c3);
    row.stderr_e1 = se(row.rate_e1);
    row.stderr_e2 = se(row.rate_e2);
    row.stderr_e3 = se(row.rate_e3);
    row.e3_union_bound = static_cast<double>(degree) * n /
                         static_cast<double>(row.ball_r_size);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hwire
