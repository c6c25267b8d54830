#include "hwire/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hwire/rng.hpp"

namespace hwire {

FiniteGraph FiniteGraph::from_edge_list(int n,
                                        std::vector<std::pair<int, int>> pairs) {
  if (n < 0) throw ValidationError("vertex count must be >= 0");
  FiniteGraph g;
  g.n_ = n;
  g.adjacency_.assign(static_cast<std::size_t>(n), {});
  g.incident_.assign(static_cast<std::size_t>(n), {});
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : pairs) {
    if (u == v)
      throw ValidationError("loop edge (" + std::to_string(u) + "," +
                            std::to_string(v) + ")");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ValidationError("edge (" + std::to_string(u) + "," +
                            std::to_string(v) + ") out of range for n=" +
                            std::to_string(n));
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second)
      throw ValidationError("duplicate edge (" + std::to_string(u) + "," +
                            std::to_string(v) + ")");
    int e = static_cast<int>(g.edges_.size());
    g.edges_.emplace_back(u, v);
    g.adjacency_[static_cast<std::size_t>(u)].push_back(v);
    g.adjacency_[static_cast<std::size_t>(v)].push_back(u);
    g.incident_[static_cast<std::size_t>(u)].push_back(e);
    g.incident_[static_cast<std::size_t>(v)].push_back(e);
  }
  for (int v = 0; v < n; ++v)
    g.max_degree_ = std::max(g.max_degree_, g.degree(v));
  return g;
}

Orientation orient(const FiniteGraph& g) {
  // Smaller id first; any fixed choice works, this one is reproducible.
  return Orientation{g.edges()};
}

FiniteGraph random_regular(int n, int d, std::uint64_t seed, int max_restarts) {
  if (n <= 0 || d < 0) throw ValidationError("random_regular needs n > 0, d >= 0");
  if (d >= n)
    throw ValidationError("random_regular needs d < n (got d=" +
                          std::to_string(d) + ", n=" + std::to_string(n) + ")");
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0)
    throw ValidationError("random_regular needs n*d even");

  SplitMix64 rng(substream_seed(seed, 0x5e6f));
  std::vector<int> stubs(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (int restart = 0; restart < max_restarts; ++restart) {
    for (std::size_t i = 0; i < stubs.size(); ++i)
      stubs[i] = static_cast<int>(i) / d;
    // Fisher-Yates with the portable generator.
    for (std::size_t i = stubs.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng.uniform_below(i));
      std::swap(stubs[i - 1], stubs[j]);
    }
    std::vector<std::pair<int, int>> pairs;
    std::set<std::pair<int, int>> seen;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) ok = false;
      if (ok) {
        auto p = std::minmax(u, v);
        if (!seen.insert({p.first, p.second}).second) ok = false;
        pairs.emplace_back(p.first, p.second);
      }
    }
    if (ok) return FiniteGraph::from_edge_list(n, std::move(pairs));
  }
  throw GenerationError("configuration model failed to produce a simple graph after " +
                            std::to_string(max_restarts) + " restarts",
                        max_restarts);
}

FiniteGraph parse_edge_list(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  if (tokens.size() < 2)
    throw ValidationError("edge list: missing 'n m' header");
  auto to_int = [](const std::string& t) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(t, &pos);
    } catch (const std::exception&) {
      throw ValidationError("edge list: bad integer '" + t + "'");
    }
    if (pos != t.size())
      throw ValidationError("edge list: bad integer '" + t + "'");
    return static_cast<int>(v);
  };
  int n = to_int(tokens[0]);
  int m = to_int(tokens[1]);
  if (m < 0 || tokens.size() != static_cast<std::size_t>(2 + 2 * m))
    throw ValidationError("edge list: expected " + std::to_string(2 * m) +
                          " endpoint tokens, found " +
                          std::to_string(tokens.size() - 2));
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(m));
  for (int e = 0; e < m; ++e)
    pairs.emplace_back(to_int(tokens[2 + 2 * static_cast<std::size_t>(e)]),
                       to_int(tokens[3 + 2 * static_cast<std::size_t>(e)]));
  return FiniteGraph::from_edge_list(n, std::move(pairs));
}

std::string format_edge_list(const FiniteGraph& g) {
  std::ostringstream os;
  os << g.vertex_count() << " " << g.edge_count() << "\n";
  for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
  return os.str();
}

}  // namespace hwire
