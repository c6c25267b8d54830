#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hwire/group.hpp"

namespace hwire {

inline constexpr std::size_t kDefaultBallCap = 50'000'000;

/// A walk (g; w) in a Cayley graph: start element plus the word it traces.
/// Vertices are derived on demand; roads with millions of steps stay compact.
struct Walk {
  GroupElement start;
  Word letters;

  std::size_t vertex_count() const { return letters.size() + 1; }
};

/// Final vertex of the walk.
GroupElement walk_endpoint(const Walk& w, const GeneratingSet& s);

/// Materialized vertex sequence (start, start*s1, ...). Intended for small
/// walks; use walk_visit for streaming.
std::vector<GroupElement> walk_vertices(const Walk& w, const GeneratingSet& s);

/// Calls fn(vertex) for every vertex of the walk, start first.
template <typename Fn>
void walk_visit(const Walk& w, const GeneratingSet& s, Fn&& fn) {
  GroupElement cur = w.start;
  fn(cur);
  for (const GeneratorLabel& l : w.letters) {
    cur = s.group().mul(cur, s.letter_value(l));
    fn(cur);
  }
}

/// Walk starting at g tracing w. Validates letters against S.
Walk translate_walk(const GroupElement& g, const Word& w,
                    const GeneratingSet& s);

/// Closed ball of radius R around the identity, built by BFS.
///
/// Membership is exactly { g : ||g||_S <= R }. The member enumeration order()
/// is the BFS discovery order with letters expanded as (gen 0,+), (gen 0,-),
/// (gen 1,+), ...; parents are never overwritten, so the geodesic words read
/// off the parent chain are canonical for a fixed generator ordering.
class Ball {
 public:
  Ball(GeneratingSet genset, int radius,
       std::size_t element_cap = kDefaultBallCap);

  const GeneratingSet& genset() const { return genset_; }
  int radius() const { return radius_; }
  std::size_t size() const { return order_.size(); }

  bool contains(const GroupElement& g) const { return table_.count(g) > 0; }
  std::optional<int> distance(const GroupElement& g) const;

  /// Deterministic enumeration of members, sorted by distance (BFS layers).
  const std::vector<GroupElement>& order() const { return order_; }

  /// |B_r| for 0 <= r <= radius; members with distance <= r form a prefix
  /// of order().
  std::size_t count_within(int r) const;

  /// Canonical geodesic word from the identity to g (the parent chain).
  /// Throws DomainError if g is not a member.
  Word geodesic_word(const GroupElement& g) const;

 private:
  struct Entry {
    std::int32_t dist;
    GeneratorLabel parent;  // letter of the last geodesic step; unused at 1
  };

  GeneratingSet genset_;
  int radius_;
  std::unordered_map<GroupElement, Entry, GroupElementHash> table_;
  std::vector<GroupElement> order_;
  std::vector<std::size_t> layer_counts_;  // cumulative |B_r| per r
};

inline Ball bfs_ball(const GeneratingSet& s, int radius,
                     std::size_t element_cap = kDefaultBallCap) {
  return Ball(s, radius, element_cap);
}

/// Exact word norm ||g||_S if <= radius_cap, nullopt otherwise.
std::optional<int> word_norm(const GeneratingSet& s, const GroupElement& g,
                             int radius_cap,
                             std::size_t element_cap = kDefaultBallCap);

Word geodesic_word(const Ball& ball, const GroupElement& g);

}  // namespace hwire
