#include "hwire/cayley.hpp"

#include <algorithm>

namespace hwire {

GroupElement walk_endpoint(const Walk& w, const GeneratingSet& s) {
  return eval_word(w.start, w.letters, s);
}

std::vector<GroupElement> walk_vertices(const Walk& w, const GeneratingSet& s) {
  std::vector<GroupElement> out;
  out.reserve(w.vertex_count());
  walk_visit(w, s, [&](const GroupElement& g) { out.push_back(g); });
  return out;
}

Walk translate_walk(const GroupElement& g, const Word& w,
                    const GeneratingSet& s) {
  for (const GeneratorLabel& l : w) {
    if (l.index < 0 || static_cast<std::size_t>(l.index) >= s.size())
      throw DomainError("walk letter index " + std::to_string(l.index) +
                        " out of range");
  }
  return Walk{g, w};
}

Ball::Ball(GeneratingSet genset, int radius, std::size_t element_cap)
    : genset_(std::move(genset)), radius_(radius) {
  if (radius < 0) throw DomainError("ball radius must be >= 0");
  const Group& grp = genset_.group();
  order_.push_back(grp.identity());
  table_.emplace(grp.identity(), Entry{0, GeneratorLabel{}});
  layer_counts_.assign(static_cast<std::size_t>(radius) + 1, 0);
  layer_counts_[0] = 1;

  std::size_t head = 0;
  while (head < order_.size()) {
    GroupElement cur = order_[head++];
    std::int32_t d = table_.at(cur).dist;
    if (d == radius_) break;  // BFS order: everything after is also at radius
    for (std::size_t gi = 0; gi < genset_.size(); ++gi) {
      for (int sign : {+1, -1}) {
        GeneratorLabel letter{static_cast<std::int32_t>(gi), sign};
        GroupElement nxt = grp.mul(cur, genset_.letter_value(letter));
        auto [it, inserted] = table_.emplace(nxt, Entry{d + 1, letter});
        if (inserted) {
          if (order_.size() >= element_cap)
            throw ResourceError("ball element cap exceeded at " +
                                    std::to_string(order_.size()) +
                                    " elements (radius " +
                                    std::to_string(d + 1) + ")",
                                order_.size());
          order_.push_back(nxt);
          layer_counts_[static_cast<std::size_t>(d) + 1]++;
        }
      }
    }
  }
  for (std::size_t r = 1; r < layer_counts_.size(); ++r)
    layer_counts_[r] += layer_counts_[r - 1];
}

std::optional<int> Ball::distance(const GroupElement& g) const {
  auto it = table_.find(g);
  if (it == table_.end()) return std::nullopt;
  return it->second.dist;
}

std::size_t Ball::count_within(int r) const {
  if (r < 0) return 0;
  if (r > radius_) throw DomainError("count_within beyond ball radius");
  return layer_counts_[static_cast<std::size_t>(r)];
}

Word Ball::geodesic_word(const GroupElement& g) const {
  auto it = table_.find(g);
  if (it == table_.end())
    throw DomainError("element " + to_string(g) + " outside ball of radius " +
                      std::to_string(radius_));
  Word rev;
  GroupElement cur = g;
  const Group& grp = genset_.group();
  while (!(cur == grp.identity())) {
    const Entry& e = table_.at(cur);
    rev.push_back(e.parent);
    cur = grp.mul(cur, genset_.letter_value(e.parent.inverse()));
  }
  return Word(rev.rbegin(), rev.rend());
}

std::optional<int> word_norm(const GeneratingSet& s, const GroupElement& g,
                             int radius_cap, std::size_t element_cap) {
  if (radius_cap < 0) throw DomainError("word_norm cap must be >= 0");
  const Group& grp = s.group();
  if (g == grp.identity()) return 0;

  // Layered BFS with early exit on the target.
  std::unordered_map<GroupElement, std::int32_t, GroupElementHash> dist;
  std::vector<GroupElement> frontier{grp.identity()};
  dist.emplace(grp.identity(), 0);
  for (int d = 1; d <= radius_cap; ++d) {
    std::vector<GroupElement> next;
    for (const GroupElement& cur : frontier) {
      for (std::size_t gi = 0; gi < s.size(); ++gi) {
        for (int sign : {+1, -1}) {
          GroupElement nxt =
              grp.mul(cur, s.letter_value({static_cast<std::int32_t>(gi), sign}));
          if (dist.emplace(nxt, d).second) {
            if (nxt == g) return d;
            if (dist.size() >= element_cap)
              throw ResourceError("word_norm element cap exceeded at " +
                                      std::to_string(dist.size()),
                                  dist.size());
            next.push_back(nxt);
          }
        }
      }
    }
    if (next.empty()) return std::nullopt;  // group exhausted below the cap
    frontier = std::move(next);
  }
  return std::nullopt;
}

Word geodesic_word(const Ball& ball, const GroupElement& g) {
  return ball.geodesic_word(g);
}

}  // namespace hwire
