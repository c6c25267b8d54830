#pragma once

#include "hwire/cayley.hpp"

namespace hwire {

/// Lazy generating-set invariant: BFS from the identity must reach x, y and
/// z within the radius cap. Throws ValidationError naming the first
/// unreachable generator.
inline void ensure_generates_heisenberg(const GeneratingSet& s,
                                        int radius_cap = 32,
                                        std::size_t element_cap =
                                            kDefaultBallCap) {
  if (s.group().kind != GroupKind::heisenberg)
    throw ValidationError("expected a Heisenberg generating set");
  const GroupElement targets[] = {kGenX, kGenY, kGenZ};
  const char* names[] = {"x", "y", "z"};
  for (int i = 0; i < 3; ++i) {
    if (!word_norm(s, targets[i], radius_cap, element_cap))
      throw ValidationError(
          std::string("generating set does not reach ") + names[i] +
          " within radius " + std::to_string(radius_cap) +
          " (it may not generate the group)");
  }
}

}  // namespace hwire
