#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hwire/cayley.hpp"
#include "hwire/graph.hpp"
#include "hwire/wiring.hpp"

namespace hwire {

struct RandomWiringConfig {
  /// Growth order of the ambient group (4 for the Heisenberg group; set to d
  /// for Z^d cross-checks). Integer so the sampling radius can be computed
  /// with integer-exact ceilings.
  int alpha = 4;
  /// Load events fire at threshold = ceil(load_threshold_constant * ln(1+n)).
  /// The natural-log base is a convention; changing it only rescales this
  /// constant.
  double load_threshold_constant = 3.0;
  int max_attempts = 200;
  std::uint64_t seed = 0;
};

/// ceil(n^{1/(alpha-1)}): the smallest r >= 1 with r^{alpha-1} >= n,
/// decided by integer power comparison.
int radius_for(std::int64_t n, int alpha);

/// ceil(C * ln(1+n)), the bad-event threshold for load checks.
int load_threshold(std::int64_t n, double load_threshold_constant);

/// Which bad events a sampled wiring triggered, at the given threshold:
///   e1 - some element receives >= threshold vertices,
///   e2 - some element lies on >= threshold roads,
///   e3 - some edge has equal endpoint images.
struct EventOutcome {
  bool e1 = false;
  bool e2 = false;
  bool e3 = false;
  int threshold = 0;

  bool any() const { return e1 || e2 || e3; }
};

/// One draw of the randomized wiring: vertex positions uniform in B_r (using
/// the ball's deterministic enumeration), roads along the canonical
/// geodesics g_u gamma_{g_u^-1 g_v} over the orientation smaller->larger.
/// The ball must have radius >= 2 * radius_for(n, alpha); the RNG stream is
/// the (seed, attempt) substream.
std::pair<CombinatorialWiring, EventOutcome> sample_wiring(
    const FiniteGraph& g, const GeneratingSet& s,
    const RandomWiringConfig& config, const Ball& ball,
    std::uint64_t attempt);

struct GenerateResult {
  CombinatorialWiring wiring;
  int radius = 0;      // sampling radius r
  int attempts = 0;    // attempts consumed (the accepted one included)
  int threshold = 0;
  // How often each event fired across the failed attempts.
  int e1_count = 0;
  int e2_count = 0;
  int e3_count = 0;
};

/// Retries sample_wiring until no bad event occurs. The result is guaranteed
/// to have image inside B_{2r}, load < threshold and distinct neighbor
/// images. Throws GenerationError when max_attempts is exhausted.
GenerateResult generate(const FiniteGraph& g, const GeneratingSet& s,
                        const RandomWiringConfig& config,
                        std::size_t ball_cap = kDefaultBallCap);

/// Monte-Carlo estimate of the event rates for one graph family member per n.
struct EventRateRow {
  int n = 0;
  int radius = 0;
  std::int64_t ball_r_size = 0;   // |B_r|
  int trials = 0;
  double rate_e1 = 0, rate_e2 = 0, rate_e3 = 0;
  double stderr_e1 = 0, stderr_e2 = 0, stderr_e3 = 0;
  /// Union bound d*n/|B_r| on P[E3].
  double e3_union_bound = 0;
};

std::vector<EventRateRow> monte_carlo(const std::vector<int>& ns, int degree,
                                      const GeneratingSet& s,
                                      const RandomWiringConfig& config,
                                      int trials,
                                      std::size_t ball_cap = kDefaultBallCap);

}  // namespace hwire
