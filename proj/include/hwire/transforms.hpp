#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hwire/random_wiring.hpp"
#include "hwire/wiring.hpp"

namespace hwire {

/// Coloring that untangles a k-wiring: vertices get colors in [0, 16k),
/// inner road points in [16k, 32k), and nearby features of non-adjacent
/// edges never share a color.
struct ColoringAssignment {
  int k = 0;
  std::vector<int> vertex_color;  // aligned with vertex ids

  struct PointEdgeKey {
    GroupElement p;
    int edge;
    friend bool operator==(const PointEdgeKey&, const PointEdgeKey&) = default;
  };
  struct PointEdgeKeyHash {
    std::size_t operator()(const PointEdgeKey& k) const noexcept {
      return GroupElementHash{}(k.p) * 1000003u ^
             static_cast<std::size_t>(k.edge);
    }
  };
  std::unordered_map<PointEdgeKey, int, PointEdgeKeyHash> point_edge_color;

  int color_of_vertex(int v) const { return vertex_color.at(static_cast<std::size_t>(v)); }
  int color_of_point(const GroupElement& p, int edge) const;
};

/// 4*mod4(p1) + mod4(p2) with the Euclidean remainder, so alpha(p)=alpha(q)
/// iff p1=q1 and p2=q2 mod 4 for all integers.
int position_color(const GroupElement& p);

/// Requires a verified k-wiring over {x,y} with distinct neighbor images
/// (k = its actual load).
ColoringAssignment assign_coloring(const CombinatorialWiring& f);

struct ReliefConfig {
  /// K = factor * k. The default 1000 is the value the volume and
  /// disjointness constants are stated for; overrides must keep factor*k
  /// even and > 64k and exist for stress experiments only.
  int factor = 1000;
};

/// The rewriting word for one step s of an {x,y}-road, between colors
/// alpha -> alpha2:
///   s^(K/2+alpha) y z^(alpha2-alpha) y^-1 s^(K/2-alpha)   (s in {x, x^-1})
/// with x and y swapped in the other case. Output is over {x,y,z}; length
/// K + 2 + |alpha2 - alpha|.
Word relief_word(GeneratorLabel s, int alpha, int alpha2, std::int64_t K);

/// k-wiring over {x,y} with distinct neighbor images -> combinatorial
/// embedding over {x,y,z}: vertices go to z^c(v) * lambda_K(fv); every road
/// step is rewritten through relief_word.
CombinatorialWiring burden_relief(const CombinatorialWiring& f,
                                  const ReliefConfig& config = {});

/// Embedding over {x,y,z} -> embedding over {x,y}: scale by lambda_2 and
/// substitute s -> s^2, z -> (x y x^-1 y^-1)^4, z^-1 -> (y x y^-1 x^-1)^4.
CombinatorialWiring remove_z(const CombinatorialWiring& f);

/// Metric-comparison data between {x,y} and a generating set S:
/// M bounds ||.|| / ||.||_S both ways, m is the expansion scale, w_x / w_y
/// are canonical shortest S-words for x and y.
struct BilipData {
  int M = 0;
  int m = 0;
  Word w_x;
  Word w_y;
};

BilipData bilip_and_m(const GeneratingSet& s, int radius_cap = 64,
                      std::size_t element_cap = kDefaultBallCap);

/// Embedding over {x,y} -> embedding over S: scale by lambda_m with every
/// letter repeated m times, then substitute x -> w_x and y -> w_y
/// (inverse letters get the reversed, sign-flipped word).
CombinatorialWiring to_general_genset(const CombinatorialWiring& f,
                                      const GeneratingSet& s,
                                      const BilipData& bilip);
CombinatorialWiring to_general_genset(const CombinatorialWiring& f,
                                      const GeneratingSet& s);

struct PipelineConfig {
  RandomWiringConfig wiring;
  ReliefConfig relief;
  std::size_t ball_cap = kDefaultBallCap;
  MetricsLimits metrics;
};

struct StageReport {
  std::string stage;
  WiringMetrics metrics;
  VerificationReport verify;
  /// Upper bound this stage's volume ratio must respect, relative to the
  /// previous stage's volume (1.0 = not applicable).
  double volume_ratio_bound = 1.0;
  double volume_ratio = 1.0;
};

struct PipelineResult {
  CombinatorialWiring wiring;        // final embedding over the target set
  std::vector<StageReport> stages;   // wire, relief, remove-z, general-genset
  GenerateResult generation;
  BilipData bilip;

  bool all_verified() const;
};

/// Volume-ratio bound for the general-genset stage, computed from the
/// expansion scale and the substitution word length:
/// |B^{x,y}_{floor(m/2)}| * |B^S_{floor(L/2)}|.
double general_genset_volume_bound(const GeneratingSet& s, const BilipData& b,
                                   std::size_t ball_cap = kDefaultBallCap);

/// Full pipeline: random wiring over {x,y}, burden relief, z removal,
/// retarget to S. Every stage is verified; reports are retained.
PipelineResult embed_graph(const FiniteGraph& g, const GeneratingSet& s,
                           const PipelineConfig& config = {});

std::string stage_report_to_json(const StageReport& r);

}  // namespace hwire
