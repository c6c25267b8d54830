#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hwire/wiring.hpp"

namespace hwire {

/// Piecewise-linear curve in R^d, coordinates taken as doubles at the API
/// edge and promoted to exact rationals internally.
struct Polyline {
  std::vector<std::vector<double>> points;
};

using LatticePoint = std::vector<std::int64_t>;

/// Set of lattice points q whose closed unit cube q + [0,1]^d meets the
/// polyline; two cubes are adjacent when they share a vertex (Chebyshev
/// distance <= 1).
struct CubeGraph {
  int dim = 0;
  std::vector<LatticePoint> cubes;  // sorted lexicographically

  bool contains(const LatticePoint& q) const;
};

/// Exact closed-cube intersection, segment by segment. Boundary grazing
/// counts; a zero-length polyline yields the cube set of its single point.
CubeGraph cubes_touched(const Polyline& poly);

struct LatticePathResult {
  /// Unit-step path in Z^d from floor(first point) to floor(last point);
  /// every vertex lies within l2 distance sqrt(d) of the polyline.
  std::vector<LatticePoint> path;
  std::size_t cube_count = 0;  // |Q|
  int bfs_depth = 0;           // cube-graph distance between the end cubes
};

/// BFS through the cube graph, realized along the cubes' 1-skeletons:
/// between consecutive cubes the path walks to the lexicographically lowest
/// shared corner, moving axes in increasing order. The tube bound and the
/// floor-endpoint law are verified on every call.
LatticePathResult lattice_path(const Polyline& poly);

/// A straight-line / polyline drawing of a graph in R^d.
struct RdEmbedding {
  int dim = 0;
  std::vector<std::vector<double>> vertices;
  struct Edge {
    int u = 0;
    int v = 0;
    std::vector<std::vector<double>> points;
  };
  std::vector<Edge> edges;
};

/// JSON: { "d": int, "vertices": [[...],...],
///         "edges": [ { "u": int, "v": int, "points": [[...],...] }, ... ] }
RdEmbedding rd_embedding_from_json(const std::string& text);
std::string rd_embedding_to_json(const RdEmbedding& e);

struct ConvertResult {
  CombinatorialWiring wiring;  // over the standard basis of Z^d
  VerificationReport report;
  std::vector<LatticePathResult> edge_paths;
  /// Numerator of the exact scale (a multiple of 1/1024, >= 3 sqrt(d)).
  std::int64_t scale_num = 0;
  std::int64_t scale_den = 1024;
};

/// Scales a 1-thick drawing by (a rational just above) 3 sqrt(d), floors the
/// vertices and routes each edge with lattice_path. The 1-thickness of the
/// input is checked exactly; a violating pair raises ValidationError naming
/// it. Supported dimensions: 2 and 3 (lattice wirings reuse the triple
/// element type).
ConvertResult convert_embedding(const RdEmbedding& drawing);

struct RetargetResult {
  CombinatorialWiring wiring;
  VerificationReport report;
  int M = 0;
  int m = 0;
};

/// Re-targets a standard-basis lattice wiring to Cay(Z^d, S): scale by m and
/// replace each basis step with the canonical shortest S-word for it.
/// Throws ValidationError when S fails to reach some basis vector within the
/// radius cap.
RetargetResult retarget_zd(const CombinatorialWiring& f,
                           const GeneratingSet& s, int radius_cap = 32,
                           std::size_t element_cap = kDefaultBallCap);

}  // namespace hwire
