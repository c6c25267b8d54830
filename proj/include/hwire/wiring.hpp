#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hwire/cayley.hpp"
#include "hwire/graph.hpp"
#include "hwire/group.hpp"

namespace hwire {

/// Vertex -> element map plus edge -> road map; the object every pipeline
/// stage consumes and produces. Roads are kept as start + word so
/// multi-million-step roads stay compact.
struct CombinatorialWiring {
  GeneratingSet genset;
  FiniteGraph graph;
  std::vector<GroupElement> vertex_map;  // aligned with vertex ids
  std::vector<Walk> roads;               // aligned with edge ids
};

/// Per-element vertex-load and road-load counts. Road-load counts each edge
/// at most once per element (set semantics), matching the definition of a
/// road as a point set.
struct LoadMap {
  struct Counts {
    int vertex_load = 0;
    int road_load = 0;
  };
  std::unordered_map<GroupElement, Counts, GroupElementHash> counts;

  int load() const;
};

/// Exact counts; intended for moderate wirings (the verifier computes the
/// aggregate load with a streaming pass instead).
LoadMap load_of(const CombinatorialWiring& f);

enum class DiameterMode { exact, proxy };

std::string to_string(DiameterMode m);

struct WiringMetrics {
  std::int64_t volume = 0;
  std::int64_t diameter = 0;
  DiameterMode diameter_mode = DiameterMode::exact;
  int load = 0;
  std::int64_t road_length_total = 0;
};

struct MetricsLimits {
  std::size_t ball_cap = kDefaultBallCap;
  // Largest image size for which all-pairs exact diameter is attempted.
  std::size_t max_exact_image = 4096;
};

/// Volume is exact in both modes. Exact diameter runs BFS distances over all
/// image pairs and throws ResourceError when the image or the required ball
/// exceeds the caps. Proxy mode doubles the eccentricity of the first vertex
/// image under the norm proxy N(g) = |a| + |b| + ceil(sqrt(|c|))
/// (Heisenberg) or the l1 norm (lattice groups).
WiringMetrics metrics_of(const CombinatorialWiring& f, DiameterMode mode,
                         const MetricsLimits& limits = {});

/// Exact if the image is small enough for the caps, proxy otherwise.
WiringMetrics metrics_auto(const CombinatorialWiring& f,
                           const MetricsLimits& limits = {});

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;  // non-empty iff pass is false
};

/// Itemized results of the wiring/embedding axioms; failures carry concrete
/// witnesses (ids and the shared element).
struct VerificationReport {
  std::vector<CheckResult> checks;
  int load = 0;
  std::optional<int> k;  // threshold the load was checked against

  const CheckResult* find(const std::string& name) const;
  bool passed(const std::string& name) const;
  /// Injectivity + disjoint roads + isolated vertices (+ structural checks).
  bool embedding_ok() const;
  /// Structural checks plus load <= k when a threshold was given.
  bool wiring_ok() const;
  bool all_ok() const;
};

/// Check names emitted by verify(), in report order.
inline constexpr const char* kCheckWalkValidity = "walk-validity";
inline constexpr const char* kCheckRoadEndpoints = "road-endpoints";
inline constexpr const char* kCheckVertexInjective = "vertex-injective";
inline constexpr const char* kCheckRoadsDisjoint = "roads-disjoint";
inline constexpr const char* kCheckVertexIsolation = "vertex-isolation";
inline constexpr const char* kCheckLoadWithinK = "load-within-k";
inline constexpr const char* kCheckNeighborsDistinct = "neighbor-images-distinct";

/// Independent verifier for every embedding/wiring property. Failures are
/// report entries, never exceptions.
VerificationReport verify(const CombinatorialWiring& f,
                          std::optional<int> k = std::nullopt);

/// Conversion bookkeeping: a combinatorial embedding yields a 1-thick
/// embedding with volume at most |Im f| * deg(Y) and diameter + 2.
struct ThickBounds {
  std::int64_t volume_bound = 0;
  std::int64_t diameter_bound = 0;
};

ThickBounds thick_embedding_bounds(const WiringMetrics& m,
                                   const GeneratingSet& s);

// --- JSON interchange -------------------------------------------------------
// { "genset": [[a,b,c],...], "n": int, "edges": [[u,v],...],
//   "vertex_map": [[a,b,c],...],
//   "roads": [ { "start":[a,b,c], "word":[[genIndex, sign],...] }, ... ] }
// Arrays are position-aligned with edge order. Lattice wirings carry a
// leading "group": "zd" and "dim": d, and arrays have d entries.

std::string wiring_to_json(const CombinatorialWiring& f);
CombinatorialWiring wiring_from_json(const std::string& text);

std::string report_to_json(const VerificationReport& r);

}  // namespace hwire
