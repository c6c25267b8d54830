#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hwire/errors.hpp"

namespace hwire {

/// Element of the discrete Heisenberg group under the Z^3 identification:
///   (a,b,c) * (a',b',c') = (a+a', b+b', c+c'+a*b').
/// The same triple doubles as a point of Z^d (d <= 3) for lattice groups,
/// where multiplication degenerates to componentwise addition.
struct GroupElement {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

std::int64_t checked_add(std::int64_t x, std::int64_t y, const char* component);
std::int64_t checked_sub(std::int64_t x, std::int64_t y, const char* component);
std::int64_t checked_mul(std::int64_t x, std::int64_t y, const char* component);

/// Exact Heisenberg product; throws OverflowError naming the component.
GroupElement mul(const GroupElement& p, const GroupElement& q);

/// Exact inverse (-a, -b, -c+ab).
GroupElement inv(const GroupElement& p);

/// Expansion homomorphism (a,b,c) -> (k a, k b, k^2 c), k >= 1.
GroupElement lambda_k(std::int64_t k, const GroupElement& p);

constexpr GroupElement kIdentity{0, 0, 0};
constexpr GroupElement kGenX{1, 0, 0};
constexpr GroupElement kGenY{0, 1, 0};
constexpr GroupElement kGenZ{0, 0, 1};

std::string to_string(const GroupElement& g);

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

/// Which multiplication rule a generating set lives under. The Heisenberg
/// group is the primary instance; lattice covers Z^d (d <= 3) for
/// cross-checks and for retargeting lattice embeddings.
enum class GroupKind { heisenberg, lattice };

struct Group {
  GroupKind kind = GroupKind::heisenberg;
  int dim = 3;  // meaningful for lattice only

  GroupElement identity() const { return kIdentity; }
  GroupElement mul(const GroupElement& p, const GroupElement& q) const;
  GroupElement inv(const GroupElement& p) const;
  /// Growth order of the group: 4 for Heisenberg, d for Z^d.
  int growth_order() const { return kind == GroupKind::heisenberg ? 4 : dim; }

  friend bool operator==(const Group&, const Group&) = default;
};

inline Group heisenberg_group() { return Group{GroupKind::heisenberg, 3}; }
Group lattice_group(int dim);

/// One letter of a word: index into a generating set plus a sign.
/// S and S^-1 are kept implicit; the set stores one representative per pair.
struct GeneratorLabel {
  std::int32_t index = 0;
  std::int32_t sign = 1;  // +1 or -1

  GeneratorLabel inverse() const { return {index, -sign}; }
  friend bool operator==(const GeneratorLabel&, const GeneratorLabel&) = default;
};

using Word = std::vector<GeneratorLabel>;

/// Reversal with all signs flipped; evaluates to the inverse element.
Word inverse_word(const Word& w);

class GeneratingSet {
 public:
  /// Validates: no identity, no duplicates, no element equal to another's
  /// inverse. Whether the set actually generates is checked lazily via
  /// ensure_generates() since it needs a BFS.
  GeneratingSet(Group group, std::vector<GroupElement> elements,
                std::vector<std::string> names = {});

  const Group& group() const { return group_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& element(std::size_t i) const { return elements_.at(i); }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  /// Element the label stands for (generator or its inverse).
  GroupElement letter_value(GeneratorLabel l) const;

  /// Degree of the Cayley graph: |S union S^-1| = 2 |S| (no involutions here).
  int cayley_degree() const { return static_cast<int>(2 * elements_.size()); }

  bool is_xy() const;
  bool is_xyz() const;

  friend bool operator==(const GeneratingSet&, const GeneratingSet&) = default;

 private:
  Group group_;
  std::vector<GroupElement> elements_;
  std::vector<std::string> names_;
};

/// Text syntax: comma-separated items, each a name from {x,y,z} or an
/// explicit triple "a:b:c" with decimal integers ("a:b" pairs for Z^2).
GeneratingSet parse_generating_set(const std::string& text,
                                   Group group = heisenberg_group());
std::string format_generating_set(const GeneratingSet& s);

GeneratingSet xy_genset();
GeneratingSet xyz_genset();
GeneratingSet standard_lattice_genset(int dim);

/// Left-to-right product start * s1 * ... * sn. Throws DomainError on an
/// out-of-range letter index, OverflowError on overflow.
GroupElement eval_word(const GroupElement& start, const Word& w,
                       const GeneratingSet& s);

}  // namespace hwire
