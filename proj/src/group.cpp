#include "hwire/group.hpp"

#include <algorithm>
#include <sstream>

namespace hwire {

namespace {

[[noreturn]] void throw_overflow(const char* component) {
  throw OverflowError(std::string("arithmetic overflow in component '") +
                      component + "'");
}

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer (Steele, Lea, Flood 2014)
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::int64_t checked_add(std::int64_t x, std::int64_t y, const char* component) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw_overflow(component);
  return r;
}

std::int64_t checked_sub(std::int64_t x, std::int64_t y, const char* component) {
  std::int64_t r;
  if (__builtin_sub_overflow(x, y, &r)) throw_overflow(component);
  return r;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y, const char* component) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw_overflow(component);
  return r;
}

GroupElement mul(const GroupElement& p, const GroupElement& q) {
  GroupElement r;
  r.a = checked_add(p.a, q.a, "a");
  r.b = checked_add(p.b, q.b, "b");
  r.c = checked_add(checked_add(p.c, q.c, "c"), checked_mul(p.a, q.b, "c"), "c");
  return r;
}

GroupElement inv(const GroupElement& p) {
  GroupElement r;
  r.a = checked_sub(0, p.a, "a");
  r.b = checked_sub(0, p.b, "b");
  r.c = checked_add(checked_sub(0, p.c, "c"), checked_mul(p.a, p.b, "c"), "c");
  return r;
}

GroupElement lambda_k(std::int64_t k, const GroupElement& p) {
  if (k < 1) throw DomainError("lambda_k requires k >= 1");
  GroupElement r;
  r.a = checked_mul(k, p.a, "a");
  r.b = checked_mul(k, p.b, "b");
  r.c = checked_mul(checked_mul(k, k, "c"), p.c, "c");
  return r;
}

std::string to_string(const GroupElement& g) {
  std::ostringstream os;
  os << "(" << g.a << "," << g.b << "," << g.c << ")";
  return os.str();
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(g.a));
  h = mix64(h ^ static_cast<std::uint64_t>(g.b));
  h = mix64(h ^ static_cast<std::uint64_t>(g.c));
  return static_cast<std::size_t>(h);
}

GroupElement Group::mul(const GroupElement& p, const GroupElement& q) const {
  if (kind == GroupKind::heisenberg) return hwire::mul(p, q);
  GroupElement r;
  r.a = checked_add(p.a, q.a, "a");
  r.b = checked_add(p.b, q.b, "b");
  r.c = checked_add(p.c, q.c, "c");
  return r;
}

GroupElement Group::inv(const GroupElement& p) const {
  if (kind == GroupKind::heisenberg) return hwire::inv(p);
  return GroupElement{checked_sub(0, p.a, "a"), checked_sub(0, p.b, "b"),
                      checked_sub(0, p.c, "c")};
}

Group lattice_group(int dim) {
  if (dim < 1 || dim > 3)
    throw ValidationError("lattice group dimension must be in [1,3]");
  return Group{GroupKind::lattice, dim};
}

Word inverse_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& l : r) l.sign = -l.sign;
  return r;
}

GeneratingSet::GeneratingSet(Group group, std::vector<GroupElement> elements,
                             std::vector<std::string> names)
    : group_(group), elements_(std::move(elements)), names_(std::move(names)) {
  if (elements_.empty())
    throw ValidationError("generating set must be non-empty");
  if (names_.empty()) {
    for (const auto& e : elements_) names_.push_back(hwire::to_string(e));
  }
  if (names_.size() != elements_.size())
    throw ValidationError("generating set names/elements size mismatch");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] == group_.identity())
      throw ValidationError("generating set contains the identity at index " +
                            std::to_string(i));
    for (std::size_t j = i + 1; j < elements_.size(); ++j) {
      if (elements_[i] == elements_[j])
        throw ValidationError("duplicate generator at indices " +
                              std::to_string(i) + "," + std::to_string(j));
      if (elements_[j] == group_.inv(elements_[i]))
        throw ValidationError("generators at indices " + std::to_string(i) +
                              "," + std::to_string(j) +
                              " are mutually inverse");
    }
  }
  if (group_.kind == GroupKind::lattice) {
    for (const auto& e : elements_) {
      if ((group_.dim < 3 && e.c != 0) || (group_.dim < 2 && e.b != 0))
        throw ValidationError(
            "lattice generator uses coordinates beyond the group dimension");
    }
  }
}

GroupElement GeneratingSet::letter_value(GeneratorLabel l) const {
  if (l.index < 0 || static_cast<std::size_t>(l.index) >= elements_.size())
    throw DomainError("generator index " + std::to_string(l.index) +
                      " out of range for generating set of size " +
                      std::to_string(elements_.size()));
  const GroupElement& e = elements_[static_cast<std::size_t>(l.index)];
  return l.sign >= 0 ? e : group_.inv(e);
}

bool GeneratingSet::is_xy() const {
  return group_.kind == GroupKind::heisenberg && elements_.size() == 2 &&
         elements_[0] == kGenX && elements_[1] == kGenY;
}

bool GeneratingSet::is_xyz() const {
  return group_.kind == GroupKind::heisenberg && elements_.size() == 3 &&
         elements_[0] == kGenX && elements_[1] == kGenY &&
         elements_[2] == kGenZ;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& tok) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ValidationError("bad integer '" + tok + "' in generating set");
  }
  if (pos != tok.size())
    throw ValidationError("bad integer '" + tok + "' in generating set");
  return v;
}

}  // namespace

GeneratingSet parse_generating_set(const std::string& text, Group group) {
  std::vector<GroupElement> elems;
  std::vector<std::string> names;
  for (const std::string& raw : split(text, ',')) {
    std::string item = strip(raw);
    if (item.empty())
      throw ValidationError("empty item in generating set '" + text + "'");
    if (item == "x" && group.kind == GroupKind::heisenberg) {
      elems.push_back(kGenX);
    } else if (item == "y" && group.kind == GroupKind::heisenberg) {
      elems.push_back(kGenY);
    } else if (item == "z" && group.kind == GroupKind::heisenberg) {
      elems.push_back(kGenZ);
    } else {
      auto parts = split(item, ':');
      int want = group.kind == GroupKind::heisenberg ? 3 : group.dim;
      if (static_cast<int>(parts.size()) != want)
        throw ValidationError("generating set item '" + item + "' must have " +
                              std::to_string(want) + " components");
      GroupElement e;
      e.a = parse_int(strip(parts[0]));
      if (parts.size() > 1) e.b = parse_int(strip(parts[1]));
      if (parts.size() > 2) e.c = parse_int(strip(parts[2]));
      elems.push_back(e);
    }
    names.push_back(item);
  }
  return GeneratingSet(group, std::move(elems), std::move(names));
}

std::string format_generating_set(const GeneratingSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s.name(i);
  }
  return out;
}

GeneratingSet xy_genset() { return parse_generating_set("x,y"); }
GeneratingSet xyz_genset() { return parse_generating_set("x,y,z"); }

GeneratingSet standard_lattice_genset(int dim) {
  Group g = lattice_group(dim);
  std::vector<GroupElement> elems;
  std::vector<std::string> names;
  const char* axis[] = {"e1", "e2", "e3"};
  for (int i = 0; i < dim; ++i) {
    GroupElement e;
    (i == 0 ? e.a : i == 1 ? e.b : e.c) = 1;
    elems.push_back(e);
    names.push_back(axis[i]);
  }
  return GeneratingSet(g, std::move(elems), std::move(names));
}

GroupElement eval_word(const GroupElement& start, const Word& w,
                       const GeneratingSet& s) {
  GroupElement acc = start;
  for (const GeneratorLabel& l : w)
    acc = s.group().mul(acc, s.letter_value(l));
  return acc;
}

}  // namespace hwire
