#pragma once

/** @file sets.hpp
 *  @brief Finite ground sets, subsets, coats, refinements and generated algebras.
 *
 *  Subsets of a ground set of n elements are bit masks: element i of the
 *  ground set is bit i. A coat is any indexed family of subsets containing
 *  the empty set and the whole ground set. Its refinement collects every
 *  X & Y and X & !Y for X, Y in the coat, and the generated algebra is the
 *  closure of the coat under complement and union.
 *
 *  Every type here is immutable once constructed.
 */

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace quasi {

inline constexpr std::size_t kMaxGroundSize = 24;
/// Exhaustive loops over all 2^n subsets run by default only up to this n.
inline constexpr std::size_t kDefaultExhaustiveLimit = 16;

class SubsetMask {
 public:
  using Bits = std::uint32_t;

  constexpr SubsetMask() = default;
  constexpr SubsetMask(Bits bits, unsigned width) : bits_(bits), width_(width) {
    assert(width <= 32);
    assert(width == 32 || (bits >> width) == 0);
  }

  static constexpr SubsetMask empty(unsigned width) { return {0, width}; }
  static constexpr SubsetMask full(unsigned width) {
    return {width == 32 ? ~Bits{0} : ((Bits{1} << width) - 1), width};
  }
  static constexpr SubsetMask singleton(unsigned element, unsigned width) {
    return {Bits{1} << element, width};
  }

  constexpr Bits bits() const noexcept { return bits_; }
  constexpr unsigned width() const noexcept { return width_; }
  constexpr bool is_empty() const noexcept { return bits_ == 0; }
  constexpr bool is_full() const noexcept { return *this == full(width_); }
  constexpr bool contains(unsigned element) const noexcept { return (bits_ >> element) & 1u; }
  constexpr int count() const noexcept { return std::popcount(bits_); }

  constexpr bool is_subset_of(SubsetMask other) const noexcept {
    assert(width_ == other.width_);
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool is_disjoint_from(SubsetMask other) const noexcept {
    assert(width_ == other.width_);
    return (bits_ & other.bits_) == 0;
  }

  constexpr SubsetMask complement() const noexcept { return {full(width_).bits_ & ~bits_, width_}; }

  friend constexpr SubsetMask operator&(SubsetMask a, SubsetMask b) noexcept {
    assert(a.width_ == b.width_);
    return {a.bits_ & b.bits_, a.width_};
  }
  friend constexpr SubsetMask operator|(SubsetMask a, SubsetMask b) noexcept {
    assert(a.width_ == b.width_);
    return {a.bits_ | b.bits_, a.width_};
  }
  /// Set difference a \ b.
  friend constexpr SubsetMask operator-(SubsetMask a, SubsetMask b) noexcept {
    assert(a.width_ == b.width_);
    return {a.bits_ & ~b.bits_, a.width_};
  }

  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
  friend constexpr auto operator<=>(SubsetMask a, SubsetMask b) noexcept {
    if (auto c = a.width_ <=> b.width_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  Bits bits_ = 0;
  unsigned width_ = 0;
};

/// Omega minus a.
constexpr SubsetMask complement(SubsetMask a) noexcept { return a.complement(); }

struct SubsetMaskHash {
  std::size_t operator()(SubsetMask m) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{m.width()} << 32) | m.bits());
  }
};

/// An ordered list of distinct element labels.
class GroundSet {
 public:
  GroundSet() = default;

  explicit GroundSet(std::vector<std::string> labels, std::size_t cap = kMaxGroundSize)
      : labels_(std::move(labels)) {
    if (cap > 32) throw std::invalid_argument("ground set cap exceeds mask width 32");
    if (labels_.empty()) throw std::invalid_argument("ground set must not be empty");
    if (labels_.size() > cap) {
      throw std::invalid_argument("ground set has " + std::to_string(labels_.size()) +
                                  " elements; cap is " + std::to_string(cap));
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw std::invalid_argument("empty element label");
      if (!index_.emplace(labels_[i], static_cast<unsigned>(i)).second) {
        throw std::invalid_argument("duplicate element label '" + labels_[i] + "'");
      }
    }
  }

  /// Ground set {1, ..., n} with decimal labels.
  static GroundSet numbered(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return GroundSet(std::move(labels));
  }

  std::size_t size() const noexcept { return labels_.size(); }
  unsigned width() const noexcept { return static_cast<unsigned>(labels_.size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(unsigned i) const { return labels_.at(i); }

  std::optional<unsigned> index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  SubsetMask empty_set() const noexcept { return SubsetMask::empty(width()); }
  SubsetMask omega() const noexcept { return SubsetMask::full(width()); }

  /// Builds a mask from labels; throws std::invalid_argument on an unknown label.
  SubsetMask subset(const std::vector<std::string>& members) const {
    SubsetMask::Bits bits = 0;
    for (const auto& m : members) {
      auto idx = index_of(m);
      if (!idx) throw std::invalid_argument("unknown element label '" + m + "'");
      bits |= SubsetMask::Bits{1} << *idx;
    }
    return {bits, width()};
  }

  /// "{1,2}" style rendering in ground order; "{}" for the empty set.
  std::string format(SubsetMask m) const {
    std::string out = "{";
    bool first = true;
    for (unsigned i = 0; i < width(); ++i) {
      if (!m.contains(i)) continue;
      if (!first) out += ',';
      out += labels_[i];
      first = false;
    }
    return out + "}";
  }

  friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, unsigned> index_;
};

/// A family of subsets containing the empty set and the whole ground set.
class Coat {
 public:
  Coat(GroundSet ground, std::vector<SubsetMask> members)
      : ground_(std::move(ground)), members_(std::move(members)) {
    std::unordered_set<SubsetMask, SubsetMaskHash> seen;
    for (auto m : members_) {
      if (m.width() != ground_.width()) throw std::invalid_argument("coat member width mismatch");
      if (!seen.insert(m).second) {
        throw std::invalid_argument("duplicate coat member " + ground_.format(m));
      }
    }
    if (!seen.contains(ground_.empty_set())) {
      throw std::invalid_argument("coat must contain empty");
    }
    if (!seen.contains(ground_.omega())) throw std::invalid_argument("coat must contain omega");
  }

  /// {empty, omega}.
  static Coat trivial(GroundSet ground) {
    auto e = ground.empty_set();
    auto o = ground.omega();
    return Coat(std::move(ground), {e, o});
  }

  /// Every subset of the ground set, in mask order.
  static Coat power_set(GroundSet ground) {
    if (ground.size() > 20) throw std::invalid_argument("power-set coat too large");
    std::vector<SubsetMask> all;
    for (SubsetMask::Bits b = 0; b < (SubsetMask::Bits{1} << ground.size()); ++b) {
      all.emplace_back(b, ground.width());
    }
    return Coat(std::move(ground), std::move(all));
  }

  const GroundSet& ground() const noexcept { return ground_; }
  const std::vector<SubsetMask>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  SubsetMask operator[](std::size_t i) const { return members_.at(i); }

  std::optional<std::size_t> index_of(SubsetMask m) const {
    auto it = std::find(members_.begin(), members_.end(), m);
    if (it == members_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
  }
  bool contains(SubsetMask m) const { return index_of(m).has_value(); }

 private:
  GroundSet ground_;
  std::vector<SubsetMask> members_;
};

enum class WitnessKind { meet, diff };

/// Records that a refinement member equals coat[x] & coat[y] (meet) or
/// coat[x] & !coat[y] (diff).
struct RefinementWitness {
  std::size_t x = 0;
  std::size_t y = 0;
  WitnessKind kind = WitnessKind::meet;

  SubsetMask evaluate(const Coat& c) const {
    return kind == WitnessKind::meet ? c[x] & c[y] : c[x] & complement(c[y]);
  }
  friend bool operator==(const RefinementWitness&, const RefinementWitness&) = default;
};

class Refinement {
 public:
  Refinement() = default;
  Refinement(std::vector<SubsetMask> members,
             std::vector<std::vector<RefinementWitness>> provenance)
      : members_(std::move(members)), provenance_(std::move(provenance)) {
    if (members_.size() != provenance_.size()) {
      throw std::invalid_argument("refinement provenance size mismatch");
    }
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (provenance_[i].empty()) throw std::invalid_argument("refinement member without witness");
      if (!index_.emplace(members_[i], i).second) {
        throw std::invalid_argument("duplicate refinement member");
      }
    }
  }

  const std::vector<SubsetMask>& members() const noexcept { return members_; }
  const std::vector<std::vector<RefinementWitness>>& provenance() const noexcept {
    return provenance_;
  }
  std::size_t size() const noexcept { return members_.size(); }

  std::optional<std::size_t> index_of(SubsetMask m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(SubsetMask m) const { return index_.contains(m); }

 private:
  std::vector<SubsetMask> members_;
  std::vector<std::vector<RefinementWitness>> provenance_;
  std::unordered_map<SubsetMask, std::size_t, SubsetMaskHash> index_;
};

/// All X & Y and X & !Y over ordered coat pairs, deduplicated by mask value.
/// Coat members come first in coat order (each is witnessed by X & omega);
/// the remaining members follow in order of first appearance.
inline Refinement refine(const Coat& c) {
  std::vector<SubsetMask> members = c.members();
  std::unordered_map<SubsetMask, std::size_t, SubsetMaskHash> index;
  for (std::size_t i = 0; i < members.size(); ++i) index.emplace(members[i], i);
  std::vector<std::vector<RefinementWitness>> provenance(members.size());

  auto record = [&](SubsetMask m, RefinementWitness w) {
    auto [it, inserted] = index.emplace(m, members.size());
    if (inserted) {
      members.push_back(m);
      provenance.emplace_back();
    }
    provenance[it->second].push_back(w);
  };
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      record(c[x] & c[y], {x, y, WitnessKind::meet});
      record(c[x] & complement(c[y]), {x, y, WitnessKind::diff});
    }
  }
  return Refinement(std::move(members), std::move(provenance));
}

/// A family closed under complement and union; members sorted by mask value.
class AlgebraFamily {
 public:
  AlgebraFamily() = default;
  explicit AlgebraFamily(std::vector<SubsetMask> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  const std::vector<SubsetMask>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

  bool contains(SubsetMask m) const { return std::binary_search(members_.begin(), members_.end(), m); }
  std::optional<std::size_t> index_of(SubsetMask m) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), m);
    if (it == members_.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
  }

 private:
  std::vector<SubsetMask> members_;
};

/// Minimal nonempty blocks of the partition induced by the coat: two
/// elements share an atom iff every coat member contains both or neither.
inline std::vector<SubsetMask> atoms(const Coat& c) {
  const unsigned n = c.ground().width();
  std::map<std::vector<bool>, SubsetMask::Bits> blocks;
  for (unsigned e = 0; e < n; ++e) {
    std::vector<bool> signature(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) signature[i] = c[i].contains(e);
    blocks[signature] |= SubsetMask::Bits{1} << e;
  }
  std::vector<SubsetMask> out;
  for (const auto& [sig, bits] : blocks) out.emplace_back(bits, n);
  std::sort(out.begin(), out.end());
  return out;
}

/// The smallest algebra containing the coat. On a finite ground set the
/// closure under complement and union is exactly the set of unions of atoms,
/// which is how it is enumerated here.
inline AlgebraFamily generate_algebra(const Coat& c) {
  const auto blocks = atoms(c);
  const std::size_t k = blocks.size();
  assert(k <= c.ground().size());
  std::vector<SubsetMask> members;
  members.reserve(std::size_t{1} << k);
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << k); ++pick) {
    SubsetMask m = c.ground().empty_set();
    for (std::size_t i = 0; i < k; ++i) {
      if ((pick >> i) & 1u) m = m | blocks[i];
    }
    members.push_back(m);
  }
  return AlgebraFamily(std::move(members));
}

}  // namespace quasi
