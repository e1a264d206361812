#pragma once

/** @file quasi_measure.hpp
 *  @brief Quasi-measures on refinements and mechanical checks of their axioms.
 *
 *  A quasi-measure assigns an exact value in [0,1] to every member of the
 *  refinement of a coat. Values are keyed by mask, so two expressions that
 *  denote the same set always share one value.
 *
 *  Axioms checked by check_axioms, for all X, Y in the coat:
 *    (i)   p(empty) = 0 and p(omega) = 1
 *    (ii)  p(X) = p(X & Y) + p(X & !Y)
 *    (iii) some W contains X & Y with p(W) = p(X & Y)
 *    (iv)  some Z contains X & !Y with p(Z) = p(X & !Y)
 *    (v)   p(X) <= sum p(S_n) for every finite coat cover {S_n} of X
 *  W and Z range over the refinement (Variant::literal) or over the coat
 *  (Variant::restricted).
 */

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "cover.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "sets.hpp"

namespace quasi {

enum class Variant { literal, restricted };
enum class CoverMode { all, disjoint_only };

inline const char* to_string(Variant v) { return v == Variant::literal ? "literal" : "restricted"; }
inline const char* to_string(CoverMode m) { return m == CoverMode::all ? "all" : "disjoint-only"; }

using ValueMap = std::unordered_map<SubsetMask, QValue, SubsetMaskHash>;

class QuasiMeasure {
 public:
  /// `values` must assign exactly the members of refine(coat), with
  /// value(empty) = 0 and value(omega) = 1.
  QuasiMeasure(Coat coat, const ValueMap& values)
      : coat_(std::move(coat)), refinement_(refine(coat_)) {
    values_.reserve(refinement_.size());
    for (auto m : refinement_.members()) {
      auto it = values.find(m);
      if (it == values.end()) {
        throw std::invalid_argument("no value for refinement member " + coat_.ground().format(m));
      }
      values_.push_back(it->second);
    }
    for (const auto& [m, v] : values) {
      if (!refinement_.contains(m)) {
        throw std::invalid_argument("value assigned to " + coat_.ground().format(m) +
                                    ", which is not in the refinement");
      }
    }
    validate_endpoints();
  }

  const Coat& coat() const noexcept { return coat_; }
  const Refinement& refinement() const noexcept { return refinement_; }
  const GroundSet& ground() const noexcept { return coat_.ground(); }
  const std::vector<QValue>& values() const noexcept { return values_; }

  const QValue& value(SubsetMask m) const {
    auto idx = refinement_.index_of(m);
    if (!idx) throw std::out_of_range(ground().format(m) + " is not in the refinement");
    return values_[*idx];
  }
  const QValue& coat_value(std::size_t i) const { return value(coat_[i]); }

  /// Copy with one refinement value replaced; endpoints must stay 0 and 1.
  QuasiMeasure with_value(SubsetMask m, QValue v) const {
    auto idx = refinement_.index_of(m);
    if (!idx) throw std::out_of_range(ground().format(m) + " is not in the refinement");
    QuasiMeasure copy = *this;
    copy.values_[*idx] = std::move(v);
    copy.validate_endpoints();
    return copy;
  }

  ValueMap value_map() const {
    ValueMap out;
    for (std::size_t i = 0; i < values_.size(); ++i) out.emplace(refinement_.members()[i], values_[i]);
    return out;
  }

  friend bool operator==(const QuasiMeasure& a, const QuasiMeasure& b) {
    return a.ground() == b.ground() && a.coat_.members() == b.coat_.members() &&
           a.value_map() == b.value_map();
  }

 private:
  void validate_endpoints() const {
    if (value(ground().empty_set()) != QValue::zero()) {
      throw std::invalid_argument("value of empty must be 0");
    }
    if (value(ground().omega()) != QValue::one()) {
      throw std::invalid_argument("value of omega must be 1");
    }
  }

  Coat coat_;
  Refinement refinement_;
  std::vector<QValue> values_;
};

struct AxiomOptions {
  Variant variant = Variant::restricted;
  CoverMode cover_mode = CoverMode::all;
  /// Largest cover size enumerated for item (v); unset means |coat|.
  std::optional<std::size_t> max_cover_size;
  std::size_t witness_limit = kDefaultWitnessLimit;
};

namespace detail {

inline ItemResult endpoint_item(const QuasiMeasure& qm, const char* title) {
  ItemResult item{"i", title};
  const auto& g = qm.ground();
  item.checked = 2;
  // The QuasiMeasure constructor already enforces both; re-checked here so a
  // report never depends on how the instance was built.
  if (qm.value(g.empty_set()) != QValue::zero()) {
    item.add_violation({{{"empty", g.empty_set()}}, "p(empty) = 0", qm.value(g.empty_set()).get(), Rational(0)}, 1);
  }
  if (qm.value(g.omega()) != QValue::one()) {
    item.add_violation({{{"omega", g.omega()}}, "p(omega) = 1", qm.value(g.omega()).get(), Rational(1)}, 1);
  }
  return item;
}

inline ItemResult splitting_item(const QuasiMeasure& qm, std::string id, std::size_t witness_limit) {
  ItemResult item{std::move(id), "p(X) = p(X&Y) + p(X&!Y)"};
  const auto& c = qm.coat();
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      const auto X = c[x], Y = c[y];
      const auto meet = X & Y, diff = X & complement(Y);
      ++item.checked;
      Rational rhs = qm.value(meet).get() + qm.value(diff).get();
      if (qm.value(X).get() != rhs) {
        item.add_violation({{{"X", X}, {"Y", Y}, {"X&Y", meet}, {"X&!Y", diff}},
                            "p(X) = p(X&Y) + p(X&!Y)", qm.value(X).get(), rhs},
                           witness_limit);
      }
    }
  }
  return item;
}

/// Is there a member W of `candidates` with target ⊆ W and p(W) = p(target)?
inline bool has_outer_witness(const QuasiMeasure& qm, SubsetMask target,
                              const std::vector<SubsetMask>& candidates) {
  const auto& v = qm.value(target);
  for (auto w : candidates) {
    if (target.is_subset_of(w) && qm.value(w) == v) return true;
  }
  return false;
}

inline bool has_inner_witness(const QuasiMeasure& qm, SubsetMask target,
                              const std::vector<SubsetMask>& candidates) {
  const auto& v = qm.value(target);
  for (auto k : candidates) {
    if (k.is_subset_of(target) && qm.value(k) == v) return true;
  }
  return false;
}

enum class Piece { meet, diff };

inline ItemResult outer_witness_item(const QuasiMeasure& qm, std::string id, Piece piece,
                                     const std::vector<SubsetMask>& candidates,
                                     const char* pool_name, std::size_t witness_limit) {
  const bool meet = piece == Piece::meet;
  const std::string target_name = meet ? "X&Y" : "X&!Y";
  const std::string relation = std::string("exists W in ") + pool_name + " with " + target_name +
                               " subset of W and p(W) = p(" + target_name + ")";
  ItemResult item{std::move(id), relation};
  const auto& c = qm.coat();
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      const auto target = meet ? c[x] & c[y] : c[x] & complement(c[y]);
      ++item.checked;
      if (!has_outer_witness(qm, target, candidates)) {
        item.add_violation({{{"X", c[x]}, {"Y", c[y]}, {target_name, target}}, relation,
                            qm.value(target).get(), std::nullopt},
                           witness_limit);
      }
    }
  }
  return item;
}

}  // namespace detail

/// Coats above this size check unbounded item (v) through the minimum cover.
inline constexpr std::size_t kCoverEnumerationLimit = 16;

/// Item (v): p(X) <= sum of p over every coat subcollection of at most
/// `max_size` members whose union contains X. The empty collection counts
/// as a cover of the empty set.
///
/// With all covers and no size bound the item is equivalent to
/// min-cover-cost(X) >= p(X); coats larger than kCoverEnumerationLimit are
/// checked that way, one check per X, with the optimal cover as witness.
inline ItemResult check_cover_subadditivity(const QuasiMeasure& qm, CoverMode mode,
                                            std::size_t max_size,
                                            std::size_t witness_limit = kDefaultWitnessLimit) {
  ItemResult item{"v", "p(X) <= sum p(S_n) for coat covers {S_n} of X"};
  const auto& c = qm.coat();
  const std::size_t m = c.size();
  std::vector<Rational> cost(m);
  for (std::size_t i = 0; i < m; ++i) cost[i] = qm.coat_value(i).get();

  if (mode == CoverMode::all && max_size >= m && m > kCoverEnumerationLimit) {
    std::vector<ElementMask> masks;
    for (auto s : c.members()) masks.push_back(s.bits());
    MinCoverSolver<Rational> solver(masks, cost);
    for (std::size_t x = 0; x < m; ++x) {
      ++item.checked;
      const auto best = solver.solve(c[x].bits());
      if (cost[x] > best->cost) {
        Witness w{{{"X", c[x]}}, "p(X) <= sum p(S_n)", cost[x], best->cost};
        for (std::size_t k = 0; k < best->chosen.size(); ++k) {
          w.sets.emplace_back("S" + std::to_string(k + 1), c[best->chosen[k]]);
        }
        item.add_violation(std::move(w), witness_limit);
      }
    }
    item.note = "cover mode all, minimum-cost cover per X (" + std::to_string(m) + " coat members)";
    return item;
  }

  std::vector<std::size_t> chosen;
  auto visit = [&](SubsetMask uni, const Rational& sum) {
    for (std::size_t x = 0; x < m; ++x) {
      if (!c[x].is_subset_of(uni)) continue;
      ++item.checked;
      if (cost[x] > sum) {
        Witness w{{{"X", c[x]}}, "p(X) <= sum p(S_n)", cost[x], sum};
        for (std::size_t k = 0; k < chosen.size(); ++k) {
          w.sets.emplace_back("S" + std::to_string(k + 1), c[chosen[k]]);
        }
        item.add_violation(std::move(w), witness_limit);
      }
    }
  };
  auto dfs = [&](auto&& self, std::size_t start, SubsetMask uni, const Rational& sum) -> void {
    visit(uni, sum);
    if (chosen.size() == max_size) return;
    for (std::size_t i = start; i < m; ++i) {
      if (mode == CoverMode::disjoint_only && !c[i].is_disjoint_from(uni)) continue;
      chosen.push_back(i);
      self(self, i + 1, uni | c[i], sum + cost[i]);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0, c.ground().empty_set(), Rational(0));
  item.note = std::string("cover mode ") + to_string(mode) + ", max cover size " + std::to_string(max_size);
  return item;
}

inline AxiomReport check_axioms(const QuasiMeasure& qm, const AxiomOptions& opt = {}) {
  const std::size_t max_cover = opt.max_cover_size.value_or(qm.coat().size());
  if (max_cover > qm.coat().size()) {
    throw std::invalid_argument("max cover size exceeds coat size");
  }
  const bool literal = opt.variant == Variant::literal;
  const auto& pool = literal ? qm.refinement().members() : qm.coat().members();
  const char* pool_name = literal ? "refinement" : "coat";

  AxiomReport report{std::string("quasi-measure axioms (") + to_string(opt.variant) + ")", {}};
  report.items.push_back(detail::endpoint_item(qm, "p(empty) = 0 and p(omega) = 1"));
  report.items.push_back(detail::splitting_item(qm, "ii", opt.witness_limit));
  report.items.push_back(detail::outer_witness_item(qm, "iii", detail::Piece::meet, pool, pool_name,
                                                    opt.witness_limit));
  report.items.push_back(detail::outer_witness_item(qm, "iv", detail::Piece::diff, pool, pool_name,
                                                    opt.witness_limit));
  report.items.push_back(check_cover_subadditivity(qm, opt.cover_mode, max_cover, opt.witness_limit));
  return report;
}

/// Sufficient conditions with every quantifier over the coat:
///   (i) endpoints; (ii) X ⊆ Y implies p(X) <= p(Y); (iii) splitting;
///   (iv) coat sets K ⊆ X&Y ⊆ W with p(K) = p(X&Y) = p(W);
///   (v) a coat set Z ⊇ X&!Y with p(Z) = p(X&!Y).
inline AxiomReport check_alt_conditions(const QuasiMeasure& qm,
                                        std::size_t witness_limit = kDefaultWitnessLimit) {
  AxiomReport report{"alternative quasi-measure conditions", {}};
  const auto& c = qm.coat();
  report.items.push_back(detail::endpoint_item(qm, "p(empty) = 0 and p(omega) = 1"));

  ItemResult mono{"ii", "X subset of Y implies p(X) <= p(Y)"};
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      if (!c[x].is_subset_of(c[y])) continue;
      ++mono.checked;
      if (qm.coat_value(x) > qm.coat_value(y)) {
        mono.add_violation({{{"X", c[x]}, {"Y", c[y]}}, mono.title, qm.coat_value(x).get(),
                            qm.coat_value(y).get()},
                           witness_limit);
      }
    }
  }
  report.items.push_back(std::move(mono));
  report.items.push_back(detail::splitting_item(qm, "iii", witness_limit));

  ItemResult squeeze{"iv", "exists K, W in coat with K subset of X&Y subset of W and p(K) = p(X&Y) = p(W)"};
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t y = 0; y < c.size(); ++y) {
      const auto meet = c[x] & c[y];
      ++squeeze.checked;
      if (!detail::has_inner_witness(qm, meet, c.members()) ||
          !detail::has_outer_witness(qm, meet, c.members())) {
        squeeze.add_violation({{{"X", c[x]}, {"Y", c[y]}, {"X&Y", meet}}, squeeze.title,
                               qm.value(meet).get(), std::nullopt},
                              witness_limit);
      }
    }
  }
  report.items.push_back(std::move(squeeze));
  report.items.push_back(detail::outer_witness_item(qm, "v", detail::Piece::diff, c.members(), "coat",
                                                    witness_limit));
  return report;
}

/// Monotonicity on the coat is item (v) restricted to one-member covers:
/// X ⊆ S implies p(X) <= p(S).
inline AxiomReport monotonicity_note_check(const QuasiMeasure& qm,
                                           std::size_t witness_limit = kDefaultWitnessLimit) {
  AxiomReport report{"singleton-cover subadditivity", {}};
  ItemResult item{"v.1", "p(X) <= p(S) for X, S in coat with X subset of S"};
  const auto& c = qm.coat();
  for (std::size_t x = 0; x < c.size(); ++x) {
    for (std::size_t s = 0; s < c.size(); ++s) {
      if (!c[x].is_subset_of(c[s])) continue;
      ++item.checked;
      if (qm.coat_value(x) > qm.coat_value(s)) {
        item.add_violation({{{"X", c[x]}, {"S", c[s]}}, item.title, qm.coat_value(x).get(),
                            qm.coat_value(s).get()},
                           witness_limit);
      }
    }
  }
  report.items.push_back(std::move(item));
  return report;
}

}  // namespace quasi
