#pragma once

/** @file extension.hpp
 *  @brief Caratheodory measurability and extension to the generated algebra.
 *
 *  W is measurable for the exterior quasi-measure p* when
 *      p*(A) = p*(A & W) + p*(A & !W)   for every A ⊆ omega.
 *  extend() tabulates p* on the algebra generated by the coat;
 *  verify_premeasure() checks that table for finite additivity.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "outer.hpp"
#include "quasi_measure.hpp"
#include "report.hpp"
#include "sets.hpp"

namespace quasi {

class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

enum class Verdict { measurable, not_measurable, not_falsified };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::measurable: return "measurable";
    case Verdict::not_measurable: return "not-measurable";
    case Verdict::not_falsified: return "not-falsified";
  }
  return "?";
}

/// A with p*(A) != p*(A & W) + p*(A & !W).
struct SplitCounterexample {
  SubsetMask a;
  Rational whole;
  Rational inside;
  Rational outside;
};

struct MeasurabilityResult {
  Verdict verdict = Verdict::measurable;
  std::optional<SplitCounterexample> counterexample;

  bool measurable() const noexcept { return verdict == Verdict::measurable; }
};

struct MeasurabilityOptions {
  std::size_t max_exhaustive_n = kDefaultExhaustiveLimit;
  /// When n exceeds the exhaustive limit: sample instead of throwing.
  bool allow_sampling = false;
  std::size_t sample_count = 4096;
  std::uint64_t seed = 0;
};

inline MeasurabilityResult is_caratheodory_measurable(const QuasiMeasure& qm, SubsetMask w,
                                                      OuterMeasureCache& cache,
                                                      const MeasurabilityOptions& opt = {}) {
  const auto& g = qm.ground();
  const unsigned n = g.width();
  const SubsetMask not_w = complement(w);
  auto test = [&](SubsetMask a) -> std::optional<SplitCounterexample> {
    const Rational& whole = cache.solve(qm, a).value.get();
    const Rational& inside = cache.solve(qm, a & w).value.get();
    const Rational& outside = cache.solve(qm, a & not_w).value.get();
    if (whole != inside + outside) return SplitCounterexample{a, whole, inside, outside};
    return std::nullopt;
  };

  if (n <= opt.max_exhaustive_n) {
    const auto last = g.omega().bits();
    for (SubsetMask::Bits b = 0;; ++b) {
      if (auto cx = test(SubsetMask(b, n))) return {Verdict::not_measurable, cx};
      if (b == last) break;
    }
    return {Verdict::measurable, std::nullopt};
  }
  if (!opt.allow_sampling) {
    throw BudgetExceeded("ground set of " + std::to_string(n) + " elements exceeds the exhaustive limit " +
                         std::to_string(opt.max_exhaustive_n));
  }
  std::mt19937_64 rng(opt.seed);
  for (std::size_t i = 0; i < opt.sample_count; ++i) {
    SubsetMask a(static_cast<SubsetMask::Bits>(rng() & g.omega().bits()), n);
    if (auto cx = test(a)) return {Verdict::not_measurable, cx};
  }
  return {Verdict::not_falsified, std::nullopt};
}

inline MeasurabilityResult is_caratheodory_measurable(const QuasiMeasure& qm, SubsetMask w,
                                                      const MeasurabilityOptions& opt = {}) {
  OuterMeasureCache cache;
  return is_caratheodory_measurable(qm, w, cache, opt);
}

struct MeasurabilityEntry {
  SubsetMask w;
  MeasurabilityResult result;
};

/// Ground sets up to this size also get every subset tested for audit.
inline constexpr unsigned kAuditGroundLimit = 5;

struct MeasurabilityReport {
  std::vector<MeasurabilityEntry> tested;  // members of the generated algebra
  std::vector<MeasurabilityEntry> audit;   // all subsets when n <= kAuditGroundLimit
  bool restricted_axioms_pass = false;
  /// Restricted axioms hold yet some algebra member is not measurable.
  bool theorem_violation = false;

  bool all_tested_measurable() const {
    for (const auto& e : tested) {
      if (!e.result.measurable()) return false;
    }
    return true;
  }
};

inline MeasurabilityReport measurable_family(const QuasiMeasure& qm, OuterMeasureCache& cache,
                                             const MeasurabilityOptions& opt = {}) {
  const auto& g = qm.ground();
  if (g.width() > opt.max_exhaustive_n) {
    throw BudgetExceeded("measurable_family needs exhaustive quantification over 2^n subsets");
  }
  MeasurabilityReport report;
  report.restricted_axioms_pass = check_axioms(qm, AxiomOptions{Variant::restricted, CoverMode::all, std::nullopt, kDefaultWitnessLimit}).passed();
  const auto algebra = generate_algebra(qm.coat());
  for (auto w : algebra.members()) {
    report.tested.push_back({w, is_caratheodory_measurable(qm, w, cache, opt)});
  }
  if (g.width() <= kAuditGroundLimit) {
    const auto last = g.omega().bits();
    for (SubsetMask::Bits b = 0;; ++b) {
      SubsetMask w(b, g.width());
      report.audit.push_back({w, is_caratheodory_measurable(qm, w, cache, opt)});
      if (b == last) break;
    }
  }
  report.theorem_violation = report.restricted_axioms_pass && !report.all_tested_measurable();
  return report;
}

inline MeasurabilityReport measurable_family(const QuasiMeasure& qm, const MeasurabilityOptions& opt = {}) {
  OuterMeasureCache cache;
  return measurable_family(qm, cache, opt);
}

/// p* restricted to the generated algebra, with an optimal cover per entry.
struct MeasureTable {
  GroundSet ground;
  AlgebraFamily algebra;
  std::vector<QValue> values;
  std::vector<CoverSolution> provenance;

  const QValue& value(SubsetMask m) const {
    auto idx = algebra.index_of(m);
    if (!idx) throw std::out_of_range(ground.format(m) + " is not in the generated algebra");
    return values[*idx];
  }
};

/// Tabulates p* on every member of the generated algebra. Makes no claim
/// that the result is a pre-measure; see verify_premeasure.
inline MeasureTable extend(const QuasiMeasure& qm, OuterMeasureCache& cache) {
  MeasureTable table{qm.ground(), generate_algebra(qm.coat()), {}, {}};
  for (auto m : table.algebra.members()) {
    const auto& sol = cache.solve(qm, m);
    table.values.push_back(sol.value);
    table.provenance.push_back(sol.cover);
  }
  return table;
}

inline MeasureTable extend(const QuasiMeasure& qm) {
  OuterMeasureCache cache;
  return extend(qm, cache);
}

struct PremeasureOptions {
  /// Disjoint triples are audited when |algebra|^3 / 6 stays below this.
  std::uint64_t triple_budget = 4'000'000;
  std::size_t witness_limit = kDefaultWitnessLimit;
};

/// Checks (a) endpoints, (b) nonnegativity, (c) additivity on every
/// disjoint pair of the algebra and (d) on disjoint triples within budget.
/// Pairwise additivity on an algebra already implies finite additivity by
/// induction; (d) is a redundant audit.
inline AxiomReport verify_premeasure(const MeasureTable& t, const PremeasureOptions& opt = {}) {
  const auto& g = t.ground;
  const auto& members = t.algebra.members();
  const std::size_t m = members.size();
  AxiomReport report{"pre-measure on the generated algebra", {}};

  ItemResult ends{"a", "p(empty) = 0 and p(omega) = 1"};
  ends.checked = 2;
  if (t.value(g.empty_set()) != QValue::zero()) {
    ends.add_violation({{{"E", g.empty_set()}}, "p(empty) = 0", t.value(g.empty_set()).get(), Rational(0)},
                       opt.witness_limit);
  }
  if (t.value(g.omega()) != QValue::one()) {
    ends.add_violation({{{"E", g.omega()}}, "p(omega) = 1", t.value(g.omega()).get(), Rational(1)},
                       opt.witness_limit);
  }
  report.items.push_back(std::move(ends));

  ItemResult nonneg{"b", "p(E) >= 0"};
  for (std::size_t i = 0; i < m; ++i) {
    ++nonneg.checked;
    if (t.values[i].get() < 0) {
      nonneg.add_violation({{{"E", members[i]}}, nonneg.title, t.values[i].get(), Rational(0)}, opt.witness_limit);
    }
  }
  report.items.push_back(std::move(nonneg));

  ItemResult pairs{"c", "p(E1 | E2) = p(E1) + p(E2) for disjoint E1, E2"};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!members[i].is_disjoint_from(members[j])) continue;
      ++pairs.checked;
      const auto uni = members[i] | members[j];
      Rational rhs = t.values[i].get() + t.values[j].get();
      if (t.value(uni).get() != rhs) {
        pairs.add_violation({{{"E1", members[i]}, {"E2", members[j]}, {"E1|E2", uni}}, pairs.title,
                             t.value(uni).get(), rhs},
                            opt.witness_limit);
      }
    }
  }
  report.items.push_back(std::move(pairs));

  ItemResult triples{"d", "p(E1 | E2 | E3) = p(E1) + p(E2) + p(E3) for disjoint triples"};
  const double estimate = static_cast<double>(m) * m * m / 6.0;
  if (estimate > static_cast<double>(opt.triple_budget)) {
    triples.status = Status::skipped;
    triples.note = "skipped: " + std::to_string(m) + " algebra members exceed the triple budget";
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (!members[i].is_disjoint_from(members[j])) continue;
        const auto ij = members[i] | members[j];
        for (std::size_t k = j + 1; k < m; ++k) {
          if (!members[k].is_disjoint_from(ij)) continue;
          ++triples.checked;
          const auto uni = ij | members[k];
          Rational rhs = t.values[i].get() + t.values[j].get() + t.values[k].get();
          if (t.value(uni).get() != rhs) {
            triples.add_violation({{{"E1", members[i]}, {"E2", members[j]}, {"E3", members[k]}, {"E1|E2|E3", uni}},
                                   triples.title, t.value(uni).get(), rhs},
                                  opt.witness_limit);
          }
        }
      }
    }
  }
  report.items.push_back(std::move(triples));
  return report;
}

}  // namespace quasi
