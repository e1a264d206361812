#pragma once

// Instance generation with exact ground-truth measures, and the seeded
// search that exercises the extension theorem as a property.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "extension.hpp"
#include "quasi_measure.hpp"
#include "rational.hpp"
#include "sets.hpp"

namespace quasi {

/// A probability measure on a finite ground set, given by atom weights.
class TrueMeasure {
 public:
  TrueMeasure(GroundSet ground, std::vector<QValue> weights)
      : ground_(std::move(ground)), weights_(std::move(weights)) {
    if (weights_.size() != ground_.size()) throw std::invalid_argument("one weight per ground element required");
    Rational total = 0;
    for (const auto& w : weights_) total += w.get();
    if (total != 1) throw std::invalid_argument("atom weights sum to " + to_string(total) + ", not 1");
  }

  static TrueMeasure uniform(GroundSet ground) {
    const auto n = static_cast<long>(ground.size());
    std::vector<QValue> w(ground.size(), QValue(1, n));
    return TrueMeasure(std::move(ground), std::move(w));
  }

  const GroundSet& ground() const noexcept { return ground_; }
  const std::vector<QValue>& weights() const noexcept { return weights_; }

  Rational measure(SubsetMask m) const {
    Rational sum = 0;
    for (unsigned i = 0; i < ground_.width(); ++i) {
      if (m.contains(i)) sum += weights_[i].get();
    }
    return sum;
  }

  friend bool operator==(const TrueMeasure&, const TrueMeasure&) = default;

 private:
  GroundSet ground_;
  std::vector<QValue> weights_;
};

/// The restriction of a true measure to the refinement of `c`.
inline QuasiMeasure induce(const TrueMeasure& tm, const Coat& c) {
  if (!(tm.ground() == c.ground())) throw std::invalid_argument("measure and coat use different ground sets");
  ValueMap values;
  const auto r = refine(c);
  for (auto m : r.members()) values.emplace(m, QValue(tm.measure(m)));
  return QuasiMeasure(c, values);
}

enum class CoatStyle { mixed, random, algebra, chain, power_set };

struct GeneratedInstance {
  TrueMeasure measure;
  Coat coat;
  QuasiMeasure qm;
};

namespace detail {

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; }

inline std::vector<SubsetMask> random_coat_members(std::mt19937_64& rng, const GroundSet& g, std::size_t size,
                                                   CoatStyle style) {
  const unsigned n = g.width();
  const std::uint64_t universe = std::uint64_t{1} << n;
  const std::size_t cap = static_cast<std::size_t>(std::min<std::uint64_t>(size, universe));
  std::vector<SubsetMask> out{g.empty_set(), g.omega()};
  std::unordered_set<SubsetMask::Bits> seen{0, g.omega().bits()};
  auto add = [&](SubsetMask::Bits b) {
    if (out.size() < cap && seen.insert(b).second) out.emplace_back(b, n);
  };

  switch (style) {
    case CoatStyle::power_set:
      for (std::uint64_t b = 0; b < universe; ++b) add(static_cast<SubsetMask::Bits>(b));
      break;
    case CoatStyle::algebra: {
      // Random partition into k blocks with 2^k <= cap; coat = all unions of blocks.
      std::size_t k = 1;
      while (k < n && (std::size_t{1} << (k + 1)) <= cap) ++k;
      k = 1 + below(rng, k);
      std::vector<SubsetMask::Bits> blocks(k, 0);
      for (unsigned e = 0; e < n; ++e) blocks[e < k ? e : below(rng, k)] |= SubsetMask::Bits{1} << e;
      for (std::uint64_t pick = 1; pick + 1 < (std::uint64_t{1} << k); ++pick) {
        SubsetMask::Bits b = 0;
        for (std::size_t i = 0; i < k; ++i) {
          if ((pick >> i) & 1u) b |= blocks[i];
        }
        add(b);
      }
      break;
    }
    case CoatStyle::chain: {
      std::vector<unsigned> order(n);
      for (unsigned i = 0; i < n; ++i) order[i] = i;
      for (unsigned i = n; i > 1; --i) std::swap(order[i - 1], order[below(rng, i)]);
      SubsetMask::Bits b = 0;
      for (unsigned i = 0; i + 1 < n; ++i) {
        b |= SubsetMask::Bits{1} << order[i];
        if (below(rng, 2) == 0) add(b);
      }
      break;
    }
    case CoatStyle::random:
    case CoatStyle::mixed:
      for (int attempts = 0; out.size() < cap && attempts < 64 * static_cast<int>(cap); ++attempts) {
        add(static_cast<SubsetMask::Bits>(rng() & g.omega().bits()));
      }
      break;
  }
  return out;
}

}  // namespace detail

/// Deterministic instance for (seed, n, coat_size, weight_denominator_bound):
/// ground {1..n}, atom weights c_i/d with d <= the bound, a coat of at most
/// coat_size members that always holds empty and omega, and the induced
/// quasi-measure.
inline GeneratedInstance random_instance(std::uint64_t seed, unsigned n, std::size_t coat_size,
                                         std::uint64_t weight_denominator_bound = 64,
                                         CoatStyle style = CoatStyle::mixed) {
  if (n < 1 || n > 20) throw std::invalid_argument("random_instance supports 1 <= n <= 20");
  if (coat_size < 2) throw std::invalid_argument("coat size must be at least 2");
  if (weight_denominator_bound < 1) throw std::invalid_argument("denominator bound must be positive");
  std::mt19937_64 rng(seed);
  GroundSet g = GroundSet::numbered(n);

  const auto d = 1 + detail::below(rng, weight_denominator_bound);
  std::vector<long> units(n, 0);
  for (std::uint64_t u = 0; u < d; ++u) ++units[detail::below(rng, n)];
  std::vector<QValue> weights;
  for (auto c : units) weights.emplace_back(c, static_cast<long>(d));

  if (style == CoatStyle::mixed) {
    switch (detail::below(rng, 5)) {
      case 0:
      case 1: style = CoatStyle::random; break;
      case 2:
      case 3: style = CoatStyle::algebra; break;
      default: style = CoatStyle::chain; break;
    }
  }
  Coat coat(g, detail::random_coat_members(rng, g, coat_size, style));
  TrueMeasure tm(g, std::move(weights));
  auto qm = induce(tm, coat);
  return {std::move(tm), std::move(coat), std::move(qm)};
}

/// Adversarial variant: one or two non-endpoint refinement values replaced
/// by random fractions k/d in [0,1]. Endpoints stay 0 and 1. Returns the
/// input unchanged when the refinement is just {empty, omega}.
inline QuasiMeasure perturb(const QuasiMeasure& qm, std::uint64_t seed, std::uint64_t denominator_bound = 16) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<SubsetMask> free;
  for (auto m : qm.refinement().members()) {
    if (!m.is_empty() && !m.is_full()) free.push_back(m);
  }
  if (free.empty()) return qm;
  QuasiMeasure out = qm;
  const auto changes = 1 + detail::below(rng, 2);
  for (std::uint64_t i = 0; i < changes; ++i) {
    const auto target = free[detail::below(rng, free.size())];
    const auto d = static_cast<long>(1 + detail::below(rng, denominator_bound));
    const auto k = static_cast<long>(detail::below(rng, static_cast<std::uint64_t>(d) + 1));
    out = out.with_value(target, QValue(k, d));
  }
  return out;
}

struct NamedSet {
  std::string name;
  SubsetMask mask;
  friend bool operator==(const NamedSet&, const NamedSet&) = default;
};

/// A coat member or valued refinement member, with the expression it was given by.
struct SetExpression {
  std::string expr;
  SubsetMask mask;
  friend bool operator==(const SetExpression&, const SetExpression&) = default;
};

struct ValueEntry {
  std::string expr;
  SubsetMask mask;
  QValue value;
  friend bool operator==(const ValueEntry&, const ValueEntry&) = default;
};

/// A reproducible description of an instance: identical specs always
/// materialize to identical quasi-measures.
struct InstanceSpec {
  GroundSet ground;
  std::vector<NamedSet> sets;
  std::vector<SetExpression> coat;
  std::variant<TrueMeasure, std::vector<ValueEntry>> values;
  std::uint64_t seed = 0;

  Coat make_coat() const {
    std::vector<SubsetMask> members;
    for (const auto& c : coat) members.push_back(c.mask);
    return Coat(ground, std::move(members));
  }

  /// Builds the quasi-measure. Explicit values may name one mask through
  /// several expressions as long as they agree.
  QuasiMeasure materialize() const {
    auto c = make_coat();
    if (const auto* tm = std::get_if<TrueMeasure>(&values)) return induce(*tm, c);
    ValueMap map;
    for (const auto& v : std::get<std::vector<ValueEntry>>(values)) {
      auto [it, inserted] = map.emplace(v.mask, v.value);
      if (!inserted && it->second != v.value) {
        throw std::invalid_argument("conflicting values for " + ground.format(v.mask));
      }
    }
    return QuasiMeasure(std::move(c), map);
  }
};

/// Names the non-trivial coat members S1, S2, ... and records values
/// explicitly, one entry per refinement member, each written through its
/// first provenance witness.
inline InstanceSpec explicit_spec(const QuasiMeasure& qm, std::uint64_t seed = 0) {
  InstanceSpec spec{qm.ground(), {}, {}, std::vector<ValueEntry>{}, seed};
  const auto& c = qm.coat();
  std::vector<std::string> names(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_empty()) {
      names[i] = "empty";
    } else if (c[i].is_full()) {
      names[i] = "omega";
    } else {
      names[i] = "S" + std::to_string(spec.sets.size() + 1);
      spec.sets.push_back({names[i], c[i]});
    }
    spec.coat.push_back({names[i], c[i]});
  }
  auto& values = std::get<std::vector<ValueEntry>>(spec.values);
  const auto& r = qm.refinement();
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto& w = r.provenance()[i].front();
    std::string expr;
    if (r.members()[i].is_empty()) {
      expr = "empty";
    } else if (r.members()[i].is_full()) {
      expr = "omega";
    } else if (i < c.size()) {
      expr = names[i];  // coat members lead the refinement in coat order
    } else if (w.kind == WitnessKind::meet) {
      expr = names[w.x] + "&" + names[w.y];
    } else {
      expr = names[w.x] + "&!" + names[w.y];
    }
    values.push_back({expr, r.members()[i], qm.values()[i]});
  }
  return spec;
}

struct SearchOptions {
  Variant filter = Variant::restricted;
  unsigned max_n = 5;
  std::size_t max_coat = 8;
  std::uint64_t denominator_bound = 64;
  /// Every fourth seed perturbs the induced values.
  bool include_adversarial = true;
};

struct SearchSummary {
  std::size_t total = 0;
  std::size_t passing = 0;
  std::size_t passing_adversarial = 0;
  std::size_t passing_verified = 0;
  std::size_t failing = 0;
  std::size_t failing_with_additivity_failure = 0;
  std::vector<std::uint64_t> violation_seeds;  // axioms pass, pre-measure check fails

  std::size_t violations() const noexcept { return violation_seeds.size(); }

  /// Associative merge of summaries over disjoint seed ranges.
  SearchSummary& operator+=(const SearchSummary& o) {
    total += o.total;
    passing += o.passing;
    passing_adversarial += o.passing_adversarial;
    passing_verified += o.passing_verified;
    failing += o.failing;
    failing_with_additivity_failure += o.failing_with_additivity_failure;
    violation_seeds.insert(violation_seeds.end(), o.violation_seeds.begin(), o.violation_seeds.end());
    return *this;
  }
};

/// The instance the search uses for `seed`.
inline QuasiMeasure search_instance(std::uint64_t seed, const SearchOptions& opt, bool* adversarial = nullptr) {
  std::mt19937_64 rng(seed * 0x2545F4914F6CDD1DULL + 1);
  const auto n = static_cast<unsigned>(1 + detail::below(rng, opt.max_n));
  const auto coat_size = 2 + detail::below(rng, opt.max_coat - 1);
  auto inst = random_instance(seed, n, coat_size, opt.denominator_bound);
  const bool perturbed = opt.include_adversarial && seed % 4 == 3;
  if (adversarial) *adversarial = perturbed;
  return perturbed ? perturb(inst.qm, seed) : inst.qm;
}

/// Partitions the instances for seeds in [begin, end) by whether they pass
/// the axioms under `filter`, and checks the extension of every passing one.
inline SearchSummary search_theorem_instances(std::uint64_t begin, std::uint64_t end, const SearchOptions& opt = {}) {
  if (opt.max_n < 1 || opt.max_n > 16 || opt.max_coat < 2 || opt.max_coat > 16) {
    throw std::invalid_argument("search caps: 1 <= max_n <= 16, 2 <= max_coat <= 16");
  }
  SearchSummary s;
  for (std::uint64_t seed = begin; seed < end; ++seed) {
    bool adversarial = false;
    const auto qm = search_instance(seed, opt, &adversarial);
    ++s.total;
    OuterMeasureCache cache;
    const bool additive = verify_premeasure(extend(qm, cache)).passed();
    if (check_axioms(qm, AxiomOptions{opt.filter, CoverMode::all, std::nullopt, kDefaultWitnessLimit}).passed()) {
      ++s.passing;
      if (adversarial) ++s.passing_adversarial;
      if (additive) {
        ++s.passing_verified;
      } else {
        s.violation_seeds.push_back(seed);
      }
    } else {
      ++s.failing;
      if (!additive) ++s.failing_with_additivity_failure;
    }
  }
  return s;
}

}  // namespace quasi
