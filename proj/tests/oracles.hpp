#pragma once

// Independent oracles and shared fixtures for the test suites. Nothing here
// calls the library algorithm it is used to check.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "quasi/quasi.hpp"

namespace quasi::testing {

using Bits = SubsetMask::Bits;
using MaskSet = std::set<Bits>;

inline Coat make_coat(const GroundSet& g, const std::vector<std::vector<std::string>>& members) {
  std::vector<SubsetMask> masks;
  for (const auto& m : members) masks.push_back(g.subset(m));
  return Coat(g, std::move(masks));
}

/// Omega = {1,2,3,4}, coat {empty, omega, {1,2}, {2,3}}.
inline Coat overlap_coat() {
  auto g = GroundSet::numbered(4);
  return make_coat(g, {{}, {"1", "2", "3", "4"}, {"1", "2"}, {"2", "3"}});
}

/// The uniform-induced quasi-measure on overlap_coat(): passes the literal
/// axioms, fails the restricted ones.
inline QuasiMeasure uniform_overlap() {
  auto c = overlap_coat();
  return induce(TrueMeasure::uniform(c.ground()), c);
}

/// Power set of {1,2,3} with atom weights 1/2, 1/4, 1/4.
inline QuasiMeasure powerset3() {
  auto g = GroundSet::numbered(3);
  return induce(TrueMeasure(g, {QValue(1, 2), QValue(1, 4), QValue(1, 4)}), Coat::power_set(g));
}

inline SubsetMask mask(const GroundSet& g, std::vector<std::string> labels) { return g.subset(labels); }

inline MaskSet brute_refine(const Coat& c) {
  MaskSet out;
  for (auto x : c.members()) {
    for (auto y : c.members()) {
      out.insert(x.bits() & y.bits());
      out.insert(x.bits() & ~y.bits() & c.ground().omega().bits());
    }
  }
  return out;
}

inline MaskSet as_set(const std::vector<SubsetMask>& v) {
  MaskSet out;
  for (auto m : v) out.insert(m.bits());
  return out;
}

inline bool is_algebra(const MaskSet& f, Bits omega) {
  if (!f.contains(0) || !f.contains(omega)) return false;
  for (auto a : f) {
    if (!f.contains(omega & ~a)) return false;
    for (auto b : f) {
      if (!f.contains(a | b)) return false;
    }
  }
  return true;
}

/// Closure under complement and pairwise union, iterated to a fixpoint.
inline MaskSet naive_closure(const Coat& c) {
  const Bits omega = c.ground().omega().bits();
  MaskSet f = as_set(c.members());
  for (bool grew = true; grew;) {
    grew = false;
    MaskSet next = f;
    for (auto a : f) {
      next.insert(omega & ~a);
      for (auto b : f) next.insert(a | b);
    }
    grew = next.size() != f.size();
    f = std::move(next);
  }
  return f;
}

/// Intersection of every algebra on omega that contains the coat, found by
/// enumerating all 2^(2^n) families. Only for n <= 4.
inline MaskSet algebra_by_intersection(const Coat& c) {
  const unsigned n = c.ground().width();
  const Bits omega = c.ground().omega().bits();
  const unsigned subsets = 1u << n;
  std::uint64_t required = 0;
  for (auto m : c.members()) required |= std::uint64_t{1} << m.bits();
  std::uint64_t meet = ~std::uint64_t{0};
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
    if ((fam & required) != required) continue;
    MaskSet f;
    for (unsigned s = 0; s < subsets; ++s) {
      if ((fam >> s) & 1u) f.insert(s);
    }
    if (is_algebra(f, omega)) meet &= fam;
  }
  MaskSet out;
  for (unsigned s = 0; s < subsets; ++s) {
    if ((meet >> s) & 1u) out.insert(s);
  }
  return out;
}

/// Minimum cover cost by enumerating subcollections, straight from the
/// definition (no irredundancy filtering, no tie-breaking).
inline Rational brute_outer_cost(const QuasiMeasure& qm, SubsetMask a) {
  const auto& c = qm.coat();
  std::optional<Rational> best;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << c.size()); ++pick) {
    Bits uni = 0;
    Rational sum = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if ((pick >> i) & 1u) {
        uni |= c[i].bits();
        sum += qm.coat_value(i).get();
      }
    }
    if ((a.bits() & ~uni) == 0 && (!best || sum < *best)) best = sum;
  }
  return *best;
}

}  // namespace quasi::testing
