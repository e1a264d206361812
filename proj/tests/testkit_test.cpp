#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace quasi;
using namespace quasi::testing;

TEST(TrueMeasure, WeightsMustSumToOne) {
  auto g = GroundSet::numbered(2);
  EXPECT_THROW(TrueMeasure(g, {QValue(1, 2), QValue(1, 4)}), std::invalid_argument);
  EXPECT_THROW(TrueMeasure(g, {QValue(1, 1)}), std::invalid_argument);
  EXPECT_NO_THROW(TrueMeasure(g, {QValue(1, 3), QValue(2, 3)}));
}

TEST(Induce, UniformOverlapValues) {
  auto qm = uniform_overlap();
  const auto& g = qm.ground();
  EXPECT_EQ(qm.value(mask(g, {"2"})), QValue(1, 4));
  EXPECT_EQ(qm.value(mask(g, {"3", "4"})), QValue(1, 2));
  EXPECT_EQ(qm.value(mask(g, {"1", "4"})), QValue(1, 2));
  EXPECT_EQ(qm.value(mask(g, {"1", "2"})), QValue(1, 2));
  EXPECT_EQ(qm.value(g.empty_set()), QValue::zero());
  EXPECT_EQ(qm.value(g.omega()), QValue::one());
}

TEST(Induce, ValuesAreAtomSums) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = random_instance(seed, 1 + seed % 7, 2 + seed % 9);
    const auto& r = inst.qm.refinement();
    for (std::size_t i = 0; i < r.size(); ++i) {
      Rational sum = 0;
      for (unsigned e = 0; e < inst.qm.ground().width(); ++e) {
        if (r.members()[i].contains(e)) sum += inst.measure.weights()[e].get();
      }
      EXPECT_EQ(inst.qm.values()[i].get(), sum);
    }
  }
  EXPECT_THROW(induce(TrueMeasure::uniform(GroundSet::numbered(3)), overlap_coat()), std::invalid_argument);
}

TEST(RandomInstance, Deterministic) {
  auto a = random_instance(42, 5, 8);
  auto b = random_instance(42, 5, 8);
  EXPECT_EQ(a.measure, b.measure);
  EXPECT_EQ(a.coat.members(), b.coat.members());
  EXPECT_EQ(a.qm, b.qm);
  auto c = random_instance(43, 5, 8);
  EXPECT_FALSE(a.qm == c.qm && a.measure == c.measure);
}

TEST(RandomInstance, SingleElementGround) {
  auto inst = random_instance(9, 1, 8);
  EXPECT_EQ(inst.coat.size(), 2u);
  EXPECT_EQ(inst.measure.weights().front(), QValue::one());
}

TEST(RandomInstance, StructurallyValidOverManySeeds) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const unsigned n = 1 + seed % 6;
    const std::size_t size = 2 + seed % 9;
    auto inst = random_instance(seed, n, size, 1 + seed % 64);
    const auto& qm = inst.qm;
    EXPECT_LE(qm.coat().size(), size);
    EXPECT_TRUE(qm.coat().contains(qm.ground().empty_set()));
    EXPECT_TRUE(qm.coat().contains(qm.ground().omega()));
    EXPECT_EQ(as_set(qm.refinement().members()), brute_refine(qm.coat()));
    EXPECT_EQ(qm.values().size(), qm.refinement().size());
    // Rebuilding from the value map goes through every constructor check.
    EXPECT_EQ(QuasiMeasure(qm.coat(), qm.value_map()), qm);
    for (const auto& w : inst.measure.weights()) EXPECT_LE(denominator(w.get()), 64);
  }
}

TEST(RandomInstance, StylesAndCaps) {
  EXPECT_THROW(random_instance(0, 0, 4), std::invalid_argument);
  EXPECT_THROW(random_instance(0, 21, 4), std::invalid_argument);
  EXPECT_THROW(random_instance(0, 3, 1), std::invalid_argument);
  auto ps = random_instance(1, 3, 100, 64, CoatStyle::power_set);
  EXPECT_EQ(ps.coat.size(), 8u);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto alg = random_instance(seed, 5, 8, 64, CoatStyle::algebra);
    EXPECT_TRUE(is_algebra(as_set(alg.coat.members()), alg.coat.ground().omega().bits())) << "seed " << seed;
    auto chain = random_instance(seed, 5, 8, 64, CoatStyle::chain);
    for (auto x : chain.coat.members())
      for (auto y : chain.coat.members()) EXPECT_TRUE(x.is_subset_of(y) || y.is_subset_of(x));
  }
}

TEST(Perturb, KeepsEndpointsAndChangesValues) {
  std::size_t changed = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = random_instance(seed, 2 + seed % 4, 3 + seed % 6);
    auto p = perturb(inst.qm, seed);
    EXPECT_EQ(p.value(p.ground().empty_set()), QValue::zero());
    EXPECT_EQ(p.value(p.ground().omega()), QValue::one());
    EXPECT_EQ(p.refinement().members(), inst.qm.refinement().members());
    EXPECT_EQ(perturb(inst.qm, seed), p);
    if (!(p == inst.qm)) ++changed;
  }
  EXPECT_GT(changed, 100u);
  auto g = GroundSet::numbered(3);
  auto trivial = induce(TrueMeasure::uniform(g), Coat::trivial(g));
  EXPECT_EQ(perturb(trivial, 5), trivial);
}

TEST(Search, PowerSetCoatsAlwaysPass) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto inst = random_instance(seed, 1 + seed % 5, 32, 64, CoatStyle::power_set);
    AxiomOptions opt;
    EXPECT_TRUE(check_axioms(inst.qm, opt).passed());
    EXPECT_TRUE(verify_premeasure(extend(inst.qm)).passed());
  }
}

TEST(Search, UniformOverlapLandsInFailingPartition) {
  auto qm = uniform_overlap();
  EXPECT_FALSE(check_axioms(qm).passed());
  EXPECT_FALSE(verify_premeasure(extend(qm)).passed());
}

TEST(Search, NoTheoremViolations) {
  auto s = search_theorem_instances(0, 400);
  EXPECT_EQ(s.total, 400u);
  EXPECT_EQ(s.passing + s.failing, s.total);
  EXPECT_EQ(s.passing_verified + s.violations(), s.passing);
  EXPECT_EQ(s.violations(), 0u);
  EXPECT_GT(s.passing, 100u);
  EXPECT_GT(s.passing_adversarial, 0u);
  EXPECT_GT(s.failing, 0u);
}

TEST(Search, SummariesMergeOverDisjointRanges) {
  auto whole = search_theorem_instances(0, 120);
  auto left = search_theorem_instances(0, 50);
  auto right = search_theorem_instances(50, 120);
  left += right;
  EXPECT_EQ(left.total, whole.total);
  EXPECT_EQ(left.passing, whole.passing);
  EXPECT_EQ(left.passing_adversarial, whole.passing_adversarial);
  EXPECT_EQ(left.passing_verified, whole.passing_verified);
  EXPECT_EQ(left.failing, whole.failing);
  EXPECT_EQ(left.failing_with_additivity_failure, whole.failing_with_additivity_failure);
  EXPECT_EQ(left.violation_seeds, whole.violation_seeds);
}

TEST(Search, RejectsOutOfRangeCaps) {
  SearchOptions opt;
  opt.max_n = 17;
  EXPECT_THROW(search_theorem_instances(0, 1, opt), std::invalid_argument);
  opt.max_n = 5;
  opt.max_coat = 1;
  EXPECT_THROW(search_theorem_instances(0, 1, opt), std::invalid_argument);
}

TEST(Search, SeedsAreReproducible) {
  SearchOptions opt;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    bool adv_a = false, adv_b = false;
    auto a = search_instance(seed, opt, &adv_a);
    auto b = search_instance(seed, opt, &adv_b);
    EXPECT_EQ(a, b);
    EXPECT_EQ(adv_a, adv_b);
    EXPECT_EQ(adv_a, seed % 4 == 3);
    EXPECT_LE(a.ground().size(), opt.max_n);
    EXPECT_LE(a.coat().size(), opt.max_coat);
  }
}
