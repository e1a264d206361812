#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace quasi;
using namespace quasi::testing;

namespace {

AxiomOptions with_variant(Variant v) {
  AxiomOptions opt;
  opt.variant = v;
  return opt;
}

// Re-evaluates a witness of check_axioms against the quasi-measure.
bool witness_violates(const QuasiMeasure& qm, const std::string& item, const Witness& w, Variant variant) {
  if (item == "ii") {
    const auto X = w.set("X"), Y = w.set("Y");
    return qm.value(X).get() != qm.value(X & Y).get() + qm.value(X & complement(Y)).get();
  }
  if (item == "iii" || item == "iv") {
    const auto X = w.set("X"), Y = w.set("Y");
    const auto t = item == "iii" ? X & Y : X & complement(Y);
    const auto& pool = variant == Variant::literal ? qm.refinement().members() : qm.coat().members();
    for (auto cand : pool) {
      if (t.is_subset_of(cand) && qm.value(cand) == qm.value(t)) return false;
    }
    return true;
  }
  if (item == "v") {
    SubsetMask uni = qm.ground().empty_set();
    Rational sum = 0;
    for (const auto& [name, s] : w.sets) {
      if (name == "X") continue;
      uni = uni | s;
      sum += qm.value(s).get();
    }
    return w.set("X").is_subset_of(uni) && qm.value(w.set("X")).get() > sum;
  }
  return true;
}

}  // namespace

TEST(QValue, RangeAndForm) {
  EXPECT_THROW(QValue(5, 4), std::out_of_range);
  EXPECT_THROW(QValue(-1, 4), std::out_of_range);
  EXPECT_THROW(QValue(1, 0), std::invalid_argument);
  EXPECT_EQ(QValue(2, 4).str(), "1/2");
  EXPECT_EQ(QValue::one().str(), "1/1");
  EXPECT_EQ(QValue::zero().str(), "0/1");
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(parse_rational("1"), Rational(1));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("x/2"), std::invalid_argument);
  try {
    QValue(Rational(5, 4));
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find("value outside [0,1]"), std::string::npos);
  }
}

TEST(QuasiMeasure, DomainMustMatchRefinement) {
  auto c = overlap_coat();
  const auto& g = c.ground();
  auto values = uniform_overlap().value_map();
  auto missing = values;
  missing.erase(mask(g, {"2"}));
  EXPECT_THROW(QuasiMeasure(c, missing), std::invalid_argument);
  auto extra = values;
  extra.emplace(mask(g, {"2", "4"}), QValue(1, 2));
  EXPECT_THROW(QuasiMeasure(c, extra), std::invalid_argument);
  auto bad_omega = values;
  bad_omega.at(g.omega()) = QValue(1, 2);
  EXPECT_THROW(QuasiMeasure(c, bad_omega), std::invalid_argument);
  auto qm = uniform_overlap();
  EXPECT_THROW(qm.with_value(g.empty_set(), QValue(1, 4)), std::invalid_argument);
  EXPECT_THROW(qm.value(mask(g, {"2", "4"})), std::out_of_range);
}

TEST(CheckAxioms, UniformOverlapRestrictedFailsItemThree) {
  auto qm = uniform_overlap();
  const auto& g = qm.ground();
  auto r = check_axioms(qm, with_variant(Variant::restricted));
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.item("i").status, Status::pass);
  EXPECT_EQ(r.item("ii").status, Status::pass);
  EXPECT_EQ(r.item("v").status, Status::pass);
  const auto& iii = r.item("iii");
  ASSERT_EQ(iii.status, Status::fail);
  ASSERT_FALSE(iii.witnesses.empty());
  const auto& w = iii.witnesses.front();
  EXPECT_EQ(w.set("X"), mask(g, {"1", "2"}));
  EXPECT_EQ(w.set("Y"), mask(g, {"2", "3"}));
  EXPECT_EQ(w.set("X&Y"), mask(g, {"2"}));
  EXPECT_EQ(*w.lhs, Rational(1, 4));
}

TEST(CheckAxioms, UniformOverlapLiteralPasses) {
  auto r = check_axioms(uniform_overlap(), with_variant(Variant::literal));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.item("iii").status, Status::pass);
  EXPECT_EQ(r.item("iv").status, Status::pass);
  for (const auto& item : r.items) EXPECT_TRUE(item.witnesses.empty());
}

TEST(CheckAxioms, PowerSetPasses) {
  auto r = check_axioms(powerset3(), with_variant(Variant::restricted));
  EXPECT_TRUE(r.passed());
  for (const auto& item : r.items) {
    EXPECT_EQ(item.status, Status::pass) << item.id;
    EXPECT_GT(item.checked, 0u);
  }
  EXPECT_EQ(r.item("ii").checked, 64u);
}

TEST(CheckAxioms, MaxCoverMustFitCoat) {
  AxiomOptions opt;
  opt.max_cover_size = 5;
  EXPECT_THROW(check_axioms(uniform_overlap(), opt), std::invalid_argument);
}

TEST(CheckAxioms, CoverSubadditivityFailureHasWitness) {
  // {1} and {2} cover {1,2} for 2/3 while p({1,2}) is raised to 3/4.
  auto g3 = GroundSet::numbered(3);
  auto c3 = make_coat(g3, {{}, {"1", "2", "3"}, {"1", "2"}, {"1"}, {"2"}});
  auto q3 = induce(TrueMeasure::uniform(g3), c3);
  auto b3 = q3.with_value(mask(g3, {"1", "2"}), QValue(3, 4));
  auto r3 = check_axioms(b3);
  const auto& v = r3.item("v");
  ASSERT_EQ(v.status, Status::fail);
  for (const auto& w : v.witnesses) EXPECT_TRUE(witness_violates(b3, "v", w, Variant::restricted));
  EXPECT_EQ(v.witnesses.front().set("X"), mask(g3, {"1", "2"}));
}

TEST(CheckAxioms, DisjointOnlyModeSkipsOverlappingCovers) {
  auto g = GroundSet::numbered(3);
  auto c = make_coat(g, {{}, {"1", "2", "3"}, {"1", "2"}, {"2", "3"}, {"1", "3"}});
  auto qm = induce(TrueMeasure::uniform(g), c);
  AxiomOptions all;
  AxiomOptions disjoint;
  disjoint.cover_mode = CoverMode::disjoint_only;
  const auto a = check_axioms(qm, all).item("v");
  const auto d = check_axioms(qm, disjoint).item("v");
  EXPECT_LT(d.checked, a.checked);
  EXPECT_EQ(a.status, Status::pass);
  EXPECT_EQ(d.status, Status::pass);
  AxiomOptions small;
  small.max_cover_size = 1;
  EXPECT_LT(check_axioms(qm, small).item("v").checked, a.checked);
}

TEST(CheckAxioms, WitnessesReEvaluate) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto inst = random_instance(seed, 1 + seed % 5, 2 + seed % 7);
    auto qm = seed % 2 ? perturb(inst.qm, seed) : inst.qm;
    for (auto variant : {Variant::literal, Variant::restricted}) {
      auto r = check_axioms(qm, with_variant(variant));
      for (const auto& item : r.items) {
        if (item.status == Status::pass) {
          EXPECT_TRUE(item.witnesses.empty());
          EXPECT_EQ(item.violations, 0u);
        }
        EXPECT_LE(item.witnesses.size(), kDefaultWitnessLimit);
        for (const auto& w : item.witnesses) {
          EXPECT_TRUE(witness_violates(qm, item.id, w, variant)) << "seed " << seed << " item " << item.id;
        }
      }
    }
  }
}

TEST(CheckAxioms, InducedPassesLiteral) {
  // The restriction of a true measure is a quasi-measure under the literal reading.
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto inst = random_instance(seed, 1 + seed % 5, 2 + seed % 7);
    EXPECT_TRUE(check_axioms(inst.qm, with_variant(Variant::literal)).passed()) << "seed " << seed;
  }
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = random_instance(seed, 1 + seed % 4, 16, 64, CoatStyle::power_set);
    EXPECT_TRUE(check_axioms(inst.qm, with_variant(Variant::restricted)).passed()) << "seed " << seed;
  }
}

TEST(CheckAxioms, RestrictedImpliesLiteral) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto inst = random_instance(seed, 1 + seed % 5, 2 + seed % 7);
    auto qm = perturb(inst.qm, seed);
    if (check_axioms(qm, with_variant(Variant::restricted)).passed()) {
      EXPECT_TRUE(check_axioms(qm, with_variant(Variant::literal)).passed()) << "seed " << seed;
    }
  }
}

TEST(AltConditions, Examples) {
  EXPECT_TRUE(check_alt_conditions(powerset3()).passed());

  auto r = check_alt_conditions(uniform_overlap());
  EXPECT_FALSE(r.passed());
  const auto& iv = r.item("iv");
  ASSERT_EQ(iv.status, Status::fail);
  EXPECT_EQ(iv.witnesses.front().set("X&Y"), mask(uniform_overlap().ground(), {"2"}));

  auto g = GroundSet::numbered(5);
  auto trivial = induce(TrueMeasure::uniform(g), Coat::trivial(g));
  EXPECT_TRUE(check_alt_conditions(trivial).passed());
}

TEST(AltConditions, ImplyRestrictedAxioms) {
  std::size_t passing = 0;
  for (std::uint64_t seed = 0; passing < 200 && seed < 5000; ++seed) {
    auto inst = random_instance(seed, 1 + seed % 5, 2 + seed % 7);
    auto qm = seed % 3 == 2 ? perturb(inst.qm, seed) : inst.qm;
    if (!check_alt_conditions(qm).passed()) continue;
    ++passing;
    EXPECT_TRUE(check_axioms(qm, with_variant(Variant::restricted)).passed()) << "seed " << seed;
  }
  EXPECT_GE(passing, 200u);
}

TEST(MonotonicityNote, Examples) {
  EXPECT_TRUE(monotonicity_note_check(powerset3()).passed());
  auto g = GroundSet::numbered(4);
  auto trivial = induce(TrueMeasure::uniform(g), Coat::trivial(g));
  EXPECT_TRUE(monotonicity_note_check(trivial).passed());

  auto c = make_coat(g, {{}, {"1", "2", "3", "4"}, {"1"}, {"1", "2"}});
  auto qm = induce(TrueMeasure::uniform(g), c).with_value(mask(g, {"1"}), QValue(3, 4));
  ASSERT_EQ(qm.value(mask(g, {"1", "2"})), QValue(1, 2));
  auto r = monotonicity_note_check(qm);
  ASSERT_FALSE(r.passed());
  const auto& w = r.items.front().witnesses.front();
  EXPECT_EQ(w.set("X"), mask(g, {"1"}));
  EXPECT_EQ(w.set("S"), mask(g, {"1", "2"}));
  EXPECT_EQ(*w.lhs, Rational(3, 4));
  EXPECT_EQ(*w.rhs, Rational(1, 2));
}

TEST(MonotonicityNote, AgreesWithSingletonCovers) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto inst = random_instance(seed, 1 + seed % 5, 2 + seed % 7);
    auto qm = perturb(inst.qm, seed);
    AxiomOptions opt;
    opt.max_cover_size = 1;
    auto singleton = check_axioms(qm, opt).item("v");
    auto note = monotonicity_note_check(qm).items.front();
    EXPECT_EQ(singleton.status == Status::fail, note.status == Status::fail) << "seed " << seed;
  }
}
