#include <gtest/gtest.h>

#include "flaggeom/flags.hpp"
#include "oracles.hpp"

using namespace flaggeom;
using PF = PrimeField;
using PFlag = Flag<PF>;
using PS = Subspace<PF>;

namespace {

// Complementary pairs by element counting: trivial intersection and |A||B| = p^n.
bool transversal_by_elements(const PFlag& e, const PFlag& f) {
  std::size_t k = e.length(), n = e.ambient();
  std::uint32_t p = e.field().p();
  std::size_t full = 1;
  for (std::size_t i = 0; i < n; ++i) full *= p;
  for (std::size_t i = 1; i < k; ++i) {
    auto a = oracle::elements(e.step(i)), b = oracle::elements(f.step(k - i));
    std::size_t common = 0;
    for (const auto& v : a) common += b.count(v);
    if (common != 1 || a.size() * b.size() != full) return false;
  }
  return true;
}

}  // namespace

TEST(FlagType, CoTypeIsAnInvolution) {
  FlagType t{{1, 3, 4, 6}};
  EXPECT_EQ(t.co_type(), (FlagType{{2, 3, 5, 6}}));
  EXPECT_EQ(t.co_type().co_type(), t);
  EXPECT_THROW((FlagType{{2, 2, 3}}).validate(), std::invalid_argument);
  EXPECT_THROW((FlagType{{}}).validate(), std::invalid_argument);
}

TEST(Flag, RejectsNonAscendingSteps) {
  PF k(2);
  PS a = PS::coordinate(k, 3, {0}), b = PS::coordinate(k, 3, {1, 2});
  EXPECT_THROW(PFlag(k, 3, {a, b}), std::invalid_argument);
  EXPECT_NO_THROW(PFlag(k, 3, {a, PS::coordinate(k, 3, {0, 1})}));
  EXPECT_EQ(PFlag(k, 3, {a, PS::full(k, 3)}).length(), 2u);
}

TEST(Flags, CountsMatchEnumerationAndKnownValues) {
  EXPECT_EQ(count_flags(2, FlagType{{1, 2, 3}}), 21u);
  EXPECT_EQ(count_flags(3, FlagType{{1, 2}}), 4u);
  EXPECT_EQ(count_flags(2, FlagType{{1, 2, 3, 4}}), 315u);
  for (std::uint32_t p : {2u, 3u})
    for (const auto& t : {FlagType{{1, 3}}, FlagType{{1, 2, 3}}, FlagType{{2, 4}}, FlagType{{1, 3, 4}}}) {
      if (p == 3 && t.ambient() == 4) continue;
      auto fl = enumerate_flags(PF(p), t);
      EXPECT_EQ(fl.size(), count_flags(p, t));
      EXPECT_TRUE(std::is_sorted(fl.begin(), fl.end()));
      EXPECT_EQ(std::adjacent_find(fl.begin(), fl.end()), fl.end());
      for (const auto& f : fl) EXPECT_EQ(f.type(), t);
    }
}

TEST(Flags, TransversalityAgreesWithElementCounting) {
  PF k(2);
  FlagType t{{1, 2, 3}};
  auto es = enumerate_flags(k, t), fs = enumerate_flags(k, t.co_type());
  std::size_t transversal = 0;
  for (const auto& e : es)
    for (const auto& f : fs) {
      bool tr = is_transversal(e, f);
      EXPECT_EQ(tr, transversal_by_elements(e, f));
      transversal += tr;
    }
  // each full flag in F_2^3 has |U| = 2^3 opposite flags
  EXPECT_EQ(transversal, es.size() * 8);
}

TEST(Flags, StandardFlagsAreTransversal) {
  PF k(5);
  for (const auto& t : {FlagType{{2, 5}}, FlagType{{1, 3, 4}}, FlagType{{1, 2, 3, 4}}})
    EXPECT_TRUE(is_transversal(standard_flag(k, t), opposite_standard_flag(k, t.co_type())));
}

TEST(Grading, PairRoundTripOnAllTransversalPairs) {
  PF k(2);
  for (const auto& t : {FlagType{{1, 3}}, FlagType{{1, 2, 4}}, FlagType{{2, 3, 4}}}) {
    auto es = enumerate_flags(k, t), fs = enumerate_flags(k, t.co_type());
    for (const auto& e : es)
      for (const auto& f : fs) {
        if (!is_transversal(e, f)) {
          EXPECT_THROW(grading_from_pair(e, f), std::invalid_argument);
          continue;
        }
        auto g = grading_from_pair(e, f);
        EXPECT_EQ(g.length(), t.length());
        auto [e2, f2] = flags_from_grading(g);
        EXPECT_EQ(e2, e);
        EXPECT_EQ(f2, f);
      }
  }
}

TEST(Grading, PartsOfStandardPairAreCoordinateBlocks) {
  PF k(3);
  FlagType t{{1, 3, 4}};
  auto g = grading_from_pair(standard_flag(k, t), opposite_standard_flag(k, t.co_type()));
  EXPECT_EQ(g.part(1), PS::coordinate(k, 4, {0}));
  EXPECT_EQ(g.part(2), PS::coordinate(k, 4, {1, 2}));
  EXPECT_EQ(g.part(3), PS::coordinate(k, 4, {3}));
}

TEST(Grading, RejectsNonDirectSums) {
  PF k(2);
  PS a = PS::coordinate(k, 2, {0});
  EXPECT_THROW(Grading<PF>({a, a}), std::invalid_argument);
  EXPECT_THROW(Grading<PF>({a}), std::invalid_argument);
}

TEST(Flags, TransformedPreservesTransversality) {
  PF k(3);
  FlagType t{{1, 2, 3}};
  auto e = standard_flag(k, t), f = opposite_standard_flag(k, t.co_type());
  auto g = Matrix<PF>::from_ints(k, {{1, 2, 0}, {0, 1, 1}, {1, 0, 2}});
  ASSERT_TRUE(is_invertible(g));
  EXPECT_TRUE(is_transversal(e.transformed(g), f.transformed(g)));
}
