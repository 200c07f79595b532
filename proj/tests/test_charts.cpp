#include <gtest/gtest.h>

#include "flaggeom/grassmann.hpp"
#include "flaggeom/random.hpp"
#include "oracles.hpp"

using namespace flaggeom;
using PF = PrimeField;
using PM = Matrix<PF>;
using PS = Subspace<PF>;
using PFlag = Flag<PF>;

namespace {

// X with X f_i ⊆ f_{i-1}, by testing every matrix on every element of every step.
std::size_t count_lowering(const PFlag& f) {
  std::uint32_t p = f.field().p();
  std::size_t n = f.ambient(), count = 0;
  for (const auto& v : oracle::all_vectors(p, n * n)) {
    PM x(f.field(), n, n);
    for (std::size_t i = 0; i < n * n; ++i) x(i / n, i % n) = v[i];
    bool ok = true;
    for (std::size_t i = 1; i <= f.length() && ok; ++i) {
      auto lower = oracle::elements(f.step(i - 1));
      for (const auto& w : oracle::elements(f.step(i)))
        if (!lower.count(oracle::apply(x, w))) {
          ok = false;
          break;
        }
    }
    count += ok;
  }
  return count;
}

}  // namespace

TEST(NilpotentAlgebra, SizeMatchesBruteForce) {
  PF k(2);
  for (const auto& t : {FlagType{{1, 3}}, FlagType{{2, 3}}, FlagType{{1, 2, 3}}}) {
    PFlag f = standard_flag(k, t).transformed(PM::from_ints(k, {{1, 1, 0}, {0, 1, 1}, {1, 0, 0}}));
    std::size_t expected = count_lowering(f);
    EXPECT_EQ(std::size_t{1} << nilpotent_algebra(f).dim(), expected) << t.to_string();
  }
}

TEST(NilpotentAlgebra, DimensionIsSumOfBlockProducts) {
  PF k(3);
  FlagType t{{1, 3, 4, 6}};  // parts 1, 2, 1, 2
  EXPECT_EQ(nilpotent_algebra(standard_flag(k, t)).dim(), 1u * 2 + 1 * 1 + 1 * 2 + 2 * 1 + 2 * 2 + 1 * 2);
}

TEST(ExpLog, MutuallyInverseOnWholeAlgebra) {
  PF k(5);
  PFlag f = standard_flag(k, FlagType{{1, 2, 3}});
  std::size_t count = 0;
  for_each_element(nilpotent_algebra(f), [&](const Vec<PF>& v) {
    PM x = PM::from_vec(k, 3, 3, v);
    PM u = exp_nilpotent(x, 3);
    EXPECT_TRUE(in_nilpotent_algebra(u - PM::identity(k, 3), f));
    EXPECT_EQ(log_unipotent(u, 3), x);
    ++count;
  });
  EXPECT_EQ(count, 125u);
}

TEST(ExpLog, RationalSeriesForLengthFour) {
  RationalField q;
  auto x = Matrix<RationalField>::from_ints(q, {{0, 0, 0, 0}, {2, 0, 0, 0}, {1, 3, 0, 0}, {5, -1, 4, 0}});
  EXPECT_EQ(log_unipotent(exp_nilpotent(x, 4), 4), x);
}

TEST(Exp, RefusesCharacteristicTooSmall) {
  PF k(2);
  PFlag f = standard_flag(k, FlagType{{1, 2, 3}});
  NilpotentOp<PF> x(f, PM(k, 3, 3));
  EXPECT_THROW(exp(x), FieldTooSmall);
  EXPECT_THROW((Chart<PF>(f, opposite_standard_flag(k, FlagType{{1, 2, 3}}))), FieldTooSmall);
}

TEST(NilpotentOp, RejectsOperatorsOutsideTheAlgebra) {
  PF k(3);
  PFlag f = standard_flag(k, FlagType{{1, 2}});
  EXPECT_THROW(NilpotentOp<PF>(f, PM::identity(k, 2)), std::invalid_argument);
}

// The brute-force oracle: search U(f) = 1 + u(f) for the element carrying e to e2.
TEST(Transporter, MatchesExhaustiveSearch) {
  PF k(2);
  for (const auto& t : {FlagType{{1, 3}}, FlagType{{1, 2, 3}}, FlagType{{2, 3, 4}}}) {
    auto points = enumerate_flags(k, t);
    PFlag f = opposite_standard_flag(k, t.co_type()).transformed(PM::from_ints(
        k, t.ambient() == 3 ? std::initializer_list<std::initializer_list<long long>>{{1, 0, 0}, {1, 1, 0}, {0, 1, 1}}
                            : std::initializer_list<std::initializer_list<long long>>{
                                  {1, 0, 0, 0}, {1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}}));
    std::vector<PM> group;
    std::size_t n = t.ambient();
    for_each_element(nilpotent_algebra(f), [&](const Vec<PF>& v) {
      group.push_back(PM::identity(k, n) + PM::from_vec(k, n, n, v));
    });
    std::vector<PFlag> domain;
    for (const auto& e : points)
      if (is_transversal(e, f)) domain.push_back(e);
    ASSERT_EQ(domain.size(), group.size());
    const PFlag& e = domain.front();
    for (const auto& e2 : domain) {
      std::vector<PM> hits;
      for (const auto& u : group)
        if (e.transformed(u) == e2) hits.push_back(u);
      ASSERT_EQ(hits.size(), 1u) << "U(f) must act simply transitively";
      EXPECT_EQ(transporter(f, e, e2).mat(), hits.front());
    }
  }
}

TEST(Transporter, RejectsNonTransversalFlags) {
  PF k(3);
  FlagType t{{1, 2}};
  PFlag e = standard_flag(k, t);
  EXPECT_THROW(transporter(e, e, e), std::invalid_argument);
}

TEST(Chart, OriginHasZeroCoordinateAndRoundTrips) {
  PF k(3);
  FlagType t{{1, 2, 3}};
  PFlag x = standard_flag(k, t), a = opposite_standard_flag(k, t.co_type());
  Chart<PF> c(x, a);
  EXPECT_TRUE(c.coord(x).is_zero());
  std::size_t seen = 0;
  for (const auto& y : enumerate_flags(k, t)) {
    if (!c.contains(y)) {
      EXPECT_THROW(c.coord(y), std::invalid_argument);
      continue;
    }
    ++seen;
    PM coord = c.coord(y);
    EXPECT_TRUE(in_nilpotent_algebra(coord, a));
    EXPECT_EQ(c.point(coord), y);
  }
  EXPECT_EQ(seen, 27u);
}

TEST(Chart, GrassmannCoordinateIsTheGraphMap) {
  PF k(5);
  Rng rng = make_rng(20, 0);
  PFlag o = graph_point(PM(k, 2, 1)), a = graph_copoint(PM(k, 1, 2));
  Chart<PF> c(o, a);
  for (int t = 0; t < 50; ++t) {
    PM x = random_matrix(k, 2, 1, rng);
    PM expected(k, 3, 3);
    expected.set_block(1, 0, x);
    EXPECT_EQ(c.coord(graph_point(x)), expected);
  }
}

TEST(StructureMaps, ModuleLawsInEveryOrigin) {
  PF k(3);
  FlagType t{{1, 3}};
  PFlag a = opposite_standard_flag(k, t.co_type());
  std::vector<PFlag> chart;
  for (const auto& y : enumerate_flags(k, t))
    if (is_transversal(y, a)) chart.push_back(y);
  for (const auto& x : chart)
    for (const auto& y : chart) {
      EXPECT_EQ(pi_r(x, a, y, 1u), y);
      EXPECT_EQ(pi_r(x, a, y, 0u), x);
      EXPECT_EQ(sigma(x, a, x, y), y);
      EXPECT_EQ(pi_r(x, a, pi_r(x, a, y, 2u), 2u), y) << "2 * 2 = 1 in F_3";
      for (const auto& z : chart) {
        EXPECT_EQ(sigma(x, a, y, z), sigma(x, a, z, y));
        EXPECT_EQ(pi_r(x, a, sigma(x, a, y, z), 2u), sigma(x, a, pi_r(x, a, y, 2u), pi_r(x, a, z, 2u)));
      }
    }
}

TEST(StructureMaps, ScalarMultipleIsScaledGraphCoordinate) {
  PF k(5);
  Rng rng = make_rng(21, 0);
  PFlag o = graph_point(PM(k, 2, 2)), a = graph_copoint(PM(k, 2, 2));
  for (int t = 0; t < 30; ++t) {
    PM x = random_matrix(k, 2, 2, rng);
    auto r = random_scalar(k, rng);
    EXPECT_EQ(pi_r(o, a, graph_point(x), r), graph_point(x.scaled(r)));
  }
}

TEST(Midpoint, OneByOneExample) {
  PF k(5);
  PM x = PM::from_ints(k, {{1}}), y = PM::from_ints(k, {{2}});
  ASSERT_TRUE(midpoint_defined(x, y));
  EXPECT_EQ(chart_midpoint(x, y), PM::from_ints(k, {{2}}));
}

TEST(Midpoint, EqualsQuadraticMapOverRationals) {
  RationalField q;
  Rng rng = make_rng(22, 0);
  int tested = 0;
  while (tested < 100) {
    auto x = random_matrix(q, 2, 3, rng), y = random_matrix(q, 3, 2, rng);
    if (!midpoint_defined(x, y)) continue;
    ++tested;
    EXPECT_EQ(chart_midpoint(x, y), x * y * x);
  }
}
