#include <gtest/gtest.h>

#include "flaggeom/liealg.hpp"
#include "flaggeom/random.hpp"

using namespace flaggeom;
using PF = PrimeField;
using PM = Matrix<PF>;
using PS = Subspace<PF>;

namespace {

bool same_parts(const IntGrading<PF>& a, const IntGrading<PF>& b, const PF& k, std::size_t d) {
  for (int i = -3; i <= 3; ++i)
    if (a.part(k, d, i) != b.part(k, d, i)) return false;
  return true;
}

}  // namespace

TEST(Ad, MatchesBracket) {
  PF k(5);
  Rng rng = make_rng(20, 0);
  for (int t = 0; t < 30; ++t) {
    PM x = random_matrix(k, 3, 3, rng), y = random_matrix(k, 3, 3, rng);
    EXPECT_EQ(ad(x).apply(y.vec()), bracket(x, y).vec());
  }
}

TEST(GradedGL, EulerGradingIsTheBlockDecomposition) {
  PF k(3);
  GradedGL<PF> g(k, 2, 1);
  auto gr = grading_from_derivation(g.euler(), -1, 1);
  for (int a = -1; a <= 1; ++a) EXPECT_EQ(gr.part(k, g.dim(), a), g.block(a));
  EXPECT_EQ(g.block(1).dim(), 2u);
  EXPECT_EQ(g.block(0).dim(), 5u);
  EXPECT_TRUE(is_bracket_compatible(gr, g.n()));
}

// Normalized derivations agree up to the center, so their adjoints coincide.
TEST(GradedGL, DerivationRoundTrip) {
  PF k(5);
  GradedGL<PF> g(k, 2, 2);
  auto gr = grading_from_derivation(g.euler(), -1, 1);
  PM h = derivation_from_grading(gr, g.n());
  EXPECT_EQ(ad(h), ad(g.euler()));
}

TEST(GradedGL, TripleProductSign) {
  PF k(7);
  GradedGL<PF> g(k, 2, 3);
  Rng rng = make_rng(21, 0);
  for (int t = 0; t < 20; ++t) {
    PM x = random_matrix(k, 2, 3, rng), y = random_matrix(k, 3, 2, rng), z = random_matrix(k, 2, 3, rng);
    PM plain = bracket(bracket(g.embed_plus(x), g.embed_minus(y)), g.embed_plus(z));
    PM sign = bracket(bracket(g.embed_plus(x), g.embed_minus_signed(y)), g.embed_plus(z));
    EXPECT_EQ(g.plus_block(plain), T(x, y, z));
    EXPECT_EQ(g.plus_block(sign), -T(x, y, z));
  }
}

TEST(FiveGrading, GlobalNeedsLargeCharacteristic) {
  EXPECT_THROW(global_five_grading(PM::identity(PF(3), 2)), FieldTooSmall);
  EXPECT_THROW(require_distinct_eigenvalues(PF(2), -1, 1), FieldTooSmall);
  EXPECT_NO_THROW(require_distinct_eigenvalues(PF(3), -1, 1));
}

TEST(FiveGrading, BlockLiftedAgreesWithGlobal) {
  PF k(5);
  GradedGL<PF> g(k, 2, 2);
  Idempotent<PF> e(PM::unit(k, 2, 2, 0, 0), PM::unit(k, 2, 2, 0, 0));
  auto fg = five_grading_from_idempotent(g, e);
  EXPECT_TRUE(same_parts(fg.parts, global_five_grading(fg.h).parts, k, g.dim()));
  EXPECT_TRUE(is_bracket_compatible(fg.parts, g.n()));
  for (const auto& [ab, d] : joint_spectrum(g, fg.parts)) EXPECT_TRUE(is_allowed_pair(ab.first, ab.second));
  auto conj = conjugate_grading(g, fg);
  EXPECT_TRUE(check_conjugate_parts(g, fg.parts, conj.parts).ok());
}

TEST(PeirceFrame, WeightsReproduceGradingElements) {
  Rng rng = make_rng(22, 0);
  for (std::uint32_t p : {3u, 5u}) {
    PF k(p);
    GradedGL<PF> g(k, 2, 3);
    for (int t = 0; t < 8; ++t) {
      auto e = complete_idempotent(random_matrix(k, 2, 3, rng));
      PeirceFrame<PF> frame(g, e);
      PM h = grading_element(g, e);
      EXPECT_EQ(frame.element(PeirceFrame<PF>::h_weights()), h);
      EXPECT_EQ(frame.element(PeirceFrame<PF>::euler_weights()), g.euler());
      EXPECT_TRUE(same_parts(frame.grading(PeirceFrame<PF>::h_weights()), block_lifted_grading(g, h), k, g.dim()));
    }
  }
}

TEST(PeirceFrame, WorksInCharacteristicTwo) {
  PF k(2);
  GradedGL<PF> g(k, 2, 2);
  Idempotent<PF> e(PM::unit(k, 2, 2, 0, 0), PM::unit(k, 2, 2, 0, 0));
  PeirceFrame<PF> frame(g, e);
  auto gr = frame.grading(PeirceFrame<PF>::conjugate_weights());
  EXPECT_EQ(gr.total_dim(), g.dim());
  EXPECT_TRUE(is_bracket_compatible(gr, g.n()));
}

TEST(Stabilizers, AlgebrasAreClosedUnderBracket) {
  PF k(3);
  GradedGL<PF> g(k, 2, 2);
  Idempotent<PF> e(PM::unit(k, 2, 2, 0, 0), PM::unit(k, 2, 2, 0, 0));
  auto st = stabilizer_algebras(g, e);
  EXPECT_EQ(st.ideal.dim(), 1u);
  EXPECT_TRUE(st.g_cal_i.contains(bracket_span(st.g_cal_i, st.g_cal_i, g.n())));
  EXPECT_TRUE(normalizer(st.ideal, g.n()).contains(st.s_i));
  EXPECT_TRUE(g.block(0).contains(st.s_i));
}

// Over F_2 with p = 1, q = 2: the zero pair, and x y = 1 with x nonzero (3 choices, 2 partners each).
TEST(Idempotents, EnumerationCount) {
  PF k(2);
  auto all = enumerate_idempotents(k, 1, 2);
  EXPECT_EQ(all.size(), 7u);
  for (const auto& e : all) EXPECT_TRUE(Idempotent<PF>::check(e.plus, e.minus));
  EXPECT_EQ(enumerate_idempotents(k, 1, 1).size(), 2u);
}

TEST(Squeeze, OrbitMatchesSqueezedPoints) {
  PF k(3);
  GradedGL<PF> g(k, 1, 2);
  Idempotent<PF> e(PM::from_ints(k, {{1, 0}}), PM::from_ints(k, {{1}, {0}}));
  auto rep = squeeze_experiment(g, e);
  EXPECT_TRUE(rep.subset_holds);
  EXPECT_TRUE(rep.superset_holds);
  EXPECT_EQ(rep.orbit_size, rep.squeezed_count);
  EXPECT_GT(rep.orbit_size, 0u);
}
