#include <gtest/gtest.h>

#include "flaggeom/random.hpp"
#include "oracles.hpp"

using namespace flaggeom;
using PM = Matrix<PrimeField>;
using PS = Subspace<PrimeField>;

TEST(Subspace, KernelMatchesBruteForce) {
  PrimeField k(3);
  Rng rng = make_rng(10, 0);
  for (int t = 0; t < 100; ++t) {
    PM m = random_matrix(k, 1 + t % 3, 3, rng);
    EXPECT_EQ(oracle::elements(kernel(m)), oracle::kernel(m));
  }
}

TEST(Subspace, SumAndIntersectionMatchElementSets) {
  PrimeField k(2);
  Rng rng = make_rng(11, 0);
  for (int t = 0; t < 100; ++t) {
    PS a = PS::span(random_matrix(k, 2, 4, rng)), b = PS::span(random_matrix(k, 2, 4, rng));
    auto ea = oracle::elements(a), eb = oracle::elements(b);
    oracle::VecSet inter;
    for (const auto& v : ea)
      if (eb.count(v)) inter.insert(v);
    EXPECT_EQ(oracle::elements(intersect(a, b)), inter);
    std::vector<oracle::Vec> gens(ea.begin(), ea.end());
    gens.insert(gens.end(), eb.begin(), eb.end());
    EXPECT_EQ(oracle::elements(sum(a, b)), oracle::span(gens, 2, 4));
    EXPECT_EQ(sum(a, b).dim() + intersect(a, b).dim(), a.dim() + b.dim());
  }
}

TEST(Subspace, AnnihilatorIsOrthogonalComplement) {
  PrimeField k(5);
  Rng rng = make_rng(12, 0);
  for (int t = 0; t < 30; ++t) {
    PS s = PS::span(random_matrix(k, 1 + t % 2, 3, rng));
    PS ann = annihilator(s);
    EXPECT_EQ(ann.dim(), 3 - s.dim());
    for (const auto& a : ann.basis_vectors())
      for (const auto& v : s.basis_vectors()) EXPECT_EQ(oracle::dot(a, v, 5), 0u);
  }
}

TEST(Subspace, CanonicalBasisIdentifiesEqualSpans) {
  PrimeField k(3);
  PS a = PS::span(PM::from_ints(k, {{1, 1, 0}, {0, 1, 1}}));
  PS b = PS::span(PM::from_ints(k, {{1, 2, 1}, {1, 0, 2}}));
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.contains(std::vector<std::uint32_t>{1, 0, 2}));
  EXPECT_FALSE(a.contains(std::vector<std::uint32_t>{1, 0, 0}));
}

TEST(Subspace, CoordinatesRoundTrip) {
  PrimeField k(7);
  Rng rng = make_rng(13, 0);
  PS s = PS::span(random_matrix(k, 2, 4, rng));
  for (int t = 0; t < 50; ++t) {
    auto v = random_element(s, rng);
    EXPECT_EQ(s.combine(s.coordinates(v)), v);
  }
}

TEST(Subspace, TransformMapsSpans) {
  PrimeField k(2);
  PS e1 = PS::coordinate(k, 2, {0});
  PM swap = PM::from_ints(k, {{0, 1}, {1, 0}});
  EXPECT_EQ(transform(swap, e1), PS::coordinate(k, 2, {1}));
}

TEST(Subspace, EnumerationMatchesBruteForceAndGaussianBinomial) {
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField k(p);
    for (std::size_t n = 1; n <= (p == 2 ? 4u : 3u); ++n)
      for (std::size_t d = 0; d <= n; ++d) {
        auto subs = enumerate_subspaces(k, n, d);
        std::set<oracle::VecSet> found;
        for (const auto& s : subs) found.insert(oracle::elements(s));
        EXPECT_EQ(found.size(), subs.size()) << "duplicates";
        EXPECT_EQ(found, oracle::subspaces(p, n, d)) << "p=" << p << " n=" << n << " d=" << d;
        EXPECT_EQ(gaussian_binomial(p, n, d), subs.size());
      }
  }
}

TEST(Subspace, GaussianBinomialKnownValues) {
  EXPECT_EQ(gaussian_binomial(2, 3, 1), 7u);
  EXPECT_EQ(gaussian_binomial(2, 4, 2), 35u);
  EXPECT_EQ(gaussian_binomial(3, 4, 2), 130u);
  EXPECT_EQ(gaussian_binomial(3, 2, 1), 4u);
}

TEST(Subspace, BudgetIsEnforced) {
  EXPECT_THROW(enumerate_subspaces(PrimeField(2), 4, 2, 34), BudgetExceeded);
  EXPECT_NO_THROW(enumerate_subspaces(PrimeField(2), 4, 2, 35));
}

TEST(Subspace, ElementIterationVisitsEachVectorOnce) {
  PrimeField k(3);
  PS s = PS::coordinate(k, 3, {0, 2});
  std::set<std::vector<std::uint32_t>> seen;
  for_each_element(s, [&](const Vec<PrimeField>& v) { seen.insert(v); });
  EXPECT_EQ(seen, oracle::elements(s));
}
