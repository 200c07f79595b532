#include <gtest/gtest.h>

#include "flaggeom/random.hpp"
#include "oracles.hpp"

using namespace flaggeom;
using PM = Matrix<PrimeField>;

TEST(Matrix, ProductMatchesHandComputation) {
  PrimeField k(5);
  PM a = PM::from_ints(k, {{1, 2}, {3, 4}});
  PM b = PM::from_ints(k, {{0, 1}, {1, 0}});
  EXPECT_EQ(a * b, PM::from_ints(k, {{2, 1}, {4, 3}}));
  EXPECT_EQ(a * PM::identity(k, 2), a);
  EXPECT_THROW(a * PM(k, 3, 1), std::invalid_argument);
}

TEST(Matrix, NegativeEntriesReduce) {
  PrimeField k(3);
  EXPECT_EQ(PM::from_ints(k, {{-1, 4}}), PM::from_ints(k, {{2, 1}}));
}

// Rank against the size of the column space found by brute force.
TEST(Matrix, RankMatchesImageSize) {
  PrimeField k(3);
  Rng rng = make_rng(1, 0);
  for (int t = 0; t < 200; ++t) {
    PM m = random_matrix(k, 1 + t % 3, 1 + (t / 3) % 3, rng);
    std::set<oracle::Vec> img;
    for (const auto& v : oracle::all_vectors(3, m.cols())) img.insert(oracle::apply(m, v));
    std::size_t r = 0, size = 1;
    while (size < img.size()) size *= 3, ++r;
    EXPECT_EQ(rank(m), r);
  }
}

TEST(Matrix, InverseIsTwoSided) {
  PrimeField k(7);
  Rng rng = make_rng(2, 0);
  int tested = 0;
  while (tested < 100) {
    PM m = random_matrix(k, 3, 3, rng);
    if (!is_invertible(m)) {
      EXPECT_THROW(inverse(m), std::domain_error);
      continue;
    }
    ++tested;
    EXPECT_EQ(m * inverse(m), PM::identity(k, 3));
    EXPECT_EQ(inverse(m) * m, PM::identity(k, 3));
  }
}

TEST(Matrix, RationalInverse) {
  RationalField q;
  auto m = Matrix<RationalField>::from_ints(q, {{2, 1}, {1, 1}});
  auto inv = inverse(m);
  EXPECT_EQ(inv, Matrix<RationalField>::from_ints(q, {{1, -1}, {-1, 2}}));
  auto h = Matrix<RationalField>::from_ints(q, {{1, 2}, {3, 4}});
  EXPECT_EQ(q.to_string(inverse(h)(1, 0)), "3/2");
}

TEST(Matrix, RrefIsIdempotentAndCanonical) {
  PrimeField k(5);
  Rng rng = make_rng(3, 0);
  for (int t = 0; t < 100; ++t) {
    PM m = random_matrix(k, 3, 4, rng);
    auto r = rref(m);
    EXPECT_EQ(rref(r.matrix).matrix, r.matrix);
    PM g(k, 3, 3);
    do g = random_matrix(k, 3, 3, rng);
    while (!is_invertible(g));
    EXPECT_EQ(rref(g * m).matrix, r.matrix) << "row operations change the reduced form";
  }
}

TEST(Matrix, BlocksAndStacks) {
  PrimeField k(2);
  PM a = PM::from_ints(k, {{1, 0}}), b = PM::from_ints(k, {{0, 1}});
  EXPECT_EQ(vstack(a, b), PM::identity(k, 2));
  EXPECT_EQ(hstack(a, b), PM::from_ints(k, {{1, 0, 0, 1}}));
  EXPECT_EQ(block_diag(PM::identity(k, 1), PM::identity(k, 1)), PM::identity(k, 2));
  EXPECT_EQ(vstack(a, b).block(1, 0, 1, 2), b);
}

TEST(Matrix, PowerOfNilpotentVanishes) {
  PrimeField k(3);
  PM n = PM::from_ints(k, {{0, 1, 2}, {0, 0, 1}, {0, 0, 0}});
  EXPECT_FALSE(power(n, 2).is_zero());
  EXPECT_TRUE(power(n, 3).is_zero());
  EXPECT_EQ(power(n, 0), PM::identity(k, 3));
}
