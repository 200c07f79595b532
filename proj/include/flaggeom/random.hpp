#ifndef FLAGGEOM_RANDOM_HPP
#define FLAGGEOM_RANDOM_HPP

#include <cstdint>
#include <random>

#include "subspace.hpp"

namespace flaggeom {

// Reduction by modulus instead of std::uniform_int_distribution keeps draws identical
// across standard libraries.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

inline std::uint64_t draw_below(Rng& rng, std::uint64_t bound) { return rng() % bound; }

inline PrimeField::value_type random_scalar(const PrimeField& k, Rng& rng) {
  return static_cast<PrimeField::value_type>(draw_below(rng, k.p()));
}

// numerator in [-6, 6], denominator in [1, 4]
inline RationalField::value_type random_scalar(const RationalField& k, Rng& rng) {
  long long num = static_cast<long long>(draw_below(rng, 13)) - 6;
  long long den = static_cast<long long>(draw_below(rng, 4)) + 1;
  return k.from_fraction(num, den);
}

template <class F>
Matrix<F> random_matrix(const F& k, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix<F> m(k, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar(k, rng);
  return m;
}

template <class F>
Vec<F> random_element(const Subspace<F>& s, Rng& rng) {
  Vec<F> c(s.dim());
  for (auto& x : c) x = random_scalar(s.field(), rng);
  return s.combine(c);
}

}  // namespace flaggeom

#endif  // FLAGGEOM_RANDOM_HPP
