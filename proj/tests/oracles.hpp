// Brute-force reference computations over small prime fields, written against explicit
// vector sets rather than the row-reduction code they are used to check.
#ifndef FLAGGEOM_TESTS_ORACLES_HPP
#define FLAGGEOM_TESTS_ORACLES_HPP

#include <cstdint>
#include <set>
#include <vector>

#include "flaggeom/subspace.hpp"

namespace oracle {

using Vec = std::vector<std::uint32_t>;
using VecSet = std::set<Vec>;

inline std::vector<Vec> all_vectors(std::uint32_t p, std::size_t n) {
  std::vector<Vec> out;
  Vec v(n, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == p) v[i++] = 0;
    if (i == n) break;
  }
  return out;
}

inline Vec add(const Vec& a, const Vec& b, std::uint32_t p) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

inline Vec scale(const Vec& a, std::uint32_t c, std::uint32_t p) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint32_t>((std::uint64_t{a[i]} * c) % p);
  return r;
}

inline std::uint32_t dot(const Vec& a, const Vec& b, std::uint32_t p) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::uint64_t{a[i]} * b[i];
  return static_cast<std::uint32_t>(s % p);
}

// Closure of the generators under addition and scaling.
inline VecSet span(const std::vector<Vec>& gens, std::uint32_t p, std::size_t n) {
  VecSet s{Vec(n, 0)};
  for (const auto& g : gens) {
    VecSet next;
    for (const auto& v : s)
      for (std::uint32_t c = 0; c < p; ++c) next.insert(add(v, scale(g, c, p), p));
    s = std::move(next);
  }
  return s;
}

inline VecSet elements(const flaggeom::Subspace<flaggeom::PrimeField>& s) {
  return span(s.basis_vectors(), s.field().p(), s.ambient());
}

// Matrix-vector product for a row-major r x c matrix stored as a flat vector.
inline Vec apply(const flaggeom::Matrix<flaggeom::PrimeField>& m, const Vec& v) {
  std::uint32_t p = m.field().p();
  Vec r(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::uint64_t{m(i, j)} * v[j];
    r[i] = static_cast<std::uint32_t>(s % p);
  }
  return r;
}

inline VecSet kernel(const flaggeom::Matrix<flaggeom::PrimeField>& m) {
  VecSet out;
  for (const auto& v : all_vectors(m.field().p(), m.cols()))
    if (apply(m, v) == Vec(m.rows(), 0)) out.insert(v);
  return out;
}

// Distinct subspaces of dimension d in F_p^n, each as its element set.
inline std::set<VecSet> subspaces(std::uint32_t p, std::size_t n, std::size_t d) {
  std::set<VecSet> out;
  auto vs = all_vectors(p, n);
  std::vector<Vec> gens;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (gens.size() == d) {
      VecSet s = span(gens, p, n);
      std::size_t expect = 1;
      for (std::size_t i = 0; i < d; ++i) expect *= p;
      if (s.size() == expect) out.insert(std::move(s));
      return;
    }
    for (std::size_t i = from; i < vs.size(); ++i) {
      gens.push_back(vs[i]);
      self(self, i + 1);
      gens.pop_back();
    }
  };
  rec(rec, 1);
  if (d == 0) out.insert(VecSet{Vec(n, 0)});
  return out;
}

}  // namespace oracle

#endif  // FLAGGEOM_TESTS_ORACLES_HPP
