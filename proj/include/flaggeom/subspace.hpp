#ifndef FLAGGEOM_SUBSPACE_HPP
#define FLAGGEOM_SUBSPACE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace flaggeom {

// Subspace of F^n held by its reduced row echelon basis (no zero rows),
// so two subspaces are equal iff their bases are equal entrywise.
template <class F>
class Subspace {
 public:
  Subspace(F field, std::size_t n) : n_(n), basis_(field, 0, n) {}

  // Row space of m.
  static Subspace span(const Matrix<F>& m) {
    auto red = rref(m);
    Subspace s(m.field(), m.cols());
    s.basis_ = red.matrix.block(0, 0, red.pivots.size(), m.cols());
    s.pivots_ = std::move(red.pivots);
    return s;
  }
  static Subspace span(const F& field, std::size_t n, const std::vector<Vec<F>>& vectors) {
    return span(Matrix<F>::from_rows(field, n, vectors));
  }
  static Subspace zero(const F& field, std::size_t n) { return Subspace(field, n); }
  static Subspace full(const F& field, std::size_t n) { return span(Matrix<F>::identity(field, n)); }
  // Span of standard basis vectors e_i, i in idx (0-based).
  static Subspace coordinate(const F& field, std::size_t n, const std::vector<std::size_t>& idx) {
    Matrix<F> m(field, idx.size(), n);
    for (std::size_t r = 0; r < idx.size(); ++r) m(r, idx[r]) = field.one();
    return span(m);
  }

  const F& field() const { return basis_.field(); }
  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == n_; }
  const Matrix<F>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  std::vector<Vec<F>> basis_vectors() const {
    std::vector<Vec<F>> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
  }

  // v minus its reduction against the basis; zero iff v lies in the subspace.
  Vec<F> reduce(Vec<F> v) const {
    const F& k = field();
    for (std::size_t i = 0; i < dim(); ++i) {
      auto c = v[pivots_[i]];
      if (k.is_zero(c)) continue;
      for (std::size_t j = 0; j < n_; ++j) v[j] = k.sub(v[j], k.mul(c, basis_(i, j)));
    }
    return v;
  }
  bool contains(const Vec<F>& v) const {
    if (v.size() != n_) throw std::invalid_argument("vector length does not match ambient");
    for (const auto& a : reduce(v))
      if (!field().is_zero(a)) return false;
    return true;
  }
  bool contains(const Subspace& s) const {
    check_ambient(s);
    if (s.dim() > dim()) return false;
    for (std::size_t i = 0; i < s.dim(); ++i)
      if (!contains(s.basis_.row(i))) return false;
    return true;
  }
  // Coordinates of v (assumed in the subspace) with respect to the basis rows.
  Vec<F> coordinates(const Vec<F>& v) const {
    Vec<F> c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    return c;
  }
  Vec<F> combine(const Vec<F>& c) const {
    const F& k = field();
    Vec<F> v(n_, k.zero());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < n_; ++j) v[j] = k.add(v[j], k.mul(c[i], basis_(i, j)));
    return v;
  }

  void check_ambient(const Subspace& o) const {
    if (o.n_ != n_)
      throw std::invalid_argument("ambient mismatch: " + std::to_string(n_) + " vs " +
                                  std::to_string(o.n_));
  }

  bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  // Dimension first, then the basis entries lexicographically.
  bool operator<(const Subspace& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    if (dim() != o.dim()) return dim() < o.dim();
    return basis_.vec() < o.basis_.vec();
  }

 private:
  std::size_t n_;
  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

template <class F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_ambient(b);
  return Subspace<F>::span(vstack(a.basis(), b.basis()));
}

// {v : m v = 0}
template <class F>
Subspace<F> kernel(const Matrix<F>& m) {
  const F& k = m.field();
  auto red = rref(m);
  std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : red.pivots) is_pivot[c] = true;
  std::vector<Vec<F>> gens;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(n, k.zero());
    v[free] = k.one();
    for (std::size_t i = 0; i < red.pivots.size(); ++i) v[red.pivots[i]] = k.neg(red.matrix(i, free));
    gens.push_back(std::move(v));
  }
  return Subspace<F>::span(k, n, gens);
}

// Column space.
template <class F>
Subspace<F> image(const Matrix<F>& m) {
  return Subspace<F>::span(m.transpose());
}

// {v : <v, s> = 0 for all s} under the standard dot product.
template <class F>
Subspace<F> annihilator(const Subspace<F>& s) {
  if (s.dim() == 0) return Subspace<F>::full(s.field(), s.ambient());
  return kernel(s.basis());
}

template <class F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_ambient(b);
  return annihilator(sum(annihilator(a), annihilator(b)));
}

template <class F>
bool is_complementary(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_ambient(b);
  return a.dim() + b.dim() == a.ambient() && sum(a, b).is_full();
}

template <class F>
Subspace<F> standard_complement(const Subspace<F>& a) {
  std::vector<bool> is_pivot(a.ambient(), false);
  for (auto c : a.pivots()) is_pivot[c] = true;
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < a.ambient(); ++j)
    if (!is_pivot[j]) idx.push_back(j);
  return Subspace<F>::coordinate(a.field(), a.ambient(), idx);
}

// g(S) for a square matrix g acting on column vectors.
template <class F>
Subspace<F> transform(const Matrix<F>& g, const Subspace<F>& s) {
  if (g.rows() != s.ambient() || g.cols() != s.ambient())
    throw std::invalid_argument("transform shape mismatch");
  if (s.dim() == 0) return s;
  return Subspace<F>::span(s.basis() * g.transpose());
}

// Splits v along a direct sum a + b = F^n.
template <class F>
class DirectSum {
 public:
  DirectSum(const Subspace<F>& a, const Subspace<F>& b) : a_(a), b_(b), inv_(a.field(), 0, 0) {
    if (!is_complementary(a, b)) throw std::invalid_argument("subspaces are not complementary");
    inv_ = inverse(vstack(a.basis(), b.basis()));
  }
  // Coefficients of v in the concatenated basis (a rows first).
  Vec<F> coefficients(const Vec<F>& v) const {
    return inv_.transpose().apply(v);
  }
  std::pair<Vec<F>, Vec<F>> split(const Vec<F>& v) const {
    auto c = coefficients(v);
    Vec<F> ca(c.begin(), c.begin() + a_.dim()), cb(c.begin() + a_.dim(), c.end());
    return {a_.combine(ca), b_.combine(cb)};
  }

 private:
  Subspace<F> a_, b_;
  Matrix<F> inv_;
};

// The linear map sending basis row i of `from` to row i of `to`
// (from must be square and invertible).
template <class F>
Matrix<F> map_from_images(const Matrix<F>& from, const Matrix<F>& to) {
  return to.transpose() * inverse(from.transpose());
}

// Number of d-dimensional subspaces of F_q^n, saturating at the uint64 maximum.
inline std::uint64_t gaussian_binomial(std::uint64_t q, std::size_t n, std::size_t d) {
  if (d > n) return 0;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  auto qpow = [q](std::size_t e) {
    unsigned __int128 r = 1;
    for (std::size_t i = 0; i < e && r <= kMax; ++i) r *= q;
    return r;
  };
  // partial products are themselves Gaussian binomials, so each division is exact
  unsigned __int128 r = 1;
  for (std::size_t i = 0; i < d; ++i) {
    unsigned __int128 a = qpow(n - i), b = qpow(i + 1);
    if (a > kMax) return kMax;
    r = r * (a - 1) / (b - 1);
    if (r > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(r);
}

inline constexpr std::uint64_t kDefaultBudget = 20000;

inline void check_budget(std::uint64_t count, std::uint64_t budget, const std::string& what) {
  if (count > budget)
    throw BudgetExceeded(what + " has " + std::to_string(count) + " elements, budget is " +
                         std::to_string(budget));
}

// Calls fn on every d-dimensional subspace of F_p^n, one pivot pattern at a time.
inline void for_each_subspace(const PrimeField& field, std::size_t n, std::size_t d,
                              const std::function<void(const Subspace<PrimeField>&)>& fn) {
  if (d > n) throw std::invalid_argument("subspace dimension exceeds ambient");
  std::vector<std::size_t> piv(d);
  for (std::size_t i = 0; i < d; ++i) piv[i] = i;
  while (true) {
    std::vector<bool> is_pivot(n, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = piv[i] + 1; j < n; ++j)
        if (!is_pivot[j]) free.emplace_back(i, j);
    std::vector<std::uint32_t> digits(free.size(), 0);
    while (true) {
      Matrix<PrimeField> m(field, d, n);
      for (std::size_t i = 0; i < d; ++i) m(i, piv[i]) = 1;
      for (std::size_t t = 0; t < free.size(); ++t) m(free[t].first, free[t].second) = digits[t];
      fn(Subspace<PrimeField>::span(m));
      std::size_t t = 0;
      while (t < digits.size() && ++digits[t] == field.p()) digits[t++] = 0;
      if (t == digits.size()) break;
    }
    // next combination
    std::size_t i = d;
    while (i > 0 && piv[i - 1] == n - d + (i - 1)) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
}

// All d-dimensional subspaces of F_p^n, sorted by canonical basis.
inline std::vector<Subspace<PrimeField>> enumerate_subspaces(const PrimeField& field, std::size_t n,
                                                             std::size_t d,
                                                             std::uint64_t budget = kDefaultBudget) {
  check_budget(gaussian_binomial(field.p(), n, d), budget,
               "Gras(" + std::to_string(d) + ", F_" + std::to_string(field.p()) + "^" +
                   std::to_string(n) + ")");
  std::vector<Subspace<PrimeField>> out;
  for_each_subspace(field, n, d, [&](const Subspace<PrimeField>& s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  return out;
}

// Every vector of F_p^n, last coordinate fastest.
inline void for_each_vector(const PrimeField& field, std::size_t n,
                            const std::function<void(const Vec<PrimeField>&)>& fn) {
  Vec<PrimeField> v(n, 0);
  while (true) {
    fn(v);
    std::size_t t = n;
    while (t > 0 && ++v[t - 1] == field.p()) v[--t] = 0;
    if (t == 0) break;
  }
}

// Every element of a subspace over F_p, by coefficient vectors.
inline void for_each_element(const Subspace<PrimeField>& s,
                             const std::function<void(const Vec<PrimeField>&)>& fn) {
  for_each_vector(s.field(), s.dim(), [&](const Vec<PrimeField>& c) { fn(s.combine(c)); });
}

}  // namespace flaggeom

#endif  // FLAGGEOM_SUBSPACE_HPP
