#ifndef FLAGGEOM_FLAGS_HPP
#define FLAGGEOM_FLAGS_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "subspace.hpp"

namespace flaggeom {

// Step dimensions d_1 < ... < d_k = n.
struct FlagType {
  std::vector<std::size_t> dims;

  std::size_t length() const { return dims.size(); }
  std::size_t ambient() const { return dims.empty() ? 0 : dims.back(); }

  void validate() const {
    if (dims.empty()) throw std::invalid_argument("flag type must have at least one step");
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (dims[i] == 0) throw std::invalid_argument("flag type steps must be nonzero");
      if (i > 0 && dims[i] <= dims[i - 1])
        throw std::invalid_argument("flag type dims must strictly increase");
    }
  }
  // Type of the flags transversal to flags of this type: d'_i = n - d_{k-i}.
  FlagType co_type() const {
    std::size_t k = length(), n = ambient();
    FlagType t;
    for (std::size_t i = 1; i < k; ++i) t.dims.push_back(n - dims[k - i - 1]);
    t.dims.push_back(n);
    return t;
  }
  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
    return s + "]";
  }
  bool operator==(const FlagType&) const = default;
};

// Strictly ascending chain 0 < f_1 < ... < f_k = F^n. Only the proper steps are stored.
template <class F>
class Flag {
 public:
  // Accepts the proper steps, optionally followed by the full space.
  Flag(const F& field, std::size_t n, std::vector<Subspace<F>> steps) : full_(Subspace<F>::full(field, n)) {
    if (!steps.empty() && steps.back().is_full()) steps.pop_back();
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (steps[i].ambient() != n) throw std::invalid_argument("flag step has wrong ambient");
      if (steps[i].is_zero() || steps[i].is_full())
        throw std::invalid_argument("flag steps must be proper nonzero subspaces");
      if (i > 0 && (steps[i].dim() <= steps[i - 1].dim() || !steps[i].contains(steps[i - 1])))
        throw std::invalid_argument("flag steps must be strictly ascending");
    }
    steps_ = std::move(steps);
  }
  // Length-2 flag 0 < s < F^n.
  static Flag of_subspace(const Subspace<F>& s) { return Flag(s.field(), s.ambient(), {s}); }

  const F& field() const { return full_.field(); }
  std::size_t ambient() const { return full_.ambient(); }
  std::size_t length() const { return steps_.size() + 1; }
  // f_0 = 0 and f_k = F^n.
  Subspace<F> step(std::size_t i) const {
    if (i == 0) return Subspace<F>::zero(field(), ambient());
    if (i == length()) return full_;
    if (i > length()) throw std::out_of_range("flag step index out of range");
    return steps_[i - 1];
  }
  const std::vector<Subspace<F>>& proper_steps() const { return steps_; }

  FlagType type() const {
    FlagType t;
    for (const auto& s : steps_) t.dims.push_back(s.dim());
    t.dims.push_back(ambient());
    return t;
  }

  Flag transformed(const Matrix<F>& g) const {
    std::vector<Subspace<F>> out;
    out.reserve(steps_.size());
    for (const auto& s : steps_) out.push_back(transform(g, s));
    return Flag(field(), ambient(), std::move(out));
  }

  bool operator==(const Flag& o) const { return ambient() == o.ambient() && steps_ == o.steps_; }
  bool operator!=(const Flag& o) const { return !(*this == o); }
  bool operator<(const Flag& o) const {
    if (ambient() != o.ambient()) return ambient() < o.ambient();
    return steps_ < o.steps_;
  }

 private:
  Subspace<F> full_;
  std::vector<Subspace<F>> steps_;
};

template <class F>
bool same_type(const Flag<F>& e, const Flag<F>& f) {
  return e.type() == f.type();
}

template <class F>
void check_comparable(const Flag<F>& e, const Flag<F>& f) {
  if (e.ambient() != f.ambient()) throw std::invalid_argument("flags have different ambient dimension");
  if (e.length() != f.length()) throw std::invalid_argument("flags have different length");
}

// e_i + f_{k-i} = F^n directly, for i = 1..k-1.
template <class F>
bool is_transversal(const Flag<F>& e, const Flag<F>& f) {
  check_comparable(e, f);
  std::size_t k = e.length();
  for (std::size_t i = 1; i < k; ++i)
    if (!is_complementary(e.step(i), f.step(k - i))) return false;
  return true;
}

// Direct sum decomposition F^n = g_1 + ... + g_k with nonzero parts.
template <class F>
class Grading {
 public:
  explicit Grading(std::vector<Subspace<F>> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("grading needs at least one part");
    std::size_t n = parts_[0].ambient(), total = 0;
    Subspace<F> acc = Subspace<F>::zero(parts_[0].field(), n);
    for (const auto& g : parts_) {
      if (g.ambient() != n) throw std::invalid_argument("grading parts have different ambient");
      if (g.is_zero()) throw std::invalid_argument("grading parts must be nonzero");
      total += g.dim();
      acc = sum(acc, g);
    }
    if (total != n || !acc.is_full()) throw std::invalid_argument("grading parts do not form a direct sum");
  }

  std::size_t length() const { return parts_.size(); }
  std::size_t ambient() const { return parts_[0].ambient(); }
  // 1-based, as g_1..g_k.
  const Subspace<F>& part(std::size_t j) const { return parts_.at(j - 1); }
  const std::vector<Subspace<F>>& parts() const { return parts_; }

  bool operator==(const Grading& o) const { return parts_ == o.parts_; }

 private:
  std::vector<Subspace<F>> parts_;
};

// g_j = e_j ∩ f_{k+1-j}
template <class F>
Grading<F> grading_from_pair(const Flag<F>& e, const Flag<F>& f) {
  if (!is_transversal(e, f)) throw std::invalid_argument("grading_from_pair: flags are not transversal");
  std::size_t k = e.length();
  std::vector<Subspace<F>> parts;
  for (std::size_t j = 1; j <= k; ++j) parts.push_back(intersect(e.step(j), f.step(k + 1 - j)));
  return Grading<F>(std::move(parts));
}

// (f+, f-) with f+_j = g_1 + ... + g_j and f-_i = g_{k-i+1} + ... + g_k.
template <class F>
std::pair<Flag<F>, Flag<F>> flags_from_grading(const Grading<F>& g) {
  std::size_t k = g.length(), n = g.ambient();
  const F& field = g.part(1).field();
  std::vector<Subspace<F>> up, down;
  Subspace<F> acc = Subspace<F>::zero(field, n);
  for (std::size_t j = 1; j < k; ++j) {
    acc = sum(acc, g.part(j));
    up.push_back(acc);
  }
  acc = Subspace<F>::zero(field, n);
  for (std::size_t i = 1; i < k; ++i) {
    acc = sum(acc, g.part(k - i + 1));
    down.push_back(acc);
  }
  return {Flag<F>(field, n, std::move(up)), Flag<F>(field, n, std::move(down))};
}

// Flag spanned by leading coordinate vectors: f_i = span(e_1..e_{d_i}).
template <class F>
Flag<F> standard_flag(const F& field, const FlagType& t) {
  t.validate();
  std::vector<Subspace<F>> steps;
  for (std::size_t i = 0; i + 1 < t.length(); ++i) {
    std::vector<std::size_t> idx(t.dims[i]);
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
    steps.push_back(Subspace<F>::coordinate(field, t.ambient(), idx));
  }
  return Flag<F>(field, t.ambient(), std::move(steps));
}

// Flag spanned by trailing coordinate vectors; transversal to standard_flag of the co-type.
template <class F>
Flag<F> opposite_standard_flag(const F& field, const FlagType& t) {
  t.validate();
  std::size_t n = t.ambient();
  std::vector<Subspace<F>> steps;
  for (std::size_t i = 0; i + 1 < t.length(); ++i) {
    std::vector<std::size_t> idx;
    for (std::size_t j = n - t.dims[i]; j < n; ++j) idx.push_back(j);
    steps.push_back(Subspace<F>::coordinate(field, n, idx));
  }
  return Flag<F>(field, n, std::move(steps));
}

inline std::uint64_t count_flags(std::uint64_t q, const FlagType& t) {
  std::uint64_t total = 1;
  std::size_t prev = 0;
  for (std::size_t d : t.dims) {
    std::uint64_t c = gaussian_binomial(q, t.ambient() - prev, d - prev);
    if (c != 0 && total > std::numeric_limits<std::uint64_t>::max() / c)
      return std::numeric_limits<std::uint64_t>::max();
    total *= c;
    prev = d;
  }
  return total;
}

// All flags of the given type over F_p, sorted step by step starting from f_1.
inline std::vector<Flag<PrimeField>> enumerate_flags(const PrimeField& field, const FlagType& t,
                                                     std::uint64_t budget = kDefaultBudget) {
  t.validate();
  check_budget(count_flags(field.p(), t), budget, "flag variety of type " + t.to_string());
  using S = Subspace<PrimeField>;
  std::size_t n = t.ambient();
  std::vector<std::vector<S>> partial{{}};
  S zero = S::zero(field, n);
  for (std::size_t i = 0; i + 1 < t.length(); ++i) {
    std::vector<std::vector<S>> next;
    for (const auto& chain : partial) {
      const S& below = chain.empty() ? zero : chain.back();
      // steps above `below` correspond to subspaces of a complement
      S comp = standard_complement(below);
      std::size_t extra = t.dims[i] - below.dim();
      for_each_subspace(field, comp.dim(), extra, [&](const S& w) {
        Matrix<PrimeField> lifted = w.basis() * comp.basis();
        auto c = chain;
        c.push_back(sum(below, S::span(lifted)));
        next.push_back(std::move(c));
      });
    }
    partial = std::move(next);
  }
  std::vector<Flag<PrimeField>> out;
  out.reserve(partial.size());
  for (auto& chain : partial) out.emplace_back(field, n, std::move(chain));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace flaggeom

#endif  // FLAGGEOM_FLAGS_HPP
