#ifndef FLAGGEOM_LAGRANGIAN_HPP
#define FLAGGEOM_LAGRANGIAN_HPP

#include <string>
#include <utility>
#include <vector>

#include "intrinsic.hpp"

namespace flaggeom {

enum class Symmetry { symmetric, skew };

inline std::string to_string(Symmetry s) { return s == Symmetry::symmetric ? "symmetric" : "skew"; }

// Non-degenerate symmetric or skew form beta(u, v) = u^T G v.
template <class F>
class BilinearForm {
 public:
  BilinearForm(Matrix<F> gram, Symmetry sym) : gram_(std::move(gram)), sym_(sym), gram_inv_(gram_.field(), 0, 0) {
    const F& k = gram_.field();
    if (!k.int_invertible(2)) throw FieldTooSmall("bilinear forms need 2 to be invertible");
    if (!gram_.is_square()) throw std::invalid_argument("gram matrix must be square");
    Matrix<F> t = gram_.transpose();
    if (sym == Symmetry::symmetric ? !(t == gram_) : !(t == -gram_))
      throw std::invalid_argument("gram matrix does not have the declared symmetry");
    if (!is_invertible(gram_)) throw std::invalid_argument("gram matrix is degenerate");
    gram_inv_ = inverse(gram_);
  }

  // (0 -I; I 0)
  static BilinearForm symplectic(const F& k, std::size_t m) {
    Matrix<F> g(k, 2 * m, 2 * m);
    g.set_block(0, m, -Matrix<F>::identity(k, m));
    g.set_block(m, 0, Matrix<F>::identity(k, m));
    return BilinearForm(g, Symmetry::skew);
  }
  // (0 I; I 0)
  static BilinearForm artinian(const F& k, std::size_t m) {
    Matrix<F> g(k, 2 * m, 2 * m);
    g.set_block(0, m, Matrix<F>::identity(k, m));
    g.set_block(m, 0, Matrix<F>::identity(k, m));
    return BilinearForm(g, Symmetry::symmetric);
  }

  const Matrix<F>& gram() const { return gram_; }
  Symmetry symmetry() const { return sym_; }
  std::size_t dim() const { return gram_.rows(); }
  const F& field() const { return gram_.field(); }

  typename F::value_type operator()(const Vec<F>& u, const Vec<F>& v) const {
    const F& k = field();
    auto gv = gram_.apply(v);
    auto s = k.zero();
    for (std::size_t i = 0; i < u.size(); ++i) s = k.add(s, k.mul(u[i], gv[i]));
    return s;
  }
  // X* with beta(Xu, v) = beta(u, X* v).
  Matrix<F> adjoint(const Matrix<F>& x) const { return gram_inv_ * x.transpose() * gram_; }

 private:
  Matrix<F> gram_;
  Symmetry sym_;
  Matrix<F> gram_inv_;
};

template <class F>
Subspace<F> perp(const Subspace<F>& s, const BilinearForm<F>& b) {
  if (s.ambient() != b.dim()) throw std::invalid_argument("perp: ambient does not match the form");
  if (s.is_zero()) return Subspace<F>::full(s.field(), s.ambient());
  return kernel(s.basis() * b.gram());
}

// (f^⊥)_j = (f_{k-j})^⊥
template <class F>
Flag<F> perp(const Flag<F>& f, const BilinearForm<F>& b) {
  std::size_t k = f.length();
  std::vector<Subspace<F>> steps;
  for (std::size_t j = 1; j < k; ++j) steps.push_back(perp(f.step(k - j), b));
  return Flag<F>(f.field(), f.ambient(), std::move(steps));
}

template <class F>
bool is_lagrangian(const Flag<F>& f, const BilinearForm<F>& b) {
  return perp(f, b) == f;
}

template <class F>
bool is_isotropic(const Subspace<F>& s, const BilinearForm<F>& b) {
  return perp(s, b).contains(s);
}

template <class F>
std::pair<Flag<F>, Flag<F>> perp_automorphism(const Flag<F>& e, const Flag<F>& f, const BilinearForm<F>& b) {
  return {perp(e, b), perp(f, b)};
}

inline std::vector<PFlag> enumerate_lagrangian(const PrimeField& k, const FlagType& t, const BilinearForm<PrimeField>& b,
                                               std::uint64_t budget = kDefaultBudget) {
  if (t.ambient() != b.dim()) throw std::invalid_argument("flag type does not match the form");
  std::vector<PFlag> out;
  for (auto& f : enumerate_flags(k, t, budget))
    if (is_lagrangian(f, b)) out.push_back(std::move(f));
  return out;
}

// Lagrangian flags of a self-dual type against Lagrangian flags, with the inherited charts.
inline Geometry lagrangian_geometry(const PrimeField& k, const FlagType& t, const BilinearForm<PrimeField>& b,
                                    std::uint64_t budget = kDefaultBudget) {
  if (!(t.co_type() == t)) throw std::invalid_argument("Lagrangian flags need a self-dual type");
  auto pts = enumerate_lagrangian(k, t, b, budget);
  auto cps = pts;
  return Geometry(k, t, std::move(pts), std::move(cps),
                  "Lagrangian" + t.to_string() + " (" + to_string(b.symmetry()) + ") over " + k.name());
}

// Identifies the chart of Lagrangians transversal to o' with origin o (both Lagrangian, k = 2)
// with m x m matrices: X b_i = sum_l M(l, i) c_l, where b is the basis of o and c the basis of o'
// dual to it, beta(c_j, b_i) = delta_ij. Lagrangian points give symmetric M for a skew form
// and skew M for a symmetric form.
template <class F>
class LagrangianChartModel {
 public:
  LagrangianChartModel(const Subspace<F>& o, const Subspace<F>& o2, const BilinearForm<F>& b)
      : b_(b), basis_(o.basis()), dual_(o.field(), 0, 0) {
    Flag<F> fo = Flag<F>::of_subspace(o), fo2 = Flag<F>::of_subspace(o2);
    if (!is_lagrangian(fo, b) || !is_lagrangian(fo2, b)) throw std::invalid_argument("chart model needs Lagrangian subspaces");
    if (!is_transversal(fo, fo2)) throw std::invalid_argument("chart model needs a transversal pair");
    Matrix<F> c0 = o2.basis();
    dual_ = inverse(c0 * b.gram() * basis_.transpose()) * c0;
  }

  std::size_t m() const { return basis_.rows(); }
  // symmetric operators for a skew form, skew operators for a symmetric form
  bool expects_symmetric() const { return b_.symmetry() == Symmetry::skew; }

  Matrix<F> to_model(const Matrix<F>& x) const {
    const F& k = b_.field();
    Matrix<F> out(k, m(), m());
    for (std::size_t i = 0; i < m(); ++i) {
      auto xb = x.apply(basis_.row(i));
      for (std::size_t l = 0; l < m(); ++l) out(l, i) = b_(xb, basis_.row(l));
    }
    return out;
  }
  Matrix<F> from_model(const Matrix<F>& mm) const {
    const F& k = b_.field();
    Matrix<F> images = vstack(mm.transpose() * dual_, Matrix<F>(k, m(), b_.dim()));
    return map_from_images(vstack(basis_, dual_), images);
  }
  bool in_model_space(const Matrix<F>& mm) const {
    return expects_symmetric() ? mm.transpose() == mm : mm.transpose() == -mm;
  }

 private:
  BilinearForm<F> b_;
  Matrix<F> basis_;
  Matrix<F> dual_;
};

// L_e = {f Lagrangian : e1 ⊆ f ⊆ e1^⊥} in a k = 2 Lagrangian geometry.
inline PointSet lagrangian_standard_members(const Geometry& g, const PSubspace& e1, const BilinearForm<PrimeField>& b) {
  if (g.length() != 2) throw std::invalid_argument("Lagrangian standard members need k = 2");
  if (!is_isotropic(e1, b)) throw std::invalid_argument("governor must be isotropic");
  return standard_members(g, ShortFlagGovernor{e1, perp(e1, b)});
}

}  // namespace flaggeom

#endif  // FLAGGEOM_LAGRANGIAN_HPP
