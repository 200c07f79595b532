#ifndef FLAGGEOM_GRASSMANN_HPP
#define FLAGGEOM_GRASSMANN_HPP

#include <optional>

#include "charts.hpp"
#include "jordan.hpp"

namespace flaggeom {

// Affine picture of Gras_{p,q} around the base point o = F^p (first p coordinates) with
// o' = F^q (last q): X in M(q,p) is the graph span[1; X], Y in M(p,q) the copoint span[Y; 1].

template <class F>
Flag<F> graph_point(const Matrix<F>& x) {
  const F& k = x.field();
  std::size_t q = x.rows(), p = x.cols();
  Matrix<F> cols(k, p + q, p);
  cols.set_block(0, 0, Matrix<F>::identity(k, p));
  cols.set_block(p, 0, x);
  return Flag<F>::of_subspace(Subspace<F>::span(cols.transpose()));
}

template <class F>
Flag<F> graph_copoint(const Matrix<F>& y) {
  const F& k = y.field();
  std::size_t p = y.rows(), q = y.cols();
  Matrix<F> cols(k, p + q, q);
  cols.set_block(0, 0, y);
  cols.set_block(p, 0, Matrix<F>::identity(k, q));
  return Flag<F>::of_subspace(Subspace<F>::span(cols.transpose()));
}

// X with s = span[1; X], if s is a graph over the first p coordinates.
template <class F>
std::optional<Matrix<F>> graph_of(const Subspace<F>& s, std::size_t p) {
  if (s.dim() != p) return std::nullopt;
  Matrix<F> cols = s.basis().transpose();
  Matrix<F> top = cols.block(0, 0, p, p);
  if (!is_invertible(top)) return std::nullopt;
  return cols.block(p, 0, s.ambient() - p, p) * inverse(top);
}

// (X, Y) and (-X, Y) quasi-invertible, i.e. both X and -X lie in the chart of Y.
template <class F>
bool midpoint_defined(const Matrix<F>& x, const Matrix<F>& y) {
  auto jp = JordanPair<F>::rect(x.field(), x.rows(), x.cols());
  return quasi_invertible(jp, x, y).has_value() && quasi_invertible(jp, -x, y).has_value();
}

// Midpoint of X and -X in the chart of points transversal to Y.
template <class F>
Matrix<F> chart_midpoint(const Matrix<F>& x, const Matrix<F>& y) {
  const F& k = x.field();
  Flag<F> m = pi_r(graph_point(x), graph_copoint(y), graph_point(Matrix<F>(-x)), k.inv(k.from_int(2)));
  auto g = graph_of(m.step(1), x.cols());
  if (!g) throw std::logic_error("midpoint left the affine part of the base chart");
  return *g;
}

}  // namespace flaggeom

#endif  // FLAGGEOM_GRASSMANN_HPP
