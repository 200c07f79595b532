#ifndef FLAGGEOM_CHARTS_HPP
#define FLAGGEOM_CHARTS_HPP

#include <string>
#include <vector>

#include "flags.hpp"

namespace flaggeom {

// {X in End(F^n) : X(from) ⊆ to}, as a subspace of row-major vectorized n x n matrices.
template <class F>
Matrix<F> maps_into_constraints(const Subspace<F>& from, const Subspace<F>& to) {
  const F& k = from.field();
  std::size_t n = from.ambient();
  Subspace<F> ann = annihilator(to);
  Matrix<F> rows(k, from.dim() * ann.dim(), n * n);
  std::size_t r = 0;
  for (std::size_t b = 0; b < from.dim(); ++b)
    for (std::size_t w = 0; w < ann.dim(); ++w, ++r)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          rows(r, i * n + j) = k.mul(ann.basis()(w, i), from.basis()(b, j));
  return rows;
}

// u(f) = {X : X(f_i) ⊆ f_{i-1}}, vectorized.
template <class F>
Subspace<F> nilpotent_algebra(const Flag<F>& f) {
  std::size_t n = f.ambient();
  Matrix<F> all(f.field(), 0, n * n);
  for (std::size_t i = 1; i <= f.length(); ++i) all = vstack(all, maps_into_constraints(f.step(i), f.step(i - 1)));
  return kernel(all);
}

// p(S) = {X : X(S) ⊆ S}, vectorized.
template <class F>
Subspace<F> stabilizer_algebra(const Subspace<F>& s) {
  return kernel(maps_into_constraints(s, s));
}

template <class F>
bool maps_into(const Matrix<F>& x, const Subspace<F>& from, const Subspace<F>& to) {
  if (from.dim() == 0) return true;
  return to.contains(transform(x, from));
}

template <class F>
bool in_nilpotent_algebra(const Matrix<F>& x, const Flag<F>& f) {
  for (std::size_t i = 1; i <= f.length(); ++i)
    if (!maps_into(x, f.step(i), f.step(i - 1))) return false;
  return true;
}

// Charts on flags of length k use exp/log truncated at degree k-1.
template <class F>
void require_chart_field(const F& field, std::size_t k) {
  require_factorials_invertible(field, static_cast<int>(k) - 1,
                                "chart structure on flags of length " + std::to_string(k));
}

// sum_{i<k} X^i / i!
template <class F>
Matrix<F> exp_nilpotent(const Matrix<F>& x, std::size_t k) {
  const F& fld = x.field();
  Matrix<F> out = Matrix<F>::identity(fld, x.rows());
  Matrix<F> term = out;
  for (std::size_t i = 1; i < k; ++i) {
    term = (term * x).scaled(fld.inv(fld.from_int(static_cast<long long>(i))));
    if (term.is_zero()) break;
    out = out + term;
  }
  return out;
}

// log(1+Y) = sum_{i=1}^{k-1} (-1)^{i+1} Y^i / i
template <class F>
Matrix<F> log_unipotent(const Matrix<F>& u, std::size_t k) {
  const F& fld = u.field();
  Matrix<F> y = u - Matrix<F>::identity(fld, u.rows());
  Matrix<F> out(fld, u.rows(), u.cols());
  Matrix<F> power = Matrix<F>::identity(fld, u.rows());
  for (std::size_t i = 1; i < k; ++i) {
    power = power * y;
    if (power.is_zero()) break;
    auto c = fld.inv(fld.from_int(static_cast<long long>(i)));
    if (i % 2 == 0) c = fld.neg(c);
    out = out + power.scaled(c);
  }
  return out;
}

// Element X of u(a).
template <class F>
class NilpotentOp {
 public:
  NilpotentOp(Flag<F> flag, Matrix<F> op) : flag_(std::move(flag)), op_(std::move(op)) {
    if (op_.rows() != flag_.ambient() || op_.cols() != flag_.ambient())
      throw std::invalid_argument("nilpotent operator has wrong size");
    if (!in_nilpotent_algebra(op_, flag_))
      throw std::invalid_argument("operator does not lower the flag by one step");
  }
  const Flag<F>& flag() const { return flag_; }
  const Matrix<F>& op() const { return op_; }

 private:
  Flag<F> flag_;
  Matrix<F> op_;
};

// Element g of U(a): (g - 1) lowers the flag by one step.
template <class F>
class UnipotentElem {
 public:
  UnipotentElem(Flag<F> flag, Matrix<F> mat) : flag_(std::move(flag)), mat_(std::move(mat)) {
    if (mat_.rows() != flag_.ambient() || mat_.cols() != flag_.ambient())
      throw std::invalid_argument("unipotent element has wrong size");
    if (!in_nilpotent_algebra(mat_ - Matrix<F>::identity(mat_.field(), mat_.rows()), flag_))
      throw std::invalid_argument("matrix is not in the unipotent group of the flag");
  }
  const Flag<F>& flag() const { return flag_; }
  const Matrix<F>& mat() const { return mat_; }

 private:
  Flag<F> flag_;
  Matrix<F> mat_;
};

template <class F>
UnipotentElem<F> exp(const NilpotentOp<F>& x) {
  require_chart_field(x.op().field(), x.flag().length());
  return UnipotentElem<F>(x.flag(), exp_nilpotent(x.op(), x.flag().length()));
}

template <class F>
NilpotentOp<F> log(const UnipotentElem<F>& u) {
  require_chart_field(u.mat().field(), u.flag().length());
  return NilpotentOp<F>(u.flag(), log_unipotent(u.mat(), u.flag().length()));
}

namespace detail {

template <class F>
std::vector<Subspace<F>> to_coordinates(const Subspace<F>& w, const std::vector<Subspace<F>>& subs) {
  std::vector<Subspace<F>> out;
  for (const auto& s : subs) {
    Matrix<F> c(w.field(), s.dim(), w.dim());
    for (std::size_t r = 0; r < s.dim(); ++r) {
      auto coords = w.coordinates(s.basis().row(r));
      for (std::size_t j = 0; j < w.dim(); ++j) c(r, j) = coords[j];
    }
    out.push_back(Subspace<F>::span(c));
  }
  return out;
}

// Proper steps f, e, e2 of three flags in F^n of the same length, with e and e2 transversal to f.
// Follows the induction: move the first step of e onto that of e2 fixing the top step of f,
// then recurse inside that top step.
template <class F>
Matrix<F> transporter_steps(const F& field, std::size_t n, const std::vector<Subspace<F>>& f,
                            const std::vector<Subspace<F>>& e, const std::vector<Subspace<F>>& e2) {
  if (f.empty()) return Matrix<F>::identity(field, n);
  const Subspace<F>& top = f.back();
  const Subspace<F>& first = e.front();
  const Subspace<F>& first2 = e2.front();

  Matrix<F> domain = vstack(first.basis(), top.basis());
  DirectSum<F> split2(first2, top);
  Matrix<F> moved(field, first.dim(), n);
  for (std::size_t r = 0; r < first.dim(); ++r) {
    auto part = split2.split(first.basis().row(r)).first;
    for (std::size_t j = 0; j < n; ++j) moved(r, j) = part[j];
  }
  Matrix<F> u1 = map_from_images(domain, vstack(moved, top.basis()));

  std::vector<Subspace<F>> fin(f.begin(), f.end() - 1), ein, e2in;
  for (std::size_t j = 1; j < e.size(); ++j) {
    ein.push_back(intersect(e[j], top));
    e2in.push_back(intersect(e2[j], top));
  }
  Matrix<F> u2 = transporter_steps(field, top.dim(), to_coordinates(top, fin), to_coordinates(top, ein),
                                   to_coordinates(top, e2in));
  // extend u2 by the identity on the first step of e
  Matrix<F> top_images = u2.transpose() * top.basis();
  Matrix<F> u3 = map_from_images(domain, vstack(first.basis(), top_images));
  return u1 * u3;
}

}  // namespace detail

// The unique u in U(f) with u.e = e2.
template <class F>
UnipotentElem<F> transporter(const Flag<F>& f, const Flag<F>& e, const Flag<F>& e2) {
  if (!is_transversal(e, f) || !is_transversal(e2, f))
    throw std::invalid_argument("transporter: flags are not transversal to the base flag");
  Matrix<F> u = detail::transporter_steps(f.field(), f.ambient(), f.proper_steps(), e.proper_steps(),
                                          e2.proper_steps());
  return UnipotentElem<F>(f, std::move(u));
}

// Linear chart a^⊤ with origin x: X in u(a) corresponds to exp(X).x.
template <class F>
class Chart {
 public:
  Chart(Flag<F> origin, Flag<F> copoint) : origin_(std::move(origin)), copoint_(std::move(copoint)) {
    if (!is_transversal(origin_, copoint_)) throw std::invalid_argument("chart origin is not transversal to the chart");
    require_chart_field(origin_.field(), origin_.length());
  }
  const Flag<F>& origin() const { return origin_; }
  const Flag<F>& copoint() const { return copoint_; }
  std::size_t length() const { return origin_.length(); }

  bool contains(const Flag<F>& y) const { return is_transversal(y, copoint_); }

  Matrix<F> coord(const Flag<F>& y) const {
    if (!contains(y)) throw std::invalid_argument("point is not in the chart domain");
    auto u = detail::transporter_steps(origin_.field(), origin_.ambient(), copoint_.proper_steps(),
                                       origin_.proper_steps(), y.proper_steps());
    return log_unipotent(u, length());
  }
  Flag<F> point(const Matrix<F>& x) const { return origin_.transformed(exp_nilpotent(x, length())); }

 private:
  Flag<F> origin_;
  Flag<F> copoint_;
};

template <class F>
struct ChartPoint {
  Flag<F> x;  // origin
  Flag<F> a;  // chart
  NilpotentOp<F> coord;
};

template <class F>
ChartPoint<F> to_chart(const Flag<F>& y, const Flag<F>& origin, const Flag<F>& a) {
  Chart<F> c(origin, a);
  return {origin, a, NilpotentOp<F>(a, c.coord(y))};
}

template <class F>
Flag<F> from_chart(const ChartPoint<F>& cp) {
  return Chart<F>(cp.x, cp.a).point(cp.coord.op());
}

// r.y in the linear space (a^⊤, x).
template <class F>
Flag<F> pi_r(const Flag<F>& x, const Flag<F>& a, const Flag<F>& y, const typename F::value_type& r) {
  Chart<F> c(x, a);
  return c.point(c.coord(y).scaled(r));
}

// y + z in the linear space (a^⊤, x).
template <class F>
Flag<F> sigma(const Flag<F>& x, const Flag<F>& a, const Flag<F>& y, const Flag<F>& z) {
  Chart<F> c(x, a);
  return c.point(c.coord(y) + c.coord(z));
}

}  // namespace flaggeom

#endif  // FLAGGEOM_CHARTS_HPP
