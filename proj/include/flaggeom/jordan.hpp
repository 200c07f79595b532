#ifndef FLAGGEOM_JORDAN_HPP
#define FLAGGEOM_JORDAN_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "random.hpp"

namespace flaggeom {

// Matrix Jordan pairs: rectangular (V+, V-) = (M(p,q), M(q,p)) or symmetric (Sym, Sym)
// with respect to a symmetric gram matrix S (f^T S = S f). Elements are matrices,
// and the spaces are tracked as subspaces of the row-major vectorized matrices.
template <class F>
class JordanPair {
 public:
  enum class Kind { rect, sym };

  static JordanPair rect(const F& k, std::size_t p, std::size_t q) {
    if (p == 0 || q == 0) throw std::invalid_argument("rectangular pair needs p, q >= 1");
    return JordanPair(Kind::rect, k, p, q, Subspace<F>::full(k, p * q), Subspace<F>::full(k, p * q),
                      Matrix<F>::identity(k, p));
  }
  static JordanPair sym(const Matrix<F>& gram) {
    const F& k = gram.field();
    if (!gram.is_square() || !(gram.transpose() == gram) || !is_invertible(gram))
      throw std::invalid_argument("symmetric pair needs an invertible symmetric gram matrix");
    std::size_t n = gram.rows();
    // f^T S - S f = 0
    Matrix<F> cons(k, n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
          // (f^T S)_{ij} = sum_l f_{li} S_{lj};  (S f)_{ij} = sum_l S_{il} f_{lj}
          cons(i * n + j, l * n + i) = k.add(cons(i * n + j, l * n + i), gram(l, j));
          cons(i * n + j, l * n + j) = k.sub(cons(i * n + j, l * n + j), gram(i, l));
        }
    Subspace<F> s = kernel(cons);
    return JordanPair(Kind::sym, k, n, n, s, s, gram);
  }

  Kind kind() const { return kind_; }
  const F& field() const { return field_; }
  std::size_t p() const { return p_; }
  std::size_t q() const { return q_; }
  const Matrix<F>& gram() const { return gram_; }
  const Subspace<F>& plus_space() const { return plus_; }
  const Subspace<F>& minus_space() const { return minus_; }

  Matrix<F> plus_from_vec(const Vec<F>& v) const { return Matrix<F>::from_vec(field_, p_, q_, v); }
  Matrix<F> minus_from_vec(const Vec<F>& v) const { return Matrix<F>::from_vec(field_, q_, p_, v); }
  std::vector<Matrix<F>> plus_basis() const {
    std::vector<Matrix<F>> out;
    for (const auto& v : plus_.basis_vectors()) out.push_back(plus_from_vec(v));
    return out;
  }
  std::vector<Matrix<F>> minus_basis() const {
    std::vector<Matrix<F>> out;
    for (const auto& v : minus_.basis_vectors()) out.push_back(minus_from_vec(v));
    return out;
  }
  bool in_plus(const Matrix<F>& x) const { return x.rows() == p_ && x.cols() == q_ && plus_.contains(x.vec()); }
  bool in_minus(const Matrix<F>& y) const { return y.rows() == q_ && y.cols() == p_ && minus_.contains(y.vec()); }

  bool operator==(const JordanPair& o) const {
    return kind_ == o.kind_ && p_ == o.p_ && q_ == o.q_ && gram_ == o.gram_;
  }

 private:
  JordanPair(Kind kind, const F& k, std::size_t p, std::size_t q, Subspace<F> plus, Subspace<F> minus, Matrix<F> gram)
      : kind_(kind), field_(k), p_(p), q_(q), plus_(std::move(plus)), minus_(std::move(minus)), gram_(std::move(gram)) {}

  Kind kind_;
  F field_;
  std::size_t p_, q_;
  Subspace<F> plus_, minus_;
  Matrix<F> gram_;
};

// T(x,y,z) = xyz + zyx; the same formula serves both signs.
template <class F>
Matrix<F> T(const Matrix<F>& x, const Matrix<F>& y, const Matrix<F>& z) {
  return x * y * z + z * y * x;
}

// Q(x)y = xyx
template <class F>
Matrix<F> Q(const Matrix<F>& x, const Matrix<F>& y) {
  return x * y * x;
}

namespace detail {

// Matrix (in the basis of `space`) of a linear operator on a space of matrices.
template <class F, class Op>
Matrix<F> operator_matrix(const Subspace<F>& space, std::size_t rows, std::size_t cols, Op op) {
  const F& k = space.field();
  std::size_t d = space.dim();
  Matrix<F> m(k, d, d);
  for (std::size_t j = 0; j < d; ++j) {
    Matrix<F> img = op(Matrix<F>::from_vec(k, rows, cols, space.basis().row(j)));
    if (!space.contains(img.vec())) throw std::logic_error("operator leaves its space");
    auto c = space.coordinates(img.vec());
    for (std::size_t i = 0; i < d; ++i) m(i, j) = c[i];
  }
  return m;
}

template <class F>
Subspace<F> span_of(const F& k, std::size_t n, const std::vector<Matrix<F>>& ms) {
  Matrix<F> rows(k, ms.size(), n);
  for (std::size_t r = 0; r < ms.size(); ++r)
    for (std::size_t j = 0; j < n; ++j) rows(r, j) = ms[r].vec()[j];
  return Subspace<F>::span(rows);
}

}  // namespace detail

// B(x,y) = id - T(x,y,.) + Q(x)Q(y) on V+, in the basis of V+.
template <class F>
Matrix<F> bergmann_plus(const JordanPair<F>& jp, const Matrix<F>& x, const Matrix<F>& y) {
  return detail::operator_matrix(jp.plus_space(), jp.p(), jp.q(),
                                 [&](const Matrix<F>& z) { return z - T(x, y, z) + Q(x, Q(y, z)); });
}

// B(y,x) on V-, for y in V-, x in V+.
template <class F>
Matrix<F> bergmann_minus(const JordanPair<F>& jp, const Matrix<F>& y, const Matrix<F>& x) {
  return detail::operator_matrix(jp.minus_space(), jp.q(), jp.p(),
                                 [&](const Matrix<F>& w) { return w - T(y, x, w) + Q(y, Q(x, w)); });
}

template <class F>
struct StructureElement {
  Matrix<F> plus;   // B(x,y) on V+
  Matrix<F> minus;  // B(y,x)^{-1} on V-
};

// beta(x,y) when B(x,y) is invertible.
template <class F>
std::optional<StructureElement<F>> quasi_invertible(const JordanPair<F>& jp, const Matrix<F>& x, const Matrix<F>& y) {
  Matrix<F> bp = bergmann_plus(jp, x, y);
  if (!is_invertible(bp)) return std::nullopt;
  Matrix<F> bm = bergmann_minus(jp, y, x);
  if (!is_invertible(bm)) throw std::logic_error("B(x,y) invertible but B(y,x) is not");
  return StructureElement<F>{bp, inverse(bm)};
}

template <class F>
struct InnerIdeal {
  JordanPair<F> pair;
  Subspace<F> space;  // inside the vectorized V+
};

template <class F>
struct IdealViolation {
  std::size_t i, j;       // basis indices of the ideal (i == j for the quadratic test)
  std::size_t minus_idx;  // basis index of V-
};

// Q(I)V- ⊆ I checked on basis elements and their polarizations, valid in every characteristic.
template <class F>
std::optional<IdealViolation<F>> inner_ideal_violation(const JordanPair<F>& jp, const Subspace<F>& s) {
  auto basis = s.basis_vectors();
  auto minus = jp.minus_basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Matrix<F> bi = jp.plus_from_vec(basis[i]);
    for (std::size_t e = 0; e < minus.size(); ++e) {
      if (!s.contains(Q(bi, minus[e]).vec())) return IdealViolation<F>{i, i, e};
      for (std::size_t j = i + 1; j < basis.size(); ++j)
        if (!s.contains(T(bi, minus[e], jp.plus_from_vec(basis[j])).vec())) return IdealViolation<F>{i, j, e};
    }
  }
  return std::nullopt;
}

template <class F>
bool is_inner_ideal(const JordanPair<F>& jp, const Subspace<F>& s) {
  if (!jp.plus_space().contains(s)) return false;
  return !inner_ideal_violation(jp, s).has_value();
}

// T(I, V-, I) ⊆ I on basis elements (agrees with the quadratic test when 2 is invertible).
template <class F>
bool is_inner_ideal_trilinear(const JordanPair<F>& jp, const Subspace<F>& s) {
  if (!jp.plus_space().contains(s)) return false;
  auto basis = s.basis_vectors();
  for (const auto& e : jp.minus_basis())
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j)
        if (!s.contains(T(jp.plus_from_vec(basis[i]), e, jp.plus_from_vec(basis[j])).vec())) return false;
  return true;
}

// [x] = Q(x)V-
template <class F>
InnerIdeal<F> principal_ideal(const JordanPair<F>& jp, const Matrix<F>& x) {
  std::vector<Matrix<F>> imgs;
  for (const auto& e : jp.minus_basis()) imgs.push_back(Q(x, e));
  return {jp, detail::span_of(jp.field(), jp.p() * jp.q(), imgs)};
}

// (x) = [x] + Kx
template <class F>
InnerIdeal<F> generated_ideal(const JordanPair<F>& jp, const Matrix<F>& x) {
  auto pi = principal_ideal(jp, x);
  return {jp, sum(pi.space, Subspace<F>::span(Matrix<F>::from_vec(jp.field(), 1, jp.p() * jp.q(), x.vec())))};
}

// I_{E,F} = {f in M(p,q) : E ⊆ ker f, im f ⊆ F} with E ⊆ F^q, F ⊆ F^p.
template <class F>
InnerIdeal<F> ief_ideal(const JordanPair<F>& jp, const Subspace<F>& e, const Subspace<F>& f) {
  if (jp.kind() != JordanPair<F>::Kind::rect) throw std::invalid_argument("I_{E,F} needs a rectangular pair");
  if (e.ambient() != jp.q() || f.ambient() != jp.p()) throw std::invalid_argument("I_{E,F}: shape mismatch");
  const F& k = jp.field();
  std::size_t p = jp.p(), q = jp.q();
  Subspace<F> ann = annihilator(f);
  Matrix<F> cons(k, e.dim() * p + ann.dim() * q, p * q);
  std::size_t r = 0;
  for (std::size_t b = 0; b < e.dim(); ++b)
    for (std::size_t i = 0; i < p; ++i, ++r)
      for (std::size_t j = 0; j < q; ++j) cons(r, i * q + j) = e.basis()(b, j);
  for (std::size_t w = 0; w < ann.dim(); ++w)
    for (std::size_t j = 0; j < q; ++j, ++r)
      for (std::size_t i = 0; i < p; ++i) cons(r, i * q + j) = ann.basis()(w, i);
  return {jp, kernel(cons)};
}

template <class F>
struct IdealShape {
  Subspace<F> e;  // common kernel, in F^q
  Subspace<F> f;  // joint image, in F^p
};

// (E, F) with I = I_{E,F}, or nothing when I is not of that form.
template <class F>
std::optional<IdealShape<F>> classify(const JordanPair<F>& jp, const Subspace<F>& s) {
  if (jp.kind() != JordanPair<F>::Kind::rect) throw std::invalid_argument("classify needs a rectangular pair");
  const F& k = jp.field();
  Subspace<F> e = Subspace<F>::full(k, jp.q()), f = Subspace<F>::zero(k, jp.p());
  for (const auto& v : s.basis_vectors()) {
    Matrix<F> m = jp.plus_from_vec(v);
    e = intersect(e, kernel(m));
    f = sum(f, image(m));
  }
  if (ief_ideal(jp, e, f).space == s) return IdealShape<F>{e, f};
  return std::nullopt;
}

// I_{E1∩E2, F1+F2}
template <class F>
InnerIdeal<F> join(const JordanPair<F>& jp, const Subspace<F>& i1, const Subspace<F>& i2) {
  auto c1 = classify(jp, i1), c2 = classify(jp, i2);
  if (!c1 || !c2) throw std::invalid_argument("join needs ideals of the form I_{E,F}");
  return ief_ideal(jp, intersect(c1->e, c2->e), sum(c1->f, c2->f));
}

template <class F>
struct Idempotent {
  Matrix<F> plus;
  Matrix<F> minus;

  Idempotent(Matrix<F> ep, Matrix<F> em) : plus(std::move(ep)), minus(std::move(em)) {
    if (plus.rows() != minus.cols() || plus.cols() != minus.rows())
      throw std::invalid_argument("idempotent components have incompatible shapes");
    if (!(Q(plus, minus) == plus) || !(Q(minus, plus) == minus))
      throw std::invalid_argument("not an idempotent: e+e-e+ != e+ or e-e+e- != e-");
  }
  static bool check(const Matrix<F>& ep, const Matrix<F>& em) { return Q(ep, em) == ep && Q(em, ep) == em; }
};

// (x, y) idempotent from the rank normal form C^{-1} x B = (1_r 0; 0 0), y = B (1_r 0; 0 0)^T C^{-1}.
template <class F>
Idempotent<F> complete_idempotent(const Matrix<F>& x) {
  const F& k = x.field();
  std::size_t p = x.rows(), q = x.cols();
  auto piv = rref(x).pivots;
  std::size_t r = piv.size();
  Matrix<F> b(k, q, q), c(k, p, p);
  std::vector<Vec<F>> images;
  for (std::size_t i = 0; i < r; ++i) {
    b(piv[i], i) = k.one();
    images.push_back(x.col(piv[i]));
  }
  auto ker = kernel(x).basis_vectors();
  for (std::size_t i = 0; i < ker.size(); ++i)
    for (std::size_t j = 0; j < q; ++j) b(j, r + i) = ker[i][j];
  Subspace<F> im = Subspace<F>::span(k, p, images);
  auto comp = standard_complement(im).basis_vectors();
  for (const auto& v : comp) images.push_back(v);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) c(j, i) = images[i][j];
  Matrix<F> jt(k, q, p);
  for (std::size_t i = 0; i < r; ++i) jt(i, i) = k.one();
  return Idempotent<F>(x, b * jt * inverse(c));
}

// Q(e+)f- = 0 and Q(e-)f+ = 0, both ways round.
template <class F>
bool is_orthogonal(const Idempotent<F>& e, const Idempotent<F>& f) {
  return Q(e.plus, f.minus).is_zero() && Q(e.minus, f.plus).is_zero() && Q(f.plus, e.minus).is_zero() &&
         Q(f.minus, e.plus).is_zero();
}

// L(e) = T(e+, e-, .) on V+, in the basis of V+.
template <class F>
Matrix<F> peirce_operator(const JordanPair<F>& jp, const Idempotent<F>& e) {
  return detail::operator_matrix(jp.plus_space(), jp.p(), jp.q(),
                                 [&](const Matrix<F>& z) { return T(e.plus, e.minus, z); });
}

template <class F>
struct Peirce {
  Subspace<F> v2, v1, v0;
};

namespace detail {

template <class F>
Subspace<F> eigenspace_in(const Subspace<F>& space, const Matrix<F>& op, long long lambda) {
  const F& k = space.field();
  Matrix<F> shifted = op - Matrix<F>::identity(k, op.rows()).scaled(k.from_int(lambda));
  Subspace<F> coords = kernel(shifted);
  std::vector<Vec<F>> vs;
  for (const auto& c : coords.basis_vectors()) vs.push_back(space.combine(c));
  return Subspace<F>::span(k, space.ambient(), vs);
}

}  // namespace detail

// Eigenspaces of T(e+, e-, .) for 2, 1, 0.
template <class F>
Peirce<F> peirce(const JordanPair<F>& jp, const Idempotent<F>& e) {
  if (!jp.field().int_invertible(2)) throw FieldTooSmall("Peirce eigenvalues 0 and 2 coincide in characteristic 2");
  Matrix<F> l = peirce_operator(jp, e);
  Peirce<F> out{detail::eigenspace_in(jp.plus_space(), l, 2), detail::eigenspace_in(jp.plus_space(), l, 1),
                detail::eigenspace_in(jp.plus_space(), l, 0)};
  if (out.v2.dim() + out.v1.dim() + out.v0.dim() != jp.plus_space().dim())
    throw std::logic_error("Peirce eigenspaces do not span V+");
  return out;
}

// Same on V- for T(e-, e+, .).
template <class F>
Peirce<F> peirce_minus(const JordanPair<F>& jp, const Idempotent<F>& e) {
  if (!jp.field().int_invertible(2)) throw FieldTooSmall("Peirce eigenvalues 0 and 2 coincide in characteristic 2");
  Matrix<F> l = detail::operator_matrix(jp.minus_space(), jp.q(), jp.p(),
                                        [&](const Matrix<F>& w) { return T(e.minus, e.plus, w); });
  return {detail::eigenspace_in(jp.minus_space(), l, 2), detail::eigenspace_in(jp.minus_space(), l, 1),
          detail::eigenspace_in(jp.minus_space(), l, 0)};
}

// L(L - 1)(L - 2) = 0
template <class F>
bool peirce_polynomial_vanishes(const JordanPair<F>& jp, const Idempotent<F>& e) {
  const F& k = jp.field();
  Matrix<F> l = peirce_operator(jp, e);
  Matrix<F> id = Matrix<F>::identity(k, l.rows());
  return (l * (l - id) * (l - id.scaled(k.from_int(2)))).is_zero();
}

// Longest strict chain 0 ⊂ [x_1] ⊂ ... ⊂ [g] of principal inner ideals.
// Over F_p every principal ideal inside [g] is enumerated; over Q the chain comes
// from the rank normal form and its strictness is verified.
template <class F>
std::size_t chain_rank(const JordanPair<F>& jp, const Matrix<F>& g, std::uint64_t budget = kDefaultBudget) {
  const F& k = jp.field();
  Subspace<F> top = principal_ideal(jp, g).space;
  if constexpr (is_prime_field_v<F>) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < top.dim(); ++i) {
      count *= k.p();
      check_budget(count, budget, "principal ideal [g]");
    }
    std::set<Subspace<F>> family;
    for_each_element(top, [&](const Vec<F>& v) { family.insert(principal_ideal(jp, jp.plus_from_vec(v)).space); });
    std::vector<Subspace<F>> ideals(family.begin(), family.end());  // ordered by dimension first
    std::vector<std::size_t> len(ideals.size(), 0);
    for (std::size_t i = 0; i < ideals.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (ideals[j].dim() < ideals[i].dim() && ideals[i].contains(ideals[j])) len[i] = std::max(len[i], len[j] + 1);
    for (std::size_t i = 0; i < ideals.size(); ++i)
      if (ideals[i] == top) return len[i];
    throw std::logic_error("chain_rank: [g] missing from its own family");
  } else {
    // g = sum_j u_j v_j^T from the column basis and the reduced rows; the partial sums have
    // nested kernels and images, so their principal ideals form a strict chain ending at [g]
    auto red = rref(g);
    std::size_t r = red.pivots.size();
    Matrix<F> partial(k, jp.p(), jp.q());
    Subspace<F> prev = Subspace<F>::zero(k, jp.p() * jp.q());
    for (std::size_t j = 0; j < r; ++j) {
      Matrix<F> u = Matrix<F>::column(k, g.col(red.pivots[j]));
      Matrix<F> v = Matrix<F>::from_vec(k, 1, jp.q(), red.matrix.row(j));
      partial = partial + u * v;
      Subspace<F> next = principal_ideal(jp, partial).space;
      if (next.dim() <= prev.dim() || !next.contains(prev)) throw std::logic_error("chain_rank: chain is not strict");
      prev = next;
    }
    if (prev != top) throw std::logic_error("chain_rank: chain does not reach [g]");
    return r;
  }
}

template <class F>
Idempotent<F> idempotent_sum(const Idempotent<F>& e, const Idempotent<F>& f) {
  if (!is_orthogonal(e, f)) throw std::invalid_argument("idempotent_sum needs orthogonal idempotents");
  return Idempotent<F>(e.plus + f.plus, e.minus + f.minus);
}

// {f in Sym : e ⊆ ker f} in a symmetric pair.
template <class F>
InnerIdeal<F> sym_inner_ideal(const JordanPair<F>& jp, const Subspace<F>& e) {
  if (jp.kind() != JordanPair<F>::Kind::sym) throw std::invalid_argument("sym_inner_ideal needs a symmetric pair");
  std::size_t n = jp.p();
  if (e.ambient() != n) throw std::invalid_argument("sym_inner_ideal: shape mismatch");
  Matrix<F> cons(jp.field(), e.dim() * n, n * n);
  for (std::size_t b = 0; b < e.dim(); ++b)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cons(b * n + i, i * n + j) = e.basis()(b, j);
  return {jp, intersect(jp.plus_space(), kernel(cons))};
}

namespace detail {

// Solution space inside `space` of the linear conditions op(a) = 0, each op returning a matrix.
template <class F, class Op>
Subspace<F> solve_in(const Subspace<F>& space, std::size_t rows, std::size_t cols, const std::vector<Op>& ops) {
  const F& k = space.field();
  std::size_t d = space.dim();
  std::vector<Vec<F>> images(d);
  for (std::size_t j = 0; j < d; ++j) {
    Matrix<F> a = Matrix<F>::from_vec(k, rows, cols, space.basis().row(j));
    for (const auto& op : ops) {
      Matrix<F> img = op(a);
      images[j].insert(images[j].end(), img.vec().begin(), img.vec().end());
    }
  }
  std::size_t len = images.empty() ? 0 : images[0].size();
  Matrix<F> m(k, len, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < len; ++i) m(i, j) = images[j][i];
  std::vector<Vec<F>> out;
  for (const auto& c : kernel(m).basis_vectors()) out.push_back(space.combine(c));
  return Subspace<F>::span(k, space.ambient(), out);
}

}  // namespace detail

// Ann(X) = {a : Q(a)X = Q(X)a = 0, Q(a)Q(X) = Q(X)Q(a) = 0, T(a,X) = T(X,a) = 0}.
// The conditions linear in a are solved; the quadratic ones are then verified on the result.
template <class F>
InnerIdeal<F> annihilator(const JordanPair<F>& jp, const std::vector<Matrix<F>>& xs) {
  using Op = std::function<Matrix<F>(const Matrix<F>&)>;
  for (const auto& x : xs)
    if (!jp.in_minus(x)) throw std::invalid_argument("annihilator: element is not in V-");
  auto plus = jp.plus_basis();
  auto minus = jp.minus_basis();
  std::vector<Op> ops;
  for (const auto& x : xs) {
    ops.push_back([x](const Matrix<F>& a) { return Q(x, a); });
    for (const auto& z : plus) ops.push_back([x, z](const Matrix<F>& a) { return T(a, x, z); });
    for (const auto& w : minus) ops.push_back([x, w](const Matrix<F>& a) { return T(x, a, w); });
  }
  Subspace<F> s = detail::solve_in(jp.plus_space(), jp.p(), jp.q(), ops);
  auto basis = s.basis_vectors();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Matrix<F> bi = jp.plus_from_vec(basis[i]);
    for (std::size_t j = i; j < basis.size(); ++j) {
      Matrix<F> bj = jp.plus_from_vec(basis[j]);
      for (const auto& x : xs) {
        bool bad = i == j ? !Q(bi, x).is_zero() : !T(bi, x, bj).is_zero();
        for (const auto& z : plus) {
          Matrix<F> qz = Q(x, z);
          bad = bad || (i == j ? !Q(bi, qz).is_zero() : !T(bi, qz, bj).is_zero());
        }
        for (const auto& w : minus) {
          Matrix<F> aw = i == j ? Q(bi, w) : T(bi, w, bj);
          bad = bad || !Q(x, aw).is_zero();
        }
        if (bad) throw std::logic_error("annihilator: quadratic conditions fail on the linear solution space");
      }
    }
  }
  return {jp, s};
}

// ker(I) = {y in V- : Q(I)y = 0}, via Q(b_i)y = 0 and T(b_i, y, b_j) = 0.
template <class F>
Subspace<F> kernel_of(const InnerIdeal<F>& ideal) {
  using Op = std::function<Matrix<F>(const Matrix<F>&)>;
  const auto& jp = ideal.pair;
  auto basis = ideal.space.basis_vectors();
  std::vector<Op> ops;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Matrix<F> bi = jp.plus_from_vec(basis[i]);
    ops.push_back([bi](const Matrix<F>& y) { return Q(bi, y); });
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Matrix<F> bj = jp.plus_from_vec(basis[j]);
      ops.push_back([bi, bj](const Matrix<F>& y) { return T(bi, y, bj); });
    }
  }
  return detail::solve_in(jp.minus_space(), jp.q(), jp.p(), ops);
}

// V2 != 0 and Q(x): V2- -> V2+ invertible for every nonzero x in V2+.
template <class F>
bool is_division_idempotent(const JordanPair<F>& jp, const Idempotent<F>& e) {
  if (jp.kind() == JordanPair<F>::Kind::rect) return rank(e.plus) == 1;
  if constexpr (is_prime_field_v<F>) {
    auto v2 = peirce(jp, e).v2;
    auto v2m = peirce_minus(jp, e).v2;
    if (v2.is_zero() || v2.dim() != v2m.dim()) return false;
    bool ok = true;
    for_each_element(v2, [&](const Vec<F>& xv) {
      if (!ok || std::all_of(xv.begin(), xv.end(), [](auto c) { return c == 0; })) return;
      Matrix<F> x = jp.plus_from_vec(xv);
      Matrix<F> m(jp.field(), v2.dim(), v2m.dim());
      auto ys = v2m.basis_vectors();
      for (std::size_t j = 0; j < ys.size(); ++j) {
        auto c = v2.coordinates(Q(x, jp.minus_from_vec(ys[j])).vec());
        for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
      }
      ok = is_invertible(m);
    });
    return ok;
  } else {
    throw std::invalid_argument("division test for symmetric pairs needs a finite field");
  }
}

struct IdentityReport {
  std::string identity;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::string first_violation;  // empty when none
};

struct AxiomReport {
  bool exhaustive = false;
  std::vector<IdentityReport> identities;
  bool ok() const {
    return std::all_of(identities.begin(), identities.end(), [](const auto& r) { return r.violations == 0; });
  }
};

namespace detail {

template <class F>
struct AxiomCounters {
  IdentityReport outer{"T(x,y,z) = T(z,y,x)", 0, 0, {}};
  IdentityReport derivation{"T(x,y,T(u,v,w)) = T(T(x,y,u),v,w) - T(u,T(y,x,v),w) + T(u,v,T(x,y,w))", 0, 0, {}};
  IdentityReport fundamental{"Q(Q(x)y) = Q(x)Q(y)Q(x)", 0, 0, {}};

  static void record(IdentityReport& r, bool ok, const std::string& where) {
    ++r.checked;
    if (!ok && r.violations++ == 0) r.first_violation = where;
  }
  void check_outer(const Matrix<F>& x, const Matrix<F>& y, const Matrix<F>& z, const std::string& w) {
    record(outer, T(x, y, z) == T(z, y, x), w);
  }
  void check_derivation(const Matrix<F>& x, const Matrix<F>& y, const Matrix<F>& u, const Matrix<F>& v,
                        const Matrix<F>& w, const std::string& where) {
    Matrix<F> lhs = T(x, y, T(u, v, w));
    Matrix<F> rhs = T(T(x, y, u), v, w) - T(u, T(y, x, v), w) + T(u, v, T(x, y, w));
    record(derivation, lhs == rhs, where);
  }
  void check_fundamental(const Matrix<F>& x, const Matrix<F>& y, const Matrix<F>& w, const std::string& where) {
    record(fundamental, Q(Q(x, y), w) == Q(x, Q(y, Q(x, w))), where);
  }
  AxiomReport finish(bool exhaustive) const { return {exhaustive, {outer, derivation, fundamental}}; }
};

inline std::string tuple_label(std::initializer_list<std::size_t> idx) {
  std::string s = "(";
  bool first = true;
  for (auto i : idx) {
    s += (first ? "" : ",") + std::to_string(i);
    first = false;
  }
  return s + ")";
}

}  // namespace detail

// Every tuple of elements over F_p, indexed in enumeration order.
inline AxiomReport jordan_axiom_check_exhaustive(const JordanPair<PrimeField>& jp,
                                                 std::uint64_t budget = kDefaultBudget) {
  using M = Matrix<PrimeField>;
  std::vector<M> plus, minus;
  auto cap = [&](const Subspace<PrimeField>& s) {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < s.dim(); ++i) {
      c *= jp.field().p();
      check_budget(c, budget, "pair elements");
    }
    return c;
  };
  std::uint64_t np = cap(jp.plus_space()), nm = cap(jp.minus_space());
  // the derivation identity runs over V+^3 x V-^2
  unsigned __int128 tuples = static_cast<unsigned __int128>(np) * np * np * nm * nm;
  check_budget(tuples > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(tuples), budget * 1000, "axiom tuples");
  for_each_element(jp.plus_space(), [&](const Vec<PrimeField>& v) { plus.push_back(jp.plus_from_vec(v)); });
  for_each_element(jp.minus_space(), [&](const Vec<PrimeField>& v) { minus.push_back(jp.minus_from_vec(v)); });
  detail::AxiomCounters<PrimeField> c;
  for (std::size_t x = 0; x < plus.size(); ++x)
    for (std::size_t y = 0; y < minus.size(); ++y) {
      for (std::size_t z = 0; z < plus.size(); ++z) {
        c.check_outer(plus[x], minus[y], plus[z], detail::tuple_label({x, y, z}));
        for (std::size_t u = 0; u < plus.size(); ++u)
          for (std::size_t v = 0; v < minus.size(); ++v)
            c.check_derivation(plus[x], minus[y], plus[u], minus[v], plus[z], detail::tuple_label({x, y, u, v, z}));
      }
      for (std::size_t w = 0; w < minus.size(); ++w)
        c.check_fundamental(plus[x], minus[y], minus[w], detail::tuple_label({x, y, w}));
    }
  return c.finish(true);
}

// `samples` random tuples for each identity.
template <class F>
AxiomReport jordan_axiom_check(const JordanPair<F>& jp, std::size_t samples, Rng& rng) {
  detail::AxiomCounters<F> c;
  auto rp = [&] { return jp.plus_from_vec(random_element(jp.plus_space(), rng)); };
  auto rm = [&] { return jp.minus_from_vec(random_element(jp.minus_space(), rng)); };
  for (std::size_t s = 0; s < samples; ++s) {
    std::string label = "sample " + std::to_string(s);
    Matrix<F> x = rp(), y = rm(), z = rp(), u = rp(), v = rm(), w = rm();
    c.check_outer(x, y, z, label);
    c.check_derivation(x, y, u, v, z, label);
    c.check_fundamental(x, y, w, label);
  }
  return c.finish(false);
}

}  // namespace flaggeom

#endif  // FLAGGEOM_JORDAN_HPP
