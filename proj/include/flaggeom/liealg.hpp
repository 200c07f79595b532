#ifndef FLAGGEOM_LIEALG_HPP
#define FLAGGEOM_LIEALG_HPP

#include <array>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "charts.hpp"
#include "jordan.hpp"

namespace flaggeom {

// Decomposition of vectorized gl(n) indexed by integers. Missing indices are zero parts.
template <class F>
struct IntGrading {
  std::map<int, Subspace<F>> parts;

  Subspace<F> part(const F& k, std::size_t dim, int i) const {
    auto it = parts.find(i);
    return it == parts.end() ? Subspace<F>::zero(k, dim) : it->second;
  }
  std::size_t total_dim() const {
    std::size_t d = 0;
    for (const auto& [i, s] : parts) d += s.dim();
    return d;
  }
  void drop_zero_parts() {
    for (auto it = parts.begin(); it != parts.end();) it = it->second.is_zero() ? parts.erase(it) : std::next(it);
  }
};

// gl(p+q) with the 3-grading from E = diag(1_p, 0_q): g_1 is the upper-right p x q block,
// g_-1 the lower-left block, g_0 the block diagonal.
template <class F>
class GradedGL {
 public:
  GradedGL(const F& k, std::size_t p, std::size_t q) : field_(k), p_(p), q_(q) {
    if (p == 0 || q == 0) throw std::invalid_argument("graded gl needs p, q >= 1");
  }

  const F& field() const { return field_; }
  std::size_t p() const { return p_; }
  std::size_t q() const { return q_; }
  std::size_t n() const { return p_ + q_; }
  std::size_t dim() const { return n() * n(); }

  Matrix<F> euler() const {
    Matrix<F> e(field_, n(), n());
    for (std::size_t i = 0; i < p_; ++i) e(i, i) = field_.one();
    return e;
  }
  Matrix<F> embed_plus(const Matrix<F>& x) const {
    Matrix<F> m(field_, n(), n());
    m.set_block(0, p_, x);
    return m;
  }
  Matrix<F> embed_minus(const Matrix<F>& y) const {
    Matrix<F> m(field_, n(), n());
    m.set_block(p_, 0, y);
    return m;
  }
  // With V- placed as -y, T(x,y,z) = -[[x,y],z].
  Matrix<F> embed_minus_signed(const Matrix<F>& y) const { return embed_minus(-y); }
  Matrix<F> plus_block(const Matrix<F>& m) const { return m.block(0, p_, p_, q_); }
  Matrix<F> minus_block(const Matrix<F>& m) const { return m.block(p_, 0, q_, p_); }

  // g_a for a in {-1, 0, 1}.
  Subspace<F> block(int a) const {
    std::vector<std::size_t> idx;
    for (std::size_t r = 0; r < n(); ++r)
      for (std::size_t c = 0; c < n(); ++c) {
        bool rt = r < p_, ct = c < p_;
        int deg = rt == ct ? 0 : (rt ? 1 : -1);
        if (deg == a) idx.push_back(r * n() + c);
      }
    return Subspace<F>::coordinate(field_, dim(), idx);
  }
  Subspace<F> full() const { return Subspace<F>::full(field_, dim()); }
  Matrix<F> from_vec(const Vec<F>& v) const { return Matrix<F>::from_vec(field_, n(), n(), v); }

 private:
  F field_;
  std::size_t p_, q_;
};

template <class F>
Matrix<F> bracket(const Matrix<F>& x, const Matrix<F>& y) {
  return x * y - y * x;
}

// ad(X) on row-major vectorized n x n matrices.
template <class F>
Matrix<F> ad(const Matrix<F>& x) {
  const F& k = x.field();
  std::size_t n = x.rows();
  Matrix<F> out(k, n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t col = i * n + j;
      // X E_ij - E_ij X
      for (std::size_t r = 0; r < n; ++r) out(r * n + j, col) = k.add(out(r * n + j, col), x(r, i));
      for (std::size_t c = 0; c < n; ++c) out(i * n + c, col) = k.sub(out(i * n + c, col), x(j, c));
    }
  return out;
}

template <class F>
Subspace<F> eigenspace(const Matrix<F>& op, long long lambda) {
  const F& k = op.field();
  return kernel(op - Matrix<F>::identity(k, op.rows()).scaled(k.from_int(lambda)));
}

// span{[a, b] : a in A, b in B}
template <class F>
Subspace<F> bracket_span(const Subspace<F>& a, const Subspace<F>& b, std::size_t n) {
  const F& k = a.field();
  std::vector<Vec<F>> out;
  for (const auto& u : a.basis_vectors())
    for (const auto& v : b.basis_vectors())
      out.push_back(bracket(Matrix<F>::from_vec(k, n, n, u), Matrix<F>::from_vec(k, n, n, v)).vec());
  return Subspace<F>::span(k, n * n, out);
}

// Integer eigenvalues lo..hi must stay distinct in the field.
template <class F>
void require_distinct_eigenvalues(const F& k, int lo, int hi) {
  for (int d = 1; d <= hi - lo; ++d)
    if (!k.int_invertible(d))
      throw FieldTooSmall("eigenvalues " + std::to_string(lo) + ".." + std::to_string(hi) + " collide in " + k.name());
}

// Eigenspace decomposition of ad(D) for integer eigenvalues in [lo, hi].
template <class F>
IntGrading<F> grading_from_derivation(const Matrix<F>& d, int lo = -2, int hi = 2) {
  require_distinct_eigenvalues(d.field(), lo, hi);
  Matrix<F> a = ad(d);
  IntGrading<F> g;
  for (int l = lo; l <= hi; ++l) g.parts.emplace(l, eigenspace(a, l));
  g.drop_zero_parts();
  if (g.total_dim() != a.rows()) throw std::domain_error("ad(D) is not diagonalizable with eigenvalues in range");
  return g;
}

// H with [H, Z] = i Z on part i, normalized by H(n-1, n-1) = 0 (gl has a one-dimensional center).
template <class F>
Matrix<F> derivation_from_grading(const IntGrading<F>& g, std::size_t n) {
  const F& k = g.parts.begin()->second.field();
  std::size_t nn = n * n;
  std::vector<Vec<F>> rows;
  for (const auto& [lambda, s] : g.parts)
    for (const auto& zv : s.basis_vectors()) {
      Matrix<F> z = Matrix<F>::from_vec(k, n, n, zv);
      // ad(H) Z = -ad(Z) H
      Matrix<F> m = -ad(z);
      for (std::size_t r = 0; r < nn; ++r) {
        Vec<F> row = m.row(r);
        row.push_back(k.neg(k.mul(k.from_int(lambda), zv[r])));
        rows.push_back(std::move(row));
      }
    }
  Vec<F> norm(nn + 1, k.zero());
  norm[nn - 1] = k.one();
  rows.push_back(norm);
  Subspace<F> sol = kernel(Matrix<F>::from_rows(k, nn + 1, rows));
  for (const auto& v : sol.basis_vectors()) {
    if (k.is_zero(v[nn])) continue;
    if (sol.dim() != 1) throw std::logic_error("derivation_from_grading: solution is not unique");
    Vec<F> h(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(nn));
    return Matrix<F>::from_vec(k, n, n, h).scaled(k.inv(v[nn]));
  }
  throw std::domain_error("grading is not induced by an inner derivation");
}

template <class F>
struct FiveGrading {
  Matrix<F> h;  // grading element
  IntGrading<F> parts;
};

// Eigenspaces of ad(M) for M in g_0, computed block by block: on g_a the eigenvalues lie in
// {a-1, a, a+1}, which stay distinct whenever 2 is invertible.
template <class F>
IntGrading<F> block_lifted_grading(const GradedGL<F>& g, const Matrix<F>& m) {
  require_distinct_eigenvalues(g.field(), -1, 1);
  Matrix<F> a = ad(m);
  IntGrading<F> out;
  for (int blk = -1; blk <= 1; ++blk) {
    Subspace<F> b = g.block(blk);
    for (int l = blk - 1; l <= blk + 1; ++l) {
      Subspace<F> part = intersect(b, eigenspace(a, l));
      auto it = out.parts.find(l);
      if (it == out.parts.end()) out.parts.emplace(l, part);
      else it->second = sum(it->second, part);
    }
  }
  out.drop_zero_parts();
  if (out.total_dim() != g.dim()) throw std::domain_error("ad is not diagonalizable on the 3-graded blocks");
  return out;
}

// H = [e+, e-] with the sl2 relations checked.
template <class F>
Matrix<F> grading_element(const GradedGL<F>& g, const Idempotent<F>& e) {
  Matrix<F> ep = g.embed_plus(e.plus), em = g.embed_minus(e.minus);
  Matrix<F> h = bracket(ep, em);
  const F& k = g.field();
  if (!(bracket(h, ep) == ep.scaled(k.from_int(2))) || !(bracket(h, em) == em.scaled(k.from_int(-2))))
    throw std::logic_error("sl2 relations fail for an idempotent");
  return h;
}

template <class F>
FiveGrading<F> five_grading_from_idempotent(const GradedGL<F>& g, const Idempotent<F>& e) {
  Matrix<F> h = grading_element(g, e);
  return {h, block_lifted_grading(g, h)};
}

// Grading by H' = 2E - H.
template <class F>
FiveGrading<F> conjugate_grading(const GradedGL<F>& g, const FiveGrading<F>& fg) {
  Matrix<F> h2 = g.euler().scaled(g.field().from_int(2)) - fg.h;
  return {h2, block_lifted_grading(g, h2)};
}

// Eigenspaces of ad(H) over all of gl, needing -2..2 distinct (characteristic 0 or >= 5).
template <class F>
FiveGrading<F> global_five_grading(const Matrix<F>& h) {
  return {h, grading_from_derivation(h, -2, 2)};
}

// Characteristic-free model: F^{p+q} = A1 + A0 + B1 + B0 with A1 = im e+, A0 = ker e- in F^p and
// B1 = im e-, B0 = ker e+ in F^q. H acts on them by 1, 0, -1, 0 and E by 1, 1, 0, 0, so
// ad of any integer combination has part lambda spanned by maps from weight w to weight w + lambda.
template <class F>
class PeirceFrame {
 public:
  PeirceFrame(const GradedGL<F>& g, const Idempotent<F>& e) : g_(g), basis_(g.field(), g.n(), g.n()) {
    const F& k = g.field();
    std::size_t p = g.p(), q = g.q();
    std::array<std::vector<Vec<F>>, 4> pieces;
    auto embed = [&](const Vec<F>& v, std::size_t offset) {
      Vec<F> out(g.n(), k.zero());
      for (std::size_t i = 0; i < v.size(); ++i) out[offset + i] = v[i];
      return out;
    };
    for (const auto& v : image(e.plus).basis_vectors()) pieces[0].push_back(embed(v, 0));
    for (const auto& v : kernel(e.minus).basis_vectors()) pieces[1].push_back(embed(v, 0));
    for (const auto& v : image(e.minus).basis_vectors()) pieces[2].push_back(embed(v, p));
    for (const auto& v : kernel(e.plus).basis_vectors()) pieces[3].push_back(embed(v, p));
    std::size_t col = 0;
    for (std::size_t c = 0; c < 4; ++c)
      for (const auto& v : pieces[c]) {
        for (std::size_t r = 0; r < g.n(); ++r) basis_(r, col) = v[r];
        cls_.push_back(c);
        ++col;
      }
    if (col != g.n() || !is_invertible(basis_)) throw std::logic_error("Peirce frame does not form a basis");
    basis_inv_ = inverse(basis_);
    (void)q;
  }

  // Diagonal operator with weight w[c] on class c (A1, A0, B1, B0).
  Matrix<F> element(const std::array<int, 4>& w) const {
    const F& k = g_.field();
    Matrix<F> d(k, g_.n(), g_.n());
    for (std::size_t i = 0; i < g_.n(); ++i) d(i, i) = k.from_int(w[cls_[i]]);
    return basis_ * d * basis_inv_;
  }
  IntGrading<F> grading(const std::array<int, 4>& w) const {
    const F& k = g_.field();
    std::size_t n = g_.n();
    std::map<int, std::vector<Vec<F>>> vecs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // maps basis vector j to basis vector i
        Matrix<F> z = basis_ * Matrix<F>::unit(k, n, n, i, j) * basis_inv_;
        vecs[w[cls_[i]] - w[cls_[j]]].push_back(z.vec());
      }
    IntGrading<F> out;
    for (const auto& [l, vs] : vecs) out.parts.emplace(l, Subspace<F>::span(k, g_.dim(), vs));
    return out;
  }
  static constexpr std::array<int, 4> euler_weights() { return {1, 1, 0, 0}; }
  static constexpr std::array<int, 4> h_weights() { return {1, 0, -1, 0}; }
  static constexpr std::array<int, 4> conjugate_weights() { return {1, 2, 1, 0}; }

 private:
  GradedGL<F> g_;
  Matrix<F> basis_;
  Matrix<F> basis_inv_{basis_};
  std::vector<std::size_t> cls_;
};

// Dimensions of g_a ∩ h_b for a in {-1,0,1}.
template <class F>
std::map<std::pair<int, int>, std::size_t> joint_spectrum(const GradedGL<F>& g, const IntGrading<F>& h) {
  std::map<std::pair<int, int>, std::size_t> out;
  for (int a = -1; a <= 1; ++a)
    for (const auto& [b, s] : h.parts) {
      std::size_t d = intersect(g.block(a), s).dim();
      if (d > 0) out[{a, b}] = d;
    }
  return out;
}

// The nine (ad E, ad H) eigenvalue pairs that may occur.
inline bool is_allowed_pair(int a, int b) { return b >= a - 1 && b <= a + 1 && a >= -1 && a <= 1; }

// [parts_i, parts_j] ⊆ parts_{i+j}, zero outside the index range.
template <class F>
bool is_bracket_compatible(const IntGrading<F>& gr, std::size_t n) {
  const F* k = nullptr;
  for (const auto& [i, s] : gr.parts) k = &s.field();
  if (!k) return true;
  for (const auto& [i, si] : gr.parts)
    for (const auto& [j, sj] : gr.parts)
      if (!gr.part(*k, n * n, i + j).contains(bracket_span(si, sj, n))) return false;
  return true;
}

template <class F>
struct ConjugateCheck {
  // e_2, e_1, e_0, e_-1, e_-2 against the displayed intersections, then the two squeeze chains
  std::array<bool, 5> parts{};
  bool squeeze_plus = false;   // f_2 ⊆ o_1 ⊆ f_0
  bool squeeze_zero = false;   // f_1 ⊆ o_0 ⊆ f_-1
  bool ok() const {
    for (bool b : parts)
      if (!b) return false;
    return squeeze_plus && squeeze_zero;
  }
};

// Compares the parts e_j of the conjugate grading with the intersections of h_i and g_a.
template <class F>
ConjugateCheck<F> check_conjugate_parts(const GradedGL<F>& g, const IntGrading<F>& h, const IntGrading<F>& e) {
  const F& k = g.field();
  std::size_t d = g.dim();
  auto H = [&](int i) { return h.part(k, d, i); };
  auto E = [&](int i) { return e.part(k, d, i); };
  auto G = [&](int a) { return g.block(a); };
  ConjugateCheck<F> c;
  c.parts[0] = E(2) == intersect(H(0), G(1));
  c.parts[1] = E(1) == sum(intersect(H(1), G(1)), intersect(G(0), H(-1)));
  c.parts[2] = E(0) == sum(sum(H(2), H(-2)), intersect(G(0), H(0)));
  c.parts[3] = E(-1) == sum(intersect(H(-1), G(-1)), intersect(G(0), H(1)));
  c.parts[4] = E(-2) == intersect(H(0), G(-1));
  // plus-filtrations: f_j = sum_{i >= j} e_i and o_a = sum_{b >= a} g_b
  auto f = [&](int j) {
    Subspace<F> s = Subspace<F>::zero(k, d);
    for (int i = j; i <= 2; ++i) s = sum(s, E(i));
    return s;
  };
  Subspace<F> o1 = G(1), o0 = sum(G(1), G(0));
  c.squeeze_plus = o1.contains(f(2)) && f(0).contains(o1);
  c.squeeze_zero = o0.contains(f(1)) && f(-1).contains(o0);
  return c;
}

template <class F>
struct StabilizerAlgebras {
  Subspace<F> ideal;     // I = V_2 inside g_1
  Subspace<F> g_i;       // I + [I, g_-1] + g_-1
  Subspace<F> s_i;       // {X in g_0 : [X, I] ⊆ I}
  Subspace<F> g_cal_i;   // I + s_I + g_-1
};

template <class F>
StabilizerAlgebras<F> stabilizer_algebras(const GradedGL<F>& g, const Idempotent<F>& e) {
  const F& k = g.field();
  std::size_t n = g.n(), d = g.dim();
  auto jp = JordanPair<F>::rect(k, g.p(), g.q());
  std::vector<Vec<F>> ivecs;
  for (const auto& v : principal_ideal(jp, e.plus).space.basis_vectors())
    ivecs.push_back(g.embed_plus(jp.plus_from_vec(v)).vec());
  Subspace<F> ideal = Subspace<F>::span(k, d, ivecs);
  Subspace<F> gm1 = g.block(-1), g0 = g.block(0);
  Subspace<F> gi = sum(sum(ideal, bracket_span(ideal, gm1, n)), gm1);
  // [X, b] ∈ I for each basis element b of I: linear in X ∈ g_0
  Subspace<F> ann = annihilator(ideal);
  std::vector<Vec<F>> rows;
  for (const auto& b : ideal.basis_vectors()) {
    Matrix<F> adb = -ad(Matrix<F>::from_vec(k, n, n, b));  // X ↦ [X, b]
    Matrix<F> cons = ann.basis() * adb;
    for (std::size_t r = 0; r < cons.rows(); ++r) rows.push_back(cons.row(r));
  }
  Subspace<F> s = rows.empty() ? Subspace<F>::full(k, d) : kernel(Matrix<F>::from_rows(k, d, rows));
  Subspace<F> si = intersect(s, g0);
  return {ideal, gi, si, sum(sum(ideal, si), gm1)};
}

// {X : [X, s] ⊆ s}
template <class F>
Subspace<F> normalizer(const Subspace<F>& s, std::size_t n) {
  const F& k = s.field();
  std::size_t d = n * n;
  Subspace<F> ann = annihilator(s);
  std::vector<Vec<F>> rows;
  for (const auto& b : s.basis_vectors()) {
    Matrix<F> cons = ann.basis() * (-ad(Matrix<F>::from_vec(k, n, n, b)));
    for (std::size_t r = 0; r < cons.rows(); ++r) rows.push_back(cons.row(r));
  }
  if (rows.empty()) return Subspace<F>::full(k, d);
  return kernel(Matrix<F>::from_rows(k, d, rows));
}

// Every idempotent (e+, e-) in (M(p,q), M(q,p)) over F_p.
inline std::vector<Idempotent<PrimeField>> enumerate_idempotents(const PrimeField& k, std::size_t p, std::size_t q,
                                                                 std::uint64_t budget = kDefaultBudget) {
  using M = Matrix<PrimeField>;
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < p * q; ++i) {
    cells *= k.p();
    check_budget(cells, budget, "matrices of size " + std::to_string(p) + "x" + std::to_string(q));
  }
  std::vector<M> plus, minus;
  for_each_vector(k, p * q, [&](const Vec<PrimeField>& v) { plus.push_back(M::from_vec(k, p, q, v)); });
  for_each_vector(k, p * q, [&](const Vec<PrimeField>& v) { minus.push_back(M::from_vec(k, q, p, v)); });
  std::vector<Idempotent<PrimeField>> out;
  for (const auto& x : plus)
    for (const auto& y : minus)
      if (Idempotent<PrimeField>::check(x, y)) out.emplace_back(x, y);
  return out;
}

struct SqueezeReport {
  std::size_t orbit_size = 0;
  std::size_t squeezed_count = 0;  // points of the whole Grassmannian satisfying the squeeze relations
  bool subset_holds = false;       // every orbit point is squeezed
  bool superset_holds = false;     // every squeezed point lies in the orbit
  std::string first_violation;
};

// Orbit of o+ = span(e_{p+1}, ..., e_{p+q}) under <1 + x, 1 + y : x ∈ I, y ∈ g_-1>, compared with
// {a : f_2 ⊆ a_1 ⊆ f_0, f_1 ⊆ a_0 ⊆ f_-1} where f is the minus-filtration of the conjugate grading,
// a_1(W) = {Z : im Z ⊆ W, Z(W) = 0} and a_0(W) = {Z : Z(W) ⊆ W}.
inline SqueezeReport squeeze_experiment(const GradedGL<PrimeField>& g, const Idempotent<PrimeField>& e,
                                        std::uint64_t budget = kDefaultBudget) {
  using S = Subspace<PrimeField>;
  using M = Matrix<PrimeField>;
  const PrimeField& k = g.field();
  std::size_t n = g.n(), d = g.dim();
  check_budget(gaussian_binomial(k.p(), n, g.q()), budget, "Grassmannian of the squeeze experiment");

  PeirceFrame<PrimeField> frame(g, e);
  IntGrading<PrimeField> conj = frame.grading(PeirceFrame<PrimeField>::conjugate_weights());
  auto f = [&](int j) {
    S s = S::zero(k, d);
    for (int i = -2; i <= j; ++i) s = sum(s, conj.part(k, d, i));
    return s;
  };
  S f2 = f(-2), f1 = f(-1), f0 = f(0), fm1 = f(1);
  auto squeezed = [&](const S& w) {
    S a1 = kernel(vstack(maps_into_constraints(S::full(k, n), w), maps_into_constraints(w, S::zero(k, n))));
    S a0 = kernel(maps_into_constraints(w, w));
    return a1.contains(f2) && f0.contains(a1) && a0.contains(f1) && fm1.contains(a0);
  };

  std::vector<M> gens;
  auto jp = JordanPair<PrimeField>::rect(k, g.p(), g.q());
  for (const auto& v : principal_ideal(jp, e.plus).space.basis_vectors())
    gens.push_back(M::identity(k, n) + g.embed_plus(jp.plus_from_vec(v)));
  for (std::size_t i = 0; i < g.q(); ++i)
    for (std::size_t j = 0; j < g.p(); ++j)
      gens.push_back(M::identity(k, n) + g.embed_minus(M::unit(k, g.q(), g.p(), i, j)));

  std::vector<std::size_t> idx;
  for (std::size_t i = g.p(); i < n; ++i) idx.push_back(i);
  S origin = S::coordinate(k, n, idx);
  std::set<S> orbit{origin};
  std::deque<S> frontier{origin};
  while (!frontier.empty()) {
    S w = frontier.front();
    frontier.pop_front();
    for (const auto& gen : gens) {
      S next = transform(gen, w);
      if (orbit.insert(next).second) {
        check_budget(orbit.size(), budget, "squeeze orbit");
        frontier.push_back(next);
      }
    }
  }

  SqueezeReport rep;
  rep.orbit_size = orbit.size();
  rep.subset_holds = true;
  for (const auto& w : orbit)
    if (!squeezed(w)) {
      rep.subset_holds = false;
      if (rep.first_violation.empty()) rep.first_violation = "orbit point not squeezed";
    }
  rep.superset_holds = true;
  for_each_subspace(k, n, g.q(), [&](const S& w) {
    if (!squeezed(w)) return;
    ++rep.squeezed_count;
    if (!orbit.count(w)) rep.superset_holds = false;
  });
  return rep;
}

}  // namespace flaggeom

#endif  // FLAGGEOM_LIEALG_HPP
