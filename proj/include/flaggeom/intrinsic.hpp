#ifndef FLAGGEOM_INTRINSIC_HPP
#define FLAGGEOM_INTRINSIC_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "charts.hpp"

namespace flaggeom {

using PFlag = Flag<PrimeField>;
using PSubspace = Subspace<PrimeField>;
using PMatrix = Matrix<PrimeField>;

// A finite pair geometry of flags: points of one type, chart flags of the transversal type,
// with chart tables built once.
class Geometry {
 public:
  Geometry(const PrimeField& field, FlagType type, std::vector<PFlag> points, std::vector<PFlag> copoints,
           std::string name)
      : field_(field), type_(std::move(type)), points_(std::move(points)), copoints_(std::move(copoints)),
        name_(std::move(name)) {
    require_chart_field(field_, type_.length());
    std::sort(points_.begin(), points_.end());
    std::sort(copoints_.begin(), copoints_.end());
    for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(points_[i], i);
    members_.resize(copoints_.size());
    charts_of_.resize(points_.size());
    for (std::size_t a = 0; a < copoints_.size(); ++a)
      for (std::size_t x = 0; x < points_.size(); ++x)
        if (is_transversal(points_[x], copoints_[a])) {
          members_[a].push_back(x);
          charts_of_[x].push_back(a);
        }
    cache_.resize(copoints_.size());
  }

  // All flags of a type against all flags of the co-type.
  static Geometry flag_geometry(const PrimeField& field, const FlagType& type,
                                std::uint64_t budget = kDefaultBudget) {
    auto pts = enumerate_flags(field, type, budget);
    auto cps = enumerate_flags(field, type.co_type(), budget);
    return Geometry(field, type, std::move(pts), std::move(cps),
                    "flags" + type.to_string() + " over " + field.name());
  }
  // Gras_{p,q}: p-dimensional subspaces of F^{p+q}.
  static Geometry grassmannian(const PrimeField& field, std::size_t p, std::size_t q,
                               std::uint64_t budget = kDefaultBudget) {
    auto g = flag_geometry(field, FlagType{{p, p + q}}, budget);
    g.name_ = "Gras_{" + std::to_string(p) + "," + std::to_string(q) + "} over " + field.name();
    return g;
  }

  const PrimeField& field() const { return field_; }
  const FlagType& type() const { return type_; }
  std::size_t length() const { return type_.length(); }
  std::size_t ambient() const { return type_.ambient(); }
  const std::string& name() const { return name_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<PFlag>& points() const { return points_; }
  const std::vector<PFlag>& copoints() const { return copoints_; }
  const PFlag& point(std::size_t i) const { return points_.at(i); }
  const PFlag& copoint(std::size_t a) const { return copoints_.at(a); }

  std::optional<std::size_t> index_of(const PFlag& f) const {
    auto it = index_.find(f);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t require_index(const PFlag& f) const {
    auto i = index_of(f);
    if (!i) throw std::invalid_argument("flag is not a point of " + name_);
    return *i;
  }
  std::optional<std::size_t> copoint_index(const PFlag& f) const {
    auto it = std::lower_bound(copoints_.begin(), copoints_.end(), f);
    if (it == copoints_.end() || *it != f) return std::nullopt;
    return static_cast<std::size_t>(it - copoints_.begin());
  }

  // Points transversal to chart flag a, ascending.
  const std::vector<std::size_t>& chart_members(std::size_t a) const { return members_.at(a); }
  const std::vector<std::size_t>& charts_of(std::size_t x) const { return charts_of_.at(x); }
  bool in_chart(std::size_t x, std::size_t a) const {
    const auto& m = members_[a];
    return std::binary_search(m.begin(), m.end(), x);
  }

  // Coordinate of y in chart a with origin x, as log of the transporter from x to y.
  PMatrix coord(std::size_t a, std::size_t x, std::size_t y) const {
    const auto& c = chart(a);
    std::size_t ix = position(a, x), iy = position(a, y);
    return log_unipotent(c.to[iy] * c.from[ix], length());
  }
  PFlag chart_point(std::size_t x, const PMatrix& coord) const {
    return points_[x].transformed(exp_nilpotent(coord, length()));
  }

 private:
  struct ChartCache {
    bool ready = false;
    std::vector<PMatrix> to;    // transporter from the first member to each member
    std::vector<PMatrix> from;  // inverses
  };

  std::size_t position(std::size_t a, std::size_t x) const {
    const auto& m = members_[a];
    auto it = std::lower_bound(m.begin(), m.end(), x);
    if (it == m.end() || *it != x) throw std::invalid_argument("point is not in the chart domain");
    return static_cast<std::size_t>(it - m.begin());
  }
  const ChartCache& chart(std::size_t a) const {
    ChartCache& c = cache_[a];
    if (!c.ready) {
      const auto& m = members_[a];
      const PFlag& base = points_[m.front()];
      for (std::size_t y : m) {
        auto u = detail::transporter_steps(field_, ambient(), copoints_[a].proper_steps(), base.proper_steps(),
                                           points_[y].proper_steps());
        c.from.push_back(inverse(u));
        c.to.push_back(std::move(u));
      }
      c.ready = true;
    }
    return c;
  }

  PrimeField field_;
  FlagType type_;
  std::vector<PFlag> points_;
  std::vector<PFlag> copoints_;
  std::string name_;
  std::map<PFlag, std::size_t> index_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::vector<std::size_t>> charts_of_;
  mutable std::vector<ChartCache> cache_;
};

// Finite set of points of a geometry, kept as sorted indices.
class PointSet {
 public:
  PointSet(const Geometry& g, std::vector<std::size_t> members) : geom_(&g), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (auto i : members_)
      if (i >= g.size()) throw std::out_of_range("point index outside the geometry");
  }
  static PointSet of_flags(const Geometry& g, const std::vector<PFlag>& flags) {
    std::vector<std::size_t> idx;
    for (const auto& f : flags) idx.push_back(g.require_index(f));
    return PointSet(g, std::move(idx));
  }
  static PointSet all(const Geometry& g) {
    std::vector<std::size_t> idx(g.size());
    std::iota(idx.begin(), idx.end(), 0);
    return PointSet(g, std::move(idx));
  }

  const Geometry& geometry() const { return *geom_; }
  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(std::size_t i) const { return std::binary_search(members_.begin(), members_.end(), i); }
  bool contains(const PointSet& o) const {
    return std::includes(members_.begin(), members_.end(), o.members_.begin(), o.members_.end());
  }
  std::vector<PFlag> flags() const {
    std::vector<PFlag> out;
    for (auto i : members_) out.push_back(geom_->point(i));
    return out;
  }
  // Members transversal to chart flag a.
  std::vector<std::size_t> slice(std::size_t a) const {
    const auto& m = geom_->chart_members(a);
    std::vector<std::size_t> out;
    std::set_intersection(members_.begin(), members_.end(), m.begin(), m.end(), std::back_inserter(out));
    return out;
  }

  bool operator==(const PointSet& o) const { return geom_ == o.geom_ && members_ == o.members_; }

 private:
  const Geometry* geom_;
  std::vector<std::size_t> members_;
};

inline PointSet intersect(const PointSet& a, const PointSet& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
                        std::back_inserter(out));
  return PointSet(a.geometry(), std::move(out));
}

// A chart in which a set fails to be a submodule, with the offending operation.
struct Witness {
  std::size_t chart;
  std::size_t origin;
  std::string op;                 // "pi_r" or "sigma"
  std::vector<std::size_t> args;  // point indices: y for pi_r, y and z for sigma
  PrimeField::value_type scalar = 0;
  PFlag result;
};

struct IntrinsicReport {
  bool intrinsic = true;
  std::optional<Witness> witness;
};

class NotIntrinsic : public std::runtime_error {
 public:
  NotIntrinsic(std::string msg, Witness w) : std::runtime_error(std::move(msg)), witness(std::move(w)) {}
  Witness witness;
};

namespace detail {

inline std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

struct SliceCoords {
  std::vector<std::size_t> points;
  std::vector<PMatrix> coords;
  PSubspace span;
};

inline SliceCoords slice_coords(const Geometry& g, std::size_t a, std::size_t x,
                                const std::vector<std::size_t>& slice) {
  std::size_t n = g.ambient();
  PMatrix rows(g.field(), slice.size(), n * n);
  std::vector<PMatrix> coords;
  for (std::size_t r = 0; r < slice.size(); ++r) {
    coords.push_back(g.coord(a, x, slice[r]));
    for (std::size_t j = 0; j < n * n; ++j) rows(r, j) = coords.back().vec()[j];
  }
  return {slice, std::move(coords), PSubspace::span(rows)};
}

inline bool is_submodule(const Geometry& g, const SliceCoords& s) {
  return detail::ipow(g.field().p(), s.span.dim()) == s.points.size();
}

// Finds an operation leaving the coordinate set; assumes the set is not a submodule.
inline Witness find_violation(const Geometry& g, std::size_t a, std::size_t x, const SliceCoords& s) {
  const PrimeField& k = g.field();
  std::set<Vec<PrimeField>> present;
  for (const auto& c : s.coords) present.insert(c.vec());
  for (std::size_t i = 0; i < s.points.size(); ++i)
    for (std::uint32_t r = 2; r < k.p(); ++r) {
      PMatrix c = s.coords[i].scaled(r);
      if (!present.count(c.vec())) return {a, x, "pi_r", {s.points[i]}, r, g.chart_point(x, c)};
    }
  for (std::size_t i = 0; i < s.points.size(); ++i)
    for (std::size_t j = i; j < s.points.size(); ++j) {
      PMatrix c = s.coords[i] + s.coords[j];
      if (!present.count(c.vec())) return {a, x, "sigma", {s.points[i], s.points[j]}, 0, g.chart_point(x, c)};
    }
  throw std::logic_error("coordinate set is closed but has the wrong size");
}

}  // namespace detail

// Every chart slice is a submodule at every origin it contains.
inline IntrinsicReport is_intrinsic(const PointSet& s) {
  const Geometry& g = s.geometry();
  for (std::size_t a = 0; a < g.copoints().size(); ++a) {
    auto slice = s.slice(a);
    for (std::size_t x : slice) {
      auto sc = detail::slice_coords(g, a, x, slice);
      if (!detail::is_submodule(g, sc)) return {false, detail::find_violation(g, a, x, sc)};
    }
  }
  return {};
}

// Chart coordinates of s ∩ a^⊤ at origin x, as a subspace of vectorized n x n matrices.
inline PSubspace affine_slice(const PointSet& s, std::size_t x, std::size_t a) {
  const Geometry& g = s.geometry();
  if (!s.contains(x)) throw std::invalid_argument("affine_slice: origin is not in the set");
  if (!g.in_chart(x, a)) throw std::invalid_argument("affine_slice: origin is not in the chart");
  auto sc = detail::slice_coords(g, a, x, s.slice(a));
  if (!detail::is_submodule(g, sc)) throw NotIntrinsic("slice is not a submodule", detail::find_violation(g, a, x, sc));
  return sc.span;
}

// Least intrinsic superset. For k = 2 one origin per chart suffices since the chart structure is affine.
inline PointSet closure(const PointSet& s) {
  const Geometry& g = s.geometry();
  std::vector<char> in(g.size(), 0);
  for (auto i : s.members()) in[i] = 1;
  std::vector<std::size_t> current = s.members();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < g.copoints().size(); ++a) {
      PointSet cur(g, current);
      auto slice = cur.slice(a);
      if (slice.empty()) continue;
      std::vector<std::size_t> origins = g.length() == 2 ? std::vector<std::size_t>{slice.front()} : slice;
      for (std::size_t x : origins) {
        auto sc = detail::slice_coords(g, a, x, slice);
        if (detail::is_submodule(g, sc)) continue;
        for_each_element(sc.span, [&](const Vec<PrimeField>& v) {
          PMatrix c = PMatrix::from_vec(g.field(), g.ambient(), g.ambient(), v);
          std::size_t y = g.require_index(g.chart_point(x, c));
          if (!in[y]) {
            in[y] = 1;
            current.push_back(y);
            changed = true;
          }
        });
        std::sort(current.begin(), current.end());
        slice = PointSet(g, current).slice(a);
      }
    }
  }
  return PointSet(g, std::move(current));
}

inline PointSet join(const PointSet& s, const PointSet& t) {
  std::vector<std::size_t> all = s.members();
  all.insert(all.end(), t.members().begin(), t.members().end());
  return closure(PointSet(s.geometry(), std::move(all)));
}

// I_{e;j} = {f : f_j ⊆ e ⊆ f_{j+1}}
struct StandardIntrinsic {
  PSubspace governor;
  std::size_t position;
};

// e_1 ⊆ e_2; members x with e_1 ⊆ x ⊆ e_2 (k = 2).
struct ShortFlagGovernor {
  PSubspace e1;
  PSubspace e2;
};

// Governor chain e_1 ⊆ ... ⊆ e_k; members f with e_j ⊆ f_j ⊆ e_{j+1}.
struct SqueezeGovernor {
  std::vector<PSubspace> steps;
};

inline PointSet standard_members(const Geometry& g, const StandardIntrinsic& si) {
  if (si.position >= g.length()) throw std::invalid_argument("governor position must be below the flag length");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& f = g.point(i);
    if (si.governor.contains(f.step(si.position)) && f.step(si.position + 1).contains(si.governor)) out.push_back(i);
  }
  return PointSet(g, std::move(out));
}

inline PointSet standard_members(const Geometry& g, const SqueezeGovernor& sg) {
  std::size_t k = g.length();
  if (sg.steps.size() != k) throw std::invalid_argument("governor chain must have one step per flag step");
  for (std::size_t j = 1; j < k; ++j)
    if (!sg.steps[j].contains(sg.steps[j - 1])) throw std::invalid_argument("governor chain must ascend");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& f = g.point(i);
    bool ok = true;
    for (std::size_t j = 1; j < k && ok; ++j)
      ok = f.step(j).contains(sg.steps[j - 1]) && sg.steps[j].contains(f.step(j));
    if (ok) out.push_back(i);
  }
  return PointSet(g, std::move(out));
}

inline PointSet standard_members(const Geometry& g, const ShortFlagGovernor& sf) {
  if (g.length() != 2) throw std::invalid_argument("short flag governors need a Grassmannian");
  if (!sf.e2.contains(sf.e1)) throw std::invalid_argument("governor needs e1 ⊆ e2");
  return standard_members(g, SqueezeGovernor{{sf.e1, sf.e2}});
}

// u(a) ∩ p(e_1) ∩ ... for the governing subspaces.
inline PSubspace expected_slice(const PFlag& a, const std::vector<PSubspace>& governors) {
  PSubspace out = nilpotent_algebra(a);
  for (const auto& e : governors) out = intersect(out, stabilizer_algebra(e));
  return out;
}

// For k = 2: the tightest governor e1 = ∩ members, e2 = Σ members, if it reproduces the set.
inline std::optional<ShortFlagGovernor> classify_short(const PointSet& s) {
  const Geometry& g = s.geometry();
  if (g.length() != 2 || s.empty()) return std::nullopt;
  PSubspace lo = PSubspace::full(g.field(), g.ambient()), hi = PSubspace::zero(g.field(), g.ambient());
  for (auto i : s.members()) {
    lo = intersect(lo, g.point(i).step(1));
    hi = sum(hi, g.point(i).step(1));
  }
  ShortFlagGovernor gov{lo, hi};
  if (standard_members(g, gov) == s) return gov;
  return std::nullopt;
}

// Tries I_{e;j} with e the sum of the j-th steps or the intersection of the (j+1)-th steps.
inline std::optional<StandardIntrinsic> classify_standard(const PointSet& s) {
  const Geometry& g = s.geometry();
  if (s.empty()) return std::nullopt;
  for (std::size_t j = 0; j < g.length(); ++j) {
    PSubspace lo = PSubspace::zero(g.field(), g.ambient()), hi = PSubspace::full(g.field(), g.ambient());
    for (auto i : s.members()) {
      lo = sum(lo, g.point(i).step(j));
      hi = intersect(hi, g.point(i).step(j + 1));
    }
    for (const auto& e : {lo, hi}) {
      if (!hi.contains(e) || !e.contains(lo)) continue;
      StandardIntrinsic si{e, j};
      if (standard_members(g, si) == s) return si;
    }
  }
  return std::nullopt;
}

// Points outside the chart domain of a.
inline PointSet horizon(const Geometry& g, std::size_t a) {
  std::vector<std::size_t> out;
  const auto& m = g.chart_members(a);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!std::binary_search(m.begin(), m.end(), i)) out.push_back(i);
  return PointSet(g, std::move(out));
}

inline bool is_horizon_intrinsic(const Geometry& g, std::size_t a) { return is_intrinsic(horizon(g, a)).intrinsic; }

// Longest strict chain {x} ⊂ x∨z_1 ⊂ ... ⊂ x∨y of principal subspaces through x.
namespace detail {
// Longest strict chain of pair closures x∨z ending at top, over the closures that top contains.
inline std::size_t chain_length(const PointSet& top, const std::function<const PointSet&(std::size_t)>& closure_with) {
  std::vector<const PointSet*> family;
  for (auto z : top.members()) {
    const PointSet& p = closure_with(z);
    if (std::none_of(family.begin(), family.end(), [&](const PointSet* f) { return *f == p; })) family.push_back(&p);
  }
  std::sort(family.begin(), family.end(), [](const PointSet* u, const PointSet* v) { return u->size() < v->size(); });
  std::vector<std::size_t> len(family.size(), 0);
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (family[j]->size() < family[i]->size() && family[i]->contains(*family[j]))
        len[i] = std::max(len[i], len[j] + 1);
  for (std::size_t i = 0; i < family.size(); ++i)
    if (*family[i] == top) return len[i];
  throw std::logic_error("principal_rank: top subspace missing from its own family");
}
}  // namespace detail

inline std::size_t principal_rank(const Geometry& g, std::size_t x, std::size_t y) {
  std::map<std::size_t, PointSet> cache;
  auto closure_with = [&](std::size_t z) -> const PointSet& {
    auto it = cache.find(z);
    if (it == cache.end()) it = cache.emplace(z, closure(PointSet(g, {x, z}))).first;
    return it->second;
  };
  return detail::chain_length(closure_with(y), closure_with);
}

// principal_rank(g, x, y) for every point y, sharing the pair closures.
inline std::vector<std::size_t> principal_ranks(const Geometry& g, std::size_t x) {
  std::vector<PointSet> closures;
  closures.reserve(g.size());
  for (std::size_t z = 0; z < g.size(); ++z) closures.push_back(closure(PointSet(g, {x, z})));
  auto closure_with = [&](std::size_t z) -> const PointSet& { return closures[z]; };
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < g.size(); ++y) out.push_back(detail::chain_length(closures[y], closure_with));
  return out;
}

// Classes of the relation "lie in a common chart", closed transitively.
inline std::vector<std::vector<std::size_t>> connected_components(const Geometry& g) {
  std::vector<std::size_t> parent(g.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t a = 0; a < g.copoints().size(); ++a) {
    const auto& m = g.chart_members(a);
    for (std::size_t i = 1; i < m.size(); ++i) {
      auto r1 = find(m[0]), r2 = find(m[i]);
      if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < g.size(); ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace flaggeom

#endif  // FLAGGEOM_INTRINSIC_HPP
