#ifndef FLAGGEOM_JSON_IO_HPP
#define FLAGGEOM_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "intrinsic.hpp"
#include "jordan.hpp"
#include "lagrangian.hpp"
#include "liealg.hpp"

namespace flaggeom::json {

using nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline json field(const PrimeField& k) { return {{"kind", "prime"}, {"p", k.p()}}; }
inline json field(const RationalField&) { return {{"kind", "rational"}}; }

inline FieldSpec parse_field(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ParseError("field: expected an object with \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "rational") return FieldSpec::rationals();
  if (kind == "prime") return FieldSpec::prime(j.at("p").get<std::uint32_t>());
  throw ParseError("field: unknown kind '" + kind + "'");
}

inline json scalar(const PrimeField&, PrimeField::value_type v) { return v; }
inline json scalar(const RationalField& k, const RationalField::value_type& v) { return k.to_string(v); }

inline PrimeField::value_type parse_scalar(const PrimeField& k, const json& j) {
  if (!j.is_number_integer()) throw ParseError("matrix entry over " + k.name() + " must be an integer");
  auto v = j.get<long long>();
  if (v < 0 || v >= static_cast<long long>(k.p()))
    throw ParseError("matrix entry " + std::to_string(v) + " out of range 0.." + std::to_string(k.p() - 1));
  return static_cast<PrimeField::value_type>(v);
}
inline RationalField::value_type parse_scalar(const RationalField& k, const json& j) {
  if (j.is_number_integer()) return k.from_int(j.get<long long>());
  if (!j.is_string()) throw ParseError("rational entry must be a string \"a/b\" or an integer");
  try {
    return k.parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad rational entry: ") + e.what());
  }
}

template <class F>
json matrix(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(scalar(m.field(), m(i, j)));
    rows.push_back(std::move(r));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

template <class F>
Matrix<F> parse_matrix(const F& k, const json& j) {
  if (!j.is_object()) throw ParseError("matrix: expected an object");
  std::size_t r = j.at("rows").get<std::size_t>(), c = j.at("cols").get<std::size_t>();
  const json& e = j.at("entries");
  if (!e.is_array() || e.size() != r) throw ParseError("matrix: entries must have " + std::to_string(r) + " rows");
  Matrix<F> m(k, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!e[i].is_array() || e[i].size() != c)
      throw ParseError("matrix: row " + std::to_string(i) + " must have " + std::to_string(c) + " entries");
    for (std::size_t jj = 0; jj < c; ++jj) m(i, jj) = parse_scalar(k, e[i][jj]);
  }
  return m;
}

template <class F>
json subspace(const Subspace<F>& s) {
  return {{"ambient", s.ambient()}, {"basis", matrix(s.basis())}};
}

template <class F>
Subspace<F> parse_subspace(const F& k, const json& j) {
  std::size_t n = j.at("ambient").get<std::size_t>();
  Matrix<F> b = parse_matrix(k, j.at("basis"));
  if (b.cols() != n) throw ParseError("subspace: basis width does not match ambient");
  return Subspace<F>::span(b);
}

template <class F>
json flag(const Flag<F>& f) {
  json steps = json::array();
  for (const auto& s : f.proper_steps()) steps.push_back(subspace(s));
  return {{"ambient", f.ambient()}, {"steps", std::move(steps)}};
}

template <class F>
Flag<F> parse_flag(const F& k, const json& j) {
  std::size_t n = j.at("ambient").get<std::size_t>();
  std::vector<Subspace<F>> steps;
  for (const auto& s : j.at("steps")) steps.push_back(parse_subspace(k, s));
  try {
    return Flag<F>(k, n, std::move(steps));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("flag: ") + e.what());
  }
}

template <class F>
json grading(const Grading<F>& g) {
  json parts = json::array();
  for (const auto& s : g.parts()) parts.push_back(subspace(s));
  return {{"ambient", g.ambient()}, {"parts", std::move(parts)}};
}

template <class F>
json chart_point(const ChartPoint<F>& cp) {
  return {{"base", {{"x", flag(cp.x)}, {"a", flag(cp.a)}}}, {"coord", matrix(cp.coord.op())}};
}

inline json geometry(const Geometry& g) {
  return {{"name", g.name()}, {"field", field(g.field())}, {"type", g.type().dims}, {"points", g.size()}};
}

inline json point_set(const PointSet& s) {
  json members = json::array();
  for (const auto& f : s.flags()) members.push_back(flag(f));
  return {{"geometry", geometry(s.geometry())}, {"members", std::move(members)}};
}

inline json witness(const Geometry& g, const Witness& w) {
  json args = json::array();
  for (auto i : w.args) args.push_back(flag(g.point(i)));
  json violation = {{"op", w.op}, {"args", std::move(args)}, {"result", flag(w.result)}};
  if (w.op == "pi_r") violation["scalar"] = w.scalar;
  return {{"chart", flag(g.copoint(w.chart))}, {"origin", flag(g.point(w.origin))}, {"violation", std::move(violation)}};
}

template <class F>
json bilinear_form(const BilinearForm<F>& b) {
  return {{"gram", matrix(b.gram())}, {"symmetry", to_string(b.symmetry())}};
}

template <class F>
json pair(const JordanPair<F>& jp) {
  if (jp.kind() == JordanPair<F>::Kind::rect) return {{"kind", "rect"}, {"p", jp.p()}, {"q", jp.q()}};
  return {{"kind", "sym"}, {"n", jp.p()}};
}

template <class F>
json inner_ideal(const InnerIdeal<F>& i) {
  json basis = json::array();
  for (const auto& v : i.space.basis_vectors()) basis.push_back(matrix(i.pair.plus_from_vec(v)));
  return {{"pair", pair(i.pair)}, {"basis", std::move(basis)}};
}

inline json axiom_report(const AxiomReport& r) {
  json ids = json::array();
  for (const auto& i : r.identities) {
    json o = {{"identity", i.identity}, {"checked", i.checked}, {"violations", i.violations}};
    if (!i.first_violation.empty()) o["first_violation"] = i.first_violation;
    ids.push_back(std::move(o));
  }
  return {{"exhaustive", r.exhaustive}, {"identities", std::move(ids)}};
}

template <class F>
json five_grading(const FiveGrading<F>& fg) {
  const F& k = fg.h.field();
  std::size_t d = fg.h.rows() * fg.h.rows();
  json parts = json::object();
  for (int i = -2; i <= 2; ++i) parts[std::to_string(i)] = subspace(fg.parts.part(k, d, i));
  return {{"H", matrix(fg.h)}, {"parts", std::move(parts)}};
}

}  // namespace flaggeom::json

#endif  // FLAGGEOM_JSON_IO_HPP
