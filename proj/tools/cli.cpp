// flaggeom: enumerate geometries, run verification suites, compute closures, run experiments.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "suites.hpp"

namespace {

using namespace flaggeom;
using flaggeom::suites::json;
namespace jio = flaggeom::json;

enum ExitCode { kOk = 0, kInvariant = 1, kBudget = 2, kConfig = 3 };

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string field = "2";
  std::size_t dim = 0;
  std::vector<std::size_t> pq;
  std::size_t k = 0;
  std::vector<std::size_t> type;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::string out;

  // enumerate / geometry selection
  std::size_t grass = 0;
  std::vector<std::size_t> flags;
  bool lagrangian = false;
  std::string form = "skew";

  std::string suite = "all";
  bool list = false;
  std::string points;
  std::string experiment;
  std::size_t rank = 0;

  CLI::App* sub = nullptr;
  bool given(const std::string& name) const { return sub->count(name) > 0; }
};

std::uint64_t default_budget() {
  if (const char* env = std::getenv("GEOM_BUDGET")) {
    try {
      std::size_t used = 0;
      std::uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("GEOM_BUDGET must be a positive integer, got '") + env + "'");
  }
  return kDefaultBudget;
}

suites::RunConfig run_config(const Options& o) {
  suites::RunConfig cfg;
  if (o.given("--field")) cfg.field = FieldSpec::parse(o.field);
  if (o.given("--dim")) cfg.n = o.dim;
  if (o.given("--pq")) cfg.pq = std::pair{o.pq[0], o.pq[1]};
  if (o.given("--k")) cfg.k = o.k;
  if (o.given("--type")) {
    FlagType t{o.type};
    if (cfg.n && t.dims.back() != *cfg.n) t.dims.push_back(*cfg.n);
    t.validate();
    cfg.type = t;
  }
  cfg.seed = o.seed;
  cfg.budget = o.given("--budget") ? o.budget : default_budget();
  return cfg;
}

PrimeField prime_field(const Options& o) {
  FieldSpec spec = FieldSpec::parse(o.field);
  if (spec.rational) throw ConfigError("this command needs a finite field (--field <prime>)");
  return PrimeField(spec.p);
}

// Flag type from --grass/--flags/--type/--pq, completed with --dim as the last entry.
FlagType flag_type(const Options& o) {
  std::vector<std::size_t> dims;
  if (o.given("--grass")) {
    if (!o.given("--dim")) throw ConfigError("--grass needs --dim");
    dims = {o.grass, o.dim};
  } else if (o.given("--flags")) {
    dims = o.flags;
  } else if (o.given("--type")) {
    dims = o.type;
  } else if (o.given("--pq")) {
    dims = {o.pq[0], o.pq[0] + o.pq[1]};
  } else {
    throw ConfigError("choose a geometry with --grass, --flags, --type or --pq");
  }
  if (o.given("--dim") && dims.back() != o.dim) dims.push_back(o.dim);
  FlagType t{dims};
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return t;
}

BilinearForm<PrimeField> form_of(const PrimeField& k, const Options& o) {
  if (!o.given("--dim") || o.dim % 2) throw ConfigError("Lagrangian geometries need an even --dim");
  if (o.form == "skew") return BilinearForm<PrimeField>::symplectic(k, o.dim / 2);
  if (o.form == "sym") return BilinearForm<PrimeField>::artinian(k, o.dim / 2);
  throw ConfigError("--form must be 'skew' or 'sym'");
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + o.out + "'");
  f << text;
}

int cmd_enumerate(const Options& o, std::uint64_t budget) {
  PrimeField k = prime_field(o);
  std::ostringstream lines;
  if (o.lagrangian) {
    auto b = form_of(k, o);
    FlagType t{{o.dim / 2, o.dim}};
    auto pts = enumerate_lagrangian(k, t, b, budget);
    lines << json{{"kind", "lagrangian"}, {"field", jio::field(k)}, {"form", jio::bilinear_form(b)},
                  {"count", pts.size()}}
                 .dump()
          << "\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
      lines << json{{"index", i}, {"subspace", jio::subspace(pts[i].step(1))}}.dump() << "\n";
  } else {
    FlagType t = flag_type(o);
    if (t.length() == 2) {
      auto subs = enumerate_subspaces(k, t.ambient(), t.dims[0], budget);
      lines << json{{"kind", "grassmannian"}, {"field", jio::field(k)}, {"type", t.dims}, {"count", subs.size()}}.dump()
            << "\n";
      for (std::size_t i = 0; i < subs.size(); ++i)
        lines << json{{"index", i}, {"subspace", jio::subspace(subs[i])}}.dump() << "\n";
    } else {
      auto fl = enumerate_flags(k, t, budget);
      lines << json{{"kind", "flags"}, {"field", jio::field(k)}, {"type", t.dims}, {"count", fl.size()}}.dump() << "\n";
      for (std::size_t i = 0; i < fl.size(); ++i) lines << json{{"index", i}, {"flag", jio::flag(fl[i])}}.dump() << "\n";
    }
  }
  emit(o, lines.str());
  return kOk;
}

int cmd_verify(const Options& o) {
  if (o.list) {
    for (const auto& s : suites::registry()) std::cout << s.name << "\t" << s.description << "\n";
    std::cout << "all\tevery suite above\n";
    return kOk;
  }
  auto cfg = run_config(o);
  auto t0 = std::chrono::steady_clock::now();
  auto report = suites::run(o.suite, cfg, [](const std::string& name, double secs) {
    std::cerr << "suite " << name << ": " << secs << " s\n";
  });
  std::cerr << "total: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
  emit(o, report.doc.dump(2) + "\n");
  return report.passed ? kOk : kInvariant;
}

// One Flag or Subspace JSON object per non-blank line.
std::vector<Flag<PrimeField>> read_points(const std::string& path, const PrimeField& k) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read points file '" + path + "'");
  std::vector<Flag<PrimeField>> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(line);
      if (j.contains("steps")) out.push_back(jio::parse_flag(k, j));
      else out.push_back(Flag<PrimeField>::of_subspace(jio::parse_subspace(k, j)));
    } catch (const std::exception& e) {
      throw jio::ParseError(path + ":" + std::to_string(no) + ": " + e.what());
    }
  }
  if (out.empty()) throw jio::ParseError(path + ": no points");
  return out;
}

json classification(const PointSet& s) {
  if (s.geometry().length() == 2)
    if (auto sf = classify_short(s)) return {{"kind", "short_flag"}, {"e1", jio::subspace(sf->e1)}, {"e2", jio::subspace(sf->e2)}};
  if (auto si = classify_standard(s))
    return {{"kind", "standard"}, {"governor", jio::subspace(si->governor)}, {"position", si->position}};
  return {{"kind", "none"}};
}

int cmd_closure(const Options& o, std::uint64_t budget) {
  PrimeField k = prime_field(o);
  Geometry g = o.lagrangian ? lagrangian_geometry(k, FlagType{{o.dim / 2, o.dim}}, form_of(k, o), budget)
                            : Geometry::flag_geometry(k, flag_type(o), budget);
  auto flags = read_points(o.points, k);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    auto at = g.index_of(flags[i]);
    if (!at) throw jio::ParseError(o.points + ": point " + std::to_string(i + 1) + " is not in " + g.name());
    idx.push_back(*at);
  }
  PointSet input(g, idx);
  PointSet c = closure(input);
  json doc = {{"input", jio::point_set(input)},
              {"input_intrinsic", is_intrinsic(input).intrinsic},
              {"closure", jio::point_set(c)},
              {"size", c.size()},
              {"classification", classification(c)}};
  emit(o, doc.dump(2) + "\n");
  return kOk;
}

int cmd_experiment(const Options& o, std::uint64_t budget) {
  PrimeField k = prime_field(o);
  json doc;
  if (o.experiment == "horizon") {
    FlagType t = flag_type(o);
    if (t.length() != 2) throw ConfigError("horizon needs a Grassmannian (--grass or --pq)");
    doc = suites::horizon_experiment(k, t.dims[0], t.ambient() - t.dims[0], budget);
  } else if (o.experiment == "closure") {
    FlagType t = flag_type(o);
    if (t.length() != 2) throw ConfigError("closure census needs a Grassmannian (--grass or --pq)");
    doc = suites::closure_census(Geometry::grassmannian(k, t.dims[0], t.ambient() - t.dims[0], budget));
  } else if (o.experiment == "lagrangian") {
    if (!o.given("--dim") || o.dim % 2) throw ConfigError("lagrangian needs an even --dim");
    doc = suites::lagrangian_closure_census(k, o.dim / 2, budget);
  } else if (o.experiment == "squeeze") {
    if (!o.given("--pq")) throw ConfigError("squeeze needs --pq");
    std::size_t p = o.pq[0], q = o.pq[1];
    if (o.rank > std::min(p, q)) throw ConfigError("--rank exceeds min(p, q)");
    GradedGL<PrimeField> g(k, p, q);
    Matrix<PrimeField> x(k, p, q);
    for (std::size_t i = 0; i < o.rank; ++i) x(i, i) = 1;
    doc = suites::squeeze_json(g, complete_idempotent(x), budget);
  } else {
    throw ConfigError("unknown experiment '" + o.experiment + "' (horizon, closure, lagrangian, squeeze)");
  }
  doc["experiment"] = o.experiment;
  emit(o, doc.dump(2) + "\n");
  return kOk;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--field", o.field, "prime p or 'rat'");
  app->add_option("--dim", o.dim, "ambient dimension n")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  app->add_option("--pq", o.pq, "Grassmannian or matrix shape p,q")->delimiter(',')->expected(2)->check(CLI::PositiveNumber);
  app->add_option("--k", o.k, "flag length")->check(CLI::PositiveNumber);
  app->add_option("--type", o.type, "flag dimensions d1,d2,...")->delimiter(',');
  app->add_option("--seed", o.seed, "PRNG seed");
  app->add_option("--budget", o.budget, "maximum enumeration size (default 20000, or GEOM_BUDGET)")
      ->check(CLI::PositiveNumber);
  app->add_option("--out", o.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flag geometries, Jordan pairs and their verification suites"};
  app.require_subcommand(1);
  Options o;

  auto* en = app.add_subcommand("enumerate", "list subspaces, flags or Lagrangian subspaces as JSON lines");
  add_common(en, o);
  en->add_option("--grass", o.grass, "subspace dimension of a Grassmannian");
  en->add_option("--flags", o.flags, "flag dimensions d1,d2,...")->delimiter(',');
  en->add_flag("--lagrangian", o.lagrangian, "Lagrangian subspaces of the standard form on F^dim");
  en->add_option("--form", o.form, "skew or sym");

  auto* ve = app.add_subcommand("verify", "run verification suites and write a JSON report");
  add_common(ve, o);
  ve->add_option("--suite", o.suite, "suite name or 'all'");
  ve->add_flag("--list", o.list, "list suites");

  auto* cl = app.add_subcommand("closure", "closure of a point set, with classification");
  add_common(cl, o);
  cl->add_option("points", o.points, "JSON-lines file of points")->required();
  cl->add_option("--grass", o.grass, "subspace dimension of a Grassmannian");
  cl->add_option("--flags", o.flags, "flag dimensions d1,d2,...")->delimiter(',');
  cl->add_flag("--lagrangian", o.lagrangian, "use the Lagrangian geometry of F^dim");
  cl->add_option("--form", o.form, "skew or sym");

  auto* ex = app.add_subcommand("experiment", "horizon, closure, lagrangian or squeeze experiment");
  add_common(ex, o);
  ex->add_option("name", o.experiment, "experiment name")->required();
  ex->add_option("--grass", o.grass, "subspace dimension of a Grassmannian");
  ex->add_option("--rank", o.rank, "rank of the idempotent (squeeze)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (ve->parsed()) {
      o.sub = ve;
      return cmd_verify(o);
    }
    CLI::App* sub = en->parsed() ? en : cl->parsed() ? cl : ex;
    o.sub = sub;
    std::uint64_t budget = o.given("--budget") ? o.budget : default_budget();
    if (sub == en) return cmd_enumerate(o, budget);
    if (sub == cl) return cmd_closure(o, budget);
    return cmd_experiment(o, budget);
  } catch (const BudgetExceeded& e) {
    if (!o.out.empty()) std::filesystem::remove(o.out);
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const jio::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kConfig;
  } catch (const FieldTooSmall& e) {
    std::cerr << "unsupported field: " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  }
}
