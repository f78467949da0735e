#include "nilmetric/cli.hpp"

#include "nilmetric/algebra.hpp"
#include "nilmetric/catalog.hpp"
#include "nilmetric/curvature.hpp"
#include "nilmetric/error.hpp"
#include "nilmetric/flows.hpp"
#include "nilmetric/minimality.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace nilmetric {

namespace {

using json = nlohmann::ordered_json;

constexpr int kFormat = 1;

#ifndef NILMETRIC_VERSION
#define NILMETRIC_VERSION "dev"
#endif

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, where + ": " + what);
}

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) parse_fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) parse_fail(where, "must be finite");
  return x;
}

int index_at(const json& v, const std::string& where, int dim) {
  if (!v.is_number_integer()) parse_fail(where, "expected an integer");
  const auto x = v.get<long long>();
  if (x < 1 || x > dim) parse_fail(where, "index " + std::to_string(x) + " outside [1," + std::to_string(dim) + "]");
  return static_cast<int>(x) - 1;
}

Matrix matrix_at(const json& v, const std::string& where, int dim) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim)
    parse_fail(where, "expected " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = v[static_cast<std::size_t>(r)];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      parse_fail(rw, "expected " + std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c)
      m(r, c) = number_at(row[static_cast<std::size_t>(c)], rw + "[" + std::to_string(c) + "]");
  }
  return m;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json bracket_json(const SkewTensor& mu) {
  json recs = json::array();
  const int n = mu.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double c = mu(i, j, k);
        if (c != 0.0) recs.push_back(json{{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"coeff", c}});
      }
  return recs;
}

StructureClass class_from_name(const std::string& s, const std::string& where) {
  if (s == "none") return StructureClass::None;
  if (s == "symplectic") return StructureClass::Symplectic;
  if (s == "complex") return StructureClass::Complex;
  if (s == "hypercomplex") return StructureClass::Hypercomplex;
  parse_fail(where, "unknown structure class '" + s + "'");
}

Structure structure_at(const json& v, int dim) {
  if (!v.is_object()) parse_fail("structure", "expected an object");
  if (!v.contains("class") || !v["class"].is_string()) parse_fail("structure.class", "missing or not a string");
  const StructureClass cls = class_from_name(v["class"].get<std::string>(), "structure.class");
  try {
    if (cls == StructureClass::None) return Structure::none(dim);
    if (!v.contains("payload")) parse_fail("structure.payload", "missing");
    const json& p = v["payload"];
    if (p.is_string()) {
      if (p.get<std::string>() != "standard") parse_fail("structure.payload", "only \"standard\" is accepted as a string");
      return standard_structure(cls, dim);
    }
    if (!p.is_object()) parse_fail("structure.payload", "expected \"standard\" or an object of matrices");
    const auto need = [&](const char* key) {
      if (!p.contains(key)) parse_fail(std::string("structure.payload.") + key, "missing");
      return matrix_at(p[key], std::string("structure.payload.") + key, dim);
    };
    switch (cls) {
      case StructureClass::Symplectic: return Structure::symplectic(need("omega"));
      case StructureClass::Complex: return Structure::complex(need("J"));
      case StructureClass::Hypercomplex: return Structure::hypercomplex(need("J1"), need("J2"), need("J3"));
      case StructureClass::None: break;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    parse_fail("structure", e.what());
  }
  return Structure::none(dim);
}

json structure_json(const Structure& s, bool standard) {
  json out{{"class", std::string(to_string(s.kind()))}};
  if (s.kind() == StructureClass::None) return out;
  if (standard) {
    out["payload"] = "standard";
    return out;
  }
  switch (s.kind()) {
    case StructureClass::Symplectic: out["payload"] = json{{"omega", matrix_json(s.omega())}}; break;
    case StructureClass::Complex: out["payload"] = json{{"J", matrix_json(s.j())}}; break;
    case StructureClass::Hypercomplex:
      out["payload"] = json{{"J1", matrix_json(s.js()[0])}, {"J2", matrix_json(s.js()[1])}, {"J3", matrix_json(s.js()[2])}};
      break;
    case StructureClass::None: break;
  }
  return out;
}

bool is_standard(const Structure& s) {
  if (s.kind() == StructureClass::None) return true;
  try {
    const Structure ref = standard_structure(s.kind(), s.dim());
    switch (s.kind()) {
      case StructureClass::Symplectic: return ref.omega() == s.omega();
      case StructureClass::Complex: return ref.j() == s.j();
      case StructureClass::Hypercomplex:
        return ref.js()[0] == s.js()[0] && ref.js()[1] == s.js()[1] && ref.js()[2] == s.js()[2];
      case StructureClass::None: return true;
    }
  } catch (const Error&) {
  }
  return false;
}

json problem_json(const ProblemFile& p) {
  json out{{"format", kFormat}, {"dim", p.dim}, {"bracket", bracket_json(p.bracket)},
           {"structure", structure_json(p.structure, is_standard(p.structure))}};
  if (!p.metric.is_identity()) out["metric"] = matrix_json(p.metric.matrix());
  if (p.options.tol) out["options"] = json{{"tol", *p.options.tol}};
  return out;
}

json header() { return json{{"nilmetric_version", NILMETRIC_VERSION}, {"format", kFormat}}; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double effective_tol(const ProblemFile& p, std::optional<double> flag) {
  if (flag) return *flag;
  if (p.options.tol) return *p.options.tol;
  if (const char* env = std::getenv("NILMETRIC_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
    throw Error(ErrorKind::Parse, std::string("NILMETRIC_TOL: not a positive number: '") + env + "'");
  }
  return kCertifyTol;
}

json certificate_json(const Certificate& c) {
  return json{{"c", c.c}, {"D", matrix_json(c.D)}, {"residual", c.residual},
              {"verdict", std::string(to_string(c.verdict))}, {"tolerance", c.tolerance}};
}

json fingerprint_json(const Fingerprint& f) {
  return json{{"dim", f.dim}, {"eigen_ric", f.eigen_ric}, {"eigen_ric_gamma", f.eigen_ric_gamma},
              {"scal", f.scal}, {"lcs_dims", f.lcs_dims}};
}

void write_csv(const std::string& path, const FlowTrace& tr) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open CSV output '" + path + "'");
  f << "t,scal,F,cert_residual\n" << std::setprecision(17);
  for (const FlowSample& s : tr.samples) f << s.t << ',' << s.scal << ',' << s.F << ',' << s.cert_residual << '\n';
}

json trace_summary(const FlowTrace& tr) {
  json out{{"samples", tr.samples.size()}, {"iterations", tr.iterations}, {"converged", tr.converged},
           {"no_descent", tr.no_descent}};
  if (!tr.samples.empty()) {
    const FlowSample& a = tr.samples.front();
    const FlowSample& b = tr.samples.back();
    out["initial"] = json{{"t", a.t}, {"scal", a.scal}, {"F", a.F}, {"cert_residual", a.cert_residual}};
    out["final"] = json{{"t", b.t}, {"scal", b.scal}, {"F", b.F}, {"cert_residual", b.cert_residual}};
  }
  return out;
}

int cmd_check(const ProblemFile& p, std::optional<double> tol_flag, std::ostream& out) {
  const double tol = effective_tol(p, tol_flag);
  json rep = header();
  rep["command"] = "check";
  const double jac = jacobi_residual(p.bracket);
  const bool jac_ok = satisfies_jacobi(p.bracket);
  rep["jacobi_residual"] = jac;
  rep["jacobi_ok"] = jac_ok;
  const auto dims = lower_central_series_dims(p.bracket);
  rep["lcs_dims"] = dims;
  bool nil_ok = dims.back() == 0;
  if (nil_ok)
    rep["nilpotency_index"] = static_cast<int>(dims.size()) - 1;
  else
    rep["nilpotency_index"] = nullptr;
  const double compat = compatibility_residual(p.structure, p.metric);
  const double compat_rel = compat / (1.0 + p.metric.matrix().norm());
  const double integ = integrability_residual(p.structure, p.bracket);
  const double integ_rel = integrability_relative(p.structure, p.bracket);
  rep["compatibility_residual"] = compat;
  rep["compatibility_ok"] = compat_rel <= tol;
  rep["integrability_residual"] = integ;
  rep["integrability_relative"] = integ_rel;
  rep["integrability_ok"] = integ_rel <= tol;
  const bool pass = jac_ok && nil_ok && compat_rel <= tol && integ_rel <= tol;
  rep["tolerance"] = tol;
  rep["passed"] = pass;
  out << dump(rep);
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_curvature(const ProblemFile& p, std::ostream& out) {
  const CurvatureReport c = curvature_report(p.bracket, p.metric, p.structure);
  json rep = header();
  rep["command"] = "curvature";
  rep["ric"] = matrix_json(c.ric);
  rep["scal"] = c.scal;
  rep["ric_gamma"] = matrix_json(c.ric_gamma);
  rep["moment"] = matrix_json(c.moment);
  rep["F"] = c.F_value;
  rep["eigen_ric"] = c.eigen_ric;
  rep["eigen_ric_gamma"] = c.eigen_ric_gamma;
  out << dump(rep);
  return kExitOk;
}

int cmd_certify(const ProblemFile& p, std::optional<double> tol_flag, std::ostream& out) {
  const Certificate c = certify_minimal(p.bracket, p.metric, p.structure, effective_tol(p, tol_flag));
  json rep = header();
  rep["command"] = "certify";
  rep["certificate"] = certificate_json(c);
  out << dump(rep);
  return c.verdict == Verdict::Minimal ? kExitOk : kExitNotCertified;
}

struct FlowFlags {
  bool normalized = false;
  std::string sign = "minus";
  double horizon = 1.0;
  double step = 1e-3;
  std::string integrator = "rk4";
  std::string csv;
};

int cmd_flow(const ProblemFile& p, const FlowFlags& f, std::ostream& out) {
  FlowConfig cfg;
  cfg.sign = f.sign == "plus" ? FlowSign::Plus : FlowSign::Minus;
  cfg.horizon = f.horizon;
  cfg.step = f.step;
  cfg.integrator = f.integrator == "euler" ? Integrator::Euler : Integrator::RK4;
  const FlowTrace tr = metric_flow(p.bracket, p.structure, p.metric, cfg, f.normalized);
  if (!f.csv.empty()) write_csv(f.csv, tr);
  json rep = header();
  rep["command"] = "flow";
  rep["normalized"] = f.normalized;
  rep["sign"] = f.sign;
  rep["trace"] = trace_summary(tr);
  rep["max_compatibility_residual"] = tr.max_compatibility;
  rep["final_metric"] = matrix_json(tr.final_metric->matrix());
  out << dump(rep);
  return tr.converged ? kExitOk : kExitNotCertified;
}

struct SearchFlags {
  int starts = 8;
  std::uint64_t seed = 1;
  int max_iter = 2000;
  double step = 0.1;
  double perturb = 0.3;
  double tol_converge = 1e-10;
  std::string csv;
};

int cmd_search(const ProblemFile& p, const SearchFlags& f, std::optional<double> tol_flag, std::ostream& out) {
  if (!p.metric.is_identity())
    throw Error(ErrorKind::InvalidArgument, "search runs on brackets at the identity metric; drop the metric field");
  FlowConfig cfg;
  cfg.max_iter = f.max_iter;
  cfg.step = f.step;
  cfg.tol_converge = f.tol_converge;
  const SearchResult res = multistart_search(p.bracket, p.structure, cfg, f.starts, f.seed, f.perturb);
  const Certificate cert =
      certify_minimal(*res.trace.final_bracket, p.metric, p.structure, effective_tol(p, tol_flag));
  if (!f.csv.empty()) write_csv(f.csv, res.trace);
  json rep = header();
  rep["command"] = "search";
  rep["starts"] = f.starts;
  rep["seed"] = f.seed;
  rep["best_start"] = res.best_start;
  rep["best_F"] = res.best_F;
  rep["final_F"] = res.final_F;
  rep["certificate"] = certificate_json(cert);
  rep["trace"] = trace_summary(res.trace);
  rep["bracket"] = bracket_json(*res.trace.final_bracket);
  out << dump(rep);
  return (res.trace.converged && cert.verdict == Verdict::Minimal) ? kExitOk : kExitNotCertified;
}

int cmd_fingerprint(const ProblemFile& p, std::ostream& out) {
  json rep = header();
  rep["command"] = "fingerprint";
  rep["fingerprint"] = fingerprint_json(fingerprint(p.bracket, p.metric, p.structure));
  out << dump(rep);
  return kExitOk;
}

int cmd_distinguish(const ProblemFile& a, const ProblemFile& b, double tol, std::ostream& out) {
  const Fingerprint fa = fingerprint(a.bracket, a.metric, a.structure);
  const Fingerprint fb = fingerprint(b.bracket, b.metric, b.structure);
  json rep = header();
  rep["command"] = "distinguish";
  rep["tolerance"] = tol;
  rep["result"] = std::string(to_string(distinguish(fa, fb, tol)));
  rep["a"] = fingerprint_json(fa);
  rep["b"] = fingerprint_json(fb);
  out << dump(rep);
  return kExitOk;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, double> params;
  for (const std::string& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) parse_fail("param '" + kv + "'", "expected NAME=VALUE");
    const std::string value = kv.substr(eq + 1);
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0' || !std::isfinite(v)) parse_fail("param '" + kv + "'", "value is not a number");
    params[kv.substr(0, eq)] = v;
  }
  return params;
}

int cmd_catalog_get(const std::string& id, const std::vector<std::string>& raw, std::ostream& out) {
  const FamilyPoint fp = catalog_get(id, parse_params(raw));
  ProblemFile p;
  p.dim = fp.bracket.dim();
  p.bracket = fp.bracket;
  p.structure = fp.structure;
  p.metric = fp.metric;
  json rep = problem_json(p);
  json params = json::object();
  for (const auto& [k, v] : fp.params) params[k] = v;
  rep["family"] = fp.family_id;
  rep["params"] = params;
  const Validation& v = fp.validation;
  json val{{"jacobi_residual", v.jacobi}, {"jacobi_ok", v.jacobi_ok}};
  if (v.nilpotency_index)
    val["nilpotency_index"] = *v.nilpotency_index;
  else
    val["nilpotency_index"] = nullptr;
  val["compatibility_residual"] = v.compatibility;
  val["integrability_residual"] = v.integrability;
  if (v.constraint) val["constraint"] = *v.constraint;
  val["valid"] = v.valid;
  rep["validation"] = val;
  out << dump(rep);
  return kExitOk;
}

int report_error(const Error& e, std::ostream& err) {
  json j{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  err << j.dump() << "\n";
  return e.kind() == ErrorKind::Parse ? kExitParse : kExitCheckFailed;
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("document", "expected a JSON object");
  static const std::set<std::string> known{"format", "dim", "bracket", "structure", "metric",
                                           "options", "family", "params", "validation"};
  for (const auto& [key, value] : doc.items())
    if (!known.contains(key)) parse_fail(key, "unknown field");
  if (!doc.contains("format")) parse_fail("format", "missing");
  if (!doc["format"].is_number_integer() || doc["format"].get<int>() != kFormat)
    parse_fail("format", "unsupported format (expected 1)");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) parse_fail("dim", "missing or not an integer");
  const int n = doc["dim"].get<int>();
  if (n < 1 || n > 64) parse_fail("dim", "must be in [1,64]");

  ProblemFile p;
  p.dim = n;
  p.bracket = SkewTensor(n);
  if (!doc.contains("bracket") || !doc["bracket"].is_array()) parse_fail("bracket", "missing or not an array");
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t r = 0; r < doc["bracket"].size(); ++r) {
    const json& rec = doc["bracket"][r];
    const std::string where = "bracket[" + std::to_string(r) + "]";
    if (!rec.is_object()) parse_fail(where, "expected an object {i,j,k,coeff}");
    for (const char* key : {"i", "j", "k", "coeff"})
      if (!rec.contains(key)) parse_fail(where, std::string("missing '") + key + "'");
    const int i = index_at(rec["i"], where + ".i", n);
    const int j = index_at(rec["j"], where + ".j", n);
    const int k = index_at(rec["k"], where + ".k", n);
    if (i >= j) parse_fail(where, "requires i < j (got i=" + std::to_string(i + 1) + ", j=" + std::to_string(j + 1) + ")");
    if (!seen.insert({i, j, k}).second) parse_fail(where, "duplicate record");
    p.bracket.set(i, j, k, number_at(rec["coeff"], where + ".coeff"));
  }
  if (doc.contains("structure"))
    p.structure = structure_at(doc["structure"], n);
  else
    p.structure = Structure::none(n);
  if (doc.contains("metric")) {
    try {
      p.metric = Metric(matrix_at(doc["metric"], "metric", n));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Parse) throw;
      parse_fail("metric", e.what());
    }
  } else {
    p.metric = Metric::identity(n);
  }
  if (doc.contains("options")) {
    const json& o = doc["options"];
    if (!o.is_object()) parse_fail("options", "expected an object");
    for (const auto& [key, value] : o.items()) {
      if (key != "tol") parse_fail("options." + key, "unknown option");
      const double t = number_at(value, "options.tol");
      if (!(t > 0.0)) parse_fail("options.tol", "must be positive");
      p.options.tol = t;
    }
  }
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Parse, path + ": cannot open file");
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_problem(ss.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string dump_problem(const ProblemFile& p) { return dump(problem_json(p)); }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature invariants and minimal compatible metrics on nilpotent Lie algebras", "nilmetric"};
  app.set_version_flag("--version", NILMETRIC_VERSION);
  app.require_subcommand(1);

  std::optional<double> tol;
  std::string file;
  std::string file_b;

  auto* check = app.add_subcommand("check", "Jacobi, nilpotency, compatibility and integrability report");
  check->add_option("file", file, "problem file")->required();
  check->add_option("--tol", tol, "pass/fail tolerance");

  auto* curv = app.add_subcommand("curvature", "Ricci, scal, Ric^gamma, moment map, F and spectra");
  curv->add_option("file", file, "problem file")->required();

  auto* cert = app.add_subcommand("certify", "minimality certificate Ric^gamma = cI + D");
  cert->add_option("file", file, "problem file")->required();
  cert->add_option("--tol", tol, "certificate tolerance");

  FlowFlags ff;
  auto* flow = app.add_subcommand("flow", "invariant Ricci flow on metrics");
  flow->add_option("file", file, "problem file")->required();
  flow->add_flag("--normalized", ff.normalized, "scal-normalized flow");
  flow->add_option("--sign", ff.sign, "sign of the flow")->check(CLI::IsMember({"plus", "minus"}));
  flow->add_option("--horizon", ff.horizon, "final time")->check(CLI::PositiveNumber);
  flow->add_option("--step", ff.step, "initial time step")->check(CLI::PositiveNumber);
  flow->add_option("--integrator", ff.integrator, "rk4 or euler")->check(CLI::IsMember({"rk4", "euler"}));
  flow->add_option("--csv", ff.csv, "write the trace as CSV");

  SearchFlags sf;
  auto* search = app.add_subcommand("search", "multi-start bracket descent of F");
  search->add_option("file", file, "problem file")->required();
  search->add_option("--starts", sf.starts, "number of starts")->check(CLI::PositiveNumber);
  search->add_option("--seed", sf.seed, "random seed");
  search->add_option("--max-iter", sf.max_iter, "iterations per start")->check(CLI::PositiveNumber);
  search->add_option("--step", sf.step, "initial descent step")->check(CLI::PositiveNumber);
  search->add_option("--perturb", sf.perturb, "size of random G_gamma perturbations")->check(CLI::NonNegativeNumber);
  search->add_option("--tol-converge", sf.tol_converge, "stop when ||d||/||mu||^3 is below")->check(CLI::PositiveNumber);
  search->add_option("--csv", sf.csv, "write the best trace as CSV");
  search->add_option("--tol", tol, "certificate tolerance");

  auto* fpr = app.add_subcommand("fingerprint", "spectral fingerprint");
  fpr->add_option("file", file, "problem file")->required();

  double dtol = 1e-6;
  auto* dist = app.add_subcommand("distinguish", "compare fingerprints of two problems");
  dist->add_option("a", file, "first problem file")->required();
  dist->add_option("b", file_b, "second problem file")->required();
  dist->add_option("--tol", dtol, "component tolerance")->check(CLI::PositiveNumber);

  auto* cat = app.add_subcommand("catalog", "named families and standard structures");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "list catalog ids");
  std::string cat_id;
  std::vector<std::string> cat_params;
  auto* cat_get = cat->add_subcommand("get", "export a family point as a problem file");
  cat_get->add_option("id", cat_id, "catalog id")->required();
  cat_get->add_option("params", cat_params, "NAME=VALUE parameters");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << NILMETRIC_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (*check) return cmd_check(load_problem(file), tol, out);
    if (*curv) return cmd_curvature(load_problem(file), out);
    if (*cert) return cmd_certify(load_problem(file), tol, out);
    if (*flow) return cmd_flow(load_problem(file), ff, out);
    if (*search) return cmd_search(load_problem(file), sf, tol, out);
    if (*fpr) return cmd_fingerprint(load_problem(file), out);
    if (*dist) return cmd_distinguish(load_problem(file), load_problem(file_b), dtol, out);
    if (*cat_list) {
      json rep = header();
      rep["ids"] = catalog_ids();
      out << dump(rep);
      return kExitOk;
    }
    if (*cat_get) return cmd_catalog_get(cat_id, cat_params, out);
  } catch (const Error& e) {
    return report_error(e, err);
  }
  return kExitParse;
}

}  // namespace nilmetric
