// contain: containment checks for spectrahedra and polyhedra.
//
// Exit codes: 0 contained / verified / ok, 1 not contained (or certificate
// rejected), 2 inconclusive, 3 usage or input error, 4 numerical failure.
// CONTAIN_TOL overrides the default solver feasibility tolerance.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "contain/certificate.h"
#include "contain/criteria.h"
#include "contain/errors.h"
#include "contain/generators.h"
#include "contain/io.h"
#include "contain/pencil.h"
#include "contain/scaling.h"

using nlohmann::json;
using namespace contain;

namespace {

enum Exit { kOk = 0, kNo = 1, kInconclusive = 2, kUsage = 3, kNumerical = 4 };

struct Globals {
  double tol = 1e-8;
  double cert_tol = kCertificateTol;
  std::uint64_t seed = 0;
  int directions = 256;
  std::string report_path;
  bool verbose = false;
};

CriteriaOptions Options(const Globals& g) {
  CriteriaOptions o;
  o.feas_tol = g.tol;
  o.cert_tol = g.cert_tol;
  o.seed = g.seed;
  o.directions = g.directions;
  if (g.verbose) o.trace = &std::cerr;
  return o;
}

json VecJson(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Body LoadBody(const std::string& path) { return BodyFromJson(ReadFile(path)); }

// Pencil view of a body for the Choi criteria.
LinearPencil AsPencil(const Body& b, const char* role) {
  if (const auto* p = std::get_if<LinearPencil>(&b)) return *p;
  if (const auto* h = std::get_if<HPolyhedron>(&b)) {
    if (!h->IsNormalForm()) {
      throw UsageError(std::string(role) + " polyhedron must be in normal form (offsets 1)");
    }
    return FromHPolyhedron(*h);
  }
  throw UsageError(std::string(role) + ": a V-polytope has no pencil description");
}

HPolyhedron AsNormalH(const Body& b, const char* role) {
  if (const auto* h = std::get_if<HPolyhedron>(&b)) {
    if (h->IsNormalForm()) return *h;
  }
  if (const auto* p = std::get_if<LinearPencil>(&b)) {
    if (auto h = AsHPolyhedron(*p); h && h->IsNormalForm()) return *h;
  }
  throw UsageError(std::string(role) + " must be a normal-form H-polyhedron");
}

json VerdictJson(const ContainmentVerdict& v) {
  json j;
  j["verdict"] = ToString(v.kind);
  j["method"] = v.method;
  j["reason"] = v.reason;
  j["margins"] = v.margins;
  j["iterations"] = v.iterations;
  j["heuristic"] = v.heuristic;
  j["exact_method"] = v.exact_method;
  j["numerical_failure"] = v.numerical_failure;
  j["has_certificate"] = v.certificate.has_value();
  if (v.verify) {
    j["residuals"] = {{"max_equality_residual", v.verify->max_equality_residual},
                      {"min_eig_C", v.verify->min_eig_C},
                      {"min_eig_slacks", v.verify->min_eig_slacks}};
  }
  if (v.witness) j["witness"] = VecJson(*v.witness);
  return j;
}

int VerdictExit(const ContainmentVerdict& v) {
  switch (v.kind) {
    case VerdictKind::kContained:
      return kOk;
    case VerdictKind::kNotContained:
      return kNo;
    case VerdictKind::kInconclusive:
      return v.numerical_failure ? kNumerical : kInconclusive;
  }
  return kInconclusive;
}

int RunCheck(const Globals& g, const std::string& inner_path, const std::string& outer_path,
             const std::string& method, const std::string& cert_path, json* out) {
  const Body inner = LoadBody(inner_path);
  const Body outer = LoadBody(outer_path);
  if (Dimension(inner) != Dimension(outer)) {
    throw DimensionError("inner and outer dimensions differ");
  }
  const CriteriaOptions o = Options(g);
  ContainmentVerdict v;
  if (method == "auto") {
    v = DecideAuto(inner, outer, o);
  } else if (method == "hkm" || method == "hkm-relaxed" || method == "hkm-positive") {
    v = CheckHkm(AsPencil(inner, "inner"), AsPencil(outer, "outer"), ParseVariant(method), o);
  } else if (method == "vertices") {
    const auto* vp = std::get_if<VPolytope>(&inner);
    if (!vp) throw UsageError("--method vertices needs a V-polytope inner body");
    v = CheckVertices(*vp, outer, o);
  } else if (method == "lp") {
    v = CheckHInH(AsNormalH(inner, "inner"), AsNormalH(outer, "outer"), o);
  } else if (method == "facets") {
    v = CheckSInH(AsPencil(inner, "inner"), AsNormalH(outer, "outer"), o);
  } else {
    throw UsageError("unknown method " + method);
  }
  std::string why;
  if (!AuditVerdict(v, inner, outer, &why, g.cert_tol)) {
    throw NumericalFailure("verdict failed its audit: " + why);
  }
  *out = VerdictJson(v);
  if (!cert_path.empty()) {
    if (v.certificate) {
      WriteFile(cert_path, CertificateToJson(*v.certificate));
      (*out)["certificate_path"] = cert_path;
    } else {
      (*out)["certificate_path"] = nullptr;
    }
  }
  return VerdictExit(v);
}

int RunVerify(const Globals& g, const std::string& cert_path, const std::string& inner_path,
              const std::string& outer_path, json* out) {
  const ChoiCertificate c = CertificateFromJson(ReadFile(cert_path));
  const LinearPencil a = AsPencil(LoadBody(inner_path), "inner");
  const LinearPencil b = AsPencil(LoadBody(outer_path), "outer");
  const VerifyReport r = Verify(c, a, b, g.cert_tol);
  (*out)["ok"] = r.ok;
  (*out)["variant"] = ToString(c.variant);
  (*out)["provenance"] = ToString(c.provenance);
  (*out)["residuals"] = {{"max_equality_residual", r.max_equality_residual},
                         {"min_eig_C", r.min_eig_C},
                         {"min_eig_slacks", r.min_eig_slacks}};
  (*out)["message"] = r.message;
  return r.ok ? kOk : kNo;
}

int RunScale(const Globals& g, const std::string& inner_path, const std::string& outer_path,
             const std::string& variant, const std::string& cert_path, json* out) {
  const LinearPencil a = AsPencil(LoadBody(inner_path), "inner");
  const LinearPencil b = AsPencil(LoadBody(outer_path), "outer");
  ScalingResult s;
  try {
    s = MaxScale(a, b, ParseVariant(variant), Options(g));
  } catch (const UnboundedSpectrahedron& e) {
    (*out)["reason"] = e.what();
    return kInconclusive;
  }
  (*out)["nu_star"] = s.nu_star;
  (*out)["variant"] = ToString(s.variant);
  (*out)["confirmed_upper"] = s.confirmed_upper;
  (*out)["iterations"] = s.iterations;
  (*out)["heuristic"] = s.heuristic;
  if (s.verify) {
    (*out)["residuals"] = {{"max_equality_residual", s.verify->max_equality_residual},
                           {"min_eig_C", s.verify->min_eig_C},
                           {"min_eig_slacks", s.verify->min_eig_slacks}};
  }
  if (!cert_path.empty() && s.certificate) {
    WriteFile(cert_path, CertificateToJson(*s.certificate));
    (*out)["certificate_path"] = cert_path;
  }
  return kOk;
}

int RunCircumradius(const Globals& g, const std::string& inner_path, json* out) {
  const LinearPencil a = AsPencil(LoadBody(inner_path), "inner");
  try {
    const CircumradiusResult r = HkmCircumradius(a, Options(g));
    (*out)["radius"] = r.radius;
    (*out)["nu_star"] = r.nu_star;
  } catch (const UnboundedSpectrahedron& e) {
    (*out)["reason"] = e.what();
    return kInconclusive;
  }
  return kOk;
}

int RunSample(const Globals& g, const std::string& pencil_path, int directions, json* out) {
  const LinearPencil p = AsPencil(LoadBody(pencil_path), "pencil");
  std::mt19937_64 rng(g.seed);
  std::normal_distribution<double> gauss;
  json points = json::array();
  int unbounded = 0;
  for (int d = 0; d < directions; ++d) {
    Vector u(p.n());
    for (int i = 0; i < p.n(); ++i) u(i) = gauss(rng);
    u.normalize();
    const double t = BoundaryRay(p, u);
    if (!std::isfinite(t)) {
      ++unbounded;
      continue;
    }
    points.push_back(VecJson(t * u));
  }
  (*out)["directions"] = directions;
  (*out)["unbounded_directions"] = unbounded;
  (*out)["boundary_points"] = points;
  return kOk;
}

std::vector<std::vector<int>> ParseClauses(const std::string& text) {
  std::vector<std::vector<int>> clauses;
  std::stringstream ss(text);
  std::string clause;
  while (std::getline(ss, clause, ';')) {
    std::vector<int> lits;
    std::stringstream cs(clause);
    std::string lit;
    while (std::getline(cs, lit, ',')) {
      try {
        lits.push_back(std::stoi(lit));
      } catch (const std::exception&) {
        throw UsageError("bad literal '" + lit + "'");
      }
    }
    if (!lits.empty()) clauses.push_back(lits);
  }
  return clauses;
}

Sat3Instance RandomSat3(int n, int m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> var(1, n);
  std::bernoulli_distribution sign;
  Sat3Instance phi{n, {}};
  for (int c = 0; c < m; ++c) {
    std::vector<int> clause;
    for (int i = 0; i < 3; ++i) clause.push_back(sign(rng) ? var(rng) : -var(rng));
    phi.clauses.push_back(clause);
  }
  return phi;
}

void Emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << '\n';
  } else {
    WriteFile(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  if (const char* env = std::getenv("CONTAIN_TOL")) {
    try {
      g.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "CONTAIN_TOL is not a number\n";
      return kUsage;
    }
  }

  CLI::App app{"Containment checks for spectrahedra and polyhedra"};
  app.require_subcommand(1);
  app.add_option("--tol", g.tol, "solver feasibility tolerance (default CONTAIN_TOL or 1e-8)");
  app.add_option("--cert-tol", g.cert_tol, "certificate verification tolerance");
  app.add_option("--seed", g.seed, "seed for sampling and generators");
  app.add_option("--report", g.report_path, "write the JSON report here instead of stdout");
  app.add_flag("-v,--verbose", g.verbose, "solver trace on stderr");

  std::string inner, outer, method = "auto", cert, variant = "hkm", pencil;
  int directions = 256;

  auto* check = app.add_subcommand("check", "decide inner in outer");
  check->add_option("--inner", inner)->required();
  check->add_option("--outer", outer)->required();
  check->add_option("--method", method)
      ->check(CLI::IsMember({"auto", "hkm", "hkm-relaxed", "hkm-positive", "vertices", "lp", "facets"}));
  check->add_option("--emit-cert", cert);
  check->add_option("--directions", g.directions, "falsification directions");

  auto* verify = app.add_subcommand("verify", "check a certificate");
  verify->add_option("--cert", cert)->required();
  verify->add_option("--inner", inner)->required();
  verify->add_option("--outer", outer)->required();

  auto* scale = app.add_subcommand("scale", "largest certified scale factor");
  scale->add_option("--inner", inner)->required();
  scale->add_option("--outer", outer)->required();
  scale->add_option("--variant", variant)
      ->check(CLI::IsMember({"hkm", "hkm-relaxed", "hkm-positive", "exact", "relaxed", "positive"}));
  scale->add_option("--emit-cert", cert);

  auto* circ = app.add_subcommand("circumradius", "certified enclosing ball radius");
  circ->add_option("--inner", inner)->required();

  auto* sample = app.add_subcommand("sample", "boundary points along random directions");
  sample->add_option("--pencil", pencil)->required();
  sample->add_option("--directions", directions)->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen", "write test instances");
  gen->require_subcommand(1);
  int n = 2, k = 3, m = 4;
  double r = 1.0;
  std::vector<double> axes;
  std::string out, out_inner, out_outer, clauses;
  bool bounded = false;
  auto* g_cube = gen->add_subcommand("cube");
  g_cube->add_option("--n", n)->required();
  g_cube->add_option("--r", r);
  g_cube->add_option("--out", out);
  auto* g_ball = gen->add_subcommand("ball");
  g_ball->add_option("--n", n)->required();
  g_ball->add_option("--r", r);
  g_ball->add_option("--out", out);
  auto* g_ell = gen->add_subcommand("ellipsoid");
  g_ell->add_option("--axes", axes)->required()->delimiter(',');
  g_ell->add_option("--out", out);
  auto* g_disc = gen->add_subcommand("disc-pair");
  g_disc->add_option("--out-inner", out_inner);
  g_disc->add_option("--out-outer", out_outer);
  auto* g_sat = gen->add_subcommand("sat3");
  g_sat->add_option("--n", n)->required();
  g_sat->add_option("--clauses", clauses, "e.g. \"1,-2,3;-1,2\"");
  g_sat->add_option("--m", m, "random clause count when --clauses is absent");
  g_sat->add_option("--out-inner", out_inner);
  g_sat->add_option("--out-outer", out_outer);
  auto* g_rand = gen->add_subcommand("random");
  g_rand->add_option("--n", n)->required();
  g_rand->add_option("--k", k)->required();
  g_rand->add_flag("--bounded", bounded);
  g_rand->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  json report;
  int code = kOk;
  std::string command;
  try {
    if (*check) {
      command = "check";
      code = RunCheck(g, inner, outer, method, cert, &report);
    } else if (*verify) {
      command = "verify";
      code = RunVerify(g, cert, inner, outer, &report);
    } else if (*scale) {
      command = "scale";
      code = RunScale(g, inner, outer, variant, cert, &report);
    } else if (*circ) {
      command = "circumradius";
      code = RunCircumradius(g, inner, &report);
    } else if (*sample) {
      command = "sample";
      code = RunSample(g, pencil, directions, &report);
    } else {
      command = "gen";
      if (*g_cube) {
        Emit(out, PencilToJson(GenCube(n, r)));
      } else if (*g_ball) {
        Emit(out, PencilToJson(BallPencil(n, r)));
      } else if (*g_ell) {
        Emit(out, PencilToJson(EllipsoidPencil(Eigen::Map<Vector>(axes.data(), static_cast<int>(axes.size())))));
      } else if (*g_disc) {
        const DiscPair d = GenDiscPair();
        Emit(out_inner, PencilToJson(d.a));
        Emit(out_outer, PencilToJson(d.b));
      } else if (*g_sat) {
        const Sat3Instance phi = clauses.empty() ? RandomSat3(n, m, g.seed)
                                                 : Sat3Instance{n, ParseClauses(clauses)};
        const Sat3Reduction red = GenSat3Reduction(phi);
        Emit(out_inner, BodyToJson(red.polytope));
        Emit(out_outer, PencilToJson(red.ball));
        report["radius_sq"] = red.radius_sq;
        report["clauses"] = phi.clauses;
        if (n <= 20) report["satisfiable"] = BruteForceSatisfiable(phi);
        if (n <= 8) report["vertex_containment"] = VertexContainment(red);
      } else if (*g_rand) {
        Emit(out, PencilToJson(GenRandomSpectrahedron(n, k, g.seed, bounded)));
      }
      report["kind"] = gen->get_subcommands().front()->get_name();
    }
  } catch (const NumericalFailure& e) {
    report["error"] = e.what();
    code = kNumerical;
  } catch (const std::exception& e) {
    report["error"] = e.what();
    code = kUsage;
  }
  report["command"] = command;
  report["seed"] = g.seed;
  report["tolerance"] = g.tol;
  report["threads"] = 1;
  report["exit_code"] = code;
  report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string text = report.dump(2);
  if (g.report_path.empty()) {
    // gen writes instances to stdout when no path is given; keep the report on stderr then.
    (command == "gen" ? std::cerr : std::cout) << text << '\n';
  } else {
    try {
      WriteFile(g.report_path, text);
    } catch (const std::exception& e) {
      std::cerr << e.what() << '\n';
      return kUsage;
    }
  }
  return code;
}
