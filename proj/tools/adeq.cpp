// adeq: command-line front end for the ADE fibered threefold library.
//
// Every subcommand reads flags (plus JSON from stdin or a file where noted)
// and writes one JSON document to stdout or --output.  Exit codes: 0 on
// success, 1 on domain errors (reported as {"error": ...}), 2 on malformed
// input.  Identical inputs and seeds produce byte-identical output.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "adeq/dynkin.hpp"
#include "adeq/geometry.hpp"
#include "adeq/json_io.hpp"
#include "adeq/numeric.hpp"
#include "adeq/quiver.hpp"
#include "adeq/rep.hpp"
#include "adeq/solver.hpp"

namespace {

using namespace adeq;

// ---------------------------------------------------------------------------
// Shared flag bundle.  Each subcommand registers only the flags it uses;
// unset sentinels are resolved to per-command defaults at dispatch time.

struct Args {
  std::string type = "A";
  int n = 1;
  std::string t_json;       // eigenvalue polynomials, JSON array
  std::string tau_json;     // vertex weight polynomials, JSON array
  std::string theta_json;   // stability parameter, JSON int list
  std::string lambda_json;  // base point
  std::string point_json;   // chart point (charts/transition)
  std::string probe_json;   // surface point (singular --probe)
  std::string seed_str;     // uint64; env ADEQ_SEED is the fallback
  std::string direction;    // transition: up|down
  std::string form = "hat";  // quiver: mckay|double|hat
  std::string input = "-";  // representation input path, "-" = stdin
  std::string output;       // result path, empty = stdout
  int samples = -1;
  int k = -1;
  int max_iter = 2000;
  double tol = -1.0;
  double target = 1e-8;
  bool fd_check = false;
};

// ---------------------------------------------------------------------------
// Input plumbing.

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_stdin() {
  return std::string(std::istreambuf_iterator<char>(std::cin),
                     std::istreambuf_iterator<char>());
}

// A flag value is inline JSON, "@path" for a file, or "-" for stdin.
Json load_json_arg(const std::string& arg) {
  if (arg == "-") return Json::parse(read_stdin());
  if (!arg.empty() && arg.front() == '@') return Json::parse(read_file(arg.substr(1)));
  return Json::parse(arg);
}

// An input path is a file name or "-" for stdin.
Json load_json_input(const std::string& path) {
  return Json::parse(path == "-" ? read_stdin() : read_file(path));
}

void emit(const Json& out, const std::string& output_path) {
  std::string text = out.dump(2);
  text.push_back('\n');
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(output_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write '" + output_path + "'");
  f << text;
}

std::uint64_t parse_seed(const std::string& s) {
  std::size_t used = 0;
  try {
    std::uint64_t v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("seed '" + s + "' is not an unsigned integer");
}

std::uint64_t resolve_seed(const Args& a) {
  if (!a.seed_str.empty()) return parse_seed(a.seed_str);
  if (const char* env = std::getenv("ADEQ_SEED")) return parse_seed(env);
  return 0;
}

FibrationData make_fibration(const Args& a) {
  if (a.t_json.empty() == a.tau_json.empty())
    throw std::invalid_argument("provide exactly one of --t (eigenvalues) or --tau (vertex weights)");
  Json j;
  j["type"] = a.type;
  j["n"] = a.n;
  if (!a.t_json.empty())
    j["t"] = load_json_arg(a.t_json);
  else
    j["tau"] = load_json_arg(a.tau_json);
  return fibration_from_json(j);
}

QC lambda_exact(const Args& a, const QC& fallback) {
  if (a.lambda_json.empty()) return fallback;
  return qc_from_json(load_json_arg(a.lambda_json));
}

CD lambda_float(const Args& a, CD fallback) {
  if (a.lambda_json.empty()) return fallback;
  Json j = load_json_arg(a.lambda_json);
  try {
    return cd_from_json(j);
  } catch (const std::invalid_argument&) {
    return qc_from_json(j).to_cd();
  }
}

StabilityParam theta_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("--theta must be a JSON integer list");
  StabilityParam theta;
  for (const Json& v : j) {
    if (!v.is_number_integer()) throw std::invalid_argument("--theta entries must be integers");
    theta.push_back(v.get<int>());
  }
  return theta;
}

// Default stability parameter (-n, 1, ..., 1) over the n+1 cyclic vertices.
StabilityParam default_theta(int n) {
  StabilityParam theta(static_cast<std::size_t>(n) + 1, 1);
  theta[0] = -n;
  return theta;
}

int parse_direction(const std::string& s) {
  if (s == "up" || s == "+1" || s == "1") return 1;
  if (s == "down" || s == "-1") return -1;
  throw std::invalid_argument("--direction must be 'up' or 'down'");
}

bool close_cd(CD a, CD b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

ParsedChartPoint chart_point_from_flag(const Json& j, int k_flag) {
  if (j.is_array()) {
    if (j.size() != 3)
      throw std::invalid_argument("a bare chart point must be [c1, c2, lambda]");
    if (k_flag < 0)
      throw std::invalid_argument("--k is required with a bare coordinate array");
    Json obj;
    obj["k"] = k_flag;
    obj["coords"] = j;
    try {
      obj["field"] = "exact";
      return chart_point_from_json(obj);
    } catch (const std::invalid_argument&) {
      obj["field"] = "float";
      return chart_point_from_json(obj);
    }
  }
  ParsedChartPoint c = chart_point_from_json(j);
  int have = c.exact ? c.exact->k : c.floating->k;
  if (k_flag >= 0 && k_flag != have)
    throw std::invalid_argument("--k disagrees with the chart index in the point");
  return c;
}

SurfacePointC surface_point_float_from_flag(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 4)
      throw std::invalid_argument("a bare surface point must be [x, y, z, lambda]");
    auto scalar = [](const Json& v) {
      try {
        return cd_from_json(v);
      } catch (const std::invalid_argument&) {
        return qc_from_json(v).to_cd();
      }
    };
    return SurfacePointC{scalar(j[0]), scalar(j[1]), scalar(j[2]), scalar(j[3])};
  }
  ParsedSurfacePoint p = surface_point_from_json(j);
  return p.exact ? to_float(*p.exact) : *p.floating;
}

// ---------------------------------------------------------------------------
// Subcommand handlers.  Each returns the process exit code.

int cmd_quiver(const Args& a) {
  DynkinType type = parse_type(a.type, a.n);
  Quiver q;
  if (a.form == "mckay")
    q = mckay_quiver(type);
  else if (a.form == "double")
    q = double_quiver(mckay_quiver(type));
  else if (a.form == "hat")
    q = hatted_quiver(type);
  else
    throw std::invalid_argument("--form must be mckay, double, or hat");
  emit(quiver_to_json(q), a.output);
  return 0;
}

int cmd_tau(const Args& a) {
  FibrationData f = make_fibration(a);
  FibrationData out;
  out.type = f.type;
  out.form = FibrationData::Form::VertexWeights;
  out.polys = tau_coords(f);
  emit(fibration_to_json(out), a.output);
  return 0;
}

int cmd_check_rep(const Args& a) {
  FibrationData f = make_fibration(a);
  TauPolys tau = tau_from_fibration(f);
  Quiver q = hatted_quiver(f.type);
  ParsedRepresentation pr = representation_from_json(load_json_input(a.input), q);

  Json out;
  if (pr.exact) {
    const Representation<QC>& v = *pr.exact;
    double tol = a.tol < 0 ? 0.0 : a.tol;
    ResidualReport report = relation_residual(v, tau);
    bool valid = is_representation(v, tau, tol);
    out["field"] = "exact";
    out["valid"] = valid;
    out["report"] = residual_report_to_json(report);
    if (valid) {
      out["trace_identity"] = qc_to_json(trace_identity(v, tau, tol));
      std::optional<QC> loop = scalar_loop_lambda(v, 0.0);
      out["scalar_loop"] = loop ? qc_to_json(*loop) : Json(nullptr);
    }
  } else {
    const Representation<CD>& v = *pr.floating;
    double tol = a.tol < 0 ? default_tolerance(v) : a.tol;
    ResidualReport report = relation_residual(v, tau);
    bool valid = is_representation(v, tau, tol);
    out["field"] = "float";
    out["valid"] = valid;
    out["tolerance"] = tol;
    out["report"] = residual_report_to_json(report);
    if (valid) {
      out["trace_identity"] = cd_to_json(trace_identity(v, tau, tol));
      std::optional<CD> loop = scalar_loop_lambda(v, tol);
      out["scalar_loop"] = loop ? cd_to_json(*loop) : Json(nullptr);
    }
  }
  emit(out, a.output);
  return 0;
}

int cmd_sample(const Args& a) {
  FibrationData f = make_fibration(a);
  int count = a.samples < 0 ? 1 : a.samples;
  if (count < 1) throw std::invalid_argument("--samples must be at least 1");
  QC lambda = lambda_exact(a, QC(0));
  SampleBatch batch = random_valid_sample(f, lambda, count, resolve_seed(a));

  Json out;
  out["count"] = count;
  if (f.type.family == Family::A) {
    out["field"] = "exact";
    out["simple_fraction"] =
        batch.simple_fraction >= 0 ? Json(batch.simple_fraction) : Json(nullptr);
    Json samples = Json::array();
    for (const Representation<QC>& v : batch.exact) samples.push_back(representation_to_json(v));
    out["samples"] = std::move(samples);
  } else {
    out["field"] = "float";
    Json samples = Json::array();
    for (const SolveResult& r : batch.numeric) samples.push_back(solve_result_to_json(r));
    out["samples"] = std::move(samples);
  }
  emit(out, a.output);
  return 0;
}

int cmd_equation(const Args& a) {
  emit(equation_to_json(threefold_equation(make_fibration(a))), a.output);
  return 0;
}

int cmd_singular(const Args& a) {
  FibrationData f = make_fibration(a);
  Json out = singular_locus_to_json(singular_points(f));
  if (!a.probe_json.empty()) {
    SurfacePointC p = surface_point_float_from_flag(load_json_arg(a.probe_json));
    int samples = a.samples < 0 ? 64 : a.samples;
    if (samples < 1) throw std::invalid_argument("--samples must be at least 1");
    out["probe"] = probe_to_json(fiber_probe(p, f, samples, resolve_seed(a)));
  }
  emit(out, a.output);
  return 0;
}

int cmd_charts(const Args& a) {
  FibrationData f = make_fibration(a);
  int n = f.type.rank;
  Json out;
  if (!a.point_json.empty()) {
    ParsedChartPoint c = chart_point_from_flag(load_json_arg(a.point_json), a.k);
    ThreefoldEquation eq = threefold_equation(f);
    if (c.exact) {
      SurfacePointQ image = chart_point(*c.exact, f);
      double residual = hypersurface_residual(image, eq);
      out["field"] = "exact";
      out["surface_point"] = surface_point_to_json(image);
      out["residual"] = residual;
      out["on_threefold"] = residual == 0.0;
    } else {
      SurfacePointC image = chart_point(*c.floating, f);
      double residual = hypersurface_residual(image, eq);
      double tol = a.tol < 0 ? 1e-9 : a.tol;
      out["field"] = "float";
      out["surface_point"] = surface_point_to_json(image);
      out["residual"] = residual;
      out["on_threefold"] = residual <= tol;
    }
  } else {
    Json identities;
    bool all = true;
    int lo = a.k < 0 ? 0 : a.k;
    int hi = a.k < 0 ? n : a.k;
    if (lo < 0 || hi > n) throw std::invalid_argument("--k must lie in 0..n");
    for (int k = lo; k <= hi; ++k) {
      bool pass = chart_identity_check(k, f);
      identities[std::to_string(k)] = pass;
      all = all && pass;
    }
    out["n"] = n;
    out["identities"] = std::move(identities);
    out["all_hold"] = all;
    out["semi_invariants"] = semi_invariants_to_json(semi_invariants_type_a(n));
  }
  emit(out, a.output);
  return 0;
}

int cmd_transition(const Args& a) {
  FibrationData f = make_fibration(a);
  int n = f.type.rank;
  Json out;
  if (!a.point_json.empty()) {
    int dir = parse_direction(a.direction.empty() ? "up" : a.direction);
    ParsedChartPoint c = chart_point_from_flag(load_json_arg(a.point_json), a.k);
    if (c.exact) {
      ChartPointQ src = *c.exact;
      ChartPointQ dst = chart_transition(src, f, dir);
      ChartPointQ back = chart_transition(dst, f, -dir);
      SurfacePointQ si = chart_point(src, f);
      SurfacePointQ di = chart_point(dst, f);
      bool image_ok = (si.x - di.x).is_zero() && (si.y - di.y).is_zero() &&
                      (si.z - di.z).is_zero() && (si.lambda - di.lambda).is_zero();
      bool involutive = back.k == src.k && (back.c1 - src.c1).is_zero() &&
                        (back.c2 - src.c2).is_zero() && (back.lambda - src.lambda).is_zero();
      out["field"] = "exact";
      out["from"] = src.k;
      out["direction"] = dir > 0 ? "up" : "down";
      out["result"] = chart_point_to_json(dst);
      out["image_preserved"] = image_ok;
      out["involutive"] = involutive;
    } else {
      double tol = a.tol < 0 ? 1e-9 : a.tol;
      ChartPointC src = *c.floating;
      ChartPointC dst = chart_transition(src, f, dir);
      ChartPointC back = chart_transition(dst, f, -dir);
      SurfacePointC si = chart_point(src, f);
      SurfacePointC di = chart_point(dst, f);
      bool image_ok = close_cd(si.x, di.x, tol) && close_cd(si.y, di.y, tol) &&
                      close_cd(si.z, di.z, tol) && close_cd(si.lambda, di.lambda, tol);
      bool involutive = back.k == src.k && close_cd(back.c1, src.c1, tol) &&
                        close_cd(back.c2, src.c2, tol) && close_cd(back.lambda, src.lambda, tol);
      out["field"] = "float";
      out["from"] = src.k;
      out["direction"] = dir > 0 ? "up" : "down";
      out["result"] = chart_point_to_json(dst);
      out["image_preserved"] = image_ok;
      out["involutive"] = involutive;
    }
  } else {
    Json identities;
    bool all = true;
    auto run = [&](int k, int dir) {
      bool pass = transition_identity_check(k, dir, f);
      identities[std::to_string(k) + (dir > 0 ? ":up" : ":down")] = pass;
      all = all && pass;
    };
    int dir = a.direction.empty() ? 0 : parse_direction(a.direction);
    int lo = a.k < 0 ? 0 : a.k;
    int hi = a.k < 0 ? n : a.k;
    if (lo < 0 || hi > n) throw std::invalid_argument("--k must lie in 0..n");
    for (int k = lo; k <= hi; ++k) {
      if (k < n && dir >= 0) run(k, +1);
      if (k > 0 && dir <= 0) run(k, -1);
    }
    out["n"] = n;
    out["identities"] = std::move(identities);
    out["all_hold"] = all;
  }
  emit(out, a.output);
  return 0;
}

int cmd_stability(const Args& a) {
  DynkinType type = parse_type(a.type, a.n);
  Quiver q = hatted_quiver(type);
  ParsedRepresentation pr = representation_from_json(load_json_input(a.input), q);
  StabilityParam theta;
  if (!a.theta_json.empty())
    theta = theta_from_json(load_json_arg(a.theta_json));
  else if (type.family == Family::A)
    theta = default_theta(type.rank);
  else
    throw std::invalid_argument("--theta is required outside the cyclic family");

  StabilityVerdict verdict;
  if (pr.exact) {
    verdict = theta_stability(*pr.exact, theta, 0.0);
  } else {
    double tol = a.tol < 0 ? default_tolerance(*pr.floating) : a.tol;
    verdict = theta_stability(*pr.floating, theta, tol);
  }
  Json out = stability_to_json(verdict);
  out["theta"] = theta;
  emit(out, a.output);
  return 0;
}

int cmd_genericity(const Args& a) {
  emit(genericity_to_json(genericity_check(make_fibration(a))), a.output);
  return 0;
}

int cmd_solve(const Args& a) {
  FibrationData f = make_fibration(a);
  TauPolys tau = tau_coords(f);
  CD lambda = lambda_float(a, CD(0.0, 0.0));
  SolveOptions so;
  so.max_iterations = a.max_iter;
  so.residual_target = a.target;
  so.seed = resolve_seed(a);
  SolveResult r = solve_moment_map(f.type, tau, lambda, so);
  Json out = solve_result_to_json(r);
  if (a.fd_check) out["gradient_fd_check"] = gradient_fd_check(f.type, tau, lambda, so.seed, 1e-6);
  emit(out, a.output);
  return 0;
}

// ---------------------------------------------------------------------------
// verify-all: one command reproducing the library's computational claims for
// a given fibration.  Reports one JSON object with per-suite verdicts.

// Shift the eigenvalues by their mean so that sum_j t_j = 0; the vertex
// weights tau_i = t_i - t_{i+1} are unchanged by this.
FibrationData centered_fibration(const FibrationData& f, bool* recentered) {
  std::vector<Poly> t = eigenvalue_coords(f);
  int m = static_cast<int>(t.size());
  std::vector<QC> avg_coeffs;
  int deg = -1;
  for (const Poly& p : t) deg = std::max(deg, p.degree());
  for (int k = 0; k <= deg; ++k) {
    QC sum(0);
    for (const Poly& p : t) sum += p.coeff(k);
    avg_coeffs.push_back(sum / QC(m));
  }
  Poly avg{std::vector<QC>(avg_coeffs)};
  *recentered = !(deg < 0 || avg.degree() < 0);
  FibrationData out;
  out.type = f.type;
  out.form = FibrationData::Form::Eigenvalues;
  for (const Poly& p : t) out.polys.push_back(p - avg);
  validate_fibration(out);
  return out;
}

int cmd_verify_all(const Args& a) {
  FibrationData f = make_fibration(a);
  std::uint64_t seed = resolve_seed(a);

  Json out;
  out["type"] = a.type;
  out["n"] = f.type.rank;
  GenericityReport gr = genericity_check(f);
  out["generic"] = gr.generic;
  out["genericity"] = genericity_to_json(gr);

  Json suites;
  bool ok = true;
  auto record = [&](const char* name, Json detail, bool pass) {
    detail["pass"] = pass;
    suites[name] = std::move(detail);
    ok = ok && pass;
  };

  if (f.type.family == Family::A) {
    int n = f.type.rank;
    int count = a.samples < 0 ? 50 : a.samples;
    if (count < 1) throw std::invalid_argument("--samples must be at least 1");

    bool recentered = false;
    FibrationData fc = centered_fibration(f, &recentered);
    ThreefoldEquation eq_user = threefold_equation(f);
    ThreefoldEquation eq = threefold_equation(fc);
    TauPolys tau = tau_from_fibration(fc);
    std::vector<Poly> t = eigenvalue_coords(fc);
    int m = n + 1;
    DimVector delta = marks(f.type);
    StabilityParam theta =
        a.theta_json.empty() ? default_theta(n) : theta_from_json(load_json_arg(a.theta_json));

    record("equation", Json{{"monomials", eq_user.poly.term_count()}}, true);

    std::optional<QC> fixed_lambda;
    if (!a.lambda_json.empty()) fixed_lambda = lambda_exact(a, QC(0));
    Rng rng(seed);
    int valid = 0, zero_residual = 0, products_match = 0;
    int trace_zero = 0, central_zero = 0;
    int simple = 0, stable = 0, agreements = 0;
    for (int s = 0; s < count; ++s) {
      ConstructOptions co;
      co.lambda = fixed_lambda ? *fixed_lambda : rng.next_qc();
      co.z_value = rng.next_qc();
      co.seed = rng.next_u64();
      Representation<QC> v = construct_type_a(fc, co);
      if (is_representation(v, tau, 0.0)) ++valid;

      SurfacePointQ p = invariants_type_a(v, fc);
      if (residual_value(p, eq).is_zero()) ++zero_residual;
      std::vector<QC> z = vertex_cycle_products(v);
      bool zi_ok = true;
      for (int i = 0; i < m; ++i) {
        QC expect = p.z + t[static_cast<std::size_t>((i + 1) % m)].eval(co.lambda);
        if (!(z[static_cast<std::size_t>(i)] - expect).is_zero()) zi_ok = false;
      }
      if (zi_ok) ++products_match;

      if (trace_identity(v, tau, 0.0).is_zero()) ++trace_zero;
      if (central_constraint(delta, tau, co.lambda).is_zero()) ++central_zero;

      bool is_simple = is_simple_burnside(v);
      StabilityVerdict sv = theta_stability(v, theta, 0.0);
      bool is_stable = sv.status == StabilityVerdict::Status::Stable;
      if (is_simple) ++simple;
      if (is_stable) ++stable;
      if (is_simple == is_stable) ++agreements;
    }
    record("sampling", Json{{"samples", count}, {"valid", valid}}, valid == count);
    record("hypersurface",
           Json{{"recentered", recentered},
                {"zero_residuals", zero_residual},
                {"vertex_products_match", products_match}},
           zero_residual == count && products_match == count);
    record("trace_central", Json{{"trace_zero", trace_zero}, {"central_zero", central_zero}},
           trace_zero == count && central_zero == count);
    record("stability",
           Json{{"theta", theta}, {"simple", simple}, {"stable", stable}, {"agreements", agreements}},
           agreements == count);

    Json chart_ids;
    bool charts_ok = true;
    for (int k = 0; k <= n; ++k) {
      bool pass = chart_identity_check(k, f);
      chart_ids[std::to_string(k)] = pass;
      charts_ok = charts_ok && pass;
    }
    record("charts", Json{{"identities", std::move(chart_ids)}}, charts_ok);

    Json trans_ids;
    bool trans_ok = true;
    for (int k = 0; k <= n; ++k) {
      if (k < n) {
        bool pass = transition_identity_check(k, +1, f);
        trans_ids[std::to_string(k) + ":up"] = pass;
        trans_ok = trans_ok && pass;
      }
      if (k > 0) {
        bool pass = transition_identity_check(k, -1, f);
        trans_ids[std::to_string(k) + ":down"] = pass;
        trans_ok = trans_ok && pass;
      }
    }
    record("transitions", Json{{"identities", std::move(trans_ids)}}, trans_ok);
  } else {
    // Types D and E: numeric moment-map solves at a base point satisfying the
    // central constraint, plus residual/trace checks within tolerance.
    int attempts = a.samples < 0 ? 5 : a.samples;
    if (attempts < 1) throw std::invalid_argument("--samples must be at least 1");
    TauPolys tau = tau_coords(f);
    DimVector delta = marks(f.type);

    // sum_i delta_i tau_i as one polynomial in lambda.
    int deg = -1;
    for (const Poly& p : tau) deg = std::max(deg, p.degree());
    std::vector<QC> combo_coeffs(static_cast<std::size_t>(std::max(deg, 0)) + 1, QC(0));
    for (std::size_t i = 0; i < tau.size(); ++i)
      for (int k = 0; k <= tau[i].degree(); ++k)
        combo_coeffs[static_cast<std::size_t>(k)] += QC(delta[i]) * tau[i].coeff(k);
    Poly combo{std::vector<QC>(combo_coeffs)};

    CD lambda;
    bool lambda_found = true;
    if (!a.lambda_json.empty()) {
      lambda = lambda_float(a, CD(0.0, 0.0));
    } else if (combo.degree() < 0) {
      lambda = CD(0.0, 0.0);  // constraint holds identically
    } else {
      std::vector<PolyRoot> roots = roots_with_exactness(combo);
      if (roots.empty())
        lambda_found = false;
      else
        lambda = roots.front().approx;
    }

    if (!lambda_found) {
      record("solver", Json{{"message", "the central constraint has no solution in lambda"}},
             false);
    } else {
      Rng rng(seed);
      int converged = 0;
      double worst_residual = 0.0, worst_trace = 0.0, worst_central = 0.0;
      double tol = a.tol < 0 ? 1e-6 : a.tol;
      for (int s = 0; s < attempts; ++s) {
        SolveOptions so;
        so.max_iterations = a.max_iter;
        so.residual_target = a.target;
        so.seed = rng.next_u64();
        SolveResult r = solve_moment_map(f.type, tau, lambda, so);
        if (r.converged) ++converged;
        worst_residual = std::max(worst_residual, r.residual);
        if (r.converged) {
          worst_trace = std::max(worst_trace, std::abs(trace_identity(r.rep, tau, tol)));
          worst_central =
              std::max(worst_central, std::abs(central_constraint(delta, tau, lambda)));
        }
      }
      double grad = gradient_fd_check(f.type, tau, lambda, seed, 1e-6);
      bool solver_ok = converged * 10 >= attempts * 9 && grad < 1e-5;
      record("solver",
             Json{{"attempts", attempts},
                  {"converged", converged},
                  {"lambda", cd_to_json(lambda)},
                  {"worst_residual", worst_residual},
                  {"gradient_fd_check", grad}},
             solver_ok);
      record("trace_central",
             Json{{"worst_trace", worst_trace}, {"worst_central", worst_central}},
             worst_trace <= tol && worst_central <= tol);
    }
  }

  out["suites"] = std::move(suites);
  out["ok"] = ok;
  if (!ok) out["error"] = "verification failed";
  emit(out, a.output);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ADE fibered threefolds from quiver algebra data"};
  app.require_subcommand(1);
  Args a;

  auto add_type = [&](CLI::App* sub) {
    sub->add_option("--type", a.type, "Dynkin family letter: A, D, or E")->capture_default_str();
    sub->add_option("--n", a.n, "rank of the finite diagram")->capture_default_str();
  };
  auto add_fibration = [&](CLI::App* sub) {
    add_type(sub);
    sub->add_option("--t", a.t_json,
                    "eigenvalue polynomials t_0..t_n as a JSON array of ascending "
                    "coefficient lists (inline, @file, or - for stdin)");
    sub->add_option("--tau", a.tau_json, "vertex weight polynomials, same encoding as --t");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", a.output, "write the result JSON to this file instead of stdout");
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", a.seed_str, "RNG seed (fallback: env ADEQ_SEED, then 0)");
  };

  CLI::App* quiver = app.add_subcommand("quiver", "print a cyclic/extended quiver as JSON");
  add_type(quiver);
  quiver->add_option("--form", a.form, "mckay, double, or hat")->capture_default_str();
  add_output(quiver);

  CLI::App* tau = app.add_subcommand("tau", "vertex weights tau_i of a fibration");
  add_fibration(tau);
  add_output(tau);

  CLI::App* check = app.add_subcommand("check-rep", "validate a representation against the relations");
  add_fibration(check);
  check->add_option("input", a.input, "representation JSON path, - for stdin")
      ->capture_default_str();
  check->add_option("--tol", a.tol, "residual tolerance (float inputs; default scale-aware)");
  add_output(check);

  CLI::App* sample = app.add_subcommand("sample", "draw random valid representations");
  add_fibration(sample);
  sample->add_option("--lambda", a.lambda_json, "base point (exact rational encoding)");
  sample->add_option("--samples", a.samples, "number of samples (default 1)");
  add_seed(sample);
  add_output(sample);

  CLI::App* equation = app.add_subcommand("equation", "defining polynomial of the threefold");
  add_fibration(equation);
  add_output(equation);

  CLI::App* singular = app.add_subcommand("singular", "singular points of the threefold");
  add_fibration(singular);
  singular->add_option("--probe", a.probe_json,
                       "surface point [x,y,z,lambda] to probe for preimage dimension");
  singular->add_option("--samples", a.samples, "probe sample count (default 64)");
  add_seed(singular);
  add_output(singular);

  CLI::App* charts = app.add_subcommand("charts", "resolution charts: identities or a point image");
  add_fibration(charts);
  charts->add_option("--point", a.point_json, "chart point {k,coords} or bare [c1,c2,lambda]");
  charts->add_option("--k", a.k, "restrict to one chart index");
  charts->add_option("--tol", a.tol, "float on-threefold tolerance (default 1e-9)");
  add_output(charts);

  CLI::App* transition = app.add_subcommand("transition", "chart-to-chart coordinate change");
  add_fibration(transition);
  transition->add_option("--k", a.k, "source chart index");
  transition->add_option("--direction", a.direction, "up (k -> k+1) or down (k -> k-1)");
  transition->add_option("--point", a.point_json, "chart point to map (else: symbolic check)");
  transition->add_option("--tol", a.tol, "float comparison tolerance (default 1e-9)");
  add_output(transition);

  CLI::App* stability = app.add_subcommand("stability", "theta-stability of a representation");
  add_type(stability);
  stability->add_option("input", a.input, "representation JSON path, - for stdin")
      ->capture_default_str();
  stability->add_option("--theta", a.theta_json,
                        "stability parameter as a JSON int list (default (-n,1,...,1) for type A)");
  stability->add_option("--tol", a.tol, "float zero-test tolerance");
  add_output(stability);

  CLI::App* genericity = app.add_subcommand("genericity", "root-pairing genericity report");
  add_fibration(genericity);
  add_output(genericity);

  CLI::App* solve = app.add_subcommand("solve", "least-squares moment-map solve");
  add_fibration(solve);
  solve->add_option("--lambda", a.lambda_json, "base point (float or exact encoding)");
  solve->add_option("--max-iter", a.max_iter, "iteration cap")->capture_default_str();
  solve->add_option("--target", a.target, "residual target")->capture_default_str();
  solve->add_flag("--fd-check", a.fd_check, "also report a finite-difference gradient check");
  add_seed(solve);
  add_output(solve);

  CLI::App* verify = app.add_subcommand("verify-all", "run every verification suite end to end");
  add_fibration(verify);
  verify->add_option("--lambda", a.lambda_json, "fix the sample base point (default: random)");
  verify->add_option("--theta", a.theta_json, "stability parameter override");
  verify->add_option("--samples", a.samples, "sample count (default 50; 5 for solver suites)");
  verify->add_option("--tol", a.tol, "numeric tolerance for solver-based suites");
  verify->add_option("--max-iter", a.max_iter, "solver iteration cap")->capture_default_str();
  verify->add_option("--target", a.target, "solver residual target")->capture_default_str();
  add_seed(verify);
  add_output(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(quiver)) return cmd_quiver(a);
    if (app.got_subcommand(tau)) return cmd_tau(a);
    if (app.got_subcommand(check)) return cmd_check_rep(a);
    if (app.got_subcommand(sample)) return cmd_sample(a);
    if (app.got_subcommand(equation)) return cmd_equation(a);
    if (app.got_subcommand(singular)) return cmd_singular(a);
    if (app.got_subcommand(charts)) return cmd_charts(a);
    if (app.got_subcommand(transition)) return cmd_transition(a);
    if (app.got_subcommand(stability)) return cmd_stability(a);
    if (app.got_subcommand(genericity)) return cmd_genericity(a);
    if (app.got_subcommand(solve)) return cmd_solve(a);
    if (app.got_subcommand(verify)) return cmd_verify_all(a);
    std::cout << Json{{"error", "no subcommand"}}.dump(2) << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    return 1;
  }
}
