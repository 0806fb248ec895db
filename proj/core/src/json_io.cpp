#include "adeq/json_io.hpp"

#include <algorithm>
#include <limits>

namespace adeq {

namespace {

Json int_or_string(const BigInt& v) {
  static const BigInt lo(std::numeric_limits<std::int64_t>::min());
  static const BigInt hi(std::numeric_limits<std::int64_t>::max());
  if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
  return v.str();
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
      throw std::invalid_argument("'" + j.get<std::string>() + "' is not an integer");
    }
  }
  throw std::invalid_argument("expected an integer or an integer string, got " + j.dump());
}

Rat rat_from_parts(const BigInt& num, const BigInt& den) {
  if (den.is_zero()) throw std::invalid_argument("zero denominator in rational value");
  return Rat(num, den);
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) throw std::invalid_argument("expected an object with key '" + std::string(key) + "'");
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument("missing key '" + std::string(key) + "'");
  return *it;
}

int int_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw std::invalid_argument(std::string(what) + " must be an integer");
  return j.get<int>();
}

double double_from_json(const Json& j, const char* what) {
  if (!j.is_number()) throw std::invalid_argument(std::string(what) + " must be a number");
  return j.get<double>();
}

std::string kind_name(ArrowKind k) {
  switch (k) {
    case ArrowKind::Plain: return "plain";
    case ArrowKind::Star: return "star";
    case ArrowKind::Loop: return "loop";
  }
  return "plain";
}

ArrowKind kind_from_name(const std::string& s) {
  if (s == "plain") return ArrowKind::Plain;
  if (s == "star") return ArrowKind::Star;
  if (s == "loop") return ArrowKind::Loop;
  throw std::invalid_argument("unknown arrow kind '" + s + "'");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::D: return "D";
    case Family::E: return "E";
  }
  return "A";
}

}  // namespace

Json qc_to_json(const QC& v) {
  return Json::array({int_or_string(numerator(v.re)), int_or_string(denominator(v.re)),
                      int_or_string(numerator(v.im)), int_or_string(denominator(v.im))});
}

QC qc_from_json(const Json& j) {
  if (j.is_number_integer()) return QC(Rat(BigInt(j.get<std::int64_t>())), Rat(0));
  if (j.is_string()) {
    try {
      return QC(Rat(j.get<std::string>()), Rat(0));
    } catch (const std::exception&) {
      throw std::invalid_argument("'" + j.get<std::string>() + "' is not a rational value");
    }
  }
  if (j.is_array()) {
    if (j.size() == 2)
      return QC(rat_from_parts(bigint_from_json(j[0]), bigint_from_json(j[1])), Rat(0));
    if (j.size() == 4)
      return QC(rat_from_parts(bigint_from_json(j[0]), bigint_from_json(j[1])),
                rat_from_parts(bigint_from_json(j[2]), bigint_from_json(j[3])));
    throw std::invalid_argument("a coefficient array must have 2 or 4 entries, got " +
                                std::to_string(j.size()));
  }
  throw std::invalid_argument("cannot read an exact value from " + j.dump());
}

Json cd_to_json(CD v) { return Json::array({v.real(), v.imag()}); }

CD cd_from_json(const Json& j) {
  if (j.is_number()) return CD(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return CD(double_from_json(j[0], "real part"), double_from_json(j[1], "imaginary part"));
  throw std::invalid_argument("cannot read a float value from " + j.dump());
}

Json poly_to_json(const Poly& p) {
  Json out = Json::array();
  for (int k = 0; k <= std::max(0, p.degree()); ++k) out.push_back(qc_to_json(p.coeff(k)));
  return out;
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("a polynomial must be a coefficient array");
  std::vector<QC> coeffs;
  for (const Json& c : j) coeffs.push_back(qc_from_json(c));
  return Poly(std::move(coeffs));
}

Json fibration_to_json(const FibrationData& f) {
  Json out;
  out["type"] = family_name(f.type.family);
  out["n"] = f.type.rank;
  Json polys = Json::array();
  for (const Poly& p : f.polys) polys.push_back(poly_to_json(p));
  out[f.form == FibrationData::Form::Eigenvalues ? "t" : "tau"] = std::move(polys);
  return out;
}

FibrationData fibration_from_json(const Json& j) {
  FibrationData f;
  const Json& type = require(j, "type");
  if (!type.is_string()) throw std::invalid_argument("'type' must be a family letter");
  f.type = parse_type(type.get<std::string>(), int_from_json(require(j, "n"), "'n'"));

  const bool has_t = j.is_object() && j.contains("t");
  const bool has_tau = j.is_object() && j.contains("tau");
  if (has_t == has_tau)
    throw std::invalid_argument("exactly one of 't' (eigenvalues) or 'tau' (vertex weights) "
                                "must be present");
  f.form = has_t ? FibrationData::Form::Eigenvalues : FibrationData::Form::VertexWeights;
  const Json& polys = has_t ? j["t"] : j["tau"];
  if (!polys.is_array()) throw std::invalid_argument("the coordinate list must be an array");
  for (const Json& p : polys) f.polys.push_back(poly_from_json(p));
  validate_fibration(f);
  return f;
}

Json quiver_to_json(const Quiver& q) {
  Json out;
  Json vertices = Json::array();
  for (int i = 0; i < q.vertex_count; ++i) vertices.push_back(i);
  out["vertices"] = std::move(vertices);
  Json arrows = Json::array();
  for (const Arrow& a : q.arrows) {
    Json rec;
    rec["id"] = a.id;
    rec["tail"] = a.tail;
    rec["head"] = a.head;
    rec["kind"] = kind_name(a.kind);
    if (a.star_of >= 0)
      rec["star_of"] = q.arrows[static_cast<std::size_t>(a.star_of)].id;
    else
      rec["star_of"] = nullptr;
    arrows.push_back(std::move(rec));
  }
  out["arrows"] = std::move(arrows);
  return out;
}

Quiver quiver_from_json(const Json& j) {
  Quiver q;
  const Json& vertices = require(j, "vertices");
  if (!vertices.is_array()) throw std::invalid_argument("'vertices' must be an array");
  q.vertex_count = static_cast<int>(vertices.size());

  const Json& arrows = require(j, "arrows");
  if (!arrows.is_array()) throw std::invalid_argument("'arrows' must be an array");
  std::vector<std::string> partner_ids;
  for (const Json& rec : arrows) {
    Arrow a;
    const Json& id = require(rec, "id");
    if (!id.is_string()) throw std::invalid_argument("arrow 'id' must be a string");
    a.id = id.get<std::string>();
    a.tail = int_from_json(require(rec, "tail"), "arrow 'tail'");
    a.head = int_from_json(require(rec, "head"), "arrow 'head'");
    const Json& kind = require(rec, "kind");
    if (!kind.is_string()) throw std::invalid_argument("arrow 'kind' must be a string");
    a.kind = kind_from_name(kind.get<std::string>());
    const Json& star = require(rec, "star_of");
    partner_ids.push_back(star.is_null() ? std::string() : star.get<std::string>());
    if (a.tail < 0 || a.tail >= q.vertex_count || a.head < 0 || a.head >= q.vertex_count)
      throw std::domain_error("arrow '" + a.id + "' references a vertex out of range");
    q.arrows.push_back(std::move(a));
  }
  for (std::size_t k = 0; k < q.arrows.size(); ++k) {
    if (partner_ids[k].empty()) continue;
    int p = q.arrow_index(partner_ids[k]);
    if (p < 0)
      throw std::domain_error("arrow '" + q.arrows[k].id + "' names an unknown partner '" +
                              partner_ids[k] + "'");
    q.arrows[k].star_of = p;
  }
  bool any_star = false, any_loop = false;
  for (const Arrow& a : q.arrows) {
    any_star |= a.kind == ArrowKind::Star;
    any_loop |= a.kind == ArrowKind::Loop;
  }
  q.doubled = any_star;
  q.hatted = any_loop;
  return q;
}

namespace {

template <class T>
Json matrix_to_json(const Mat<T>& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) {
      if constexpr (is_exact_field_v<T>)
        row.push_back(qc_to_json(m.at(r, c)));
      else
        row.push_back(cd_to_json(m.at(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
Json representation_to_json_impl(const Representation<T>& v) {
  Json out;
  out["dim"] = v.dim;
  out["field"] = is_exact_field_v<T> ? "exact" : "float";
  Json mats;
  for (std::size_t k = 0; k < v.quiver.arrows.size(); ++k)
    mats[v.quiver.arrows[k].id] = matrix_to_json(v.mats[k]);
  out["mats"] = std::move(mats);
  return out;
}

template <class T>
Representation<T> representation_from_json_impl(const Json& j, const Quiver& q) {
  Representation<T> v;
  v.quiver = q;
  const Json& dim = require(j, "dim");
  if (!dim.is_array()) throw std::invalid_argument("'dim' must be an array");
  for (const Json& d : dim) v.dim.push_back(int_from_json(d, "a dimension entry"));

  const Json& mats = require(j, "mats");
  if (!mats.is_object()) throw std::invalid_argument("'mats' must map arrow ids to matrices");
  for (const Arrow& a : q.arrows) {
    auto it = mats.find(a.id);
    if (it == mats.end())
      throw std::invalid_argument("matrix for arrow '" + a.id + "' is missing");
    const Json& rows = *it;
    if (!rows.is_array()) throw std::invalid_argument("matrix '" + a.id + "' must be an array");
    int expect_rows = a.head < static_cast<int>(v.dim.size())
                          ? v.dim[static_cast<std::size_t>(a.head)]
                          : -1;
    int expect_cols = a.tail < static_cast<int>(v.dim.size())
                          ? v.dim[static_cast<std::size_t>(a.tail)]
                          : -1;
    if (expect_rows < 0 || expect_cols < 0)
      throw std::domain_error("'dim' is shorter than the vertex range of arrow '" + a.id + "'");
    Mat<T> m(expect_rows, expect_cols);
    if (static_cast<int>(rows.size()) != expect_rows)
      throw std::domain_error("matrix '" + a.id + "' has the wrong number of rows");
    for (int r = 0; r < expect_rows; ++r) {
      const Json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != expect_cols)
        throw std::domain_error("matrix '" + a.id + "' has the wrong shape");
      for (int c = 0; c < expect_cols; ++c) {
        if constexpr (is_exact_field_v<T>)
          m.at(r, c) = qc_from_json(row[static_cast<std::size_t>(c)]);
        else
          m.at(r, c) = cd_from_json(row[static_cast<std::size_t>(c)]);
      }
    }
    v.mats.push_back(std::move(m));
  }
  for (const auto& [key, value] : mats.items()) {
    (void)value;
    if (q.arrow_index(key) < 0)
      throw std::invalid_argument("matrix for unknown arrow '" + key + "'");
  }
  validate_shapes(v);
  return v;
}

}  // namespace

Json representation_to_json(const Representation<QC>& v) {
  return representation_to_json_impl(v);
}
Json representation_to_json(const Representation<CD>& v) {
  return representation_to_json_impl(v);
}

ParsedRepresentation representation_from_json(const Json& j, const Quiver& q) {
  std::string name = "exact";  // an absent marker means exact data
  if (j.is_object() && j.contains("field")) {
    const Json& field = j.at("field");
    if (!field.is_string()) throw std::invalid_argument("'field' must be a string");
    name = field.get<std::string>();
  }
  ParsedRepresentation out;
  if (name == "exact")
    out.exact = representation_from_json_impl<QC>(j, q);
  else if (name == "float")
    out.floating = representation_from_json_impl<CD>(j, q);
  else
    throw std::invalid_argument("'field' must be \"exact\" or \"float\"");
  return out;
}

Json equation_to_json(const ThreefoldEquation& eq) {
  Json out;
  out["n"] = eq.n;
  Json monomials = Json::array();
  for (const auto& [e, c] : eq.poly.terms()) {
    Json rec;
    rec["x"] = e[kVarX];
    rec["y"] = e[kVarY];
    rec["z"] = e[kVarZ];
    rec["lambda"] = e[kVarLambda];
    rec["coeff"] = qc_to_json(c);
    monomials.push_back(std::move(rec));
  }
  out["poly"] = Json{{"monomials", std::move(monomials)}};
  return out;
}

ThreefoldEquation equation_from_json(const Json& j) {
  ThreefoldEquation eq;
  eq.n = int_from_json(require(j, "n"), "'n'");
  const Json& monomials = require(require(j, "poly"), "monomials");
  if (!monomials.is_array()) throw std::invalid_argument("'monomials' must be an array");
  for (const Json& rec : monomials) {
    MPoly4::Exponents e{};
    e[kVarX] = int_from_json(require(rec, "x"), "exponent 'x'");
    e[kVarY] = int_from_json(require(rec, "y"), "exponent 'y'");
    e[kVarZ] = int_from_json(require(rec, "z"), "exponent 'z'");
    e[kVarLambda] = int_from_json(require(rec, "lambda"), "exponent 'lambda'");
    for (int exp : e)
      if (exp < 0) throw std::domain_error("negative exponent in a monomial");
    eq.poly += MPoly4::monomial(e, qc_from_json(require(rec, "coeff")));
  }
  return eq;
}

Json surface_point_to_json(const SurfacePointQ& p) {
  return Json{{"field", "exact"},
              {"x", qc_to_json(p.x)},
              {"y", qc_to_json(p.y)},
              {"z", qc_to_json(p.z)},
              {"lambda", qc_to_json(p.lambda)}};
}

Json surface_point_to_json(const SurfacePointC& p) {
  return Json{{"field", "float"},
              {"x", cd_to_json(p.x)},
              {"y", cd_to_json(p.y)},
              {"z", cd_to_json(p.z)},
              {"lambda", cd_to_json(p.lambda)}};
}

namespace {

bool says_exact(const Json& j) {
  if (!j.is_object() || !j.contains("field")) return true;  // exact by default
  const Json& field = j["field"];
  if (!field.is_string()) throw std::invalid_argument("'field' must be a string");
  std::string name = field.get<std::string>();
  if (name == "exact") return true;
  if (name == "float") return false;
  throw std::invalid_argument("'field' must be \"exact\" or \"float\"");
}

}  // namespace

ParsedSurfacePoint surface_point_from_json(const Json& j) {
  ParsedSurfacePoint out;
  if (says_exact(j)) {
    out.exact = SurfacePointQ{qc_from_json(require(j, "x")), qc_from_json(require(j, "y")),
                              qc_from_json(require(j, "z")), qc_from_json(require(j, "lambda"))};
  } else {
    out.floating = SurfacePointC{cd_from_json(require(j, "x")), cd_from_json(require(j, "y")),
                                 cd_from_json(require(j, "z")), cd_from_json(require(j, "lambda"))};
  }
  return out;
}

Json chart_point_to_json(const ChartPointQ& c) {
  return Json{{"field", "exact"},
              {"k", c.k},
              {"coords", Json::array({qc_to_json(c.c1), qc_to_json(c.c2), qc_to_json(c.lambda)})}};
}

Json chart_point_to_json(const ChartPointC& c) {
  return Json{{"field", "float"},
              {"k", c.k},
              {"coords", Json::array({cd_to_json(c.c1), cd_to_json(c.c2), cd_to_json(c.lambda)})}};
}

ParsedChartPoint chart_point_from_json(const Json& j) {
  ParsedChartPoint out;
  int k = int_from_json(require(j, "k"), "chart index 'k'");
  const Json& coords = require(j, "coords");
  if (!coords.is_array() || coords.size() != 3)
    throw std::invalid_argument("'coords' must be [c1, c2, lambda]");
  if (says_exact(j))
    out.exact =
        ChartPointQ{k, qc_from_json(coords[0]), qc_from_json(coords[1]), qc_from_json(coords[2])};
  else
    out.floating =
        ChartPointC{k, cd_from_json(coords[0]), cd_from_json(coords[1]), cd_from_json(coords[2])};
  return out;
}

Json genericity_to_json(const GenericityReport& r) {
  Json out;
  out["generic"] = r.generic;
  Json violations = Json::array();
  for (const GenericityViolation& v : r.violations) {
    Json rec;
    rec["root"] = v.root;
    rec["pairing"] = poly_to_json(v.pairing);
    rec["kind"] = v.kind == GenericityViolation::Kind::IdenticallyZero ? "identically-zero"
                                                                       : "repeated-root";
    Json at = Json::array();
    for (CD z : v.repeated_at) at.push_back(cd_to_json(z));
    rec["repeated_at"] = std::move(at);
    Json at_exact = Json::array();
    for (const QC& z : v.repeated_at_exact) at_exact.push_back(qc_to_json(z));
    rec["repeated_at_exact"] = std::move(at_exact);
    violations.push_back(std::move(rec));
  }
  out["violations"] = std::move(violations);
  return out;
}

Json singular_locus_to_json(const SingularLocus& locus) {
  Json out;
  out["generic"] = locus.generic;
  Json points = Json::array();
  for (const SingularPoint& p : locus.points) {
    Json rec;
    rec["lambda"] = cd_to_json(p.lambda_star);
    rec["lambda_exact"] = p.lambda_exact ? qc_to_json(*p.lambda_exact) : Json(nullptr);
    rec["z"] = cd_to_json(p.z_star);
    rec["z_exact"] = p.z_exact ? qc_to_json(*p.z_exact) : Json(nullptr);
    Json pairs = Json::array();
    for (const auto& [i, j] : p.pairs) pairs.push_back(Json::array({i, j}));
    rec["pairs"] = std::move(pairs);
    points.push_back(std::move(rec));
  }
  out["points"] = std::move(points);
  return out;
}

Json semi_invariants_to_json(const SemiInvariants& s) {
  auto mono = [](const SemiInvariantMonomial& g) {
    return Json{{"name", g.name}, {"x_exp", g.x_exp}, {"y_exp", g.y_exp}, {"weight", g.weight}};
  };
  Json out;
  out["n"] = s.n;
  Json u = Json::array(), v = Json::array(), f = Json::array();
  for (const auto& g : s.u) u.push_back(mono(g));
  for (const auto& g : s.v) v.push_back(mono(g));
  for (const auto& g : s.f) f.push_back(mono(g));
  out["u"] = std::move(u);
  out["v"] = std::move(v);
  out["f"] = std::move(f);
  Json relations = Json::array();
  for (const MonomialRelation& r : s.relations)
    relations.push_back(Json{{"text", r.text}, {"holds", r.holds}});
  out["relations"] = std::move(relations);
  return out;
}

Json stability_to_json(const StabilityVerdict& v) {
  Json out;
  out["status"] = to_string(v.status);
  out["method"] = to_string(v.method);
  out["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  return out;
}

Json residual_report_to_json(const ResidualReport& r) {
  Json out;
  out["exact"] = r.exact;
  out["exactly_zero"] = r.exactly_zero;
  out["max_residual"] = r.max_residual;
  out["vertex_residuals"] = r.vertex_residuals;
  Json comm = Json::array();
  for (const auto& [id, norm] : r.commutation_residuals)
    comm.push_back(Json{{"arrow", id}, {"residual", norm}});
  out["commutation_residuals"] = std::move(comm);
  return out;
}

Json solve_result_to_json(const SolveResult& r) {
  Json out;
  out["converged"] = r.converged;
  out["residual"] = r.residual;
  out["iterations"] = r.iterations;
  out["representation"] = representation_to_json(r.rep);
  return out;
}

Json probe_to_json(const FiberProbeReport& r) {
  Json out;
  out["dimension"] = r.dimension_estimate;
  out["distinct_preimages"] = r.distinct_preimages;
  Json charts;
  for (const ChartProbe& probe : r.charts) {
    Json rec;
    rec["family"] = probe.family;
    rec["family_hits"] = probe.family_hits;
    rec["isolated"] = probe.isolated ? chart_point_to_json(*probe.isolated) : Json(nullptr);
    charts[std::to_string(probe.k)] = std::move(rec);
  }
  out["charts"] = std::move(charts);
  return out;
}

}  // namespace adeq
