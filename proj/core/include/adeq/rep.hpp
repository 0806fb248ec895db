#pragma once

// Matrix representations of the hatted quiver and of the deformed relation
// algebra: relation residuals, the moment map, the structural identities
// (trace, central constraint, scalar loops), simplicity, and theta-stability.
//
// Matrix convention: an arrow a: i -> j carries a (dim_j x dim_i) matrix, and
// composition acts right-to-left, so the vertex-i relation reads
//   sum_{head(a)=i} M_a M_{a*}  -  sum_{tail(a)=i} M_{a*} M_a  =  tau_i(M_{u_i})
// summing over plain arrows a, together with M_b M_{u_tail(b)} = M_{u_head(b)} M_b
// for every non-loop arrow b of the doubled quiver.

#include "adeq/matrix.hpp"
#include "adeq/quiver.hpp"

#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace adeq {

template <class T>
inline constexpr bool is_exact_field_v = std::is_same_v<T, QC>;

template <class T>
struct Representation {
  Quiver quiver;
  DimVector dim;
  std::vector<Mat<T>> mats;  // aligned with quiver.arrows

  const Mat<T>& mat(const std::string& arrow_id) const {
    int k = quiver.arrow_index(arrow_id);
    if (k < 0) throw std::domain_error("no arrow with id '" + arrow_id + "'");
    return mats.at(static_cast<std::size_t>(k));
  }
  Mat<T>& mat(const std::string& arrow_id) {
    int k = quiver.arrow_index(arrow_id);
    if (k < 0) throw std::domain_error("no arrow with id '" + arrow_id + "'");
    return mats.at(static_cast<std::size_t>(k));
  }
};

using RepQ = Representation<QC>;
using RepC = Representation<CD>;

// Every arrow matrix must be head-dim x tail-dim; throws on mismatch.
template <class T>
void validate_shapes(const Representation<T>& v) {
  if (static_cast<int>(v.dim.size()) != v.quiver.vertex_count)
    throw std::domain_error("dimension vector length does not match vertex count");
  if (v.mats.size() != v.quiver.arrows.size())
    throw std::domain_error("matrix count does not match arrow count");
  for (std::size_t k = 0; k < v.mats.size(); ++k) {
    const Arrow& a = v.quiver.arrows[k];
    const Mat<T>& m = v.mats[k];
    if (m.rows() != v.dim[static_cast<std::size_t>(a.head)] ||
        m.cols() != v.dim[static_cast<std::size_t>(a.tail)])
      throw std::domain_error("matrix for arrow '" + a.id + "' has the wrong shape");
  }
}

template <class T>
Representation<T> zero_representation(const Quiver& q, const DimVector& dim) {
  Representation<T> v;
  v.quiver = q;
  v.dim = dim;
  v.mats.reserve(q.arrows.size());
  for (const Arrow& a : q.arrows)
    v.mats.emplace_back(dim.at(static_cast<std::size_t>(a.head)),
                        dim.at(static_cast<std::size_t>(a.tail)));
  return v;
}

// Default float tolerance: 1e-9 relative to the largest matrix norm (exact
// data uses 0).
template <class T>
double default_tolerance(const Representation<T>& v) {
  if constexpr (is_exact_field_v<T>) {
    return 0.0;
  } else {
    double largest = 0.0;
    for (const auto& m : v.mats) largest = std::max(largest, fro_norm(m));
    return 1e-9 * std::max(1.0, largest);
  }
}

struct ResidualReport {
  std::vector<double> vertex_residuals;  // Frobenius norm per vertex relation
  std::vector<std::pair<std::string, double>> commutation_residuals;  // per non-loop arrow
  double max_residual = 0.0;
  bool exact = false;
  bool exactly_zero = false;  // meaningful when exact
};

// Residual of every defining relation of the deformed algebra: the vertex
// relations and the loop commutation relations.  Requires a hatted quiver.
template <class T>
ResidualReport relation_residual(const Representation<T>& v, const TauPolys& tau);

// Per-vertex moment map sum_{head(a)=i} M_a M_{a*} - sum_{tail(a)=i} M_{a*} M_a
// over the doubled arrows (loops ignored).
template <class T>
std::vector<Mat<T>> moment_map(const Representation<T>& v);

// max_residual <= tol; exact data demands tol == 0.
template <class T>
bool is_representation(const Representation<T>& v, const TauPolys& tau, double tol);

// sum_i trace tau_i(M_{u_i}); zero for every valid representation.  The
// representation property is checked first (tol < 0 selects the default).
template <class T>
T trace_identity(const Representation<T>& v, const TauPolys& tau, double tol = -1.0);

// The common scalar by which all loops act, when there is one.
template <class T>
std::optional<T> scalar_loop_lambda(const Representation<T>& v, double tol);

// sum_i alpha_i tau_i(lambda); zero whenever (alpha, tau, lambda) arise from
// a representation with scalar loops.
template <class T>
T central_constraint(const DimVector& alpha, const TauPolys& tau, const T& lambda);

// Simplicity via the algebra-closure criterion: the span of all words in the
// vertex idempotents and arrow/loop matrices must be the full endomorphism
// algebra of the total space.  Exact input only; rank decisions are made with
// fraction-free elimination.
bool is_simple_burnside(const Representation<QC>& v);
bool is_simple_burnside(const Representation<CD>& v);  // always throws: demand exact input

// Thin-case subrepresentation lattice: all S subset I (including the empty
// set and I) with no arrow carrying a nonzero matrix out of S.
template <class T>
std::vector<std::vector<int>> closed_supports(const Representation<T>& v, double tol);

struct StabilityVerdict {
  enum class Status { Stable, SemistableNotStable, Unstable, Undecided };
  enum class Method { ThinEnumeration, BurnsideSimple, None };

  Status status = Status::Undecided;
  Method method = Method::None;
  std::optional<std::vector<int>> witness;  // destabilizing support
};

const char* to_string(StabilityVerdict::Status s);
const char* to_string(StabilityVerdict::Method m);

// Subobject criterion: stable iff every proper nonzero subrepresentation has
// theta-weight > 0 (semistable with >= 0).  Thin dimension vectors are decided
// exactly via closed supports; otherwise a Burnside-simple representation is
// stable vacuously and anything else is undecided.
template <class T>
StabilityVerdict theta_stability(const Representation<T>& v, const StabilityParam& theta,
                                 double tol);

// The simple => scalar-loops implication, checked on one representation.
bool loop_endomorphism_check(const Representation<QC>& v);

// ---------------------------------------------------------------------------
// Implementation (templates)
// ---------------------------------------------------------------------------

template <class T>
ResidualReport relation_residual(const Representation<T>& v, const TauPolys& tau) {
  validate_shapes(v);
  if (!v.quiver.hatted)
    throw std::domain_error("relation_residual expects a hatted quiver (loops present)");
  if (static_cast<int>(tau.size()) != v.quiver.vertex_count)
    throw std::domain_error("tau has " + std::to_string(tau.size()) + " entries for " +
                            std::to_string(v.quiver.vertex_count) + " vertices");

  const Quiver& q = v.quiver;
  std::vector<int> loop_at(static_cast<std::size_t>(q.vertex_count), -1);
  for (std::size_t k = 0; k < q.arrows.size(); ++k)
    if (q.arrows[k].kind == ArrowKind::Loop)
      loop_at[static_cast<std::size_t>(q.arrows[k].tail)] = static_cast<int>(k);

  ResidualReport report;
  report.exact = is_exact_field_v<T>;
  report.exactly_zero = true;

  std::vector<Mat<T>> mu = moment_map(v);
  for (int i = 0; i < q.vertex_count; ++i) {
    int li = loop_at[static_cast<std::size_t>(i)];
    if (li < 0) throw std::domain_error("missing loop at vertex " + std::to_string(i));
    Mat<T> r = mu[static_cast<std::size_t>(i)] -
               poly_at_matrix(tau[static_cast<std::size_t>(i)],
                              v.mats[static_cast<std::size_t>(li)]);
    double norm = fro_norm(r);
    if (!r.is_zero()) report.exactly_zero = false;
    report.vertex_residuals.push_back(norm);
    report.max_residual = std::max(report.max_residual, norm);
  }

  for (std::size_t k = 0; k < q.arrows.size(); ++k) {
    const Arrow& b = q.arrows[k];
    if (b.kind == ArrowKind::Loop) continue;
    const Mat<T>& lt = v.mats[static_cast<std::size_t>(loop_at[static_cast<std::size_t>(b.tail)])];
    const Mat<T>& lh = v.mats[static_cast<std::size_t>(loop_at[static_cast<std::size_t>(b.head)])];
    Mat<T> r = v.mats[k] * lt - lh * v.mats[k];
    double norm = fro_norm(r);
    if (!r.is_zero()) report.exactly_zero = false;
    report.commutation_residuals.emplace_back(b.id, norm);
    report.max_residual = std::max(report.max_residual, norm);
  }
  return report;
}

template <class T>
std::vector<Mat<T>> moment_map(const Representation<T>& v) {
  validate_shapes(v);
  if (!v.quiver.doubled)
    throw std::domain_error("moment_map expects a doubled quiver");
  const Quiver& q = v.quiver;
  std::vector<Mat<T>> mu;
  mu.reserve(static_cast<std::size_t>(q.vertex_count));
  for (int i = 0; i < q.vertex_count; ++i) {
    int d = v.dim[static_cast<std::size_t>(i)];
    mu.emplace_back(d, d);
  }
  for (std::size_t k = 0; k < q.arrows.size(); ++k) {
    const Arrow& a = q.arrows[k];
    if (a.kind != ArrowKind::Plain) continue;
    if (a.star_of < 0) throw std::domain_error("plain arrow '" + a.id + "' has no reverse partner");
    const Mat<T>& ma = v.mats[k];
    const Mat<T>& ms = v.mats[static_cast<std::size_t>(a.star_of)];
    mu[static_cast<std::size_t>(a.head)] += ma * ms;
    mu[static_cast<std::size_t>(a.tail)] -= ms * ma;
  }
  return mu;
}

template <class T>
bool is_representation(const Representation<T>& v, const TauPolys& tau, double tol) {
  if constexpr (is_exact_field_v<T>) {
    if (tol != 0.0)
      throw std::domain_error("exact representations require tol = 0");
    return relation_residual(v, tau).exactly_zero;
  } else {
    if (tol < 0.0) throw std::domain_error("tolerance must be nonnegative");
    return relation_residual(v, tau).max_residual <= tol;
  }
}

template <class T>
T trace_identity(const Representation<T>& v, const TauPolys& tau, double tol) {
  double use_tol = tol < 0.0 ? default_tolerance(v) : tol;
  if (!is_representation(v, tau, use_tol))
    throw std::domain_error("trace_identity requires a valid representation");
  T sum(0);
  for (std::size_t k = 0; k < v.quiver.arrows.size(); ++k) {
    const Arrow& a = v.quiver.arrows[k];
    if (a.kind != ArrowKind::Loop) continue;
    sum += poly_at_matrix(tau[static_cast<std::size_t>(a.tail)], v.mats[k]).trace();
  }
  return sum;
}

template <class T>
std::optional<T> scalar_loop_lambda(const Representation<T>& v, double tol) {
  validate_shapes(v);
  if (!v.quiver.hatted)
    throw std::domain_error("scalar_loop_lambda expects a hatted quiver");
  // Candidate: first diagonal entry of the first nonempty loop matrix.
  T lambda(0);
  bool found = false;
  for (std::size_t k = 0; k < v.quiver.arrows.size() && !found; ++k) {
    const Arrow& a = v.quiver.arrows[k];
    if (a.kind == ArrowKind::Loop && v.mats[k].rows() > 0) {
      lambda = v.mats[k].at(0, 0);
      found = true;
    }
  }
  if (!found) return T(0);  // no vertex carries any space; vacuously scalar
  for (std::size_t k = 0; k < v.quiver.arrows.size(); ++k) {
    const Arrow& a = v.quiver.arrows[k];
    if (a.kind != ArrowKind::Loop) continue;
    Mat<T> diff = v.mats[k] - lambda * Mat<T>::identity(v.mats[k].rows());
    if constexpr (is_exact_field_v<T>) {
      if (!diff.is_zero()) return std::nullopt;
    } else {
      if (fro_norm(diff) > tol) return std::nullopt;
    }
  }
  return lambda;
}

template <class T>
T central_constraint(const DimVector& alpha, const TauPolys& tau, const T& lambda) {
  if (alpha.size() != tau.size())
    throw std::domain_error("alpha and tau have different lengths");
  T sum(0);
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if constexpr (is_exact_field_v<T>)
      sum += QC(static_cast<long>(alpha[i])) * tau[i].eval(lambda);
    else
      sum += static_cast<double>(alpha[i]) * tau[i].eval(lambda);
  }
  return sum;
}

template <class T>
std::vector<std::vector<int>> closed_supports(const Representation<T>& v, double tol) {
  validate_shapes(v);
  for (int d : v.dim)
    if (d > 1) throw std::domain_error("closed_supports requires a thin dimension vector");
  const Quiver& q = v.quiver;
  // Nonzero-arrow digraph (loops never leave a support).
  std::vector<std::pair<int, int>> live;
  for (std::size_t k = 0; k < q.arrows.size(); ++k) {
    const Arrow& a = q.arrows[k];
    if (a.tail == a.head) continue;
    bool nonzero;
    if constexpr (is_exact_field_v<T>)
      nonzero = !v.mats[k].is_zero();
    else
      nonzero = max_entry_norm(v.mats[k]) > tol;
    if (nonzero) live.emplace_back(a.tail, a.head);
  }
  std::vector<std::vector<int>> supports;
  const int nv = q.vertex_count;
  for (unsigned mask = 0; mask < (1u << nv); ++mask) {
    bool closed = true;
    for (const auto& [tail, head] : live) {
      if ((mask >> tail & 1u) && !(mask >> head & 1u)) {
        closed = false;
        break;
      }
    }
    if (!closed) continue;
    std::vector<int> s;
    for (int i = 0; i < nv; ++i)
      if (mask >> i & 1u) s.push_back(i);
    supports.push_back(std::move(s));
  }
  return supports;
}

template <class T>
StabilityVerdict theta_stability(const Representation<T>& v, const StabilityParam& theta,
                                 double tol) {
  validate_shapes(v);
  if (!validate_theta(theta, v.dim))
    throw std::domain_error("theta . dim != 0");

  bool thin = true;
  for (int d : v.dim)
    if (d > 1) thin = false;

  StabilityVerdict verdict;
  if (thin) {
    verdict.method = StabilityVerdict::Method::ThinEnumeration;
    // Support of the dimension vector; subrepresentations are judged by their
    // dimension support, so vertices with dim 0 are ignored for weights and
    // for properness.
    std::vector<bool> carries(v.dim.size());
    int total = 0;
    for (std::size_t i = 0; i < v.dim.size(); ++i) {
      carries[i] = v.dim[i] == 1;
      total += v.dim[i];
    }
    std::optional<std::vector<int>> zero_witness;
    for (const std::vector<int>& s : closed_supports(v, tol)) {
      std::vector<int> dim_support;
      long weight = 0;
      for (int i : s)
        if (carries[static_cast<std::size_t>(i)]) {
          dim_support.push_back(i);
          weight += theta[static_cast<std::size_t>(i)];
        }
      if (dim_support.empty() || static_cast<int>(dim_support.size()) == total) continue;
      if (weight < 0) {
        verdict.status = StabilityVerdict::Status::Unstable;
        verdict.witness = std::move(dim_support);
        return verdict;
      }
      if (weight == 0 && !zero_witness) zero_witness = std::move(dim_support);
    }
    if (zero_witness) {
      verdict.status = StabilityVerdict::Status::SemistableNotStable;
      verdict.witness = std::move(zero_witness);
    } else {
      verdict.status = StabilityVerdict::Status::Stable;
    }
    return verdict;
  }

  if constexpr (is_exact_field_v<T>) {
    if (is_simple_burnside(v)) {
      verdict.status = StabilityVerdict::Status::Stable;
      verdict.method = StabilityVerdict::Method::BurnsideSimple;
      return verdict;
    }
  }
  verdict.status = StabilityVerdict::Status::Undecided;
  verdict.method = StabilityVerdict::Method::None;
  return verdict;
}

}  // namespace adeq
