#include "adeq/solver.hpp"

#include "adeq/dynkin.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adeq {

namespace {

// Index layout shared by the residual, the Jacobian, and the finite
// difference check: one complex unknown per entry of each non-loop matrix,
// one complex residual per entry of each vertex relation, each split into
// (real, imag) adjacent slots.
struct LeastSquares {
  Quiver q;
  DimVector dim;
  std::vector<CD> tau_at;     // tau_i(lambda)
  CD lambda;
  std::vector<int> arrow_base;  // complex-unknown offset per arrow (-1 = loop)
  std::vector<int> vertex_base; // complex-residual offset per vertex
  int n_unknowns = 0;           // complex count
  int n_residuals = 0;          // complex count

  LeastSquares(const DynkinType& type, const TauPolys& tau, CD lam) {
    q = hatted_quiver(type);
    dim = marks(type);
    if (tau.size() != dim.size())
      throw std::domain_error("tau has the wrong number of entries for this type");
    lambda = lam;
    for (const Poly& ti : tau) tau_at.push_back(ti.eval(lam));

    arrow_base.assign(q.arrows.size(), -1);
    for (std::size_t k = 0; k < q.arrows.size(); ++k) {
      const Arrow& a = q.arrows[k];
      if (a.kind == ArrowKind::Loop) continue;
      arrow_base[k] = n_unknowns;
      n_unknowns += dim[static_cast<std::size_t>(a.head)] * dim[static_cast<std::size_t>(a.tail)];
    }
    vertex_base.assign(dim.size(), 0);
    for (std::size_t i = 0; i < dim.size(); ++i) {
      vertex_base[i] = n_residuals;
      n_residuals += dim[i] * dim[i];
    }
  }

  Representation<CD> unpack(const Eigen::VectorXd& x) const {
    Representation<CD> v = zero_representation<CD>(q, dim);
    for (std::size_t k = 0; k < q.arrows.size(); ++k) {
      const Arrow& a = q.arrows[k];
      Mat<CD>& m = v.mats[k];
      if (a.kind == ArrowKind::Loop) {
        for (int r = 0; r < m.rows(); ++r) m.at(r, r) = lambda;
        continue;
      }
      int base = arrow_base[k];
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
          int idx = base + r * m.cols() + c;
          m.at(r, c) = CD(x[2 * idx], x[2 * idx + 1]);
        }
    }
    return v;
  }

  Eigen::VectorXd residual(const Representation<CD>& v) const {
    std::vector<Mat<CD>> mu = moment_map(v);
    Eigen::VectorXd r(2 * n_residuals);
    for (std::size_t i = 0; i < dim.size(); ++i) {
      const Mat<CD>& m = mu[i];
      for (int p = 0; p < m.rows(); ++p)
        for (int c = 0; c < m.cols(); ++c) {
          CD val = m.at(p, c);
          if (p == c) val -= tau_at[i];
          int idx = vertex_base[i] + p * m.cols() + c;
          r[2 * idx] = val.real();
          r[2 * idx + 1] = val.imag();
        }
    }
    return r;
  }

  // Scatter one derivative block d(mu_vertex) into a Jacobian column.
  void scatter(Eigen::MatrixXd& jac, int col, int vertex, const Mat<CD>& block) const {
    for (int p = 0; p < block.rows(); ++p)
      for (int c = 0; c < block.cols(); ++c) {
        int idx = vertex_base[static_cast<std::size_t>(vertex)] + p * block.cols() + c;
        jac(2 * idx, col) += block.at(p, c).real();
        jac(2 * idx + 1, col) += block.at(p, c).imag();
      }
  }

  Eigen::MatrixXd jacobian(const Representation<CD>& v) const {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2 * n_residuals, 2 * n_unknowns);
    for (std::size_t k = 0; k < q.arrows.size(); ++k) {
      const Arrow& a = q.arrows[k];
      if (a.kind == ArrowKind::Loop) continue;
      const int rows = v.mats[k].rows(), cols = v.mats[k].cols();
      const std::size_t partner = static_cast<std::size_t>(a.star_of);
      const Mat<CD>& mp = v.mats[partner];
      for (int p = 0; p < rows; ++p)
        for (int c = 0; c < cols; ++c)
          for (int part = 0; part < 2; ++part) {
            const int col = 2 * (arrow_base[k] + p * cols + c) + part;
            Mat<CD> dir(rows, cols);
            dir.at(p, c) = part == 0 ? CD(1, 0) : CD(0, 1);
            if (a.kind == ArrowKind::Plain) {
              // mu_head += M_a M_a*, mu_tail -= M_a* M_a
              scatter(jac, col, a.head, dir * mp);
              scatter(jac, col, a.tail, -(mp * dir));
            } else {
              // this is M_a* of the plain partner b: tail(a) = head(b)
              const Arrow& b = v.quiver.arrows[partner];
              scatter(jac, col, b.head, mp * dir);
              scatter(jac, col, b.tail, -(dir * mp));
            }
          }
    }
    return jac;
  }
};

// The central obstruction sum_i delta_i tau_i must vanish at lambda.
void check_central(const DynkinType& type, const TauPolys& tau, CD lambda) {
  DimVector delta = marks(type);
  if (tau.size() != delta.size())
    throw std::domain_error("tau has the wrong number of entries for this type");
  Poly combo;
  for (std::size_t i = 0; i < tau.size(); ++i)
    combo = combo + QC(static_cast<long>(delta[i])) * tau[i];
  if (combo.degree() < 0) return;
  double scale = 1.0;
  for (int k = 0; k <= combo.degree(); ++k)
    scale += abs_approx(combo.coeff(k)) * std::pow(std::max(1.0, std::abs(lambda)), k);
  if (std::abs(combo.eval(lambda)) > 1e-9 * scale)
    throw std::domain_error("central constraint violated: sum_i delta_i tau_i(lambda) != 0");
}

}  // namespace

Representation<QC> construct_type_a(const FibrationData& f, const ConstructOptions& opts) {
  validate_fibration(f);
  if (f.type.family != Family::A)
    throw std::domain_error("the exact thin construction is type A only");
  const int m = f.type.rank + 1;
  std::vector<Poly> t = eigenvalue_coords(f);
  TauPolys tau = tau_from_fibration(f);

  if (!opts.x_choices.empty() && static_cast<int>(opts.x_choices.size()) != m)
    throw std::domain_error("x_choices must list one value per slot");
  if (!opts.zero_slots.empty() && static_cast<int>(opts.zero_slots.size()) != m)
    throw std::domain_error("zero_slots must list one policy per slot");

  Quiver q = hatted_quiver(f.type);
  Representation<QC> v = zero_representation<QC>(q, DimVector(static_cast<std::size_t>(m), 1));
  Rng rng(opts.seed);

  for (std::size_t k = 0; k < q.arrows.size(); ++k)
    if (q.arrows[k].kind == ArrowKind::Loop) v.mats[k].at(0, 0) = opts.lambda;

  for (std::size_t k = 0; k < q.arrows.size(); ++k) {
    const Arrow& a = q.arrows[k];
    if (a.kind != ArrowKind::Plain) continue;
    const std::size_t s = static_cast<std::size_t>(a.star_of);
    const std::size_t slot = static_cast<std::size_t>(a.tail);
    QC z = opts.z_value + t[(slot + 1) % static_cast<std::size_t>(m)].eval(opts.lambda);
    if (!z.is_zero()) {
      QC xi = opts.x_choices.empty() ? rng.next_qc_nonzero() : opts.x_choices[slot];
      if (xi.is_zero())
        throw std::domain_error("x choice for slot " + std::to_string(slot) +
                                " must be nonzero (its cycle product is not)");
      v.mats[k].at(0, 0) = xi;
      v.mats[s].at(0, 0) = z / xi;
    } else if ((opts.zero_slots.empty() ? ZeroSlotPolicy::XOneYZero : opts.zero_slots[slot]) ==
               ZeroSlotPolicy::XOneYZero) {
      QC xi = opts.x_choices.empty() ? QC(1) : opts.x_choices[slot];
      if (xi.is_zero())
        throw std::domain_error("x choice for slot " + std::to_string(slot) + " must be nonzero");
      v.mats[k].at(0, 0) = xi;
    } else {
      v.mats[s].at(0, 0) = rng.next_qc_nonzero();
    }
  }

  if (!relation_residual(v, tau).exactly_zero)
    throw std::logic_error("thin construction failed its exact relation check");
  return v;
}

SolveResult solve_moment_map(const DynkinType& type, const TauPolys& tau, CD lambda,
                             const SolveOptions& opts) {
  if (opts.residual_target <= 0.0)
    throw std::domain_error("residual_target must be positive");
  if (opts.max_iterations < 0) throw std::domain_error("max_iterations must be nonnegative");
  check_central(type, tau, lambda);

  LeastSquares ls(type, tau, lambda);
  Eigen::VectorXd x(2 * ls.n_unknowns);
  if (opts.zero_start) {
    x.setZero();
  } else {
    Rng rng(opts.seed);
    for (int i = 0; i < x.size(); ++i) x[i] = rng.next_real(-1.0, 1.0);
  }

  Eigen::VectorXd r = ls.residual(ls.unpack(x));
  double f = r.squaredNorm();
  double damping = opts.damping;

  SolveResult out;
  out.trace.push_back(std::sqrt(f));
  int it = 0;
  while (it < opts.max_iterations && std::sqrt(f) > opts.residual_target) {
    Representation<CD> v = ls.unpack(x);
    Eigen::MatrixXd jac = ls.jacobian(v);
    Eigen::VectorXd g = jac.transpose() * r;
    Eigen::MatrixXd h = jac.transpose() * jac;
    h.diagonal().array() += damping;
    Eigen::VectorXd step = h.ldlt().solve(-g);
    ++it;

    Eigen::VectorXd xt = x + step;
    Eigen::VectorXd rt = ls.residual(ls.unpack(xt));
    double ft = rt.squaredNorm();
    if (ft < f) {
      x = xt;
      r = rt;
      f = ft;
      damping = std::max(damping / 3.0, 1e-14);
      out.trace.push_back(std::sqrt(f));
    } else {
      damping = std::min(damping * 2.0, 1e12);
    }
  }

  for (std::size_t i = 1; i < out.trace.size(); ++i)
    if (out.trace[i] > out.trace[i - 1])
      throw std::logic_error("objective increased across an accepted step");

  out.rep = ls.unpack(x);
  out.iterations = it;
  out.residual = std::sqrt(f);
  out.converged = out.residual <= opts.residual_target;
  return out;
}

double gradient_fd_check(const DynkinType& type, const TauPolys& tau, CD lambda,
                         std::uint64_t seed, double h) {
  if (h <= 0.0) throw std::domain_error("step h must be positive");
  LeastSquares ls(type, tau, lambda);
  Rng rng(seed);
  Eigen::VectorXd x(2 * ls.n_unknowns);
  for (int i = 0; i < x.size(); ++i) x[i] = rng.next_real(-1.0, 1.0);

  auto objective = [&](const Eigen::VectorXd& v) { return ls.residual(ls.unpack(v)).squaredNorm(); };
  Eigen::VectorXd r = ls.residual(ls.unpack(x));
  Eigen::VectorXd g = 2.0 * (ls.jacobian(ls.unpack(x)).transpose() * r);

  double g_scale = 1.0 + g.lpNorm<Eigen::Infinity>();
  double worst = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    double fd = (objective(xp) - objective(xm)) / (2.0 * h);
    worst = std::max(worst, std::abs(g[i] - fd) / g_scale);
  }
  return worst;
}

SampleBatch random_valid_sample(const FibrationData& f, const QC& lambda, int count,
                                std::uint64_t seed) {
  if (count < 0) throw std::domain_error("count must be nonnegative");
  validate_fibration(f);

  SampleBatch batch;
  Rng rng(seed);
  if (f.type.family == Family::A) {
    TauPolys tau = tau_from_fibration(f);
    int simple = 0;
    for (int s = 0; s < count; ++s) {
      ConstructOptions o;
      o.lambda = lambda;
      o.z_value = rng.next_qc();
      o.seed = rng.next_u64();
      Representation<QC> v = construct_type_a(f, o);
      if (!is_representation(v, tau, 0.0))
        throw std::logic_error("constructed sample fails its relation check");
      if (is_simple_burnside(v)) ++simple;
      batch.exact.push_back(std::move(v));
    }
    if (count > 0) batch.simple_fraction = static_cast<double>(simple) / count;
  } else {
    TauPolys tau = tau_coords(f);
    for (int s = 0; s < count; ++s) {
      SolveOptions so;
      so.seed = rng.next_u64();
      batch.numeric.push_back(solve_moment_map(f.type, tau, lambda.to_cd(), so));
    }
  }
  return batch;
}

}  // namespace adeq
