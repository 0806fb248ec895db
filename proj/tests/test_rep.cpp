#include <doctest.h>

#include <algorithm>

#include "adeq/quiver.hpp"
#include "adeq/rep.hpp"

using namespace adeq;

namespace {

Poly linear(long c1, long c0) { return Poly{QC(c0), QC(c1)}; }

FibrationData fibration_a(int n, std::vector<Poly> t) {
  FibrationData f;
  f.type = parse_type("A", n);
  f.form = FibrationData::Form::Eigenvalues;
  f.polys = std::move(t);
  validate_fibration(f);
  return f;
}

// Thin representation over a hatted cyclic quiver from one scalar per arrow,
// in quiver arrow order (a0.., a0*.., u0..).
Representation<QC> thin_rep(const Quiver& q, const std::vector<QC>& scalars) {
  Representation<QC> v;
  v.quiver = q;
  v.dim.assign(static_cast<std::size_t>(q.vertex_count), 1);
  for (const QC& s : scalars) v.mats.push_back(MatQ(1, 1, {s}));
  validate_shapes(v);
  return v;
}

// Hand-checked two-vertex example: eigenvalues (lambda, -lambda) at lambda=1
// with cycle value 2, so the vertex products are z_0 = 1 and z_1 = 3.
Representation<QC> conifold_rep() {
  Quiver q = hatted_quiver(parse_type("A", 1));
  return thin_rep(q, {QC(1), QC(1), QC(1), QC(3), QC(1), QC(1)});
}

TauPolys conifold_tau() {
  return tau_from_fibration(fibration_a(1, {linear(1, 0), linear(-1, 0)}));
}

}  // namespace

TEST_SUITE("representation validation") {
  TEST_CASE("shape mismatches are rejected") {
    Quiver q = hatted_quiver(parse_type("A", 1));
    Representation<QC> v;
    v.quiver = q;
    v.dim = {1, 1};
    for (std::size_t k = 0; k < q.arrows.size(); ++k) v.mats.push_back(MatQ(1, 1));
    v.mats[0] = MatQ(2, 1);
    CHECK_THROWS_AS(validate_shapes(v), std::domain_error);
  }

  TEST_CASE("zero representation satisfies homogeneous relations only") {
    Quiver q = hatted_quiver(parse_type("A", 1));
    Representation<QC> z = zero_representation<QC>(q, {1, 1});
    TauPolys tau = conifold_tau();  // both weights have zero constant term
    CHECK(relation_residual(z, tau).exactly_zero);

    TauPolys shifted = tau_from_fibration(fibration_a(1, {linear(1, 1), linear(-1, 0)}));
    ResidualReport r = relation_residual(z, shifted);
    CHECK_FALSE(r.exactly_zero);
    CHECK(r.max_residual == doctest::Approx(1.0));
  }

  TEST_CASE("hand-built cycle satisfies the vertex relations exactly") {
    Representation<QC> v = conifold_rep();
    TauPolys tau = conifold_tau();
    ResidualReport r = relation_residual(v, tau);
    CHECK(r.exact);
    CHECK(r.exactly_zero);
    CHECK(is_representation(v, tau, 0.0));
  }

  TEST_CASE("a wrong entry breaks exact validity") {
    Representation<QC> v = conifold_rep();
    v.mats[3].at(0, 0) = QC(4);  // y_1 should equal 3
    CHECK_FALSE(is_representation(v, conifold_tau(), 0.0));
  }

  TEST_CASE("default tolerance is zero exactly, scale-aware in floats") {
    Representation<QC> v = conifold_rep();
    CHECK(default_tolerance(v) == 0.0);

    Representation<CD> w;
    w.quiver = v.quiver;
    w.dim = v.dim;
    for (const MatQ& m : v.mats) w.mats.push_back(to_float(m));
    CHECK(default_tolerance(w) > 0.0);
    CHECK(is_representation(w, conifold_tau(), default_tolerance(w)));

    w.mats[0].at(0, 0) += CD(1e-3, 0.0);
    CHECK_FALSE(is_representation(w, conifold_tau(), 1e-6));
  }

  TEST_CASE("loop commutation is enforced") {
    Quiver q = hatted_quiver(parse_type("A", 1));
    // scalar loops with different values across an alive arrow cannot commute
    Representation<QC> v = thin_rep(q, {QC(1), QC(0), QC(0), QC(0), QC(1), QC(2)});
    TauPolys tau = tau_from_fibration(fibration_a(1, {Poly(), Poly()}));
    ResidualReport r = relation_residual(v, tau);
    CHECK_FALSE(r.exactly_zero);
    bool commutation_hit = false;
    for (const auto& [id, norm] : r.commutation_residuals)
      commutation_hit = commutation_hit || (id == "a0" && norm > 0.5);
    CHECK(commutation_hit);
  }
}

TEST_SUITE("moment map and identities") {
  TEST_CASE("doubled-quiver moment map matches scalar arithmetic") {
    Quiver q = double_quiver(mckay_quiver(parse_type("A", 1)));
    Representation<QC> v;
    v.quiver = q;
    v.dim = {1, 1};
    for (QC s : {QC(2), QC(3), QC(5), QC(7)}) v.mats.push_back(MatQ(1, 1, {s}));
    std::vector<MatQ> mu = moment_map(v);
    REQUIRE(mu.size() == 2);
    CHECK(mu[0].at(0, 0) == QC(11));   // 3*7 - 5*2
    CHECK(mu[1].at(0, 0) == QC(-11));  // 2*5 - 7*3
  }

  TEST_CASE("trace identity vanishes exactly on valid representations") {
    CHECK(trace_identity(conifold_rep(), conifold_tau(), 0.0).is_zero());
  }

  TEST_CASE("trace identity refuses invalid input") {
    Representation<QC> v = conifold_rep();
    v.mats[0].at(0, 0) = QC(100);
    CHECK_THROWS_AS(trace_identity(v, conifold_tau(), 0.0), std::domain_error);
  }

  TEST_CASE("scalar loops are recovered") {
    std::optional<QC> lambda = scalar_loop_lambda(conifold_rep(), 0.0);
    REQUIRE(lambda.has_value());
    CHECK(*lambda == QC(1));
  }

  TEST_CASE("non-scalar loops are detected") {
    Quiver q = hatted_quiver(parse_type("A", 1));
    Representation<QC> v = thin_rep(q, {QC(0), QC(0), QC(0), QC(0), QC(1), QC(2)});
    CHECK_FALSE(scalar_loop_lambda(v, 0.0).has_value());
    // with zero weights this is still a valid representation
    TauPolys tau = tau_from_fibration(fibration_a(1, {Poly(), Poly()}));
    CHECK(is_representation(v, tau, 0.0));
    // it is decomposable, so the scalar-loop implication holds vacuously
    CHECK(loop_endomorphism_check(v));
  }

  TEST_CASE("central constraint evaluates the pairing") {
    TauPolys tau{Poly::constant(QC(3))};
    CHECK(central_constraint({2}, tau, QC(5)) == QC(6));
    TauPolys balanced = conifold_tau();
    CHECK(central_constraint({1, 1}, balanced, QC(7)).is_zero());
  }
}

TEST_SUITE("simplicity") {
  TEST_CASE("a fully alive cycle is simple") {
    CHECK(is_simple_burnside(conifold_rep()));
    CHECK(loop_endomorphism_check(conifold_rep()));
  }

  TEST_CASE("a dead arrow can split the cycle") {
    Quiver q = hatted_quiver(parse_type("A", 1));
    // only a0 alive: {1} is a proper closed support
    Representation<QC> v = thin_rep(q, {QC(1), QC(0), QC(0), QC(0), QC(1), QC(1)});
    CHECK_FALSE(is_simple_burnside(v));
  }

  TEST_CASE("the zero representation on two vertices is not simple") {
    Quiver q = hatted_quiver(parse_type("A", 1));
    CHECK_FALSE(is_simple_burnside(zero_representation<QC>(q, {1, 1})));
  }

  TEST_CASE("direct sums are never simple") {
    Quiver q = hatted_quiver(parse_type("A", 1));
    Representation<QC> v;
    v.quiver = q;
    v.dim = {2, 2};
    auto diag = [](QC a, QC b) { return MatQ(2, 2, {a, QC(0), QC(0), b}); };
    v.mats = {diag(QC(1), QC(1)), diag(QC(1), QC(1)), diag(QC(1), QC(4)),
              diag(QC(3), QC(6)), diag(QC(1), QC(1)), diag(QC(1), QC(1))};
    TauPolys tau = conifold_tau();
    REQUIRE(is_representation(v, tau, 0.0));
    CHECK_FALSE(is_simple_burnside(v));
    // non-thin and not Burnside-simple: stability stays undecided
    StabilityVerdict verdict = theta_stability(v, {-1, 1}, 0.0);
    CHECK(verdict.status == StabilityVerdict::Status::Undecided);
    CHECK(verdict.method == StabilityVerdict::Method::None);
  }

  TEST_CASE("float input is refused") {
    Representation<CD> w;
    w.quiver = hatted_quiver(parse_type("A", 1));
    w.dim = {1, 1};
    for (std::size_t k = 0; k < w.quiver.arrows.size(); ++k) w.mats.push_back(MatC(1, 1));
    CHECK_THROWS_AS(is_simple_burnside(w), std::domain_error);
  }
}

TEST_SUITE("thin stability") {
  TEST_CASE("closed supports of a one-arrow pattern") {
    Quiver q = hatted_quiver(parse_type("A", 2));
    std::vector<QC> scalars(q.arrows.size(), QC(0));
    scalars[0] = QC(1);  // a0: 0 -> 1
    Representation<QC> v = thin_rep(q, scalars);
    std::vector<std::vector<int>> supports = closed_supports(v, 0.0);
    CHECK(supports.size() == 6);
    // the empty and full supports are always present
    CHECK(std::find(supports.begin(), supports.end(), std::vector<int>{}) != supports.end());
    CHECK(std::find(supports.begin(), supports.end(), std::vector<int>{0, 1, 2}) !=
          supports.end());
    // {0} alone is not closed, {0,1} is
    CHECK(std::find(supports.begin(), supports.end(), std::vector<int>{0}) == supports.end());
    CHECK(std::find(supports.begin(), supports.end(), std::vector<int>{0, 1}) != supports.end());
  }

  TEST_CASE("a fully alive cycle is stable") {
    StabilityVerdict v = theta_stability(conifold_rep(), {-1, 1}, 0.0);
    CHECK(v.status == StabilityVerdict::Status::Stable);
    CHECK(v.method == StabilityVerdict::Method::ThinEnumeration);
  }

  TEST_CASE("the zero representation is destabilized by the extending vertex") {
    Quiver q = hatted_quiver(parse_type("A", 2));
    Representation<QC> z = zero_representation<QC>(q, {1, 1, 1});
    StabilityVerdict v = theta_stability(z, {-2, 1, 1}, 0.0);
    CHECK(v.status == StabilityVerdict::Status::Unstable);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == std::vector<int>{0});
  }

  TEST_CASE("degenerate parameters yield strict semistability") {
    Quiver q = hatted_quiver(parse_type("A", 2));
    Representation<QC> z = zero_representation<QC>(q, {1, 1, 1});
    StabilityVerdict v = theta_stability(z, {0, 0, 0}, 0.0);
    CHECK(v.status == StabilityVerdict::Status::SemistableNotStable);
    CHECK(v.witness.has_value());
  }

  TEST_CASE("pairing mismatch is rejected") {
    CHECK_THROWS_AS(theta_stability(conifold_rep(), {-1, 2}, 0.0), std::domain_error);
  }
}
