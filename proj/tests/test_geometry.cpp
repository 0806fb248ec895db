#include <doctest.h>

#include "adeq/geometry.hpp"
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

FibrationData conifold() { return fibration_a(1, {linear(1, 0), linear(-1, 0)}); }

Representation<QC> thin_rep(const Quiver& q, const std::vector<QC>& scalars) {
  Representation<QC> v;
  v.quiver = q;
  v.dim.assign(static_cast<std::size_t>(q.vertex_count), 1);
  for (const QC& s : scalars) v.mats.push_back(MatQ(1, 1, {s}));
  validate_shapes(v);
  return v;
}

}  // namespace

TEST_SUITE("threefold equations") {
  TEST_CASE("two eigenvalue lines give the quadric cone family") {
    ThreefoldEquation eq = threefold_equation(conifold());
    CHECK(eq.n == 1);
    REQUIRE(eq.t.size() == 2);
    CHECK(eq.poly.term_count() == 3);
    CHECK(eq.poly.coeff({1, 1, 0, 0}) == QC(1));   // x y
    CHECK(eq.poly.coeff({0, 0, 2, 0}) == QC(-1));  // z^2
    CHECK(eq.poly.coeff({0, 0, 0, 2}) == QC(1));   // lambda^2
  }

  TEST_CASE("an affine shift produces the expected cross terms") {
    ThreefoldEquation eq = threefold_equation(fibration_a(1, {linear(1, 0), linear(-1, 1)}));
    CHECK(eq.poly.term_count() == 5);
    CHECK(eq.poly.coeff({1, 1, 0, 0}) == QC(1));
    CHECK(eq.poly.coeff({0, 0, 2, 0}) == QC(-1));
    CHECK(eq.poly.coeff({0, 0, 1, 0}) == QC(-1));
    CHECK(eq.poly.coeff({0, 0, 0, 1}) == QC(-1));
    CHECK(eq.poly.coeff({0, 0, 0, 2}) == QC(1));
  }

  TEST_CASE("three lines give a cubic in z") {
    ThreefoldEquation eq =
        threefold_equation(fibration_a(2, {linear(1, 0), linear(-1, 0), Poly()}));
    CHECK(eq.poly.term_count() == 3);
    CHECK(eq.poly.coeff({1, 1, 0, 0}) == QC(1));
    CHECK(eq.poly.coeff({0, 0, 3, 0}) == QC(-1));  // z^3
    CHECK(eq.poly.coeff({0, 0, 1, 2}) == QC(1));   // z lambda^2
  }
}

TEST_SUITE("residuals and gradients") {
  TEST_CASE("points on the hypersurface evaluate to zero exactly") {
    ThreefoldEquation eq = threefold_equation(conifold());
    SurfacePointQ p{QC(3), QC(1), QC(2), QC(1)};
    CHECK(residual_value(p, eq).is_zero());
    CHECK(hypersurface_residual(p, eq) == 0.0);

    SurfacePointQ off{QC(3), QC(1), QC(2), QC(0)};
    CHECK(residual_value(off, eq) == QC(-1));
  }

  TEST_CASE("float evaluation matches") {
    ThreefoldEquation eq = threefold_equation(conifold());
    SurfacePointC p{CD(3, 0), CD(1, 0), CD(2, 0), CD(1, 0)};
    CHECK(hypersurface_residual(p, eq) <= 1e-12);
  }

  TEST_CASE("the gradient vanishes exactly at the cone point") {
    ThreefoldEquation eq = threefold_equation(conifold());
    SurfacePointQ origin{QC(0), QC(0), QC(0), QC(0)};
    for (const QC& g : equation_gradient(origin, eq)) CHECK(g.is_zero());

    SurfacePointQ p{QC(3), QC(1), QC(2), QC(1)};
    std::array<QC, 4> g = equation_gradient(p, eq);
    CHECK(g[0] == QC(1));   // d/dx = y
    CHECK(g[1] == QC(3));   // d/dy = x
    CHECK(g[2] == QC(-4));  // d/dz = -2z
    CHECK(g[3] == QC(2));   // d/dlambda = 2 lambda
  }
}

TEST_SUITE("singular locus") {
  TEST_CASE("the quadric cone degenerates exactly once") {
    SingularLocus locus = singular_points(conifold());
    CHECK(locus.generic);
    REQUIRE(locus.points.size() == 1);
    const SingularPoint& s = locus.points[0];
    REQUIRE(s.lambda_exact.has_value());
    CHECK(s.lambda_exact->is_zero());
    REQUIRE(s.z_exact.has_value());
    CHECK(s.z_exact->is_zero());
    CHECK(s.pairs == std::vector<std::pair<int, int>>{{0, 1}});
  }

  TEST_CASE("shifted lines cross away from the origin") {
    SingularLocus locus = singular_points(fibration_a(1, {linear(1, 0), linear(-1, 1)}));
    REQUIRE(locus.points.size() == 1);
    CHECK(locus.points[0].lambda_exact == QC(Rat(1, 2)));
    CHECK(locus.points[0].z_exact == QC(Rat(-1, 2)));
  }

  TEST_CASE("simultaneous collisions merge into one point") {
    SingularLocus locus =
        singular_points(fibration_a(2, {linear(1, 0), linear(-1, 0), Poly()}));
    REQUIRE(locus.points.size() == 1);
    CHECK(locus.points[0].pairs.size() == 3);
  }

  TEST_CASE("identically equal eigenvalues are rejected") {
    CHECK_THROWS_AS(singular_points(fibration_a(1, {linear(1, 0), linear(1, 0)})),
                    std::domain_error);
  }

  TEST_CASE("tangential collisions are flagged non-generic") {
    FibrationData f = fibration_a(
        1, {Poly::monomial(2, QC(1)), QC(-1) * Poly::monomial(2, QC(1))});
    CHECK_FALSE(singular_points(f).generic);
  }
}

TEST_SUITE("type A invariants") {
  TEST_CASE("cycle products and averaged coordinates") {
    Quiver q = hatted_quiver(parse_type("A", 1));
    Representation<QC> v = thin_rep(q, {QC(1), QC(1), QC(1), QC(3), QC(1), QC(1)});
    std::vector<QC> z = vertex_cycle_products(v);
    REQUIRE(z.size() == 2);
    CHECK(z[0] == QC(1));
    CHECK(z[1] == QC(3));

    SurfacePointQ p = invariants_type_a(v, conifold());
    CHECK(p.x == QC(1));
    CHECK(p.y == QC(3));
    CHECK(p.z == QC(2));
    CHECK(p.lambda == QC(1));
    CHECK(residual_value(p, threefold_equation(conifold())).is_zero());
  }

  TEST_CASE("non-scalar loops are refused") {
    Quiver q = hatted_quiver(parse_type("A", 1));
    Representation<QC> v = thin_rep(q, {QC(0), QC(0), QC(0), QC(0), QC(1), QC(2)});
    CHECK_THROWS_AS(invariants_type_a(v, conifold()), std::domain_error);
  }
}

TEST_SUITE("resolution charts") {
  TEST_CASE("boundary charts evaluate as expected") {
    FibrationData f = conifold();
    ChartPointQ c0{0, QC(1), QC(1), QC(1)};
    SurfacePointQ p0 = chart_point(c0, f);
    CHECK(p0.x == QC(3));
    CHECK(p0.y == QC(1));
    CHECK(p0.z == QC(2));
    CHECK(p0.lambda == QC(1));

    ChartPointQ c1{1, QC(2), QC(1), QC(1)};
    SurfacePointQ p1 = chart_point(c1, f);
    CHECK(p1.x == QC(2));
    CHECK(p1.y.is_zero());
    CHECK(p1.z == QC(1));
  }

  TEST_CASE("chart images satisfy the hypersurface equation identically") {
    FibrationData f2 = fibration_a(2, {linear(1, 0), linear(2, 0), linear(-3, 0)});
    for (int k = 0; k <= 2; ++k) CHECK(chart_identity_check(k, f2));
    // the identity is pure algebra: no centering or genericity needed
    FibrationData shifted = fibration_a(1, {linear(1, 0), linear(-1, 1)});
    for (int k = 0; k <= 1; ++k) CHECK(chart_identity_check(k, shifted));
  }

  TEST_CASE("chart index bounds are enforced") {
    CHECK_THROWS_AS(chart_point(ChartPointQ{2, QC(1), QC(1), QC(0)}, conifold()),
                    std::domain_error);
  }

  TEST_CASE("float charts agree with exact charts") {
    ChartPointQ c{0, QC(Rat(1, 2)), QC(3), QC(1)};
    SurfacePointQ exact = chart_point(c, conifold());
    SurfacePointC approx = chart_point(to_float(c), conifold());
    CHECK(std::abs(approx.x - exact.x.to_cd()) <= 1e-12);
    CHECK(std::abs(approx.y - exact.y.to_cd()) <= 1e-12);
    CHECK(std::abs(approx.z - exact.z.to_cd()) <= 1e-12);
  }
}

TEST_SUITE("chart transitions") {
  TEST_CASE("stepping up and back is the identity on the overlap") {
    FibrationData f = conifold();
    ChartPointQ c{0, QC(2), QC(3), QC(1)};
    ChartPointQ up = chart_transition(c, f, 1);
    CHECK(up.k == 1);
    CHECK(up.c1 == QC(16));
    CHECK(up.c2 == QC(Rat(1, 2)));

    SurfacePointQ before = chart_point(c, f);
    SurfacePointQ after = chart_point(up, f);
    CHECK(before.x == after.x);
    CHECK(before.y == after.y);
    CHECK(before.z == after.z);

    ChartPointQ back = chart_transition(up, f, -1);
    CHECK(back.k == 0);
    CHECK(back.c1 == c.c1);
    CHECK(back.c2 == c.c2);
  }

  TEST_CASE("the overlap excludes a vanishing pivot") {
    CHECK_THROWS_AS(chart_transition(ChartPointQ{0, QC(0), QC(5), QC(1)}, conifold(), 1),
                    std::domain_error);
  }

  TEST_CASE("direction and range are validated") {
    CHECK_THROWS_AS(chart_transition(ChartPointQ{0, QC(1), QC(1), QC(0)}, conifold(), 0),
                    std::domain_error);
    CHECK_THROWS_AS(chart_transition(ChartPointQ{1, QC(1), QC(1), QC(0)}, conifold(), 1),
                    std::domain_error);
  }

  TEST_CASE("transition identities hold symbolically") {
    FibrationData f2 = fibration_a(2, {linear(1, 2), linear(2, -1), linear(-3, -1)});
    for (int k = 0; k <= 2; ++k) {
      if (k + 1 <= 2) CHECK(transition_identity_check(k, 1, f2));
      if (k - 1 >= 0) CHECK(transition_identity_check(k, -1, f2));
    }
  }
}

TEST_SUITE("semi-invariant generators") {
  TEST_CASE("counts and weights for three lines") {
    SemiInvariants s = semi_invariants_type_a(2);
    CHECK(s.u.size() == 2);
    CHECK(s.v.size() == 2);
    REQUIRE(s.f.size() == 3);
    CHECK(s.relations.size() == 5);  // 2n exchange + n(n-1)/2 shuffle relations
    for (const MonomialRelation& r : s.relations) CHECK(r.holds);
    for (const SemiInvariantMonomial& g : s.f) {
      CHECK(g.weight == std::vector<int>{-2, 1, 1});
    }
  }

  TEST_CASE("the smallest case still has both exchange relations") {
    SemiInvariants s = semi_invariants_type_a(1);
    CHECK(s.f.size() == 2);
    CHECK(s.relations.size() == 2);
    CHECK_THROWS_AS(semi_invariants_type_a(0), std::domain_error);
  }
}

TEST_SUITE("fiber probe") {
  TEST_CASE("the cone point carries a one-dimensional fiber") {
    SurfacePointC origin{CD(0, 0), CD(0, 0), CD(0, 0), CD(0, 0)};
    FiberProbeReport r = fiber_probe(origin, conifold(), 32, 7);
    CHECK(r.dimension_estimate == 1);
    bool some_family = false;
    for (const ChartProbe& c : r.charts) some_family = some_family || c.family;
    CHECK(some_family);
  }

  TEST_CASE("a smooth point has a single preimage") {
    SurfacePointC p{CD(1, 0), CD(-1, 0), CD(0, 0), CD(1, 0)};
    FiberProbeReport r = fiber_probe(p, conifold(), 32, 7);
    CHECK(r.dimension_estimate == 0);
    CHECK(r.distinct_preimages == 1);
  }

  TEST_CASE("points off the hypersurface have no preimage") {
    SurfacePointC p{CD(5, 0), CD(5, 0), CD(0, 0), CD(0, 0)};
    FiberProbeReport r = fiber_probe(p, conifold(), 16, 7);
    CHECK(r.dimension_estimate == -1);
    CHECK(r.distinct_preimages == 0);
  }

  TEST_CASE("degenerate fibrations are refused") {
    FibrationData bad = fibration_a(1, {linear(1, 0), linear(1, 0)});
    SurfacePointC p{CD(0, 0), CD(0, 0), CD(0, 0), CD(0, 0)};
    CHECK_THROWS_AS(fiber_probe(p, bad, 8, 0), std::domain_error);
    CHECK_THROWS_AS(fiber_probe(p, conifold(), 0, 0), std::domain_error);
  }
}
