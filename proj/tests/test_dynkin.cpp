#include <doctest.h>

#include <algorithm>
#include <map>

#include "adeq/dynkin.hpp"

using namespace adeq;

namespace {

Poly constant(long v) { return Poly::constant(QC(v)); }
Poly linear(long c1, long c0) { return Poly{QC(c0), QC(c1)}; }

FibrationData fibration_a(int n, std::vector<Poly> t) {
  FibrationData f;
  f.type = parse_type("A", n);
  f.form = FibrationData::Form::Eigenvalues;
  f.polys = std::move(t);
  validate_fibration(f);
  return f;
}

int coxeter_number(const DynkinType& t) {
  switch (t.family) {
    case Family::A: return t.rank + 1;
    case Family::D: return 2 * t.rank - 2;
    case Family::E: return t.rank == 6 ? 12 : (t.rank == 7 ? 18 : 30);
  }
  return 0;
}

}  // namespace

TEST_SUITE("dynkin types") {
  TEST_CASE("valid ranks parse") {
    CHECK(parse_type("A", 1).rank == 1);
    CHECK(parse_type("D", 4).family == Family::D);
    CHECK(parse_type("E", 8).rank == 8);
  }

  TEST_CASE("invalid ranks are rejected") {
    CHECK_THROWS_AS(parse_type("A", 0), std::domain_error);
    CHECK_THROWS_AS(parse_type("D", 3), std::domain_error);
    CHECK_THROWS_AS(parse_type("E", 9), std::domain_error);
    CHECK_THROWS_AS(parse_type("F", 4), std::domain_error);
  }

  TEST_CASE("extended diagrams have one extra vertex") {
    for (auto [fam, rank] : {std::pair{"A", 3}, {"D", 5}, {"E", 6}}) {
      DynkinType t = parse_type(fam, rank);
      CHECK(extended_vertex_count(t) == rank + 1);
    }
  }

  TEST_CASE("edge counts match the diagram shape") {
    // The extended cyclic diagram has n+1 edges, every extended tree has n.
    CHECK(diagram_edges(parse_type("A", 2), true).size() == 3);
    CHECK(diagram_edges(parse_type("A", 1), true).size() == 2);  // doubled bond
    CHECK(diagram_edges(parse_type("D", 4), true).size() == 4);
    CHECK(diagram_edges(parse_type("E", 6), true).size() == 6);
  }
}

TEST_SUITE("cartan matrices and roots") {
  TEST_CASE("finite cartan matrix of the chain") {
    CartanMatrix c = cartan_matrix(parse_type("A", 2));
    REQUIRE(c.entries.size() == 2);
    CHECK(c.entries[0][0] == 2);
    CHECK(c.entries[0][1] == -1);
    CHECK(c.entries[1][0] == -1);
    CHECK(c.entries[1][1] == 2);
  }

  TEST_CASE("marks span the affine kernel for every type up to rank 8") {
    std::vector<DynkinType> all;
    for (int n = 1; n <= 8; ++n) all.push_back(parse_type("A", n));
    for (int n = 4; n <= 8; ++n) all.push_back(parse_type("D", n));
    for (int n = 6; n <= 8; ++n) all.push_back(parse_type("E", n));
    for (const DynkinType& t : all) {
      CAPTURE(t.str());
      DimVector delta = marks(t);
      CartanMatrix c = affine_cartan_matrix(t);
      REQUIRE(delta.size() == c.entries.size());
      for (std::size_t i = 0; i < c.entries.size(); ++i) {
        long dot = 0;
        for (std::size_t j = 0; j < c.entries.size(); ++j) dot += c.entries[i][j] * delta[j];
        CHECK(dot == 0);
      }
      CHECK(delta[0] == 1);  // extending vertex always carries mark 1
      long sum = 0;
      for (int d : delta) sum += d;
      CHECK(sum == coxeter_number(t));
    }
  }

  TEST_CASE("marks of the four-armed star") {
    DimVector delta = marks(parse_type("D", 4));
    REQUIRE(delta.size() == 5);
    CHECK(delta == DimVector{1, 1, 2, 1, 1});
  }

  TEST_CASE("positive root counts") {
    std::map<std::string, std::size_t> expected{
        {"A1", 1},  {"A2", 3},  {"A3", 6},   {"A8", 36}, {"D4", 12},
        {"D5", 20}, {"D8", 56}, {"E6", 36},  {"E7", 63}, {"E8", 120},
    };
    for (const auto& [name, count] : expected) {
      DynkinType t = parse_type(name.substr(0, 1), std::stoi(name.substr(1)));
      CAPTURE(name);
      CHECK(positive_roots(t).size() == count);
    }
  }

  TEST_CASE("every root has squared length two") {
    for (const char* name : {"A3", "D4", "E6"}) {
      DynkinType t = parse_type(std::string(1, name[0]), name[1] - '0');
      CartanMatrix c = cartan_matrix(t);
      for (const RootVector& alpha : positive_roots(t)) {
        long q = 0;
        for (std::size_t i = 0; i < c.entries.size(); ++i)
          for (std::size_t j = 0; j < c.entries.size(); ++j) q += alpha[i] * c.entries[i][j] * alpha[j];
        CHECK(q == 2);
      }
    }
  }

  TEST_CASE("simple roots appear among the positive roots") {
    DynkinType t = parse_type("D", 5);
    std::vector<RootVector> roots = positive_roots(t);
    for (int i = 0; i < 5; ++i) {
      RootVector e(5, 0);
      e[static_cast<std::size_t>(i)] = 1;
      CHECK(std::find(roots.begin(), roots.end(), e) != roots.end());
    }
  }
}

TEST_SUITE("fibration data") {
  TEST_CASE("wrong coordinate count is rejected") {
    FibrationData f;
    f.type = parse_type("A", 1);
    f.form = FibrationData::Form::Eigenvalues;
    f.polys = {linear(1, 0)};  // needs n+1 = 2
    CHECK_THROWS_AS(validate_fibration(f), std::domain_error);
  }

  TEST_CASE("eigenvalues to vertex weights and back") {
    FibrationData f = fibration_a(2, {linear(1, 0), linear(-1, 1), linear(3, -3)});
    std::vector<Poly> tau = tau_coords(f);
    REQUIRE(tau.size() == 3);
    // tau_i = t_i - t_{i+1} cyclically
    CHECK((tau[0] - (f.polys[0] - f.polys[1])).degree() < 0);
    CHECK((tau[1] - (f.polys[1] - f.polys[2])).degree() < 0);
    CHECK((tau[2] - (f.polys[2] - f.polys[0])).degree() < 0);

    // the telescoping sum vanishes identically
    Poly sum = tau[0] + tau[1] + tau[2];
    CHECK(sum.degree() < 0);

    // reconstructing eigenvalues fixes the gauge t_0 = 0
    FibrationData g;
    g.type = f.type;
    g.form = FibrationData::Form::VertexWeights;
    g.polys = tau;
    std::vector<Poly> back = eigenvalue_coords(g);
    REQUIRE(back.size() == 3);
    CHECK(back[0].degree() < 0);
    for (int i = 0; i < 3; ++i)
      CHECK(((back[static_cast<std::size_t>(i)] - f.polys[static_cast<std::size_t>(i)]) -
             (back[0] - f.polys[0]))
                .degree() < 0);
  }

  TEST_CASE("vertex weight reconstruction is only cyclic") {
    FibrationData f;
    f.type = parse_type("D", 4);
    f.form = FibrationData::Form::VertexWeights;
    f.polys = {constant(-5), constant(1), constant(1), constant(1), constant(1)};
    validate_fibration(f);
    CHECK_THROWS_AS(eigenvalue_coords(f), std::domain_error);
  }
}

TEST_SUITE("genericity") {
  TEST_CASE("opposite linear eigenvalues are generic") {
    FibrationData f = fibration_a(1, {linear(1, 0), linear(-1, 0)});
    GenericityReport r = genericity_check(f);
    CHECK(r.generic);
    CHECK(r.violations.empty());
  }

  TEST_CASE("zero eigenvalues are flagged as identically zero pairings") {
    FibrationData f = fibration_a(1, {constant(0), constant(0)});
    GenericityReport r = genericity_check(f);
    CHECK_FALSE(r.generic);
    REQUIRE_FALSE(r.violations.empty());
    CHECK(r.violations[0].kind == GenericityViolation::Kind::IdenticallyZero);
  }

  TEST_CASE("a repeated pairing root is flagged and located") {
    Poly sq{QC(0), QC(0), QC(1)};  // lambda^2
    FibrationData f = fibration_a(1, {sq, -sq});
    GenericityReport r = genericity_check(f);
    CHECK_FALSE(r.generic);
    REQUIRE_FALSE(r.violations.empty());
    const GenericityViolation& v = r.violations[0];
    CHECK(v.kind == GenericityViolation::Kind::RepeatedRoot);
    REQUIRE_FALSE(v.repeated_at.empty());
    CHECK(std::abs(v.repeated_at[0]) < 1e-9);
    REQUIRE_FALSE(v.repeated_at_exact.empty());
    CHECK(v.repeated_at_exact[0].is_zero());
  }

  TEST_CASE("a linear perturbation restores genericity") {
    Poly sq{QC(0), QC(0), QC(1)};
    FibrationData bad = fibration_a(2, {sq, -sq, constant(0)});
    CHECK_FALSE(genericity_check(bad).generic);
    FibrationData good = fibration_a(
        2, {sq + linear(1, 0), -sq + linear(2, 0), linear(-3, 0)});
    CHECK(genericity_check(good).generic);
  }

  TEST_CASE("star-shaped weights with a vanishing root pairing") {
    FibrationData f;
    f.type = parse_type("D", 4);
    f.form = FibrationData::Form::VertexWeights;
    // finite weights (1, -2, 1, 2) kill the root e1 + e2 + e3
    f.polys = {constant(0), constant(1), constant(-2), constant(1), constant(2)};
    validate_fibration(f);
    GenericityReport r = genericity_check(f);
    CHECK_FALSE(r.generic);
    bool found_zero = false;
    for (const GenericityViolation& v : r.violations)
      found_zero = found_zero || v.kind == GenericityViolation::Kind::IdenticallyZero;
    CHECK(found_zero);
  }

  TEST_CASE("star-shaped weights with all pairings nonzero") {
    FibrationData f;
    f.type = parse_type("D", 4);
    f.form = FibrationData::Form::VertexWeights;
    // finite weights (1, 5, 1, 2): all twelve root pairings are nonzero
    f.polys = {constant(-14), constant(1), constant(5), constant(1), constant(2)};
    validate_fibration(f);
    CHECK(genericity_check(f).generic);
  }
}
