#include "ckl/kasteleyn.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

using namespace ckl;

namespace {

PeriodicGraph honeycomb() {
  PeriodicGraph g;
  g.name = "honeycomb";
  g.vertices = {{"u", {0.6, 0.6}, Color::none}, {"v", {0.1, 0.1}, Color::none}};
  g.edges = {{0, 1, {0, 0}, 1.0}, {0, 1, {1, 0}, 1.0}, {0, 1, {0, 1}, 1.0}};
  validate_graph(g);
  return g;
}

// The dimer graph of the square lattice: whites at edge midpoints, blacks at
// vertices and face centers. Weight layout puts 2,1,3,1 around one face.
PeriodicGraph square_dimer(double w_b1 = 1.0, double w1_b2 = 1.0, double w2_b2 = 1.0,
                           double w2_b1 = 1.0) {
  PeriodicGraph g;
  g.name = "square-dimer";
  g.vertices = {{"w1", {0.5, 0.0}, Color::white},
                {"w2", {0.0, 0.5}, Color::white},
                {"b1", {0.0, 0.0}, Color::black},
                {"b2", {0.5, 0.5}, Color::black}};
  g.edges = {{0, 2, {0, 0}, w_b1},  {0, 3, {0, 0}, w1_b2}, {0, 2, {1, 0}, 1.0},
             {0, 3, {0, -1}, 1.0},  {1, 2, {0, 0}, w2_b1}, {1, 3, {0, 0}, w2_b2},
             {1, 2, {0, 1}, 1.0},   {1, 3, {-1, 0}, 1.0}};
  validate_graph(g);
  return g;
}

PeriodicGraph doubled_edge(double a, double b) {
  PeriodicGraph g;
  g.name = "doubled-edge";
  g.vertices = {{"u", {0.6, 0.5}, Color::white}, {"v", {0.1, 0.5}, Color::black}};
  g.edges = {{0, 1, {0, 0}, a}, {0, 1, {1, 0}, b}};
  return g;  // not Z^2-connected; fine for matrix-level operations
}

}  // namespace

TEST_CASE("kasteleyn assignment on the honeycomb", "[kasteleyn]") {
  const PeriodicGraph g = honeycomb();
  const KasteleynAssignment a = assign_kasteleyn_signs(g);
  REQUIRE(a.size() == 1);
  // K(z,w) = +-(1 + s1 z + s2 w): three unit monomials at (0,0), (1,0), (0,1).
  const LaurentPoly2 p = char_poly(g, a);
  CHECK(p.term_count(1e-12) == 3);
  CHECK(std::abs(std::abs(p.at(0, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(p.at(1, 0)) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(p.at(0, 1)) - 1.0) < 1e-12);
  // Magnitude at (1,1) is 1 or 3 depending on the sign choice.
  const double m = std::abs(kasteleyn_eval(g, a, {1, 0}, {1, 0}));
  CHECK((std::abs(m - 1.0) < 1e-12 || std::abs(m - 3.0) < 1e-12));
}

TEST_CASE("kasteleyn rejects non-bipartite and unbalanced graphs", "[kasteleyn]") {
  PeriodicGraph tri;
  tri.vertices = {{"a", {0.5, 0.5}, Color::none}};
  tri.edges = {{0, 0, {1, 0}, 1.0}, {0, 0, {0, 1}, 1.0}, {0, 0, {1, 1}, 1.0}};
  CHECK_THROWS_AS(assign_kasteleyn_signs(tri), GraphError);
}

TEST_CASE("enumerate_matchings oracle", "[kasteleyn]") {
  SECTION("one edge of weight 7") {
    FiniteGraph h;
    h.num_vertices = 2;
    h.edges = {{0, 1, 7.0, -1, {}}};
    CHECK(enumerate_matchings(h) == Catch::Approx(7.0));
  }
  SECTION("4-cycle has two matchings") {
    FiniteGraph h;
    h.num_vertices = 4;
    h.edges = {{0, 1, 1.0, -1, {}}, {1, 2, 1.0, -1, {}}, {2, 3, 1.0, -1, {}}, {3, 0, 1.0, -1, {}}};
    CHECK(enumerate_matchings(h) == Catch::Approx(2.0));
  }
  SECTION("odd order gives zero") {
    FiniteGraph h;
    h.num_vertices = 3;
    h.edges = {{0, 1, 1.0, -1, {}}, {1, 2, 1.0, -1, {}}};
    CHECK(enumerate_matchings(h) == 0.0);
  }
  SECTION("size limit") {
    FiniteGraph h;
    h.num_vertices = 26;
    CHECK_THROWS_AS(enumerate_matchings(h), GraphError);
  }
}

TEST_CASE("four-point torus formula", "[kasteleyn]") {
  SECTION("honeycomb counts its three matchings") {
    const PeriodicGraph g = honeycomb();
    const auto z = partition_function_torus(g, assign_kasteleyn_signs(g));
    CHECK(z.value == Catch::Approx(3.0).margin(1e-9));
    CHECK(z.minus_position >= 0);
  }
  SECTION("doubled edge gives a+b") {
    const PeriodicGraph g = doubled_edge(2.5, 4.0);
    KasteleynAssignment a = assign_kasteleyn_signs(g);
    const auto z = partition_function_torus(g, a);
    CHECK(z.value == Catch::Approx(6.5).margin(1e-9));
  }
  SECTION("square dimer graph matches enumeration") {
    const PeriodicGraph g = square_dimer();
    const auto z = partition_function_torus(g, assign_kasteleyn_signs(g));
    const double oracle = enumerate_matchings(quotient(g, 1).as_finite());
    CHECK(z.value == Catch::Approx(oracle).margin(1e-9));
  }
  SECTION("n=2 honeycomb quotient, rebased, matches its own enumeration") {
    const PeriodicGraph q2 = quotient(honeycomb(), 2).periodic;
    const auto z = partition_function_torus(q2, assign_kasteleyn_signs(q2));
    const double oracle = enumerate_matchings(quotient(q2, 1).as_finite());
    CHECK(z.value == Catch::Approx(oracle).margin(1e-9 * (1 + oracle)));
  }
}

TEST_CASE("planar patch determinant equals matching count", "[kasteleyn]") {
  for (int n = 1; n <= 2; ++n) {
    const PeriodicGraph g = with_bipartite_colors(honeycomb());
    const KasteleynAssignment a = assign_kasteleyn_signs(g);
    FiniteGraph f = patch(g, n);
    const double det = patch_determinant_abs(f, g, a);
    const double count = enumerate_matchings(f);
    CHECK(det == Catch::Approx(count).margin(1e-9 * (1 + count)));
  }
  for (int n = 1; n <= 2; ++n) {
    const PeriodicGraph g = square_dimer();
    const KasteleynAssignment a = assign_kasteleyn_signs(g);
    FiniteGraph f = patch(g, n);
    const double det = patch_determinant_abs(f, g, a);
    const double count = enumerate_matchings(f);
    CHECK(det == Catch::Approx(count).margin(1e-9 * (1 + count)));
  }
}

TEST_CASE("char_poly agrees with direct evaluation at random points", "[kasteleyn]") {
  const PeriodicGraph g = square_dimer(2.0, 1.0, 3.0, 1.0);
  const KasteleynAssignment a = assign_kasteleyn_signs(g);
  const LaurentPoly2 p = char_poly(g, a);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (int t = 0; t < 50; ++t) {
    const Cd z = std::polar(1.0, u(rng)), w = std::polar(1.0, u(rng));
    const Cd direct = kasteleyn_eval(g, a, z, w);
    CHECK(std::abs(p.eval(z, w) - direct) < 1e-9 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("constant characteristic polynomial", "[kasteleyn]") {
  PeriodicGraph g;
  g.vertices = {{"u", {0.3, 0.5}, Color::white}, {"v", {0.8, 0.5}, Color::black}};
  g.edges = {{0, 1, {0, 0}, 5.0}};
  const KasteleynAssignment a = assign_kasteleyn_signs(g);
  const LaurentPoly2 p = char_poly(g, a);
  CHECK(p.term_count(1e-12) == 1);
  CHECK(std::abs(std::abs(p.at(0, 0)) - 5.0) < 1e-12);
}

TEST_CASE("gauge transform", "[kasteleyn]") {
  const PeriodicGraph g = square_dimer(2.0, 1.0, 3.0, 1.0);
  SECTION("identity gauge") {
    GaugeFunction f{{1.0, 1.0, 1.0, 1.0}};
    const GaugeResult r = gauge_transform(g, f);
    CHECK(r.log_z_shift == 0.0);
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      CHECK(r.graph.edges[e].weight == g.edges[e].weight);
  }
  SECTION("face weights are gauge invariant") {
    GaugeFunction f{{0.7, 1.9, 0.51, 2.3}};
    const GaugeResult r = gauge_transform(g, f);
    CHECK(r.log_z_shift ==
          Catch::Approx(std::log(0.7) + std::log(1.9) + std::log(0.51) + std::log(2.3)));
    const auto colors = validate_bipartite(g);
    const auto faces = trace_faces(g);
    for (const Face& face : faces) {
      const double before = face_alternating_product(g, colors, face);
      const double after = face_alternating_product(r.graph, colors, face);
      CHECK(after == Catch::Approx(before).epsilon(1e-12));
    }
  }
  SECTION("gauge shift moves the partition function") {
    GaugeFunction f{{1.0, 1.0, 2.0, 1.0}};  // scale edges at b1 by 2
    const GaugeResult r = gauge_transform(g, f);
    const double z0 = enumerate_matchings(quotient(g, 1).as_finite());
    const double z1 = enumerate_matchings(quotient(r.graph, 1).as_finite());
    CHECK(std::log(z1) - std::log(z0) == Catch::Approx(r.log_z_shift).margin(1e-12));
  }
}

TEST_CASE("face alternating product values", "[kasteleyn]") {
  SECTION("uniform weights give 1") {
    const PeriodicGraph g = square_dimer();
    const auto colors = validate_bipartite(g);
    for (const Face& f : trace_faces(g))
      CHECK(face_alternating_product(g, colors, f) == Catch::Approx(1.0));
  }
  SECTION("weights 2,1,3,1 around a face give 6") {
    const PeriodicGraph g = square_dimer(2.0, 1.0, 3.0, 1.0);
    const auto colors = validate_bipartite(g);
    bool found = false;
    for (const Face& f : trace_faces(g)) {
      const double x = face_alternating_product(g, colors, f);
      if (std::abs(x - 6.0) < 1e-12 || std::abs(x - 1.0 / 6.0) < 1e-12) found = true;
    }
    CHECK(found);
  }
}
