#include "ckl/periodic_graph.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>

using namespace ckl;

namespace {

const char* kHoneycombJson = R"({
  "name": "honeycomb",
  "vertices": [
    {"id": "u", "pos": [0.6, 0.6], "color": "white"},
    {"id": "v", "pos": [0.1, 0.1], "color": "black"}
  ],
  "edges": [
    {"u": "u", "v": "v", "shift": [0, 0], "weight": 1},
    {"u": "u", "v": "v", "shift": [1, 0], "weight": 1},
    {"u": "u", "v": "v", "shift": [0, 1], "weight": 1}
  ]
})";

PeriodicGraph square_lattice() {
  PeriodicGraph g;
  g.name = "square";
  g.vertices = {{"a", {0.5, 0.5}, Color::none}};
  g.edges = {{0, 0, {1, 0}, 1.0}, {0, 0, {0, 1}, 1.0}};
  validate_graph(g);
  return g;
}

PeriodicGraph triangular_lattice() {
  PeriodicGraph g;
  g.name = "triangular";
  g.vertices = {{"a", {0.5, 0.5}, Color::none}};
  g.edges = {{0, 0, {1, 0}, 1.0}, {0, 0, {0, 1}, 1.0}, {0, 0, {1, 1}, 1.0}};
  validate_graph(g);
  return g;
}

}  // namespace

TEST_CASE("load_graph accepts the honeycomb file", "[periodic_graph]") {
  const PeriodicGraph g = load_graph(kHoneycombJson);
  REQUIRE(g.vertices.size() == 2);
  REQUIRE(g.edges.size() == 3);
  CHECK(g.name == "honeycomb");
  CHECK(g.vertices[0].id == "u");
  CHECK(g.vertices[0].color == Color::white);
  CHECK(g.edges[1].shift == IVec2{1, 0});
}

TEST_CASE("load_graph rejects malformed inputs", "[periodic_graph]") {
  const std::string base = kHoneycombJson;
  SECTION("unknown endpoint") {
    std::string bad = base;
    bad.replace(bad.find("\"v\": \"v\", \"shift\": [0, 0]"), 8, "\"v\": \"x9\"");
    CHECK_THROWS_WITH(load_graph(bad), Catch::Matchers::ContainsSubstring("unknown endpoint"));
  }
  SECTION("nonpositive weight") {
    std::string bad = base;
    bad.replace(bad.find("\"weight\": 1}"), 12, "\"weight\": 0}");
    CHECK_THROWS_WITH(load_graph(bad), Catch::Matchers::ContainsSubstring("nonpositive weight"));
  }
  SECTION("malformed shift") {
    std::string bad = base;
    bad.replace(bad.find("\"shift\": [0, 0]"), 15, "\"shift\": [0.5, 0]");
    CHECK_THROWS_WITH(load_graph(bad), Catch::Matchers::ContainsSubstring("malformed shift"));
  }
  SECTION("duplicate vertex id") {
    std::string bad = base;
    bad.replace(bad.find("\"id\": \"v\""), 9, "\"id\": \"u\"");
    CHECK_THROWS_WITH(load_graph(bad), Catch::Matchers::ContainsSubstring("duplicate vertex id"));
  }
  SECTION("not json") {
    CHECK_THROWS_AS(load_graph("not json at all"), GraphError);
  }
}

TEST_CASE("save/load round trip", "[periodic_graph]") {
  PeriodicGraph g = load_graph(kHoneycombJson);
  g.basis = {1.0, 0.5, 0.0, 0.8660254037844386};
  const PeriodicGraph h = load_graph(save_graph(g));
  REQUIRE(h.vertices.size() == g.vertices.size());
  REQUIRE(h.edges.size() == g.edges.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    CHECK(h.vertices[i].id == g.vertices[i].id);
    CHECK(h.vertices[i].pos.x == Catch::Approx(g.vertices[i].pos.x).margin(1e-15));
    CHECK(h.vertices[i].pos.y == Catch::Approx(g.vertices[i].pos.y).margin(1e-15));
    CHECK(h.vertices[i].color == g.vertices[i].color);
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    CHECK(h.edges[i].u == g.edges[i].u);
    CHECK(h.edges[i].v == g.edges[i].v);
    CHECK(h.edges[i].shift == g.edges[i].shift);
    CHECK(h.edges[i].weight == g.edges[i].weight);
  }
  CHECK(h.basis.b == Catch::Approx(g.basis.b).margin(1e-15));
  CHECK(h.basis.d == Catch::Approx(g.basis.d).margin(1e-15));
}

TEST_CASE("positions are normalized into the unit cell", "[periodic_graph]") {
  PeriodicGraph g;
  g.name = "offcell";
  g.vertices = {{"a", {1.25, -0.5}, Color::none}, {"b", {0.5, 0.25}, Color::none}};
  g.edges = {{0, 1, {0, 0}, 1.0}, {1, 0, {1, 0}, 1.0}, {1, 0, {0, 1}, 1.0}};
  detail::normalize_positions(g);
  validate_graph(g);
  CHECK(g.vertices[0].pos.x == Catch::Approx(0.25));
  CHECK(g.vertices[0].pos.y == Catch::Approx(0.5));
  // Shift compensation keeps edge vectors intact up to a global translation.
  CHECK(g.edges[0].shift == IVec2{-1, 1});
  CHECK(g.edges[1].shift == IVec2{2, -1});
  CHECK(g.edges[2].shift == IVec2{1, 0});
}

TEST_CASE("quotient vertex and edge counts", "[periodic_graph]") {
  const TorusGraph sq2 = quotient(square_lattice(), 2);
  CHECK(sq2.vertex_count() == 4);
  CHECK(sq2.edge_count() == 8);

  const TorusGraph h1 = quotient(load_graph(kHoneycombJson), 1);
  CHECK(h1.vertex_count() == 2);
  CHECK(h1.edge_count() == 3);

  const TorusGraph t3 = quotient(triangular_lattice(), 3);
  CHECK(t3.vertex_count() == 9);
  CHECK(t3.edge_count() == 27);
}

TEST_CASE("quotient wraps record windings", "[periodic_graph]") {
  const TorusGraph sq2 = quotient(square_lattice(), 2);
  int wrapped = 0;
  for (const Edge& e : sq2.periodic.edges)
    if (!e.shift.is_zero()) ++wrapped;
  // In a 2x2 block, half of the horizontal/vertical copies wrap.
  CHECK(wrapped == 4);
}

TEST_CASE("face tracing on small quotients", "[periodic_graph]") {
  SECTION("square n=1: one face of degree 4") {
    const auto faces = trace_faces(quotient(square_lattice(), 1));
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].degree() == 4);
  }
  SECTION("honeycomb n=1: one face of degree 6") {
    const auto faces = trace_faces(quotient(load_graph(kHoneycombJson), 1));
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].degree() == 6);
    CHECK(faces[0].net.is_zero());
  }
  SECTION("triangular n=1: two triangles") {
    const auto faces = trace_faces(quotient(triangular_lattice(), 1));
    REQUIRE(faces.size() == 2);
    CHECK(faces[0].degree() == 3);
    CHECK(faces[1].degree() == 3);
  }
}

TEST_CASE("Euler relation V - E + F = 0 on torus quotients", "[periodic_graph]") {
  for (const PeriodicGraph& g :
       {square_lattice(), triangular_lattice(), load_graph(kHoneycombJson)}) {
    for (int n = 1; n <= 3; ++n) {
      const TorusGraph t = quotient(g, n);
      const auto faces = trace_faces(t);
      CHECK(t.vertex_count() - t.edge_count() + int(faces.size()) == 0);
      int total_darts = 0;
      for (const Face& f : faces) total_darts += f.degree();
      CHECK(total_darts == 2 * t.edge_count());
    }
  }
}

TEST_CASE("validate_bipartite", "[periodic_graph]") {
  SECTION("honeycomb succeeds and respects supplied colors") {
    const auto colors = validate_bipartite(load_graph(kHoneycombJson));
    REQUIRE(colors.size() == 2);
    CHECK(colors[0] == Color::white);
    CHECK(colors[1] == Color::black);
  }
  SECTION("triangular fails with an odd cycle witness") {
    try {
      validate_bipartite(triangular_lattice());
      FAIL("expected OddCycleError");
    } catch (const OddCycleError& e) {
      CHECK(e.witness.size() % 2 == 1);
      CHECK(e.witness.size() >= 3);
    }
  }
  SECTION("square lattice has no periodic 2-coloring") {
    CHECK_THROWS_AS(validate_bipartite(square_lattice()), OddCycleError);
  }
  SECTION("bipartite graphs have even faces in the 2x2 quotient") {
    const auto faces = trace_faces(quotient(load_graph(kHoneycombJson), 2));
    for (const Face& f : faces) CHECK(f.degree() % 2 == 0);
  }
  SECTION("triangular has an odd face") {
    const auto faces = trace_faces(quotient(triangular_lattice(), 2));
    bool odd = false;
    for (const Face& f : faces) odd = odd || (f.degree() % 2 == 1);
    CHECK(odd);
  }
}

TEST_CASE("patch drops wrapping edges", "[periodic_graph]") {
  const FiniteGraph p1 = patch(square_lattice(), 2);
  CHECK(p1.num_vertices == 4);
  CHECK(p1.edges.size() == 4);  // interior horizontal + vertical edges only

  const FiniteGraph p2 = patch(load_graph(kHoneycombJson), 2);
  CHECK(p2.num_vertices == 8);
  CHECK(p2.edges.size() == 8);  // 4 in-cell, 2 horizontal, 2 vertical
}
