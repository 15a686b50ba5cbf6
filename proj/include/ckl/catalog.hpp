#pragma once

// The example catalog: the Z^2-periodic lattices appearing in the
// Champanerkar-Kofman-Lalin verification, their induced dimer graphs, link
// face data, and the expected values quoted from the literature.
//
// Lattice constructions are validated by the tests reproducing the published
// spanning-tree entropies and Mahler measures, not trusted by eye.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ckl/periodic_graph.hpp"
#include "ckl/spanning_tree.hpp"
#include "ckl/special_functions.hpp"

namespace ckl::catalog {

inline constexpr double kSqrt3Half = 0.86602540378443864676;

// Basis with translation vectors (1,0) and (1/2, sqrt(3)/2).
inline Mat2 triangular_basis() { return {1.0, 0.5, 0.0, kSqrt3Half}; }

inline PeriodicGraph square_lattice() {
  PeriodicGraph g;
  g.name = "square";
  g.vertices = {{"a", {0.0, 0.0}, Color::none}};
  g.edges = {{0, 0, {1, 0}, 1.0}, {0, 0, {0, 1}, 1.0}};
  validate_graph(g);
  return g;
}

// Equilateral triangular lattice: neighbors t1, t2 and t1 - t2.
inline PeriodicGraph triangular_lattice() {
  PeriodicGraph g;
  g.name = "triangular";
  g.basis = triangular_basis();
  g.vertices = {{"a", {0.0, 0.0}, Color::none}};
  g.edges = {{0, 0, {1, 0}, 1.0}, {0, 0, {0, 1}, 1.0}, {0, 0, {1, -1}, 1.0}};
  validate_graph(g);
  return g;
}

inline PeriodicGraph honeycomb_lattice() {
  PeriodicGraph g;
  g.name = "honeycomb";
  g.basis = triangular_basis();
  const double a = 1.0 / 3.0, b = 2.0 / 3.0;
  g.vertices = {{"u", {a, a}, Color::white}, {"v", {b, b}, Color::black}};
  g.edges = {{0, 1, {0, 0}, 1.0}, {0, 1, {-1, 0}, 1.0}, {0, 1, {0, -1}, 1.0}};
  validate_graph(g);
  return g;
}

// Kagome: sites at the midpoints of the triangular lattice edges, one
// triangle of edges per triangular face.
inline PeriodicGraph kagome_lattice() {
  PeriodicGraph g;
  g.name = "kagome";
  g.basis = triangular_basis();
  g.vertices = {{"a", {0.5, 0.0}, Color::none},
                {"b", {0.0, 0.5}, Color::none},
                {"c", {0.5, 0.5}, Color::none}};
  g.edges = {{0, 1, {0, 0}, 1.0}, {1, 2, {0, 0}, 1.0}, {2, 0, {0, 0}, 1.0},
             {2, 1, {1, 0}, 1.0}, {2, 0, {0, 1}, 1.0}, {1, 0, {-1, 1}, 1.0}};
  validate_graph(g);
  return g;
}

// 3.12.12 lattice: the honeycomb with every vertex expanded into a triangle.
inline PeriodicGraph three_twelve_lattice() {
  PeriodicGraph g;
  g.name = "three-twelve-twelve";
  g.basis = triangular_basis();
  const Vec2 u{1.0 / 3.0, 1.0 / 3.0}, v{2.0 / 3.0, 2.0 / 3.0};
  const double eps = 0.25;
  // u_i points at u displaced toward v + s_i; likewise for v_j toward u - s_j.
  const IVec2 us[3] = {{0, 0}, {-1, 0}, {0, -1}};
  for (int i = 0; i < 3; ++i) {
    const Vec2 dir = v + Vec2{double(us[i].x), double(us[i].y)} - u;
    g.vertices.push_back({"u" + std::to_string(i), u + dir * eps, Color::none});
  }
  for (int i = 0; i < 3; ++i) {
    const Vec2 dir = u - Vec2{double(us[i].x), double(us[i].y)} - v;
    g.vertices.push_back({"v" + std::to_string(i), v + dir * eps, Color::none});
  }
  // Honeycomb edges between matching decoration vertices, then the triangles.
  g.edges = {{0, 3, {0, 0}, 1.0}, {1, 4, {-1, 0}, 1.0}, {2, 5, {0, -1}, 1.0},
             {0, 1, {0, 0}, 1.0}, {1, 2, {0, 0}, 1.0},  {2, 0, {0, 0}, 1.0},
             {3, 4, {0, 0}, 1.0}, {4, 5, {0, 0}, 1.0},  {5, 3, {0, 0}, 1.0}};
  detail::normalize_positions(g);
  validate_graph(g);
  return g;
}

// "Nine" lattice: triangular lattice plus the center of every upward
// triangle joined to its three corners.
inline PeriodicGraph nine_lattice() {
  PeriodicGraph g;
  g.name = "nine";
  g.basis = triangular_basis();
  g.vertices = {{"a", {0.0, 0.0}, Color::none}, {"c", {1.0 / 3.0, 1.0 / 3.0}, Color::none}};
  g.edges = {{0, 0, {1, 0}, 1.0},  {0, 0, {0, 1}, 1.0}, {0, 0, {1, -1}, 1.0},
             {1, 0, {0, 0}, 1.0},  {1, 0, {1, 0}, 1.0}, {1, 0, {0, 1}, 1.0}};
  validate_graph(g);
  return g;
}

// 4.8.8 "bathroom tile" lattice: a small diamond per cell, linked to its
// horizontal and vertical neighbors; regular octagons for d = 1/(2+sqrt 2).
inline PeriodicGraph four_eight_lattice() {
  PeriodicGraph g;
  g.name = "four-eight-eight";
  const double d = 0.29289321881345254;  // 1/(2+sqrt(2))
  g.vertices = {{"A", {0.5 - d, 0.5}, Color::none},
                {"B", {0.5, 0.5 - d}, Color::none},
                {"C", {0.5 + d, 0.5}, Color::none},
                {"D", {0.5, 0.5 + d}, Color::none}};
  g.edges = {{0, 1, {0, 0}, 1.0},  {1, 2, {0, 0}, 1.0}, {2, 3, {0, 0}, 1.0},
             {3, 0, {0, 0}, 1.0},  {0, 2, {-1, 0}, 1.0}, {1, 3, {0, -1}, 1.0}};
  validate_graph(g);
  return g;
}

// Kite lattice: the medial (line graph) of 4.8.8; its quadrilateral faces
// are kites. Vertices sit at the 4.8.8 edge midpoints.
inline PeriodicGraph kite_lattice() {
  const PeriodicGraph base = four_eight_lattice();
  PeriodicGraph g;
  g.name = "kite";
  auto mid = [&](int e) {
    const Edge& ed = base.edges[e];
    return (base.vertices[ed.u].pos + base.vertices[ed.v].pos +
            Vec2{double(ed.shift.x), double(ed.shift.y)}) / 2.0;
  };
  const char* names[6] = {"AB", "BC", "CD", "DA", "AC", "BD"};
  for (int e = 0; e < 6; ++e) g.vertices.push_back({names[e], mid(e), Color::none});
  // Pairs of incident 4.8.8 edges around each of A, B, C, D.
  g.edges = {
      {0, 3, {0, 0}, 1.0}, {0, 4, {0, 0}, 1.0}, {3, 4, {0, 0}, 1.0},  // at A
      {0, 1, {0, 0}, 1.0}, {0, 5, {0, 0}, 1.0}, {1, 5, {0, 0}, 1.0},  // at B
      {1, 2, {0, 0}, 1.0}, {1, 4, {1, 0}, 1.0}, {2, 4, {1, 0}, 1.0},  // at C
      {2, 3, {0, 0}, 1.0}, {2, 5, {0, 1}, 1.0}, {3, 5, {0, 1}, 1.0},  // at D
  };
  detail::normalize_positions(g);
  validate_graph(g);
  return g;
}

inline const std::map<std::string, std::function<PeriodicGraph()>>& lattice_registry() {
  static const std::map<std::string, std::function<PeriodicGraph()>> reg = {
      {"square", square_lattice},
      {"triangular", triangular_lattice},
      {"honeycomb", honeycomb_lattice},
      {"kagome", kagome_lattice},
      {"three-twelve-twelve", three_twelve_lattice},
      {"nine", nine_lattice},
      {"four-eight-eight", four_eight_lattice},
      {"kite", kite_lattice},
  };
  return reg;
}

inline PeriodicGraph lattice_by_name(const std::string& name) {
  const auto& reg = lattice_registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw GraphError("unknown lattice '" + name + "'");
  return it->second();
}

// ---------------------------------------------------------------------------
// Example records
// ---------------------------------------------------------------------------

struct ExpectedValue {
  double value = 0.0;
  std::string source;  // literature citation for the quoted number
};

struct ExampleRecord {
  std::string name;
  PeriodicGraph tait;
  PeriodicGraph dimer;            // Temperley lift of the Tait graph
  std::vector<int> face_degrees;  // link diagram faces; empty if not transcribed
  std::optional<double> vol_closed_form;  // exact form when the face data is not
  std::optional<ExpectedValue> expected_two_pi_m;
  std::optional<ExpectedValue> expected_vol;
  bool isoradial = false;          // critical isoradial embedding available
  std::vector<double> gauge_factors;  // per dimer vertex, critical -> uniform
};

inline std::vector<std::string> example_names() {
  return {"triaxial",  "weave", "rhombitrihexagonal", "three-twelve-twelve",
          "nine", "four-eight-eight", "kite"};
}

inline ExampleRecord example_record(const std::string& name) {
  ExampleRecord r;
  r.name = name;
  if (name == "triaxial") {
    r.tait = triangular_lattice();
    r.dimer = temperley_lift(r.tait);
    r.face_degrees = {3, 3, 6};
    r.vol_closed_form = 10.0 * v_tet();
    r.expected_two_pi_m = ExpectedValue{10.0 * v_tet(), "Champanerkar-Kofman-Lalin"};
    r.isoradial = true;
    // Blue edges carry weight sqrt(3): exactly those at the two face-center
    // black vertices. Scaling them by 1/sqrt(3) restores uniform weights.
    r.gauge_factors.assign(r.dimer.vertices.size(), 1.0);
    for (std::size_t v = 0; v < r.dimer.vertices.size(); ++v)
      if (r.dimer.vertices[v].id.rfind("f", 0) == 0)
        r.gauge_factors[v] = 1.0 / std::sqrt(3.0);
  } else if (name == "weave") {
    r.tait = square_lattice();
    r.dimer = temperley_lift(r.tait);
    r.vol_closed_form = 2.0 * v_oct();
    r.expected_two_pi_m = ExpectedValue{2.0 * v_oct(), "Champanerkar-Kofman-Lalin"};
    r.isoradial = true;
    // All edges carry sqrt(2); scaling every black vertex by 1/sqrt(2)
    // restores uniform weights.
    r.gauge_factors.assign(r.dimer.vertices.size(), 1.0);
    for (std::size_t v = 0; v < r.dimer.vertices.size(); ++v)
      if (r.dimer.vertices[v].color == Color::black)
        r.gauge_factors[v] = 1.0 / std::sqrt(2.0);
  } else if (name == "rhombitrihexagonal") {
    r.tait = kagome_lattice();
    r.dimer = temperley_lift(r.tait);
    r.expected_two_pi_m = ExpectedValue{21.407368, "Champanerkar-Kofman-Lalin"};
  } else if (name == "three-twelve-twelve") {
    r.tait = three_twelve_lattice();
    r.dimer = temperley_lift(r.tait);
    r.face_degrees = {12, 3, 3, 3, 3, 3, 3, 3, 3};
    r.expected_two_pi_m = ExpectedValue{27.164592, "Teufl-Wagner"};
    r.expected_vol = ExpectedValue{26.6109, "Adams"};
  } else if (name == "nine") {
    r.tait = nine_lattice();
    r.dimer = temperley_lift(r.tait);
    r.face_degrees = {9, 3, 3, 3, 3, 3};
    r.expected_two_pi_m = ExpectedValue{18.859756, "Teufl-Wagner"};
    r.expected_vol = ExpectedValue{18.7326, "Adams"};
  } else if (name == "four-eight-eight") {
    r.tait = four_eight_lattice();
    r.dimer = temperley_lift(r.tait);
    r.face_degrees = {8, 4, 3, 3, 3, 3};
    r.expected_two_pi_m = ExpectedValue{19.7715323218, "Chang-Shrock"};
    r.expected_vol = ExpectedValue{19.6379, "Adams"};
  } else if (name == "kite") {
    r.tait = kite_lattice();
    r.dimer = temperley_lift(r.tait);
    r.face_degrees = {8, 4, 4, 4, 4, 4, 4, 4, 3, 3, 3, 3};
    r.expected_two_pi_m = ExpectedValue{42.287446, "Teufl-Wagner"};
    r.expected_vol = ExpectedValue{41.6207, "Adams"};
  } else {
    throw GraphError("unknown example '" + name + "'");
  }
  return r;
}

}  // namespace ckl::catalog
