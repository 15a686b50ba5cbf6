#pragma once

// Isoradial embeddings: validation, rhombus half-angles, critical weights,
// and the closed-form Mahler measure of critical dimer models
//   M = sum_e L(theta_e)/pi + (theta_e/pi) log(2 sin theta_e)
// over a fundamental domain, together with the dual polyhedron volume
// sum_e L(theta_e).

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ckl/periodic_graph.hpp"
#include "ckl/special_functions.hpp"

namespace ckl {

struct IsoradialEmbedding {
  PeriodicGraph graph;
  double radius = 0.0;
  std::vector<double> theta;  // per edge, in (0, pi/2]
  std::vector<Face> faces;
  std::vector<Vec2> circumcenter;  // per face, in the frame of its walk
};

class IsoradialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Vec2 circumcenter_of(const std::vector<Vec2>& pts) {
  // Perpendicular-bisector intersection from a maximally non-collinear triple.
  const std::size_t n = pts.size();
  double best = 0.0;
  Vec2 c{};
  bool found = false;
  for (std::size_t i = 0; i < n && !found; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Vec2 a = pts[i], b = pts[j], d = pts[k];
        const double cross = (b - a).cross(d - a);
        if (std::abs(cross) <= best) continue;
        best = std::abs(cross);
        const double a2 = a.dot(a), b2 = b.dot(b), d2 = d.dot(d);
        c = {(a2 * (b.y - d.y) + b2 * (d.y - a.y) + d2 * (a.y - b.y)) / (2.0 * cross),
             (a2 * (d.x - b.x) + b2 * (a.x - d.x) + d2 * (b.x - a.x)) / (2.0 * cross)};
      }
  if (best < 1e-12) throw IsoradialError("degenerate (collinear) face");
  return c;
}

// Boundary-inclusive point-in-polygon: distance to the boundary within tol
// counts as inside, otherwise crossing parity.
inline bool point_in_closure(const std::vector<Vec2>& poly, Vec2 p, double tol) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % n];
    const Vec2 ab = b - a;
    const double t = std::clamp(ab.dot(p - a) / std::max(ab.dot(ab), 1e-300), 0.0, 1.0);
    if (distance(a + ab * t, p) <= tol) return true;
  }
  bool inside = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (x > p.x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace detail

// Validate that the embedding is isoradial: every face cyclic with common
// circumradius (r if supplied, else inferred from the first face) and
// circumcenters inside face closures; extract the rhombus half-angle of each
// edge from the two flanking circumcenters.
inline IsoradialEmbedding check_isoradial(const PeriodicGraph& g,
                                          std::optional<double> r = std::nullopt,
                                          double tol = 1e-7) {
  IsoradialEmbedding e;
  e.graph = g;
  e.faces = trace_faces(g);
  const int E = static_cast<int>(g.edges.size());
  const int F = static_cast<int>(e.faces.size());
  if (int(g.vertices.size()) - E + F != 0)
    throw IsoradialError("embedding is not cellular on the torus");

  e.circumcenter.resize(F);
  double radius = r.value_or(0.0);
  for (int f = 0; f < F; ++f) {
    const Face& face = e.faces[f];
    if (!face.net.is_zero())
      throw IsoradialError("face " + std::to_string(f) + " is not a disk");
    std::vector<Vec2> corners;
    for (const Dart& d : face.darts) {
      const int tail = d.rev ? g.edges[d.edge].v : g.edges[d.edge].u;
      corners.push_back(g.embed(tail, d.offset));
    }
    const Vec2 c = detail::circumcenter_of(corners);
    const double scale = std::max(1.0, radius);
    double rf = 0.0;
    for (const Vec2& p : corners) rf = std::max(rf, distance(c, p));
    for (const Vec2& p : corners)
      if (std::abs(distance(c, p) - rf) > tol * scale)
        throw IsoradialError("face " + std::to_string(f) + " is not cyclic");
    if (radius == 0.0) {
      radius = rf;
    } else if (std::abs(rf - radius) > tol * std::max(1.0, radius)) {
      throw IsoradialError("face " + std::to_string(f) + " has mismatched circumradius " +
                           std::to_string(rf) + " vs " + std::to_string(radius));
    }
    if (!detail::point_in_closure(corners, c, tol * std::max(1.0, radius)))
      throw IsoradialError("circumcenter of face " + std::to_string(f) +
                           " lies outside the face closure");
    e.circumcenter[f] = c;
  }
  e.radius = radius;

  // Locate the face and walk-offset of each dart.
  std::vector<std::array<int, 2>> face_of(E, {-1, -1});
  std::vector<std::array<IVec2, 2>> offset_of(E);
  for (int f = 0; f < F; ++f)
    for (const Dart& d : e.faces[f].darts) {
      face_of[d.edge][d.rev ? 1 : 0] = f;
      offset_of[d.edge][d.rev ? 1 : 0] = d.offset;
    }
  e.theta.resize(E);
  for (int ed = 0; ed < E; ++ed) {
    const Edge& edge = g.edges[ed];
    const Vec2 u = g.embed(edge.u), v = g.embed(edge.v, edge.shift);
    // Translate each flanking face's circumcenter into the edge frame: the
    // forward dart's tail is u, the reversed dart's tail is v in cell shift.
    const Vec2 c1 = e.circumcenter[face_of[ed][0]] - g.basis.apply(offset_of[ed][0]);
    const Vec2 c2 = e.circumcenter[face_of[ed][1]] +
                    g.basis.apply(edge.shift - offset_of[ed][1]);
    const double scale = std::max(1.0, radius);
    for (const Vec2& c : {c1, c2})
      for (const Vec2& p : {u, v})
        if (std::abs(distance(c, p) - radius) > 10 * tol * scale)
          throw IsoradialError("edge " + std::to_string(ed) + " has a broken rhombus");
    // Rhombus diagonals: the edge itself and the circumcenter segment.
    e.theta[ed] = std::atan2(distance(c1, c2), distance(u, v));
  }
  return e;
}

// Critical weight function nu(e) = 2 sin(theta_e).
inline std::vector<double> critical_weights(const IsoradialEmbedding& e) {
  std::vector<double> w(e.theta.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 2.0 * std::sin(e.theta[i]);
  return w;
}

inline PeriodicGraph with_critical_weights(const IsoradialEmbedding& e) {
  PeriodicGraph g = e.graph;
  for (std::size_t i = 0; i < g.edges.size(); ++i) g.edges[i].weight = 2.0 * std::sin(e.theta[i]);
  return g;
}

// Closed-form Mahler measure of the critical-weight characteristic
// polynomial, as an edge sum over the fundamental domain.
inline double isoradial_mahler_from_angles(const std::vector<double>& theta) {
  double sum = 0.0;
  for (double t : theta) {
    if (!(t > 0.0) || t > kPi / 2.0 + 1e-12)
      throw IsoradialError("rhombus half-angle out of (0, pi/2]");
    sum += lobachevsky(t) / kPi + (t / kPi) * std::log(2.0 * std::sin(t));
  }
  return sum;
}

inline double isoradial_mahler(const IsoradialEmbedding& e) {
  return isoradial_mahler_from_angles(e.theta);
}

// Volume of the hyperbolic polyhedron defined by the dual graph.
inline double dual_polyhedron_volume(const IsoradialEmbedding& e) {
  double sum = 0.0;
  for (double t : e.theta) sum += lobachevsky(t);
  return sum;
}

}  // namespace ckl
