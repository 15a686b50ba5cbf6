#pragma once

// Z^2-periodic embedded graphs given by a fundamental domain, their finite
// torus quotients, face tracing from the embedding, and bipartite validation.
//
// A PeriodicGraph stores one fundamental domain: vertices with fractional
// positions in [0,1)^2 and edges (u, v, shift) meaning the copy of v in the
// cell translated by `shift`. An optional 2x2 basis maps fractional
// coordinates to the plane; the default is the unit square. All types are
// immutable after construction and safe for concurrent reads.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ckl/geometry.hpp"

namespace ckl {

enum class Color { none, white, black };

struct Vertex {
  std::string id;
  Vec2 pos;                  // fractional coordinates in [0,1)^2
  Color color = Color::none;
};

struct Edge {
  int u = 0, v = 0;          // endpoint indices into `vertices`
  IVec2 shift;               // v lives in the cell translated by `shift`
  double weight = 1.0;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PeriodicGraph {
  std::string name;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  Mat2 basis;  // identity unless the lattice needs a non-square cell

  int vertex_index(const std::string& id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].id == id) return static_cast<int>(i);
    throw GraphError("unknown endpoint '" + id + "'");
  }

  // Plane position of the copy of vertex v living in `cell`.
  Vec2 embed(int v, IVec2 cell = {}) const {
    return basis.apply(vertices[v].pos + Vec2{double(cell.x), double(cell.y)});
  }

  bool has_colors() const {
    return std::all_of(vertices.begin(), vertices.end(),
                       [](const Vertex& v) { return v.color != Color::none; });
  }
};

namespace detail {

inline void normalize_positions(PeriodicGraph& g) {
  std::vector<IVec2> cell(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    Vec2& p = g.vertices[i].pos;
    cell[i] = {int(std::floor(p.x)), int(std::floor(p.y))};
    p = {p.x - cell[i].x, p.y - cell[i].y};
  }
  // Compensate shifts so edge geometry is unchanged (up to translation).
  for (Edge& e : g.edges) e.shift = e.shift + cell[e.v] - cell[e.u];
}

inline void check_structure(const PeriodicGraph& g) {
  std::set<std::string> ids;
  for (const Vertex& v : g.vertices)
    if (!ids.insert(v.id).second) throw GraphError("duplicate vertex id '" + v.id + "'");
  for (const Edge& e : g.edges) {
    if (e.u < 0 || e.u >= int(g.vertices.size()) || e.v < 0 || e.v >= int(g.vertices.size()))
      throw GraphError("unknown endpoint index");
    if (!(e.weight > 0.0)) throw GraphError("nonpositive weight");
    if (e.u == e.v && e.shift.is_zero()) throw GraphError("loop edge within a cell");
  }
  if (std::abs(g.basis.det()) < 1e-12) throw GraphError("degenerate basis");
}

// True iff the generators span all of Z^2 (lattice index 1), via integer
// elimination to a triangular basis.
inline bool spans_z2(const std::vector<IVec2>& gens) {
  long long a = 0, b = 0, d = 0;
  for (const IVec2& gen : gens) {
    long long x = gen.x, y = gen.y;
    while (x != 0) {
      if (a == 0) {
        std::swap(a, x);
        std::swap(b, y);
        break;
      }
      const long long q = x / a;
      x -= q * a;
      y -= q * b;
      if (x != 0) {
        std::swap(a, x);
        std::swap(b, y);
      }
    }
    if (y != 0) d = d == 0 ? std::abs(y) : std::gcd(d, std::abs(y));
  }
  return std::abs(a) == 1 && d == 1;
}

// Connectivity of the infinite periodic graph: the shift-forgotten quotient
// must be connected and the net translations of its cycles must generate Z^2.
inline bool periodic_connected(const PeriodicGraph& g) {
  if (g.vertices.empty()) return false;
  const int V = static_cast<int>(g.vertices.size());
  std::vector<std::vector<std::pair<int, int>>> adj(V);  // (neighbor, edge)
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    adj[g.edges[e].u].push_back({g.edges[e].v, int(e)});
    adj[g.edges[e].v].push_back({g.edges[e].u, int(e)});
  }
  std::vector<char> seen(V, 0);
  std::vector<IVec2> phi(V);  // shift potential along a BFS tree
  std::vector<char> tree_edge(g.edges.size(), 0);
  std::vector<int> order = {0};
  seen[0] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int x = order[head];
    for (auto [y, e] : adj[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      tree_edge[e] = 1;
      const IVec2 s = g.edges[e].u == x ? g.edges[e].shift : -g.edges[e].shift;
      phi[y] = phi[x] + s;
      order.push_back(y);
    }
  }
  if (int(order.size()) != V) return false;
  std::vector<IVec2> gens;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (tree_edge[e]) continue;
    const Edge& ed = g.edges[e];
    gens.push_back(phi[ed.u] + ed.shift - phi[ed.v]);
  }
  return spans_z2(gens);
}

}  // namespace detail

inline void validate_graph(const PeriodicGraph& g) {
  detail::check_structure(g);
  if (!detail::periodic_connected(g))
    throw GraphError("graph is not connected as a periodic graph");
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline PeriodicGraph load_graph(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(std::string("malformed graph file: ") + e.what());
  }
  PeriodicGraph g;
  try {
    g.name = j.value("name", "");
    std::map<std::string, int> index;
    for (const auto& vj : j.at("vertices")) {
      Vertex v;
      v.id = vj.at("id").get<std::string>();
      const auto& p = vj.at("pos");
      if (!p.is_array() || p.size() != 2) throw GraphError("malformed pos");
      v.pos = {p[0].get<double>(), p[1].get<double>()};
      if (vj.contains("color") && !vj["color"].is_null()) {
        const std::string c = vj["color"].get<std::string>();
        if (c == "black") v.color = Color::black;
        else if (c == "white") v.color = Color::white;
        else throw GraphError("unknown color '" + c + "'");
      }
      if (!index.emplace(v.id, int(g.vertices.size())).second)
        throw GraphError("duplicate vertex id '" + v.id + "'");
      g.vertices.push_back(std::move(v));
    }
    for (const auto& ej : j.at("edges")) {
      Edge e;
      const std::string us = ej.at("u").get<std::string>();
      const std::string vs = ej.at("v").get<std::string>();
      auto iu = index.find(us), iv = index.find(vs);
      if (iu == index.end()) throw GraphError("unknown endpoint '" + us + "'");
      if (iv == index.end()) throw GraphError("unknown endpoint '" + vs + "'");
      e.u = iu->second;
      e.v = iv->second;
      const auto& s = ej.at("shift");
      if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer())
        throw GraphError("malformed shift");
      e.shift = {s[0].get<int>(), s[1].get<int>()};
      e.weight = ej.at("weight").get<double>();
      g.edges.push_back(e);
    }
    if (j.contains("basis")) {
      const auto& b = j["basis"];
      if (!b.is_array() || b.size() != 2 || b[0].size() != 2 || b[1].size() != 2)
        throw GraphError("malformed basis");
      // Stored as the two translation vectors (columns).
      g.basis = {b[0][0].get<double>(), b[1][0].get<double>(),
                 b[0][1].get<double>(), b[1][1].get<double>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(std::string("malformed graph file: ") + e.what());
  }
  detail::normalize_positions(g);
  validate_graph(g);
  return g;
}

inline std::string save_graph(const PeriodicGraph& g) {
  nlohmann::json j;
  j["name"] = g.name;
  j["vertices"] = nlohmann::json::array();
  for (const Vertex& v : g.vertices) {
    nlohmann::json vj{{"id", v.id}, {"pos", {v.pos.x, v.pos.y}}};
    if (v.color == Color::none) vj["color"] = nullptr;
    else vj["color"] = v.color == Color::black ? "black" : "white";
    j["vertices"].push_back(vj);
  }
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges)
    j["edges"].push_back({{"u", g.vertices[e.u].id},
                          {"v", g.vertices[e.v].id},
                          {"shift", {e.shift.x, e.shift.y}},
                          {"weight", e.weight}});
  if (!g.basis.is_identity())
    j["basis"] = {{g.basis.a, g.basis.c}, {g.basis.b, g.basis.d}};
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Torus quotients
// ---------------------------------------------------------------------------

// Finite multigraph view used by the matching and spanning-tree oracles.
struct FiniteGraph {
  struct E {
    int u = 0, v = 0;
    double weight = 1.0;
    int base_edge = -1;  // index into the originating PeriodicGraph
    IVec2 base_cell;     // cell of the u endpoint in the patch / quotient
  };
  int num_vertices = 0;
  std::vector<E> edges;
  std::vector<Color> colors;
  std::vector<Vec2> positions;
};

struct TorusGraph {
  int n = 1;
  PeriodicGraph periodic;  // the quotient, rebased as a periodic graph whose
                           // fundamental domain is the n x n block; edge
                           // shifts are the torus winding numbers
  std::string base_name;
  int base_vertex_count = 0;

  int vertex_count() const { return static_cast<int>(periodic.vertices.size()); }
  int edge_count() const { return static_cast<int>(periodic.edges.size()); }

  // The quotient as a plain finite multigraph (windings forgotten).
  FiniteGraph as_finite() const {
    FiniteGraph f;
    f.num_vertices = vertex_count();
    for (std::size_t i = 0; i < periodic.edges.size(); ++i) {
      const Edge& e = periodic.edges[i];
      f.edges.push_back({e.u, e.v, e.weight, int(i), IVec2{}});
    }
    f.colors.resize(f.num_vertices, Color::none);
    f.positions.resize(f.num_vertices);
    for (int v = 0; v < f.num_vertices; ++v) {
      f.colors[v] = periodic.vertices[v].color;
      f.positions[v] = periodic.embed(v);
    }
    return f;
  }
};

inline TorusGraph quotient(const PeriodicGraph& g, int n) {
  if (n < 1) throw GraphError("quotient order must be >= 1");
  const int V = static_cast<int>(g.vertices.size());
  TorusGraph t;
  t.n = n;
  t.base_name = g.name;
  t.base_vertex_count = V;
  PeriodicGraph& q = t.periodic;
  q.name = g.name + "/" + std::to_string(n);
  q.basis = {g.basis.a * n, g.basis.b * n, g.basis.c * n, g.basis.d * n};
  auto vid = [&](int i, int j, int k) { return (i * n + j) * V + k; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < V; ++k) {
        Vertex v = g.vertices[k];
        v.id += "@" + std::to_string(i) + "," + std::to_string(j);
        v.pos = {(v.pos.x + i) / n, (v.pos.y + j) / n};
        q.vertices.push_back(std::move(v));
      }
  auto floordiv = [](int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const Edge& e : g.edges) {
        const int rx = i + e.shift.x, ry = j + e.shift.y;
        const int wx = floordiv(rx, n), wy = floordiv(ry, n);
        Edge q_edge;
        q_edge.u = vid(i, j, e.u);
        q_edge.v = vid(rx - wx * n, ry - wy * n, e.v);
        q_edge.shift = {wx, wy};
        q_edge.weight = e.weight;
        q.edges.push_back(q_edge);
      }
  return t;
}

// Finite planar patch: n x n copies of the fundamental domain with every
// edge that leaves the patch dropped ("cutting open" the torus).
inline FiniteGraph patch(const PeriodicGraph& g, int n) {
  const int V = static_cast<int>(g.vertices.size());
  FiniteGraph f;
  f.num_vertices = n * n * V;
  auto vid = [&](int i, int j, int k) { return (i * n + j) * V + k; };
  f.colors.resize(f.num_vertices, Color::none);
  f.positions.resize(f.num_vertices);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < V; ++k) {
        f.colors[vid(i, j, k)] = g.vertices[k].color;
        f.positions[vid(i, j, k)] = g.embed(k, {i, j});
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (std::size_t m = 0; m < g.edges.size(); ++m) {
        const Edge& e = g.edges[m];
        const int rx = i + e.shift.x, ry = j + e.shift.y;
        if (rx < 0 || rx >= n || ry < 0 || ry >= n) continue;
        f.edges.push_back({vid(i, j, e.u), vid(rx, ry, e.v), e.weight, int(m), IVec2{i, j}});
      }
  return f;
}

// ---------------------------------------------------------------------------
// Face tracing
// ---------------------------------------------------------------------------

// A dart is a directed copy of an edge; `offset` is the cell of its tail
// vertex in the universal-cover frame of the face walk it belongs to.
struct Dart {
  int edge = 0;
  bool rev = false;
  IVec2 offset;
};

struct Face {
  std::vector<Dart> darts;
  IVec2 net;  // accumulated translation around the walk; (0,0) iff contractible
  int degree() const { return static_cast<int>(darts.size()); }
};

namespace detail {

struct DartRef {
  int edge;
  bool rev;
  bool operator==(const DartRef&) const = default;
};

inline int dart_tail(const PeriodicGraph& g, DartRef d) {
  return d.rev ? g.edges[d.edge].v : g.edges[d.edge].u;
}
inline int dart_head(const PeriodicGraph& g, DartRef d) {
  return d.rev ? g.edges[d.edge].u : g.edges[d.edge].v;
}
inline IVec2 dart_shift(const PeriodicGraph& g, DartRef d) {
  return d.rev ? -g.edges[d.edge].shift : g.edges[d.edge].shift;
}
inline Vec2 dart_direction(const PeriodicGraph& g, DartRef d) {
  const Edge& e = g.edges[d.edge];
  const Vec2 from = g.vertices[dart_tail(g, d)].pos;
  const Vec2 to = g.vertices[dart_head(g, d)].pos;
  const IVec2 s = dart_shift(g, d);
  return g.basis.apply(to + Vec2{double(s.x), double(s.y)} - from);
}

}  // namespace detail

// Faces of the toroidal cell complex, traced from the rotation system that
// the embedding induces (darts sorted counterclockwise at each vertex).
// Throws if two darts at a vertex have indistinguishable directions.
inline std::vector<Face> trace_faces(const PeriodicGraph& g) {
  using detail::DartRef;
  const int E = static_cast<int>(g.edges.size());
  // Collect darts per tail vertex and sort by angle.
  std::vector<std::vector<DartRef>> at_vertex(g.vertices.size());
  for (int e = 0; e < E; ++e) {
    at_vertex[g.edges[e].u].push_back({e, false});
    at_vertex[g.edges[e].v].push_back({e, true});
  }
  for (std::size_t v = 0; v < at_vertex.size(); ++v) {
    auto& darts = at_vertex[v];
    std::vector<double> ang(darts.size());
    for (std::size_t i = 0; i < darts.size(); ++i) {
      const Vec2 dir = detail::dart_direction(g, darts[i]);
      if (dir.norm() < 1e-12) throw GraphError("zero-length edge in embedding");
      ang[i] = dir.angle();
    }
    std::vector<std::size_t> order(darts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ang[a] < ang[b]; });
    std::vector<DartRef> sorted;
    for (std::size_t i : order) sorted.push_back(darts[i]);
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
      if (std::abs(ang[order[i + 1]] - ang[order[i]]) < 1e-12)
        throw GraphError("coincident edge directions at vertex '" + g.vertices[v].id + "'");
    darts = std::move(sorted);
  }
  // Clockwise-next from the reversal traces counterclockwise faces.
  auto next_dart = [&](DartRef d) {
    const DartRef r{d.edge, !d.rev};
    const auto& ring = at_vertex[detail::dart_tail(g, r)];
    for (std::size_t i = 0; i < ring.size(); ++i)
      if (ring[i] == r) return ring[(i + ring.size() - 1) % ring.size()];
    throw GraphError("rotation system inconsistency");
  };
  std::vector<std::vector<char>> used(E, std::vector<char>(2, 0));
  std::vector<Face> faces;
  for (int e = 0; e < E; ++e)
    for (int r = 0; r < 2; ++r) {
      if (used[e][r]) continue;
      Face face;
      DartRef d{e, r == 1};
      IVec2 offset{};
      do {
        used[d.edge][d.rev ? 1 : 0] = 1;
        face.darts.push_back({d.edge, d.rev, offset});
        offset = offset + detail::dart_shift(g, d);
        d = next_dart(d);
      } while (!(d.edge == e && d.rev == (r == 1)));
      face.net = offset;
      faces.push_back(std::move(face));
    }
  return faces;
}

inline std::vector<Face> trace_faces(const TorusGraph& t) { return trace_faces(t.periodic); }

// ---------------------------------------------------------------------------
// Bipartite validation
// ---------------------------------------------------------------------------

class OddCycleError : public GraphError {
 public:
  explicit OddCycleError(std::vector<std::string> cycle)
      : GraphError(compose(cycle)), witness(std::move(cycle)) {}
  std::vector<std::string> witness;

 private:
  static std::string compose(const std::vector<std::string>& cycle) {
    std::string msg = "graph is not bipartite; odd cycle:";
    for (const auto& v : cycle) msg += " " + v;
    return msg;
  }
};

// A 2-coloring of the fundamental domain consistent across all shifts, i.e.
// a coloring with every edge bichromatic regardless of translation. When the
// graph is not bipartite in this periodic sense, an odd closed walk in the
// 2x2 quotient is reported as witness. Supplied colors are verified.
inline std::vector<Color> validate_bipartite(const PeriodicGraph& g) {
  const int V = static_cast<int>(g.vertices.size());
  std::vector<int> color(V, -1);
  std::vector<int> parent_edge(V, -1);
  std::vector<int> order;
  color[0] = 0;
  order.push_back(0);
  std::vector<std::vector<std::pair<int, int>>> adj(V);  // (neighbor, edge)
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    adj[g.edges[e].u].push_back({g.edges[e].v, int(e)});
    adj[g.edges[e].v].push_back({g.edges[e].u, int(e)});
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    const int x = order[head];
    for (auto [y, e] : adj[x]) {
      if (color[y] == -1) {
        color[y] = 1 - color[x];
        parent_edge[y] = e;
        order.push_back(y);
      } else if (color[y] == color[x]) {
        // Conflict: produce an odd-cycle witness from the 2x2 quotient,
        // where triangles and other short odd walks appear explicitly.
        const TorusGraph q2 = quotient(g, 2);
        const int W = q2.vertex_count();
        std::vector<int> c2(W, -1), par(W, -1);
        std::vector<int> bfs = {0};
        c2[0] = 0;
        std::vector<std::vector<std::pair<int, int>>> a2(W);
        for (const Edge& qe : q2.periodic.edges) {
          a2[qe.u].push_back({qe.v, 0});
          a2[qe.v].push_back({qe.u, 0});
        }
        for (std::size_t h2 = 0; h2 < bfs.size(); ++h2) {
          const int p = bfs[h2];
          for (auto [r, _] : a2[p]) {
            if (c2[r] == -1) {
              c2[r] = 1 - c2[p];
              par[r] = p;
              bfs.push_back(r);
            } else if (c2[r] == c2[p]) {
              std::vector<int> pa, pb;
              for (int t = p; t != -1; t = par[t]) pa.push_back(t);
              for (int t = r; t != -1; t = par[t]) pb.push_back(t);
              // Trim the common tail of the two root paths.
              while (pa.size() > 1 && pb.size() > 1 && pa[pa.size() - 2] == pb[pb.size() - 2]) {
                pa.pop_back();
                pb.pop_back();
              }
              std::vector<std::string> cycle;
              for (int t : pa) cycle.push_back(q2.periodic.vertices[t].id);
              for (auto it = pb.rbegin() + 1; it != pb.rend(); ++it)
                cycle.push_back(q2.periodic.vertices[*it].id);
              throw OddCycleError(std::move(cycle));
            }
          }
        }
        throw OddCycleError({g.vertices[x].id, g.vertices[y].id});
      }
    }
  }
  if (int(order.size()) != V) throw GraphError("graph is not connected as a periodic graph");
  // Align with supplied colors when present; they fix the orientation.
  std::vector<Color> result(V);
  bool flip = false;
  for (int v = 0; v < V; ++v)
    if (g.vertices[v].color != Color::none) {
      flip = (g.vertices[v].color == Color::black) != (color[v] == 1);
      break;
    }
  for (int v = 0; v < V; ++v) {
    const bool black = (color[v] == 1) != flip;
    result[v] = black ? Color::black : Color::white;
    if (g.vertices[v].color != Color::none && g.vertices[v].color != result[v])
      throw GraphError("supplied colors are not a valid bipartition");
  }
  return result;
}

// Convenience: return a copy with colors attached (or verified).
inline PeriodicGraph with_bipartite_colors(const PeriodicGraph& g) {
  const auto colors = validate_bipartite(g);
  PeriodicGraph out = g;
  for (std::size_t v = 0; v < out.vertices.size(); ++v) out.vertices[v].color = colors[v];
  return out;
}

}  // namespace ckl
