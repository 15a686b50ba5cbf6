#pragma once

// Spanning-tree counting and entropy per fundamental domain for periodic
// graphs, plus the generalized Temperley lift connecting trees to dimers.
//
// Counting routes, kept independent on purpose:
//   - count_spanning_trees: exact Matrix-Tree determinant (fraction-free
//     Bareiss over big integers; dyadic weights are scaled exactly);
//   - spectral_log_tree_count: Fourier block decomposition of the torus
//     Laplacian, log det per block, usable far beyond big-integer range.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "ckl/kasteleyn.hpp"
#include "ckl/mahler.hpp"
#include "ckl/periodic_graph.hpp"
#include "ckl/special_functions.hpp"

namespace ckl {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct TreeCount {
  BigRational count;
  bool connected = true;  // false flags the disconnected-input warning
};

namespace detail {

inline bool finite_connected(const FiniteGraph& h) {
  if (h.num_vertices == 0) return false;
  std::vector<std::vector<int>> adj(h.num_vertices);
  for (const auto& e : h.edges)
    if (e.u != e.v) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  std::vector<char> seen(h.num_vertices, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int cnt = 0;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    ++cnt;
    for (int y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
  }
  return cnt == h.num_vertices;
}

// Fraction-free Bareiss determinant; the matrix is the reduced Laplacian,
// positive definite for connected input, so pivots never vanish.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  BigInt prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      std::swap(m[k], m[piv]);
      for (auto& row : m) row[k] = -row[k];  // keep the determinant sign
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return m[n - 1][n - 1];
}

// Exact dyadic decomposition of a double: w = mantissa * 2^exp2.
inline void dyadic_parts(double w, BigInt& mantissa, int& exp2) {
  int e = 0;
  double m = std::frexp(w, &e);  // w = m * 2^e, |m| in [0.5, 1)
  // scale mantissa to an integer (53 bits suffice)
  long long im = static_cast<long long>(std::ldexp(m, 53));
  while (im != 0 && im % 2 == 0) {
    im /= 2;
    ++e;
  }
  mantissa = im;
  exp2 = e - 53;
}

}  // namespace detail

// Weighted spanning-tree count by the Matrix-Tree theorem, exact for any
// weights representable in double (treated as exact dyadic rationals).
// Disconnected input returns 0 with the warning flag.
inline TreeCount count_spanning_trees(const FiniteGraph& h) {
  if (h.num_vertices > 4096) throw GraphError("count_spanning_trees: too many vertices");
  if (h.num_vertices == 0) return {0, false};
  if (!detail::finite_connected(h)) return {0, false};
  if (h.num_vertices == 1) return {1, true};

  // Clear denominators: scale every weight by 2^s.
  int min_exp = 0;
  std::vector<std::pair<BigInt, int>> parts(h.edges.size());
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    detail::dyadic_parts(h.edges[i].weight, parts[i].first, parts[i].second);
    min_exp = std::min(min_exp, parts[i].second);
  }
  const int s = -min_exp;

  const int n = h.num_vertices - 1;  // reduced Laplacian: drop the last vertex
  std::vector<std::vector<BigInt>> L(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    const auto& e = h.edges[i];
    if (e.u == e.v) continue;
    const BigInt w = parts[i].first << (parts[i].second + s);
    if (e.u < n) L[e.u][e.u] += w;
    if (e.v < n) L[e.v][e.v] += w;
    if (e.u < n && e.v < n) {
      L[e.u][e.v] -= w;
      L[e.v][e.u] -= w;
    }
  }
  const BigInt det = detail::bareiss_determinant(std::move(L));
  // Undo the scaling: each spanning tree has V-1 edges.
  BigRational result(det);
  if (s > 0) result /= BigRational(BigInt(1) << (std::size_t(s) * (h.num_vertices - 1)));
  return {result, true};
}

// ---------------------------------------------------------------------------
// Spectral route
// ---------------------------------------------------------------------------

// Fourier block of the periodic Laplacian: diagonal holds weighted degrees,
// the (u,v) entry subtracts weight * z^a w^b per edge u->v with shift (a,b).
inline Eigen::MatrixXcd laplacian_block(const PeriodicGraph& g, Cd z, Cd w) {
  const int V = static_cast<int>(g.vertices.size());
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(V, V);
  for (const Edge& e : g.edges) {
    const Cd m = std::pow(z, e.shift.x) * std::pow(w, e.shift.y);
    L(e.u, e.u) += e.weight;
    L(e.v, e.v) += e.weight;
    L(e.u, e.v) -= e.weight * m;
    L(e.v, e.u) -= e.weight / m;
  }
  return L;
}

// log N_ST(T_n) via the Fourier decomposition:
//   log N = -log(n^2 N_v) + sum_{(j,k) != (0,0)} log det L(w^j, w^k)
//           + sum of log of the nonzero eigenvalues of L(1,1).
inline double spectral_log_tree_count(const PeriodicGraph& g, int n) {
  if (n < 1) throw GraphError("spectral_log_tree_count: n must be >= 1");
  const int V = static_cast<int>(g.vertices.size());
  double total = -std::log(double(n) * n * V);

  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == 0 && k == 0) continue;
      const Cd z = std::polar(1.0, 2.0 * kPi * j / n);
      const Cd w = std::polar(1.0, 2.0 * kPi * k / n);
      const Eigen::MatrixXcd L = laplacian_block(g, z, w);
      const Cd det = L.partialPivLu().determinant();
      const double mag = std::abs(det);
      if (!(mag > 1e-12))
        throw GraphError("singular Fourier block: periodic graph disconnected?");
      total += std::log(mag);
    }

  // Zero-mode block at (1,1): real symmetric Laplacian of the n=1 quotient.
  Eigen::MatrixXd L0 = laplacian_block(g, {1.0, 0.0}, {1.0, 0.0}).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L0);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev(V - 1));
  if (std::abs(ev(0)) > 1e-9 * scale) throw GraphError("Laplacian zero mode missing");
  for (int i = 1; i < V; ++i) {
    if (ev(i) < 1e-9 * scale) throw GraphError("quotient graph disconnected");
    total += std::log(ev(i));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Entropy extrapolation
// ---------------------------------------------------------------------------

struct TreeEntropy {
  double per_fd = 0.0;
  double per_vertex = 0.0;
  int n_v = 0;
  std::string method;
  double error_estimate = 0.0;
  std::vector<int> schedule;
};

namespace detail {

// Solve the small dense least-squares problem A x = y in long double via
// normal equations; sizes here are at most 5x5.
inline std::vector<long double> solve_least_squares(
    const std::vector<std::vector<long double>>& A, const std::vector<long double>& y) {
  const std::size_t m = A.size(), k = A[0].size();
  std::vector<std::vector<long double>> N(k, std::vector<long double>(k + 1, 0.0L));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t r = 0; r < m; ++r) N[i][j] += A[r][i] * A[r][j];
    for (std::size_t r = 0; r < m; ++r) N[i][k] += A[r][i] * y[r];
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(N[r][c]) > std::abs(N[piv][c])) piv = r;
    std::swap(N[c], N[piv]);
    if (std::abs(N[c][c]) < 1e-30L) throw GraphError("degenerate extrapolation fit");
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const long double f = N[r][c] / N[c][c];
      for (std::size_t j = c; j <= k; ++j) N[r][j] -= f * N[c][j];
    }
  }
  std::vector<long double> x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = N[i][k] / N[i][i];
  return x;
}

// Fit (1/n^2) log N = z + (c1 log n + c2)/n^2 [+ c3/n^4 + c4 log n/n^4] and
// return the constant term.
inline long double fit_entropy(const std::vector<int>& ns, const std::vector<long double>& ys,
                               std::size_t terms) {
  const std::size_t m = ns.size();
  terms = std::min(terms, m);
  std::vector<std::vector<long double>> A(m, std::vector<long double>(terms));
  for (std::size_t r = 0; r < m; ++r) {
    const long double n = ns[r];
    const long double n2 = n * n, ln = std::log(n);
    const long double basis[5] = {1.0L, ln / n2, 1.0L / n2, ln / (n2 * n2), 1.0L / (n2 * n2)};
    for (std::size_t c = 0; c < terms; ++c) A[r][c] = basis[c];
  }
  return solve_least_squares(A, ys)[0];
}

}  // namespace detail

// Spanning-tree entropy per fundamental domain: the n -> infinity limit of
// (1/n^2) log N_ST(T_n), via the spectral formula on the given schedule with
// a finite-size fit. The leading corrections are (c1 log n + c2)/n^2 from the
// zero-mode neighbourhood, then a 1/n^4 tail.
inline TreeEntropy tree_entropy_fd(const PeriodicGraph& g,
                                   std::vector<int> schedule = {16, 32, 64, 128}) {
  if (schedule.size() < 3) throw GraphError("tree entropy schedule needs >= 3 sizes");
  std::sort(schedule.begin(), schedule.end());
  std::vector<long double> ys(schedule.size());
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const int n = schedule[i];
    ys[i] = static_cast<long double>(spectral_log_tree_count(g, n)) /
            (static_cast<long double>(n) * n);
  }
  const std::size_t full_terms = std::min<std::size_t>(schedule.size(), 5);
  const long double z_full = detail::fit_entropy(schedule, ys, full_terms);
  // Convergence probe: drop the smallest n and refit.
  std::vector<int> tail_ns(schedule.begin() + 1, schedule.end());
  std::vector<long double> tail_ys(ys.begin() + 1, ys.end());
  const long double z_tail =
      detail::fit_entropy(tail_ns, tail_ys, std::min<std::size_t>(tail_ns.size(), 5));
  const double err = std::max(double(std::abs(z_full - z_tail)), 1e-13);
  if (err > 1e-3) throw GraphError("tree entropy extrapolation did not converge");

  TreeEntropy t;
  t.n_v = static_cast<int>(g.vertices.size());
  t.per_fd = static_cast<double>(z_tail);
  t.per_vertex = t.per_fd / t.n_v;
  t.method = "spectral";
  t.error_estimate = err;
  t.schedule = std::move(schedule);
  return t;
}

// ---------------------------------------------------------------------------
// Temperley lift
// ---------------------------------------------------------------------------

PeriodicGraph temperley_lift(const PeriodicGraph& t);

// Both ends of the tree-dimer correspondence: the Mahler measure of the
// uniform-weight Temperley lift against the spanning-tree entropy per
// fundamental domain of the underlying graph.
struct DimerTreeIdentity {
  double mahler_lift = 0.0;
  TreeEntropy tree_entropy;
  double difference = 0.0;
};

// Generalized Temperley construction: whites at edge midpoints, blacks at the
// original vertices and at face centers; every white joins its edge's two
// endpoints and the two faces flanking the edge. Uniform weight 1.
inline PeriodicGraph temperley_lift(const PeriodicGraph& t) {
  const auto faces = trace_faces(t);
  const int V = static_cast<int>(t.vertices.size());
  const int E = static_cast<int>(t.edges.size());
  const int F = static_cast<int>(faces.size());
  if (V - E + F != 0)
    throw GraphError("temperley_lift: embedding is not cellular on the torus");

  PeriodicGraph lift;
  lift.name = t.name + "-dimer";
  lift.basis = t.basis;

  auto frac = [](Vec2 p) -> std::pair<Vec2, IVec2> {
    const IVec2 cell{int(std::floor(p.x)), int(std::floor(p.y))};
    return {{p.x - cell.x, p.y - cell.y}, cell};
  };

  // Black: original vertices first, then one per face at the centroid of the
  // face corners (in the face-walk frame).
  for (const Vertex& v : t.vertices) lift.vertices.push_back({"v:" + v.id, v.pos, Color::black});
  std::vector<IVec2> face_cell(F);
  for (int f = 0; f < F; ++f) {
    Vec2 c{0.0, 0.0};
    for (const Dart& d : faces[f].darts) {
      const int tail = d.rev ? t.edges[d.edge].v : t.edges[d.edge].u;
      c += t.vertices[tail].pos + Vec2{double(d.offset.x), double(d.offset.y)};
    }
    c = c / double(faces[f].degree());
    auto [pos, cell] = frac(c);
    face_cell[f] = cell;
    lift.vertices.push_back({"f" + std::to_string(f), pos, Color::black});
  }
  // White: edge midpoints.
  std::vector<IVec2> mid_cell(E);
  for (int e = 0; e < E; ++e) {
    const Edge& ed = t.edges[e];
    const Vec2 raw = (t.vertices[ed.u].pos + t.vertices[ed.v].pos +
                      Vec2{double(ed.shift.x), double(ed.shift.y)}) / 2.0;
    auto [pos, cell] = frac(raw);
    mid_cell[e] = cell;
    lift.vertices.push_back({"e" + std::to_string(e), pos, Color::white});
  }

  const int white_base = V + F;
  // Endpoint edges: white w_e to u (cell 0) and to v (cell = edge shift),
  // both relative to the midpoint's own cell.
  for (int e = 0; e < E; ++e) {
    const Edge& ed = t.edges[e];
    lift.edges.push_back({white_base + e, ed.u, -mid_cell[e], 1.0});
    lift.edges.push_back({white_base + e, ed.v, ed.shift - mid_cell[e], 1.0});
  }
  // Face edges: one per dart; the face copy adjacent to this edge copy sits
  // at the face centroid translated back into the edge's frame.
  for (int f = 0; f < F; ++f)
    for (const Dart& d : faces[f].darts) {
      const Edge& ed = t.edges[d.edge];
      IVec2 shift = face_cell[f] - mid_cell[d.edge] - d.offset;
      if (d.rev) shift = shift + ed.shift;
      lift.edges.push_back({white_base + d.edge, V + f, shift, 1.0});
    }

  // Euler guarantees balance: |white| = E = V + F = |black|.
  if (int(lift.vertices.size()) != 2 * E || int(lift.edges.size()) != 4 * E)
    throw GraphError("temperley_lift: inconsistent counts");
  return lift;
}

inline DimerTreeIdentity dimer_tree_identity_check(const PeriodicGraph& t,
                                                   std::vector<int> schedule = {16, 32, 64,
                                                                                128}) {
  const PeriodicGraph lift = temperley_lift(t);
  const KasteleynAssignment assignment = assign_kasteleyn_signs(lift);
  const LaurentPoly2 poly = char_poly(lift, assignment);
  DimerTreeIdentity out;
  out.mahler_lift = mahler_jensen(poly).value;
  out.tree_entropy = tree_entropy_fd(t, std::move(schedule));
  out.difference = out.mahler_lift - out.tree_entropy.per_fd;
  return out;
}

}  // namespace ckl
