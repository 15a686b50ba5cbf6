#pragma once

#include <cmath>
#include <cstdint>

namespace ckl {

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }

  double norm() const { return std::hypot(x, y); }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double angle() const { return std::atan2(y, x); }
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

struct IVec2 {
  int x = 0, y = 0;
  IVec2 operator+(IVec2 o) const { return {x + o.x, y + o.y}; }
  IVec2 operator-(IVec2 o) const { return {x - o.x, y - o.y}; }
  IVec2 operator-() const { return {-x, -y}; }
  bool operator==(const IVec2&) const = default;
  bool is_zero() const { return x == 0 && y == 0; }
};

// Column-major 2x2 basis: columns are the two lattice translation vectors.
struct Mat2 {
  double a = 1.0, b = 0.0;  // first row  (a b)
  double c = 0.0, d = 1.0;  // second row (c d)

  Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Vec2 apply(IVec2 v) const { return apply(Vec2{double(v.x), double(v.y)}); }
  double det() const { return a * d - b * c; }
  Mat2 inverse() const {
    const double dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
  bool is_identity(double tol = 0.0) const {
    return std::abs(a - 1) <= tol && std::abs(b) <= tol && std::abs(c) <= tol &&
           std::abs(d - 1) <= tol;
  }
};

}  // namespace ckl
