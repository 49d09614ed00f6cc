#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "cornersampler/types.hpp"

namespace cornersampler {

template <typename Scalar> using Point2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
Scalar cross2(const Point2<Scalar> &a, const Point2<Scalar> &b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Strictly convex polygon with counterclockwise vertices. Only constructible
/// through validate_polygon().
template <typename Scalar> class ConvexPolygon {
public:
  using Point = Point2<Scalar>;

  const std::vector<Point> &vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point &vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  Scalar signed_area() const {
    Scalar a = 0;
    for (std::size_t i = 0; i < size(); ++i)
      a += cross2<Scalar>(vertex(i), vertex(i + 1));
    return a / 2;
  }
  Scalar area() const { return std::abs(signed_area()); }

  Point centroid() const {
    Point c = Point::Zero();
    Scalar a = 0;
    for (std::size_t i = 0; i < size(); ++i) {
      const Scalar w = cross2<Scalar>(vertex(i), vertex(i + 1));
      c += (vertex(i) + vertex(i + 1)) * w;
      a += w;
    }
    return c / (3 * a);
  }

  /// Closed containment (boundary counts as inside), with slack `tol`.
  bool contains(const Point &p, Scalar tol = 0) const {
    for (std::size_t i = 0; i < size(); ++i) {
      const Point e = vertex(i + 1) - vertex(i);
      if (cross2<Scalar>(e, p - vertex(i)) < -tol * e.norm())
        return false;
    }
    return true;
  }

  /// Euclidean distance from p to the polygon boundary.
  Scalar boundary_distance(const Point &p) const {
    Scalar best = std::numeric_limits<Scalar>::infinity();
    for (std::size_t i = 0; i < size(); ++i) {
      const Point a = vertex(i), b = vertex(i + 1);
      const Point ab = b - a;
      Scalar t = (p - a).dot(ab) / ab.squaredNorm();
      t = std::clamp<Scalar>(t, 0, 1);
      best = std::min(best, (a + t * ab - p).norm());
    }
    return best;
  }

  Scalar max_vertex_norm() const {
    Scalar r = 0;
    for (const auto &v : vertices_)
      r = std::max(r, v.norm());
    return r;
  }

  template <typename S>
  friend ConvexPolygon<S> validate_polygon(std::span<const Point2<S>> vertices);

private:
  std::vector<Point> vertices_;
};

/// Accepts a strictly convex vertex list in either orientation; clockwise
/// input is reversed to counterclockwise.
template <typename Scalar>
ConvexPolygon<Scalar> validate_polygon(std::span<const Point2<Scalar>> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3)
    throw InvalidGeometry("polygon needs at least 3 vertices");

  Scalar scale = 0;
  for (const auto &v : vertices)
    scale = std::max(scale, v.norm());
  const Scalar eps = std::numeric_limits<Scalar>::epsilon() * 64 * std::max<Scalar>(scale * scale, 1);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if ((vertices[i] - vertices[j]).norm() <= std::sqrt(eps))
        throw InvalidGeometry("repeated vertex");

  int positive = 0, negative = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto &a = vertices[i];
    const auto &b = vertices[(i + 1) % n];
    const auto &c = vertices[(i + 2) % n];
    const Scalar turn = cross2<Scalar>(b - a, c - b);
    if (std::abs(turn) <= eps)
      throw InvalidGeometry("collinear vertex triple");
    (turn > 0 ? positive : negative)++;
  }
  if (positive != 0 && negative != 0)
    throw InvalidGeometry("polygon is not convex");

  ConvexPolygon<Scalar> poly;
  poly.vertices_.assign(vertices.begin(), vertices.end());
  if (negative > 0)
    std::reverse(poly.vertices_.begin(), poly.vertices_.end());

  // Turning the right way at every vertex is not enough: a star polygon also
  // does. A simple convex polygon winds exactly once.
  Scalar total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto e0 = poly.vertex(i + 1) - poly.vertex(i);
    const auto e1 = poly.vertex(i + 2) - poly.vertex(i + 1);
    total += std::atan2(cross2<Scalar>(e0, e1), e0.dot(e1));
  }
  if (std::abs(total - 2 * static_cast<Scalar>(kPi)) > Scalar(1e-6))
    throw InvalidGeometry("polygon is self-intersecting");
  return poly;
}

template <typename Scalar>
ConvexPolygon<Scalar> validate_polygon(const std::vector<Point2<Scalar>> &vertices) {
  return validate_polygon<Scalar>(std::span<const Point2<Scalar>>(vertices));
}

template <typename Scalar> struct Disk {
  Point2<Scalar> center = Point2<Scalar>::Zero();
  Scalar radius = 1;

  Disk() = default;
  Disk(const Point2<Scalar> &c, Scalar r) : center(c), radius(r) {
    if (!(r > 0))
      throw InvalidGeometry("disk radius must be positive");
  }
  bool contains(const Point2<Scalar> &p, Scalar tol = 0) const {
    return (p - center).norm() <= radius + tol;
  }
  Scalar area() const { return static_cast<Scalar>(kPi) * radius * radius; }
};

/// Closed containment D subset of the closed disk. For a convex polygon
/// checking the vertices is necessary and sufficient.
template <typename Scalar>
bool disk_contains_polygon(const Disk<Scalar> &disk, const ConvexPolygon<Scalar> &poly,
                           Scalar tol = 64 * std::numeric_limits<Scalar>::epsilon()) {
  for (const auto &v : poly.vertices())
    if ((v - disk.center).norm() > disk.radius * (1 + tol))
      return false;
  return true;
}

/// Signed clearance: max over vertices of |v - c| - rho. Non-positive iff the
/// disk contains the polygon.
template <typename Scalar>
Scalar polygon_excess(const Disk<Scalar> &disk, const ConvexPolygon<Scalar> &poly) {
  Scalar worst = -std::numeric_limits<Scalar>::infinity();
  for (const auto &v : poly.vertices())
    worst = std::max(worst, (v - disk.center).norm() - disk.radius);
  return worst;
}

using Polygon = ConvexPolygon<double>;
using DiskD = Disk<double>;

} // namespace cornersampler
