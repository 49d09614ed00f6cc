#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cornersampler/geometry.hpp"

namespace cornersampler {

inline constexpr int kMinQuadOrder = 1;
inline constexpr int kMaxQuadOrder = 20;

template <typename Scalar> struct QuadratureRule {
  std::vector<Point2<Scalar>> nodes;
  std::vector<Scalar> weights;

  std::size_t size() const { return nodes.size(); }
  Scalar weight_sum() const {
    Scalar s = 0;
    for (Scalar w : weights)
      s += w;
    return s;
  }
  template <typename F> auto integrate(F &&f) const {
    using R = decltype(f(nodes.front()));
    R sum = R(0);
    for (std::size_t q = 0; q < nodes.size(); ++q)
      sum += weights[q] * f(nodes[q]);
    return sum;
  }
};

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
template <typename Scalar>
void gauss_legendre(int n, std::vector<Scalar> &x, std::vector<Scalar> &w) {
  x.assign(n, 0);
  w.assign(n, 0);
  const Scalar pi = static_cast<Scalar>(kPi);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar z = std::cos(pi * (i + Scalar(0.75)) / (n + Scalar(0.5)));
    Scalar dp = 0;
    for (int it = 0; it < 100; ++it) {
      Scalar p0 = 1, p1 = 0;
      for (int j = 0; j < n; ++j) {
        const Scalar p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
      }
      dp = n * (z * p0 - p1) / (z * z - 1);
      const Scalar dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 4 * std::numeric_limits<Scalar>::epsilon())
        break;
    }
    // Recompute the derivative at the converged node.
    Scalar p0 = 1, p1 = 0;
    for (int j = 0; j < n; ++j) {
      const Scalar p2 = p1;
      p1 = p0;
      p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
    }
    dp = n * (z * p0 - p1) / (z * z - 1);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2 / ((1 - z * z) * dp * dp);
  }
}

namespace detail {
inline void check_order(int order) {
  if (order < kMinQuadOrder || order > kMaxQuadOrder)
    throw std::invalid_argument("unsupported quadrature order " + std::to_string(order) +
                                " (expected 1..20)");
}
} // namespace detail

/// Collapsed Gauss product rule on triangle (a, b, c): order^2 nodes, exact
/// for polynomials of total degree <= 2*order - 2.
template <typename Scalar>
void append_triangle_rule(const Point2<Scalar> &a, const Point2<Scalar> &b,
                          const Point2<Scalar> &c, int order, QuadratureRule<Scalar> &rule) {
  std::vector<Scalar> x, w;
  gauss_legendre<Scalar>(order, x, w);
  const Scalar area2 = std::abs(cross2<Scalar>(b - a, c - a));
  for (int i = 0; i < order; ++i) {
    const Scalar u = (x[i] + 1) / 2;
    for (int j = 0; j < order; ++j) {
      const Scalar v = (x[j] + 1) / 2;
      const Scalar s = u, t = v * (1 - u);
      rule.nodes.push_back(a + s * (b - a) + t * (c - a));
      rule.weights.push_back(area2 * (w[i] / 2) * (w[j] / 2) * (1 - u));
    }
  }
}

/// Fan triangulation from vertex 0 with a collapsed Gauss rule per triangle.
template <typename Scalar>
QuadratureRule<Scalar> polygon_quadrature(const ConvexPolygon<Scalar> &poly, int order) {
  detail::check_order(order);
  QuadratureRule<Scalar> rule;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i)
    append_triangle_rule(poly.vertex(0), poly.vertex(i), poly.vertex(i + 1), order, rule);
  return rule;
}

/// Polar product rule: `order` Gauss points in r (with the r Jacobian) times
/// 4*order equispaced angles.
template <typename Scalar>
QuadratureRule<Scalar> disk_quadrature(const Disk<Scalar> &disk, int order) {
  detail::check_order(order);
  std::vector<Scalar> x, w;
  gauss_legendre<Scalar>(order, x, w);
  const int n_theta = 4 * order;
  const Scalar dtheta = 2 * static_cast<Scalar>(kPi) / n_theta;
  QuadratureRule<Scalar> rule;
  for (int i = 0; i < order; ++i) {
    const Scalar r = disk.radius * (x[i] + 1) / 2;
    const Scalar wr = w[i] * disk.radius / 2 * r;
    for (int j = 0; j < n_theta; ++j) {
      const Scalar th = j * dtheta;
      rule.nodes.push_back(disk.center + r * Point2<Scalar>(std::cos(th), std::sin(th)));
      rule.weights.push_back(wr * dtheta);
    }
  }
  return rule;
}

} // namespace cornersampler
