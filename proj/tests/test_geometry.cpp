#include <random>

#include "doctest.h"

#include "cornersampler/geometry.hpp"
#include "cornersampler/quadrature.hpp"

using namespace cornersampler;

namespace {

const std::vector<Vec2> kTriangle{{0.1, 0.1}, {0.5, 0.15}, {0.2, 0.5}};

// Exact integral of x^p y^q over a triangle via the Dirichlet moment formula.
double monomial_integral(const Vec2 &a, const Vec2 &b, const Vec2 &c, int p, int q) {
  // int l0^i l1^j l2^l over T = 2 |T| i! j! l! / (i+j+l+2)! in barycentrics.
  const double area2 = std::abs(cross2<double>(b - a, c - a));
  auto fact = [](int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i)
      f *= i;
    return f;
  };
  double total = 0;
  for (int i0 = 0; i0 <= p; ++i0)
    for (int i1 = 0; i0 + i1 <= p; ++i1) {
      const int i2 = p - i0 - i1;
      const double cx = fact(p) / (fact(i0) * fact(i1) * fact(i2)) * std::pow(a.x(), i0) *
                        std::pow(b.x(), i1) * std::pow(c.x(), i2);
      for (int j0 = 0; j0 <= q; ++j0)
        for (int j1 = 0; j0 + j1 <= q; ++j1) {
          const int j2 = q - j0 - j1;
          const double cy = fact(q) / (fact(j0) * fact(j1) * fact(j2)) * std::pow(a.y(), j0) *
                            std::pow(b.y(), j1) * std::pow(c.y(), j2);
          const int e0 = i0 + j0, e1 = i1 + j1, e2 = i2 + j2;
          total += cx * cy * area2 * fact(e0) * fact(e1) * fact(e2) / fact(e0 + e1 + e2 + 2);
        }
    }
  return total;
}

} // namespace

TEST_CASE("x^2 y over the unit right triangle is 1/60") {
  const Polygon t = validate_polygon(std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}});
  const auto rule = polygon_quadrature(t, 3);
  CHECK(std::abs(rule.integrate([](const Vec2 &p) { return p.x() * p.x() * p.y(); }) - 1.0 / 60) <
        1e-12);
}

TEST_CASE("the triangle rule is exact to degree 2*order-2") {
  const Polygon t = validate_polygon(kTriangle);
  for (int order : {1, 2, 4, 7}) {
    const auto rule = polygon_quadrature(t, order);
    for (int deg = 0; deg <= 2 * order - 2; ++deg)
      for (int p = 0; p <= deg; ++p) {
        const int q = deg - p;
        const double got = rule.integrate([&](const Vec2 &x) { return std::pow(x.x(), p) * std::pow(x.y(), q); });
        const double ref = monomial_integral(kTriangle[0], kTriangle[1], kTriangle[2], p, q);
        CAPTURE(order);
        CAPTURE(p);
        CAPTURE(q);
        CHECK(std::abs(got - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
      }
  }
}

TEST_CASE("weights are positive and sum to the area") {
  const Polygon hex = validate_polygon(std::vector<Vec2>{
      {0.4, 0.0}, {0.2, 0.35}, {-0.2, 0.35}, {-0.4, 0.0}, {-0.2, -0.35}, {0.2, -0.35}});
  for (int order = kMinQuadOrder; order <= kMaxQuadOrder; ++order) {
    const auto rule = polygon_quadrature(hex, order);
    CHECK(std::abs(rule.weight_sum() - hex.area()) < 1e-12 * hex.area());
    for (double w : rule.weights)
      CHECK(w > 0.0);
    for (const auto &p : rule.nodes)
      CHECK(hex.contains(p, 1e-14));
  }
}

TEST_CASE("disk rule integrates polynomials and the area") {
  const DiskD d(Vec2(0.2, -0.1), 0.3);
  const auto rule = disk_quadrature(d, 8);
  CHECK(std::abs(rule.weight_sum() - d.area()) < 1e-13);
  // int (x-cx)^2 over a disk = pi a^4 / 4.
  const double m2 = rule.integrate([&](const Vec2 &p) { return std::pow(p.x() - 0.2, 2); });
  CHECK(std::abs(m2 - kPi * std::pow(0.3, 4) / 4) < 1e-14);
  CHECK(std::abs(rule.integrate([](const Vec2 &p) { return p.x(); }) - 0.2 * d.area()) < 1e-14);
}

TEST_CASE("unsupported quadrature orders") {
  const Polygon t = validate_polygon(kTriangle);
  CHECK_THROWS_AS(polygon_quadrature(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(polygon_quadrature(t, 21), std::invalid_argument);
  CHECK_THROWS_AS(disk_quadrature(DiskD(Vec2::Zero(), 0.5), 0), std::invalid_argument);
}

TEST_CASE("polygon validation") {
  CHECK_THROWS_AS(validate_polygon(std::vector<Vec2>{{0, 0}, {1, 0}}), InvalidGeometry);
  CHECK_THROWS_AS(validate_polygon(std::vector<Vec2>{{0, 0}, {1, 0}, {1, 0}, {0, 1}}), InvalidGeometry);
  CHECK_THROWS_AS(validate_polygon(std::vector<Vec2>{{0, 0}, {1, 0}, {2, 0}}), InvalidGeometry);
  // Dart: one reflex vertex.
  CHECK_THROWS_AS(validate_polygon(std::vector<Vec2>{{0, 0}, {1, 0.5}, {0, 1}, {0.3, 0.5}}),
                  InvalidGeometry);
  // Pentagram: every turn has the same sign but it winds twice.
  std::vector<Vec2> star;
  for (int i = 0; i < 5; ++i)
    star.emplace_back(std::cos(4 * kPi * i / 5), std::sin(4 * kPi * i / 5));
  CHECK_THROWS_AS(validate_polygon(star), InvalidGeometry);
}

TEST_CASE("clockwise input is reoriented") {
  std::vector<Vec2> cw(kTriangle.rbegin(), kTriangle.rend());
  const Polygon p = validate_polygon(cw);
  CHECK(p.signed_area() > 0);
  CHECK(std::abs(p.area() - validate_polygon(kTriangle).area()) < 1e-15);
}

TEST_CASE("triangle area and centroid") {
  const Polygon t = validate_polygon(kTriangle);
  CHECK(std::abs(t.area() - 0.5 * std::abs(0.4 * 0.4 - 0.05 * 0.1)) < 1e-15);
  CHECK((t.centroid() - Vec2(0.8 / 3, 0.75 / 3)).norm() < 1e-15);
}

TEST_CASE("disk containment of a polygon is decided by its vertices") {
  const Polygon t = validate_polygon(kTriangle);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.6, 0.6), r(0.1, 0.7);
  for (int trial = 0; trial < 2000; ++trial) {
    const DiskD d(Vec2(u(rng), u(rng)), r(rng));
    // Brute force on dense boundary samples.
    bool brute = true;
    for (std::size_t i = 0; i < t.size() && brute; ++i)
      for (int s = 0; s <= 50; ++s) {
        const Vec2 p = t.vertex(i) + (s / 50.0) * (t.vertex(i + 1) - t.vertex(i));
        if ((p - d.center).norm() > d.radius * (1 + 1e-12)) {
          brute = false;
          break;
        }
      }
    CHECK(disk_contains_polygon(d, t) == brute);
    CHECK((polygon_excess(d, t) <= 0) == disk_contains_polygon(d, t, 0.0));
  }
}

TEST_CASE("boundary distance and closed containment") {
  const Polygon sq = validate_polygon(std::vector<Vec2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(sq.contains(Vec2(1, 0.5)));
  CHECK(!sq.contains(Vec2(1 + 1e-9, 0.5)));
  CHECK(std::abs(sq.boundary_distance(Vec2(0.5, 0.2)) - 0.2) < 1e-15);
  CHECK(std::abs(sq.boundary_distance(Vec2(2, 2)) - std::sqrt(2.0)) < 1e-15);
  CHECK_THROWS_AS(DiskD(Vec2::Zero(), 0.0), InvalidGeometry);
}

TEST_CASE("geometry is templated on the scalar") {
  const std::vector<Eigen::Vector2f> v{{0.f, 0.f}, {1.f, 0.f}, {0.f, 1.f}};
  const auto t = validate_polygon(v);
  const auto rule = polygon_quadrature(t, 4);
  CHECK(std::abs(rule.weight_sum() - 0.5f) < 1e-6f);
  const std::vector<Eigen::Matrix<long double, 2, 1>> w{{0, 0}, {1, 0}, {0, 1}};
  const auto tl = validate_polygon(w);
  const auto rl = polygon_quadrature(tl, 3);
  CHECK(std::abs(rl.integrate([](const auto &p) { return p.x() * p.x() * p.y(); }) - 1.0L / 60) <
        1e-17L);
}
