#include "cornersampler/source.hpp"

#include <cmath>

namespace cornersampler {

namespace {
template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;
} // namespace

cplx evaluate_amplitude(const SourceAmplitude &amp, const Vec2 &x, const Medium &med) {
  return std::visit(
      overloaded{
          [](const ConstantAmplitude &a) { return a.c; },
          [&](const AffineAmplitude &a) { return a.c + a.a(0) * x.x() + a.a(1) * x.y(); },
          [&](const HarmonicMonomial &h) {
            const Vec2 d = x - h.anchor;
            const double r = d.norm();
            if (h.N == 0)
              return h.A;
            const double th = polar_angle(d);
            return std::pow(r, h.N) * (h.A * std::cos(h.N * th) + h.B * std::sin(h.N * th));
          },
          [&](const NonRadiatingBump &b) {
            const double s = (x - b.center).squaredNorm() / (b.radius * b.radius);
            if (s >= 1.0)
              return cplx(0.0);
            const int p = b.power;
            const double one_minus = 1.0 - s;
            // Delta phi = (4p/a^2) (1-s)^{p-2} (p s - 1)
            const double lap = 4.0 * p / (b.radius * b.radius) * std::pow(one_minus, p - 2) * (p * s - 1.0);
            const double k1 = med.k1();
            return cplx(lap + k1 * k1 * std::pow(one_minus, p));
          }},
      amp);
}

bool region_contains(const SourceRegion &region, const Vec2 &p) {
  return std::visit([&](const auto &r) { return r.contains(p); }, region);
}

double region_area(const SourceRegion &region) {
  return std::visit([](const auto &r) { return r.area(); }, region);
}

QuadratureRule<double> region_quadrature(const SourceRegion &region, int order) {
  return std::visit(overloaded{[&](const Polygon &p) { return polygon_quadrature(p, order); },
                               [&](const DiskD &d) { return disk_quadrature(d, order); }},
                    region);
}

void validate_source(const Medium &med, const SourceSpec &src) {
  med.validate();
  const double reach = std::visit(
      overloaded{[](const Polygon &p) { return p.max_vertex_norm(); },
                 [](const DiskD &d) { return d.center.norm() + d.radius; }},
      src.region);
  if (reach > 0.99 * med.R)
    throw InvalidGeometry("source region must stay 0.01 R inside |x| = R");

  std::visit(overloaded{[](const HarmonicMonomial &h) {
                          if (h.N < 0)
                            throw DomainError("harmonic monomial degree must be >= 0");
                          if (std::abs(h.A) + std::abs(h.B) == 0.0)
                            throw DomainError("harmonic monomial needs |A| + |B| > 0");
                        },
                        [&](const NonRadiatingBump &b) {
                          if (b.power < 2)
                            throw DomainError("non-radiating bump needs power >= 2");
                          if (!(b.radius > 0.0))
                            throw DomainError("non-radiating bump radius must be positive");
                          if (b.center.norm() + b.radius > 0.99 * med.R)
                            throw InvalidGeometry("non-radiating bump must lie inside B_R");
                        },
                        [](const auto &) {}},
             src.amplitude);
}

double source_l2_norm(const Medium &med, const SourceSpec &src, int quad_order) {
  const auto rule = region_quadrature(src.region, quad_order);
  double s = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q)
    s += rule.weights[q] * std::norm(evaluate_amplitude(src.amplitude, rule.nodes[q], med));
  return std::sqrt(s);
}

CVector radiated_modes(const ModeTable &modes, std::span<const SourceSpec> sources, int quad_order) {
  CVector U = CVector::Zero(2 * modes.M + 1);
  for (const SourceSpec &src : sources) {
    validate_source(modes.medium, src);
    const auto rule = region_quadrature(src.region, quad_order);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const cplx f = evaluate_amplitude(src.amplitude, rule.nodes[q], modes.medium);
      if (f == 0.0)
        continue;
      U += (rule.weights[q] * f) * greens_far_field(modes, rule.nodes[q]);
    }
  }
  return U;
}

FarFieldVector radiate(const Medium &med, std::span<const SourceSpec> sources, int quad_order,
                       int M, int N) {
  if (N <= 0 || N % 2 != 0)
    throw DomainError("far-field grid size must be even");
  const ModeTable modes = mode_table(med, M);
  return synthesize_from_modes(radiated_modes(modes, sources, quad_order), N);
}

FarFieldVector radiate(const Medium &med, const SourceSpec &src, int quad_order, int M, int N) {
  return radiate(med, std::span<const SourceSpec>(&src, 1), quad_order, M, N);
}

CVector near_field(const Medium &med, const SourceSpec &src, std::span<const Vec2> points,
                   int quad_order, int M) {
  validate_source(med, src);
  for (const Vec2 &x : points)
    if (region_contains(src.region, x))
      throw DomainError("near_field: evaluation point inside the source region");
  const ModeTable modes = mode_table(med, M);
  const auto rule = region_quadrature(src.region, quad_order);
  std::vector<cplx> f(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q)
    f[q] = rule.weights[q] * evaluate_amplitude(src.amplitude, rule.nodes[q], med);

  CVector u = CVector::Zero(static_cast<Eigen::Index>(points.size()));
  for (std::size_t p = 0; p < points.size(); ++p)
    for (std::size_t q = 0; q < rule.size(); ++q)
      if (f[q] != 0.0)
        u(static_cast<Eigen::Index>(p)) += f[q] * greens_function(modes, points[p], rule.nodes[q]);
  return u;
}

} // namespace cornersampler
