#pragma once

#include <span>
#include <variant>
#include <vector>

#include "cornersampler/farfield.hpp"
#include "cornersampler/geometry.hpp"
#include "cornersampler/medium.hpp"
#include "cornersampler/quadrature.hpp"

namespace cornersampler {

struct ConstantAmplitude {
  cplx c{1.0, 0.0};
};

/// f(x) = c + a . x
struct AffineAmplitude {
  Eigen::Vector2cd a = Eigen::Vector2cd::Zero();
  cplx c{0.0, 0.0};
};

/// f = r^N (A cos N theta + B sin N theta) in polar coordinates about anchor.
struct HarmonicMonomial {
  int N = 0;
  cplx A{1.0, 0.0};
  cplx B{0.0, 0.0};
  Vec2 anchor = Vec2::Zero();
};

/// f0 = (Delta + k1^2) phi with phi = (1 - |x-c|^2/a^2)^p on its disk. Its far
/// field vanishes identically whenever the disk lies inside B_R.
struct NonRadiatingBump {
  Vec2 center = Vec2::Zero();
  double radius = 0.1;
  int power = 3;
};

using SourceAmplitude =
    std::variant<ConstantAmplitude, AffineAmplitude, HarmonicMonomial, NonRadiatingBump>;

using SourceRegion = std::variant<Polygon, DiskD>;

struct SourceSpec {
  SourceRegion region;
  SourceAmplitude amplitude;
};

/// Pointwise amplitude. The bump needs k1 from the medium.
cplx evaluate_amplitude(const SourceAmplitude &amp, const Vec2 &x, const Medium &med);

/// Checks amplitude invariants and that the region keeps 0.01 R from |x| = R.
void validate_source(const Medium &med, const SourceSpec &src);

QuadratureRule<double> region_quadrature(const SourceRegion &region, int order);
bool region_contains(const SourceRegion &region, const Vec2 &p);
double region_area(const SourceRegion &region);

/// sqrt(sum_q w_q |f(y_q)|^2).
double source_l2_norm(const Medium &med, const SourceSpec &src, int quad_order);

/// Far-field Fourier coefficients U_m = sum_q w_q f(y_q) g_m(y_q), |m| <= M.
CVector radiated_modes(const ModeTable &modes, std::span<const SourceSpec> sources, int quad_order);

/// u_inf(xhat) = sum_q w_q G_inf(xhat, y_q) f(y_q) on an N-point grid. A span of
/// sources is radiated as their sum.
FarFieldVector radiate(const Medium &med, std::span<const SourceSpec> sources, int quad_order,
                       int M, int N);
FarFieldVector radiate(const Medium &med, const SourceSpec &src, int quad_order, int M, int N);

/// u(x) = sum_q w_q G(x, y_q) f(y_q) at points outside the source region.
CVector near_field(const Medium &med, const SourceSpec &src, std::span<const Vec2> points,
                   int quad_order, int M);

/// Data-side discretisation used to synthesise measurements.
inline constexpr int kDataQuadOrder = 12;
inline constexpr int kDefaultBumpPower = 3;

} // namespace cornersampler
