#include "cornersampler/medium.hpp"

#include <cmath>
#include <string>

namespace cornersampler {

void Medium::validate() const {
  for (double v : {k, n0, R, lambda})
    if (!(v > 0.0) || !std::isfinite(v))
      throw DomainError("medium parameters k, n0, R, lambda must be finite and positive");
}

int default_truncation(const Medium &med) {
  return static_cast<int>(std::ceil(med.k1() * med.R)) + 25;
}

void check_grid(int N, int M) {
  if (N <= 0 || N % 2 != 0)
    throw DomainError("direction grid size N=" + std::to_string(N) + " must be even");
  if (N < 2 * M + 2)
    throw DomainError("aliasing: N=" + std::to_string(N) + " < 2M+2=" + std::to_string(2 * M + 2));
}

namespace {

constexpr double kSingularTol = 1e-14;

struct Interface {
  double jin, djin; // J_m(k1 R), J_m'(k1 R)
  cplx hin, dhin;   // H_m(k1 R), H_m'(k1 R)
  double jout, djout;
  cplx hout, dhout;
};

Interface interface_values(const Medium &med, int m, int max_order) {
  if (std::abs(m) > max_order)
    throw DomainError("mode " + std::to_string(m) + " exceeds order cap");
  const int a = std::abs(m);
  BesselTable in(a, med.k1() * med.R);
  BesselTable out(a, med.k * med.R);
  return {in.J(m), in.dJ(m), in.H(m), in.dH(m), out.J(m), out.dJ(m), out.H(m), out.dH(m)};
}

// Solves [[p, q], [r, s]] (x, y) = (e, f) and rejects near-singular systems.
// The determinant is judged relative to the size of its two products.
std::pair<cplx, cplx> solve2(cplx p, cplx q, cplx r, cplx s, cplx e, cplx f, int m) {
  const cplx det = p * s - q * r;
  const double scale = std::abs(p * s) + std::abs(q * r);
  if (!(std::abs(det) > kSingularTol * scale))
    throw SingularSystem("interface system singular for mode " + std::to_string(m),
                         scale / std::max(std::abs(det), 1e-300));
  const cplx x = (e * s - q * f) / det;
  const cplx y = (p * f - e * r) / det;
  if (!std::isfinite(std::abs(x)) || !std::isfinite(std::abs(y)))
    throw OverflowError("interface coefficients overflow for mode " + std::to_string(m));
  return {x, y};
}

} // namespace

InteriorSourceCoeffs interior_source_coeffs(const Medium &med, int m, int max_order) {
  med.validate();
  const Interface v = interface_values(med, m, max_order);
  const double lk1 = med.lambda * med.k1();
  // value:  a J(k1R) - b H(kR)          = -H(k1R)
  // flux:   lam k1 a J'(k1R) - k b H'(kR) = -lam k1 H'(k1R)
  auto [a, b] = solve2(v.jin, -v.hout, lk1 * v.djin, -med.k * v.dhout, -v.hin, -lk1 * v.dhin, m);
  return {m, a, b};
}

ExteriorIncidenceCoeffs exterior_incidence_coeffs(const Medium &med, int m, int max_order) {
  med.validate();
  const Interface v = interface_values(med, m, max_order);
  const double lk1 = med.lambda * med.k1();
  // value:  t J(k1R) - rho H(kR)           = J(kR)
  // flux:   lam k1 t J'(k1R) - k rho H'(kR) = k J'(kR)
  auto [t, rho] = solve2(v.jin, -v.hout, lk1 * v.djin, -med.k * v.dhout, v.jout, med.k * v.djout, m);
  return {m, t, rho};
}

ModeTable mode_table(const Medium &med, int M) {
  med.validate();
  if (M < 0 || M > kDefaultMaxOrder)
    throw DomainError("truncation M=" + std::to_string(M) + " outside [0, 80]");
  ModeTable t;
  t.medium = med;
  t.M = M;
  BesselTable in(M, med.k1() * med.R);
  BesselTable out(M, med.k * med.R);
  const double lk1 = med.lambda * med.k1();
  for (int m = -M; m <= M; ++m) {
    auto [a, b] = solve2(in.J(m), -out.H(m), lk1 * in.dJ(m), -med.k * out.dH(m), -in.H(m),
                         -lk1 * in.dH(m), m);
    auto [tt, rho] = solve2(in.J(m), -out.H(m), lk1 * in.dJ(m), -med.k * out.dH(m), out.J(m),
                            med.k * out.dJ(m), m);
    t.source.push_back({m, a, b});
    t.incidence.push_back({m, tt, rho});
  }
  return t;
}

CVector greens_far_field(const ModeTable &modes, const Vec2 &y) {
  const Medium &med = modes.medium;
  const double r = y.norm();
  if (!(r < med.R))
    throw DomainError("greens_far_field: source point must satisfy |y| < R");
  const int M = modes.M;
  const cplx gamma = far_field_gamma(med.k);
  const double th = polar_angle(y);
  BesselTable j(M, med.k1() * r, false);
  CVector g(2 * M + 1);
  // G(x, y) = (i/4) sum_m J_m(k1|y|) e^{-i m th_y} b_m H_m(k|x|) e^{i m th_x}
  // outside B_R; the far field of (i/4) H_m(kr) e^{i m th} is gamma (-i)^m.
  for (int m = -M; m <= M; ++m)
    g(m + M) = gamma * ipow(-m) * j.J(m) * std::polar(1.0, -m * th) * modes.src(m).exterior_outgoing;
  return g;
}

CVector greens_far_field(const Medium &med, const Vec2 &y, int M) {
  return greens_far_field(mode_table(med, M), y);
}

cplx greens_function(const ModeTable &modes, const Vec2 &x, const Vec2 &y) {
  const Medium &med = modes.medium;
  const int M = modes.M;
  const double ry = y.norm(), rx = x.norm();
  if (!(ry < med.R))
    throw DomainError("greens_function: source point must satisfy |y| < R");
  const double dth = polar_angle(x) - polar_angle(y);
  BesselTable jy(M, med.k1() * ry, false);
  cplx sum = 0.0;
  if (rx <= med.R) {
    const double d = (x - y).norm();
    if (d == 0.0)
      throw DomainError("greens_function: x coincides with the source point");
    sum = BesselTable(0, med.k1() * d).H(0);
    BesselTable jx(M, med.k1() * rx, false);
    for (int m = -M; m <= M; ++m)
      sum += modes.src(m).interior_regular * jy.J(m) * jx.J(m) * std::polar(1.0, m * dth);
  } else {
    BesselTable hx(M, med.k * rx);
    for (int m = -M; m <= M; ++m)
      sum += modes.src(m).exterior_outgoing * jy.J(m) * hx.H(m) * std::polar(1.0, m * dth);
  }
  return 0.25 * kI * sum;
}

FarFieldOperatorMatrix background_far_field_operator(const Medium &med, int N, int M) {
  check_grid(N, M);
  const ModeTable modes = mode_table(med, M);
  // Incident e^{ik x.d} = sum_n i^n J_n(kr) e^{i n (th - th_d)}; the reflected
  // part of mode n is rho_n i^n e^{-i n th_d} H_n(kr) e^{i n th}.
  CMatrix B(2 * M + 1, N);
  for (int j = 0; j < N; ++j) {
    const double thd = grid_angle(j, N);
    for (int n = -M; n <= M; ++n)
      B(n + M, j) = modes.inc(n).exterior_reflected * ipow(n) * std::polar(1.0, -n * thd);
  }
  return FarFieldOperatorMatrix(far_field_kernel_from_modes(B, med.k));
}

} // namespace cornersampler
