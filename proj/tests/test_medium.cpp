#include <cmath>

#include "doctest.h"

#include "cornersampler/factorization.hpp"
#include "cornersampler/medium.hpp"

using namespace cornersampler;

namespace {

const Medium kLayered{2.0, 4.0, 1.0, 0.5};
const Medium kFree{2.0, 1.0, 1.0, 1.0};

// libstdc++ special functions as an independent double-precision reference.
double reflect(int m) { return (m < 0 && (m % 2)) ? -1.0 : 1.0; }
double sJ(int m, double x) { return reflect(m) * std::cyl_bessel_j(static_cast<double>(std::abs(m)), x); }
double sY(int m, double x) { return reflect(m) * std::cyl_neumann(static_cast<double>(std::abs(m)), x); }
cplx sH(int m, double x) { return {sJ(m, x), sY(m, x)}; }
double sdJ(int m, double x) { return 0.5 * (sJ(m - 1, x) - sJ(m + 1, x)); }
cplx sdH(int m, double x) { return 0.5 * (sH(m - 1, x) - sH(m + 1, x)); }

// Cramer's rule for the two interface conditions, written out independently.
std::pair<cplx, cplx> reference_incidence(const Medium &med, int m) {
  const double k = med.k, k1 = med.k1(), R = med.R, l = med.lambda;
  // t J(k1R) - r H(kR) = J(kR);  l k1 t J'(k1R) - k r H'(kR) = k J'(kR)
  const cplx a11 = sJ(m, k1 * R), a12 = -sH(m, k * R);
  const cplx a21 = l * k1 * sdJ(m, k1 * R), a22 = -k * sdH(m, k * R);
  const cplx b1 = sJ(m, k * R), b2 = k * sdJ(m, k * R);
  const cplx det = a11 * a22 - a12 * a21;
  return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det};
}

} // namespace

TEST_CASE("exterior incidence coefficients match an independent solve") {
  for (const Medium &med : {kLayered, Medium{3.0, 2.5, 1.0, 1.7}, Medium{1.2, 0.6, 0.8, 0.9}})
    for (int m = 0; m <= 20; ++m) {
      const auto [t, r] = reference_incidence(med, m);
      const auto c = exterior_incidence_coeffs(med, m);
      CAPTURE(m);
      CHECK(std::abs(c.interior_transmitted - t) < 1e-10 * std::max(1.0, std::abs(t)));
      CHECK(std::abs(c.exterior_reflected - r) < 1e-10 * std::max(1.0, std::abs(r)));
    }
}

TEST_CASE("mode table agrees with the per-mode functions and symmetric orders") {
  const ModeTable t = mode_table(kLayered, 30);
  for (int m = -30; m <= 30; ++m) {
    CHECK(std::abs(t.inc(m).exterior_reflected - exterior_incidence_coeffs(kLayered, m).exterior_reflected) < 1e-15);
    CHECK(std::abs(t.src(m).exterior_outgoing - interior_source_coeffs(kLayered, m).exterior_outgoing) < 1e-15);
    CHECK(std::abs(t.inc(m).exterior_reflected - t.inc(-m).exterior_reflected) < 1e-14);
  }
}

TEST_CASE("per-mode scattering is unimodular for lossless media") {
  for (const Medium &med : {kLayered, Medium{5.0, 9.0, 1.0, 2.0}, Medium{0.7, 0.3, 2.0, 0.25}})
    for (int m = -30; m <= 30; ++m)
      CHECK(std::abs(std::abs(1.0 + 2.0 * exterior_incidence_coeffs(med, m).exterior_reflected) - 1.0) <
            1e-10);
}

TEST_CASE("transparent background has no reflection") {
  for (int m = -10; m <= 10; ++m) {
    const auto a = interior_source_coeffs(kFree, m);
    const auto b = exterior_incidence_coeffs(kFree, m);
    CHECK(std::abs(a.interior_regular) < 1e-14);
    CHECK(std::abs(a.exterior_outgoing - 1.0) < 1e-14);
    CHECK(std::abs(b.exterior_reflected) < 1e-14);
    CHECK(std::abs(b.interior_transmitted - 1.0) < 1e-14);
  }
  CHECK(background_far_field_operator(kFree, 64, 30).kernel().cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("free-space Green's function is (i/4) H_0") {
  const ModeTable modes = mode_table(kFree, 40);
  const Vec2 y(0.3, -0.2);
  for (const Vec2 &x : {Vec2(-0.4, 0.5), Vec2(0.9, 0.1), Vec2(1.6, -2.0), Vec2(0.31, -0.2)}) {
    const cplx ref = 0.25 * kI * sH(0, kFree.k * (x - y).norm());
    CHECK(std::abs(greens_function(modes, x, y) - ref) < 1e-10 * std::abs(ref));
  }
}

TEST_CASE("free-space Green's far field is gamma exp(-ik xhat.y)") {
  const Vec2 y(-0.35, 0.4);
  const auto g = synthesize_from_modes(greens_far_field(kFree, y, 40), 64);
  const cplx gamma = std::polar(1.0, kPi / 4) / std::sqrt(8.0 * kFree.k * kPi);
  for (int i = 0; i < 64; ++i) {
    const double t = grid_angle(i, 64);
    const cplx ref = gamma * std::exp(-kI * kFree.k * (std::cos(t) * y.x() + std::sin(t) * y.y()));
    CHECK(std::abs(g.values(i) - ref) < 1e-8);
  }
}

TEST_CASE("layered Green's function satisfies the interface conditions") {
  const ModeTable modes = mode_table(kLayered, 40);
  const Vec2 y(0.2, 0.35);
  const double h = 1e-5;
  for (double th : {0.0, 1.1, 2.5, 4.0}) {
    const Vec2 e(std::cos(th), std::sin(th));
    const cplx in = greens_function(modes, kLayered.R * e, y);
    const cplx out = greens_function(modes, (kLayered.R + 1e-13) * e, y);
    CHECK(std::abs(in - out) < 1e-10 * std::abs(in));
    // One-sided second-order differences on each side of |x| = R.
    const auto G = [&](double r) { return greens_function(modes, r * e, y); };
    const double R = kLayered.R;
    const cplx d_in = (3.0 * G(R) - 4.0 * G(R - h) + G(R - 2 * h)) / (2 * h);
    const cplx d_out = (-3.0 * G(R + 1e-13) + 4.0 * G(R + h) - G(R + 2 * h)) / (2 * h);
    CHECK(std::abs(d_out - kLayered.lambda * d_in) < 1e-6 * std::abs(d_out));
  }
}

TEST_CASE("layered Green's far field is the large-r limit of G") {
  const ModeTable modes = mode_table(kLayered, 30);
  const Vec2 y(-0.1, 0.3);
  const CVector g = greens_far_field(modes, y);
  for (double th : {0.3, 2.0, 5.1}) {
    cplx ginf = 0.0;
    for (int m = -30; m <= 30; ++m)
      ginf += g(m + 30) * std::polar(1.0, m * th);
    double prev = 1e300;
    for (double r : {50.0, 200.0, 800.0}) {
      const cplx scaled = greens_function(modes, r * Vec2(std::cos(th), std::sin(th)), y) *
                          std::sqrt(r) * std::exp(-kI * kLayered.k * r);
      const double err = std::abs(scaled - ginf) / std::abs(ginf);
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 2e-3);
  }
}

TEST_CASE("mixed reciprocity: G_inf(xhat, y) = lambda gamma u_t(y, -xhat)") {
  const ModeTable modes = mode_table(kLayered, 40);
  const cplx gamma = far_field_gamma(kLayered.k);
  for (const Vec2 &y : {Vec2(0.1, 0.2), Vec2(-0.5, -0.3), Vec2(0.0, 0.8)}) {
    const CVector g = greens_far_field(modes, y);
    for (double th : {0.0, 1.7, 3.9}) {
      cplx ginf = 0.0, total = 0.0;
      const double thd = th + kPi;
      for (int m = -40; m <= 40; ++m) {
        ginf += g(m + 40) * std::polar(1.0, m * th);
        total += ipow(m) * modes.inc(m).interior_transmitted * sJ(std::abs(m), kLayered.k1() * y.norm()) *
                 ((m < 0 && (m % 2)) ? -1.0 : 1.0) * std::polar(1.0, m * (polar_angle(y) - thd));
      }
      // The interior source is normalised to the Helmholtz operator, not the
      // divergence form with coefficient lambda, hence the extra factor.
      CHECK(std::abs(ginf - kLayered.lambda * gamma * total) < 1e-10);
    }
  }
}

TEST_CASE("background operator: S0 unitary and F0 reciprocal") {
  const auto F0 = background_far_field_operator(kLayered, 64, 30);
  const auto S0 = scattering_operator(F0, kLayered.k);
  CHECK(operator_norm(compose(adjoint(S0), S0) - FarFieldOperatorMatrix::identity(64)) < 1e-8);
  CHECK(operator_norm(compose(S0, adjoint(S0)) - FarFieldOperatorMatrix::identity(64)) < 1e-8);
  CHECK(reciprocity_defect(F0) < 1e-8);
}

TEST_CASE("background operator is diagonal in Fourier modes") {
  const int N = 64, M = 30;
  const auto F0 = background_far_field_operator(kLayered, N, M);
  for (int n : {-7, 0, 3, 12}) {
    CVector e(N);
    for (int j = 0; j < N; ++j)
      e(j) = std::polar(1.0, n * grid_angle(j, N));
    const CVector Fe = F0.apply(FarFieldVector(e)).values;
    // Eigenvalue 2 pi c_ff rho_n from the plane-wave expansion.
    const cplx mu = 2.0 * kPi * hankel_far_field_factor(kLayered.k) *
                    exterior_incidence_coeffs(kLayered, n).exterior_reflected;
    CHECK((Fe - mu * e).norm() < 1e-10 * e.norm());
  }
}

TEST_CASE("domain preconditions") {
  CHECK_THROWS_AS(check_grid(63, 30), DomainError);
  CHECK_THROWS_AS(check_grid(60, 30), DomainError);
  CHECK_NOTHROW(check_grid(62, 30));
  CHECK_THROWS_AS(background_far_field_operator(kLayered, 32, 30), DomainError);
  CHECK_THROWS_AS(greens_far_field(kLayered, Vec2(1.0, 0.0), 20), DomainError);
  CHECK_THROWS_AS(greens_function(mode_table(kLayered, 10), Vec2(0.2, 0), Vec2(0.2, 0)), DomainError);
  CHECK_THROWS_AS(interior_source_coeffs(Medium{2.0, -1.0, 1.0, 0.5}, 0), DomainError);
  CHECK_THROWS_AS(mode_table(Medium{2.0, 4.0, 0.0, 0.5}, 5), DomainError);
  CHECK_THROWS_AS(mode_table(Medium{std::nan(""), 4.0, 1.0, 0.5}, 5), DomainError);
  CHECK(default_truncation(kLayered) == 29);
}
