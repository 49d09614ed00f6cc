#include <random>

#include "doctest.h"

#include "bessel_oracle.hpp"
#include "cornersampler/specialfun.hpp"

using namespace cornersampler;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("J and Y agree with the extended-precision series") {
  for (int m : {0, 1, 2, 5, 13, 27, 40})
    for (double x : {0.05, 0.9, 3.3, 10.0, 24.1, 49.0}) {
      CAPTURE(m);
      CAPTURE(x);
      BesselTable t(41, x);
      const oracle::Real X(x);
      CHECK(rel(t.J(m), static_cast<double>(oracle::J(m, X))) < 1e-10);
      CHECK(rel(t.Y(m), static_cast<double>(oracle::Y(m, X))) < 1e-10);
    }
}

TEST_CASE("J_5(10) matches the series oracle") {
  const double ref = static_cast<double>(oracle::J(5, oracle::Real(10)));
  CHECK(rel(cyl_eval(CylKind::J, 5, 10.0).value.real(), ref) < 1e-10);
}

TEST_CASE("J_0 at the origin") {
  const CylValue v = cyl_eval(CylKind::J, 0, 0.0);
  CHECK(v.value == cplx(1.0, 0.0));
  CHECK(v.derivative == cplx(0.0, 0.0));
  CHECK(cyl_eval(CylKind::J, 3, 0.0).value == cplx(0.0, 0.0));
}

TEST_CASE("J values are real") {
  for (int m = -10; m <= 10; ++m)
    CHECK(cyl_eval(CylKind::J, m, 4.2).value.imag() == 0.0);
}

TEST_CASE("Wronskian identity") {
  {
    const CylValue j = cyl_eval(CylKind::J, 3, 1.7), y = cyl_eval(CylKind::Y, 3, 1.7);
    const cplx w = j.value * y.derivative - j.derivative * y.value;
    CHECK(std::abs(w - 2.0 / (kPi * 1.7)) < 1e-12);
  }
  for (double x : {0.1, 1.0, 5.0, 20.0}) {
    BesselTable t(40, x);
    for (int m = 0; m <= 40; ++m) {
      CAPTURE(m);
      CAPTURE(x);
      CHECK(std::abs(t.J(m) * t.dY(m) - t.dJ(m) * t.Y(m) - 2.0 / (kPi * x)) < 1e-12);
    }
  }
}

TEST_CASE("derivative follows the recurrence (C_{m-1} - C_{m+1}) / 2") {
  for (double x : {0.3, 6.0, 31.0}) {
    BesselTable t(45, x);
    for (int m = -40; m <= 40; ++m) {
      CHECK(std::abs(t.dH(m) - 0.5 * (t.H(m - 1) - t.H(m + 1))) <=
            1e-12 * std::max(std::abs(t.H(m - 1)), std::abs(t.H(m + 1))));
    }
  }
}

TEST_CASE("three-term recurrence for all kinds") {
  for (double x : {0.5, 3.0, 17.0, 45.0}) {
    BesselTable t(42, x);
    for (int m = 1; m <= 40; ++m) {
      const double sj = std::max({std::abs(t.J(m - 1)), std::abs(t.J(m + 1)), std::abs(2.0 * m / x * t.J(m))});
      const double sy = std::max({std::abs(t.Y(m - 1)), std::abs(t.Y(m + 1)), std::abs(2.0 * m / x * t.Y(m))});
      CHECK(std::abs(t.J(m - 1) + t.J(m + 1) - 2.0 * m / x * t.J(m)) < 1e-10 * sj);
      CHECK(std::abs(t.Y(m - 1) + t.Y(m + 1) - 2.0 * m / x * t.Y(m)) < 1e-10 * sy);
      CHECK(std::abs(t.H(m - 1) + t.H(m + 1) - 2.0 * m / x * t.H(m)) < 1e-10 * std::max(sj, sy));
    }
  }
}

TEST_CASE("negative orders reflect exactly") {
  BesselTable t(30, 2.2);
  for (int m = 0; m <= 30; ++m) {
    const double s = (m % 2) ? -1.0 : 1.0;
    CHECK(t.J(-m) == s * t.J(m));
    CHECK(t.Y(-m) == s * t.Y(m));
    CHECK(t.dY(-m) == s * t.dY(m));
    CHECK(cyl_eval(CylKind::H1, -m, 2.2).value == s * cyl_eval(CylKind::H1, m, 2.2).value);
  }
}

TEST_CASE("domain and overflow errors") {
  CHECK_THROWS_AS(cyl_eval(CylKind::Y, 2, 0.0), DomainError);
  CHECK_THROWS_AS(cyl_eval(CylKind::H1, 0, -1.0), DomainError);
  CHECK_THROWS_AS(cyl_eval(CylKind::J, 0, -1.0), DomainError);
  CHECK_THROWS_AS(cyl_eval(CylKind::J, 81, 1.0), DomainError);
  CHECK_THROWS_AS(cyl_eval(CylKind::Y, 80, 1e-3), OverflowError);
}

TEST_CASE("Graf: zero displacement is the identity") {
  const auto T = graf_matrix(2.0, Vec2::Zero(), 20, GrafRegime::RegularToRegular);
  CHECK((T.entries - CMatrix::Identity(41, 41)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(graf_matrix(2.0, Vec2::Zero(), 20, GrafRegime::OutgoingToRegular), DomainError);
}

namespace {

CVector random_coeffs(int M, int inner, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVector c = CVector::Zero(2 * M + 1);
  for (int m = -inner; m <= inner; ++m)
    c(m + M) = cplx(u(rng), u(rng));
  return c;
}

// max |sum c Psi(x - z) - sum (Tc) Phi(x)| / max |sum c Psi(x - z)| over probes,
// with c populated up to order `inner`.
double equivalence_defect(GrafRegime regime, const Vec2 &z, double probe_radius, double k, int M,
                          int inner) {
  const CVector c = random_coeffs(M, inner, 11);
  const CVector Tc = graf_matrix(k, z, M, regime).entries * c;
  const bool src_out = regime != GrafRegime::RegularToRegular;
  const bool dst_out = regime == GrafRegime::OutgoingToOutgoing;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double t = ang(rng);
    const Vec2 x = probe_radius * Vec2(std::cos(t), std::sin(t));
    const cplx a = cylinder_series(c, k, x - z, src_out);
    const cplx b = cylinder_series(Tc, k, x, dst_out);
    worst = std::max(worst, std::abs(a - b));
    scale = std::max(scale, std::abs(a));
  }
  return worst / scale;
}

} // namespace

TEST_CASE("Graf field equivalence, regular to regular") {
  CHECK(equivalence_defect(GrafRegime::RegularToRegular, Vec2(0.3, 0.1), 0.9, 2.0, 30, 15) < 1e-8);
  CHECK(equivalence_defect(GrafRegime::RegularToRegular, Vec2(-0.5, 0.4), 0.3, 4.0, 30, 15) < 1e-8);
}

TEST_CASE("Graf field equivalence, outgoing to outgoing outside |z|") {
  // Outgoing sources spread over orders n - m with weight (|z|/|x|)^|n - m|, so
  // the target needs a margin well beyond the populated orders.
  CHECK(equivalence_defect(GrafRegime::OutgoingToOutgoing, Vec2(0.3, 0.1), 1.0, 2.0, 40, 8) < 1e-8);
  CHECK(equivalence_defect(GrafRegime::OutgoingToOutgoing, Vec2(0.2, -0.4), 1.5, 4.0, 40, 8) < 1e-8);
}

TEST_CASE("Graf field equivalence, outgoing to regular inside |z|") {
  CHECK(equivalence_defect(GrafRegime::OutgoingToRegular, Vec2(0.6, 0.2), 0.2, 2.0, 40, 8) < 1e-8);
}

TEST_CASE("Graf: T(z) T(-z) is the identity on the inner block") {
  const int M = 40, inner = M - kDefaultGrafBuffer;
  const Vec2 z(0.3, -0.2);
  const CMatrix P = graf_matrix(2.0, z, M, GrafRegime::RegularToRegular).entries *
                    graf_matrix(2.0, -z, M, GrafRegime::RegularToRegular).entries;
  const int lo = M - inner, n = 2 * inner + 1;
  CHECK((P.block(lo, lo, n, n) - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("Graf precondition on the order bound") {
  CHECK_THROWS_AS(graf_matrix(2.0, Vec2(0.5, 0.0), 10, GrafRegime::RegularToRegular), DomainError);
  CHECK_NOTHROW(graf_matrix(2.0, Vec2(0.5, 0.0), 16, GrafRegime::RegularToRegular));
  CHECK_THROWS_AS(graf_matrix(2.0, Vec2(0.5, 0.0), 41, GrafRegime::RegularToRegular), DomainError);
}
