#include "cornersampler/validate.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "cornersampler/cache.hpp"
#include "cornersampler/config.hpp"
#include "cornersampler/io.hpp"
#include "cornersampler/reconstruct.hpp"
#include "cornersampler/source.hpp"

namespace cornersampler {

bool SuiteResult::pass() const {
  for (const auto &c : checks)
    if (!c.pass)
      return false;
  return !checks.empty();
}

namespace {

class Suite {
public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  // Runs `measure` and records pass iff the defect is finite and <= tol.
  void check(const std::string &name, double tol, const std::function<double()> &measure) {
    CheckResult c;
    c.name = name;
    c.tolerance = tol;
    try {
      c.value = measure();
      c.pass = std::isfinite(c.value) && c.value <= tol;
    } catch (const std::exception &e) {
      c.error = e.what();
      c.value = std::numeric_limits<double>::infinity();
    }
    result_.checks.push_back(std::move(c));
  }

  SuiteResult done() { return std::move(result_); }

private:
  SuiteResult result_;
};

const Medium kLayered{2.0, 4.0, 1.0, 0.5};
const Medium kFree{2.0, 1.0, 1.0, 1.0};

SuiteResult specialfun_suite(const ValidateOptions &opts) {
  Suite s("specialfun");
  s.check("wronskian", 1e-12, [&] {
    double worst = 0.0;
    for (double x : {0.1, 1.0, 5.0, 20.0}) {
      BesselTable t(40, x);
      for (int m = 0; m <= 40; ++m) {
        const double w = t.J(m) * t.dY(m) - t.dJ(m) * t.Y(m);
        worst = std::max(worst, std::abs(w - 2.0 / (kPi * x)) + opts.wronskian_perturbation);
      }
    }
    return worst;
  });
  s.check("three_term_recurrence", 1e-10, [] {
    double worst = 0.0;
    for (double x : {0.5, 3.0, 17.0, 45.0}) {
      BesselTable t(42, x);
      for (int m = 1; m <= 40; ++m) {
        const cplx lhs = t.H(m - 1) + t.H(m + 1), rhs = 2.0 * m / x * t.H(m);
        const double scale = std::max({std::abs(t.H(m - 1)), std::abs(t.H(m + 1)), std::abs(rhs)});
        const double rj = std::abs(lhs.real() - rhs.real()) /
                          std::max({std::abs(t.J(m - 1)), std::abs(t.J(m + 1)), std::abs(rhs.real())});
        worst = std::max({worst, std::abs(lhs - rhs) / scale, rj});
      }
    }
    return worst;
  });
  s.check("negative_order_reflection", 0.0, [] {
    double worst = 0.0;
    BesselTable t(30, 7.3);
    for (int m = 0; m <= 30; ++m) {
      const double sgn = (m % 2) ? -1.0 : 1.0;
      worst = std::max({worst, std::abs(t.J(-m) - sgn * t.J(m)), std::abs(t.Y(-m) - sgn * t.Y(m))});
    }
    return worst;
  });
  s.check("graf_regular_identity", 0.0, [] {
    const auto T = graf_matrix(2.0, Vec2::Zero(), 20, GrafRegime::RegularToRegular);
    return (T.entries - CMatrix::Identity(41, 41)).cwiseAbs().maxCoeff();
  });
  s.check("graf_field_equivalence", 1e-8, [] {
    const Vec2 z(0.3, 0.1);
    const int M = 30, inner = M - kDefaultGrafBuffer;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVector c = CVector::Zero(2 * M + 1);
    for (int m = -inner; m <= inner; ++m)
      c(m + M) = cplx(u(rng), u(rng));
    const auto T = graf_matrix(2.0, z, M, GrafRegime::RegularToRegular).entries;
    const CVector Tc = T * c;
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double t = 2.0 * kPi * i / 20.0 + 0.1;
      const Vec2 x(0.9 * std::cos(t), 0.9 * std::sin(t));
      const cplx a = cylinder_series(c, 2.0, x - z, false), b = cylinder_series(Tc, 2.0, x, false);
      worst = std::max(worst, std::abs(a - b));
      scale = std::max(scale, std::abs(a));
    }
    return worst / scale;
  });
  return s.done();
}

SuiteResult geometry_suite() {
  Suite s("geometry");
  s.check("triangle_x2y", 1e-12, [] {
    const Polygon p = validate_polygon(std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}});
    const auto q = polygon_quadrature(p, 6);
    return std::abs(q.integrate([](const Vec2 &x) { return x.x() * x.x() * x.y(); }) - 1.0 / 60.0);
  });
  s.check("weight_sum_equals_area", 1e-12, [] {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> angles(3 + trial % 6);
      for (double &a : angles)
        a = u(rng);
      std::sort(angles.begin(), angles.end());
      angles.erase(std::unique(angles.begin(), angles.end(),
                               [](double a, double b) { return b - a < 1e-3; }),
                   angles.end());
      if (angles.size() < 3)
        continue;
      std::vector<Vec2> v;
      for (double a : angles)
        v.emplace_back(0.6 * std::cos(a), 0.6 * std::sin(a));
      try {
        const Polygon p = validate_polygon(v);
        const auto q = polygon_quadrature(p, 5);
        worst = std::max(worst, std::abs(q.weight_sum() - p.area()) / p.area());
      } catch (const InvalidGeometry &) {
      }
    }
    return worst;
  });
  s.check("disk_containment_grid", 0.0, [] {
    const Polygon p = validate_polygon(std::vector<Vec2>{{0.1, 0.1}, {0.5, 0.15}, {0.2, 0.5}});
    const DiskD d(p.centroid(), 0.3);
    if (!disk_contains_polygon(d, p))
      return 1.0;
    double violations = 0.0;
    for (int i = 0; i <= 100; ++i)
      for (int j = 0; j <= 100; ++j) {
        const Vec2 x(0.1 + 0.4 * i / 100.0, 0.1 + 0.4 * j / 100.0);
        if (p.contains(x) && !d.contains(x))
          violations += 1.0;
      }
    return violations;
  });
  return s.done();
}

SuiteResult medium_suite() {
  Suite s("medium");
  s.check("unimodular_modes", 1e-10, [] {
    double worst = 0.0;
    for (int m = -30; m <= 30; ++m)
      worst = std::max(worst, std::abs(std::abs(1.0 + 2.0 * exterior_incidence_coeffs(kLayered, m)
                                                                  .exterior_reflected) -
                                       1.0));
    return worst;
  });
  s.check("s0_unitary", 1e-8, [] {
    const auto F0 = background_far_field_operator(kLayered, 64, 30);
    const auto S0 = scattering_operator(F0, kLayered.k);
    return operator_norm(compose(adjoint(S0), S0) - FarFieldOperatorMatrix::identity(64));
  });
  s.check("f0_reciprocity", 1e-10, [] {
    return reciprocity_defect(background_far_field_operator(kLayered, 64, 30));
  });
  s.check("transparent_limit", 1e-14, [] {
    double worst = 0.0;
    for (int m = -10; m <= 10; ++m) {
      const auto a = interior_source_coeffs(kFree, m);
      const auto b = exterior_incidence_coeffs(kFree, m);
      worst = std::max({worst, std::abs(a.interior_regular), std::abs(a.exterior_outgoing - 1.0),
                        std::abs(b.exterior_reflected), std::abs(b.interior_transmitted - 1.0)});
    }
    return worst;
  });
  s.check("free_space_green_far_field", 1e-8, [] {
    const Vec2 y(0.3, -0.2);
    const auto g = synthesize_from_modes(greens_far_field(kFree, y, 40), 64);
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double t = grid_angle(i, 64);
      const cplx ref = far_field_gamma(kFree.k) *
                       std::exp(-kI * kFree.k * (std::cos(t) * y.x() + std::sin(t) * y.y()));
      worst = std::max(worst, std::abs(g.values(i) - ref));
    }
    return worst;
  });
  return s.done();
}

SuiteResult source_suite() {
  Suite s("source_radiation");
  const Polygon tri = validate_polygon(std::vector<Vec2>{{0.1, 0.1}, {0.5, 0.15}, {0.2, 0.5}});
  s.check("linearity", 1e-12, [&] {
    const SourceSpec a{tri, ConstantAmplitude{1.0}};
    AffineAmplitude aff;
    aff.a << cplx(0.5, 0.0), cplx(0.0, -1.0);
    const SourceSpec b{tri, aff};
    AffineAmplitude sum = aff;
    sum.c += 1.0;
    const SourceSpec ab{tri, sum};
    const auto ua = radiate(kLayered, a, 8, 30, 64), ub = radiate(kLayered, b, 8, 30, 64);
    const auto uab = radiate(kLayered, ab, 8, 30, 64);
    return (uab.values - ua.values - ub.values).norm() / uab.values.norm();
  });
  s.check("non_radiating_bump", 1e-6, [] {
    const NonRadiatingBump bump{Vec2(0.2, -0.1), 0.3, 3};
    const SourceSpec src{DiskD(bump.center, bump.radius), bump};
    const auto u = radiate(kFree, src, 16, 40, 64);
    return u.norm() / source_l2_norm(kFree, src, 16);
  });
  s.check("zero_amplitude", 0.0, [&] {
    return radiate(kLayered, SourceSpec{tri, ConstantAmplitude{0.0}}, 6, 30, 64).values.norm();
  });
  s.check("corner_radiates", 1.0, [&] {
    const SourceSpec src{tri, ConstantAmplitude{1.0}};
    const auto u = radiate(kLayered, src, 12, 40, 128);
    const auto u2 = radiate(kLayered, src, 20, 40, 128);
    const double delta = (u2.values - u.values).norm() * std::sqrt(u.weight());
    return 1e3 * delta / u.norm();
  });
  return s.done();
}

SuiteResult obstacle_suite() {
  Suite s("obstacle");
  const TestDisk disk{Vec2(0.2, 0.1), 0.4};
  s.check("boundary_residuals", 1e-8, [&] {
    double worst = 0.0;
    const ObstacleSolver solver(kLayered, disk, 30);
    for (double angle : {0.0, 1.3, 4.0}) {
      const auto r = boundary_residuals(kLayered, disk, solver.solve(angle), angle);
      worst = std::max({worst, r.dirichlet, r.transmission_value, r.transmission_flux});
    }
    return worst;
  });
  s.check("operator_reciprocity", 1e-8,
          [&] { return reciprocity_defect(obstacle_far_field_operator(kLayered, disk, 64, 30)); });
  s.check("combined_unitarity", 1e-8, [&] {
    const auto F = obstacle_far_field_operator(kLayered, disk, 64, 30);
    const auto S = scattering_operator(F, kLayered.k);
    return operator_norm(compose(adjoint(S), S) - FarFieldOperatorMatrix::identity(64));
  });
  s.check("free_space_translation", 1e-8, [] {
    const double rho = 0.3;
    const Vec2 z(0.25, -0.15);
    const int N = 64, M = 30;
    const auto F = obstacle_far_field_operator(kFree, TestDisk{z, rho}, N, M);
    BesselTable t(M, kFree.k * rho);
    CMatrix B(2 * M + 1, N);
    for (int j = 0; j < N; ++j)
      for (int n = -M; n <= M; ++n)
        B(n + M, j) = -t.J(n) / t.H(n) * ipow(n) * std::polar(1.0, -n * grid_angle(j, N));
    const CMatrix K0 = far_field_kernel_from_modes(B, kFree.k);
    double worst = 0.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        const double ti = grid_angle(i, N), tj = grid_angle(j, N);
        const Vec2 diff(std::cos(ti) - std::cos(tj), std::sin(ti) - std::sin(tj));
        const cplx ref = K0(i, j) * std::exp(-kI * kFree.k * diff.dot(z));
        worst = std::max(worst, std::abs(F.kernel()(i, j) - ref));
      }
    return worst;
  });
  return s.done();
}

SuiteResult factorization_suite() {
  Suite s("factorization");
  const TestDisk disk{Vec2(0.1, 0.0), 0.35};
  const auto F0 = background_far_field_operator(kLayered, 64, 30);
  const auto Fo = obstacle_far_field_operator(kLayered, disk, 64, 30);
  const auto Fs = f_sharp(F0, Fo, kLayered.k);
  s.check("f_sharp_hermitian", 1e-12, [&] {
    return (Fs.kernel() - Fs.kernel().adjoint()).norm() / Fs.kernel().norm();
  });
  const EigenSystem eig = eigensystem(Fs);
  s.check("f_sharp_psd", 1e-12, [&] {
    return std::max(0.0, -eig.eigenvalues.minCoeff()) / eig.eigenvalues(0);
  });
  s.check("eigenvector_orthonormality", 1e-10, [&] {
    const CMatrix G = eig.eigenvectors.adjoint() * eig.eigenvectors * Fs.weight();
    return (G - CMatrix::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
  });
  s.check("picard_of_first_eigenvector", 1e-10, [&] {
    const auto p = picard_indicator(eig.vector(0), eig);
    return std::abs(p.W * eig.eigenvalues(0) - 1.0);
  });
  s.check("weighted_adjoint", 1e-12, [&] {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n;
    FarFieldVector f(CVector(64)), g(CVector(64));
    for (int i = 0; i < 64; ++i) {
      f.values(i) = cplx(n(rng), n(rng));
      g.values(i) = cplx(n(rng), n(rng));
    }
    const cplx lhs = inner(Fo.apply(f), g), rhs = inner(f, adjoint(Fo).apply(g));
    return std::abs(lhs - rhs) / std::abs(lhs);
  });
  return s.done();
}

SuiteResult reconstruct_suite() {
  Suite s("reconstruct");
  s.check("lens_area", 0.0, [] {
    const TestDisk a{Vec2(-0.1, 0.0), 0.5}, b{Vec2(0.2, 0.1), 0.45};
    const auto est = support_estimate({a, b}, 1.0, 400);
    const double h = est.pixel_size();
    const double err = std::abs(est.area() - lens_area(a, b));
    // Two pixel rows along the lens perimeter (< 2 pi r_max).
    const double allowed = 2.0 * h * 2.0 * kPi * 0.5;
    return err > allowed ? err : 0.0;
  });
  s.check("intersection_monotone", 0.0, [] {
    std::vector<TestDisk> disks{{Vec2(0.0, 0.0), 0.6}};
    auto prev = support_estimate(disks, 1.0, 120);
    double violations = 0.0;
    for (const TestDisk &d : {TestDisk{Vec2(0.2, 0.1), 0.5}, TestDisk{Vec2(-0.1, 0.2), 0.55}}) {
      disks.push_back(d);
      const auto next = support_estimate(disks, 1.0, 120);
      for (std::size_t i = 0; i < next.mask.size(); ++i)
        if (next.mask[i] && !prev.mask[i])
          violations += 1.0;
      prev = next;
    }
    return violations;
  });
  return s.done();
}

SuiteResult cli_io_suite() {
  Suite s("cli_io");
  s.check("config_round_trip", 0.0, [] {
    const RunConfig cfg = benchmark_config();
    const auto j1 = config_to_json(cfg);
    const auto j2 = config_to_json(config_from_json(j1));
    return j1 == j2 ? 0.0 : 1.0;
  });
  s.check("ffop_round_trip", 0.0, [] {
    const auto F0 = background_far_field_operator(kLayered, 16, 7);
    std::stringstream ss;
    write_ffop(ss, F0);
    return (read_ffop(ss).kernel() - F0.kernel()).cwiseAbs().maxCoeff();
  });
  s.check("fffile_round_trip", 0.0, [] {
    const auto u = synthesize_from_modes(greens_far_field(kLayered, Vec2(0.1, 0.2), 20), 32);
    std::stringstream ss;
    write_fffile(ss, u, kLayered.k);
    const auto back = read_fffile(ss);
    return (back.data.values - u.values).cwiseAbs().maxCoeff() + std::abs(back.k - kLayered.k);
  });
  s.check("noise_relative_level", 0.0, [] {
    const auto u = synthesize_from_modes(greens_far_field(kLayered, Vec2(0.1, 0.2), 20), 128);
    const auto v = add_noise(u, 0.01, 42);
    const double rel = FarFieldVector(CVector(v.values - u.values)).norm() / u.norm();
    return (rel >= 0.005 && rel <= 0.02) ? 0.0 : rel;
  });
  return s.done();
}

} // namespace

std::vector<SuiteResult> run_validation(const ValidateOptions &opts) {
  return {specialfun_suite(opts), geometry_suite(),      medium_suite(),
          source_suite(),         obstacle_suite(),      factorization_suite(),
          reconstruct_suite(),    cli_io_suite()};
}

nlohmann::json validation_summary(const std::vector<SuiteResult> &suites) {
  nlohmann::json out;
  bool all = true;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &s : suites) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : s.checks) {
      nlohmann::json cj{{"name", c.name}, {"status", c.pass ? "pass" : "fail"},
                        {"tolerance", c.tolerance}};
      if (std::isfinite(c.value))
        cj["value"] = c.value;
      if (!c.error.empty())
        cj["error"] = c.error;
      checks.push_back(cj);
    }
    arr.push_back({{"suite", s.name}, {"status", s.pass() ? "pass" : "fail"}, {"checks", checks}});
    all = all && s.pass();
  }
  out["status"] = all ? "pass" : "fail";
  out["suites"] = arr;
  return out;
}

} // namespace cornersampler
