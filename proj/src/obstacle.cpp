#include "cornersampler/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cornersampler/cache.hpp"

namespace cornersampler {

AdmissibilityReport check_admissible(const Medium &med, const TestDisk &disk, int M) {
  AdmissibilityReport rep;
  rep.embedded = disk.radius > 0.0 && disk.center.norm() + disk.radius < med.R;
  if (!rep.embedded)
    rep.message = "disk not strictly embedded in B_R (|z| + rho >= R)";

  const double x = med.k1() * disk.radius;
  rep.eigenvalue_guard = true;
  rep.guard_value = std::numeric_limits<double>::infinity();
  const int top = std::min(M, static_cast<int>(std::ceil(x)) - 1);
  if (top >= 0 && x > 0.0) {
    BesselTable j(std::max(top, 0), x, false);
    for (int m = 0; m <= top; ++m) {
      if (!(m < x))
        break;
      const double v = std::abs(j.J(m));
      rep.guard_value = std::min(rep.guard_value, v);
      if (v <= kDirichletGuard && rep.eigenvalue_guard) {
        rep.eigenvalue_guard = false;
        rep.offending_mode = m;
      }
    }
  }
  if (!rep.eigenvalue_guard) {
    if (!rep.message.empty())
      rep.message += "; ";
    rep.message += "k1^2 n0 near a Dirichlet eigenvalue of the disk (mode " +
                   std::to_string(*rep.offending_mode) + ")";
  }
  return rep;
}

namespace {

// Modulus of the concentric annulus conformally equivalent to B_R minus the
// disk. Mode-matching errors decay like q^order.
double annulus_ratio(double R, double d, double rho) {
  if (d == 0.0)
    return rho / R;
  const double s = (R * R + d * d - rho * rho) / d;
  const double a = 0.5 * (s - std::sqrt(s * s - 4.0 * R * R));
  return (std::abs(a - d) / rho) / (a / R);
}

// Largest order whose Y_m(x) stays comfortably inside double range.
int hankel_order_cap(double x) {
  const double budget = 280.0 * std::log(10.0);
  int m = 1;
  while (m < kMaxInternalOrder &&
         std::lgamma(m + 1.0) + (m + 1) * std::log(2.0 / x) < budget)
    ++m;
  return m;
}

} // namespace

int ObstacleSolver::internal_order(const Medium &med, const TestDisk &disk, int M, int graf_buffer) {
  const double dist = disk.center.norm();
  int L = std::max(M, static_cast<int>(std::ceil(med.k1() * dist)) + graf_buffer);
  // The disk-to-origin translation converges like (|z|/R)^order.
  const double q = std::max(annulus_ratio(med.R, dist, disk.radius), dist / med.R);
  if (q > 0.0 && q < 1.0)
    L = std::max(L, static_cast<int>(std::ceil(std::log(kSeriesTol) / std::log(q))));
  L = std::min(L, hankel_order_cap(med.k1() * disk.radius));
  return std::max(M, L);
}

ObstacleSolver::ObstacleSolver(const Medium &med, const TestDisk &disk, int M, int graf_buffer)
    : med_(med), disk_(disk), M_(M) {
  med.validate();
  if (M < 0)
    throw DomainError("ObstacleSolver: negative order bound");
  if (!(disk.radius > 0.0) || !(disk.center.norm() + disk.radius < med.R))
    throw InvalidGeometry("test disk must satisfy |z| + rho < R");

  Mi_ = internal_order(med, disk, M, graf_buffer);
  const int Mi = Mi_;
  const int L = 2 * Mi + 1;
  const double k = med.k, k1 = med.k1(), R = med.R;
  const double lk1 = med.lambda * k1;

  // Origin-frame regular waves seen from the disk centre, and disk-frame
  // outgoing waves seen from the origin at |x| = R > |z|.
  const CMatrix to_disk = graf_matrix(k1, -disk.center, Mi, GrafRegime::RegularToRegular,
                                      graf_buffer, 2 * Mi).entries;
  const CMatrix to_origin = graf_matrix(k1, disk.center, Mi, GrafRegime::OutgoingToOutgoing,
                                        graf_buffer, 2 * Mi).entries;

  BesselTable at_disk(Mi, k1 * disk.radius);
  BesselTable in(Mi, k1 * R);
  BesselTable out(Mi, k * R);

  c_scale_.resize(L);
  e_scale_.resize(L);
  b_scale_.resize(L);
  row_scale_.resize(L);
  inc_j_.resize(L);
  inc_dj_.resize(L);
  for (int m = -Mi; m <= Mi; ++m) {
    c_scale_(m + Mi) = 1.0 / at_disk.H(m);
    e_scale_(m + Mi) = std::abs(in.H(m));
    b_scale_(m + Mi) = 1.0 / out.H(m);
    row_scale_(m + Mi) = 1.0 / (1.0 + std::abs(m));
    inc_j_(m + Mi) = out.J(m);
    inc_dj_(m + Mi) = out.dJ(m);
  }

  CMatrix A = CMatrix::Zero(3 * L, 3 * L);
  // Dirichlet rows: c_m H_m(k1 rho) + J_m(k1 rho) (T_rr e)_m = 0.
  for (int m = -Mi; m <= Mi; ++m) {
    const int r = m + Mi;
    A(r, r) = 1.0;
    for (int n = -Mi; n <= Mi; ++n)
      A(r, L + n + Mi) = at_disk.J(m) * to_disk(r, n + Mi) * e_scale_(n + Mi);
  }
  // Value and flux continuity at |x| = R, mode by mode.
  for (int n = -Mi; n <= Mi; ++n) {
    const int rv = L + n + Mi, rf = 2 * L + n + Mi;
    const cplx hin = in.H(n), dhin = in.dH(n);
    for (int m = -Mi; m <= Mi; ++m) {
      const cplx t = to_origin(n + Mi, m + Mi) * c_scale_(m + Mi);
      A(rv, m + Mi) = hin * t;
      A(rf, m + Mi) = row_scale_(n + Mi) * lk1 * dhin * t;
    }
    A(rv, L + n + Mi) = in.J(n) * e_scale_(n + Mi);
    A(rf, L + n + Mi) = row_scale_(n + Mi) * lk1 * in.dJ(n) * e_scale_(n + Mi);
    A(rv, 2 * L + n + Mi) = -1.0;
    A(rf, 2 * L + n + Mi) = -row_scale_(n + Mi) * k * out.dH(n) * b_scale_(n + Mi);
  }

  lu_.compute(A);
  rcond_ = lu_.rcond();
  if (!(rcond_ > 1e-14))
    throw SingularSystem("obstacle system singular (rcond " + std::to_string(rcond_) + ")",
                         1.0 / std::max(rcond_, 1e-300));
}

CMatrix ObstacleSolver::rhs(const std::vector<double> &angles) const {
  const int Mi = Mi_, L = 2 * Mi + 1;
  CMatrix B = CMatrix::Zero(3 * L, static_cast<Eigen::Index>(angles.size()));
  for (std::size_t j = 0; j < angles.size(); ++j) {
    for (int n = -Mi; n <= Mi; ++n) {
      const cplx p = ipow(n) * std::polar(1.0, -n * angles[j]);
      B(L + n + Mi, j) = p * inc_j_(n + Mi);
      B(2 * L + n + Mi, j) = row_scale_(n + Mi) * med_.k * p * inc_dj_(n + Mi);
    }
  }
  return B;
}

ScatterSolution ObstacleSolver::unpack(const CVector &x) const {
  const int L = 2 * Mi_ + 1;
  ScatterSolution s;
  s.disk_outgoing = x.segment(0, L).cwiseProduct(c_scale_);
  s.origin_regular = x.segment(L, L).cwiseProduct(e_scale_);
  s.exterior_outgoing = x.segment(2 * L, L).cwiseProduct(b_scale_);
  return s;
}

ScatterSolution ObstacleSolver::solve(double incident_angle) const {
  const CMatrix x = lu_.solve(rhs({incident_angle}));
  return unpack(x.col(0));
}

CMatrix ObstacleSolver::exterior_coefficients(const std::vector<double> &angles) const {
  const int L = 2 * Mi_ + 1, off = Mi_ - M_, n = 2 * M_ + 1;
  const CMatrix x = lu_.solve(rhs(angles));
  CMatrix b = x.middleRows(2 * L + off, n);
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    b.col(j) = b.col(j).cwiseProduct(b_scale_.segment(off, n));
  return b;
}

ScatterSolution solve_plane_wave(const Medium &med, const TestDisk &disk, double incident_angle,
                                 int M) {
  const auto rep = check_admissible(med, disk, M);
  if (!rep.ok())
    throw InvalidGeometry("inadmissible test disk: " + rep.message);
  return ObstacleSolver(med, disk, M).solve(incident_angle);
}

namespace {

// Value and radial (w.r.t. the origin) derivative of sum_m c_m H_m(k|x-z|)
// e^{i m arg(x-z)}.
std::pair<cplx, cplx> outgoing_series_with_radial(const CVector &c, double k, const Vec2 &z,
                                                  const Vec2 &x) {
  const int M = static_cast<int>(c.size() - 1) / 2;
  const Vec2 y = x - z;
  const double s = y.norm(), phi = polar_angle(y);
  BesselTable t(M, k * s);
  cplx v = 0.0, ds = 0.0, dphi = 0.0;
  for (int m = -M; m <= M; ++m) {
    const cplx e = std::polar(1.0, m * phi);
    v += c(m + M) * t.H(m) * e;
    ds += c(m + M) * k * t.dH(m) * e;
    dphi += c(m + M) * kI * static_cast<double>(m) * t.H(m) * e;
  }
  const Vec2 shat(std::cos(phi), std::sin(phi)), phat(-std::sin(phi), std::cos(phi));
  const Vec2 xhat = x.normalized();
  return {v, ds * shat.dot(xhat) + dphi / s * phat.dot(xhat)};
}

} // namespace

BoundaryResiduals boundary_residuals(const Medium &med, const TestDisk &disk,
                                     const ScatterSolution &sol, double incident_angle,
                                     int n_points) {
  const double k = med.k, k1 = med.k1(), R = med.R;
  const Vec2 d(std::cos(incident_angle), std::sin(incident_angle));
  BoundaryResiduals res;

  for (int i = 0; i < n_points; ++i) {
    const double phi = grid_angle(i, n_points);
    const Vec2 x = disk.center + disk.radius * Vec2(std::cos(phi), std::sin(phi));
    const cplx v = cylinder_series(sol.disk_outgoing, k1, x - disk.center, true) +
                   cylinder_series(sol.origin_regular, k1, x, false);
    res.dirichlet = std::max(res.dirichlet, std::abs(v));
  }

  const int M = static_cast<int>(sol.exterior_outgoing.size() - 1) / 2;
  BesselTable in(M, k1 * R), out(M, k * R);
  for (int i = 0; i < n_points; ++i) {
    const double th = grid_angle(i, n_points);
    const Vec2 x = R * Vec2(std::cos(th), std::sin(th));
    auto [vd, dvd] = outgoing_series_with_radial(sol.disk_outgoing, k1, disk.center, x);
    cplx vi = vd, dvi = dvd;
    cplx vo = std::exp(kI * k * x.dot(d));
    cplx dvo = kI * k * Vec2(std::cos(th), std::sin(th)).dot(d) * vo;
    for (int n = -M; n <= M; ++n) {
      const cplx e = std::polar(1.0, n * th);
      vi += sol.origin_regular(n + M) * in.J(n) * e;
      dvi += sol.origin_regular(n + M) * k1 * in.dJ(n) * e;
      vo += sol.exterior_outgoing(n + M) * out.H(n) * e;
      dvo += sol.exterior_outgoing(n + M) * k * out.dH(n) * e;
    }
    res.transmission_value = std::max(res.transmission_value, std::abs(vo - vi));
    res.transmission_flux = std::max(res.transmission_flux, std::abs(dvo - med.lambda * dvi) / k);
  }
  return res;
}

cplx total_field(const Medium &med, const TestDisk &disk, const ScatterSolution &sol,
                 double incident_angle, const Vec2 &x) {
  if (x.norm() > med.R) {
    const Vec2 d(std::cos(incident_angle), std::sin(incident_angle));
    return std::exp(kI * med.k * x.dot(d)) + cylinder_series(sol.exterior_outgoing, med.k, x, true);
  }
  if ((x - disk.center).norm() < disk.radius)
    throw DomainError("total_field: point inside the sound-soft disk");
  return cylinder_series(sol.disk_outgoing, med.k1(), x - disk.center, true) +
         cylinder_series(sol.origin_regular, med.k1(), x, false);
}

FarFieldOperatorMatrix obstacle_far_field_operator(const Medium &med, const TestDisk &disk, int N,
                                                   int M, OperatorCache *cache) {
  check_grid(N, M);
  if (cache) {
    if (auto hit = cache->lookup(med, disk, N, M))
      return std::move(*hit);
  }
  const auto rep = check_admissible(med, disk, M);
  if (!rep.ok())
    throw InvalidGeometry("inadmissible test disk: " + rep.message);

  const ObstacleSolver solver(med, disk, M);
  std::vector<double> angles(N);
  for (int j = 0; j < N; ++j)
    angles[j] = grid_angle(j, N);
  FarFieldOperatorMatrix F(far_field_kernel_from_modes(solver.exterior_coefficients(angles), med.k));
  if (cache)
    cache->store(med, disk, N, M, F);
  return F;
}

} // namespace cornersampler
