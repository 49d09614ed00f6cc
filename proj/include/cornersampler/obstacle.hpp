#pragma once

#include <optional>
#include <string>

#include <Eigen/LU>

#include "cornersampler/medium.hpp"

namespace cornersampler {

/// Sound-soft test disk embedded in B_R.
struct TestDisk {
  Vec2 center = Vec2::Zero();
  double radius = 0.1;

  friend bool operator==(const TestDisk &a, const TestDisk &b) {
    return a.center == b.center && a.radius == b.radius;
  }
};

inline constexpr double kDirichletGuard = 1e-6;
inline constexpr double kSeriesTol = 1e-13;
inline constexpr int kMaxInternalOrder = 80;

struct AdmissibilityReport {
  bool embedded = false;
  bool eigenvalue_guard = false;
  std::optional<int> offending_mode;
  double guard_value = 0.0; // smallest |J_m(k1 rho)| over guarded modes
  std::string message;

  bool ok() const { return embedded && eigenvalue_guard; }
};

/// |z| + rho < R, and k1^2 kept away from the Dirichlet spectrum of the disk:
/// |J_m(k1 rho)| > 1e-6 for every |m| <= M that can vanish there (|m| < k1 rho;
/// J_m has no zeros in (0, m]).
AdmissibilityReport check_admissible(const Medium &med, const TestDisk &disk, int M);

struct ScatterSolution {
  CVector disk_outgoing;     // c_m, waves H_m(k1|x-z|) e^{i m arg(x-z)}
  CVector origin_regular;    // e_m, waves J_m(k1|x|) e^{i m arg x}
  CVector exterior_outgoing; // b_m, waves H_m(k|x|) e^{i m arg x}
};

/// Mode-matching solver for plane-wave scattering by a sound-soft disk in the
/// layered medium. The dense block system in (c, e, b) is factored once and
/// reused for every incident direction.
///
/// The system is assembled at an internal order >= M chosen from the gap
/// between the disk and |x| = R (capped at 80). solve() reports every
/// internal mode; exterior_coefficients() keeps |m| <= M.
///
/// Unknowns are rescaled to boundary values (c_m H_m(k1 rho), b_m H_m(kR),
/// e_m / |H_m(k1 R)|^-1) so the matrix entries stay O(1) across modes.
class ObstacleSolver {
public:
  ObstacleSolver(const Medium &med, const TestDisk &disk, int M,
                 int graf_buffer = kDefaultGrafBuffer);

  const Medium &medium() const { return med_; }
  const TestDisk &disk() const { return disk_; }
  int order_bound() const { return M_; }
  int internal_order() const { return Mi_; }
  static int internal_order(const Medium &med, const TestDisk &disk, int M,
                            int graf_buffer = kDefaultGrafBuffer);
  /// Reciprocal condition estimate of the factored system.
  double rcond() const { return rcond_; }

  ScatterSolution solve(double incident_angle) const;
  /// Exterior coefficients b for each direction in `angles` (one column each).
  CMatrix exterior_coefficients(const std::vector<double> &angles) const;

private:
  CMatrix rhs(const std::vector<double> &angles) const;
  ScatterSolution unpack(const CVector &x) const;

  Medium med_;
  TestDisk disk_;
  int M_;
  int Mi_ = 0;
  Eigen::PartialPivLU<CMatrix> lu_;
  double rcond_ = 0.0;
  CVector c_scale_, e_scale_, b_scale_;
  CVector row_scale_;
  CVector inc_j_, inc_dj_; // J_n(kR), J_n'(kR)
};

ScatterSolution solve_plane_wave(const Medium &med, const TestDisk &disk, double incident_angle,
                                 int M);

struct BoundaryResiduals {
  double dirichlet = 0.0;          // max |v| on the disk boundary / ||v_inc||_inf
  double transmission_value = 0.0; // max |v+ - v-| on |x| = R
  double transmission_flux = 0.0;  // max |d_r v+ - lambda d_r v-| / k on |x| = R
};

/// Evaluates the three series directly (no translation) at n_points on each
/// boundary.
BoundaryResiduals boundary_residuals(const Medium &med, const TestDisk &disk,
                                     const ScatterSolution &sol, double incident_angle,
                                     int n_points = 64);

/// Scattered field v^sc outside B_R and the total field inside B_R \ Omega.
cplx total_field(const Medium &med, const TestDisk &disk, const ScatterSolution &sol,
                 double incident_angle, const Vec2 &x);

class OperatorCache;

/// Far-field operator of the disk-in-layer scatterer, column j = far field for
/// incidence d_j. Looked up in / stored to `cache` when given.
FarFieldOperatorMatrix obstacle_far_field_operator(const Medium &med, const TestDisk &disk, int N,
                                                   int M, OperatorCache *cache = nullptr);

} // namespace cornersampler
