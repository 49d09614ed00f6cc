#pragma once

#include <vector>

#include "cornersampler/farfield.hpp"
#include "cornersampler/specialfun.hpp"

namespace cornersampler {

/// Two-layer background: wavenumber k outside |x| = R, k sqrt(n0) inside,
/// with exterior normal derivative = lambda x interior normal derivative
/// across the interface.
struct Medium {
  double k = 1.0;
  double n0 = 1.0;
  double R = 1.0;
  double lambda = 1.0;

  double k1() const { return k * std::sqrt(n0); }
  /// Throws DomainError unless all parameters are finite and positive.
  void validate() const;
  bool transparent() const { return n0 == 1.0 && lambda == 1.0; }
};

/// ceil(k1 R) + 25.
int default_truncation(const Medium &med);

/// Interior point-source excitation of mode m: interior field
/// H_m(k1 r) + a J_m(k1 r), exterior field b H_m(k r).
struct InteriorSourceCoeffs {
  int mode = 0;
  cplx interior_regular;  // a_m
  cplx exterior_outgoing; // b_m
};

/// Exterior incidence J_m(k r) on the layered disk: interior t J_m(k1 r),
/// exterior J_m(k r) + rho H_m(k r).
struct ExteriorIncidenceCoeffs {
  int mode = 0;
  cplx interior_transmitted; // t_m
  cplx exterior_reflected;   // rho_m
};

InteriorSourceCoeffs interior_source_coeffs(const Medium &med, int m,
                                            int max_order = kDefaultMaxOrder);
ExteriorIncidenceCoeffs exterior_incidence_coeffs(const Medium &med, int m,
                                                  int max_order = kDefaultMaxOrder);

/// Both coefficient families for |m| <= M, computed once.
struct ModeTable {
  Medium medium;
  int M = 0;
  std::vector<InteriorSourceCoeffs> source;   // index m + M
  std::vector<ExteriorIncidenceCoeffs> incidence;

  const InteriorSourceCoeffs &src(int m) const { return source[m + M]; }
  const ExteriorIncidenceCoeffs &inc(int m) const { return incidence[m + M]; }
};

ModeTable mode_table(const Medium &med, int M);

/// Fourier coefficients g_m(y), |m| <= M, of the far field of the outgoing
/// Green's function with a unit point source at y, |y| < R:
/// G_inf(xhat, y) = sum_m g_m(y) e^{i m theta_xhat}.
CVector greens_far_field(const Medium &med, const Vec2 &y, int M);
CVector greens_far_field(const ModeTable &modes, const Vec2 &y);

/// Green's function G(x, y) of the layered medium at arbitrary x != y.
cplx greens_function(const ModeTable &modes, const Vec2 &x, const Vec2 &y);

/// Background far-field operator F0 on an N-point grid. Requires N even and
/// N >= 2M + 2 so compositions of band-limited kernels stay alias free.
FarFieldOperatorMatrix background_far_field_operator(const Medium &med, int N, int M);

/// Throws DomainError on an aliasing or odd grid.
void check_grid(int N, int M);

} // namespace cornersampler
