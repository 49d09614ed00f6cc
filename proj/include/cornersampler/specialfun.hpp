#pragma once

#include <vector>

#include "cornersampler/types.hpp"

namespace cornersampler {

inline constexpr int kDefaultMaxOrder = 80;
inline constexpr int kDefaultGrafBuffer = 15;

enum class CylKind { J, Y, H1 };

struct CylValue {
  cplx value;
  cplx derivative;
};

/// Integer-order Bessel functions J_m, Y_m (and their derivatives) at one real
/// argument, for all orders |m| <= max_order.
///
/// J comes from Miller's backward recurrence normalised with
/// J_0 + 2 sum J_2k = 1. Y_0 and Y_1 are Neumann series in the same J values,
/// and higher Y orders follow by upward recurrence, which is stable for Y.
class BesselTable {
public:
  BesselTable(int max_order, double x, bool with_y = true);

  int max_order() const { return max_order_; }
  double arg() const { return x_; }
  bool has_y() const { return !y_.empty(); }

  double J(int m) const { return signed_lookup(j_, m); }
  double dJ(int m) const { return signed_lookup(dj_, m); }
  double Y(int m) const { return signed_lookup(y_, m); }
  double dY(int m) const { return signed_lookup(dy_, m); }
  cplx H(int m) const { return {J(m), Y(m)}; }
  cplx dH(int m) const { return {dJ(m), dY(m)}; }

  CylValue eval(CylKind kind, int m) const;

private:
  double signed_lookup(const std::vector<double> &v, int m) const;

  int max_order_;
  double x_;
  std::vector<double> j_, dj_, y_, dy_;
};

/// Single cylinder-function evaluation. Y and H1 require arg > 0.
CylValue cyl_eval(CylKind kind, int order, double arg,
                  int max_order = kDefaultMaxOrder);

// ---------------------------------------------------------------------------
// Graf translation.
//
// Convention: for a coefficient vector c indexed by m in [-M, M],
//
//   sum_m c_m Psi_m(x - z) = sum_n (T c)_n Phi_n(x),
//   T_{nm} = Z_{n-m}(k|z|) exp(-i (n-m) arg z),
//
// with Psi_m(y) = C_m(k|y|) e^{i m arg y}. The regimes are
//
//   RegularToRegular    Psi = J, Phi = J, Z = J, any x;
//   OutgoingToOutgoing  Psi = H, Phi = H, Z = J, |x| > |z|;
//   OutgoingToRegular   Psi = H, Phi = J, Z = H, |x| < |z|.
//
// The field-equivalence tests pin these down; nothing else relies on the
// formula being transcribed from a particular reference.
// ---------------------------------------------------------------------------
enum class GrafRegime { RegularToRegular, OutgoingToOutgoing, OutgoingToRegular };

struct TranslationMatrix {
  int order_bound = 0;
  Vec2 displacement = Vec2::Zero();
  double wavenumber = 0.0;
  GrafRegime regime = GrafRegime::RegularToRegular;
  CMatrix entries; // (2M+1) x (2M+1), row n+M, column m+M
};

TranslationMatrix graf_matrix(double k, const Vec2 &displacement, int M,
                              GrafRegime regime,
                              int buffer = kDefaultGrafBuffer,
                              int max_order = kDefaultMaxOrder);

/// Evaluates sum_m c_m C_m(k|y|) e^{i m arg y} with C = J (regular) or H1.
cplx cylinder_series(const CVector &coeffs, double k, const Vec2 &y,
                     bool outgoing);

} // namespace cornersampler
