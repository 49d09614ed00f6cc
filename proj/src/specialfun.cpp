#include "cornersampler/specialfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cornersampler {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kRescaleAbove = 1e200;
constexpr double kRescaleBy = 1e-200;

// Miller backward recurrence. Returns J_0..J_top for some top >= n, where
// everything above n is kept because the Neumann series for Y need it.
std::vector<double> miller_j(int n, double x) {
  if (x == 0.0) {
    std::vector<double> j(n + 1, 0.0);
    j[0] = 1.0;
    return j;
  }
  const double reach = std::max(static_cast<double>(n), x);
  int start = static_cast<int>(reach) + 20 + static_cast<int>(std::sqrt(40.0 * reach));
  start += start % 2;

  std::vector<double> v(start + 2, 0.0);
  v[start] = 1.0;
  for (int m = start; m >= 1; --m) {
    v[m - 1] = (2.0 * m / x) * v[m] - v[m + 1];
    if (std::abs(v[m - 1]) > kRescaleAbove) {
      for (int i = m - 1; i <= start; ++i)
        v[i] *= kRescaleBy;
    }
  }
  double norm = v[0];
  for (int m = 2; m <= start; m += 2)
    norm += 2.0 * v[m];
  v.resize(start + 1);
  for (double &e : v)
    e /= norm;
  return v;
}

} // namespace

BesselTable::BesselTable(int max_order, double x, bool with_y)
    : max_order_(max_order), x_(x) {
  if (max_order < 0)
    throw DomainError("BesselTable: negative order bound");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw DomainError("BesselTable: argument must be finite and >= 0");

  const int n = max_order + 1; // one extra order for the derivatives
  std::vector<double> jall = miller_j(n, x);
  j_.assign(jall.begin(), jall.begin() + n + 1);

  dj_.resize(max_order + 1);
  dj_[0] = -j_[1];
  for (int m = 1; m <= max_order; ++m)
    dj_[m] = 0.5 * (j_[m - 1] - j_[m + 1]);

  if (!with_y)
    return;
  if (x <= 0.0)
    throw DomainError("Y/H1 require a strictly positive argument");

  // Y_0 = (2/pi)(ln(x/2) + gamma) J_0 - (4/pi) sum_k (-1)^k J_2k / k
  // Y_1 = -Y_0'  (termwise derivative of the series above)
  const double lg = std::log(0.5 * x) + kEulerGamma;
  double s0 = 0.0, s1 = 0.0;
  const int top = static_cast<int>(jall.size()) - 1;
  for (int k = 1; 2 * k <= top; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s0 += sign * jall[2 * k] / k;
    const double up = (2 * k + 1 <= top) ? jall[2 * k + 1] : 0.0;
    s1 += sign * (jall[2 * k - 1] - up) / k;
  }
  y_.resize(n + 1);
  y_[0] = (2.0 / kPi) * lg * jall[0] - (4.0 / kPi) * s0;
  y_[1] = -(2.0 / kPi) * jall[0] / x + (2.0 / kPi) * lg * jall[1] + (2.0 / kPi) * s1;
  for (int m = 1; m < n; ++m)
    y_[m + 1] = (2.0 * m / x) * y_[m] - y_[m - 1];

  dy_.resize(max_order + 1);
  dy_[0] = -y_[1];
  for (int m = 1; m <= max_order; ++m)
    dy_[m] = 0.5 * (y_[m - 1] - y_[m + 1]);

  for (int m = 0; m <= max_order; ++m) {
    if (!std::isfinite(y_[m]) || !std::isfinite(dy_[m]))
      throw OverflowError("Y_" + std::to_string(m) + "(" + std::to_string(x) +
                          ") exceeds the representable range");
  }
}

double BesselTable::signed_lookup(const std::vector<double> &v, int m) const {
  const int a = std::abs(m);
  if (a > max_order_)
    throw DomainError("order " + std::to_string(m) + " outside table bound " +
                      std::to_string(max_order_));
  if (v.empty())
    throw DomainError("Y requested from a J-only table");
  const double r = v[a];
  return (m < 0 && (a % 2 == 1)) ? -r : r;
}

CylValue BesselTable::eval(CylKind kind, int m) const {
  switch (kind) {
  case CylKind::J: return {J(m), dJ(m)};
  case CylKind::Y: return {Y(m), dY(m)};
  case CylKind::H1: return {H(m), dH(m)};
  }
  return {};
}

CylValue cyl_eval(CylKind kind, int order, double arg, int max_order) {
  if (std::abs(order) > max_order)
    throw DomainError("|order| " + std::to_string(order) +
                      " exceeds configured maximum " + std::to_string(max_order));
  if (kind != CylKind::J && !(arg > 0.0))
    throw DomainError("Y/H1 evaluated at non-positive argument");
  if (arg < 0.0)
    throw DomainError("J evaluated at negative argument");
  BesselTable table(std::abs(order), arg, kind != CylKind::J);
  return table.eval(kind, order);
}

TranslationMatrix graf_matrix(double k, const Vec2 &displacement, int M,
                              GrafRegime regime, int buffer, int max_order) {
  if (!(k > 0.0))
    throw DomainError("graf_matrix: wavenumber must be positive");
  if (M < 0 || 2 * M > max_order)
    throw DomainError("graf_matrix: order bound " + std::to_string(M) +
                      " needs orders up to 2M beyond the cap " +
                      std::to_string(max_order));
  const double dist = displacement.norm();
  const int needed = static_cast<int>(std::ceil(k * dist)) + buffer;
  if (M < needed)
    throw DomainError("graf_matrix: M=" + std::to_string(M) + " below ceil(k|z|)+buffer=" +
                      std::to_string(needed));
  if (regime == GrafRegime::OutgoingToRegular && dist == 0.0)
    throw DomainError("graf_matrix: outgoing-to-regular needs |x| < |z|, impossible for z = 0");

  TranslationMatrix T;
  T.order_bound = M;
  T.displacement = displacement;
  T.wavenumber = k;
  T.regime = regime;
  const int L = 2 * M + 1;

  if (dist == 0.0) {
    T.entries = CMatrix::Identity(L, L);
    return T;
  }

  const bool hankel = regime == GrafRegime::OutgoingToRegular;
  BesselTable table(2 * M, k * dist, hankel);
  const double theta = polar_angle(displacement);
  T.entries.resize(L, L);
  for (int n = -M; n <= M; ++n) {
    for (int m = -M; m <= M; ++m) {
      const int p = n - m;
      const cplx z = hankel ? table.H(p) : cplx(table.J(p));
      T.entries(n + M, m + M) = z * std::polar(1.0, -p * theta);
    }
  }
  return T;
}

cplx cylinder_series(const CVector &coeffs, double k, const Vec2 &y,
                     bool outgoing) {
  const int M = static_cast<int>(coeffs.size() - 1) / 2;
  const double r = y.norm();
  const double theta = polar_angle(y);
  BesselTable table(M, k * r, outgoing);
  cplx sum = 0.0;
  for (int m = -M; m <= M; ++m) {
    const cplx c = outgoing ? table.H(m) : cplx(table.J(m));
    sum += coeffs(m + M) * c * std::polar(1.0, m * theta);
  }
  return sum;
}

} // namespace cornersampler
