#pragma once

#include "cornersampler/types.hpp"

namespace cornersampler {

/// Direction angle theta_i = 2 pi i / N.
inline double grid_angle(int i, int N) { return 2.0 * kPi * i / N; }
inline double grid_weight(int N) { return 2.0 * kPi / N; }

/// sqrt(2/(pi k)) e^{-i pi/4}: far-field amplitude of H1_0(k r) under the
/// u ~ e^{ikr}/sqrt(r) u_inf normalisation. Mode m picks up an extra (-i)^m.
inline cplx hankel_far_field_factor(double k) {
  return std::sqrt(2.0 / (kPi * k)) * std::polar(1.0, -kPi / 4.0);
}

/// gamma = e^{i pi/4} / sqrt(8 k pi), far field of (i/4) H1_0(k|x|).
inline cplx far_field_gamma(double k) {
  return std::polar(1.0, kPi / 4.0) / std::sqrt(8.0 * k * kPi);
}

/// Samples of a far-field pattern on the uniform grid theta_i = 2 pi i / N.
struct FarFieldVector {
  CVector values;

  FarFieldVector() = default;
  explicit FarFieldVector(CVector v) : values(std::move(v)) {}

  int size() const { return static_cast<int>(values.size()); }
  double weight() const { return grid_weight(size()); }
  /// Discrete L2(S) norm with weight 2 pi / N.
  double norm() const { return std::sqrt(weight()) * values.norm(); }
  /// Weighted inner product <a, b> = sum w conj(a_i) b_i.
  friend cplx inner(const FarFieldVector &a, const FarFieldVector &b) {
    return a.weight() * a.values.dot(b.values);
  }
};

/// Evaluates sum_m coeffs(m+M) e^{i m theta_i} on an N-point grid.
FarFieldVector synthesize_from_modes(const CVector &coeffs, int N);

/// Trigonometric resampling onto an N-point grid (direct DFT). Modes that the
/// target grid cannot represent (|m| >= N/2) are dropped; a source Nyquist
/// mode is split symmetrically.
FarFieldVector resample(const FarFieldVector &u, int N);

/// Integral operator on L2(S) discretised on the uniform grid. Storage is
/// the kernel K(x_i, d_j); the action is (F g)_i = sum_j w K_ij g_j.
///
/// Because the weight is uniform, the weighted adjoint is the kernel's
/// conjugate transpose, composition is w K_A K_B, and the identity operator
/// has kernel I / w.
class FarFieldOperatorMatrix {
public:
  FarFieldOperatorMatrix() = default;
  explicit FarFieldOperatorMatrix(CMatrix kernel);

  int size() const { return static_cast<int>(kernel_.rows()); }
  double weight() const { return grid_weight(size()); }
  const CMatrix &kernel() const { return kernel_; }
  CMatrix &kernel() { return kernel_; }

  /// The N x N matrix acting on sample vectors: w K.
  CMatrix matrix() const { return weight() * kernel_; }

  FarFieldVector apply(const FarFieldVector &g) const;

  static FarFieldOperatorMatrix identity(int N);
  static FarFieldOperatorMatrix from_matrix(const CMatrix &action);

private:
  CMatrix kernel_;
};

FarFieldOperatorMatrix adjoint(const FarFieldOperatorMatrix &A);
FarFieldOperatorMatrix compose(const FarFieldOperatorMatrix &A, const FarFieldOperatorMatrix &B);
FarFieldOperatorMatrix operator+(const FarFieldOperatorMatrix &A, const FarFieldOperatorMatrix &B);
FarFieldOperatorMatrix operator-(const FarFieldOperatorMatrix &A, const FarFieldOperatorMatrix &B);
FarFieldOperatorMatrix operator*(cplx s, const FarFieldOperatorMatrix &A);

/// Operator 2-norm (largest singular value of the action matrix).
double operator_norm(const FarFieldOperatorMatrix &A);

/// Reciprocity defect max_ij |K(x_i, d_j) - K(-d_j, -x_i)| / max |K|.
double reciprocity_defect(const FarFieldOperatorMatrix &A);

/// Far-field kernel of mode-wise scattering: K_ij = sum_n c_ff (-i)^n B(n, j)
/// e^{i n theta_i}, for outgoing exterior coefficients B (rows n = -M..M,
/// one column per incident direction).
CMatrix far_field_kernel_from_modes(const CMatrix &exterior_coeffs, double k);

} // namespace cornersampler
