#include "cornersampler/farfield.hpp"

#include <Eigen/SVD>

namespace cornersampler {

FarFieldVector synthesize_from_modes(const CVector &coeffs, int N) {
  const int M = static_cast<int>(coeffs.size() - 1) / 2;
  CVector out(N);
  for (int i = 0; i < N; ++i) {
    const double th = grid_angle(i, N);
    cplx s = 0.0;
    for (int m = -M; m <= M; ++m)
      s += coeffs(m + M) * std::polar(1.0, m * th);
    out(i) = s;
  }
  return FarFieldVector(std::move(out));
}

FarFieldVector resample(const FarFieldVector &u, int N) {
  const int Ns = u.size();
  if (Ns == N)
    return u;
  if (N <= 0 || Ns <= 0)
    throw DomainError("resample: empty grid");

  // Fourier coefficients of the trigonometric interpolant on the source grid.
  const int half = Ns / 2;
  const bool nyquist = Ns % 2 == 0;
  const int M = half;
  CVector coeffs = CVector::Zero(2 * M + 1);
  for (int m = -M; m <= M; ++m) {
    if (nyquist && std::abs(m) == half && m < 0)
      continue;
    cplx s = 0.0;
    for (int i = 0; i < Ns; ++i)
      s += u.values(i) * std::polar(1.0, -m * grid_angle(i, Ns));
    s /= static_cast<double>(Ns);
    if (nyquist && std::abs(m) == half) {
      coeffs(M + half) = 0.5 * s;
      coeffs(M - half) = 0.5 * s;
    } else {
      coeffs(m + M) = s;
    }
  }
  // Keep only what the target grid represents without aliasing.
  const int keep = (N % 2 == 0) ? N / 2 - 1 : (N - 1) / 2;
  for (int m = -M; m <= M; ++m)
    if (std::abs(m) > keep)
      coeffs(m + M) = 0.0;
  return synthesize_from_modes(coeffs, N);
}

FarFieldOperatorMatrix::FarFieldOperatorMatrix(CMatrix kernel) : kernel_(std::move(kernel)) {
  if (kernel_.rows() != kernel_.cols())
    throw DomainError("far-field operator kernel must be square");
}

FarFieldVector FarFieldOperatorMatrix::apply(const FarFieldVector &g) const {
  if (g.size() != size())
    throw DomainError("operator/vector grid mismatch");
  return FarFieldVector(weight() * (kernel_ * g.values));
}

FarFieldOperatorMatrix FarFieldOperatorMatrix::identity(int N) {
  return FarFieldOperatorMatrix(CMatrix::Identity(N, N) / grid_weight(N));
}

FarFieldOperatorMatrix FarFieldOperatorMatrix::from_matrix(const CMatrix &action) {
  return FarFieldOperatorMatrix(action / grid_weight(static_cast<int>(action.rows())));
}

namespace {
void check_same(const FarFieldOperatorMatrix &A, const FarFieldOperatorMatrix &B) {
  if (A.size() != B.size())
    throw DomainError("far-field operators on different grids (" + std::to_string(A.size()) +
                      " vs " + std::to_string(B.size()) + ")");
}
} // namespace

FarFieldOperatorMatrix adjoint(const FarFieldOperatorMatrix &A) {
  return FarFieldOperatorMatrix(A.kernel().adjoint());
}

FarFieldOperatorMatrix compose(const FarFieldOperatorMatrix &A, const FarFieldOperatorMatrix &B) {
  check_same(A, B);
  return FarFieldOperatorMatrix(A.weight() * (A.kernel() * B.kernel()));
}

FarFieldOperatorMatrix operator+(const FarFieldOperatorMatrix &A, const FarFieldOperatorMatrix &B) {
  check_same(A, B);
  return FarFieldOperatorMatrix(A.kernel() + B.kernel());
}

FarFieldOperatorMatrix operator-(const FarFieldOperatorMatrix &A, const FarFieldOperatorMatrix &B) {
  check_same(A, B);
  return FarFieldOperatorMatrix(A.kernel() - B.kernel());
}

FarFieldOperatorMatrix operator*(cplx s, const FarFieldOperatorMatrix &A) {
  return FarFieldOperatorMatrix(s * A.kernel());
}

double operator_norm(const FarFieldOperatorMatrix &A) {
  if (A.size() == 0)
    return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(A.matrix());
  return svd.singularValues()(0);
}

double reciprocity_defect(const FarFieldOperatorMatrix &A) {
  const int N = A.size();
  if (N % 2 != 0)
    throw DomainError("reciprocity needs antipodal grid points (N even)");
  const CMatrix &K = A.kernel();
  double worst = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      // -d_j is grid index j + N/2; -x_i is i + N/2.
      const cplx swapped = K((j + N / 2) % N, (i + N / 2) % N);
      worst = std::max(worst, std::abs(K(i, j) - swapped));
    }
  const double scale = K.cwiseAbs().maxCoeff();
  return scale > 0.0 ? worst / scale : worst;
}

CMatrix far_field_kernel_from_modes(const CMatrix &exterior_coeffs, double k) {
  const int L = static_cast<int>(exterior_coeffs.rows());
  const int M = (L - 1) / 2;
  const int N = static_cast<int>(exterior_coeffs.cols());
  const cplx cff = hankel_far_field_factor(k);
  CMatrix E(N, L);
  for (int i = 0; i < N; ++i)
    for (int n = -M; n <= M; ++n)
      E(i, n + M) = cff * ipow(-n) * std::polar(1.0, n * grid_angle(i, N));
  return E * exterior_coeffs;
}

} // namespace cornersampler
