#include "cornersampler/factorization.hpp"

#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace cornersampler {

FarFieldOperatorMatrix scattering_operator(const FarFieldOperatorMatrix &F0, double k) {
  if (!(k > 0.0))
    throw DomainError("scattering_operator: k must be positive");
  const cplx coeff = 2.0 * kI * k * std::conj(far_field_gamma(k));
  return FarFieldOperatorMatrix::identity(F0.size()) + coeff * F0;
}

FarFieldOperatorMatrix real_part(const FarFieldOperatorMatrix &A) {
  return FarFieldOperatorMatrix(0.5 * (A.kernel() + A.kernel().adjoint()));
}

FarFieldOperatorMatrix imag_part(const FarFieldOperatorMatrix &A) {
  return FarFieldOperatorMatrix((A.kernel() - A.kernel().adjoint()) / cplx(0.0, 2.0));
}

namespace {

struct Decomposition {
  Eigen::VectorXd values; // ascending
  CMatrix vectors;
};

// Eigen's tridiagonal QR occasionally stalls on exactly structured matrices
// (circulant ones from a centred disk). A fixed unitary similarity breaks the
// structure without changing the spectrum.
Decomposition decompose(const CMatrix &action) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(action);
  if (es.info() == Eigen::Success)
    return {es.eigenvalues(), es.eigenvectors()};

  const Eigen::Index n = action.rows();
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> g;
  CMatrix R(n, n);
  for (Eigen::Index i = 0; i < R.size(); ++i)
    R(i) = cplx(g(rng), g(rng));
  const CMatrix Q = Eigen::HouseholderQR<CMatrix>(R).householderQ();
  CMatrix B = Q.adjoint() * action * Q;
  B = 0.5 * (B + B.adjoint()).eval();
  es.compute(B);
  if (es.info() != Eigen::Success)
    throw Error("self-adjoint eigendecomposition did not converge");
  return {es.eigenvalues(), Q * es.eigenvectors()};
}

} // namespace

FarFieldOperatorMatrix abs_selfadjoint(const FarFieldOperatorMatrix &H) {
  const auto es = decompose(H.matrix());
  const CMatrix &V = es.vectors;
  const CMatrix action = V * es.values.cwiseAbs().asDiagonal() * V.adjoint();
  return FarFieldOperatorMatrix::from_matrix(action);
}

FarFieldOperatorMatrix f_sharp(const FarFieldOperatorMatrix &F0,
                               const FarFieldOperatorMatrix &F_omega, double k) {
  const FarFieldOperatorMatrix A = compose(F0 - F_omega, scattering_operator(F0, k));
  FarFieldOperatorMatrix out = abs_selfadjoint(real_part(A)) + abs_selfadjoint(imag_part(A));
  // Exact self-adjointness; the sum is Hermitian only up to round-off.
  out.kernel() = 0.5 * (out.kernel() + out.kernel().adjoint()).eval();
  return out;
}

EigenSystem eigensystem(const FarFieldOperatorMatrix &F) {
  const CMatrix &K = F.kernel();
  const double scale = K.norm();
  if ((K - K.adjoint()).norm() > 1e-10 * std::max(scale, 1e-300))
    throw DomainError("eigensystem: operator is not self-adjoint");

  const auto es = decompose(F.matrix());
  const int N = F.size();
  EigenSystem out;
  out.eigenvalues.resize(N);
  out.eigenvectors.resize(N, N);
  const double inv_sqrt_w = 1.0 / std::sqrt(F.weight());
  // Eigen sorts ascending.
  for (int j = 0; j < N; ++j) {
    out.eigenvalues(j) = es.values(N - 1 - j);
    out.eigenvectors.col(j) = es.vectors.col(N - 1 - j) * inv_sqrt_w;
  }
  return out;
}

PicardData picard_indicator(const FarFieldVector &u_inf, const EigenSystem &eig, double eps_rel) {
  if (!(eps_rel > 0.0 && eps_rel < 1.0))
    throw DomainError("picard_indicator: eps_rel must lie in (0, 1)");
  if (u_inf.size() != eig.eigenvectors.rows())
    throw DomainError("picard_indicator: data and operator grids differ");
  const double lambda1 = eig.size() > 0 ? eig.eigenvalues(0) : 0.0;
  if (!(lambda1 > 1e-300))
    throw DomainError("picard_indicator: degenerate operator (lambda_1 ~ 0)");

  PicardData out;
  out.terms.reserve(eig.size());
  const double w = u_inf.weight();
  for (int j = 0; j < eig.size(); ++j) {
    PicardTerm t;
    t.lambda = eig.eigenvalues(j);
    t.coeff_sq = std::norm(w * eig.eigenvectors.col(j).dot(u_inf.values));
    t.ratio = t.coeff_sq / std::abs(t.lambda);
    out.terms.push_back(t);
    if (t.lambda >= eps_rel * lambda1 && out.cutoff_index == j) {
      out.cutoff_index = j + 1;
      out.W += t.ratio;
    }
  }
  return out;
}

} // namespace cornersampler
