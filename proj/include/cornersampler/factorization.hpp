#pragma once

#include <vector>

#include "cornersampler/farfield.hpp"

namespace cornersampler {

/// S0 = I + 2ik conj(gamma) F0.
///
/// Far fields here are normalised as u ~ e^{ikr}/sqrt(r) u_inf, so kernels
/// already carry the factor gamma relative to the gamma-free normalisation in
/// which the unitary scattering operator reads I + 2ik|gamma|^2 F. Dividing
/// that F by gamma leaves conj(gamma) in front.
FarFieldOperatorMatrix scattering_operator(const FarFieldOperatorMatrix &F0, double k);

/// (A + A*)/2 and (A - A*)/(2i) with the weighted adjoint.
FarFieldOperatorMatrix real_part(const FarFieldOperatorMatrix &A);
FarFieldOperatorMatrix imag_part(const FarFieldOperatorMatrix &A);

/// |H| = sum |mu_j| P_j for a self-adjoint H.
FarFieldOperatorMatrix abs_selfadjoint(const FarFieldOperatorMatrix &H);

/// F# = |Re((F0 - F_Omega) S0)| + |Im((F0 - F_Omega) S0)|, self-adjoint PSD.
FarFieldOperatorMatrix f_sharp(const FarFieldOperatorMatrix &F0,
                               const FarFieldOperatorMatrix &F_omega, double k);

/// Eigenpairs of a self-adjoint far-field operator, eigenvalues descending,
/// eigenvectors orthonormal in the weighted inner product (one per column).
struct EigenSystem {
  Eigen::VectorXd eigenvalues;
  CMatrix eigenvectors;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  FarFieldVector vector(int j) const { return FarFieldVector(eigenvectors.col(j)); }
};

/// Rejects inputs whose kernel is not Hermitian to 1e-10 relative.
EigenSystem eigensystem(const FarFieldOperatorMatrix &F);

struct PicardTerm {
  double lambda = 0.0;
  double coeff_sq = 0.0; // |<u_inf, psi_j>|^2
  double ratio = 0.0;    // coeff_sq / |lambda|
};

struct PicardData {
  std::vector<PicardTerm> terms; // every eigenpair, descending lambda
  int cutoff_index = 0;          // number of terms with lambda_j >= eps_rel lambda_1
  double W = 0.0;                // sum of ratios over the first cutoff_index terms
};

inline constexpr double kDefaultEpsRel = 1e-12;

/// eps_rel = (2 delta)^2 for relative noise level delta, else the default.
inline double noise_aware_cutoff(double delta) {
  return delta > 0.0 ? 4.0 * delta * delta : kDefaultEpsRel;
}

/// W(Omega) = sum_j |<u_inf, psi_j>|^2 / |lambda_j| truncated at eps_rel lambda_1.
PicardData picard_indicator(const FarFieldVector &u_inf, const EigenSystem &eig,
                            double eps_rel = kDefaultEpsRel);

} // namespace cornersampler
