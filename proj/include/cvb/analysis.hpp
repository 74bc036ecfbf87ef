#ifndef CVB_ANALYSIS_HPP
#define CVB_ANALYSIS_HPP

#include <vector>

#include "cvb/gaussian.hpp"

// Physicality and entanglement diagnostics.

namespace cvb {

/// Symplectic eigenvalues of a covariance matrix, ascending (one per mode).
/// Computed from the antisymmetric matrix sqrt(σ) Ω sqrt(σ), which shares
/// its spectrum with Ωσ but keeps the eigenproblem symmetric.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov);

/// Min symplectic eigenvalue >= 1/4 − 1e−9.
bool is_physical(const GaussianState& s);

/// Simon PPT criterion for two-mode states: flip the momentum of mode 1 and
/// test physicality of the result. Necessary and sufficient here.
bool ppt_separable(const GaussianState& s);

struct PairVerdict {
  int mode_a = 0;
  int mode_b = 0;
  bool separable = false;
};

/// ppt_separable over every mode pair of an M >= 2 mode state.
std::vector<PairVerdict> pairwise_report(const GaussianState& s);

}  // namespace cvb

#endif  // CVB_ANALYSIS_HPP
