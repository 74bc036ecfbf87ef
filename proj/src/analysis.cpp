#include "cvb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace cvb {

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  const Eigen::Index dim = cov.rows();
  if (dim == 0 || dim % 2 != 0 || cov.cols() != dim) {
    throw std::invalid_argument("symplectic_eigenvalues: need a 2n x 2n matrix");
  }
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > kStructuralTol) {
    throw std::invalid_argument("symplectic_eigenvalues: matrix not symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.eigenvalues().minCoeff() < -kStructuralTol) {
    throw std::invalid_argument(
        "symplectic_eigenvalues: matrix not positive semidefinite");
  }
  const Eigen::MatrixXd sqrt_cov =
      es.eigenvectors() *
      es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
      es.eigenvectors().transpose();

  // K is antisymmetric with spectrum {±i nu_k}; the symmetric K^T K then has
  // each nu_k^2 twice.
  const Eigen::MatrixXd k = sqrt_cov * symplectic_form(static_cast<int>(dim) / 2) * sqrt_cov;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ks(k.transpose() * k);

  std::vector<double> roots(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    roots[i] = std::sqrt(std::max(0.0, ks.eigenvalues()(i)));
  }
  std::sort(roots.begin(), roots.end());

  std::vector<double> nus(dim / 2);
  for (Eigen::Index i = 0; i < dim / 2; ++i) {
    nus[i] = 0.5 * (roots[2 * i] + roots[2 * i + 1]);
  }
  return nus;
}

bool is_physical(const GaussianState& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.cov());
  if (es.eigenvalues().minCoeff() < -kStructuralTol) return false;
  return symplectic_eigenvalues(s.cov()).front() >=
         kVacuumVariance - kStructuralTol;
}

bool ppt_separable(const GaussianState& s) {
  if (s.num_modes() != 2) {
    throw std::invalid_argument("ppt_separable: need exactly two modes");
  }
  Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  const Eigen::MatrixXd tilde =
      flip.asDiagonal() * s.cov() * flip.asDiagonal();
  return symplectic_eigenvalues(tilde).front() >=
         kVacuumVariance - kStructuralTol;
}

std::vector<PairVerdict> pairwise_report(const GaussianState& s) {
  if (s.num_modes() < 2) {
    throw std::invalid_argument("pairwise_report: need at least two modes");
  }
  std::vector<PairVerdict> verdicts;
  for (int a = 0; a < s.num_modes(); ++a) {
    for (int b = a + 1; b < s.num_modes(); ++b) {
      verdicts.push_back({a, b, ppt_separable(reduce(s, {a, b}))});
    }
  }
  return verdicts;
}

}  // namespace cvb
