#ifndef CVB_MONTECARLO_HPP
#define CVB_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "cvb/gaussian.hpp"

// Trajectory-level simulation of the measurement-based elements and the
// statistical comparison against their analytic channels. Trajectories use
// one counter-based RNG stream per index, so serial and parallel schedules
// produce bit-identical results; accumulation is a fixed-order pairwise
// reduction.

namespace cvb {

/// Sample moments of a vector-valued ensemble. std_errors holds the standard
/// errors of mean_hat (first dim entries) followed by those of the upper
/// triangle of cov_hat, row major (dim*(dim+1)/2 entries).
struct EmpiricalMoments {
  long n_samples = 0;
  Eigen::VectorXd mean_hat;
  Eigen::MatrixXd cov_hat;
  Eigen::VectorXd std_errors;
};

/// Moments of raw i.i.d. samples: unbiased covariance, asymptotic standard
/// errors. Needs at least two samples.
EmpiricalMoments moments_from_samples(const std::vector<Eigen::Vector2d>& samples);

/// Heterodyne feed-forward amplifier, one trajectory per sample: mix the
/// input with vacuum on a beamsplitter of transmissivity 1/sqrt(G),
/// heterodyne the reflected mode, displace the transmitted mode by
/// k = sqrt(G−1) times the outcome. Returns the moments of the output-mode
/// ensemble (conditional means plus the trajectory-independent conditional
/// covariance).
EmpiricalMoments feedforward_amplifier_run(double gain,
                                           const GaussianState& input,
                                           long n_samples, std::uint64_t seed);

/// Heterodyne the mode and prepare a coherent state at λγ* per trajectory.
EmpiricalMoments measure_prepare_run(double lambda, const GaussianState& input,
                                     long n_samples, std::uint64_t seed);

struct MomentsComparison {
  bool pass = false;
  double max_abs_z = 0.0;
  double sigma_level = 0.0;
  Eigen::VectorXd mean_z;
  Eigen::MatrixXd cov_z;
};

/// Entrywise z-scores of the empirical mean and covariance against an
/// analytic state; passes iff all |z| <= sigma_level.
MomentsComparison moments_compare(const EmpiricalMoments& emp,
                                  const GaussianState& analytic,
                                  double sigma_level);

}  // namespace cvb

#endif  // CVB_MONTECARLO_HPP
