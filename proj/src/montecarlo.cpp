#include "cvb/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cvb/networks.hpp"

namespace cvb {

namespace {

// Entries of an estimate that agree with the target to within this are scored
// z = 0, so exact constructions (e.g. unit gain) pass despite zero spread.
constexpr double kExactTol = 1e-12;

// Fixed-order pairwise reduction: deterministic regardless of schedule and
// much better conditioned than a running sum at 1e5+ terms.
template <typename T, typename Term>
T pairwise_total(long lo, long hi, const Term& term) {
  if (hi - lo == 1) return term(lo);
  const long mid = lo + (hi - lo) / 2;
  return pairwise_total<T>(lo, mid, term) + pairwise_total<T>(mid, hi, term);
}

long upper_tri_index(long dim, long j, long k) {
  return dim + j * dim - j * (j - 1) / 2 + (k - j);
}

double z_score(double diff, double se) {
  if (std::abs(diff) <= kExactTol) return 0.0;
  if (se == 0.0) {
    return std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return diff / se;
}

}  // namespace

EmpiricalMoments moments_from_samples(
    const std::vector<Eigen::Vector2d>& samples) {
  const long n = static_cast<long>(samples.size());
  if (n < 2) {
    throw std::invalid_argument("moments_from_samples: need at least two samples");
  }
  const long dim = 2;

  const Eigen::Vector2d total = pairwise_total<Eigen::Vector2d>(
      0, n, [&](long i) { return samples[i]; });
  const Eigen::Vector2d mean = total / static_cast<double>(n);

  const Eigen::Matrix2d scatter = pairwise_total<Eigen::Matrix2d>(
      0, n, [&](long i) -> Eigen::Matrix2d {
        const Eigen::Vector2d d = samples[i] - mean;
        return d * d.transpose();
      });
  const Eigen::Matrix2d cov = scatter / static_cast<double>(n - 1);

  EmpiricalMoments m;
  m.n_samples = n;
  m.mean_hat = mean;
  m.cov_hat = cov;
  m.std_errors.resize(dim + dim * (dim + 1) / 2);
  for (long j = 0; j < dim; ++j) {
    m.std_errors(j) = std::sqrt(cov(j, j) / static_cast<double>(n));
  }
  for (long j = 0; j < dim; ++j) {
    for (long k = j; k < dim; ++k) {
      m.std_errors(upper_tri_index(dim, j, k)) =
          std::sqrt((cov(j, j) * cov(k, k) + cov(j, k) * cov(j, k)) /
                    static_cast<double>(n - 1));
    }
  }
  return m;
}

EmpiricalMoments feedforward_amplifier_run(double gain,
                                           const GaussianState& input,
                                           long n_samples,
                                           std::uint64_t seed) {
  if (input.num_modes() != 1) {
    throw std::invalid_argument("feedforward_amplifier_run: input must be one mode");
  }
  if (n_samples < 2) {
    throw std::invalid_argument("feedforward_amplifier_run: need at least two samples");
  }
  const FeedforwardElements el = feedforward_amplifier_elements(gain);
  const GaussianState joint =
      apply_symplectic(tensor(vacuum(1), input), beamsplitter(el.tau));

  // The conditional covariance is outcome independent and the feed-forward
  // displacement only moves the mean, so each trajectory is summarized by its
  // conditional mean (Rao-Blackwell); the shared covariance is added back at
  // the end.
  std::vector<Eigen::Vector2d> means;
  means.reserve(static_cast<std::size_t>(n_samples));
  Eigen::Matrix2d conditional_cov = Eigen::Matrix2d::Zero();
  for (long i = 0; i < n_samples; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const HeterodyneOutcome out = heterodyne_sample(joint, 0, rng);
    const GaussianState& cond = *out.conditioned;
    if (i == 0) conditional_cov = cond.cov();
    means.emplace_back(cond.mean()(0) + el.k * out.value.real(),
                       cond.mean()(1) + el.k * out.value.imag());
  }

  EmpiricalMoments m = moments_from_samples(means);
  m.cov_hat += conditional_cov;
  return m;
}

EmpiricalMoments measure_prepare_run(double lambda, const GaussianState& input,
                                     long n_samples, std::uint64_t seed) {
  if (lambda < 0.0) {
    throw std::invalid_argument("measure_prepare_run: lambda < 0");
  }
  if (input.num_modes() != 1) {
    throw std::invalid_argument("measure_prepare_run: input must be one mode");
  }
  if (n_samples < 2) {
    throw std::invalid_argument("measure_prepare_run: need at least two samples");
  }

  // Each trajectory prepares a coherent state at λγ*: the mean varies with
  // the outcome, the covariance is always the vacuum's.
  std::vector<Eigen::Vector2d> means;
  means.reserve(static_cast<std::size_t>(n_samples));
  for (long i = 0; i < n_samples; ++i) {
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    const HeterodyneOutcome out = heterodyne_sample(input, 0, rng);
    means.emplace_back(lambda * out.value.real(), -lambda * out.value.imag());
  }

  EmpiricalMoments m = moments_from_samples(means);
  m.cov_hat += kVacuumVariance * Eigen::Matrix2d::Identity();
  return m;
}

MomentsComparison moments_compare(const EmpiricalMoments& emp,
                                  const GaussianState& analytic,
                                  double sigma_level) {
  if (sigma_level <= 0.0) {
    throw std::invalid_argument("moments_compare: sigma_level must be positive");
  }
  const long dim = emp.mean_hat.size();
  if (analytic.mean().size() != dim) {
    throw std::invalid_argument("moments_compare: dimension mismatch");
  }

  MomentsComparison cmp;
  cmp.sigma_level = sigma_level;
  cmp.mean_z.resize(dim);
  cmp.cov_z.resize(dim, dim);
  double worst = 0.0;
  for (long j = 0; j < dim; ++j) {
    cmp.mean_z(j) =
        z_score(emp.mean_hat(j) - analytic.mean()(j), emp.std_errors(j));
    worst = std::max(worst, std::abs(cmp.mean_z(j)));
  }
  for (long j = 0; j < dim; ++j) {
    for (long k = j; k < dim; ++k) {
      const double z = z_score(emp.cov_hat(j, k) - analytic.cov()(j, k),
                               emp.std_errors(upper_tri_index(dim, j, k)));
      cmp.cov_z(j, k) = z;
      cmp.cov_z(k, j) = z;
      worst = std::max(worst, std::abs(z));
    }
  }
  cmp.max_abs_z = worst;
  cmp.pass = worst <= sigma_level;
  return cmp;
}

}  // namespace cvb
