#ifndef CVB_GAUSSIAN_HPP
#define CVB_GAUSSIAN_HPP

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cvb/rng.hpp"

// Phase-space convention used throughout: x = (a + a†)/2, p = (a − a†)/(2i),
// so the vacuum variance is 1/4 per quadrature and ⟨x⟩ + i⟨p⟩ = ⟨a⟩.
// Quadratures are interleaved per mode: (x0, p0, x1, p1, ...). The symplectic
// form Ω is block diagonal with 2x2 blocks [[0,1],[-1,0]], and a covariance
// matrix is physical iff all its symplectic eigenvalues are >= 1/4.

namespace cvb {

inline constexpr double kVacuumVariance = 0.25;
inline constexpr double kStructuralTol = 1e-9;

/// Symplectic form Ω for n modes (2n x 2n).
Eigen::MatrixXd symplectic_form(int n_modes);

/// Multimode Gaussian state: first and second quadrature moments.
class GaussianState {
 public:
  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  int num_modes() const { return n_modes_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

  /// ⟨a⟩ of one mode as a complex amplitude.
  std::complex<double> mode_mean(int mode) const;

 private:
  int n_modes_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Linear unitary dynamics at the moment level: mean -> S mean + d,
/// cov -> S cov Sᵀ. The matrix must satisfy SᵀΩS = Ω.
class SymplecticOp {
 public:
  SymplecticOp(Eigen::MatrixXd matrix, Eigen::VectorXd shift);

  static SymplecticOp identity(int n_modes);

  int num_modes() const { return static_cast<int>(matrix_.rows()) / 2; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Eigen::VectorXd& shift() const { return shift_; }

 private:
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd shift_;
};

/// Noisy Gaussian dynamics: mean -> X mean + d, cov -> X cov Xᵀ + Y.
/// Complete positivity requires Y + (i/4)(Ω_out − X Ω_in Xᵀ) ⪰ 0.
class GaussianChannel {
 public:
  GaussianChannel(Eigen::MatrixXd x, Eigen::MatrixXd y, Eigen::VectorXd shift);

  int num_modes_in() const { return static_cast<int>(x_.cols()) / 2; }
  int num_modes_out() const { return static_cast<int>(x_.rows()) / 2; }
  const Eigen::MatrixXd& x() const { return x_; }
  const Eigen::MatrixXd& y() const { return y_; }
  const Eigen::VectorXd& shift() const { return shift_; }

 private:
  Eigen::MatrixXd x_;
  Eigen::MatrixXd y_;
  Eigen::VectorXd shift_;
};

/// Result of heterodyning one mode: the complex outcome and the state of the
/// remaining modes conditioned on it (absent when no modes remain).
struct HeterodyneOutcome {
  std::complex<double> value;
  std::optional<GaussianState> conditioned;
};

GaussianState vacuum(int n_modes);

/// Thermal state with nbar mean photons, displaced to complex amplitude alpha.
GaussianState displaced_thermal(double nbar, std::complex<double> alpha);

GaussianState tensor(const GaussianState& a, const GaussianState& b);

GaussianState apply_symplectic(const GaussianState& s, const SymplecticOp& op);

GaussianState apply_channel(const GaussianState& s, const GaussianChannel& ch);

/// Partial trace down to the selected modes, in the order given.
GaussianState reduce(const GaussianState& s, const std::vector<int>& modes);

GaussianState displace(const GaussianState& s, int mode,
                       std::complex<double> beta);

/// Sample a heterodyne measurement of one mode. The outcome is drawn from the
/// Q function (mean, cov + (1/4)I of that mode); the remaining modes are
/// conditioned by the Gaussian rule
///   cov' = Σ_A − Σ_AB (Σ_B + (1/4)I)⁻¹ Σ_ABᵀ,
///   mean' = m_A + Σ_AB (Σ_B + (1/4)I)⁻¹ (γ − m_B).
HeterodyneOutcome heterodyne_sample(const GaussianState& s, int mode,
                                    CounterRng& rng);

/// ⟨a†a⟩ of one mode: Δx² + Δp² − 1/2 + x̄² + p̄².
double mean_photon(const GaussianState& s, int mode);

/// Δx² + Δp² of one mode (displacement independent).
double noise_sum(const GaussianState& s, int mode);

/// Lift an op acting on k modes to n_total modes, acting on `targets` and
/// leaving the rest alone.
SymplecticOp embed(const SymplecticOp& op, int n_total,
                   const std::vector<int>& targets);

}  // namespace cvb

#endif  // CVB_GAUSSIAN_HPP
