#include "cvb/networks.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace cvb {

namespace {

// Real 2x2 image of a complex coefficient acting on (x, p).
Eigen::Matrix2d real_block(std::complex<double> u) {
  Eigen::Matrix2d b;
  b << u.real(), -u.imag(), u.imag(), u.real();
  return b;
}

}  // namespace

SymplecticOp beamsplitter(double tau) {
  if (tau < 0.0 || tau > 1.0) {
    throw std::invalid_argument("beamsplitter: tau must be in [0,1]");
  }
  const double r = std::sqrt(1.0 - tau * tau);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m.block<2, 2>(0, 0) = tau * Eigen::Matrix2d::Identity();
  m.block<2, 2>(0, 2) = r * Eigen::Matrix2d::Identity();
  m.block<2, 2>(2, 0) = -r * Eigen::Matrix2d::Identity();
  m.block<2, 2>(2, 2) = tau * Eigen::Matrix2d::Identity();
  return SymplecticOp(std::move(m), Eigen::VectorXd::Zero(4));
}

SymplecticOp fourier_multisplitter(int n_modes) {
  if (n_modes < 1) {
    throw std::invalid_argument("fourier_multisplitter: need n >= 1");
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_modes));
  Eigen::MatrixXd m(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    for (int l = 0; l < n_modes; ++l) {
      const double phase = 2.0 * std::numbers::pi * k * l / n_modes;
      m.block<2, 2>(2 * k, 2 * l) = real_block(norm * std::polar(1.0, phase));
    }
  }
  return SymplecticOp(std::move(m), Eigen::VectorXd::Zero(2 * n_modes));
}

SymplecticOp concentrator(int n_modes) { return fourier_multisplitter(n_modes); }

SymplecticOp distributor(int m_modes) {
  SymplecticOp fwd = fourier_multisplitter(m_modes);
  return SymplecticOp(fwd.matrix().transpose(), Eigen::VectorXd::Zero(2 * m_modes));
}

SymplecticOp two_mode_squeezer(double mu, double nu) {
  if (mu < 1.0 || nu < 0.0 || std::abs(mu * mu - nu * nu - 1.0) > kStructuralTol) {
    throw std::invalid_argument("two_mode_squeezer: need mu >= 1, nu >= 0, mu^2 - nu^2 = 1");
  }
  // a0 -> mu a0 + nu b0†, b0 -> mu b0 + nu a0†: hyperbolic on x, with the
  // conjugation flipping the sign of the partner's p.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m.block<2, 2>(0, 0) = mu * Eigen::Matrix2d::Identity();
  m.block<2, 2>(2, 2) = mu * Eigen::Matrix2d::Identity();
  Eigen::Matrix2d conj_block;
  conj_block << nu, 0.0, 0.0, -nu;
  m.block<2, 2>(0, 2) = conj_block;
  m.block<2, 2>(2, 0) = conj_block;
  return SymplecticOp(std::move(m), Eigen::VectorXd::Zero(4));
}

GaussianChannel amplifier_channel(double gain) {
  if (gain < 1.0) throw std::invalid_argument("amplifier_channel: gain < 1");
  return GaussianChannel(std::sqrt(gain) * Eigen::MatrixXd::Identity(2, 2),
                         ((gain - 1.0) / 4.0) * Eigen::MatrixXd::Identity(2, 2),
                         Eigen::VectorXd::Zero(2));
}

GaussianChannel attenuator_channel(double gain) {
  if (gain < 0.0 || gain > 1.0) {
    throw std::invalid_argument("attenuator_channel: gain must be in [0,1]");
  }
  return GaussianChannel(std::sqrt(gain) * Eigen::MatrixXd::Identity(2, 2),
                         ((1.0 - gain) / 4.0) * Eigen::MatrixXd::Identity(2, 2),
                         Eigen::VectorXd::Zero(2));
}

GaussianChannel measure_prepare_channel(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("measure_prepare_channel: lambda < 0");
  Eigen::MatrixXd x(2, 2);
  x << lambda, 0.0, 0.0, -lambda;
  return GaussianChannel(std::move(x),
                         ((lambda * lambda + 1.0) / 4.0) * Eigen::MatrixXd::Identity(2, 2),
                         Eigen::VectorXd::Zero(2));
}

FeedforwardElements feedforward_amplifier_elements(double gain) {
  if (gain < 1.0) throw std::invalid_argument("feedforward_amplifier_elements: gain < 1");
  return {1.0 / std::sqrt(gain), std::sqrt(gain - 1.0)};
}

}  // namespace cvb
