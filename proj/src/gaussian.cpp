#include "cvb/gaussian.hpp"

#include <algorithm>
#include <stdexcept>

namespace cvb {

namespace {

void check_even_pair(Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (rows == 0 || rows % 2 != 0 || cols % 2 != 0) {
    throw std::invalid_argument(std::string(what) + ": dimensions must be even and nonzero");
  }
}

void check_symmetric(const Eigen::MatrixXd& m, double tol, const char* what) {
  if (m.rows() != m.cols() || (m - m.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument(std::string(what) + ": matrix not symmetric");
  }
}

// Min eigenvalue of the Hermitian matrix Y + (i/4)(Ω_out − X Ω_in Xᵀ).
double cp_defect(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  const int n_out = static_cast<int>(x.rows()) / 2;
  const int n_in = static_cast<int>(x.cols()) / 2;
  const Eigen::MatrixXd comm =
      symplectic_form(n_out) - x * symplectic_form(n_in) * x.transpose();
  Eigen::MatrixXcd herm = y.cast<std::complex<double>>() +
                          std::complex<double>(0.0, 0.25) * comm.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

Eigen::MatrixXd symplectic_form(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("symplectic_form: need n_modes >= 1");
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  check_even_pair(cov_.rows(), cov_.cols(), "GaussianState");
  check_symmetric(cov_, kStructuralTol, "GaussianState");
  if (mean_.size() != cov_.rows()) {
    throw std::invalid_argument("GaussianState: mean/cov size mismatch");
  }
  n_modes_ = static_cast<int>(mean_.size()) / 2;
  // Exact symmetry keeps downstream eigen-solvers happy.
  cov_ = ((cov_ + cov_.transpose()) / 2.0).eval();
}

std::complex<double> GaussianState::mode_mean(int mode) const {
  if (mode < 0 || mode >= n_modes_) {
    throw std::invalid_argument("mode_mean: mode out of range");
  }
  return {mean_(2 * mode), mean_(2 * mode + 1)};
}

SymplecticOp::SymplecticOp(Eigen::MatrixXd matrix, Eigen::VectorXd shift)
    : matrix_(std::move(matrix)), shift_(std::move(shift)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("SymplecticOp: matrix must be square");
  }
  check_even_pair(matrix_.rows(), matrix_.cols(), "SymplecticOp");
  if (shift_.size() != matrix_.rows()) {
    throw std::invalid_argument("SymplecticOp: shift size mismatch");
  }
  const Eigen::MatrixXd omega = symplectic_form(num_modes());
  const double defect =
      (matrix_.transpose() * omega * matrix_ - omega).cwiseAbs().maxCoeff();
  if (defect > kStructuralTol) {
    throw std::invalid_argument("SymplecticOp: matrix is not symplectic");
  }
}

SymplecticOp SymplecticOp::identity(int n_modes) {
  return SymplecticOp(Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes),
                      Eigen::VectorXd::Zero(2 * n_modes));
}

GaussianChannel::GaussianChannel(Eigen::MatrixXd x, Eigen::MatrixXd y,
                                 Eigen::VectorXd shift)
    : x_(std::move(x)), y_(std::move(y)), shift_(std::move(shift)) {
  check_even_pair(x_.rows(), x_.cols(), "GaussianChannel");
  check_symmetric(y_, kStructuralTol, "GaussianChannel");
  if (y_.rows() != x_.rows() || shift_.size() != x_.rows()) {
    throw std::invalid_argument("GaussianChannel: X/Y/shift shape mismatch");
  }
  y_ = ((y_ + y_.transpose()) / 2.0).eval();
  if (cp_defect(x_, y_) < -kStructuralTol) {
    throw std::invalid_argument("GaussianChannel: not completely positive");
  }
}

GaussianState vacuum(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("vacuum: need n_modes >= 1");
  return GaussianState(
      Eigen::VectorXd::Zero(2 * n_modes),
      kVacuumVariance * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState displaced_thermal(double nbar, std::complex<double> alpha) {
  if (nbar < 0.0) throw std::invalid_argument("displaced_thermal: nbar < 0");
  Eigen::VectorXd mean(2);
  mean << alpha.real(), alpha.imag();
  const double v = (2.0 * nbar + 1.0) / 4.0;
  return GaussianState(mean, v * Eigen::MatrixXd::Identity(2, 2));
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const Eigen::Index da = a.mean().size();
  const Eigen::Index db = b.mean().size();
  Eigen::VectorXd mean(da + db);
  mean << a.mean(), b.mean();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(da + db, da + db);
  cov.topLeftCorner(da, da) = a.cov();
  cov.bottomRightCorner(db, db) = b.cov();
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState apply_symplectic(const GaussianState& s, const SymplecticOp& op) {
  if (op.num_modes() != s.num_modes()) {
    throw std::invalid_argument("apply_symplectic: mode count mismatch");
  }
  const Eigen::MatrixXd& m = op.matrix();
  return GaussianState(m * s.mean() + op.shift(), m * s.cov() * m.transpose());
}

GaussianState apply_channel(const GaussianState& s, const GaussianChannel& ch) {
  if (ch.num_modes_in() != s.num_modes()) {
    throw std::invalid_argument("apply_channel: mode count mismatch");
  }
  const Eigen::MatrixXd& x = ch.x();
  return GaussianState(x * s.mean() + ch.shift(),
                       x * s.cov() * x.transpose() + ch.y());
}

GaussianState reduce(const GaussianState& s, const std::vector<int>& modes) {
  if (modes.empty()) throw std::invalid_argument("reduce: no modes selected");
  for (size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= s.num_modes()) {
      throw std::invalid_argument("reduce: mode index out of range");
    }
    for (size_t j = 0; j < i; ++j) {
      if (modes[i] == modes[j]) {
        throw std::invalid_argument("reduce: duplicate mode index");
      }
    }
  }
  const int k = static_cast<int>(modes.size());
  Eigen::VectorXd mean(2 * k);
  Eigen::MatrixXd cov(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    mean.segment<2>(2 * i) = s.mean().segment<2>(2 * modes[i]);
    for (int j = 0; j < k; ++j) {
      cov.block<2, 2>(2 * i, 2 * j) = s.cov().block<2, 2>(2 * modes[i], 2 * modes[j]);
    }
  }
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState displace(const GaussianState& s, int mode,
                       std::complex<double> beta) {
  if (mode < 0 || mode >= s.num_modes()) {
    throw std::invalid_argument("displace: mode out of range");
  }
  Eigen::VectorXd mean = s.mean();
  mean(2 * mode) += beta.real();
  mean(2 * mode + 1) += beta.imag();
  return GaussianState(std::move(mean), s.cov());
}

HeterodyneOutcome heterodyne_sample(const GaussianState& s, int mode,
                                    CounterRng& rng) {
  const int n = s.num_modes();
  if (mode < 0 || mode >= n) {
    throw std::invalid_argument("heterodyne_sample: mode out of range");
  }

  const Eigen::Vector2d mean_b = s.mean().segment<2>(2 * mode);
  const Eigen::Matrix2d sigma_b = s.cov().block<2, 2>(2 * mode, 2 * mode);
  const Eigen::Matrix2d q_cov = sigma_b + kVacuumVariance * Eigen::Matrix2d::Identity();

  Eigen::LLT<Eigen::Matrix2d> llt(q_cov);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("heterodyne_sample: corrupt state, Q covariance not positive definite");
  }
  const Eigen::Vector2d gamma_vec =
      mean_b + Eigen::Matrix2d(llt.matrixL()) * rng.next_normal_pair();

  HeterodyneOutcome out;
  out.value = {gamma_vec(0), gamma_vec(1)};
  if (n == 1) return out;

  std::vector<int> rest;
  rest.reserve(n - 1);
  for (int i = 0; i < n; ++i) {
    if (i != mode) rest.push_back(i);
  }

  Eigen::VectorXd mean_a(2 * (n - 1));
  Eigen::MatrixXd sigma_a(2 * (n - 1), 2 * (n - 1));
  Eigen::MatrixXd sigma_ab(2 * (n - 1), 2);
  for (int i = 0; i < n - 1; ++i) {
    mean_a.segment<2>(2 * i) = s.mean().segment<2>(2 * rest[i]);
    sigma_ab.block<2, 2>(2 * i, 0) = s.cov().block<2, 2>(2 * rest[i], 2 * mode);
    for (int j = 0; j < n - 1; ++j) {
      sigma_a.block<2, 2>(2 * i, 2 * j) = s.cov().block<2, 2>(2 * rest[i], 2 * rest[j]);
    }
  }

  const Eigen::MatrixXd gain = sigma_ab * q_cov.inverse();
  out.conditioned = GaussianState(mean_a + gain * (gamma_vec - mean_b),
                                  sigma_a - gain * sigma_ab.transpose());
  return out;
}

double mean_photon(const GaussianState& s, int mode) {
  const std::complex<double> m = s.mode_mean(mode);
  return noise_sum(s, mode) - 0.5 + std::norm(m);
}

double noise_sum(const GaussianState& s, int mode) {
  if (mode < 0 || mode >= s.num_modes()) {
    throw std::invalid_argument("noise_sum: mode out of range");
  }
  return s.cov()(2 * mode, 2 * mode) + s.cov()(2 * mode + 1, 2 * mode + 1);
}

SymplecticOp embed(const SymplecticOp& op, int n_total,
                   const std::vector<int>& targets) {
  if (static_cast<int>(targets.size()) != op.num_modes()) {
    throw std::invalid_argument("embed: target count must match op modes");
  }
  for (size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= n_total) {
      throw std::invalid_argument("embed: target out of range");
    }
    for (size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("embed: duplicate target");
      }
    }
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2 * n_total, 2 * n_total);
  Eigen::VectorXd shift = Eigen::VectorXd::Zero(2 * n_total);
  const int k = op.num_modes();
  for (int i = 0; i < k; ++i) {
    shift.segment<2>(2 * targets[i]) = op.shift().segment<2>(2 * i);
    for (int j = 0; j < k; ++j) {
      m.block<2, 2>(2 * targets[i], 2 * targets[j]) = op.matrix().block<2, 2>(2 * i, 2 * j);
    }
  }
  return SymplecticOp(std::move(m), std::move(shift));
}

}  // namespace cvb
