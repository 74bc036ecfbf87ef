#include "cvb/broadcast.hpp"

#include <cmath>
#include <stdexcept>

#include "cvb/networks.hpp"

namespace cvb {

namespace {

constexpr double kSaturationRelTol = 1e-10;

// Concentrate N identical displaced thermal inputs into mode 0 and drop the
// rest; then push mode 0 through the kind-specific single-mode channel and
// spread it over M modes with an M-splitter against vacuum.
PipelineReport run_pipeline(PipelineKind kind, int n_in, int m_out, double nbar,
                            std::complex<double> alpha,
                            const GaussianChannel& channel) {
  GaussianState input = displaced_thermal(nbar, alpha);
  for (int i = 1; i < n_in; ++i) {
    input = tensor(input, displaced_thermal(nbar, alpha));
  }
  const GaussianState concentrated =
      reduce(apply_symplectic(input, concentrator(n_in)), {0});

  GaussianState amplified = apply_channel(concentrated, channel);
  const double nbar_prime = noise_sum(amplified, 0) - 0.5;

  GaussianState spread = std::move(amplified);
  for (int i = 1; i < m_out; ++i) {
    spread = tensor(spread, vacuum(1));
  }
  GaussianState output = apply_symplectic(spread, distributor(m_out));

  PipelineReport report{kind,
                        n_in,
                        m_out,
                        nbar,
                        alpha,
                        {concentrated.mode_mean(0), concentrated.cov()(0, 0)},
                        nbar_prime,
                        std::move(output),
                        0.0,
                        0.0,
                        false};
  report.nbar_out_per_mode = noise_sum(report.output, 0) - 0.5;
  report.bound = noise_bound(kind, n_in, m_out, nbar + 0.5);
  report.saturated = check_saturation(report);
  return report;
}

}  // namespace

std::string kind_name(PipelineKind kind) {
  switch (kind) {
    case PipelineKind::kBroadcast: return "broadcast";
    case PipelineKind::kPurify: return "purify";
    case PipelineKind::kConjugate: return "conjugate";
  }
  throw std::invalid_argument("kind_name: unknown kind");
}

PipelineKind kind_from_name(const std::string& name) {
  if (name == "broadcast") return PipelineKind::kBroadcast;
  if (name == "purify") return PipelineKind::kPurify;
  if (name == "conjugate") return PipelineKind::kConjugate;
  throw std::invalid_argument("unknown pipeline kind: " + name);
}

PipelineReport broadcast_pipeline(int n_in, int m_out, double nbar,
                                  std::complex<double> alpha) {
  if (n_in < 1 || m_out <= n_in) {
    throw std::invalid_argument("broadcast_pipeline: need M > N >= 1");
  }
  if (nbar < 0.0) throw std::invalid_argument("broadcast_pipeline: nbar < 0");
  const double gain = static_cast<double>(m_out) / n_in;
  return run_pipeline(PipelineKind::kBroadcast, n_in, m_out, nbar, alpha,
                      amplifier_channel(gain));
}

PipelineReport purify_pipeline(int n_in, int m_out, double nbar,
                               std::complex<double> alpha) {
  if (n_in < 1 || m_out < 1 || m_out > n_in) {
    throw std::invalid_argument("purify_pipeline: need 1 <= M <= N");
  }
  if (nbar < 0.0) throw std::invalid_argument("purify_pipeline: nbar < 0");
  const double gain = static_cast<double>(m_out) / n_in;
  return run_pipeline(PipelineKind::kPurify, n_in, m_out, nbar, alpha,
                      attenuator_channel(gain));
}

PipelineReport conjugate_pipeline(int n_in, int m_out, double nbar,
                                  std::complex<double> alpha) {
  if (n_in < 1 || m_out < 1) {
    throw std::invalid_argument("conjugate_pipeline: need N, M >= 1");
  }
  if (nbar < 0.0) throw std::invalid_argument("conjugate_pipeline: nbar < 0");
  const double lambda = std::sqrt(static_cast<double>(m_out) / n_in);
  return run_pipeline(PipelineKind::kConjugate, n_in, m_out, nbar, alpha,
                      measure_prepare_channel(lambda));
}

double predicted_local_photon(PipelineKind kind, int n_in, int m_out,
                              double nbar) {
  if (n_in < 1 || m_out < 1 || nbar < 0.0) {
    throw std::invalid_argument("predicted_local_photon: bad N, M, or nbar");
  }
  const double n = n_in;
  const double m = m_out;
  switch (kind) {
    case PipelineKind::kBroadcast:
      if (m_out <= n_in) {
        throw std::invalid_argument("predicted_local_photon: broadcast needs M > N");
      }
      return (m * nbar + m - n) / (m * n);
    case PipelineKind::kPurify:
      if (m_out > n_in) {
        throw std::invalid_argument("predicted_local_photon: purify needs M <= N");
      }
      return nbar / n;
    case PipelineKind::kConjugate:
      return (nbar + 1.0) / n;
  }
  throw std::invalid_argument("predicted_local_photon: unknown kind");
}

double superbroadcast_threshold(int n_in, double m_out) {
  if (n_in < 2) throw std::invalid_argument("superbroadcast_threshold: need N >= 2");
  if (std::isinf(m_out)) return 1.0 / (n_in - 1);
  if (m_out <= n_in) {
    throw std::invalid_argument("superbroadcast_threshold: need M > N");
  }
  return (m_out - n_in) / (m_out * (n_in - 1));
}

double noise_bound(PipelineKind kind, int n_in, int m_out, double gamma_in) {
  if (n_in < 1 || m_out < 1) {
    throw std::invalid_argument("noise_bound: need N, M >= 1");
  }
  if (gamma_in < 0.5) {
    throw std::invalid_argument("noise_bound: input noise below vacuum (gamma < 1/2)");
  }
  const double n = n_in;
  const double m = m_out;
  switch (kind) {
    case PipelineKind::kBroadcast:
      return 0.5 + (gamma_in - 0.5) / n + 1.0 / n - 1.0 / m;
    case PipelineKind::kPurify:
      return 0.5 + (gamma_in - 0.5) / n;
    case PipelineKind::kConjugate:
      return 0.5 + (gamma_in + 0.5) / n;
  }
  throw std::invalid_argument("noise_bound: unknown kind");
}

bool check_saturation(const PipelineReport& report) {
  const double noise = report.nbar_out_per_mode + 0.5;
  return std::abs(noise - report.bound) <=
         kSaturationRelTol * std::max(1.0, std::abs(report.bound));
}

}  // namespace cvb
