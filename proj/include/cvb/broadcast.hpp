#ifndef CVB_BROADCAST_HPP
#define CVB_BROADCAST_HPP

#include <complex>
#include <string>

#include "cvb/gaussian.hpp"

// End-to-end pipelines over displaced thermal inputs, their closed-form
// per-mode noise predictions, the superbroadcasting threshold, and the
// minimal-noise bounds they saturate.

namespace cvb {

enum class PipelineKind { kBroadcast, kPurify, kConjugate };

std::string kind_name(PipelineKind kind);
PipelineKind kind_from_name(const std::string& name);

/// Stats of the concentrated mode (mode 0 after the input multisplitter).
struct ConcentratedStats {
  std::complex<double> mean;
  double variance;  // per quadrature; isotropic for thermal inputs
};

struct PipelineReport {
  PipelineKind kind;
  int n_in = 0;
  int m_out = 0;
  double nbar_in = 0.0;
  std::complex<double> alpha;
  ConcentratedStats concentrated;
  double nbar_prime = 0.0;  // thermal photon of mode 0 before distribution
  GaussianState output;     // the M output modes
  double nbar_out_per_mode = 0.0;
  double bound = 0.0;  // minimal quadrature-noise sum Γ per output mode
  bool saturated = false;
};

/// N -> M > N broadcasting: concentrate, amplify with gain M/N, distribute.
/// Per-mode mean stays α; per-mode thermal photon is (M·nbar + M − N)/(M·N).
PipelineReport broadcast_pipeline(int n_in, int m_out, double nbar,
                                  std::complex<double> alpha);

/// N -> M <= N purification: concentrate, attenuate with gain M/N,
/// distribute. Per-mode thermal photon is nbar/N for every M.
PipelineReport purify_pipeline(int n_in, int m_out, double nbar,
                               std::complex<double> alpha);

/// N -> M phase-conjugate broadcasting: concentrate, heterodyne and prepare a
/// coherent state at sqrt(M/N)γ*, distribute. Per-mode mean is α*; per-mode
/// thermal photon is (nbar + 1)/N for every M.
PipelineReport conjugate_pipeline(int n_in, int m_out, double nbar,
                                  std::complex<double> alpha);

/// Closed-form per-mode output thermal photon for each pipeline kind.
double predicted_local_photon(PipelineKind kind, int n_in, int m_out,
                              double nbar);

/// Input thermal photon above which broadcasting purifies the local state:
/// (M−N)/(M(N−1)). Pass m_out = +infinity for the M -> ∞ limit 1/(N−1).
double superbroadcast_threshold(int n_in, double m_out);

/// Minimal per-mode quadrature-noise sum Γ reachable for input noise
/// γ = gamma_in >= 1/2.
double noise_bound(PipelineKind kind, int n_in, int m_out, double gamma_in);

/// True iff the report's per-mode noise sum meets its bound to 1e-10
/// relative.
bool check_saturation(const PipelineReport& report);

}  // namespace cvb

#endif  // CVB_BROADCAST_HPP
