#ifndef CVB_NETWORKS_HPP
#define CVB_NETWORKS_HPP

#include "cvb/gaussian.hpp"

// Circuit elements for the broadcasting networks, as symplectic maps or
// Gaussian channels. Sign conventions are fixed here and asserted by tests:
// the beamsplitter reflects with a minus sign on its second output, and the
// two-mode squeezer implements the Bogoliubov pair
//   a0 -> mu a0 + nu b0†,   b0 -> mu b0 + nu a0†.

namespace cvb {

/// Two-mode mixer with transmissivity tau in [0,1]:
///   mode0 -> tau mode0 + sqrt(1-tau²) mode1
///   mode1 -> -sqrt(1-tau²) mode0 + tau mode1
SymplecticOp beamsplitter(double tau);

/// Passive n-mode interferometer given by the discrete Fourier transform
/// V_kl = exp(2πi k l / n)/sqrt(n) across modes. Row 0 is uniform, so mode 0
/// collects the symmetric combination.
SymplecticOp fourier_multisplitter(int n_modes);

/// Maps n identical amplitudes α to sqrt(n)·α on mode 0.
SymplecticOp concentrator(int n_modes);

/// Adjoint of the concentrator: maps (β,0,...,0) to β/sqrt(m) on every mode.
SymplecticOp distributor(int m_modes);

/// Active two-mode squeezing with mu² − nu² = 1.
SymplecticOp two_mode_squeezer(double mu, double nu);

/// Phase-insensitive amplifier with power gain G >= 1: X = sqrt(G) I,
/// Y = ((G−1)/4) I. Equals the two-mode squeezer (sqrt(G), sqrt(G−1)) with a
/// vacuum ancilla traced out, and adds the minimal (G−1)/2 to the quadrature
/// noise sum.
GaussianChannel amplifier_channel(double gain);

/// Pure attenuation with G in [0,1]: beamsplitter against vacuum with
/// transmissivity sqrt(G), reduced. X = sqrt(G) I, Y = ((1−G)/4) I.
GaussianChannel attenuator_channel(double gain);

/// Heterodyne followed by preparation of a coherent state at λγ*:
/// X = λ diag(1,−1), Y = ((λ²+1)/4) I. Phase conjugating.
GaussianChannel measure_prepare_channel(double lambda);

struct FeedforwardElements {
  double tau;  // beamsplitter transmissivity, 1/sqrt(G)
  double k;    // feed-forward displacement gain, sqrt(G-1)
};

/// Beamsplitter transmissivity and displacement gain that realize the
/// phase-insensitive amplifier by heterodyne and feed-forward.
FeedforwardElements feedforward_amplifier_elements(double gain);

}  // namespace cvb

#endif  // CVB_NETWORKS_HPP
