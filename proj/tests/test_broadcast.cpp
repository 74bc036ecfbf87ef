#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "cvb/analysis.hpp"
#include "cvb/broadcast.hpp"
#include "cvb/gaussian.hpp"
#include "cvb/networks.hpp"
#include "helpers.hpp"

using namespace cvb;

namespace {

const std::complex<double> kI(0.0, 1.0);
const std::vector<double> kNbarGrid = {0.0, 1.0 / 3.0, 1.0, 5.0};
const std::vector<std::complex<double>> kAlphaGrid = {
    {0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, -3.0}};

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

}  // namespace

TEST_SUITE("broadcast") {

TEST_CASE("kind names round-trip") {
  for (const PipelineKind kind : {PipelineKind::kBroadcast, PipelineKind::kPurify,
                                  PipelineKind::kConjugate}) {
    CHECK(kind_from_name(kind_name(kind)) == kind);
  }
  CHECK(kind_name(PipelineKind::kBroadcast) == "broadcast");
  CHECK_THROWS_AS(kind_from_name("amplify"), std::invalid_argument);
}

TEST_CASE("broadcasting two thermal signals into three") {
  const PipelineReport r = broadcast_pipeline(2, 3, 1.0, 1.0);
  CHECK(r.nbar_out_per_mode == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(noise_sum(r.output, 0) == doctest::Approx(7.0 / 6.0).epsilon(1e-12));
  for (int m = 0; m < 3; ++m) {
    CHECK(std::abs(r.output.mode_mean(m) - 1.0) < 1e-12);
  }
  CHECK(std::abs(r.concentrated.mean - std::sqrt(2.0)) < 1e-12);
  CHECK(r.concentrated.variance == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(r.nbar_prime == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.saturated);
}

TEST_CASE("coherent inputs clone at half a thermal photon") {
  const PipelineReport r = broadcast_pipeline(1, 2, 0.0, 0.5 + 0.5 * kI);
  CHECK(std::abs(r.nbar_out_per_mode - 0.5) < 1e-12);
  CHECK(std::abs(r.output.mode_mean(0) - (0.5 + 0.5 * kI)) < 1e-12);
  CHECK(std::abs(r.output.mode_mean(1) - (0.5 + 0.5 * kI)) < 1e-12);
}

TEST_CASE("broadcasting at the threshold photon number is noise neutral") {
  const PipelineReport r = broadcast_pipeline(2, 3, 1.0 / 3.0, 0.0);
  CHECK(r.nbar_out_per_mode == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("broadcast input constraints") {
  CHECK_THROWS_AS(broadcast_pipeline(2, 2, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(broadcast_pipeline(3, 2, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(broadcast_pipeline(0, 2, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(broadcast_pipeline(2, 3, -0.5, 0.0), std::invalid_argument);
}

TEST_CASE("purification rescales the thermal photon by N") {
  const PipelineReport two_to_one = purify_pipeline(2, 1, 1.0, 2.0);
  CHECK(two_to_one.nbar_out_per_mode == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(two_to_one.output.mode_mean(0) - 2.0) < 1e-12);

  SUBCASE("independent of the number of output copies") {
    for (int m = 1; m <= 4; ++m) {
      const PipelineReport r = purify_pipeline(4, m, 2.0, 1.0 - kI);
      CHECK(r.nbar_out_per_mode == doctest::Approx(0.5).epsilon(1e-12));
    }
  }
  SUBCASE("coherent inputs purify to coherent outputs") {
    const PipelineReport r = purify_pipeline(3, 2, 0.0, 1.0);
    CHECK(std::abs(r.nbar_out_per_mode) < 1e-12);
    CHECK(max_abs_diff(r.output.cov(), vacuum(2).cov()) < 1e-12);
  }
  SUBCASE("more outputs than inputs rejected") {
    CHECK_THROWS_AS(purify_pipeline(2, 3, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(purify_pipeline(2, 0, 1.0, 0.0), std::invalid_argument);
  }
}

TEST_CASE("phase conjugation adds one photon before rescaling") {
  const PipelineReport r = conjugate_pipeline(2, 1, 1.0, 1.0 + 2.0 * kI);
  CHECK(r.nbar_out_per_mode == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.output.mode_mean(0) - (1.0 - 2.0 * kI)) < 1e-12);

  SUBCASE("independent of the number of output copies") {
    const PipelineReport five = conjugate_pipeline(2, 5, 1.0, 0.0);
    CHECK(five.nbar_out_per_mode == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("conjugating a single coherent state costs one photon") {
    const PipelineReport one = conjugate_pipeline(1, 1, 0.0, 0.0);
    CHECK(one.nbar_out_per_mode == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("input constraints") {
    CHECK_THROWS_AS(conjugate_pipeline(0, 1, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(conjugate_pipeline(1, 0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(conjugate_pipeline(1, 1, -1.0, 0.0), std::invalid_argument);
  }
}

TEST_CASE("closed-form local photon predictions") {
  CHECK(predicted_local_photon(PipelineKind::kBroadcast, 2, 3, 1.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(predicted_local_photon(PipelineKind::kPurify, 5, 2, 10.0) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(predicted_local_photon(PipelineKind::kConjugate, 4, 7, 3.0) ==
        doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(predicted_local_photon(PipelineKind::kBroadcast, 3, 3, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(predicted_local_photon(PipelineKind::kPurify, 2, 3, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(predicted_local_photon(PipelineKind::kConjugate, 1, 1, -1.0),
                  std::invalid_argument);
}

TEST_CASE("superbroadcasting threshold values") {
  CHECK(superbroadcast_threshold(2, 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(superbroadcast_threshold(3, 4.0) == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(superbroadcast_threshold(2, inf) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(superbroadcast_threshold(5, inf) == doctest::Approx(0.25).epsilon(1e-15));

  SUBCASE("threshold shrinks for many inputs with one extra copy") {
    CHECK(superbroadcast_threshold(100, 101.0) < superbroadcast_threshold(10, 11.0));
    CHECK(superbroadcast_threshold(100, 101.0) < 1e-3);
  }
  SUBCASE("domain constraints") {
    CHECK_THROWS_AS(superbroadcast_threshold(1, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(superbroadcast_threshold(2, 2.0), std::invalid_argument);
  }
}

TEST_CASE("minimal noise bounds") {
  CHECK(noise_bound(PipelineKind::kBroadcast, 2, 3, 1.5) ==
        doctest::Approx(7.0 / 6.0).epsilon(1e-15));
  CHECK(noise_bound(PipelineKind::kPurify, 2, 1, 1.5) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(noise_bound(PipelineKind::kPurify, 2, 2, 1.5) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(noise_bound(PipelineKind::kConjugate, 2, 1, 1.5) ==
        doctest::Approx(1.5).epsilon(1e-15));
  CHECK(noise_bound(PipelineKind::kConjugate, 2, 9, 1.5) ==
        doctest::Approx(1.5).epsilon(1e-15));

  CHECK_THROWS_AS(noise_bound(PipelineKind::kBroadcast, 2, 3, 0.49),
                  std::invalid_argument);
}

TEST_CASE("saturation holds for optimal gain and fails for excessive gain") {
  const PipelineReport r = broadcast_pipeline(2, 3, 1.0, 0.0);
  CHECK(check_saturation(r));

  PipelineReport worse = r;
  worse.nbar_out_per_mode += 1e-3;
  CHECK_FALSE(check_saturation(worse));

  // Hand-built pipeline with double the optimal gain exceeds the bound.
  const int n = 2, m = 3;
  const double nbar = 1.0;
  GaussianState in = displaced_thermal(nbar, 0.0);
  in = tensor(in, displaced_thermal(nbar, 0.0));
  GaussianState stage = reduce(apply_symplectic(in, concentrator(n)), {0});
  stage = apply_channel(stage, amplifier_channel(2.0 * m / n));
  stage = tensor(tensor(stage, vacuum(1)), vacuum(1));
  const GaussianState out = apply_symplectic(stage, distributor(m));
  const double bound = noise_bound(PipelineKind::kBroadcast, n, m, nbar + 0.5);
  CHECK(noise_sum(out, 0) > bound + 1e-3);
}

TEST_CASE("grid laws: per-mode photon, saturation, physicality, separability") {
  for (int n = 1; n <= 6; ++n) {
    for (int m = 1; m <= 12; ++m) {
      for (const double nbar : kNbarGrid) {
        std::vector<PipelineReport> reports;
        if (m > n) reports.push_back(broadcast_pipeline(n, m, nbar, 1.0));
        if (m <= n) reports.push_back(purify_pipeline(n, m, nbar, 1.0));
        reports.push_back(conjugate_pipeline(n, m, nbar, 1.0));
        for (const PipelineReport& r : reports) {
          const double predicted = predicted_local_photon(r.kind, n, m, nbar);
          CHECK(close_rel(r.nbar_out_per_mode, predicted, 1e-10));
          CHECK(close_rel(r.nbar_prime, m * predicted, 1e-10));
          CHECK(r.saturated);
          CHECK(close_rel(noise_sum(r.output, 0), r.bound, 1e-10));
          CHECK(is_physical(r.output));
          CHECK(std::abs(r.concentrated.mean - std::sqrt(double(n))) < 1e-10);
          CHECK(close_rel(r.concentrated.variance, (2.0 * nbar + 1.0) / 4.0, 1e-12));
          if (m >= 2) {
            for (const PairVerdict& v : pairwise_report(r.output)) {
              CHECK(v.separable);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("signal preservation and displacement covariance") {
  // Output means track the input amplitude (conjugated for the conjugate
  // pipeline) and output covariances are independent of it.
  for (const auto& [kind, n, m] :
       std::vector<std::tuple<PipelineKind, int, int>>{
           {PipelineKind::kBroadcast, 2, 3},
           {PipelineKind::kBroadcast, 1, 2},
           {PipelineKind::kBroadcast, 5, 12},
           {PipelineKind::kPurify, 4, 2},
           {PipelineKind::kPurify, 3, 3},
           {PipelineKind::kConjugate, 2, 5},
           {PipelineKind::kConjugate, 1, 1}}) {
    const double nbar = 1.0;
    Eigen::MatrixXd reference_cov;
    for (const std::complex<double> alpha : kAlphaGrid) {
      PipelineReport r = kind == PipelineKind::kBroadcast
                             ? broadcast_pipeline(n, m, nbar, alpha)
                         : kind == PipelineKind::kPurify
                             ? purify_pipeline(n, m, nbar, alpha)
                             : conjugate_pipeline(n, m, nbar, alpha);
      const std::complex<double> expected =
          kind == PipelineKind::kConjugate ? std::conj(alpha) : alpha;
      for (int mode = 0; mode < m; ++mode) {
        CHECK(std::abs(r.output.mode_mean(mode) - expected) <= 1e-12);
      }
      if (reference_cov.size() == 0) {
        reference_cov = r.output.cov();
      } else {
        CHECK(max_abs_diff(r.output.cov(), reference_cov) <= 1e-12);
      }
    }
  }
}

TEST_CASE("outputs are permutation symmetric across modes") {
  const PipelineReport r = broadcast_pipeline(2, 4, 1.0, 1.0 + kI);
  std::vector<int> order = {0, 1, 2, 3};
  const GaussianState base = r.output;
  for (const std::vector<int>& perm :
       {std::vector<int>{1, 0, 2, 3}, std::vector<int>{3, 2, 1, 0},
        std::vector<int>{2, 3, 0, 1}}) {
    const GaussianState shuffled = reduce(base, perm);
    CHECK(max_abs_diff(shuffled.cov(), base.cov()) < 1e-12);
    CHECK(max_abs_diff(shuffled.mean(), base.mean()) < 1e-12);
  }
}

TEST_CASE("superbroadcasting occurs exactly above the threshold") {
  for (int n = 2; n <= 6; ++n) {
    for (int m = n + 1; m <= 12; ++m) {
      const double threshold = superbroadcast_threshold(n, m);
      const PipelineReport at = broadcast_pipeline(n, m, threshold, 0.0);
      CHECK(std::abs(at.nbar_out_per_mode - threshold) <= 1e-10);
      const PipelineReport below =
          broadcast_pipeline(n, m, threshold * 0.9, 0.0);
      CHECK(below.nbar_out_per_mode > below.nbar_in);
      const PipelineReport above =
          broadcast_pipeline(n, m, threshold * 1.1, 0.0);
      CHECK(above.nbar_out_per_mode < above.nbar_in);
    }
  }
}

}  // TEST_SUITE
