#include "cvb/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvb/analysis.hpp"
#include "cvb/broadcast.hpp"
#include "cvb/montecarlo.hpp"
#include "cvb/networks.hpp"

namespace cvb {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kSigmaLevel = 4.0;
constexpr long kMinCliSamples = 1000;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_complex(std::complex<double> z) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

double parse_finite_double(const std::string& text, const std::string& what) {
  std::string s = text;
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw std::invalid_argument(what);
  }
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  int v = 0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument(what);
  }
  return v;
}

/// "lo:hi" (inclusive) or a single integer.
std::pair<int, int> parse_range(const std::string& text, const std::string& flag) {
  const std::string what = "cannot parse " + flag + " range '" + text + "'";
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    const int v = parse_int(text, what);
    return {v, v};
  }
  if (text.find(':', colon + 1) != std::string::npos) {
    throw std::invalid_argument(what);
  }
  return {parse_int(text.substr(0, colon), what),
          parse_int(text.substr(colon + 1), what)};
}

ojson complex_json(std::complex<double> z) {
  return ojson{{"re", z.real()}, {"im", z.imag()}};
}

ojson vector_json(const Eigen::VectorXd& v) {
  ojson arr = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

ojson matrix_json(const Eigen::MatrixXd& m) {
  ojson rows = ojson::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ojson row = ojson::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

ojson state_json(const GaussianState& s) {
  return ojson{{"num_modes", s.num_modes()},
               {"mean", vector_json(s.mean())},
               {"cov", matrix_json(s.cov())}};
}

ojson report_json(const PipelineReport& r) {
  return ojson{
      {"kind", kind_name(r.kind)},
      {"N", r.n_in},
      {"M", r.m_out},
      {"nbar_in", r.nbar_in},
      {"alpha", complex_json(r.alpha)},
      {"concentrated",
       ojson{{"mean", complex_json(r.concentrated.mean)},
             {"variance", r.concentrated.variance}}},
      {"nbar_prime", r.nbar_prime},
      {"nbar_out_per_mode", r.nbar_out_per_mode},
      {"bound_gamma_out", r.bound},
      {"saturated", r.saturated},
      {"output", state_json(r.output)},
  };
}

void print_row(std::ostream& out, const std::string& key, const std::string& value) {
  out << std::left << std::setw(20) << key << value << "\n";
}

void report_table(std::ostream& out, const PipelineReport& r) {
  print_row(out, "kind", kind_name(r.kind));
  print_row(out, "N", std::to_string(r.n_in));
  print_row(out, "M", std::to_string(r.m_out));
  print_row(out, "nbar_in", fmt_double(r.nbar_in));
  print_row(out, "alpha", fmt_complex(r.alpha));
  print_row(out, "concentrated_mean", fmt_complex(r.concentrated.mean));
  print_row(out, "concentrated_var", fmt_double(r.concentrated.variance));
  print_row(out, "nbar_prime", fmt_double(r.nbar_prime));
  print_row(out, "nbar_out_per_mode", fmt_double(r.nbar_out_per_mode));
  print_row(out, "bound_gamma_out", fmt_double(r.bound));
  print_row(out, "saturated", r.saturated ? "true" : "false");
}

bool all_pairs_separable(const GaussianState& output) {
  if (output.num_modes() < 2) return true;
  const std::vector<PairVerdict> verdicts = pairwise_report(output);
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const PairVerdict& v) { return v.separable; });
}

struct SweepRow {
  PipelineKind kind;
  int n = 0;
  int m = 0;
  double nbar_in = 0.0;
  double predicted = 0.0;
  double simulated = 0.0;
  double bound = 0.0;
  bool saturated = false;
  bool separable_all_pairs = false;
  std::optional<double> mc_z_max;
};

PipelineReport run_kind(PipelineKind kind, int n, int m, double nbar,
                        std::complex<double> alpha) {
  switch (kind) {
    case PipelineKind::kBroadcast: return broadcast_pipeline(n, m, nbar, alpha);
    case PipelineKind::kPurify: return purify_pipeline(n, m, nbar, alpha);
    case PipelineKind::kConjugate: return conjugate_pipeline(n, m, nbar, alpha);
  }
  throw std::invalid_argument("run_kind: unknown kind");
}

/// Monte-Carlo cross-check of the measurement-based stage at one grid point:
/// feed-forward amplification for broadcast, measure-and-prepare for
/// conjugate. Purification has no measurement-based stage, so no check.
std::optional<double> sweep_mc_z(PipelineKind kind, int n, int m, double nbar,
                                 std::complex<double> alpha, long samples,
                                 std::uint64_t point_seed) {
  if (kind == PipelineKind::kPurify) return std::nullopt;
  const GaussianState concentrated =
      displaced_thermal(nbar, std::sqrt(static_cast<double>(n)) * alpha);
  const double ratio = static_cast<double>(m) / n;
  EmpiricalMoments emp;
  GaussianChannel channel = kind == PipelineKind::kBroadcast
                                ? amplifier_channel(ratio)
                                : measure_prepare_channel(std::sqrt(ratio));
  if (kind == PipelineKind::kBroadcast) {
    emp = feedforward_amplifier_run(ratio, concentrated, samples, point_seed);
  } else {
    emp = measure_prepare_run(std::sqrt(ratio), concentrated, samples, point_seed);
  }
  const GaussianState analytic = apply_channel(concentrated, channel);
  return moments_compare(emp, analytic, kSigmaLevel).max_abs_z;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string text =
      "kind,N,M,nbar_in,nbar_out_predicted,nbar_out_simulated,"
      "bound_gamma_out,saturated,separable_all_pairs,mc_z_max\n";
  for (const SweepRow& r : rows) {
    text += kind_name(r.kind);
    text += ',' + std::to_string(r.n);
    text += ',' + std::to_string(r.m);
    text += ',' + fmt_double(r.nbar_in);
    text += ',' + fmt_double(r.predicted);
    text += ',' + fmt_double(r.simulated);
    text += ',' + fmt_double(r.bound);
    text += r.saturated ? ",true" : ",false";
    text += r.separable_all_pairs ? ",true" : ",false";
    text += ',';
    if (r.mc_z_max) text += fmt_double(*r.mc_z_max);
    text += '\n';
  }
  return text;
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  ojson arr = ojson::array();
  for (const SweepRow& r : rows) {
    ojson rec{{"kind", kind_name(r.kind)},
              {"N", r.n},
              {"M", r.m},
              {"nbar_in", r.nbar_in},
              {"nbar_out_predicted", r.predicted},
              {"nbar_out_simulated", r.simulated},
              {"bound_gamma_out", r.bound},
              {"saturated", r.saturated},
              {"separable_all_pairs", r.separable_all_pairs}};
    if (r.mc_z_max) rec["mc_z_max"] = *r.mc_z_max;
    arr.push_back(std::move(rec));
  }
  return arr.dump(2) + "\n";
}

/// Write through a sibling temp file and rename, so readers never observe a
/// partial file. Returns an exit code.
int write_atomic(const std::string& path, const std::string& content,
                 std::ostream& err) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "cannot open '" << tmp << "' for writing\n";
      return kExitIo;
    }
    file << content;
    file.flush();
    if (!file) {
      err << "failed while writing '" << tmp << "'\n";
      std::remove(tmp.c_str());
      return kExitIo;
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    err << "cannot rename '" << tmp << "' to '" << path << "'\n";
    std::remove(tmp.c_str());
    return kExitIo;
  }
  return kExitOk;
}

struct PipelineFlags {
  int n = 0;
  int m = 0;
  double nbar = 0.0;
  std::string alpha_text = "0";
  std::string format = "json";
};

void add_pipeline_flags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("-N", f.n, "number of input copies")->required();
  cmd->add_option("-M", f.m, "number of output copies")->required();
  cmd->add_option("--nbar", f.nbar, "input thermal photon number (default 0)");
  cmd->add_option("--alpha", f.alpha_text, "input amplitude, a+bi (default 0)");
  cmd->add_option("--format", f.format, "output format (default json)")
      ->check(CLI::IsMember({"json", "table"}));
}

int run_pipeline_cmd(PipelineKind kind, const PipelineFlags& f,
                     std::ostream& out) {
  const std::complex<double> alpha = parse_complex(f.alpha_text);
  const PipelineReport report = run_kind(kind, f.n, f.m, f.nbar, alpha);
  if (f.format == "table") {
    report_table(out, report);
  } else {
    out << report_json(report).dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
  const std::string what = "cannot parse complex number '" + text + "'";
  if (text.empty()) throw std::invalid_argument(what);
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument(what);
    }
  }
  if (text.back() != 'i') return {parse_finite_double(text, what), 0.0};

  const std::string body = text.substr(0, text.size() - 1);
  // Last sign that is not an exponent's marks the imaginary part.
  std::size_t split = std::string::npos;
  for (std::size_t j = 1; j < body.size(); ++j) {
    if ((body[j] == '+' || body[j] == '-') && body[j - 1] != 'e' &&
        body[j - 1] != 'E') {
      split = j;
    }
  }
  const auto imag_of = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_finite_double(part, what);
  };
  if (split == std::string::npos) return {0.0, imag_of(body)};
  return {parse_finite_double(body.substr(0, split), what),
          imag_of(body.substr(split))};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Gaussian broadcasting, purification, and phase-conjugation "
               "of displaced thermal states"};
  app.require_subcommand(1);

  PipelineFlags broadcast_flags;
  CLI::App* cmd_broadcast = app.add_subcommand(
      "broadcast", "Distribute N identical inputs over M > N less noisy copies");
  add_pipeline_flags(cmd_broadcast, broadcast_flags);

  PipelineFlags purify_flags;
  CLI::App* cmd_purify = app.add_subcommand(
      "purify", "Distill N identical inputs into M <= N purified copies");
  add_pipeline_flags(cmd_purify, purify_flags);

  PipelineFlags conjugate_flags;
  CLI::App* cmd_conjugate = app.add_subcommand(
      "conjugate", "Broadcast the phase conjugate of N identical inputs to M copies");
  add_pipeline_flags(cmd_conjugate, conjugate_flags);

  std::string sweep_kind;
  std::string sweep_n_text;
  std::string sweep_m_text;
  std::vector<double> sweep_nbars;
  std::string sweep_alpha_text = "0";
  long sweep_samples = 0;
  std::uint64_t sweep_seed = kDefaultSeed;
  std::string sweep_format = "csv";
  std::string sweep_out;
  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep", "Tabulate one pipeline kind over a grid of N, M, and nbar");
  cmd_sweep->add_option("--kind", sweep_kind, "pipeline kind")
      ->required()
      ->check(CLI::IsMember({"broadcast", "purify", "conjugate"}));
  cmd_sweep->add_option("-N", sweep_n_text, "input copies, lo:hi or single value")
      ->required();
  cmd_sweep->add_option("-M", sweep_m_text, "output copies, lo:hi or single value")
      ->required();
  cmd_sweep
      ->add_option("--nbar", sweep_nbars,
                   "input thermal photon numbers (comma separated or repeated)")
      ->required()
      ->delimiter(',');
  cmd_sweep->add_option("--alpha", sweep_alpha_text,
                        "input amplitude, a+bi (default 0)");
  cmd_sweep->add_option(
      "--samples", sweep_samples,
      "Monte-Carlo trajectories per applicable grid point (default: none)");
  cmd_sweep->add_option("--seed", sweep_seed, "base RNG seed");
  cmd_sweep->add_option("--format", sweep_format, "output format (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_sweep->add_option("--out", sweep_out,
                        "output path, written atomically (default: stdout)");

  double amp_gain = 0.0;
  double amp_nbar = 0.0;
  std::string amp_alpha_text = "0";
  long amp_samples = 100000;
  std::uint64_t amp_seed = kDefaultSeed;
  CLI::App* cmd_ampsim = app.add_subcommand(
      "ampsim",
      "Validate the heterodyne feed-forward amplifier against the analytic channel");
  cmd_ampsim->add_option("-G", amp_gain, "power gain, >= 1")->required();
  cmd_ampsim->add_option("--nbar", amp_nbar, "input thermal photon number (default 0)");
  cmd_ampsim->add_option("--alpha", amp_alpha_text, "input amplitude, a+bi (default 0)");
  cmd_ampsim->add_option("--samples", amp_samples,
                         "number of trajectories (default 100000)");
  cmd_ampsim->add_option("--seed", amp_seed, "RNG seed");

  int thr_n = 0;
  std::string thr_m_text;
  bool thr_check = false;
  double thr_nbar = 0.0;
  std::string thr_format = "json";
  CLI::App* cmd_threshold = app.add_subcommand(
      "threshold", "Input noise above which broadcasting purifies each copy");
  cmd_threshold->add_option("-N", thr_n, "number of input copies, >= 2")->required();
  CLI::Option* thr_m_opt =
      cmd_threshold->add_option("-M", thr_m_text, "output copies, integer or 'inf'")
          ->required();
  (void)thr_m_opt;
  CLI::Option* thr_nbar_opt =
      cmd_threshold->add_option("--nbar", thr_nbar, "input thermal photon number");
  cmd_threshold
      ->add_flag("--check", thr_check,
                 "also report whether superbroadcasting occurs at --nbar")
      ->needs(thr_nbar_opt);
  cmd_threshold->add_option("--format", thr_format, "output format (default json)")
      ->check(CLI::IsMember({"json", "table"}));

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("cvbroadcast");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(cmd_broadcast)) {
      return run_pipeline_cmd(PipelineKind::kBroadcast, broadcast_flags, out);
    }
    if (app.got_subcommand(cmd_purify)) {
      return run_pipeline_cmd(PipelineKind::kPurify, purify_flags, out);
    }
    if (app.got_subcommand(cmd_conjugate)) {
      return run_pipeline_cmd(PipelineKind::kConjugate, conjugate_flags, out);
    }

    if (app.got_subcommand(cmd_sweep)) {
      if (sweep_samples != 0 && sweep_samples < kMinCliSamples) {
        err << "sweep: --samples must be at least " << kMinCliSamples << "\n";
        return kExitUsage;
      }
      const PipelineKind kind = kind_from_name(sweep_kind);
      const std::complex<double> alpha = parse_complex(sweep_alpha_text);
      const auto [n_lo, n_hi] = parse_range(sweep_n_text, "-N");
      const auto [m_lo, m_hi] = parse_range(sweep_m_text, "-M");

      std::vector<SweepRow> rows;
      for (int n = n_lo; n <= n_hi; ++n) {
        for (int m = m_lo; m <= m_hi; ++m) {
          const bool in_domain = kind == PipelineKind::kBroadcast ? m > n
                                 : kind == PipelineKind::kPurify
                                     ? m >= 1 && m <= n
                                     : m >= 1;
          if (n < 1 || !in_domain) continue;
          for (const double nbar : sweep_nbars) {
            const PipelineReport report = run_kind(kind, n, m, nbar, alpha);
            SweepRow row;
            row.kind = kind;
            row.n = n;
            row.m = m;
            row.nbar_in = nbar;
            row.predicted = predicted_local_photon(kind, n, m, nbar);
            row.simulated = report.nbar_out_per_mode;
            row.bound = report.bound;
            row.saturated = report.saturated;
            row.separable_all_pairs = all_pairs_separable(report.output);
            if (sweep_samples > 0) {
              row.mc_z_max = sweep_mc_z(
                  kind, n, m, nbar, alpha, sweep_samples,
                  CounterRng::derive(sweep_seed,
                                     static_cast<std::uint64_t>(rows.size())));
            }
            rows.push_back(std::move(row));
          }
        }
      }
      if (rows.empty()) {
        err << "sweep: grid is empty\n";
        return kExitUsage;
      }
      const std::string content =
          sweep_format == "json" ? sweep_json(rows) : sweep_csv(rows);
      if (sweep_out.empty()) {
        out << content;
        return kExitOk;
      }
      return write_atomic(sweep_out, content, err);
    }

    if (app.got_subcommand(cmd_ampsim)) {
      if (amp_gain < 1.0) {
        err << "ampsim: gain must be >= 1\n";
        return kExitUsage;
      }
      if (amp_samples < kMinCliSamples) {
        err << "ampsim: --samples must be at least " << kMinCliSamples << "\n";
        return kExitUsage;
      }
      const std::complex<double> alpha = parse_complex(amp_alpha_text);
      const GaussianState input = displaced_thermal(amp_nbar, alpha);
      const EmpiricalMoments emp =
          feedforward_amplifier_run(amp_gain, input, amp_samples, amp_seed);
      const GaussianState analytic =
          apply_channel(input, amplifier_channel(amp_gain));
      const MomentsComparison cmp = moments_compare(emp, analytic, kSigmaLevel);
      const ojson doc{{"gain", amp_gain},
                      {"nbar_in", amp_nbar},
                      {"alpha", complex_json(alpha)},
                      {"samples", amp_samples},
                      {"seed", amp_seed},
                      {"sigma_level", kSigmaLevel},
                      {"mean_hat", vector_json(emp.mean_hat)},
                      {"cov_hat", matrix_json(emp.cov_hat)},
                      {"analytic_mean", vector_json(analytic.mean())},
                      {"analytic_cov", matrix_json(analytic.cov())},
                      {"mean_z", vector_json(cmp.mean_z)},
                      {"cov_z", matrix_json(cmp.cov_z)},
                      {"max_abs_z", cmp.max_abs_z},
                      {"pass", cmp.pass}};
      out << doc.dump(2) << "\n";
      return cmp.pass ? kExitOk : kExitCheckFailed;
    }

    if (app.got_subcommand(cmd_threshold)) {
      double m_value = 0.0;
      ojson m_json;
      if (thr_m_text == "inf") {
        m_value = std::numeric_limits<double>::infinity();
        m_json = "inf";
      } else {
        const int m = parse_int(thr_m_text, "cannot parse -M '" + thr_m_text + "'");
        m_value = m;
        m_json = m;
      }
      const double threshold = superbroadcast_threshold(thr_n, m_value);
      if (thr_format == "table") {
        print_row(out, "N", std::to_string(thr_n));
        print_row(out, "M", thr_m_text);
        print_row(out, "threshold", fmt_double(threshold));
        if (thr_check) {
          print_row(out, "nbar", fmt_double(thr_nbar));
          print_row(out, "superbroadcasting", thr_nbar >= threshold ? "true" : "false");
        }
      } else {
        ojson doc{{"N", thr_n}, {"M", m_json}, {"threshold", threshold}};
        if (thr_check) {
          doc["nbar"] = thr_nbar;
          doc["superbroadcasting"] = thr_nbar >= threshold;
        }
        out << doc.dump(2) << "\n";
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  err << "no subcommand given\n";
  return kExitUsage;
}

}  // namespace cvb
