// SPDX-License-Identifier: Apache-2.0
//
// spinqec: code generation, verification, pulse-sequence inspection,
// fidelity sweeps and resource tables for spin-qudit error correction.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spinqec/codes.hpp"
#include "spinqec/noise.hpp"
#include "spinqec/protocol.hpp"
#include "spinqec/pulses.hpp"
#include "spinqec/resources.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

// exit statuses: 0 success/pass, 1 verification or checkpoint failure,
// 2 usage or parse error
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

using spinqec::Complex;
using spinqec::Vec;

std::string default_output_dir() {
  const char* dir = std::getenv("SPINQEC_OUTPUT_DIR");
  return dir && *dir ? dir : ".";
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute()) return p;
  return std::filesystem::path(default_output_dir()) / p;
}

void write_file(const std::string& path, const std::string& contents) {
  const auto full = resolve_output(path);
  std::ofstream out(full, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + full.string());
  out << contents;
}

std::string metadata_comment(const std::string& config, std::uint64_t seed) {
  std::ostringstream out;
  out << "# spinqec " << kVersion << "\n";
  out << "# seed=" << seed << "\n";
  out << "# config=" << config << "\n";
  return out.str();
}

nlohmann::json metadata_json(const std::string& config, std::uint64_t seed) {
  return {{"version", kVersion}, {"seed", seed}, {"config", config}};
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    // start:stop:log10|linear,count
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw CLI::ValidationError("grid", "expected start:stop:scale,count");
    const auto comma = parts[2].find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("grid", "expected scale,count after the second ':'");
    const std::string scale = parts[2].substr(0, comma);
    const int count = std::stoi(parts[2].substr(comma + 1));
    const double start = std::stod(parts[0]);
    const double stop = std::stod(parts[1]);
    if (count < 1) throw CLI::ValidationError("grid", "count must be >= 1");
    if (scale == "log10") {
      if (start <= 0.0 || stop <= 0.0)
        throw CLI::ValidationError("grid", "log10 grids need positive endpoints");
      for (int i = 0; i < count; ++i) {
        const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        values.push_back(std::pow(10.0, std::log10(start) +
                                            f * (std::log10(stop) - std::log10(start))));
      }
    } else if (scale == "linear") {
      for (int i = 0; i < count; ++i) {
        const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        values.push_back(start + f * (stop - start));
      }
    } else {
      throw CLI::ValidationError("grid", "scale must be log10 or linear");
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  }
  if (values.empty()) throw CLI::ValidationError("grid", "empty grid");
  return values;
}

spinqec::PulseAlphabet parse_alphabet(const std::string& name) {
  return name == "extended" ? spinqec::PulseAlphabet::Extended
                            : spinqec::PulseAlphabet::Adjacent;
}

std::string describe_state(const Vec& v, double spin) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "  m=%+5.1f  % .12f %+.12fi\n", -spin + i,
                  v(i).real(), v(i).imag());
    out << buf;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// codegen

struct CodegenConfig {
  int order = 0;
  std::string family;
  std::string catalog;
  std::string multi;
  double tolerance = spinqec::kDefaultTol;
  std::string out;
  std::string echo;
};

int run_codegen(const CodegenConfig& cfg) {
  spinqec::CodePair code = [&] {
    if (!cfg.catalog.empty()) return spinqec::catalog_code(cfg.catalog);
    if (!cfg.multi.empty()) return spinqec::multi_qudit_code(cfg.multi);
    const auto family = cfg.family == "even" ? spinqec::CodeFamily::Even
                                             : spinqec::CodeFamily::Odd;
    return spinqec::generate_code(cfg.order, family);
  }();

  const auto ops = code.system.num_spins() == 1 ? spinqec::OperatorSet::SingleSpin
                                                : spinqec::OperatorSet::Collective;
  const spinqec::KlReport report = spinqec::verify_kl(code, code.order, ops, cfg.tolerance);

  nlohmann::json doc;
  doc["metadata"] = metadata_json(cfg.echo, 0);
  doc["code"] = spinqec::code_to_json(code);
  doc["kl_report"] = spinqec::kl_report_to_json(report);
  const std::string text = doc.dump(2) + "\n";
  if (cfg.out.empty())
    std::cout << text;
  else
    write_file(cfg.out, text);

  std::cerr << "codegen: d=" << code.system.dim() << " order=" << code.order
            << " kl=" << (report.passed ? "PASS" : "FAIL") << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyConfig {
  std::string input;
  int order = 0;  // 0: use the document's order
  std::string operators = "auto";
  double tolerance = spinqec::kDefaultTol;
  std::string out;
  std::string echo;
};

int run_verify(const VerifyConfig& cfg) {
  nlohmann::json doc;
  {
    std::ifstream in(cfg.input);
    if (!in) {
      std::cerr << "verify: cannot open " << cfg.input << "\n";
      return kExitUsage;
    }
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "verify: malformed document: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  spinqec::CodePair code = spinqec::code_from_json(doc.contains("code") ? doc["code"] : doc);
  const int order = cfg.order > 0 ? cfg.order : code.order;
  const auto ops = [&] {
    if (cfg.operators == "single") return spinqec::OperatorSet::SingleSpin;
    if (cfg.operators == "collective") return spinqec::OperatorSet::Collective;
    return code.system.num_spins() == 1 ? spinqec::OperatorSet::SingleSpin
                                        : spinqec::OperatorSet::Collective;
  }();

  const spinqec::KlReport report = spinqec::verify_kl(code, order, ops, cfg.tolerance);
  std::cout << (report.passed ? "PASS" : "FAIL") << " order=" << order
            << " max_cross=" << report.max_cross_violation
            << " max_diag=" << report.max_diag_violation
            << " gram_identity=" << (report.gram_is_identity ? "yes" : "no")
            << " (tolerance " << cfg.tolerance << ")\n";
  if (!cfg.out.empty()) {
    nlohmann::json out;
    out["metadata"] = metadata_json(cfg.echo, 0);
    out["kl_report"] = spinqec::kl_report_to_json(report);
    write_file(cfg.out, out.dump(2) + "\n");
  }
  return report.passed ? 0 : kExitFailure;
}

// ---------------------------------------------------------------------------
// sequence

struct SequenceConfig {
  std::string which;
  std::string alphabet = "default";
  std::optional<double> alpha, beta, phi;
  std::string inject;
  bool trace = false;
  std::string out;
  std::string echo;
};

int run_sequence_cmd(const SequenceConfig& cfg) {
  const auto alphabet = parse_alphabet(cfg.alphabet);
  spinqec::PulseSequence seq = cfg.which == "enc" ? spinqec::encoding_sequence(alphabet)
                                                  : spinqec::decoding_sequence(alphabet);

  const bool run_state =
      cfg.alpha.has_value() || cfg.beta.has_value() || cfg.phi.has_value() ||
      !cfg.inject.empty() || cfg.trace;

  if (!run_state) {
    nlohmann::json doc;
    doc["metadata"] = metadata_json(cfg.echo, 0);
    doc["sequence"] = spinqec::sequence_to_json(seq);
    const std::string text = doc.dump(2) + "\n";
    if (cfg.out.empty())
      std::cout << text;
    else
      write_file(cfg.out, text);
    return 0;
  }

  double alpha = cfg.alpha.value_or(std::numbers::sqrt2 / 2.0);
  double beta = cfg.beta.value_or(std::sqrt(std::max(0.0, 1.0 - alpha * alpha)));
  const double phi = cfg.phi.value_or(0.0);
  if (std::abs(alpha * alpha + beta * beta - 1.0) > 1e-9) {
    std::cerr << "sequence: |alpha|^2 + |beta|^2 must be 1\n";
    return kExitUsage;
  }
  const Complex beta_phase = beta * std::exp(Complex(0.0, phi));

  spinqec::ErrorKind inject = spinqec::ErrorKind::None;
  if (!cfg.inject.empty() && cfg.inject != "none") {
    if (cfg.inject == "X") inject = spinqec::ErrorKind::X;
    else if (cfg.inject == "Y") inject = spinqec::ErrorKind::Y;
    else if (cfg.inject == "Z") inject = spinqec::ErrorKind::Z;
    else {
      std::cerr << "sequence: --inject must be one of none, X, Y, Z\n";
      return kExitUsage;
    }
  }

  Vec input;
  if (cfg.which == "enc") {
    input = spinqec::initial_state(alpha, beta_phase);
    if (alphabet == spinqec::PulseAlphabet::Adjacent)
      seq.checkpoints = spinqec::encoding_checkpoints(alpha, beta_phase);
  } else {
    input = spinqec::branch_input(inject, alpha, beta_phase);
    if (alphabet == spinqec::PulseAlphabet::Adjacent)
      seq.checkpoints = spinqec::decoding_checkpoints(inject, alpha, beta_phase);
  }

  spinqec::RunResult result;
  try {
    result = spinqec::run_sequence(seq, input, cfg.trace);
  } catch (const spinqec::CheckpointViolation& e) {
    std::cerr << "sequence: " << e.what() << "\n";
    return kExitFailure;
  }

  std::cout << "final state:\n" << describe_state(result.final_state, 3.5);
  for (const auto& [index, deviation] : result.checkpoint_deviations)
    std::cout << "checkpoint " << index << ": deviation " << deviation << "\n";

  if (cfg.trace) {
    const std::string csv =
        metadata_comment(cfg.echo, 0) + spinqec::trace_to_csv(result.trace, 3.5);
    if (cfg.out.empty())
      std::cout << csv;
    else
      write_file(cfg.out, csv);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateConfig {
  std::string t_grid = "0.001:0.1:log10,7";
  std::string fidelities = "1.0";
  long trials = 10000;
  std::uint64_t seed = 12345;
  std::string model = "depolarizing";
  std::string mode = "mc";
  std::string cascade = "yxz";
  std::string alphabet = "default";
  int channel_order = 2;
  std::string out;
  std::string echo;
};

int run_simulate(const SimulateConfig& cfg) {
  const std::vector<double> ts = parse_grid(cfg.t_grid);
  const std::vector<double> fs = parse_grid(cfg.fidelities);

  spinqec::SweepOptions options;
  options.trials = cfg.trials;
  options.mode = cfg.mode == "exact" ? spinqec::SweepMode::Exact
                                     : spinqec::SweepMode::MonteCarlo;
  options.qec.alphabet = parse_alphabet(cfg.alphabet);
  options.qec.cascade = spinqec::MeasurementCascade::from_string(cfg.cascade);
  options.qec.channel_order = cfg.channel_order;
  if (cfg.model == "ideal")
    options.qec.pulse_model = spinqec::PulseErrorModel::ideal();
  else if (cfg.model == "over-rotation")
    options.qec.pulse_model = spinqec::PulseErrorModel::over_rotation(0.999);
  else
    options.qec.pulse_model = spinqec::PulseErrorModel::depolarizing(0.999);

  spinqec::RandomStream rng(cfg.seed);
  const auto rows = spinqec::fidelity_sweep(ts, fs, options, rng);

  const std::string csv = metadata_comment(cfg.echo, cfg.seed) + spinqec::sweep_to_csv(rows);
  if (cfg.out.empty())
    std::cout << csv;
  else
    write_file(cfg.out, csv);

  // summary: infidelity slopes for the best pulse fidelity, thresholds per t
  const double f_best = *std::max_element(fs.begin(), fs.end());
  std::vector<double> slope_t, slope_fc, slope_fu;
  for (const auto& r : rows) {
    if (r.pulse_fidelity == f_best) {
      slope_t.push_back(r.t_over_relax);
      slope_fc.push_back(r.f_corrected);
      slope_fu.push_back(r.f_uncorrected);
    }
  }
  if (slope_t.size() >= 2) {
    std::cerr << "slope(corrected, f=" << f_best
              << ") = " << spinqec::infidelity_slope(slope_t, slope_fc) << "\n";
    std::cerr << "slope(uncorrected) = " << spinqec::infidelity_slope(slope_t, slope_fu)
              << "\n";
  }
  if (fs.size() >= 2) {
    for (double t : ts) {
      std::vector<double> gf, gg;
      for (const auto& r : rows) {
        if (r.t_over_relax == t) {
          gf.push_back(r.pulse_fidelity);
          gg.push_back(r.gain);
        }
      }
      const double threshold = spinqec::gain_threshold(gf, gg);
      std::cerr << "gain=1 crossing at t/T=" << t << ": ";
      if (std::isnan(threshold))
        std::cerr << "not bracketed by the sampled fidelities\n";
      else
        std::cerr << "f=" << threshold << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// resources

struct ResourcesConfig {
  int max_order = 0;
  std::string format = "text";
  std::string out;
  std::string echo;
};

int run_resources(const ResourcesConfig& cfg) {
  const auto rows = spinqec::comparison_table(cfg.max_order);
  std::string text = cfg.format == "csv" ? spinqec::resources_to_csv(rows)
                                         : spinqec::resources_to_text(rows);
  text = metadata_comment(cfg.echo, 0) + text;
  if (cfg.out.empty())
    std::cout << text;
  else
    write_file(cfg.out, text);
  return 0;
}

// Canonical config echo for output metadata. The destination path is not
// part of the data-producing configuration, so --out is dropped to keep
// repeated runs byte-identical wherever they are written.
std::string echo_args(int argc, char** argv) {
  std::string echo;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--out") {
      ++i;
      continue;
    }
    if (arg.rfind("--out=", 0) == 0) continue;
    if (!echo.empty()) echo += ' ';
    echo += arg;
  }
  return echo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-qudit quantum error correction toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  const std::string echo = echo_args(argc, argv);

  CodegenConfig codegen;
  codegen.echo = echo;
  auto* cmd_codegen = app.add_subcommand("codegen", "construct a codeword pair");
  auto* opt_order = cmd_codegen->add_option("--order", codegen.order, "correction order N")
                        ->check(CLI::PositiveNumber);
  cmd_codegen->add_option("--family", codegen.family, "even: d=4N(N+1); odd: d=4N(N+1)+2")
      ->check(CLI::IsMember({"even", "odd"}));
  auto* opt_catalog = cmd_codegen->add_option("--catalog", codegen.catalog,
                                              "catalogued single-qudit code name");
  auto* opt_multi =
      cmd_codegen->add_option("--multi", codegen.multi, "multi-qudit code name");
  cmd_codegen->add_option("--tolerance", codegen.tolerance, "verification tolerance");
  cmd_codegen->add_option("--out", codegen.out, "output file (JSON)");
  opt_catalog->excludes(opt_order)->excludes(opt_multi);
  opt_multi->excludes(opt_order);

  VerifyConfig verify;
  verify.echo = echo;
  auto* cmd_verify = app.add_subcommand("verify", "check a codeword document");
  cmd_verify->add_option("--input", verify.input, "codeword document (JSON)")->required();
  cmd_verify->add_option("--order", verify.order, "override the declared order")
      ->check(CLI::PositiveNumber);
  cmd_verify->add_option("--operators", verify.operators, "operator set")
      ->check(CLI::IsMember({"auto", "single", "collective"}));
  cmd_verify->add_option("--tolerance", verify.tolerance, "pass tolerance");
  cmd_verify->add_option("--out", verify.out, "report file (JSON)");

  SequenceConfig sequence;
  sequence.echo = echo;
  auto* cmd_sequence = app.add_subcommand("sequence", "inspect or run a pulse sequence");
  cmd_sequence->add_option("--which", sequence.which, "enc or dec")
      ->required()
      ->check(CLI::IsMember({"enc", "dec"}));
  cmd_sequence->add_option("--alphabet", sequence.alphabet, "default or extended")
      ->check(CLI::IsMember({"default", "extended"}));
  cmd_sequence->add_option("--alpha", sequence.alpha, "qubit amplitude alpha");
  cmd_sequence->add_option("--beta", sequence.beta, "qubit amplitude beta");
  cmd_sequence->add_option("--phi", sequence.phi, "relative phase (radians)");
  cmd_sequence->add_option("--inject", sequence.inject, "error branch for dec runs")
      ->check(CLI::IsMember({"none", "X", "Y", "Z"}));
  cmd_sequence->add_flag("--trace", sequence.trace, "record per-pulse amplitudes");
  cmd_sequence->add_option("--out", sequence.out, "output file");

  SimulateConfig simulate;
  simulate.echo = echo;
  auto* cmd_simulate = app.add_subcommand("simulate", "run fidelity sweeps");
  cmd_simulate->add_option("--t-over-T", simulate.t_grid,
                           "relaxation grid start:stop:log10|linear,count or list");
  cmd_simulate->add_option("--pulse-fidelity", simulate.fidelities,
                           "pulse fidelity list or grid");
  cmd_simulate->add_option("--trials", simulate.trials, "Monte-Carlo trials per point")
      ->check(CLI::PositiveNumber);
  cmd_simulate->add_option("--seed", simulate.seed, "random seed");
  cmd_simulate->add_option("--model", simulate.model, "pulse error model")
      ->check(CLI::IsMember({"ideal", "depolarizing", "over-rotation"}));
  cmd_simulate->add_option("--mode", simulate.mode, "mc or exact")
      ->check(CLI::IsMember({"mc", "exact"}));
  cmd_simulate->add_option("--cascade", simulate.cascade, "probe order over x,y,z");
  cmd_simulate->add_option("--alphabet", simulate.alphabet, "pulse alphabet")
      ->check(CLI::IsMember({"default", "extended"}));
  cmd_simulate->add_option("--channel-order", simulate.channel_order,
                           "relaxation expansion cutoff")
      ->check(CLI::PositiveNumber);
  cmd_simulate->add_option("--out", simulate.out, "CSV output file");

  ResourcesConfig resources;
  resources.echo = echo;
  auto* cmd_resources = app.add_subcommand("resources", "resource comparison table");
  cmd_resources->add_option("--max-order", resources.max_order, "largest order N")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_resources->add_option("--format", resources.format, "csv or text")
      ->check(CLI::IsMember({"csv", "text"}));
  cmd_resources->add_option("--out", resources.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (cmd_codegen->parsed()) {
      if (codegen.catalog.empty() && codegen.multi.empty() &&
          (codegen.order < 1 || codegen.family.empty())) {
        std::cerr << "codegen: need --order and --family, or --catalog, or --multi\n";
        return kExitUsage;
      }
      return run_codegen(codegen);
    }
    if (cmd_verify->parsed()) return run_verify(verify);
    if (cmd_sequence->parsed()) return run_sequence_cmd(sequence);
    if (cmd_simulate->parsed()) return run_simulate(simulate);
    if (cmd_resources->parsed()) return run_resources(resources);
  } catch (const spinqec::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
