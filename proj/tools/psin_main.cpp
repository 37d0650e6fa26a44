// Copyright 2026 The psin Authors
// SPDX-License-Identifier: Apache-2.0

// psin: verification suite, detection curve sweeps and state dumps.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 cap exceeded.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psin/errors.hpp"
#include "psin/fock.hpp"
#include "psin/psi_family.hpp"
#include "psin/sweep.hpp"
#include "psin/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitCap = 3;

// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  write(out);
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

struct CurveOptions {
  std::vector<std::uint32_t> n_values;
  std::optional<std::uint64_t> m_min;
  std::uint64_t m_max = psin::kDefaultMMax;
  std::size_t m_points = psin::kDefaultMPoints;
  std::vector<std::uint64_t> m_list;
  std::string noise = "thermal:0.01";
  std::string csv;
  std::string svg;
};

struct PmdOptions {
  std::vector<std::uint32_t> n_values;
  std::vector<double> etas;
  std::string csv;
};

struct VerifyOptions {
  std::uint32_t max_n = 3;
  std::uint32_t max_m = 3;
};

struct DumpOptions {
  std::uint32_t n = 0;
  std::uint32_t m = 1;
  std::string out;
};

int run_pfa(const CurveOptions& o) {
  psin::SweepConfig config;
  config.n_values = o.n_values;
  if (!o.m_list.empty()) {
    config.m_grid = o.m_list;
  } else {
    config.m_grid = psin::LogGrid{o.m_min, o.m_max, o.m_points};
  }
  config.noise = psin::NoiseSpec::parse(o.noise);
  const std::vector<psin::CurveRow> rows = psin::pfa_curves(config);
  emit(o.csv, [&](std::ostream& out) { psin::write_curves_csv(out, rows); });
  if (!o.svg.empty()) emit(o.svg, [&](std::ostream& out) { psin::write_curves_svg(out, rows); });
  return kExitOk;
}

int run_pmd(const PmdOptions& o) {
  const std::vector<psin::PmdRow> rows = psin::pmd_curve(o.n_values, o.etas);
  emit(o.csv, [&](std::ostream& out) { psin::write_pmd_csv(out, rows); });
  return kExitOk;
}

int run_verify(const VerifyOptions& o) {
  const psin::VerificationReport report = psin::run_verification(o.max_n, o.max_m);
  psin::write_report(std::cout, report);
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

int run_dump(const DumpOptions& o) {
  const psin::SparseState psi = psin::build_psi_direct({o.n, o.m});
  emit(o.out, [&](std::ostream& out) { psin::write_dump(out, psi); });
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entangled N-photon state toolkit: verification, detection curves, state dumps", "psin"};
  app.require_subcommand(1);
  // --config is accepted before or after the subcommand; values sit in a
  // section named after the subcommand, e.g. [pfa-curves].
  app.set_config("--config", "", "TOML or INI file with option values; command-line flags take precedence");
  app.fallthrough();

  VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "Run the identity and oracle checks over small N and M");
  verify->add_option("--max-n,--n", verify_opts.max_n, "Largest photon number checked")->capture_default_str();
  verify->add_option("--max-m,--m-max", verify_opts.max_m, "Largest mode count checked")->capture_default_str();

  CurveOptions curve_opts;
  auto* pfa = app.add_subcommand("pfa-curves", "False-alarm coefficients, baselines and totals versus M");
  pfa->add_option("--n", curve_opts.n_values, "Photon numbers (comma separated or repeated)")
      ->required()
      ->delimiter(',');
  auto* m_min = pfa->add_option("--m-min", curve_opts.m_min, "Smallest M of the log grid [default: N]");
  auto* m_max = pfa->add_option("--m-max", curve_opts.m_max, "Largest M of the log grid")->capture_default_str();
  auto* m_points =
      pfa->add_option("--m-points", curve_opts.m_points, "Number of log grid points")->capture_default_str();
  auto* m_list = pfa->add_option("--m-list", curve_opts.m_list, "Explicit M values instead of a log grid")
                     ->delimiter(',');
  m_list->excludes(m_min)->excludes(m_max)->excludes(m_points);
  pfa->add_option("--noise", curve_opts.noise, "thermal:<nbar> or table:<path>")->capture_default_str();
  pfa->add_option("--csv", curve_opts.csv, "CSV output path [default: stdout]");
  pfa->add_option("--svg", curve_opts.svg, "Optional SVG chart path");

  PmdOptions pmd_opts;
  auto* pmd = app.add_subcommand("pmd-curve", "Missed-detection probability (1 - eta)^N");
  pmd->add_option("--n", pmd_opts.n_values, "Photon numbers")->required()->delimiter(',');
  pmd->add_option("--eta", pmd_opts.etas, "Reflectivities in [0, 1]")->required()->delimiter(',');
  pmd->add_option("--csv", pmd_opts.csv, "CSV output path [default: stdout]");

  DumpOptions dump_opts;
  auto* dump = app.add_subcommand("state-dump", "Write the amplitudes of |psi_N>");
  dump->add_option("--n", dump_opts.n, "Photon number")->required();
  dump->add_option("--m", dump_opts.m, "Modes per register")->required();
  dump->add_option("--out", dump_opts.out, "Output path [default: stdout]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*verify) return run_verify(verify_opts);
    if (*pfa) return run_pfa(curve_opts);
    if (*pmd) return run_pmd(pmd_opts);
    if (*dump) return run_dump(dump_opts);
  } catch (const psin::CapExceeded& e) {
    std::cerr << "psin: refused: " << e.what() << '\n';
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "psin: invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "psin: invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "psin: error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
