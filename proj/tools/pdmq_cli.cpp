// pdmq: closed-form and numeric spectra for PDM quadrupole particles.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pdmq/harness.hpp"

namespace {

using pdmq::harness::OutputFormat;
using pdmq::harness::RunConfig;

struct CommonFlags {
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::size_t> grid_n;
  std::optional<double> rho_max;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool needs_config) {
  auto* opt = cmd->add_option("--config", f.config, "run configuration (key=value lines)");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out, "output path (default: stdout)");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  if (needs_config) {
    cmd->add_option("--grid-n", f.grid_n, "interior grid nodes")->check(CLI::Range(100, 100000000));
    cmd->add_option("--rho-max", f.rho_max, "domain end (disables domain extension)")->check(CLI::PositiveNumber);
  }
}

RunConfig load(const CommonFlags& f) {
  RunConfig c = pdmq::harness::load_config(f.config);
  if (f.grid_n) c.grid_n = *f.grid_n;
  if (f.rho_max) c.rho_max = *f.rho_max;
  if (!f.format.empty()) c.format = f.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  if (!f.out.empty()) c.out = f.out;
  return c;
}

void emit(const pdmq::harness::Table& t, OutputFormat fmt, const std::optional<std::string>& out) {
  if (out) {
    std::ofstream os(*out, std::ios::binary);
    if (!os) throw pdmq::Error(pdmq::ErrorKind::ConfigError, "cannot write '" + *out + "'");
    pdmq::harness::write_table(t, fmt, os);
  } else {
    pdmq::harness::write_table(t, fmt, std::cout);
  }
}

OutputFormat format_of(const CommonFlags& f) { return f.format == "json" ? OutputFormat::Json : OutputFormat::Csv; }
std::optional<std::string> out_of(const CommonFlags& f) {
  return f.out.empty() ? std::nullopt : std::optional<std::string>(f.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Landau-type spectra of position-dependent-mass quadrupole particles"};
  app.require_subcommand(1);

  CommonFlags spectrum_f, solve_f, verify_f, wave_f, heun_f, f11_f;

  auto* spectrum = app.add_subcommand("spectrum", "closed-form eigenvalues over the sweep");
  add_common(spectrum, spectrum_f, true);

  auto* solve = app.add_subcommand("solve", "numeric eigenvalues over the sweep");
  add_common(solve, solve_f, true);
  std::string wave_dir;
  solve->add_option("--wavefunctions", wave_dir, "directory for per-state (rho, R) CSV files");

  auto* verify = app.add_subcommand("verify", "analytic vs numeric cross-check");
  add_common(verify, verify_f, true);

  auto* wave = app.add_subcommand("wavefunction", "sampled radial eigenfunction of one state");
  add_common(wave, wave_f, true);
  int wave_m = 0, wave_n = 0;
  std::string wave_source = "numeric";
  wave->add_option("--m", wave_m, "magnetic quantum number (default: first m of the config)");
  wave->add_option("--n", wave_n, "radial quantum number");
  wave->add_option("--source", wave_source, "numeric or analytic")->check(CLI::IsMember({"numeric", "analytic"}));

  auto* heun = app.add_subcommand("heun", "evaluate the biconfluent Heun series");
  add_common(heun, heun_f, false);
  pdmq::HeunParams hp;
  double heun_r = 0.0;
  std::optional<int> degree;
  heun->add_option("--alpha", hp.alpha)->required();
  heun->add_option("--beta", hp.beta)->required();
  heun->add_option("--gamma", hp.gamma)->required();
  heun->add_option("--delta", hp.delta)->required();
  heun->add_option("--r", heun_r)->required();
  heun->add_option("--degree", degree, "also run the polynomial-termination check for this degree");

  auto* f11 = app.add_subcommand("f11", "evaluate Kummer's 1F1 series");
  add_common(f11, f11_f, false);
  double fa = 0.0, fb = 0.0, fx = 0.0;
  f11->add_option("--a", fa)->required();
  f11->add_option("--b", fb)->required();
  f11->add_option("--x", fx)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*spectrum) {
      const auto c = load(spectrum_f);
      emit(pdmq::harness::cmd_spectrum(c), c.format, c.out);
    } else if (*solve) {
      const auto c = load(solve_f);
      std::optional<std::filesystem::path> dir;
      if (!wave_dir.empty()) dir = wave_dir;
      emit(pdmq::harness::cmd_solve(c, dir), c.format, c.out);
    } else if (*verify) {
      const auto c = load(verify_f);
      const auto outcome = pdmq::harness::cmd_verify(c);
      emit(outcome.table, c.format, c.out);
      if (!outcome.passed) {
        std::cerr << "verify: model-2 rows exceed tolerance\n";
        return 1;
      }
    } else if (*wave) {
      const auto c = load(wave_f);
      const int m = wave->count("--m") ? wave_m : c.m.first;
      const auto source = wave_source == "analytic" ? pdmq::harness::WavefunctionSource::Analytic
                                                    : pdmq::harness::WavefunctionSource::Numeric;
      emit(pdmq::harness::cmd_wavefunction(c, m, wave_n, source), c.format, c.out);
    } else if (*heun) {
      emit(pdmq::harness::cmd_heun(hp, heun_r, degree), format_of(heun_f), out_of(heun_f));
    } else if (*f11) {
      emit(pdmq::harness::cmd_f11(fa, fb, fx), format_of(f11_f), out_of(f11_f));
    }
  } catch (const pdmq::Error& e) {
    std::cerr << "pdmq: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pdmq: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
