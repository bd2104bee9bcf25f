// entx-scan: trajectories, phase diagrams, bound sweeps and cross-validation
// for the two-pair entanglement-transfer model, written as CSV.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "entx/error.hpp"
#include "entx/scan.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kCheckFailed = 2, kNumerical = 3 };

struct Flags {
  std::string theta = "pi/4";
  double g_aa = 1.0;
  double g_bb = 1.0;
  double kappa_a = 0.0;
  double kappa_b = 0.0;
  double omega = 1.0;
  double t_final = 10.0;
  std::size_t samples = 1001;
  std::string engine = "closed";
  std::uint64_t seed = 42;
  std::size_t frontier_samples = 101;
  std::string out;
  std::string config;
};

// Accepts a plain number or a multiple of pi: "pi", "pi/4", "3*pi/4", "0.5*pi".
double parse_angle(const std::string& text) {
  const auto number = [&](const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  };
  try {
    const auto pos = text.find("pi");
    if (pos == std::string::npos) return number(text);
    double scale = 1.0;
    if (pos > 0) {
      if (text[pos - 1] != '*') throw std::invalid_argument(text);
      scale = number(text.substr(0, pos - 1));
    }
    const std::string rest = text.substr(pos + 2);
    if (!rest.empty()) {
      if (rest.front() != '/') throw std::invalid_argument(text);
      scale /= number(rest.substr(1));
    }
    return scale * std::numbers::pi;
  } catch (const std::exception&) {
    throw entx::Error(entx::ErrorKind::DomainError, "cannot parse angle '" + text + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void add_shared_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--theta", f.theta, "Initial-state angle in radians (accepts pi/4 style)");
  sub.add_option("--g-aa", f.g_aa, "a-A coupling")->check(CLI::NonNegativeNumber);
  sub.add_option("--g-bb", f.g_bb, "b-B coupling")->check(CLI::NonNegativeNumber);
  sub.add_option("--kappa-a", f.kappa_a, "decay rate of A")->check(CLI::NonNegativeNumber);
  sub.add_option("--kappa-b", f.kappa_b, "decay rate of B")->check(CLI::NonNegativeNumber);
  sub.add_option("--omega", f.omega, "resonant frequency")->check(CLI::PositiveNumber);
  sub.add_option("--t-final", f.t_final, "end of the time window");
  sub.add_option("--samples", f.samples, "time points (random draws for boundcheck)");
  sub.add_option("--engine", f.engine, "closed | exact | rk4")
      ->check(CLI::IsMember({"closed", "exact", "rk4"}));
  sub.add_option("--seed", f.seed, "SplitMix64 seed for boundcheck");
  sub.add_option("--frontier-samples", f.frontier_samples, "frontier overlay points (phasediagram)");
  sub.add_option("--out", f.out, "output path (default stdout)");
  sub.add_option("--config", f.config, "key=value file; command-line flags take precedence");
}

// Fills every flag not given on the command line from the config file.
void apply_config_file(CLI::App& sub, Flags& f) {
  if (f.config.empty()) return;
  std::ifstream in(f.config);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + f.config);

  const std::map<std::string, std::function<void(const std::string&)>> setters{
      {"theta", [&](const std::string& v) { f.theta = v; }},
      {"g-aa", [&](const std::string& v) { f.g_aa = std::stod(v); }},
      {"g-bb", [&](const std::string& v) { f.g_bb = std::stod(v); }},
      {"kappa-a", [&](const std::string& v) { f.kappa_a = std::stod(v); }},
      {"kappa-b", [&](const std::string& v) { f.kappa_b = std::stod(v); }},
      {"omega", [&](const std::string& v) { f.omega = std::stod(v); }},
      {"t-final", [&](const std::string& v) { f.t_final = std::stod(v); }},
      {"samples", [&](const std::string& v) { f.samples = std::stoul(v); }},
      {"engine", [&](const std::string& v) { f.engine = v; }},
      {"seed", [&](const std::string& v) { f.seed = std::stoull(v); }},
      {"frontier-samples", [&](const std::string& v) { f.frontier_samples = std::stoul(v); }},
      {"out", [&](const std::string& v) { f.out = v; }},
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--config", "line " + std::to_string(lineno) + " is not key=value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    for (auto& ch : key)
      if (ch == '_') ch = '-';
    const auto it = setters.find(key);
    if (it == setters.end()) throw CLI::ValidationError("--config", "unknown key '" + key + "'");
    if (sub.get_option("--" + key)->count() > 0) continue;
    try {
      it->second(value);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--config", "bad value for '" + key + "'");
    }
  }
}

entx::SweepSpec make_spec(entx::SweepMode mode, const Flags& f) {
  entx::SweepSpec spec;
  spec.mode = mode;
  spec.config.theta = parse_angle(f.theta);
  spec.config.g_aA = f.g_aa;
  spec.config.g_bB = f.g_bb;
  spec.config.kappa_A = f.kappa_a;
  spec.config.kappa_B = f.kappa_b;
  spec.config.omega = f.omega;
  spec.t_final = f.t_final;
  spec.samples = f.samples;
  spec.engine = entx::parse_engine(f.engine);
  spec.seed = f.seed;
  spec.frontier_samples = f.frontier_samples;
  spec.validate();
  return spec;
}

int exit_code_for(entx::ErrorKind kind) {
  switch (kind) {
    case entx::ErrorKind::DomainError:
    case entx::ErrorKind::EngineMismatch:
    case entx::ErrorKind::ClosedFormDomain:
      return kUsage;
    case entx::ErrorKind::BoundViolation:
      return kCheckFailed;
    default:
      return kNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement/energy sweeps for the two-pair qubit transfer model", "entx-scan"};
  app.set_version_flag("--version", entx::kToolVersion);
  app.require_subcommand(1);

  Flags flags;
  CLI::App* timeseries = app.add_subcommand("timeseries", "N and U against time");
  CLI::App* phasediagram = app.add_subcommand("phasediagram", "(U, N) path plus frontier overlay");
  CLI::App* boundcheck = app.add_subcommand("boundcheck", "randomized frontier-bound sweep");
  CLI::App* verify = app.add_subcommand("verify", "closed forms vs. numerical propagation");
  for (CLI::App* sub : {timeseries, phasediagram, boundcheck, verify}) add_shared_flags(*sub, flags);

  CLI::App* active = nullptr;
  entx::SweepMode mode{};
  try {
    app.parse(argc, argv);
    for (auto [sub, m] : {std::pair{timeseries, entx::SweepMode::TimeSeries},
                          std::pair{phasediagram, entx::SweepMode::PhaseDiagram},
                          std::pair{boundcheck, entx::SweepMode::BoundCheck},
                          std::pair{verify, entx::SweepMode::Verify}})
      if (sub->parsed()) active = sub, mode = m;
    apply_config_file(*active, flags);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const entx::SweepSpec spec = make_spec(mode, flags);
    std::ostringstream buffer;
    int status = kOk;
    switch (mode) {
      case entx::SweepMode::TimeSeries:
        entx::run_time_series(spec, buffer);
        break;
      case entx::SweepMode::PhaseDiagram:
        entx::run_phase_diagram(spec, buffer);
        break;
      case entx::SweepMode::BoundCheck: {
        const auto report = entx::run_bound_check(spec);
        entx::write_bound_report(buffer, spec, report);
        if (!report.passed()) status = kCheckFailed;
        break;
      }
      case entx::SweepMode::Verify: {
        const auto report = entx::run_verify(spec);
        entx::write_verify_report(buffer, spec, report);
        if (!report.passed()) status = kCheckFailed;
        break;
      }
    }
    if (flags.out.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream file(flags.out, std::ios::binary);
      if (!file) {
        std::cerr << "entx-scan: cannot write " << flags.out << '\n';
        return kUsage;
      }
      file << buffer.str();
    }
    return status;
  } catch (const entx::Error& e) {
    std::cerr << "entx-scan: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "entx-scan: " << e.what() << '\n';
    return kNumerical;
  }
}
