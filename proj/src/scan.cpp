#include "entx/scan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "entx/dynamics.hpp"
#include "entx/error.hpp"
#include "entx/measures.hpp"

namespace entx {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Runs fn(i) for i in [0, n) on a small worker pool.  Each index writes only
// its own slot, so callers get results in input order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double sample_time(double t_final, std::size_t k, std::size_t samples) {
  return t_final * static_cast<double>(k) / static_cast<double>(samples - 1);
}

// RK4 plan whose record stride lands exactly on `samples` uniform times.
PropagationPlan sampled_rk4_plan(const SystemConfig& cfg, double t_final, std::size_t samples) {
  const double interval = t_final / static_cast<double>(samples - 1);
  const double dt0 = default_time_step(cfg);
  const auto per_interval = static_cast<std::size_t>(std::max(1.0, std::ceil(interval / dt0 * (1.0 - 1e-12))));
  PropagationPlan plan;
  plan.t_final = t_final;
  plan.dt = interval / static_cast<double>(per_interval);
  plan.method = Method::RungeKutta4;
  plan.record_stride = per_interval;
  return plan;
}

TrajectoryRecord make_record(double t, const ComplexMatrix& rho_ab, double omega, double trace_err) {
  TrajectoryRecord r;
  r.t = t;
  r.N = negativity(rho_ab);
  r.U = energy(rho_ab, omega);
  const XStateAB x = XStateAB::from_matrix(rho_ab);
  r.a = x.a;
  r.b = x.b;
  r.c = x.c;
  r.d_re = x.d.real();
  r.d_im = x.d.imag();
  r.residual = bound_residual(r.N, r.U);
  r.trace_err = trace_err;
  r.min_eig = inspect_state(rho_ab).min_eigenvalue;
  return r;
}

double element_error(const ComplexMatrix& rho_ab, const XStateAB& x) { return max_abs_diff(rho_ab, x.to_matrix()); }

const std::array<double, 6> kThetaGrid{0.0, kPi / 8, kPi / 6, kPi / 4, kPi / 3, kPi / 2};
const std::array<double, 6> kRatioGrid{1.0, 2.0, 3.0, 7.0, 53.0, std::numbers::sqrt2};

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

const char* to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::TimeSeries: return "timeseries";
    case SweepMode::PhaseDiagram: return "phasediagram";
    case SweepMode::BoundCheck: return "boundcheck";
    case SweepMode::Verify: return "verify";
  }
  return "unknown";
}

const char* to_string(Engine engine) {
  switch (engine) {
    case Engine::ClosedForm: return "closed";
    case Engine::Exact: return "exact";
    case Engine::RungeKutta4: return "rk4";
  }
  return "unknown";
}

Engine parse_engine(const std::string& name) {
  if (name == "closed") return Engine::ClosedForm;
  if (name == "exact") return Engine::Exact;
  if (name == "rk4") return Engine::RungeKutta4;
  throw Error(ErrorKind::DomainError, "unknown engine '" + name + "'");
}

void SweepSpec::validate() const {
  config.validate();
  if (samples < 2) throw Error(ErrorKind::DomainError, "samples must be at least 2");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw Error(ErrorKind::DomainError, "t_final must be positive");
}

std::vector<TrajectoryRecord> compute_trajectory(const SweepSpec& spec) {
  spec.validate();
  const SystemConfig& cfg = spec.config;
  std::vector<TrajectoryRecord> records(spec.samples);

  switch (spec.engine) {
    case Engine::ClosedForm:
      parallel_for(spec.samples, [&](std::size_t k) {
        const double t = sample_time(spec.t_final, k, spec.samples);
        const XStateAB x = closed_form_elements(cfg, t);
        records[k] = make_record(t, x.to_matrix(), cfg.omega, std::abs(x.a + x.b + x.c - 1.0));
      });
      break;
    case Engine::Exact: {
      if (!cfg.is_closed())
        throw Error(ErrorKind::EngineMismatch, "the exact engine only propagates closed systems; use rk4");
      const SpectralPropagator propagator(build_hamiltonian(cfg));
      const PureState psi0 = initial_state(cfg);
      parallel_for(spec.samples, [&](std::size_t k) {
        const double t = sample_time(spec.t_final, k, spec.samples);
        const PureState psi = propagator.evolve(psi0, t);
        records[k] = make_record(t, partial_trace_to_ab(psi.density_matrix()), cfg.omega,
                                 std::abs(psi.norm_squared() - 1.0));
      });
      break;
    }
    case Engine::RungeKutta4: {
      const auto samples = propagate_lindblad(cfg, sampled_rk4_plan(cfg, spec.t_final, spec.samples));
      if (samples.size() != spec.samples)
        throw Error(ErrorKind::InvariantViolation, "integrator returned an unexpected sample count");
      parallel_for(samples.size(), [&](std::size_t k) {
        const DensitySample& s = samples[k];
        records[k] = make_record(s.t, partial_trace_to_ab(s.rho), cfg.omega, std::abs(s.rho.trace() - 1.0));
      });
      break;
    }
  }

  for (const TrajectoryRecord& r : records) {
    if (r.residual < kRecordResidualFloor) {
      std::ostringstream msg;
      msg << "bound residual " << fmt17(r.residual) << " at t = " << fmt17(r.t);
      throw Error(ErrorKind::BoundViolation, msg.str());
    }
  }
  return records;
}

std::vector<TrajectoryRecord> frontier_records(std::size_t count) {
  if (count < 2) throw Error(ErrorKind::DomainError, "frontier needs at least 2 points");
  std::vector<TrajectoryRecord> out;
  for (std::size_t k = 0; k < count; ++k) {
    const double u = -1.0 + static_cast<double>(k) / static_cast<double>(count - 1);
    const double half = (1.0 + u) / 2.0;
    XStateAB x{-u, half, half, half};
    TrajectoryRecord r = make_record(0.0, x.to_matrix(), 1.0, std::abs(x.a + x.b + x.c - 1.0));
    r.frontier = 1;
    out.push_back(r);
  }
  return out;
}

void write_csv_header(std::ostream& out, const SweepSpec& spec) {
  const SystemConfig& cfg = spec.config;
  out << "# entx-scan " << kToolVersion << '\n'
      << "# mode=" << to_string(spec.mode) << '\n'
      << "# engine=" << to_string(spec.engine) << '\n'
      << "# theta=" << fmt17(cfg.theta) << '\n'
      << "# g_aA=" << fmt17(cfg.g_aA) << '\n'
      << "# g_bB=" << fmt17(cfg.g_bB) << '\n'
      << "# kappa_A=" << fmt17(cfg.kappa_A) << '\n'
      << "# kappa_B=" << fmt17(cfg.kappa_B) << '\n'
      << "# omega=" << fmt17(cfg.omega) << '\n'
      << "# t_final=" << fmt17(spec.t_final) << '\n'
      << "# samples=" << spec.samples << '\n'
      << "# seed=" << spec.seed << '\n';
  if (spec.mode == SweepMode::PhaseDiagram) out << "# frontier_samples=" << spec.frontier_samples << '\n';
  if (spec.engine == Engine::RungeKutta4 &&
      (spec.mode == SweepMode::TimeSeries || spec.mode == SweepMode::PhaseDiagram))
    out << "# dt=" << fmt17(sampled_rk4_plan(cfg, spec.t_final, spec.samples).dt) << '\n';
}

void write_records(std::ostream& out, const std::vector<TrajectoryRecord>& records) {
  out << "t,N,U,a,b,c,d_re,d_im,residual,trace_err,min_eig,frontier\n";
  for (const TrajectoryRecord& r : records) {
    for (double v : {r.t, r.N, r.U, r.a, r.b, r.c, r.d_re, r.d_im, r.residual, r.trace_err, r.min_eig})
      out << fmt17(v) << ',';
    out << r.frontier << '\n';
  }
}

std::vector<TrajectoryRecord> read_records(std::istream& in) {
  std::vector<TrajectoryRecord> out;
  std::string line;
  bool saw_columns = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!saw_columns) {
      if (line.rfind("t,N,U", 0) != 0) throw Error(ErrorKind::DomainError, "missing CSV column row");
      saw_columns = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string field; std::getline(ss, field, ',');) fields.push_back(field);
    if (fields.size() != 12) throw Error(ErrorKind::DomainError, "CSV row does not have 12 fields");
    const auto num = [&](std::size_t i) { return std::strtod(fields[i].c_str(), nullptr); };
    TrajectoryRecord r;
    r.t = num(0);
    r.N = num(1);
    r.U = num(2);
    r.a = num(3);
    r.b = num(4);
    r.c = num(5);
    r.d_re = num(6);
    r.d_im = num(7);
    r.residual = num(8);
    r.trace_err = num(9);
    r.min_eig = num(10);
    r.frontier = std::stoi(fields[11]);
    out.push_back(r);
  }
  return out;
}

void run_time_series(const SweepSpec& spec, std::ostream& out) {
  const auto records = compute_trajectory(spec);
  write_csv_header(out, spec);
  write_records(out, records);
}

void run_phase_diagram(const SweepSpec& spec, std::ostream& out) {
  auto records = compute_trajectory(spec);
  const auto frontier = frontier_records(spec.frontier_samples);
  records.insert(records.end(), frontier.begin(), frontier.end());
  write_csv_header(out, spec);
  write_records(out, records);
}

bool BoundCheckReport::passed() const {
  return violations == 0 && equality_max_abs <= kFrontierEqualityTolerance;
}

BoundCheckReport run_bound_check(const SweepSpec& spec) {
  spec.validate();
  const SystemConfig& base = spec.config;
  const bool dissipative = !base.is_closed();

  std::vector<BoundSample> draws(spec.samples);
  SplitMix64 rng(spec.seed);
  for (BoundSample& s : draws) {
    s.theta = 2.0 * kPi * rng.uniform();
    s.ratio = std::pow(64.0, 2.0 * rng.uniform() - 1.0);
    const double ka = 2.0 * rng.uniform();
    const double kb = 2.0 * rng.uniform();
    s.t = spec.t_final * rng.uniform();
    const double g_bB = base.g_bB;
    const double g_aA = s.ratio * g_bB;
    s.kappa_A = dissipative ? ka * g_aA : 0.0;
    s.kappa_B = dissipative ? kb * g_bB : 0.0;
  }

  parallel_for(draws.size(), [&](std::size_t i) {
    BoundSample& s = draws[i];
    SystemConfig cfg = base;
    cfg.theta = s.theta;
    cfg.g_aA = s.ratio * base.g_bB;
    cfg.kappa_A = s.kappa_A;
    cfg.kappa_B = s.kappa_B;
    const XStateAB x = cfg.is_closed() ? unitary_elements(cfg, s.t)
                                       : dissipative_elements(cfg, s.t, DissipativeBranch::GeneralTheta);
    const ObservablePair obs = xstate_observables(x);
    s.residual = bound_residual(obs.negativity, obs.energy);
  });

  BoundCheckReport report;
  report.samples = draws.size();
  report.worst = draws.front();
  for (const BoundSample& s : draws) {
    if (s.residual < report.worst.residual) report.worst = s;
    if (s.residual < kBoundViolationFloor) {
      ++report.violations;
      if (report.offenders.size() < 10) report.offenders.push_back(s);
    }
  }

  SystemConfig equal = base;
  equal.theta = kPi / 4.0;
  equal.g_aA = equal.g_bB = base.g_bB;
  equal.kappa_A = equal.kappa_B = 0.0;
  for (std::size_t k = 0; k < 1000; ++k) {
    const ObservablePair obs = xstate_observables(unitary_elements(equal, sample_time(spec.t_final, k, 1000)));
    report.equality_max_abs = std::max(report.equality_max_abs, std::abs(bound_residual(obs.negativity, obs.energy)));
  }
  return report;
}

void write_bound_report(std::ostream& out, const SweepSpec& spec, const BoundCheckReport& report) {
  write_csv_header(out, spec);
  const auto tuple = [](const BoundSample& s) {
    return fmt17(s.theta) + ";" + fmt17(s.ratio) + ";" + fmt17(s.kappa_A) + ";" + fmt17(s.kappa_B) + ";" +
           fmt17(s.t);
  };
  out << "key,value\n"
      << "samples," << report.samples << '\n'
      << "violations," << report.violations << '\n'
      << "min_residual," << fmt17(report.worst.residual) << '\n'
      << "min_residual_tuple(theta;ratio;kappa_A;kappa_B;t)," << tuple(report.worst) << '\n'
      << "equality_max_abs_residual," << fmt17(report.equality_max_abs) << '\n';
  for (const BoundSample& s : report.offenders)
    out << "violation(theta;ratio;kappa_A;kappa_B;t)," << tuple(s) << '\n';
  out << "status," << (report.passed() ? "pass" : "fail") << '\n';
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed(); });
}

VerifyReport run_verify(const SweepSpec& spec) {
  spec.validate();
  const double omega = spec.config.omega;
  const std::size_t samples = spec.samples;
  VerifyReport report;

  // Closed system: spectral propagation + partial trace vs. unitary elements.
  {
    std::vector<double> errors(kThetaGrid.size() * kRatioGrid.size());
    parallel_for(errors.size(), [&](std::size_t job) {
      SystemConfig cfg;
      cfg.omega = omega;
      cfg.theta = kThetaGrid[job / kRatioGrid.size()];
      cfg.g_bB = 1.0;
      cfg.g_aA = kRatioGrid[job % kRatioGrid.size()];
      const double horizon = 10.0 * kPi / std::min(cfg.g_aA, cfg.g_bB);
      const SpectralPropagator propagator(build_hamiltonian(cfg));
      const PureState psi0 = initial_state(cfg);
      double worst = 0.0;
      for (std::size_t k = 0; k < samples; ++k) {
        const double t = sample_time(horizon, k, samples);
        const ComplexMatrix rho_ab = partial_trace_to_ab(propagator.evolve(psi0, t).density_matrix());
        worst = std::max(worst, element_error(rho_ab, unitary_elements(cfg, t)));
      }
      errors[job] = worst;
    });
    report.checks.push_back({"unitary_closed_vs_spectral", *std::max_element(errors.begin(), errors.end()), 1e-8});
  }

  // Damped closed form (theta = pi/4) vs. Lindblad RK4, kappa = 0.1 g_aA.
  {
    const std::array<double, 4> ratios{1.0, 2.0, 3.0, std::numbers::sqrt2};
    std::vector<double> errors(ratios.size());
    parallel_for(ratios.size(), [&](std::size_t job) {
      SystemConfig cfg;
      cfg.omega = omega;
      cfg.theta = kPi / 4.0;
      cfg.g_aA = 1.0;
      cfg.g_bB = ratios[job];
      cfg.kappa_A = cfg.kappa_B = 0.1;
      double worst = 0.0;
      for (const DensitySample& s : propagate_lindblad(cfg, sampled_rk4_plan(cfg, 40.0 / 0.1, samples)))
        worst = std::max(worst, element_error(partial_trace_to_ab(s.rho), dissipative_elements(cfg, s.t)));
      errors[job] = worst;
    });
    report.checks.push_back({"damped_closed_vs_lindblad", *std::max_element(errors.begin(), errors.end()), 1e-6});
  }

  // kappa = 0 limit of the damped formula.
  {
    double worst = 0.0;
    for (double ratio : kRatioGrid) {
      SystemConfig cfg;
      cfg.omega = omega;
      cfg.theta = kPi / 4.0;
      cfg.g_bB = 1.0;
      cfg.g_aA = ratio;
      for (std::size_t k = 0; k < samples; ++k) {
        const double t = sample_time(20.0 * kPi, k, samples);
        const XStateAB lhs = dissipative_elements(cfg, t);
        worst = std::max(worst, element_error(lhs.to_matrix(), unitary_elements(cfg, t)));
      }
    }
    report.checks.push_back({"damped_formula_kappa0_reduction", worst, 1e-12});
  }

  // General-theta damped branch, including critical and overdamped pairs.
  {
    struct Case {
      double theta, g_aA, g_bB, kappa_A, kappa_B, horizon;
    };
    const std::vector<Case> cases{
        {kPi / 8, 1.0, 1.0, 0.1, 0.1, 100.0}, {kPi / 6, 1.0, 2.0, 0.1, 0.1, 100.0},
        {kPi / 3, 2.0, 1.0, 0.2, 0.1, 100.0}, {kPi / 3, 1.0, 0.5, 2.0, 1.0, 20.0},
        {2.0, 1.0, 0.7, 3.0, 0.5, 20.0},      {5.0, 0.0, 1.0, 0.3, 0.0, 20.0},
    };
    std::vector<double> errors(cases.size());
    parallel_for(cases.size(), [&](std::size_t job) {
      const Case& c = cases[job];
      SystemConfig cfg{c.theta, c.g_aA, c.g_bB, c.kappa_A, c.kappa_B, omega};
      double worst = 0.0;
      for (const DensitySample& s : propagate_lindblad(cfg, sampled_rk4_plan(cfg, c.horizon, samples))) {
        const XStateAB x = dissipative_elements(cfg, s.t, DissipativeBranch::GeneralTheta);
        worst = std::max(worst, element_error(partial_trace_to_ab(s.rho), x));
      }
      errors[job] = worst;
    });
    report.checks.push_back(
        {"general_theta_damped_vs_lindblad", *std::max_element(errors.begin(), errors.end()), 1e-6});
  }

  // State-vector RK4 vs. spectral propagation.
  {
    SystemConfig cfg;
    cfg.omega = omega;
    cfg.theta = kPi / 3.0;
    cfg.g_aA = 2.0;
    cfg.g_bB = 1.0;
    const ComplexMatrix h = build_hamiltonian(cfg);
    const SpectralPropagator propagator(h);
    const PureState psi0 = initial_state(cfg);
    PropagationPlan plan = sampled_rk4_plan(cfg, 20.0 * kPi / 2.0, samples);
    double worst = 0.0;
    for (const StateSample& s : propagate_state_rk4(h, psi0, plan)) {
      const PureState exact = propagator.evolve(psi0, s.t);
      for (std::size_t i = 0; i < kFullDim; ++i) worst = std::max(worst, std::abs(s.amplitudes[i] - exact[i]));
    }
    report.checks.push_back({"state_rk4_vs_spectral", worst, 1e-8});
  }

  // Low-excitation sector integration vs. full 16-dimensional integration.
  {
    SystemConfig cfg;
    cfg.omega = omega;
    cfg.theta = kPi / 6.0;
    cfg.g_aA = 1.0;
    cfg.g_bB = std::numbers::sqrt2;
    cfg.kappa_A = 0.1;
    cfg.kappa_B = 0.2;
    const PropagationPlan plan = sampled_rk4_plan(cfg, 50.0, samples);
    const auto full = propagate_lindblad(cfg, plan);
    const auto sector = propagate_lindblad(cfg, plan, LindbladOptions{true});
    double worst = 0.0;
    for (std::size_t k = 0; k < full.size(); ++k) worst = std::max(worst, max_abs_diff(full[k].rho, sector[k].rho));
    report.checks.push_back({"low_sector_vs_full", worst, 1e-10});
  }

  // Frontier points satisfy the equality.
  {
    double worst = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
      const double u = -1.0 + static_cast<double>(k) / static_cast<double>(samples - 1);
      worst = std::max(worst, std::abs(bound_residual(frontier_negativity(u), u)));
    }
    report.checks.push_back({"frontier_consistency", worst, 1e-12});
  }
  return report;
}

void write_verify_report(std::ostream& out, const SweepSpec& spec, const VerifyReport& report) {
  write_csv_header(out, spec);
  out << "check,max_error,tolerance,status\n";
  for (const VerifyCheck& c : report.checks)
    out << c.name << ',' << fmt17(c.max_error) << ',' << fmt17(c.tolerance) << ','
        << (c.passed() ? "pass" : "fail") << '\n';
  out << "overall,,," << (report.passed() ? "pass" : "fail") << '\n';
}

NegativityPeak peak_negativity(const SystemConfig& cfg, double t_final) {
  cfg.validate();
  if (!(t_final > 0.0)) throw Error(ErrorKind::DomainError, "t_final must be positive");
  const auto n_at = [&](double t) { return xstate_observables(closed_form_elements(cfg, t)).negativity; };
  const double fastest = std::max({cfg.g_aA, cfg.g_bB, cfg.kappa_A, cfg.kappa_B, 1e-12});
  const auto intervals =
      static_cast<std::size_t>(std::ceil(t_final / (kPi / (32.0 * fastest)))) + 2;
  const double h = t_final / static_cast<double>(intervals);

  std::vector<double> grid(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) grid[k] = n_at(h * static_cast<double>(k));
  const double grid_best = *std::max_element(grid.begin(), grid.end());

  NegativityPeak best{0.0, grid[0]};
  for (std::size_t k = 0; k <= intervals; ++k) {
    if (grid[k] > best.N) best = {h * static_cast<double>(k), grid[k]};
    const bool local_max = (k == 0 || grid[k] >= grid[k - 1]) && (k == intervals || grid[k] >= grid[k + 1]);
    if (!local_max || grid[k] < grid_best - 0.05) continue;
    // Golden-section search on the bracketing cell pair.
    double lo = h * static_cast<double>(k == 0 ? 0 : k - 1);
    double hi = h * static_cast<double>(std::min(k + 1, intervals));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = n_at(x1), f2 = n_at(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = n_at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = n_at(x1);
      }
    }
    for (auto [t, v] : {std::pair{x1, f1}, std::pair{x2, f2}})
      if (v > best.N) best = {t, v};
  }
  return best;
}

}  // namespace entx
