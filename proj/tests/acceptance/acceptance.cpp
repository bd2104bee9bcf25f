// Acceptance suite: one PASS/FAIL line per criterion.  Exits non-zero if any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "entx/closed_form.hpp"
#include "entx/dynamics.hpp"
#include "entx/error.hpp"
#include "entx/measures.hpp"
#include "entx/scan.hpp"

using namespace entx;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

SystemConfig config(double theta, double g_aA, double g_bB, double kappa_A = 0.0, double kappa_B = 0.0) {
  return SystemConfig{theta, g_aA, g_bB, kappa_A, kappa_B, 1.0};
}

double sample_time(double t_final, std::size_t k, std::size_t samples) {
  return t_final * static_cast<double>(k) / static_cast<double>(samples - 1);
}

// RK4 plan near the default step whose records fall on `samples` uniform times.
PropagationPlan sampled_plan(const SystemConfig& cfg, double t_final, std::size_t samples) {
  const double interval = t_final / static_cast<double>(samples - 1);
  const auto per = static_cast<std::size_t>(std::ceil(interval / default_time_step(cfg) * (1.0 - 1e-12)));
  return {t_final, interval / static_cast<double>(per), Method::RungeKutta4, per};
}

Outcome full_transfer_point() {
  double worst = 0.0;
  for (double g : {0.5, 1.0, 2.0, 7.0}) {
    const SystemConfig cfg = config(kPi / 4, g, g);
    const double t = kPi / (2 * g);
    const ObservablePair closed = xstate_observables(unitary_elements(cfg, t));
    const PureState psi = evolve_exact(build_hamiltonian(cfg), initial_state(cfg), t);
    const ComplexMatrix rho_ab = partial_trace_to_ab(psi.density_matrix());
    for (double err : {std::abs(closed.negativity - 1.0), std::abs(closed.energy), std::abs(negativity(rho_ab) - 1.0),
                       std::abs(energy(rho_ab))})
      worst = std::max(worst, err);
  }
  return {worst <= 1e-9, fmt("max |N-1|,|U| over closed form and spectral = %.3g (tol 1e-9)", worst)};
}

Outcome odd_ratio_transfer() {
  const double g_bB = 1.0;
  const double horizon = 10 * kPi / g_bB;
  const NegativityPeak odd = peak_negativity(config(kPi / 4, 3 * g_bB, g_bB), horizon);
  const NegativityPeak even = peak_negativity(config(kPi / 4, 2 * g_bB, g_bB), horizon);
  return {odd.N >= 1 - 1e-6 && even.N <= 1 - 1e-3,
          fmt("g_aA=3g_bB: max N = %.12f at t = %.6f; g_aA=2g_bB: max N = %.9f", odd.N, odd.t, even.N)};
}

Outcome bound_sweep() {
  SweepSpec spec;
  spec.mode = SweepMode::BoundCheck;
  spec.samples = 100000;
  spec.t_final = 50.0;
  spec.seed = 42;
  spec.config.kappa_A = spec.config.kappa_B = 0.1;
  const BoundCheckReport damped = run_bound_check(spec);
  spec.config.kappa_A = spec.config.kappa_B = 0.0;
  const BoundCheckReport closed = run_bound_check(spec);
  const bool ok = damped.passed() && closed.passed();
  return {ok, fmt("violations: damped %.0f, closed %.0f of 1e5 each; min residual %.3g", double(damped.violations),
                  double(closed.violations), std::min(damped.worst.residual, closed.worst.residual)) +
                  fmt("; equality max |residual| = %.3g (tol 1e-9)", closed.equality_max_abs)};
}

Outcome closed_oracle() {
  const std::array<double, 6> thetas{0.0, kPi / 8, kPi / 6, kPi / 4, kPi / 3, kPi / 2};
  const std::array<double, 6> ratios{1.0, 2.0, 3.0, 7.0, 53.0, std::numbers::sqrt2};
  double worst = 0.0;
  for (double theta : thetas)
    for (double ratio : ratios) {
      const SystemConfig cfg = config(theta, ratio, 1.0);
      const SpectralPropagator prop(build_hamiltonian(cfg));
      const PureState psi0 = initial_state(cfg);
      const double horizon = 10 * kPi / std::min(cfg.g_aA, cfg.g_bB);
      for (std::size_t k = 0; k < 1000; ++k) {
        const double t = sample_time(horizon, k, 1000);
        const ComplexMatrix rho_ab = partial_trace_to_ab(prop.evolve(psi0, t).density_matrix());
        worst = std::max(worst, max_abs_diff(rho_ab, unitary_elements(cfg, t).to_matrix()));
      }
    }
  return {worst <= 1e-8, fmt("36 configurations x 1000 times, max element error = %.3g (tol 1e-8)", worst)};
}

// Both ratio conventions are checked: g_bB = n g_aA and g_aA = n g_bB.
Outcome open_oracle() {
  double worst = 0.0;
  for (bool ratio_on_bB : {true, false})
    for (double n : {1.0, 2.0, 3.0, std::numbers::sqrt2}) {
      const double g_aA = ratio_on_bB ? 1.0 : n;
      const double g_bB = ratio_on_bB ? n : 1.0;
      const double kappa = 0.1 * g_aA;
      const SystemConfig cfg = config(kPi / 4, g_aA, g_bB, kappa, kappa);
      for (const DensitySample& s : propagate_lindblad(cfg, sampled_plan(cfg, 40 / kappa, 2001))) {
        const ComplexMatrix rho_ab = partial_trace_to_ab(s.rho);
        worst = std::max(worst, max_abs_diff(rho_ab, dissipative_elements(cfg, s.t).to_matrix()));
      }
    }
  return {worst <= 1e-6, fmt("8 trajectories on [0, 40/kappa], max element error = %.3g (tol 1e-6)", worst)};
}

Outcome asymptotic_decay() {
  double worst_a = 1.0, worst_n = 0.0, worst_u = -1.0;
  for (double n : {1.0, 2.0, 3.0, std::numbers::sqrt2}) {
    const double kappa = 0.1;
    const SystemConfig cfg = config(kPi / 4, 1.0, n, kappa, kappa);
    const double t = 50 / kappa;
    const auto samples = propagate_lindblad(cfg, {t, default_time_step(cfg), Method::RungeKutta4, 1u << 30});
    const ComplexMatrix rho_ab = partial_trace_to_ab(samples.back().rho);
    worst_a = std::min(worst_a, rho_ab(0, 0).real());
    worst_n = std::max(worst_n, negativity(rho_ab));
    worst_u = std::max(worst_u, energy(rho_ab));
  }
  const bool ok = worst_a >= 1 - 1e-4 && worst_n <= 1e-4 && worst_u <= -1 + 1e-4;
  return {ok, fmt("at t = 50/kappa: min a = %.12f, max N = %.3g, max U = %.12f", worst_a, worst_n, worst_u)};
}

Outcome conservation() {
  const ComplexMatrix number = ops::excitation_number();
  const auto excitations = [&](const ComplexMatrix& rho) { return (rho * number).trace().real(); };

  double number_drift = 0.0;
  for (const auto& s : propagate_lindblad(config(kPi / 3, 2.0, 1.0), {50.0, 0.005, Method::RungeKutta4, 100}))
    number_drift = std::max(number_drift, std::abs(excitations(s.rho) - 1.0));

  double trace_rate = 0.0, min_eig = 1.0;
  for (const SystemConfig& cfg : {config(kPi / 4, 1.0, 1.0, 0.1, 0.1), config(0.4, 3.0, 1.0, 0.5, 2.0),
                                  config(1.2, 1.0, 0.5, 2.0, 1.0)}) {
    for (const auto& s : propagate_lindblad(cfg, {100.0, default_time_step(cfg), Method::RungeKutta4, 50})) {
      if (s.t > 0) trace_rate = std::max(trace_rate, std::abs(s.rho.trace() - 1.0) / s.t);
      min_eig = std::min(min_eig, inspect_state(s.rho).min_eigenvalue);
    }
  }

  const SystemConfig cfg = config(kPi / 4, 1.0, 1.0, 0.1, 0.1);
  const double horizon = 2 * kPi;
  const auto error_at = [&](double dt) {
    const auto s = propagate_lindblad(cfg, {horizon, dt, Method::RungeKutta4, 1u << 30});
    return max_abs_diff(partial_trace_to_ab(s.back().rho), dissipative_elements(cfg, horizon).to_matrix());
  };
  const double ratio = error_at(horizon / 160) / error_at(horizon / 320);

  const bool ok = number_drift <= 1e-9 && trace_rate <= 1e-9 && min_eig >= -1e-8 && ratio >= 12 && ratio <= 20;
  return {ok, fmt("excitation drift %.3g, trace drift/time %.3g, min eigenvalue %.3g", number_drift, trace_rate,
                  min_eig) +
                  fmt(", step-halving ratio %.3f", ratio)};
}

Outcome measure_cross_check() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double a = unit(rng), b = (1 - a) * unit(rng), c = 1 - a - b;
    const XStateAB x{a, b, c, std::polar(std::sqrt(b * c) * unit(rng), 2 * kPi * unit(rng))};
    worst = std::max(worst, std::abs(negativity(x.to_matrix()) - (std::sqrt(a * a + 4 * std::norm(x.d)) - a)));
  }
  return {worst <= 1e-10, fmt("10^4 random X-states, max |N_eig - N_formula| = %.3g (tol 1e-10)", worst)};
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "full-transfer point", 1.0, full_transfer_point},
      {2, "odd-ratio transfer condition", 5.0, odd_ratio_transfer},
      {3, "negativity-energy bound", 30.0, bound_sweep},
      {4, "closed-system oracle equivalence", 60.0, closed_oracle},
      {5, "open-system oracle equivalence", 120.0, open_oracle},
      {6, "asymptotic decay", 0.0, asymptotic_decay},
      {7, "conservation suite", 0.0, conservation},
      {8, "measure cross-check", 0.0, measure_cross_check},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt("%.2f s", seconds);
    if (c.time_limit > 0) {
      timing += fmt(" (limit %.0f s)", c.time_limit);
      if (seconds > c.time_limit) outcome.passed = false;
    }
    if (!outcome.passed) ++failures;
    std::printf("%s [%d] %s: %s; %s\n", outcome.passed ? "PASS" : "FAIL", c.id, c.name, outcome.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
