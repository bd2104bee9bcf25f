#include "entx/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "entx/error.hpp"

namespace entx {

namespace {

constexpr double kTraceDriftLimit = 1e-6;
constexpr std::array<std::size_t, 5> kLowSector{0, 1, 2, 4, 8};

void check_step(double dt, double rate, const char* what) {
  if (dt * rate > kStepGuard) {
    std::ostringstream msg;
    msg << what << ": dt * rate = " << dt * rate << " exceeds " << kStepGuard;
    throw Error(ErrorKind::StepTooLarge, msg.str());
  }
}

bool is_record_step(std::size_t step, std::size_t steps, std::size_t stride) {
  return step % stride == 0 || step == steps;
}

ComplexMatrix restrict_to(const ComplexMatrix& m, std::span<const std::size_t> indices) {
  ComplexMatrix out(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) out(i, j) = m(indices[i], indices[j]);
  return out;
}

ComplexMatrix embed_from(const ComplexMatrix& m, std::span<const std::size_t> indices, std::size_t dim) {
  ComplexMatrix out(dim);
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) out(indices[i], indices[j]) = m(i, j);
  return out;
}

}  // namespace

void PropagationPlan::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::DomainError, "plan dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final))
    throw Error(ErrorKind::DomainError, "plan t_final must be non-negative");
  if (record_stride == 0) throw Error(ErrorKind::DomainError, "plan record_stride must be positive");
}

std::size_t PropagationPlan::step_count() const {
  validate();
  if (t_final == 0.0) return 0;
  // The relative slack keeps t_final = n * dt from rounding up to n + 1.
  return static_cast<std::size_t>(std::ceil(t_final / dt * (1.0 - 1e-12)));
}

double PropagationPlan::step() const {
  const std::size_t n = step_count();
  return n == 0 ? 0.0 : t_final / static_cast<double>(n);
}

double default_time_step(const SystemConfig& cfg) {
  cfg.validate();
  return 0.01 / std::max({cfg.omega, cfg.g_aA, cfg.g_bB, cfg.kappa_A, cfg.kappa_B});
}

SpectralPropagator::SpectralPropagator(const ComplexMatrix& hamiltonian)
    : spectrum_(hermitian_eig(hamiltonian)) {
  if (hamiltonian.dim() != kFullDim) throw Error(ErrorKind::DomainError, "propagator expects a 16x16 Hamiltonian");
}

PureState SpectralPropagator::evolve(const PureState& psi0, double t) const {
  const ComplexMatrix& v = spectrum_.eigenvectors;
  std::array<Complex, kFullDim> coeff{};
  for (std::size_t k = 0; k < kFullDim; ++k) {
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < kFullDim; ++i) overlap += std::conj(v(i, k)) * psi0[i];
    coeff[k] = overlap * std::polar(1.0, -spectrum_.eigenvalues[k] * t);
  }
  Amplitudes out{};
  for (std::size_t i = 0; i < kFullDim; ++i) {
    Complex sum = 0.0;
    for (std::size_t k = 0; k < kFullDim; ++k) sum += v(i, k) * coeff[k];
    out[i] = sum;
  }
  return PureState(out);
}

PureState evolve_exact(const ComplexMatrix& hamiltonian, const PureState& psi0, double t) {
  return SpectralPropagator(hamiltonian).evolve(psi0, t);
}

std::vector<StateSample> propagate_state_rk4(const ComplexMatrix& hamiltonian, const PureState& psi0,
                                             const PropagationPlan& plan) {
  if (plan.method != Method::RungeKutta4) throw Error(ErrorKind::EngineMismatch, "plan method is not RK4");
  if (hamiltonian.dim() != kFullDim) throw Error(ErrorKind::DomainError, "expected a 16x16 Hamiltonian");
  check_step(plan.dt, hamiltonian.max_abs(), "state RK4");
  const std::size_t steps = plan.step_count();
  const double h = plan.step();

  // f(psi) = -i H psi
  const auto rhs = [&](const Amplitudes& psi) {
    Amplitudes out{};
    for (std::size_t i = 0; i < kFullDim; ++i) {
      Complex sum = 0.0;
      for (std::size_t j = 0; j < kFullDim; ++j) sum += hamiltonian(i, j) * psi[j];
      out[i] = Complex(sum.imag(), -sum.real());
    }
    return out;
  };
  const auto axpy = [](const Amplitudes& x, double scale, const Amplitudes& y) {
    Amplitudes out{};
    for (std::size_t i = 0; i < kFullDim; ++i) out[i] = x[i] + scale * y[i];
    return out;
  };

  std::vector<StateSample> samples;
  Amplitudes psi = psi0.amplitudes();
  samples.push_back({0.0, psi});
  for (std::size_t step = 1; step <= steps; ++step) {
    const Amplitudes k1 = rhs(psi);
    const Amplitudes k2 = rhs(axpy(psi, h / 2.0, k1));
    const Amplitudes k3 = rhs(axpy(psi, h / 2.0, k2));
    const Amplitudes k4 = rhs(axpy(psi, h, k3));
    for (std::size_t i = 0; i < kFullDim; ++i) psi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (is_record_step(step, steps, plan.record_stride))
      samples.push_back({h * static_cast<double>(step), psi});
  }
  return samples;
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian,
                           std::span<const ComplexMatrix> jumps) {
  ComplexMatrix out = Complex(0.0, -1.0) * commutator(hamiltonian, rho);
  for (const ComplexMatrix& v : jumps) {
    const ComplexMatrix vd = v.adjoint();
    const ComplexMatrix v_rho = v * rho;
    const ComplexMatrix rho_vd = rho * vd;
    ComplexMatrix dissipator = commutator(v_rho, vd) + commutator(v, rho_vd);
    out += Complex(0.5) * dissipator;
  }
  return out;
}

LindbladGenerator::LindbladGenerator(const ComplexMatrix& hamiltonian, std::span<const ComplexMatrix> jumps)
    : dim_(hamiltonian.dim()) {
  ComplexMatrix effective = hamiltonian;
  for (const ComplexMatrix& v : jumps) {
    if (v.dim() != dim_) throw Error(ErrorKind::DomainError, "jump operator dimension mismatch");
    effective -= Complex(0.0, 0.5) * (v.adjoint() * v);
  }
  const auto nonzeros = [this](const ComplexMatrix& m) {
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        if (m(i, j) != Complex{}) entries.push_back({i, j, m(i, j)});
    return entries;
  };
  effective_ = nonzeros(effective);
  for (const ComplexMatrix& v : jumps) jumps_.push_back(nonzeros(v));
}

void LindbladGenerator::apply(std::span<const Complex> rho, std::span<Complex> out) const {
  const std::size_t n = dim_;
  std::fill(out.begin(), out.end(), Complex{});
  const Complex minus_i(0.0, -1.0);
  for (const Entry& e : effective_) {
    // -i H_eff rho
    const Complex w = minus_i * e.value;
    for (std::size_t j = 0; j < n; ++j) out[e.row * n + j] += w * rho[e.col * n + j];
    // +i rho H_eff^dag
    const Complex wd = -minus_i * std::conj(e.value);
    for (std::size_t i = 0; i < n; ++i) out[i * n + e.row] += wd * rho[i * n + e.col];
  }
  for (const auto& jump : jumps_)
    for (const Entry& left : jump)
      for (const Entry& right : jump)
        out[left.row * n + right.row] += left.value * rho[left.col * n + right.col] * std::conj(right.value);
}

ComplexMatrix LindbladGenerator::apply(const ComplexMatrix& rho) const {
  if (rho.dim() != dim_) throw Error(ErrorKind::DomainError, "generator dimension mismatch");
  ComplexMatrix out(dim_);
  apply(rho.entries(), out.entries());
  return out;
}

std::span<const std::size_t> low_excitation_sector() { return kLowSector; }

std::vector<DensitySample> propagate_lindblad(const ComplexMatrix& rho0, const ComplexMatrix& hamiltonian,
                                              std::span<const ComplexMatrix> jumps,
                                              const PropagationPlan& plan, const LindbladOptions& options) {
  if (plan.method != Method::RungeKutta4)
    throw Error(ErrorKind::EngineMismatch, "spectral propagation cannot integrate a dissipative master equation");
  const std::size_t full_dim = hamiltonian.dim();
  if (rho0.dim() != full_dim) throw Error(ErrorKind::DomainError, "initial state dimension mismatch");

  double rate = hamiltonian.max_abs();
  for (const ComplexMatrix& v : jumps) rate += 0.5 * std::pow(v.max_abs(), 2);
  check_step(plan.dt, rate, "Lindblad RK4");

  ComplexMatrix work_h = hamiltonian;
  std::vector<ComplexMatrix> work_jumps(jumps.begin(), jumps.end());
  ComplexMatrix rho = rho0;
  std::vector<std::size_t> sector;
  if (options.restrict_to_low_sector) {
    if (full_dim != kFullDim) throw Error(ErrorKind::DomainError, "sector restriction expects a 16x16 problem");
    sector.assign(kLowSector.begin(), kLowSector.end());
    if (max_abs_diff(embed_from(restrict_to(rho0, sector), sector, full_dim), rho0) != 0.0)
      throw Error(ErrorKind::DomainError, "initial state leaves the low-excitation sector");
    work_h = restrict_to(hamiltonian, sector);
    for (auto& v : work_jumps) v = restrict_to(v, sector);
    rho = restrict_to(rho0, sector);
  }

  const LindbladGenerator generator(work_h, work_jumps);
  const std::size_t n2 = rho.entries().size();
  const std::size_t steps = plan.step_count();
  const double h = plan.step();

  std::vector<DensitySample> samples;
  const auto record = [&](double t) {
    ComplexMatrix full = sector.empty() ? rho : embed_from(rho, sector, full_dim);
    const double drift = std::abs(full.trace() - 1.0);
    if (drift > kTraceDriftLimit) {
      std::ostringstream msg;
      msg << "trace drift " << drift << " at t = " << t << "; reduce dt";
      throw Error(ErrorKind::InvariantViolation, msg.str());
    }
    samples.push_back({t, std::move(full)});
  };
  record(0.0);

  std::vector<Complex> k1(n2), k2(n2), k3(n2), k4(n2), stage(n2);
  auto state = rho.entries();
  for (std::size_t step = 1; step <= steps; ++step) {
    generator.apply(state, k1);
    for (std::size_t i = 0; i < n2; ++i) stage[i] = state[i] + (h / 2.0) * k1[i];
    generator.apply(stage, k2);
    for (std::size_t i = 0; i < n2; ++i) stage[i] = state[i] + (h / 2.0) * k2[i];
    generator.apply(stage, k3);
    for (std::size_t i = 0; i < n2; ++i) stage[i] = state[i] + h * k3[i];
    generator.apply(stage, k4);
    for (std::size_t i = 0; i < n2; ++i) state[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (is_record_step(step, steps, plan.record_stride)) record(h * static_cast<double>(step));
  }
  return samples;
}

std::vector<DensitySample> propagate_lindblad(const SystemConfig& cfg, const PropagationPlan& plan,
                                              const LindbladOptions& options) {
  const std::vector<ComplexMatrix> jumps = jump_operators(cfg);
  return propagate_lindblad(initial_state(cfg).density_matrix(), build_hamiltonian(cfg), jumps, plan, options);
}

}  // namespace entx
