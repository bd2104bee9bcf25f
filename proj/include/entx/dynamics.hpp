#pragma once

// Time propagation of the four-qubit register: exact spectral evolution of
// pure states, classic RK4 for state vectors, and RK4 for the Lindblad master
// equation
//
//   d rho / dt = -i [H, rho] + sum_k ( V_k rho V_k^dag - {V_k^dag V_k, rho} / 2 ).

#include <cstddef>
#include <span>
#include <vector>

#include "entx/model.hpp"
#include "entx/tensor.hpp"

namespace entx {

enum class Method { SpectralExact, RungeKutta4 };

struct PropagationPlan {
  double t_final = 0.0;
  double dt = 0.01;
  Method method = Method::RungeKutta4;
  std::size_t record_stride = 1;

  // Throws DomainError unless dt > 0, t_final >= 0 and record_stride >= 1.
  void validate() const;
  // Number of equal steps covering [0, t_final] with step <= dt.
  std::size_t step_count() const;
  double step() const;
};

// dt = 0.01 / max(omega, g_aA, g_bB, kappa_A, kappa_B).
double default_time_step(const SystemConfig& cfg);

// Largest allowed dt * (||H||_max + sum_k ||V_k||_max^2 / 2).
inline constexpr double kStepGuard = 0.1;

// Diagonalizes H once and evolves states as V exp(-i lambda t) V^dag psi.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const ComplexMatrix& hamiltonian);

  PureState evolve(const PureState& psi0, double t) const;
  const HermitianSpectrum& spectrum() const { return spectrum_; }

 private:
  HermitianSpectrum spectrum_;
};

PureState evolve_exact(const ComplexMatrix& hamiltonian, const PureState& psi0, double t);

struct StateSample {
  double t = 0.0;
  Amplitudes amplitudes{};
};

// Classic RK4 on i d psi/dt = H psi.  Throws StepTooLarge when
// dt * ||H||_max > 0.1.
std::vector<StateSample> propagate_state_rk4(const ComplexMatrix& hamiltonian, const PureState& psi0,
                                             const PropagationPlan& plan);

// Dense evaluation of the master-equation right-hand side.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian,
                           std::span<const ComplexMatrix> jumps);

// Precomputed sparse form of the same generator, used inside the integrator.
// Stores H_eff = H - (i/2) sum V^dag V and the nonzeros of each V.
class LindbladGenerator {
 public:
  LindbladGenerator(const ComplexMatrix& hamiltonian, std::span<const ComplexMatrix> jumps);

  std::size_t dim() const { return dim_; }
  // out = L(rho); both spans hold dim*dim row-major entries.
  void apply(std::span<const Complex> rho, std::span<Complex> out) const;
  ComplexMatrix apply(const ComplexMatrix& rho) const;

 private:
  struct Entry {
    std::size_t row;
    std::size_t col;
    Complex value;
  };
  std::size_t dim_;
  std::vector<Entry> effective_;
  std::vector<std::vector<Entry>> jumps_;
};

struct DensitySample {
  double t = 0.0;
  ComplexMatrix rho;
};

struct LindbladOptions {
  // Integrate only on span{|0000>, single excitations}; requires the initial
  // state to live there.  Results are embedded back into 16x16.
  bool restrict_to_low_sector = false;
};

// Basis indices of the zero- and one-excitation sector.
std::span<const std::size_t> low_excitation_sector();

// RK4 integration of the master equation from rho0.  The state is never
// renormalized.  Throws EngineMismatch for non-RK4 plans, StepTooLarge when
// the step guard fails and InvariantViolation when a recorded sample has
// |Tr rho - 1| > 1e-6.
std::vector<DensitySample> propagate_lindblad(const ComplexMatrix& rho0, const ComplexMatrix& hamiltonian,
                                              std::span<const ComplexMatrix> jumps,
                                              const PropagationPlan& plan, const LindbladOptions& options = {});
// Starts from initial_state(cfg) with build_hamiltonian(cfg) and
// jump_operators(cfg).
std::vector<DensitySample> propagate_lindblad(const SystemConfig& cfg, const PropagationPlan& plan,
                                              const LindbladOptions& options = {});

}  // namespace entx
