#pragma once

// Four-qubit spin-exchange model in units hbar = 1.  Qubits a and b start
// entangled; A and B are the target pair (cavity modes in the cavity-QED
// reading) and are the only ones coupled to zero-temperature reservoirs.

#include <vector>

#include "entx/tensor.hpp"

namespace entx {

enum class Qubit { a = 0, b = 1, A = 2, B = 3 };

// Bit weight of each qubit in the register index.
constexpr std::size_t qubit_weight(Qubit q) { return std::size_t{8} >> static_cast<int>(q); }

struct SystemConfig {
  double theta = 0.0;  // initial-state angle, radians
  double g_aA = 1.0;   // a-A exchange coupling
  double g_bB = 1.0;   // b-B exchange coupling
  double kappa_A = 0.0;
  double kappa_B = 0.0;
  double omega = 1.0;  // common resonant frequency

  // Throws DomainError on negative rates, non-positive omega or non-finite
  // fields.
  void validate() const;
  bool is_closed() const { return kappa_A == 0.0 && kappa_B == 0.0; }
};

namespace ops {
ComplexMatrix sigma_z();      // |1><1| - |0><0|
ComplexMatrix sigma_plus();   // |1><0|
ComplexMatrix sigma_minus();  // |0><1|
// Single-qubit operator acting on `q`, identity elsewhere (16x16).
ComplexMatrix embed(const ComplexMatrix& op, Qubit q);
// Total excitation number sum_q |1><1|_q.
ComplexMatrix excitation_number();
}  // namespace ops

// H = H_aA + H_bB with every qubit at frequency omega.
ComplexMatrix build_hamiltonian(const SystemConfig& cfg);
// (omega/2)(sigma_z^A + sigma_z^B) = diag(-omega, 0, 0, omega).
ComplexMatrix build_h_ab(const SystemConfig& cfg);
// (sin(theta)|01> + cos(theta)|10>)_ab (x) |00>_AB
PureState initial_state(const SystemConfig& cfg);
// sqrt(2 kappa) sigma_- on A and on B; zero-rate channels are omitted.
std::vector<ComplexMatrix> jump_operators(const SystemConfig& cfg);

}  // namespace entx
