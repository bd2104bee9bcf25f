#pragma once

#include "entx/closed_form.hpp"
#include "entx/tensor.hpp"

namespace entx {

struct ObservablePair {
  double negativity = 0.0;
  double energy = 0.0;  // units of hbar*omega
};

struct StateCheck {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
};

// Diagnostics for a candidate density matrix of any dimension.
StateCheck inspect_state(const ComplexMatrix& rho);

// 2 * sum of |negative eigenvalues| of the A-partial transpose, evaluated
// with the general eigensolver.  Throws InvalidState unless rho_ab is a 4x4
// density matrix (Hermitian within 1e-10, unit trace and PSD within 1e-8) and
// InvariantViolation if the partial transpose has more than one negative
// eigenvalue.
double negativity(const ComplexMatrix& rho_ab);
// Tr(rho_ab H_AB) / omega.
double energy(const ComplexMatrix& rho_ab, double omega = 1.0);
// U = -a, N = sqrt(a^2 + 4|d|^2) - a.
ObservablePair xstate_observables(const XStateAB& x);

}  // namespace entx
