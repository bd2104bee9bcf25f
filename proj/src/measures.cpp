#include "entx/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entx/error.hpp"
#include "entx/model.hpp"

namespace entx {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kStateTolerance = 1e-8;
// Eigenvalues of the partial transpose below this count as negative when
// checking the single-negative-eigenvalue property.
constexpr double kNegativeCountFloor = 1e-12;

void require_density_matrix(const ComplexMatrix& rho_ab) {
  if (rho_ab.dim() != kPairDim) throw Error(ErrorKind::InvalidState, "expected a 4x4 density matrix");
  if (!rho_ab.is_finite()) throw Error(ErrorKind::InvalidState, "density matrix has non-finite entries");
  const StateCheck check = inspect_state(rho_ab);
  std::ostringstream msg;
  if (check.hermiticity_error > kHermitianTolerance)
    msg << "hermiticity error " << check.hermiticity_error;
  else if (check.trace_error > kStateTolerance)
    msg << "trace error " << check.trace_error;
  else if (check.min_eigenvalue < -kStateTolerance)
    msg << "negative eigenvalue " << check.min_eigenvalue;
  else
    return;
  throw Error(ErrorKind::InvalidState, msg.str());
}

}  // namespace

StateCheck inspect_state(const ComplexMatrix& rho) {
  StateCheck check;
  check.hermiticity_error = rho.hermiticity_error();
  check.trace_error = std::abs(rho.trace() - 1.0);
  // Symmetrize so tiny anti-Hermitian noise does not trip the eigensolver.
  ComplexMatrix sym = rho + rho.adjoint();
  sym *= 0.5;
  check.min_eigenvalue = min_eigenvalue(sym);
  return check;
}

double negativity(const ComplexMatrix& rho_ab) {
  require_density_matrix(rho_ab);
  ComplexMatrix pt = partial_transpose_a(rho_ab);
  const HermitianSpectrum spectrum = hermitian_eig(pt);
  double negative_sum = 0.0;
  int negative_count = 0;
  for (double lambda : spectrum.eigenvalues) {
    if (lambda < 0.0) negative_sum += -lambda;
    if (lambda < -kNegativeCountFloor) ++negative_count;
  }
  if (negative_count > 1)
    throw Error(ErrorKind::InvariantViolation, "two-qubit partial transpose has several negative eigenvalues");
  return 2.0 * negative_sum;
}

double energy(const ComplexMatrix& rho_ab, double omega) {
  require_density_matrix(rho_ab);
  SystemConfig cfg;
  cfg.omega = omega;
  return (rho_ab * build_h_ab(cfg)).trace().real() / omega;
}

ObservablePair xstate_observables(const XStateAB& x) {
  return {std::sqrt(x.a * x.a + 4.0 * std::norm(x.d)) - x.a, -x.a};
}

}  // namespace entx
