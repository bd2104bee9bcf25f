#pragma once

// Analytic solutions for the single-excitation dynamics of the model: the
// global pure state, the reduced X-state of the AB pair (closed and damped),
// and the negativity-energy frontier.

#include <complex>

#include "entx/model.hpp"
#include "entx/tensor.hpp"

namespace entx {

// Reduced AB state in the {|00>, |01>, |10>, |11>} basis:
//   [[a, 0, 0,  0],
//    [0, b, d,  0],
//    [0, d*, c, 0],
//    [0, 0, 0,  0]]
struct XStateAB {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  Complex d = 0.0;

  ComplexMatrix to_matrix() const;
  // Reads a, b, c, d from the corresponding entries of a 4x4 matrix.
  static XStateAB from_matrix(const ComplexMatrix& rho_ab);
  // Populations in [0,1] (within tol), a+b+c = 1 and |d|^2 <= bc + 1e-12.
  bool is_physical(double tol = 1e-10) const;
};

struct RabiParams {
  Complex omega_aA;  // sqrt(4 g_aA^2 - kappa_A^2), imaginary when overdamped
  Complex omega_bB;
};

RabiParams rabi_params(const SystemConfig& cfg);

// The analytic damped-exchange amplitude factor
//   2 g sin(Omega t / 2) / Omega * exp(-kappa t / 2),  Omega = sqrt(4g^2 - kappa^2),
// continued through Omega = 0 and into the overdamped regime.  Real for all
// inputs.
double damped_exchange_factor(double g, double kappa, double t);

enum class DissipativeBranch {
  // Only theta = pi/4, with the fixed sqrt(2) g / Omega weights.
  EqualWeight,
  // cos(theta) and sin(theta) weights on the aA and bB factors.
  GeneralTheta,
};

// Throws ClosedFormDomain if the configuration has any decay.
PureState global_state(const SystemConfig& cfg, double t);
XStateAB unitary_elements(const SystemConfig& cfg, double t);
// Throws ClosedFormDomain when branch is EqualWeight and theta != pi/4.
XStateAB dissipative_elements(const SystemConfig& cfg, double t,
                              DissipativeBranch branch = DissipativeBranch::EqualWeight);

// Closed-form reduced state for any configuration: the unitary elements when
// there is no decay, otherwise the damped elements (equal 1/sqrt(2) weights at
// theta = pi/4, general-theta weights elsewhere).
XStateAB closed_form_elements(const SystemConfig& cfg, double t);

// Positive root of N^2 - 2 N U = (1 + U)^2; DomainError for U outside [-1, 0].
double frontier_negativity(double energy);
// (1 + U)^2 - (N^2 - 2 N U); non-negative inside the physical region.
double bound_residual(double negativity, double energy);

}  // namespace entx
