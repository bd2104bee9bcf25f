#include "entx/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "entx/error.hpp"

namespace entx {

namespace {

constexpr double kTaylorSwitch = 1e-4;  // |Omega| t below which sin(x)/x is expanded

void require_closed(const SystemConfig& cfg) {
  cfg.validate();
  if (!cfg.is_closed())
    throw Error(ErrorKind::ClosedFormDomain, "unitary closed form requires kappa_A = kappa_B = 0");
}

}  // namespace

ComplexMatrix XStateAB::to_matrix() const {
  ComplexMatrix m(kPairDim);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(1, 2) = d;
  m(2, 1) = std::conj(d);
  return m;
}

XStateAB XStateAB::from_matrix(const ComplexMatrix& rho_ab) {
  if (rho_ab.dim() != kPairDim) throw Error(ErrorKind::DomainError, "X-state extraction expects 4x4 input");
  return {rho_ab(0, 0).real(), rho_ab(1, 1).real(), rho_ab(2, 2).real(), rho_ab(1, 2)};
}

bool XStateAB::is_physical(double tol) const {
  const auto in_unit = [tol](double p) { return p >= -tol && p <= 1.0 + tol; };
  return in_unit(a) && in_unit(b) && in_unit(c) && std::abs(a + b + c - 1.0) <= tol &&
         std::norm(d) <= b * c + 1e-12;
}

RabiParams rabi_params(const SystemConfig& cfg) {
  cfg.validate();
  const auto rabi = [](double g, double kappa) { return std::sqrt(Complex(4.0 * g * g - kappa * kappa)); };
  return {rabi(cfg.g_aA, cfg.kappa_A), rabi(cfg.g_bB, cfg.kappa_B)};
}

double damped_exchange_factor(double g, double kappa, double t) {
  const double omega_sq = 4.0 * g * g - kappa * kappa;
  const Complex omega = std::sqrt(Complex(omega_sq));
  const double damping = kappa * t / 2.0;
  if (std::abs(omega) * t < kTaylorSwitch) {
    const double sinc_half = t / 2.0 - omega_sq * t * t * t / 48.0;
    return 2.0 * g * sinc_half * std::exp(-damping);
  }
  // sin(z) e^{-k} with the damping folded into the exponentials so the
  // overdamped branch never overflows.
  const Complex iz = Complex(0.0, 1.0) * omega * (t / 2.0);
  const Complex damped_sin = (std::exp(iz - damping) - std::exp(-iz - damping)) / Complex(0.0, 2.0);
  const Complex value = 2.0 * g * damped_sin / omega;
  if (std::abs(value.imag()) > 1e-12 * (1.0 + std::abs(value.real())))
    throw Error(ErrorKind::InvariantViolation, "damped exchange factor acquired an imaginary part");
  return value.real();
}

PureState global_state(const SystemConfig& cfg, double t) {
  require_closed(cfg);
  const double ct = std::cos(cfg.theta);
  const double st = std::sin(cfg.theta);
  const Complex minus_i(0.0, -1.0);
  Amplitudes amps{};
  amps[qubit_weight(Qubit::a)] = ct * std::cos(cfg.g_aA * t);
  amps[qubit_weight(Qubit::A)] = minus_i * (ct * std::sin(cfg.g_aA * t));
  amps[qubit_weight(Qubit::b)] = st * std::cos(cfg.g_bB * t);
  amps[qubit_weight(Qubit::B)] = minus_i * (st * std::sin(cfg.g_bB * t));
  return PureState(amps);
}

XStateAB unitary_elements(const SystemConfig& cfg, double t) {
  require_closed(cfg);
  const double c2 = std::pow(std::cos(cfg.theta), 2);
  const double s2 = std::pow(std::sin(cfg.theta), 2);
  const double ca = std::cos(cfg.g_aA * t), sa = std::sin(cfg.g_aA * t);
  const double cb = std::cos(cfg.g_bB * t), sb = std::sin(cfg.g_bB * t);
  XStateAB x;
  x.a = c2 * ca * ca + s2 * cb * cb;
  x.b = s2 * sb * sb;
  x.c = c2 * sa * sa;
  x.d = std::cos(cfg.theta) * std::sin(cfg.theta) * sa * sb;
  return x;
}

XStateAB dissipative_elements(const SystemConfig& cfg, double t, DissipativeBranch branch) {
  cfg.validate();
  double weight_aA = 0.0;
  double weight_bB = 0.0;
  if (branch == DissipativeBranch::EqualWeight) {
    if (std::abs(cfg.theta - std::numbers::pi / 4.0) > 1e-12) {
      std::ostringstream msg;
      msg << "damped closed form is only available at theta = pi/4 (got " << cfg.theta
          << "); use the general-theta branch";
      throw Error(ErrorKind::ClosedFormDomain, msg.str());
    }
    // sqrt(2) g / Omega ... = (1/sqrt(2)) * [2 g / Omega ...]
    weight_aA = weight_bB = 1.0 / std::numbers::sqrt2;
  } else {
    weight_aA = std::cos(cfg.theta);
    weight_bB = std::sin(cfg.theta);
  }
  const double f_aA = weight_aA * damped_exchange_factor(cfg.g_aA, cfg.kappa_A, t);
  const double f_bB = weight_bB * damped_exchange_factor(cfg.g_bB, cfg.kappa_B, t);
  XStateAB x;
  x.c = f_aA * f_aA;
  x.b = f_bB * f_bB;
  x.d = f_aA * f_bB;
  x.a = 1.0 - (x.c + x.b);
  return x;
}

XStateAB closed_form_elements(const SystemConfig& cfg, double t) {
  if (cfg.is_closed()) return unitary_elements(cfg, t);
  const bool quarter_pi = std::abs(cfg.theta - std::numbers::pi / 4.0) <= 1e-12;
  return dissipative_elements(cfg, t, quarter_pi ? DissipativeBranch::EqualWeight : DissipativeBranch::GeneralTheta);
}

double frontier_negativity(double energy) {
  if (!(energy >= -1.0 && energy <= 0.0)) {
    std::ostringstream msg;
    msg << "frontier energy " << energy << " outside [-1, 0]";
    throw Error(ErrorKind::DomainError, msg.str());
  }
  const double excited = 1.0 + energy;
  return energy + std::sqrt(energy * energy + excited * excited);
}

double bound_residual(double negativity, double energy) {
  const double excited = 1.0 + energy;
  return excited * excited - (negativity * negativity - 2.0 * negativity * energy);
}

}  // namespace entx
