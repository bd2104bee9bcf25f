#include "entx/model.hpp"

#include <cmath>

#include "entx/error.hpp"

namespace entx {

void SystemConfig::validate() const {
  for (double v : {theta, g_aA, g_bB, kappa_A, kappa_B, omega})
    if (!std::isfinite(v)) throw Error(ErrorKind::DomainError, "configuration has non-finite fields");
  if (g_aA < 0.0 || g_bB < 0.0) throw Error(ErrorKind::DomainError, "couplings must be non-negative");
  if (kappa_A < 0.0 || kappa_B < 0.0) throw Error(ErrorKind::DomainError, "decay rates must be non-negative");
  if (!(omega > 0.0)) throw Error(ErrorKind::DomainError, "omega must be positive");
}

namespace ops {

ComplexMatrix sigma_z() { return {{-1.0, 0.0}, {0.0, 1.0}}; }
ComplexMatrix sigma_plus() { return {{0.0, 0.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_minus() { return {{0.0, 1.0}, {0.0, 0.0}}; }

ComplexMatrix embed(const ComplexMatrix& op, Qubit q) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (Qubit slot : {Qubit::a, Qubit::b, Qubit::A, Qubit::B})
    out = kron(out, slot == q ? op : ComplexMatrix::identity(2));
  return out;
}

ComplexMatrix excitation_number() {
  const ComplexMatrix excited{{0.0, 0.0}, {0.0, 1.0}};
  ComplexMatrix n(kFullDim);
  for (Qubit q : {Qubit::a, Qubit::b, Qubit::A, Qubit::B}) n += embed(excited, q);
  return n;
}

}  // namespace ops

namespace {

ComplexMatrix exchange(Qubit donor, Qubit target) {
  using namespace ops;
  return embed(sigma_minus(), donor) * embed(sigma_plus(), target) +
         embed(sigma_plus(), donor) * embed(sigma_minus(), target);
}

}  // namespace

ComplexMatrix build_hamiltonian(const SystemConfig& cfg) {
  cfg.validate();
  ComplexMatrix h(kFullDim);
  for (Qubit q : {Qubit::a, Qubit::b, Qubit::A, Qubit::B})
    h += Complex(cfg.omega / 2.0) * ops::embed(ops::sigma_z(), q);
  h += Complex(cfg.g_aA) * exchange(Qubit::a, Qubit::A);
  h += Complex(cfg.g_bB) * exchange(Qubit::b, Qubit::B);
  return h;
}

ComplexMatrix build_h_ab(const SystemConfig& cfg) {
  cfg.validate();
  const ComplexMatrix id = ComplexMatrix::identity(2);
  return Complex(cfg.omega / 2.0) * (kron(ops::sigma_z(), id) + kron(id, ops::sigma_z()));
}

PureState initial_state(const SystemConfig& cfg) {
  cfg.validate();
  Amplitudes amps{};
  amps[qubit_weight(Qubit::b)] = std::sin(cfg.theta);
  amps[qubit_weight(Qubit::a)] = std::cos(cfg.theta);
  return PureState(amps);
}

std::vector<ComplexMatrix> jump_operators(const SystemConfig& cfg) {
  cfg.validate();
  std::vector<ComplexMatrix> out;
  if (cfg.kappa_A > 0.0)
    out.push_back(Complex(std::sqrt(2.0 * cfg.kappa_A)) * ops::embed(ops::sigma_minus(), Qubit::A));
  if (cfg.kappa_B > 0.0)
    out.push_back(Complex(std::sqrt(2.0 * cfg.kappa_B)) * ops::embed(ops::sigma_minus(), Qubit::B));
  return out;
}

}  // namespace entx
