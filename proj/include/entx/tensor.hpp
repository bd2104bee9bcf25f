#pragma once

// Dense complex linear algebra for the small (dim <= 16) operators used by
// the four-qubit model.
//
// Basis convention: a single qubit has |0> (ground) at index 0 and |1>
// (excited) at index 1.  The four-qubit register is ordered a, b, A, B with
// index = 8*n_a + 4*n_b + 2*n_A + n_B, and the reduced AB pair uses
// index = 2*n_A + n_B.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace entx {

using Complex = std::complex<double>;

inline constexpr std::size_t kQubits = 4;
inline constexpr std::size_t kFullDim = 16;
inline constexpr std::size_t kPairDim = 4;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  // Row-major entries; throws DomainError unless entries.size() == dim*dim
  // and every entry is finite.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  // |ket><bra| for two amplitude vectors of equal length.
  static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
  std::span<Complex> entries() noexcept { return data_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  // Largest entry modulus.
  double max_abs() const;
  double frobenius_norm() const;
  bool is_finite() const;
  // max |M - M^dagger| entry.
  double hermiticity_error() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v);

// Commutator [A, B] = AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
// max |A - B| entry; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product: entry (i*dB + k, j*dB + l) = A(i,j) * B(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

using Amplitudes = std::array<Complex, kFullDim>;

// Normalized state of the abAB register.
class PureState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  // Throws InvalidState if the squared norm differs from 1 by more than
  // kNormTolerance.
  explicit PureState(const Amplitudes& amplitudes);

  static PureState basis(std::size_t index);

  const Amplitudes& amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  double norm_squared() const;
  ComplexMatrix density_matrix() const;

 private:
  Amplitudes amps_{};
};

// <lhs|rhs>
Complex inner(std::span<const Complex> lhs, std::span<const Complex> rhs);
// |<lhs|rhs>|^2, insensitive to global phase.
double fidelity(const PureState& lhs, const PureState& rhs);

struct HermitianSpectrum {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Cyclic complex Jacobi.  Throws NotHermitian when
// ||M - M^dagger||_max > 1e-10 * ||M||_max and NoConvergence after 100 sweeps.
HermitianSpectrum hermitian_eig(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);

// Trace out qubits a and b from a 16x16 operator.  Throws InvalidState unless
// the input is Hermitian with unit trace (both within 1e-10).
ComplexMatrix partial_trace_to_ab(const ComplexMatrix& rho);
// Same index contraction without the density-matrix preconditions.
ComplexMatrix partial_trace_to_ab_unchecked(const ComplexMatrix& rho);

// Transpose over the A index of a 4x4 operator:
// result(2i+j, 2k+l) = rho(2k+j, 2i+l).
ComplexMatrix partial_transpose_a(const ComplexMatrix& rho_ab);
// Transpose over the B index: result(2i+j, 2k+l) = rho(2i+l, 2k+j).
ComplexMatrix partial_transpose_b(const ComplexMatrix& rho_ab);

}  // namespace entx
