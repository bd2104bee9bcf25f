#include "entx/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "entx/error.hpp"

namespace entx {

namespace {

constexpr double kJacobiOffTolerance = 1e-14;
constexpr int kJacobiSweepCap = 100;
constexpr double kHermitianTolerance = 1e-10;

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << op << ": dimension mismatch " << a.dim() << " vs " << b.dim();
    throw Error(ErrorKind::DomainError, msg.str());
  }
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j) sum += std::norm(m(i, j));
  return std::sqrt(sum);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_)
    throw Error(ErrorKind::DomainError, "matrix entry count is not dim^2");
  if (!is_finite()) throw Error(ErrorKind::DomainError, "matrix has non-finite entries");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw Error(ErrorKind::DomainError, "matrix literal is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
  if (ket.size() != bra.size()) throw Error(ErrorKind::DomainError, "outer: length mismatch");
  ComplexMatrix m(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& z : data_) best = std::max(best, std::abs(z));
  return best;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double ComplexMatrix::hermiticity_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "operator*");
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex lik = lhs(i, k);
      if (lik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += lik * rhs(k, j);
    }
  return out;
}

std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (v.size() != m.dim()) throw Error(ErrorKind::DomainError, "matrix-vector length mismatch");
  std::vector<Complex> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) sum += m(i, j) * v[j];
    out[i] = sum;
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = a(i, j) * b(k, l);
  return out;
}

PureState::PureState(const Amplitudes& amplitudes) : amps_(amplitudes) {
  const double n2 = norm_squared();
  if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "state norm^2 = " << n2;
    throw Error(ErrorKind::InvalidState, msg.str());
  }
}

PureState PureState::basis(std::size_t index) {
  if (index >= kFullDim) throw Error(ErrorKind::DomainError, "basis index out of range");
  Amplitudes amps{};
  amps[index] = 1.0;
  return PureState(amps);
}

double PureState::norm_squared() const {
  double sum = 0.0;
  for (const auto& z : amps_) sum += std::norm(z);
  return sum;
}

ComplexMatrix PureState::density_matrix() const { return ComplexMatrix::outer(amps_, amps_); }

Complex inner(std::span<const Complex> lhs, std::span<const Complex> rhs) {
  if (lhs.size() != rhs.size()) throw Error(ErrorKind::DomainError, "inner: length mismatch");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) sum += std::conj(lhs[i]) * rhs[i];
  return sum;
}

double fidelity(const PureState& lhs, const PureState& rhs) {
  return std::norm(inner(lhs.amplitudes(), rhs.amplitudes()));
}

HermitianSpectrum hermitian_eig(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  const double scale = m.max_abs();
  if (m.hermiticity_error() > kHermitianTolerance * scale) {
    std::ostringstream msg;
    msg << "hermiticity error " << m.hermiticity_error() << " exceeds tolerance";
    throw Error(ErrorKind::NotHermitian, msg.str());
  }

  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = kJacobiOffTolerance * m.frobenius_norm();

  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiSweepCap; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    if (sweep == kJacobiSweepCap) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J restricted to (p,q): [[c, s e^{i phi}], [-s e^{-i phi}, c]]
        const Complex jpq = s * phase;
        const Complex jqp = -s * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + jqp * akq;
          a(k, q) = jpq * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + jqp * vkq;
          v(k, q) = jpq * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) throw Error(ErrorKind::NoConvergence, "Jacobi sweep cap reached");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianSpectrum spectrum{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    spectrum.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t row = 0; row < n; ++row) spectrum.eigenvectors(row, k) = v(row, order[k]);
  }
  return spectrum;
}

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eig(m).eigenvalues.front(); }

ComplexMatrix partial_trace_to_ab_unchecked(const ComplexMatrix& rho) {
  if (rho.dim() != kFullDim) throw Error(ErrorKind::DomainError, "partial trace expects 16x16 input");
  ComplexMatrix out(kPairDim);
  for (std::size_t row = 0; row < kPairDim; ++row)
    for (std::size_t col = 0; col < kPairDim; ++col) {
      Complex sum = 0.0;
      for (std::size_t ab = 0; ab < 4; ++ab) sum += rho(4 * ab + row, 4 * ab + col);
      out(row, col) = sum;
    }
  return out;
}

ComplexMatrix partial_trace_to_ab(const ComplexMatrix& rho) {
  if (rho.dim() != kFullDim) throw Error(ErrorKind::DomainError, "partial trace expects 16x16 input");
  if (rho.hermiticity_error() > kHermitianTolerance)
    throw Error(ErrorKind::InvalidState, "partial trace input is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > kHermitianTolerance)
    throw Error(ErrorKind::InvalidState, "partial trace input does not have unit trace");
  return partial_trace_to_ab_unchecked(rho);
}

ComplexMatrix partial_transpose_a(const ComplexMatrix& rho_ab) {
  if (rho_ab.dim() != kPairDim) throw Error(ErrorKind::DomainError, "partial transpose expects 4x4 input");
  ComplexMatrix out(kPairDim);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = rho_ab(2 * k + j, 2 * i + l);
  return out;
}

ComplexMatrix partial_transpose_b(const ComplexMatrix& rho_ab) {
  if (rho_ab.dim() != kPairDim) throw Error(ErrorKind::DomainError, "partial transpose expects 4x4 input");
  ComplexMatrix out(kPairDim);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = rho_ab(2 * i + l, 2 * k + j);
  return out;
}

}  // namespace entx
