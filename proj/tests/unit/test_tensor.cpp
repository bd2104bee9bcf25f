#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "entx/model.hpp"
#include "test_support.hpp"

using namespace entx;
using entx::testing::random_density;
using entx::testing::random_hermitian;
using entx::testing::random_matrix;

namespace {

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }

double reconstruction_error(const ComplexMatrix& m, const HermitianSpectrum& s) {
  ComplexMatrix diag = ComplexMatrix::diagonal(s.eigenvalues);
  return max_abs_diff(m, s.eigenvectors * diag * s.eigenvectors.adjoint());
}

double orthonormality_error(const HermitianSpectrum& s) {
  return max_abs_diff(s.eigenvectors.adjoint() * s.eigenvectors, ComplexMatrix::identity(s.eigenvalues.size()));
}

std::vector<double> eigen_reference(const ComplexMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) e(i, j) = m(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e);
  const Eigen::VectorXd vals = solver.eigenvalues();
  return {vals.data(), vals.data() + vals.size()};
}

// Partial transpose over A by decoding each basis label into qubit bits.
ComplexMatrix brute_force_transpose_a(const ComplexMatrix& rho) {
  ComplexMatrix out(4);
  for (std::size_t row = 0; row < 4; ++row)
    for (std::size_t col = 0; col < 4; ++col) {
      const std::size_t row_a = row >> 1, row_b = row & 1;
      const std::size_t col_a = col >> 1, col_b = col & 1;
      out((col_a << 1) | row_b, (row_a << 1) | col_b) = rho(row, col);
    }
  return out;
}

}  // namespace

TEST_SUITE("tensor_core") {
  TEST_CASE("kron of identities is the identity") {
    CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
  }

  TEST_CASE("kron follows the |0> = index 0 convention") {
    const std::vector<double> expected{-1.0, -1.0, 1.0, 1.0};
    CHECK(kron(ops::sigma_z(), ComplexMatrix::identity(2)) == ComplexMatrix::diagonal(expected));
  }

  TEST_CASE("sigma+ (x) sigma- maps |01> to |10>") {
    const ComplexMatrix op = kron(ops::sigma_plus(), ops::sigma_minus());
    const std::vector<Complex> ket01{0.0, 1.0, 0.0, 0.0};
    const auto out = op * std::span<const Complex>(ket01);
    CHECK(out == std::vector<Complex>{0.0, 0.0, 1.0, 0.0});
  }

  TEST_CASE("kron is associative and trace-multiplicative") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> small(-9, 9);
    const auto integer_matrix = [&](std::size_t n) {
      ComplexMatrix m(n);
      for (auto& z : m.entries()) z = Complex(small(rng), small(rng));
      return m;
    };
    for (int trial = 0; trial < 20; ++trial) {
      // Integer entries keep every product exact, so the two groupings agree bit for bit.
      const auto a = integer_matrix(2), b = integer_matrix(2), c = integer_matrix(4);
      CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));

      const auto x = random_matrix(rng, 2), y = random_matrix(rng, 4);
      CHECK(std::abs(kron(x, y).trace() - x.trace() * y.trace()) <= 1e-12 * (1.0 + std::abs(x.trace() * y.trace())));
    }
  }

  TEST_CASE("matrix construction rejects bad shapes and non-finite entries") {
    CHECK_THROWS_KIND(ComplexMatrix(2, std::vector<Complex>(3)), ErrorKind::DomainError);
    CHECK_THROWS_KIND(ComplexMatrix(1, std::vector<Complex>{Complex(std::nan(""), 0.0)}), ErrorKind::DomainError);
  }

  TEST_CASE("hermitian_eig on diagonal and Pauli inputs") {
    const std::vector<double> diag{3.0, 1.0, 2.0};
    const auto s = hermitian_eig(ComplexMatrix::diagonal(diag));
    CHECK(s.eigenvalues == std::vector<double>{1.0, 2.0, 3.0});

    const auto px = hermitian_eig(pauli_x());
    CHECK(px.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(px.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("hermitian_eig matches the quadratic roots of the X block") {
    // (a +- sqrt(a^2 + 4 d^2)) / 2 for a = 0.5, d = 0.25
    const ComplexMatrix m{{0.5, 0.25}, {0.25, 0.0}};
    const auto s = hermitian_eig(m);
    const double root = std::sqrt(0.25 + 0.25);
    CHECK(std::abs(s.eigenvalues[0] - (0.5 - root) / 2.0) <= 1e-15);
    CHECK(std::abs(s.eigenvalues[1] - (0.5 + root) / 2.0) <= 1e-15);
    CHECK(s.eigenvalues[0] == doctest::Approx(-0.10355339).epsilon(1e-8));
    CHECK(s.eigenvalues[1] == doctest::Approx(0.60355339).epsilon(1e-8));
  }

  TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    const ComplexMatrix m{{0.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_KIND(hermitian_eig(m), ErrorKind::NotHermitian);
  }

  TEST_CASE("hermitian_eig handles the zero matrix and is deterministic") {
    const auto z = hermitian_eig(ComplexMatrix(4));
    CHECK(z.eigenvalues == std::vector<double>(4, 0.0));
    std::mt19937_64 rng(3);
    const ComplexMatrix h = random_hermitian(rng, 16);
    const auto first = hermitian_eig(h);
    const auto second = hermitian_eig(h);
    CHECK(first.eigenvalues == second.eigenvalues);
    CHECK(first.eigenvectors == second.eigenvectors);
  }

  TEST_CASE("hermitian_eig invariants on 1000 random 4x4 and 16x16 matrices") {
    std::mt19937_64 rng(2024);
    double worst_recon = 0.0, worst_ortho = 0.0, worst_ref = 0.0;
    for (std::size_t n : {std::size_t{4}, std::size_t{16}}) {
      for (int trial = 0; trial < 1000; ++trial) {
        const ComplexMatrix h = random_hermitian(rng, n);
        const auto s = hermitian_eig(h);
        worst_recon = std::max(worst_recon, reconstruction_error(h, s) / h.max_abs());
        worst_ortho = std::max(worst_ortho, orthonormality_error(s));
        const auto ref = eigen_reference(h);
        for (std::size_t k = 0; k < n; ++k)
          worst_ref = std::max(worst_ref, std::abs(ref[k] - s.eigenvalues[k]) / h.max_abs());
        CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
      }
    }
    CHECK(worst_recon <= 1e-10);
    CHECK(worst_ortho <= 1e-10);
    CHECK(worst_ref <= 1e-12);
  }

  TEST_CASE("hermitian_eig on degenerate spectra") {
    // Hamiltonian of the model has repeated eigenvalues.
    SystemConfig cfg;
    const ComplexMatrix h = build_hamiltonian(cfg);
    const auto s = hermitian_eig(h);
    CHECK(reconstruction_error(h, s) <= 1e-12);
    CHECK(orthonormality_error(s) <= 1e-12);
  }

  TEST_CASE("partial trace of product states") {
    const ComplexMatrix ground = PureState::basis(0).density_matrix();
    const ComplexMatrix reduced = partial_trace_to_ab(ground);
    ComplexMatrix expected(4);
    expected(0, 0) = 1.0;
    CHECK(reduced == expected);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexMatrix rho_ab = random_density(rng, 4);
      const ComplexMatrix rho_AB = random_density(rng, 4);
      CHECK(max_abs_diff(partial_trace_to_ab(kron(rho_ab, rho_AB)), rho_AB) <= 1e-12);
    }
  }

  TEST_CASE("partial trace of the swapped state gives the transferred X-state") {
    // -i (|0010> + |0001>) / sqrt(2): the AB pair holds (|10> + |01>)/sqrt(2).
    Amplitudes amps{};
    amps[2] = Complex(0.0, -1.0 / std::numbers::sqrt2);
    amps[1] = Complex(0.0, -1.0 / std::numbers::sqrt2);
    const ComplexMatrix reduced = partial_trace_to_ab(PureState(amps).density_matrix());
    CHECK(std::abs(reduced(0, 0)) <= 1e-15);
    CHECK(std::abs(reduced(1, 1) - 0.5) <= 1e-15);
    CHECK(std::abs(reduced(2, 2) - 0.5) <= 1e-15);
    CHECK(std::abs(reduced(1, 2) - 0.5) <= 1e-15);
  }

  TEST_CASE("partial trace rejects non-density inputs") {
    CHECK_THROWS_KIND(partial_trace_to_ab(ComplexMatrix::identity(16)), ErrorKind::InvalidState);
    ComplexMatrix skew = PureState::basis(0).density_matrix();
    skew(0, 1) = 0.1;
    CHECK_THROWS_KIND(partial_trace_to_ab(skew), ErrorKind::InvalidState);
    CHECK_THROWS_KIND(partial_trace_to_ab(ComplexMatrix::identity(4)), ErrorKind::DomainError);
  }

  TEST_CASE("partial transpose over A") {
    const std::vector<double> diag{0.1, 0.2, 0.3, 0.4};
    CHECK(partial_transpose_a(ComplexMatrix::diagonal(diag)) == ComplexMatrix::diagonal(diag));

    ComplexMatrix x(4);
    x(0, 0) = 0.4;
    x(1, 1) = 0.3;
    x(2, 2) = 0.3;
    x(1, 2) = Complex(0.1, 0.2);
    x(2, 1) = Complex(0.1, -0.2);
    const ComplexMatrix pt = partial_transpose_a(x);
    CHECK(pt == brute_force_transpose_a(x));
    CHECK(pt(3, 0) == Complex(0.1, 0.2));
    CHECK(pt(0, 3) == Complex(0.1, -0.2));
    CHECK(pt(1, 2) == Complex{});
    CHECK(partial_transpose_a(pt) == x);
  }

  TEST_CASE("partial transpose preserves trace and Hermiticity") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      const ComplexMatrix rho = random_density(rng, 4);
      const ComplexMatrix pt = partial_transpose_a(rho);
      CHECK(pt == brute_force_transpose_a(rho));
      CHECK(std::abs(pt.trace() - rho.trace()) <= 1e-15);
      CHECK(pt.hermiticity_error() <= 1e-15);
      CHECK_NOTHROW(hermitian_eig(pt));
      CHECK(partial_transpose_a(pt) == rho);
    }
  }
}
