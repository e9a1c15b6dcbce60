// linalg.hpp: small dense complex linear algebra for one- and two-qubit states
//
// Basis ordering for two qubits is {|00>, |01>, |10>, |11>}. The left factor of
// a tensor product is the slow index and always holds the heat-bath qubit
// (slot 1); the right factor holds the spin-bath qubit (slot 2).

#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spinbath {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using MatrixXc = Eigen::MatrixXcd;

// Bad input: wrong dimension, out-of-range parameter, broken invariant.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation that could not finish: singular system, unstable step, no bracket.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Short form of a double for error messages.
inline std::string error_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Tolerances {
  static constexpr double hermiticity = 1e-10;
  static constexpr double trace = 1e-10;
  static constexpr double positivity = 1e-9;
  static constexpr double bloch_norm = 1e-9;
  static constexpr double jacobi_off_diagonal = 1e-13;
  static constexpr double pivot = 1e-10;
  static constexpr double residual = 1e-9;
  static constexpr double magic = 1e-9;
  static constexpr double step_correction = 1e-8;
};

enum class Slot { first = 1, second = 2 };

// Kronecker product, a is the slow index.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> tensor(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> commutator(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw InvalidArgument("commutator: operands must be square with equal dimension");
  }
  return a * b - b * a;
}

// Reduced state of the kept slot of a two-qubit operator (the other slot is traced out).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 2> partial_trace(const Eigen::MatrixBase<Derived>& m,
                                                             Slot keep) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw InvalidArgument("partial_trace: expected a 4x4 operator, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  Eigen::Matrix<typename Derived::Scalar, 2, 2> out;
  out.setZero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        out(i, j) += keep == Slot::first ? m(2 * i + k, 2 * j + k) : m(2 * k + i, 2 * k + j);
      }
    }
  }
  return out;
}

// max |m - m^dagger| over entries.
double hermiticity_error(const MatrixXc& m);

// Ascending eigenvalues of a Hermitian matrix. Closed form for 2x2, cyclic
// complex Jacobi rotations otherwise.
std::vector<double> hermitian_eigenvalues(const MatrixXc& m);

// Solves A x = b by Gaussian elimination with partial pivoting. Throws
// NumericalError when a pivot falls below Tolerances::pivot relative to max|A|.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solve_linear(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a,
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) {
    throw InvalidArgument("solve_linear: dimension mismatch");
  }
  const double scale = a.cwiseAbs().maxCoeff();
  if (!(scale > 0.0)) {
    throw NumericalError("solve_linear: zero matrix");
  }
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot_row = col;
    double best = std::abs(a(col, col));
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (std::abs(a(r, col)) > best) {
        best = std::abs(a(r, col));
        pivot_row = r;
      }
    }
    if (best <= Tolerances::pivot * scale) {
      throw NumericalError("solve_linear: singular system (pivot " + error_number(best) +
                           " in column " + std::to_string(col) + ")");
    }
    if (pivot_row != col) {
      a.row(col).swap(a.row(pivot_row));
      std::swap(b(col), b(pivot_row));
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Scalar factor = a(r, col) / a(col, col);
      if (factor == Scalar(0)) continue;
      a.row(r).tail(n - col) -= factor * a.row(col).tail(n - col);
      b(r) -= factor * b(col);
    }
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    Scalar acc = b(r);
    for (Eigen::Index c = r + 1; c < n; ++c) acc -= a(r, c) * x(c);
    x(r) = acc / a(r, r);
  }
  return x;
}

struct DensityDiagnostics {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;

  bool ok() const {
    return hermiticity_error <= Tolerances::hermiticity && trace_error <= Tolerances::trace &&
           min_eigenvalue >= -Tolerances::positivity;
  }
};

DensityDiagnostics diagnose_density(const MatrixXc& m);

// Hermitian, unit-trace, positive operator of dimension 2 or 4.
class DensityMatrix {
 public:
  // Throws InvalidArgument if any invariant fails.
  explicit DensityMatrix(MatrixXc m);

  const MatrixXc& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  Matrix2c as2() const;
  Matrix4c as4() const;

 private:
  MatrixXc m_;
};

DensityMatrix partial_trace(const DensityMatrix& rho, Slot keep);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline const Matrix2c& pauli_x() {
  static const Matrix2c m = (Matrix2c() << 0, 1, 1, 0).finished();
  return m;
}
inline const Matrix2c& pauli_y() {
  static const Matrix2c m = (Matrix2c() << 0, cplx(0, -1), cplx(0, 1), 0).finished();
  return m;
}
inline const Matrix2c& pauli_z() {
  static const Matrix2c m = (Matrix2c() << 1, 0, 0, -1).finished();
  return m;
}

// r_k = tr(rho sigma_k), rho = (I + r.sigma)/2.
BlochVector bloch_from_density(const DensityMatrix& rho);
DensityMatrix density_from_bloch(const BlochVector& r);

// Sum of |off-diagonal| entries in the computational basis.
double l1_coherence(const DensityMatrix& rho);

// (1/2) sum |eig(a - b)|
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace spinbath
