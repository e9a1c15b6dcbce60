#include "spinbath/linalg.hpp"

#include <algorithm>

namespace spinbath {

double hermiticity_error(const MatrixXc& m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("hermiticity_error: matrix is not square");
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

double off_diagonal_norm(const MatrixXc& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

std::vector<double> jacobi_eigenvalues(MatrixXc a) {
  const Eigen::Index n = a.rows();
  const double threshold = Tolerances::jacobi_off_diagonal * std::max(1.0, a.norm());
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > threshold; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double magnitude = std::abs(a(p, q));
        if (magnitude == 0.0) continue;
        const cplx phase = a(p, q) / magnitude;

        // Rotate the (p, q) plane: first remove the phase of a(p, q), then a
        // real Jacobi rotation zeroes it.
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * magnitude);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        MatrixXc rot = MatrixXc::Identity(n, n);
        rot(p, p) = c;
        rot(p, q) = s;
        rot(q, p) = -s * std::conj(phase);
        rot(q, q) = c * std::conj(phase);
        a = (rot.adjoint() * a * rot).eval();
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  if (off_diagonal_norm(a) > threshold) {
    throw NumericalError("hermitian_eigenvalues: Jacobi iteration did not converge");
  }
  std::vector<double> values(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const MatrixXc& m) {
  if (m.rows() == 0 || hermiticity_error(m) > Tolerances::hermiticity) {
    throw InvalidArgument("hermitian_eigenvalues: input is not Hermitian");
  }
  if (m.rows() == 1) return {m(0, 0).real()};
  if (m.rows() == 2) {
    const double mean = 0.5 * (m(0, 0).real() + m(1, 1).real());
    const double half_gap = 0.5 * (m(0, 0).real() - m(1, 1).real());
    const double radius = std::hypot(half_gap, std::abs(m(0, 1)));
    return {mean - radius, mean + radius};
  }
  return jacobi_eigenvalues(m);
}

DensityDiagnostics diagnose_density(const MatrixXc& m) {
  DensityDiagnostics d;
  d.hermiticity_error = hermiticity_error(m);
  d.trace_error = std::abs(m.trace() - cplx(1.0, 0.0));
  // Eigenvalues of the Hermitian part; the anti-Hermitian part is reported separately.
  const MatrixXc herm = 0.5 * (m + m.adjoint());
  d.min_eigenvalue = hermitian_eigenvalues(herm).front();
  return d;
}

DensityMatrix::DensityMatrix(MatrixXc m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || (m_.rows() != 2 && m_.rows() != 4)) {
    throw InvalidArgument("DensityMatrix: dimension must be 2 or 4");
  }
  if (!m_.allFinite()) {
    throw InvalidArgument("DensityMatrix: non-finite entries");
  }
  const DensityDiagnostics d = diagnose_density(m_);
  if (d.hermiticity_error > Tolerances::hermiticity) {
    throw InvalidArgument("DensityMatrix: not Hermitian (error " +
                          error_number(d.hermiticity_error) + ")");
  }
  if (d.trace_error > Tolerances::trace) {
    throw InvalidArgument("DensityMatrix: trace differs from 1 by " +
                          error_number(d.trace_error));
  }
  if (d.min_eigenvalue < -Tolerances::positivity) {
    throw InvalidArgument("DensityMatrix: negative eigenvalue " +
                          error_number(d.min_eigenvalue));
  }
}

Matrix2c DensityMatrix::as2() const {
  if (dim() != 2) throw InvalidArgument("DensityMatrix::as2: state is not a qubit");
  return m_;
}

Matrix4c DensityMatrix::as4() const {
  if (dim() != 4) throw InvalidArgument("DensityMatrix::as4: state is not a two-qubit state");
  return m_;
}

DensityMatrix partial_trace(const DensityMatrix& rho, Slot keep) {
  return DensityMatrix(partial_trace(rho.matrix(), keep));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw InvalidArgument("tensor: only qubit factors form a valid two-qubit state here");
  }
  return DensityMatrix(tensor(a.matrix(), b.matrix()));
}

BlochVector bloch_from_density(const DensityMatrix& rho) {
  const Matrix2c m = rho.as2();
  return {(m * pauli_x()).trace().real(), (m * pauli_y()).trace().real(),
          (m * pauli_z()).trace().real()};
}

DensityMatrix density_from_bloch(const BlochVector& r) {
  if (r.norm() > 1.0 + Tolerances::bloch_norm) {
    throw InvalidArgument("density_from_bloch: |r| = " + error_number(r.norm()) + " > 1");
  }
  const Matrix2c m =
      0.5 * (Matrix2c::Identity() + r.x * pauli_x() + r.y * pauli_y() + r.z * pauli_z());
  return DensityMatrix(m);
}

double l1_coherence(const DensityMatrix& rho) {
  const MatrixXc& m = rho.matrix();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) sum += std::abs(m(i, j));
    }
  }
  return sum;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("trace_distance: dimension mismatch");
  const MatrixXc diff = a.matrix() - b.matrix();
  double sum = 0.0;
  for (double v : hermitian_eigenvalues(0.5 * (diff + diff.adjoint()))) sum += std::abs(v);
  return 0.5 * sum;
}

}  // namespace spinbath
