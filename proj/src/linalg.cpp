#include "infocorr/linalg.hpp"

#include <cmath>

#include "infocorr/errors.hpp"

namespace infocorr {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix identity(int d) { return Matrix::Identity(d, d); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix ketbra(const Vector& v) { return v * v.adjoint(); }

Matrix partial_trace_first(const Matrix& m, int dim_a, int dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw InvalidInputError("partial trace: operator dimension mismatch");
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int a = 0; a < dim_a; ++a)
    out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
  return out;
}

Matrix partial_trace_second(const Matrix& m, int dim_a, int dim_b) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw InvalidInputError("partial trace: operator dimension mismatch");
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j) {
      Complex s = 0;
      for (int b = 0; b < dim_b; ++b) s += m(i * dim_b + b, j * dim_b + b);
      out(i, j) = s;
    }
  return out;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix& m) {
  return max_abs(Matrix(m - m.adjoint()));
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double min_eigenvalue(const Matrix& m) {
  return hermitian_eigenvalues(m).minCoeff();
}

double max_eigenvalue(const Matrix& m) {
  return hermitian_eigenvalues(m).maxCoeff();
}

Matrix nonnegative_eigenprojector(const Matrix& m, double tol) {
  Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const int d = static_cast<int>(h.rows());
  Matrix proj = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    if (es.eigenvalues()(i) >= -tol)
      proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  return proj;
}

double positive_eigensum(const Matrix& m) {
  Eigen::VectorXd ev = hermitian_eigenvalues(m);
  double s = 0;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > 0) s += ev(i);
  return s;
}

Matrix inverse_sqrt(const Matrix& m) {
  Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.eigenvalues().minCoeff() <= 0)
    throw InvalidInputError("inverse_sqrt: matrix is not positive definite");
  Eigen::VectorXd inv = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix clip_psd(const Matrix& m) {
  Matrix h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace infocorr
