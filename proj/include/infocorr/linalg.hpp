#pragma once

#include <Eigen/Dense>
#include <complex>

namespace infocorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix identity(int d);

Matrix kron(const Matrix& a, const Matrix& b);

// |v><v| for a (not necessarily normalized) column vector.
Matrix ketbra(const Vector& v);

// Trace out the first (dim_a) or second (dim_b) tensor factor of an operator
// on C^{dim_a} (x) C^{dim_b}.
Matrix partial_trace_first(const Matrix& m, int dim_a, int dim_b);
Matrix partial_trace_second(const Matrix& m, int dim_a, int dim_b);

double max_abs(const Matrix& m);

// Largest |entry| of (m - m^dagger); 0 for exactly Hermitian input.
double hermiticity_defect(const Matrix& m);

// Eigenvalues of (m + m^dagger)/2, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

double min_eigenvalue(const Matrix& m);
double max_eigenvalue(const Matrix& m);

// Projector onto the span of eigenvectors of (m + m^dagger)/2 with eigenvalue
// >= -tol. Zero eigenvalues land inside the projector.
Matrix nonnegative_eigenprojector(const Matrix& m, double tol = 1e-12);

// Sum of positive eigenvalues.
double positive_eigensum(const Matrix& m);

// Hermitian inverse square root; input must be positive definite.
Matrix inverse_sqrt(const Matrix& m);

// Clip negative eigenvalues to zero, keeping the matrix Hermitian.
Matrix clip_psd(const Matrix& m);

}  // namespace infocorr
