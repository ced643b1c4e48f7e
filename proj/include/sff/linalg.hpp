#pragma once

#include <string>

#include "sff/types.hpp"

namespace sff {

// Result of a dense Schur decomposition of a (near-)unitary matrix.
struct SchurSpectrum {
    Eigen::VectorXcd eigenvalues;
    // max over n of ||U v_n - lambda_n v_n|| estimated from the strict upper
    // triangle of the Schur form.
    double max_residual = 0.0;
    // max over n of | |lambda_n| - 1 |.
    double max_modulus_deviation = 0.0;
};

// Complex Schur decomposition via LAPACK zgees (eigenvalues only).
// Throws NumericalError if the QR iteration fails to converge.
SchurSpectrum schur_spectrum(const Matrix& u);

// Eigendecomposition of a Hermitian matrix via LAPACK zheev.
struct HermitianEigensystem {
    Eigen::VectorXd values;
    Matrix vectors;  // columns
};
HermitianEigensystem hermitian_eigensystem(const Matrix& h);

// exp(-i g H) for Hermitian H, via eigendecomposition. Unitary to roundoff.
Matrix hermitian_phase_exponential(const Matrix& h, double g);

// max |(U^dag U - I)_{ij}|
double unitarity_error(const Matrix& u);

// Binary matrix dump: 8-byte little-endian dimension header, then row-major
// complex entries as little-endian doubles (re, im).
void write_matrix(const std::string& path, const Matrix& u);
Matrix read_matrix(const std::string& path);

}  // namespace sff
