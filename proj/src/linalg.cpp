#include "sff/linalg.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <vector>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace sff {

namespace {

// BLAS threading must stay at 1: samples are parallelized at the OpenMP level,
// and results must not depend on the worker count.
void ensure_single_threaded_blas() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        if (openblas_set_num_threads) openblas_set_num_threads(1);
    });
}

static_assert(std::endian::native == std::endian::little,
              "matrix dump format assumes a little-endian host");

}  // namespace

SchurSpectrum schur_spectrum(const Matrix& u) {
    ensure_single_threaded_blas();
    const lapack_int n = static_cast<lapack_int>(u.rows());
    if (u.cols() != n) throw std::invalid_argument("schur_spectrum: matrix must be square");
    Matrix t = u;  // overwritten with the Schur form
    Eigen::VectorXcd w(n);
    lapack_int sdim = 0;
    lapack_int info = LAPACKE_zgees(LAPACK_COL_MAJOR, 'N', 'N', nullptr, n, t.data(), n,
                                    &sdim, w.data(), nullptr, n);
    if (info != 0) {
        throw NumericalError("zgees failed to converge (info=" + std::to_string(info) +
                             ", n=" + std::to_string(n) + ")");
    }
    SchurSpectrum out;
    out.eigenvalues = w;
    double max_res = 0.0, max_dev = 0.0;
    for (lapack_int j = 0; j < n; ++j) {
        double col = 0.0;
        for (lapack_int i = 0; i < j; ++i) col += std::norm(t(i, j));
        max_res = std::max(max_res, std::sqrt(col));
        max_dev = std::max(max_dev, std::abs(std::abs(w(j)) - 1.0));
    }
    out.max_residual = max_res;
    out.max_modulus_deviation = max_dev;
    return out;
}

HermitianEigensystem hermitian_eigensystem(const Matrix& h) {
    ensure_single_threaded_blas();
    const lapack_int n = static_cast<lapack_int>(h.rows());
    if (h.cols() != n) throw std::invalid_argument("hermitian_eigensystem: matrix must be square");
    HermitianEigensystem out;
    out.vectors = h;
    out.values.resize(n);
    lapack_int info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'V', 'U', n, out.vectors.data(), n,
                                    out.values.data());
    if (info != 0) {
        throw NumericalError("zheev failed to converge (info=" + std::to_string(info) + ")");
    }
    return out;
}

Matrix hermitian_phase_exponential(const Matrix& h, double g) {
    HermitianEigensystem eig = hermitian_eigensystem(h);
    const auto n = h.rows();
    Matrix scaled = eig.vectors;
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex phase = std::polar(1.0, -g * eig.values(j));
        scaled.col(j) *= phase;
    }
    return scaled * eig.vectors.adjoint();
}

double unitarity_error(const Matrix& u) {
    Matrix gram = u.adjoint() * u;
    gram.diagonal().array() -= 1.0;
    return gram.cwiseAbs().maxCoeff();
}

void write_matrix(const std::string& path, const Matrix& u) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("cannot open for writing: " + path);
    const std::uint64_t d = static_cast<std::uint64_t>(u.rows());
    bool ok = std::fwrite(&d, sizeof(d), 1, f) == 1;
    std::vector<double> row(2 * u.cols());
    for (Eigen::Index i = 0; ok && i < u.rows(); ++i) {
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
            row[2 * j] = u(i, j).real();
            row[2 * j + 1] = u(i, j).imag();
        }
        ok = std::fwrite(row.data(), sizeof(double), row.size(), f) == row.size();
    }
    if (std::fclose(f) != 0) ok = false;
    if (!ok) throw IoError("short write: " + path);
}

Matrix read_matrix(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw IoError("cannot open for reading: " + path);
    std::uint64_t d = 0;
    if (std::fread(&d, sizeof(d), 1, f) != 1 || d == 0 || d > (1u << 20)) {
        std::fclose(f);
        throw IoError("bad matrix header: " + path);
    }
    Matrix u(d, d);
    std::vector<double> row(2 * d);
    for (std::uint64_t i = 0; i < d; ++i) {
        if (std::fread(row.data(), sizeof(double), row.size(), f) != row.size()) {
            std::fclose(f);
            throw IoError("short read: " + path);
        }
        for (std::uint64_t j = 0; j < d; ++j) u(i, j) = Complex(row[2 * j], row[2 * j + 1]);
    }
    std::fclose(f);
    return u;
}

}  // namespace sff
