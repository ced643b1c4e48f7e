#pragma once

#include <functional>
#include <vector>

#include "sff/types.hpp"

namespace sff {

struct EigenphaseSet {
    Eigen::VectorXd phases;  // ascending, in (-pi, pi]
    double max_residual = 0.0;
    double max_modulus_deviation = 0.0;
};

// All d eigenphases of a certified-unitary matrix, via complex Schur form.
EigenphaseSet unitary_eigenphases(const Matrix& u);

// K_sample(t) = |sum_n e^{i E_n t}|^2 for t = 0..t_max, by incremental
// phase rotation (O(d t_max)).
std::vector<double> sff_from_phases(const Eigen::VectorXd& phases, long t_max);

// Same quantity from tr U^t by repeated multiplication. Oracle path, d <= 128.
std::vector<double> sff_direct_trace(const Matrix& u, long t_max);

struct SffCurve {
    long d = 0;
    std::vector<long> t;
    std::vector<double> mean;
    std::vector<double> stderr_;
    long n_samples = 0;  // accepted samples
    long failures = 0;
};

struct MonteCarloOptions {
    long n_samples = 0;
    long t_max = 0;
    int workers = 0;  // 0 = hardware concurrency
    double max_failure_fraction = 0.001;
    double residual_tol = 1e-8;
    double modulus_tol = 1e-8;
    double trace_tol = 1e-8;  // |sum e^{iE} - tr U| <= tol * d
};

struct MonteCarloStats {
    long failures = 0;
    double max_residual = 0.0;
    double max_modulus_deviation = 0.0;
    double max_trace_mismatch = 0.0;
    double first_sample_unitarity = -1.0;  // ||U^dag U - I||_max of sample 0
};

using UnitaryBuilder = std::function<Matrix(std::uint64_t sample_index)>;

// Ensemble-averaged SFF. Samples are computed in parallel over disjoint
// index chunks and merged strictly in ascending sample-index order, so the
// result is bit-identical for any worker count. Samples failing the
// eigensolver or unitarity checks are skipped; the run aborts with
// NumericalError if more than max_failure_fraction of samples fail.
SffCurve monte_carlo_sff(const UnitaryBuilder& build, int d, const MonteCarloOptions& opts,
                         MonteCarloStats* stats = nullptr);

// Plain-loop reference implementation with identical arithmetic, kept for
// testing the parallel path.
SffCurve monte_carlo_sff_serial(const UnitaryBuilder& build, int d, const MonteCarloOptions& opts,
                                MonteCarloStats* stats = nullptr);

}  // namespace sff
