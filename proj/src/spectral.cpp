#include "sff/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <omp.h>

#include "sff/linalg.hpp"

namespace sff {

EigenphaseSet unitary_eigenphases(const Matrix& u) {
    SchurSpectrum spec = schur_spectrum(u);
    EigenphaseSet out;
    out.max_residual = spec.max_residual;
    out.max_modulus_deviation = spec.max_modulus_deviation;
    out.phases.resize(spec.eigenvalues.size());
    for (Eigen::Index n = 0; n < spec.eigenvalues.size(); ++n) {
        double e = std::arg(spec.eigenvalues(n));
        if (e <= -kPi) e = kPi;  // branch (-pi, pi]
        out.phases(n) = e;
    }
    std::sort(out.phases.begin(), out.phases.end());
    return out;
}

std::vector<double> sff_from_phases(const Eigen::VectorXd& phases, long t_max) {
    if (t_max < 0) throw std::invalid_argument("sff_from_phases: t_max must be >= 0");
    const Eigen::Index d = phases.size();
    std::vector<double> k(t_max + 1);
    k[0] = static_cast<double>(d) * static_cast<double>(d);
    std::vector<Complex> rot(d), z(d, Complex(1.0, 0.0));
    for (Eigen::Index n = 0; n < d; ++n) rot[n] = std::polar(1.0, phases(n));
    for (long t = 1; t <= t_max; ++t) {
        Complex sum = 0.0;
        for (Eigen::Index n = 0; n < d; ++n) {
            z[n] *= rot[n];
            sum += z[n];
        }
        k[t] = std::norm(sum);
    }
    return k;
}

std::vector<double> sff_direct_trace(const Matrix& u, long t_max) {
    if (t_max < 0) throw std::invalid_argument("sff_direct_trace: t_max must be >= 0");
    const double d = static_cast<double>(u.rows());
    std::vector<double> k(t_max + 1);
    k[0] = d * d;
    Matrix power = Matrix::Identity(u.rows(), u.cols());
    for (long t = 1; t <= t_max; ++t) {
        power = power * u;
        k[t] = std::norm(power.trace());
    }
    return k;
}

namespace {

struct SampleOutcome {
    std::vector<double> k;
    bool ok = false;
    double residual = 0.0;
    double modulus_deviation = 0.0;
    double trace_mismatch = 0.0;
    double unitarity = -1.0;
};

SampleOutcome run_one_sample(const UnitaryBuilder& build, std::uint64_t index, int d,
                             const MonteCarloOptions& opts) {
    SampleOutcome out;
    Matrix u = build(index);
    if (u.rows() != d || u.cols() != d) throw std::invalid_argument("builder returned wrong dimension");
    if (index == 0) out.unitarity = unitarity_error(u);
    Complex tr = u.trace();
    EigenphaseSet phases;
    try {
        phases = unitary_eigenphases(u);
    } catch (const NumericalError&) {
        return out;  // recorded as a failed sample
    }
    Complex rec = 0.0;
    for (Eigen::Index n = 0; n < phases.phases.size(); ++n)
        rec += std::polar(1.0, phases.phases(n));
    out.residual = phases.max_residual;
    out.modulus_deviation = phases.max_modulus_deviation;
    out.trace_mismatch = std::abs(rec - tr);
    if (out.residual > opts.residual_tol || out.modulus_deviation > opts.modulus_tol ||
        out.trace_mismatch > opts.trace_tol * d) {
        return out;
    }
    out.k = sff_from_phases(phases.phases, opts.t_max);
    out.ok = true;
    return out;
}

// Index-ordered Welford accumulation shared by both execution paths.
struct Accumulator {
    std::vector<double> mean, m2;
    long n = 0;

    explicit Accumulator(long t_max) : mean(t_max + 1, 0.0), m2(t_max + 1, 0.0) {}

    void add(const std::vector<double>& k) {
        ++n;
        for (size_t t = 0; t < k.size(); ++t) {
            double delta = k[t] - mean[t];
            mean[t] += delta / n;
            m2[t] += delta * (k[t] - mean[t]);
        }
    }
};

void merge_outcome(const SampleOutcome& s, Accumulator& acc, MonteCarloStats& stats) {
    stats.max_residual = std::max(stats.max_residual, s.residual);
    stats.max_modulus_deviation = std::max(stats.max_modulus_deviation, s.modulus_deviation);
    stats.max_trace_mismatch = std::max(stats.max_trace_mismatch, s.trace_mismatch);
    if (s.unitarity >= 0.0) stats.first_sample_unitarity = s.unitarity;
    if (s.ok)
        acc.add(s.k);
    else
        ++stats.failures;
}

SffCurve finish(const Accumulator& acc, const MonteCarloStats& stats, int d,
                const MonteCarloOptions& opts) {
    if (stats.failures > opts.max_failure_fraction * opts.n_samples) {
        throw NumericalError("monte_carlo_sff: " + std::to_string(stats.failures) + " of " +
                             std::to_string(opts.n_samples) + " samples failed validity checks");
    }
    SffCurve curve;
    curve.d = d;
    curve.n_samples = acc.n;
    curve.failures = stats.failures;
    curve.t.resize(opts.t_max + 1);
    for (long t = 0; t <= opts.t_max; ++t) curve.t[t] = t;
    curve.mean = acc.mean;
    curve.stderr_.resize(opts.t_max + 1, 0.0);
    if (acc.n > 1) {
        for (long t = 0; t <= opts.t_max; ++t)
            curve.stderr_[t] = std::sqrt(acc.m2[t] / (acc.n - 1) / acc.n);
    }
    return curve;
}

void check_options(const MonteCarloOptions& opts) {
    if (opts.n_samples < 2) throw std::invalid_argument("monte_carlo_sff: n_samples must be >= 2");
    if (opts.t_max < 0) throw std::invalid_argument("monte_carlo_sff: t_max must be >= 0");
}

}  // namespace

SffCurve monte_carlo_sff(const UnitaryBuilder& build, int d, const MonteCarloOptions& opts,
                         MonteCarloStats* stats_out) {
    check_options(opts);
    int workers = opts.workers > 0 ? opts.workers
                                   : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    MonteCarloStats stats;
    Accumulator acc(opts.t_max);
    constexpr long kChunk = 64;
    std::vector<SampleOutcome> results(kChunk);
    for (long start = 0; start < opts.n_samples; start += kChunk) {
        const long count = std::min(kChunk, opts.n_samples - start);
#pragma omp parallel for num_threads(workers) schedule(dynamic)
        for (long i = 0; i < count; ++i) {
            results[i] = run_one_sample(build, static_cast<std::uint64_t>(start + i), d, opts);
        }
        for (long i = 0; i < count; ++i) merge_outcome(results[i], acc, stats);
    }
    if (stats_out) *stats_out = stats;
    return finish(acc, stats, d, opts);
}

SffCurve monte_carlo_sff_serial(const UnitaryBuilder& build, int d, const MonteCarloOptions& opts,
                                MonteCarloStats* stats_out) {
    check_options(opts);
    MonteCarloStats stats;
    Accumulator acc(opts.t_max);
    for (long i = 0; i < opts.n_samples; ++i) {
        SampleOutcome s = run_one_sample(build, static_cast<std::uint64_t>(i), d, opts);
        merge_outcome(s, acc, stats);
    }
    if (stats_out) *stats_out = stats;
    return finish(acc, stats, d, opts);
}

}  // namespace sff
