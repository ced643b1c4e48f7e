#pragma once

#include <vector>

#include "sff/spectral.hpp"
#include "sff/theory.hpp"
#include "sff/types.hpp"

namespace sff {

// Bragg-peak heights normalized to (K - d)/(d^2 - d), read off at exact
// integer multiples of the period.
struct PeakSeries {
    long d = 0;
    int period = 0;
    std::vector<long> times;      // period, 2*period, ...
    std::vector<double> heights;
    std::vector<double> stderrs;
};

PeakSeries extract_peaks(const SffCurve& curve, int period, int tau_max);

struct FitResult {
    double slope = 0.0;  // s in h(tau) ~ e^{-s tau^2}
    double slope_stderr = 0.0;
    double intercept = 0.0;  // ln h(0)
    double intercept_stderr = 0.0;
    double residual_norm = 0.0;  // sqrt of the weighted squared residual sum
    int dof = 0;
    std::vector<long> excluded_times;
    bool decay_detected = true;  // false when the fitted slope is negative
};

// Weighted linear regression of ln h on tau^2. Peaks with h <= 2 stderr are
// excluded as below the noise floor; fewer than 3 usable peaks is an error.
FitResult fit_debye_waller(const PeakSeries& peaks);

struct CurveComparison {
    double max_rel = 0.0;
    double mean_rel = 0.0;
    double max_rel_smoothed = 0.0;
    double mean_rel_smoothed = 0.0;
    long n_beyond_3stderr = 0;
    long n_points = 0;
    int window = 0;
};

// Pointwise and moving-average-smoothed relative deviation |num - th| / |th|
// over t in [t_lo, t_hi], plus the count of points farther than 3 stderr from
// the theory. window = 0 selects the default ceil(d/50).
CurveComparison compare_curves(const SffCurve& numeric, const TheoryCurve& theory, long t_lo,
                               long t_hi, int window = 0);

}  // namespace sff
