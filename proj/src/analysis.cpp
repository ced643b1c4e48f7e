#include "sff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace sff {

PeakSeries extract_peaks(const SffCurve& curve, int period, int tau_max) {
    if (period < 1) throw std::invalid_argument("extract_peaks: period must be >= 1");
    const long t_limit = curve.t.empty() ? -1 : curve.t.back();
    if (static_cast<long>(period) * tau_max > t_limit)
        throw std::invalid_argument("extract_peaks: period * tau_max exceeds the curve grid");
    PeakSeries out;
    out.d = curve.d;
    out.period = period;
    const double norm = static_cast<double>(curve.d) * curve.d - curve.d;
    for (int tau = 1; tau <= tau_max; ++tau) {
        long t = static_cast<long>(period) * tau;
        out.times.push_back(t);
        out.heights.push_back((curve.mean[t] - curve.d) / norm);
        out.stderrs.push_back(curve.stderr_[t] / norm);
    }
    return out;
}

FitResult fit_debye_waller(const PeakSeries& peaks) {
    FitResult fit;
    std::vector<double> x, y, w;
    for (size_t i = 0; i < peaks.heights.size(); ++i) {
        double h = peaks.heights[i];
        double se = peaks.stderrs[i];
        if (h <= 2.0 * se || h <= 0.0) {
            fit.excluded_times.push_back(peaks.times[i]);
            continue;
        }
        double tau = static_cast<double>(peaks.times[i]) / peaks.period;
        x.push_back(tau * tau);
        y.push_back(std::log(h));
        double sigma = std::max(se / h, 1e-12);
        w.push_back(1.0 / (sigma * sigma));
    }
    if (x.size() < 3)
        throw NumericalError("fit_debye_waller: fewer than 3 peaks above the noise floor");
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
        swxx += w[i] * x[i] * x[i];
        swxy += w[i] * x[i] * y[i];
    }
    const double det = sw * swxx - swx * swx;
    if (det <= 0.0) throw NumericalError("fit_debye_waller: degenerate design");
    const double b = (sw * swxy - swx * swy) / det;  // slope of ln h vs tau^2
    const double a = (swxx * swy - swx * swxy) / det;
    fit.slope = -b;
    fit.intercept = a;
    fit.slope_stderr = std::sqrt(sw / det);
    fit.intercept_stderr = std::sqrt(swxx / det);
    double chi2 = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - (a + b * x[i]);
        chi2 += w[i] * r * r;
    }
    fit.residual_norm = std::sqrt(chi2);
    fit.dof = static_cast<int>(x.size()) - 2;
    fit.decay_detected = fit.slope > 0.0;
    return fit;
}

namespace {

// Centered moving average with total window w, clipped at the range ends.
std::vector<double> smooth(const std::vector<double>& v, int w) {
    if (w <= 1) return v;
    const long n = static_cast<long>(v.size());
    const int half = w / 2;
    std::vector<double> out(n);
    for (long i = 0; i < n; ++i) {
        long lo = std::max(0l, i - half);
        long hi = std::min(n - 1, i + half);
        double s = 0;
        for (long j = lo; j <= hi; ++j) s += v[j];
        out[i] = s / (hi - lo + 1);
    }
    return out;
}

}  // namespace

CurveComparison compare_curves(const SffCurve& numeric, const TheoryCurve& theory, long t_lo,
                               long t_hi, int window) {
    std::unordered_map<long, size_t> theory_at;
    for (size_t i = 0; i < theory.t.size(); ++i) theory_at[theory.t[i]] = i;
    std::vector<double> num_vals, th_vals, errs;
    for (size_t i = 0; i < numeric.t.size(); ++i) {
        long t = numeric.t[i];
        if (t < t_lo || t > t_hi) continue;
        auto it = theory_at.find(t);
        if (it == theory_at.end()) continue;
        num_vals.push_back(numeric.mean[i]);
        th_vals.push_back(theory.k[it->second]);
        errs.push_back(numeric.stderr_[i]);
    }
    if (num_vals.empty()) throw std::invalid_argument("compare_curves: grids do not overlap on the range");
    CurveComparison out;
    out.n_points = static_cast<long>(num_vals.size());
    out.window = window > 0 ? window : static_cast<int>(std::ceil(numeric.d / 50.0));
    double sum_rel = 0;
    for (size_t i = 0; i < num_vals.size(); ++i) {
        if (th_vals[i] != 0.0) {
            double rel = std::abs(num_vals[i] - th_vals[i]) / std::abs(th_vals[i]);
            out.max_rel = std::max(out.max_rel, rel);
            sum_rel += rel;
        }
        if (std::abs(num_vals[i] - th_vals[i]) > 3.0 * errs[i]) ++out.n_beyond_3stderr;
    }
    out.mean_rel = sum_rel / num_vals.size();
    std::vector<double> num_s = smooth(num_vals, out.window);
    std::vector<double> th_s = smooth(th_vals, out.window);
    double sum_rel_s = 0;
    for (size_t i = 0; i < num_s.size(); ++i) {
        if (th_s[i] == 0.0) continue;
        double rel = std::abs(num_s[i] - th_s[i]) / std::abs(th_s[i]);
        out.max_rel_smoothed = std::max(out.max_rel_smoothed, rel);
        sum_rel_s += rel;
    }
    out.mean_rel_smoothed = sum_rel_s / num_s.size();
    return out;
}

}  // namespace sff
