#include "sff/theory.hpp"

#include <cmath>

namespace sff {

namespace {

// (1/d) sum_{k=1}^{d-1} (C d sin(pi k/d))^{-x}, the normalized peak sum of the
// Gaussian-approximation SFF at integer tau.
double gaussian_peak_sum(int d, double x, double c) {
    double sum = 0.0;
    for (int k = 1; k < d; ++k) {
        double arg = c * d * std::sin(kPi * k / d);
        sum += std::pow(arg, -x);
    }
    return sum / d;
}

}  // namespace

double cbe_gaussian_sff(int d, double beta, double t, double c) {
    if (d < 2) throw std::invalid_argument("cbe_gaussian_sff: d must be >= 2");
    if (!(beta > 0.0)) throw std::invalid_argument("cbe_gaussian_sff: beta must be positive");
    if (t < 0.0) throw std::invalid_argument("cbe_gaussian_sff: t must be >= 0");
    const double a = 4.0 * t * t / (beta * static_cast<double>(d) * d);
    double sum = 0.0;
    for (int k = 1; k < d; ++k) {
        double weight = std::pow(c * d * std::sin(kPi * k / d), -a);
        sum += std::cos(2.0 * kPi * k * t / d) * weight;
    }
    return d + d * sum;
}

bool cbe_gaussian_in_validity_range(int d, double beta, double t) {
    return t / d <= beta;
}

DebyeWallerResult debye_waller(int d, double beta, double tau, double c) {
    if (d < 2) throw std::invalid_argument("debye_waller: d must be >= 2");
    if (!(beta > 0.0)) throw std::invalid_argument("debye_waller: beta must be positive");
    if (!(tau > 0.0)) throw std::invalid_argument("debye_waller: tau must be positive");
    const double x = 4.0 * tau * tau / beta;
    DebyeWallerResult out;
    out.tau = tau;
    if (x < 0.1) {
        out.regime = DwRegime::small;
        out.value = std::pow(static_cast<double>(d), -x);
    } else if (x > 10.0) {
        out.regime = DwRegime::large;
        out.value = beta / (tau * tau * d) * std::pow(c * kPi, -x);
    } else {
        out.regime = DwRegime::crossover;
        out.value = gaussian_peak_sum(d, x, c);
    }
    out.w = -0.5 * std::log(out.value);
    return out;
}

double singularity_order(double beta, double tau) {
    if (!(beta > 0.0)) throw std::invalid_argument("singularity_order: beta must be positive");
    return 4.0 * tau * tau / beta - 1.0;
}

double perm_sff_prediction(int d, double g, const std::vector<int>& cycles, long t) {
    if (g < 0.0) throw std::invalid_argument("perm_sff_prediction: g must be >= 0");
    long total = 0;
    for (int len : cycles) total += len;
    if (total != d) throw std::invalid_argument("perm_sff_prediction: cycle lengths must sum to d");
    if (t == 0) return static_cast<double>(d) * d;
    // sin(pi t)/sin(pi t/d_n) at integer t is d_n when d_n | t and 0 otherwise.
    double crystal = 0.0;
    for (int len : cycles)
        if (t % len == 0) crystal += len;
    const double envelope = std::exp(-g * g * static_cast<double>(t) * t / d);
    return d - d * envelope + crystal * crystal * envelope;
}

double lax_sff_prediction(double g, double tau) {
    if (!(g > 0.0 && g < 1.0)) throw std::invalid_argument("lax_sff_prediction: g must be in (0, 1)");
    if (!(tau > 0.0)) throw std::invalid_argument("lax_sff_prediction: tau must be positive");
    Complex den = std::polar(1.0, 2.0 * kPi * g * tau) *
                      Complex(1.0, 2.0 * kPi * (1.0 - g) * tau) -
                  1.0;
    if (std::abs(den) < 1e-12)
        throw NumericalError("lax_sff_prediction: singular point (g -> 1 at integer tau)");
    return 1.0 + 2.0 * (1.0 / den).real();
}

double reference_sff(RefKind kind, int d, long t) {
    if (t < 0) throw std::invalid_argument("reference_sff: t must be >= 0");
    const double dd = static_cast<double>(d);
    if (t == 0) return dd * dd;
    switch (kind) {
        case RefKind::cue:
            return std::min(static_cast<double>(t), dd);
        case RefKind::poisson:
            return dd;
    }
    return 0.0;
}

TimeScales time_scales(ModelKind model, int d, double beta_or_g) {
    TimeScales out;
    out.heisenberg = static_cast<double>(d);
    switch (model) {
        case ModelKind::cbe: {
            double beta = beta_or_g;
            out.plateau = d * std::sqrt(beta / 4.0);
            break;
        }
        case ModelKind::perm: {
            double g = beta_or_g;
            if (g > 0.0) {
                out.plateau = std::sqrt(d * std::log(static_cast<double>(d))) / g;
                out.thouless = std::sqrt(static_cast<double>(d)) / g;
            }
            break;
        }
        case ModelKind::lax: {
            double g = beta_or_g;
            if (g > 0.0)
                out.note = "late-time oscillation period d/g = " + std::to_string(d / g);
            break;
        }
    }
    return out;
}

const char* theory_kind_name(TheoryKind kind) {
    switch (kind) {
        case TheoryKind::cbe_gaussian: return "cbe_gaussian";
        case TheoryKind::dw_envelope: return "dw_envelope";
        case TheoryKind::perm_cycles: return "perm_cycles";
        case TheoryKind::lax: return "lax";
        case TheoryKind::cue: return "cue";
        case TheoryKind::poisson: return "poisson";
    }
    return "?";
}

std::optional<TheoryKind> parse_theory_kind(const std::string& name) {
    for (TheoryKind k : {TheoryKind::cbe_gaussian, TheoryKind::dw_envelope, TheoryKind::perm_cycles,
                         TheoryKind::lax, TheoryKind::cue, TheoryKind::poisson}) {
        if (name == theory_kind_name(k)) return k;
    }
    return std::nullopt;
}

}  // namespace sff
