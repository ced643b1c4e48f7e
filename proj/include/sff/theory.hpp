#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sff/types.hpp"

namespace sff {

// Constant inside the Gaussian-approximation pair correlation; overridable
// through the config for sensitivity tests.
inline constexpr double kCoulombC = 3.6;

// Gaussian-approximation SFF of the circular beta ensemble:
// K(t) = d + d sum_{k=1}^{d-1} cos(2 pi k t / d) |C d sin(pi k / d)|^{-4 t^2 / (beta d^2)}.
// The complex sum is symmetric under k <-> d-k at integer t, so the real form
// is evaluated directly.
double cbe_gaussian_sff(int d, double beta, double t, double c = kCoulombC);

// The approximation is derived for t/d well below beta.
bool cbe_gaussian_in_validity_range(int d, double beta, double t);

enum class DwRegime { small, crossover, large };

struct DebyeWallerResult {
    double tau = 0.0;
    DwRegime regime = DwRegime::small;
    double value = 0.0;  // e^{-2W}
    double w = 0.0;      // W
};

// Peak suppression factor e^{-2W} at peak index tau, keyed to x = 4 tau^2 / beta:
// x < 0.1 -> d^{-x}; x > 10 -> (beta / (tau^2 d)) (C pi)^{-x}; in between the
// peak sum of the Gaussian-approximation SFF is evaluated directly.
DebyeWallerResult debye_waller(int d, double beta, double tau, double c = kCoulombC);

// Order of the SFF singularity at peak tau: gamma = 4 tau^2 / beta - 1
// (valid for tau well below beta).
double singularity_order(double beta, double tau);

// Cycle-resolved SFF prediction of the perturbed permutation model at integer
// t: K = d - d e^{-g^2 t^2 / d} + (sum_n d_n [t mod d_n = 0])^2 e^{-g^2 t^2 / d}.
double perm_sff_prediction(int d, double g, const std::vector<int>& cycles, long t);

// Exact large-d SFF of the Lax ensemble, returned as K/d:
// 1 + 2 Re{ 1 / (e^{2 pi i g tau} [1 + 2 pi i (1-g) tau] - 1) }.
double lax_sff_prediction(double g, double tau);

enum class RefKind { cue, poisson };
double reference_sff(RefKind kind, int d, long t);

enum class ModelKind { cbe, perm, lax };

struct TimeScales {
    double heisenberg = 0.0;
    std::optional<double> plateau;
    std::optional<double> thouless;
    std::string note;
};

// t_H = d for all models; t_* = d sqrt(beta/4) (cbe), sqrt(d log d)/g (perm);
// t_Th = sqrt(d)/g (perm). The Lax late-time oscillation period d/g goes into
// the note.
TimeScales time_scales(ModelKind model, int d, double beta_or_g);

enum class TheoryKind { cbe_gaussian, dw_envelope, perm_cycles, lax, cue, poisson };

struct TheoryCurve {
    TheoryKind kind;
    std::vector<long> t;
    std::vector<double> k;
};

const char* theory_kind_name(TheoryKind kind);
std::optional<TheoryKind> parse_theory_kind(const std::string& name);

}  // namespace sff
