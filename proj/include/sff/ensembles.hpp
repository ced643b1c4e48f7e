#pragma once

#include <optional>
#include <vector>

#include "sff/rng.hpp"
#include "sff/types.hpp"

namespace sff {

// ---------------------------------------------------------------------------
// Circular beta ensemble via the random-walk (CMV-type) construction
// ---------------------------------------------------------------------------

struct CbeParams {
    int d = 0;        // even, >= 2
    double beta = 0;  // > 0
};

// The scattering data of one sample: d-1 coefficients on the open unit disk
// plus the phase of the final diagonal block.
struct CbeCoefficients {
    std::vector<Complex> alphas;
    double last_phase = 0.0;

    int dim() const { return static_cast<int>(alphas.size()) + 1; }
};

// alpha_n ~ (1 - |alpha|^2)^(s_n - 1) with s_n = beta (d - 1 - n) / 2,
// last_phase uniform in (-pi, pi].
CbeCoefficients sample_cbe_coefficients(int d, double beta, RandomStream& stream);

// The 2x2 scattering blocks: block n < d-1 mixes the internal states with
// amplitude alpha_n, block d-1 is diag(e^{i phi}, 1).
std::vector<Eigen::Matrix2cd> cbe_scattering_blocks(const CbeCoefficients& coeffs);

// U = S L S^dag M on basis |n>|-> -> 2n, |n>|+> -> 2n+1. Rejects odd d.
Matrix build_cbe_unitary(const CbeParams& params, RandomStream& stream);
Matrix build_cbe_from_coefficients(const CbeCoefficients& coeffs);

// Same operator assembled as an N-qubit circuit: cyclic increment plus two
// quantum multiplexers, with identity blocks padding 2^N > d. Restricted to
// the first d basis states it reproduces build_cbe_from_coefficients.
Matrix build_walk_multiplexer_unitary(const CbeCoefficients& coeffs, int n_qubits);

// Two-layer brickwork of number-conserving two-qubit gates on 2l qubits,
// projected onto the one-particle sector (l = d/2 <= 5).
Matrix build_brickwork_one_particle(const CbeCoefficients& coeffs);
// The full 4^l-dimensional brickwork circuit, for structure tests.
Matrix build_brickwork_full(const CbeCoefficients& coeffs);

// ---------------------------------------------------------------------------
// Perturbed permutation circuit U = exp(-i g H) S
// ---------------------------------------------------------------------------

struct PermCircuitParams {
    Permutation pi;
    std::vector<double> phases;  // one per basis state, in (-pi, pi]
    double g = 0.0;              // in [0, pi/2]
};

// S|k> = e^{i phi_k} |pi(k)>
Matrix permutation_unitary(const Permutation& pi, const std::vector<double>& phases);

// exp(-i g H) S via Hermitian eigendecomposition of H; g = 0 returns S exactly.
Matrix build_perturbed_permutation(const PermCircuitParams& params, const Matrix& gue_h);

// ---------------------------------------------------------------------------
// Random Lax matrix ensemble
// ---------------------------------------------------------------------------

struct LaxParams {
    int d = 0;
    double g = 0.0;               // strictly in (0, 1)
    std::vector<double> momenta;  // d phases in (-pi, pi]
};

// U_{mn} = (1/d) e^{i p_m} (1 - e^{2 pi i g}) / (1 - e^{2 pi i (m-n+g)/d}).
Matrix build_lax_unitary(const LaxParams& params);
// g -> 1 limit: cyclic shift with random phases, U_{m,m+1 mod d} = e^{i p_m}.
Matrix build_lax_shift_limit(const std::vector<double>& momenta);
// g -> 0 limit: diag(e^{i p_m}).
Matrix build_lax_diagonal_limit(const std::vector<double>& momenta);

// ---------------------------------------------------------------------------
// Local staircase circuit (d = 2^L)
// ---------------------------------------------------------------------------

struct LocalStaircaseParams {
    int num_qubits = 0;   // L
    int block_qubits = 0; // n, 2 <= n <= L
    double g = 0.0;
    // One fixed permutation-with-phases per factor, listed in application
    // order (first entry acts first on the state).
    std::vector<Permutation> block_perms;
    std::vector<std::vector<double>> block_phases;
};

// Starting qubit of every factor in application order; blocks wrap
// periodically around the chain end.
std::vector<int> staircase_factor_positions(int num_qubits, int block_qubits);

// Draws the fixed permutation layer of the circuit.
LocalStaircaseParams sample_staircase_params(int num_qubits, int block_qubits, double g,
                                             RandomStream& stream);

// Redraws the permutation layer until the composed global permutation has the
// given cycle type. Throws NumericalError after max_attempts draws.
LocalStaircaseParams search_staircase_cycles(int num_qubits, int block_qubits, double g,
                                             const std::vector<int>& target_cycles,
                                             RandomStream& stream, int max_attempts = 200000);

// Composition of the permutation parts of all factors (no phases).
Permutation staircase_global_permutation(const LocalStaircaseParams& params);

// One sample: per-factor GUE blocks drawn from `stream`, permutation layer
// taken from params.
Matrix build_local_staircase(const LocalStaircaseParams& params, RandomStream& stream);

}  // namespace sff
