#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sff/types.hpp"

namespace sff {

enum class EnsembleKind { cbe, perm, perm_local, lax };

const char* ensemble_name(EnsembleKind kind);

// One experiment = one config. Parsed from `key = value` text with '#'
// comments; serialization round-trips losslessly.
struct ExperimentConfig {
    EnsembleKind ensemble = EnsembleKind::cbe;
    int d = 0;          // cbe, perm, lax
    int L = 0;          // perm_local: qubit count (d = 2^L)
    int block = 0;      // perm_local: qubits per block
    double beta = 0.0;  // cbe
    double g = 0.0;     // perm, perm_local, lax
    // "random" or "cycles:a,b,..."; resolved cycle lengths in `cycles`.
    std::string permutation = "random";
    std::vector<int> cycles;
    std::uint64_t perm_seed = 0;
    bool has_perm_seed = false;
    long n_samples = 0;
    std::uint64_t master_seed = 0;
    long t_max = 0;
    int workers = 0;  // 0 = hardware concurrency
    std::string out = "out";
    std::vector<std::string> theory;
    double coulomb_c = 3.6;

    int dimension() const { return ensemble == EnsembleKind::perm_local ? (1 << L) : d; }

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Canonical key = value form (only the keys relevant to the ensemble).
std::string serialize_config(const ExperimentConfig& config);

// Throws ConfigError naming the offending field.
void validate_config(const ExperimentConfig& config);

}  // namespace sff
