#pragma once

#include "sff/rng.hpp"
#include "sff/types.hpp"

namespace sff {

// von Mises draw with mean 0 and concentration kappa (Best-Fisher rejection).
double sample_von_mises(RandomStream& stream, double kappa);

struct McmcOptions {
    int burn_in_sweeps = 1000;
    int thin_sweeps = 10;
    double target_acceptance = 0.5;
};

// Metropolis chain for the circular log-gas at inverse temperature beta:
// P propto exp(beta * sum_{m<n} log|e^{iE_m} - e^{iE_n}|). Single-phase
// von-Mises proposals with the concentration adapted toward the target
// acceptance during burn-in, then frozen. Verification oracle only.
class CoulombGasSampler {
public:
    CoulombGasSampler(int d, double beta, RandomStream stream, McmcOptions opts = {});

    // Advances thin_sweeps sweeps and returns the current configuration,
    // phases in (-pi, pi], ascending.
    RealVector draw();

    double acceptance_rate() const;
    // Post-adaptation acceptance outside (0.1, 0.9).
    bool acceptance_warning() const;

private:
    void sweep();

    int d_;
    double beta_;
    RandomStream stream_;
    McmcOptions opts_;
    std::vector<double> phases_;
    double kappa_ = 1.0;
    long accepted_ = 0;
    long proposed_ = 0;
};

struct McmcDrawResult {
    RealVector phases;
    bool acceptance_warning = false;
    double acceptance_rate = 0.0;
};

// One decorrelated configuration after `sweeps` burn-in sweeps.
McmcDrawResult mcmc_coulomb_sample(int d, double beta, RandomStream& stream, int sweeps);

}  // namespace sff
