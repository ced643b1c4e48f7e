#include "sff/mcmc.hpp"

#include <algorithm>
#include <cmath>

namespace sff {

double sample_von_mises(RandomStream& stream, double kappa) {
    if (kappa < 1e-8) return stream.uniform_phase();
    const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
    const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
    const double r = (1.0 + rho * rho) / (2.0 * rho);
    for (;;) {
        double z = std::cos(kPi * stream.uniform01());
        double f = (1.0 + r * z) / (r + z);
        double c = kappa * (r - f);
        double u2 = stream.uniform01_open_low();
        if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
            double angle = std::acos(std::clamp(f, -1.0, 1.0));
            return stream.uniform01() < 0.5 ? -angle : angle;
        }
    }
}

CoulombGasSampler::CoulombGasSampler(int d, double beta, RandomStream stream, McmcOptions opts)
    : d_(d), beta_(beta), stream_(std::move(stream)), opts_(opts) {
    if (d < 2) throw std::invalid_argument("mcmc: d must be >= 2");
    if (beta < 0) throw std::invalid_argument("mcmc: beta must be >= 0");
    phases_.resize(d);
    // Start from the equally spaced crystal; for small beta the chain
    // decorrelates immediately anyway.
    for (int n = 0; n < d; ++n) phases_[n] = wrap_phase(2.0 * kPi * n / d);
    // Natural fluctuation scale of the crystal sets the initial proposal width.
    double sigma = std::sqrt(2.0 * std::max(std::log(static_cast<double>(d)), 1.0) /
                             std::max(beta, 0.1)) / d;
    kappa_ = 1.0 / (sigma * sigma);
    const int adapt_interval = 20;
    long acc = 0;
    for (int s = 0; s < opts_.burn_in_sweeps; ++s) {
        long before = accepted_;
        sweep();
        acc += accepted_ - before;
        if ((s + 1) % adapt_interval == 0) {
            double rate = static_cast<double>(acc) / (adapt_interval * d_);
            // Too many acceptances -> widen the proposal (lower kappa).
            kappa_ *= std::exp(-4.0 * (rate - opts_.target_acceptance));
            kappa_ = std::clamp(kappa_, 1e-8, 1e14);
            acc = 0;
        }
    }
    accepted_ = 0;
    proposed_ = 0;
}

void CoulombGasSampler::sweep() {
    for (int i = 0; i < d_; ++i) {
        double delta = sample_von_mises(stream_, kappa_);
        double proposal = wrap_phase(phases_[i] + delta);
        double dh = 0.0;
        bool collision = false;
        for (int j = 0; j < d_; ++j) {
            if (j == i) continue;
            double new_gap = std::abs(std::sin(0.5 * (proposal - phases_[j])));
            if (new_gap == 0.0) {
                collision = true;
                break;
            }
            double old_gap = std::abs(std::sin(0.5 * (phases_[i] - phases_[j])));
            dh -= std::log(new_gap) - std::log(old_gap);
        }
        ++proposed_;
        if (collision) continue;
        if (dh <= 0.0 || stream_.uniform01() < std::exp(-beta_ * dh)) {
            phases_[i] = proposal;
            ++accepted_;
        }
    }
}

RealVector CoulombGasSampler::draw() {
    for (int s = 0; s < opts_.thin_sweeps; ++s) sweep();
    RealVector out(d_);
    std::vector<double> sorted = phases_;
    std::sort(sorted.begin(), sorted.end());
    for (int n = 0; n < d_; ++n) out(n) = sorted[n];
    return out;
}

double CoulombGasSampler::acceptance_rate() const {
    return proposed_ == 0 ? 0.0 : static_cast<double>(accepted_) / proposed_;
}

bool CoulombGasSampler::acceptance_warning() const {
    double r = acceptance_rate();
    return proposed_ > 0 && (r <= 0.1 || r >= 0.9);
}

McmcDrawResult mcmc_coulomb_sample(int d, double beta, RandomStream& stream, int sweeps) {
    McmcOptions opts;
    opts.burn_in_sweeps = sweeps;
    // The chain owns a sub-stream derived from the caller's stream, so repeated
    // calls advance the caller and produce fresh draws.
    RandomStream chain_stream(SeedSpec{stream.next_u64(), stream.next_u64()});
    CoulombGasSampler chain(d, beta, std::move(chain_stream), opts);
    McmcDrawResult out;
    out.phases = chain.draw();
    out.acceptance_rate = chain.acceptance_rate();
    out.acceptance_warning = chain.acceptance_warning();
    return out;
}

}  // namespace sff
