#pragma once

#include <cmath>
#include <random>

#include "hybridom/params.hpp"

namespace testing {

// Seeded draws for property tests; every suite uses its own fixed seed.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    bool coin() { return uniform(0.0, 1.0) < 0.5; }

private:
    std::mt19937_64 rng_;
};

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Bare optomechanical cavity reference set, angular reading of ω_m.
inline hybridom::PhysicalParams single_cavity_params() {
    hybridom::PhysicalParams p;
    p.cavity_length = 1e-3;
    p.mirror_mass = 1e-11;
    p.laser_wavelength = 794.98e-9;
    p.mech_freq = 1e7;
    p.mech_quality = 1e7;
    p.optical_decay_A = 0.1 * p.mech_freq;
    p.detuning_A = p.mech_freq;
    p.input_power = 7e-6;
    return p;
}

inline hybridom::PhysicalParams feedback_params() {
    auto p = single_cavity_params();
    const double two_pi = 2.0 * hybridom::constants::pi;
    p.cavity_coupling = p.mech_freq;
    p.atom_coupling = two_pi * 1e3;
    p.optical_decay_C = 0.1 * p.mech_freq;
    p.atom_number = 1e8;
    p.atom_decay = two_pi * 2.875e6;
    p.detuning_C = p.mech_freq;
    p.atom_detuning = 0.0;
    p.input_power = 2e-5;
    return p;
}

}  // namespace testing
