#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "hybridom/params.hpp"

namespace hybridom {

enum class Stability { Stable, Unstable };

/// One real steady state of the intensity cubic
///   n [k_new² + (Δ_new − ω_m χ² n)²] = |ε_A|².
struct SteadyStateRoot {
    double n = 0.0;  // intracavity photon number |a_S|²
    Stability stability = Stability::Stable;
    std::complex<double> a_field;  // a_S
    double Q = 0.0;                // dimensionless mirror displacement, χ n
    double P = 0.0;                // mirror momentum, always zero at steady state
    double residual = 0.0;         // |cubic(n) − |ε|²| / |ε|²
    double slope = 0.0;            // d|ε|²/dn at the root
};

struct SteadyStateSolution {
    std::vector<SteadyStateRoot> roots;  // ascending in n

    [[nodiscard]] std::size_t size() const noexcept { return roots.size(); }
};

/// Photon numbers where d|ε|²/dn vanishes, n_minus ≤ n_plus.
struct TurningPoints {
    double n_minus = 0.0;
    double n_plus = 0.0;
};

struct Threshold {
    double power = 0.0;    // W
    double photons = 0.0;  // intracavity photon number at threshold
};

/// Drive powers bounding the three-root region. P_high is the fold reached
/// from n_minus and coincides with the threshold power.
struct BistableWindow {
    double P_low = 0.0;
    double P_high = 0.0;
    double n_at_low = 0.0;   // n_plus
    double n_at_high = 0.0;  // n_minus
};

/// All real non-negative roots, Newton-polished, ascending, with slope-based
/// stability labels. Rates are in rad/s (or any consistent unit shared by
/// `resp`, `omega_m` and `eps`).
SteadyStateSolution steady_state_roots(const EffectiveCavityResponse& resp, double chi, double omega_m,
                                       double eps);

std::optional<TurningPoints> turning_points(const EffectiveCavityResponse& resp, double chi,
                                            double omega_m);

/// Δ_new² − 3 k_new².
double bistability_discriminant(const EffectiveCavityResponse& resp);

/// The same discriminant expanded in the bare cavity and feedback parameters.
double expanded_bistability_discriminant(double k_A, double delta_A, double J, double gamma_at,
                                         double delta_at, double A1, double A2);
double expanded_bistability_discriminant(const PhysicalParams& p);

bool is_bistable(const EffectiveCavityResponse& resp);

/// Zero discriminant to 1e-12 relative with Δ_new > 0: the two folds coincide.
bool at_bistability_onset(const EffectiveCavityResponse& resp);

/// Input power that sustains `photons` intracavity photons.
double power_for_photons(const PhysicalParams& p, const EffectiveCavityResponse& resp, double chi,
                         double photons);

Threshold threshold_power(const PhysicalParams& p);
BistableWindow bistable_window(const PhysicalParams& p);

}  // namespace hybridom
