#include "hybridom/bistability.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "hybridom/error.hpp"

namespace hybridom {

namespace {

constexpr double kImagTolerance = 1e-9;
constexpr double kDedupTolerance = 1e-7;
constexpr double kOnsetTolerance = 1e-12;
constexpr double kCandidateResidual = 1e-8;

// Scaled cubic in x = χ² n with rates in units of ω_m:
//   g(x) = x (k² + (Δ − x)²) − y,  y = χ² |ε|² / ω_m².
struct ScaledCubic {
    double k;
    double delta;
    double y;

    [[nodiscard]] double value(double x) const {
        const double d = delta - x;
        return x * (k * k + d * d) - y;
    }
    [[nodiscard]] double slope(double x) const {
        return k * k + delta * delta - 4.0 * delta * x + 3.0 * x * x;
    }
};

std::vector<double> real_positive_roots(const ScaledCubic& c) {
    // companion matrix of x³ + a2 x² + a1 x + a0
    const double a2 = -2.0 * c.delta;
    const double a1 = c.k * c.k + c.delta * c.delta;
    const double a0 = -c.y;
    Eigen::Matrix3d companion;
    companion << 0.0, 0.0, -a0,
                 1.0, 0.0, -a1,
                 0.0, 1.0, -a2;
    Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, false);
    std::vector<double> out;
    for (const auto& z : solver.eigenvalues()) {
        if (std::abs(z.imag()) < kImagTolerance * std::max(1.0, std::abs(z.real())) && z.real() > 0.0) {
            out.push_back(z.real());
        }
    }
    return out;
}

double polish(const ScaledCubic& c, double x) {
    double r = std::abs(c.value(x));
    for (int it = 0; it < 8; ++it) {
        const double s = c.slope(x);
        if (s == 0.0) break;
        const double next = x - c.value(x) / s;
        const double rn = std::abs(c.value(next));
        // at least two steps, then only while the residual keeps improving
        if (!(next > 0.0) || (it >= 2 && rn >= r)) break;
        const double step = std::abs(next - x);
        x = next;
        r = rn;
        if (step <= 1e-16 * x) break;
    }
    return x;
}

void check_inputs(const EffectiveCavityResponse& resp, double chi, double omega_m, double eps) {
    if (!std::isfinite(resp.k_new) || !std::isfinite(resp.delta_new) || !std::isfinite(chi) ||
        !std::isfinite(omega_m) || !std::isfinite(eps)) {
        throw Error(ErrorKind::InvalidParameter, "steady-state coefficients are not finite");
    }
    if (!(resp.k_new > 0.0)) throw Error(ErrorKind::InvalidParameter, "k_new must be > 0");
    if (chi < 0.0) throw Error(ErrorKind::InvalidParameter, "chi must be >= 0");
    if (eps < 0.0) throw Error(ErrorKind::InvalidParameter, "drive amplitude must be >= 0");
    if (!(omega_m > 0.0)) throw Error(ErrorKind::InvalidParameter, "omega_m must be > 0");
}

SteadyStateRoot make_root(const EffectiveCavityResponse& resp, double chi, double omega_m, double eps,
                          double n) {
    SteadyStateRoot r;
    r.n = n;
    const double detuning = resp.delta_new - omega_m * chi * chi * n;
    r.a_field = eps / std::complex<double>(resp.k_new, detuning);
    r.Q = chi * n;
    r.P = 0.0;
    const double lhs = n * (resp.k_new * resp.k_new + detuning * detuning);
    const double eps2 = eps * eps;
    r.residual = eps2 > 0.0 ? std::abs(lhs - eps2) / eps2 : std::abs(lhs);
    const double s = omega_m * chi * chi;
    r.slope = resp.k_new * resp.k_new + resp.delta_new * resp.delta_new - 4.0 * resp.delta_new * s * n +
              3.0 * s * s * n * n;
    r.stability = r.slope < 0.0 ? Stability::Unstable : Stability::Stable;
    return r;
}

}  // namespace

SteadyStateSolution steady_state_roots(const EffectiveCavityResponse& resp, double chi, double omega_m,
                                       double eps) {
    check_inputs(resp, chi, omega_m, eps);
    SteadyStateSolution sol;
    if (eps == 0.0) {
        sol.roots.push_back(make_root(resp, chi, omega_m, eps, 0.0));
        return sol;
    }
    if (chi == 0.0) {
        const double n = eps * eps / (resp.k_new * resp.k_new + resp.delta_new * resp.delta_new);
        sol.roots.push_back(make_root(resp, chi, omega_m, eps, n));
        return sol;
    }

    const double eps_scaled = eps / omega_m;
    const ScaledCubic cubic{resp.k_new / omega_m, resp.delta_new / omega_m, chi * chi * eps_scaled * eps_scaled};
    std::vector<double> xs;
    for (double x : real_positive_roots(cubic)) {
        x = polish(cubic, x);
        if (x > 0.0 && std::abs(cubic.value(x)) <= kCandidateResidual * cubic.y) xs.push_back(x);
    }
    // A root far below |Δ| is lost in the companion eigenvalues' absolute
    // rounding; recover it from the weak-drive limit when nothing covers it.
    const double seed = polish(cubic, cubic.y / (cubic.k * cubic.k + cubic.delta * cubic.delta));
    const bool covered = std::any_of(xs.begin(), xs.end(), [&](double x) { return x <= 2.0 * seed; });
    if (!covered && seed > 0.0 && std::abs(cubic.value(seed)) <= kCandidateResidual * cubic.y) {
        xs.push_back(seed);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double a, double b) { return std::abs(a - b) <= kDedupTolerance * std::max(a, b); }),
             xs.end());
    if (xs.empty()) {
        throw Error(ErrorKind::InvalidParameter, "intensity cubic has no positive real root");
    }

    for (double x : xs) sol.roots.push_back(make_root(resp, chi, omega_m, eps, x / (chi * chi)));
    return sol;
}

double bistability_discriminant(const EffectiveCavityResponse& resp) {
    return resp.delta_new * resp.delta_new - 3.0 * resp.k_new * resp.k_new;
}

double expanded_bistability_discriminant(double k_A, double delta_A, double J, double gamma_at,
                                         double delta_at, double A1, double A2) {
    if (J == 0.0) return delta_A * delta_A - 3.0 * k_A * k_A;
    const double den = A1 * A1 + A2 * A2;
    const double J2 = J * J;
    const double J4 = J2 * J2;
    const double detuning_term = delta_at * A1 - gamma_at * A2;
    const double decay_term = gamma_at * A1 + delta_at * A2;
    return delta_A * delta_A - 3.0 * k_A * k_A + J4 / (den * den) * detuning_term * detuning_term -
           3.0 * J4 / (den * den) * decay_term * decay_term - 6.0 * k_A * J2 / den * decay_term +
           2.0 * delta_A * J2 / den * detuning_term;
}

double expanded_bistability_discriminant(const PhysicalParams& p) {
    const auto resp = effective_response(p);
    return expanded_bistability_discriminant(p.optical_decay_A, p.detuning_A, p.cavity_coupling, p.atom_decay,
                                             p.atom_detuning, resp.A1, resp.A2);
}

bool is_bistable(const EffectiveCavityResponse& resp) {
    return bistability_discriminant(resp) > 0.0 && resp.delta_new > 0.0;
}

bool at_bistability_onset(const EffectiveCavityResponse& resp) {
    return resp.delta_new > 0.0 &&
           std::abs(bistability_discriminant(resp)) <= kOnsetTolerance * resp.delta_new * resp.delta_new;
}

std::optional<TurningPoints> turning_points(const EffectiveCavityResponse& resp, double chi, double omega_m) {
    if (!(chi > 0.0) || !(omega_m > 0.0)) return std::nullopt;
    const double scale = 3.0 * omega_m * chi * chi;
    if (at_bistability_onset(resp)) {
        const double n = 2.0 * resp.delta_new / scale;
        return TurningPoints{n, n};
    }
    if (!is_bistable(resp)) return std::nullopt;
    const double root = std::sqrt(bistability_discriminant(resp));
    return TurningPoints{(2.0 * resp.delta_new - root) / scale, (2.0 * resp.delta_new + root) / scale};
}

double power_for_photons(const PhysicalParams& p, const EffectiveCavityResponse& resp, double chi,
                         double photons) {
    const double detuning = resp.delta_new - p.mech_freq * chi * chi * photons;
    return constants::hbar * p.omega_L() / (2.0 * p.optical_decay_A) * photons *
           (resp.k_new * resp.k_new + detuning * detuning);
}

Threshold threshold_power(const PhysicalParams& p) {
    p.validate();
    const auto resp = effective_response(p);
    const double chi = scaled_coupling(p);
    const auto tp = turning_points(resp, chi, p.mech_freq);
    if (!tp) throw Error(ErrorKind::NoThreshold, "parameters are not bistable; no threshold power");
    return Threshold{power_for_photons(p, resp, chi, tp->n_minus), tp->n_minus};
}

BistableWindow bistable_window(const PhysicalParams& p) {
    p.validate();
    const auto resp = effective_response(p);
    const double chi = scaled_coupling(p);
    const auto tp = turning_points(resp, chi, p.mech_freq);
    if (!tp) throw Error(ErrorKind::NoWindow, "parameters are not bistable; no bistable window");
    BistableWindow w;
    w.n_at_low = tp->n_plus;
    w.n_at_high = tp->n_minus;
    w.P_low = power_for_photons(p, resp, chi, tp->n_plus);
    w.P_high = power_for_photons(p, resp, chi, tp->n_minus);
    return w;
}

}  // namespace hybridom
