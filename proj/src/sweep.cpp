#include "hybridom/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hybridom/error.hpp"
#include "parallel.hpp"

namespace hybridom {

namespace {

constexpr double kJumpBisectionTolerance = 1e-4;

std::vector<RootSample> to_samples(const SteadyStateSolution& sol) {
    std::vector<RootSample> out;
    out.reserve(sol.size());
    for (const auto& r : sol.roots) out.push_back({r.n, r.stability});
    return out;
}

// Photon numbers span decades, so branches are matched in log space.
double branch_distance(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::abs(std::log(a) - std::log(b));
    return std::abs(a - b);
}

std::size_t closest(const std::vector<RootSample>& roots, double n, bool stable_only) {
    std::size_t best = roots.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (stable_only && roots[i].stability != Stability::Stable) continue;
        const double d = branch_distance(roots[i].n, n);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

std::size_t root_count(const EffectiveCavityResponse& resp, double chi, double omega_m,
                       const PhysicalParams& p, double power) {
    PhysicalParams q = p;
    q.input_power = power;
    return steady_state_roots(resp, chi, omega_m, drive_amplitude(q)).size();
}

// Bisection on root count between two powers whose counts differ.
double locate_count_change(const EffectiveCavityResponse& resp, double chi, const PhysicalParams& p,
                           double a, double b) {
    const std::size_t count_a = root_count(resp, chi, p.mech_freq, p, a);
    for (int it = 0; it < 200; ++it) {
        if (std::abs(b - a) <= kJumpBisectionTolerance * std::max(std::abs(a), std::abs(b))) break;
        const double mid = 0.5 * (a + b);
        if (root_count(resp, chi, p.mech_freq, p, mid) == count_a) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

void check_range(Range r, std::size_t n_points, const char* what) {
    if (n_points < 2) throw Error(ErrorKind::InvalidParameter, std::string(what) + ": need at least 2 points");
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.hi > r.lo)) {
        throw Error(ErrorKind::InvalidParameter, std::string(what) + ": empty or non-finite range");
    }
}

}  // namespace

std::string_view to_string(SweepDirection d) noexcept {
    switch (d) {
        case SweepDirection::Up: return "up";
        case SweepDirection::Down: return "down";
        case SweepDirection::None: break;
    }
    return "none";
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    if (n > 1) out.back() = hi;
    return out;
}

SweepTrace detuning_sweep(const PhysicalParams& p, Range detuning_A, std::size_t n_points) {
    check_range(detuning_A, n_points, "detuning sweep");
    p.validate();
    SweepTrace trace;
    trace.control_name = "detuning_A";
    trace.direction = SweepDirection::None;
    trace.chi = scaled_coupling(p);
    const double eps = drive_amplitude(p);
    const auto grid = linspace(detuning_A.lo, detuning_A.hi, n_points);
    trace.samples.resize(n_points);
    detail::parallel_for(n_points, [&](std::size_t i) {
        PhysicalParams q = p;
        q.detuning_A = grid[i];
        const auto resp = effective_response(q);
        trace.samples[i].control_value = grid[i];
        trace.samples[i].roots = to_samples(steady_state_roots(resp, trace.chi, q.mech_freq, eps));
    });
    return trace;
}

SweepTrace power_sweep(const PhysicalParams& p, Range power, std::size_t n_points, SweepDirection direction) {
    check_range(power, n_points, "power sweep");
    if (power.lo < 0.0) throw Error(ErrorKind::InvalidParameter, "power sweep: powers must be >= 0");
    if (direction == SweepDirection::None) {
        throw Error(ErrorKind::InvalidParameter, "power sweep: direction must be up or down");
    }
    p.validate();

    SweepTrace trace;
    trace.control_name = "power";
    trace.direction = direction;
    trace.chi = scaled_coupling(p);
    const auto resp = effective_response(p);

    auto grid = linspace(power.lo, power.hi, n_points);
    if (direction == SweepDirection::Down) std::reverse(grid.begin(), grid.end());

    trace.samples.resize(n_points);
    detail::parallel_for(n_points, [&](std::size_t i) {
        PhysicalParams q = p;
        q.input_power = grid[i];
        trace.samples[i].control_value = grid[i];
        trace.samples[i].roots = to_samples(steady_state_roots(resp, trace.chi, p.mech_freq, drive_amplitude(q)));
    });

    // Sequential continuation along the traversal order.
    auto& first = trace.samples.front();
    first.followed_n = direction == SweepDirection::Up ? first.roots.front().n : first.roots.back().n;
    for (std::size_t i = 1; i < n_points; ++i) {
        const auto& prev = trace.samples[i - 1];
        auto& cur = trace.samples[i];
        const double followed = *prev.followed_n;

        const std::size_t pick = closest(cur.roots, followed, true);
        cur.followed_n = cur.roots[pick].n;

        if (cur.roots.size() < prev.roots.size()) {
            // The surviving branch is whichever previous root the new one continues.
            const std::size_t survivor = closest(prev.roots, cur.roots[pick].n, false);
            const std::size_t was_on = closest(prev.roots, followed, false);
            if (survivor != was_on) {
                JumpEvent jump;
                jump.control_value = locate_count_change(resp, trace.chi, p, prev.control_value, cur.control_value);
                jump.from_n = followed;
                jump.to_n = *cur.followed_n;
                trace.jumps.push_back(jump);
            }
        }
    }
    return trace;
}

ThresholdMap threshold_map(const PhysicalParams& p, std::span<const double> delta_at_over_gamma,
                           std::span<const double> kC_over_omega_m) {
    if (delta_at_over_gamma.empty() || kC_over_omega_m.empty()) {
        throw Error(ErrorKind::InvalidParameter, "threshold map: axes must be non-empty");
    }
    p.validate();
    if (!(p.atom_decay > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "threshold map: atom_decay must be > 0 to scale the detuning axis");
    }
    ThresholdMap map;
    map.delta_at_over_gamma.assign(delta_at_over_gamma.begin(), delta_at_over_gamma.end());
    map.kC_over_omega_m.assign(kC_over_omega_m.begin(), kC_over_omega_m.end());
    const std::size_t cols = map.kC_over_omega_m.size();
    map.cells.resize(map.delta_at_over_gamma.size() * cols);
    detail::parallel_for(map.cells.size(), [&](std::size_t idx) {
        PhysicalParams q = p;
        q.atom_detuning = map.delta_at_over_gamma[idx / cols] * p.atom_decay;
        q.optical_decay_C = map.kC_over_omega_m[idx % cols] * p.mech_freq;
        if (is_bistable(effective_response(q))) map.cells[idx] = threshold_power(q).power;
    });
    return map;
}

}  // namespace hybridom
