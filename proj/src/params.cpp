#include "hybridom/params.hpp"

#include <cmath>
#include <string>

#include "hybridom/error.hpp"

namespace hybridom {

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) {
        throw Error(ErrorKind::InvalidParameter, std::string(field) + " " + what);
    }
}

}  // namespace

std::string_view to_string(FreqConvention c) noexcept {
    return c == FreqConvention::Angular ? "angular" : "ordinary";
}

std::optional<FreqConvention> parse_freq_convention(std::string_view s) noexcept {
    if (s == "angular") return FreqConvention::Angular;
    if (s == "ordinary") return FreqConvention::Ordinary;
    return std::nullopt;
}

double PhysicalParams::omega_L() const {
    return laser_freq ? *laser_freq : 2.0 * constants::pi * constants::speed_of_light / laser_wavelength;
}

double PhysicalParams::omega_A() const { return cavity_freq ? *cavity_freq : omega_L(); }

double PhysicalParams::gamma_m() const {
    if (mech_damping) return *mech_damping;
    if (mech_quality) return mech_freq / *mech_quality;
    return std::nan("");
}

void PhysicalParams::validate() const {
    const double fields[] = {cavity_length, mirror_mass, laser_wavelength, mech_freq, optical_decay_A,
                             optical_decay_C, detuning_A, detuning_C, atom_detuning, atom_decay,
                             atom_coupling, atom_number, cavity_coupling, input_power};
    for (double v : fields) require(std::isfinite(v), "parameter", "must be finite");
    require(cavity_length > 0, "cavity_length", "must be > 0");
    require(mirror_mass > 0, "mirror_mass", "must be > 0");
    require(laser_wavelength > 0, "laser_wavelength", "must be > 0");
    require(mech_freq > 0, "mech_freq", "must be > 0");
    require(optical_decay_A > 0, "optical_decay_A", "must be > 0");
    require(optical_decay_C >= 0, "optical_decay_C", "must be >= 0");
    require(atom_decay >= 0, "atom_decay", "must be >= 0");
    require(atom_number >= 0, "atom_number", "must be >= 0");
    require(input_power >= 0, "input_power", "must be >= 0");
    require(mech_quality.has_value() || mech_damping.has_value(), "mech_quality",
            "or mech_damping is required");
    const double gm = gamma_m();
    require(std::isfinite(gm) && gm > 0, "mech_quality", "must give a finite positive gamma_m");
    if (laser_freq) require(std::isfinite(*laser_freq) && *laser_freq > 0, "laser_freq", "must be > 0");
    if (cavity_freq) require(std::isfinite(*cavity_freq) && *cavity_freq > 0, "cavity_freq", "must be > 0");
}

DimensionlessParams to_dimensionless(const PhysicalParams& p) {
    p.validate();
    const double w = p.mech_freq;
    DimensionlessParams d;
    d.unit_omega = w;
    d.convention = p.convention;
    d.gamma_m = p.gamma_m() / w;
    d.k_A = p.optical_decay_A / w;
    d.k_C = p.optical_decay_C / w;
    d.delta_A = p.detuning_A / w;
    d.delta_C = p.detuning_C / w;
    d.delta_at = p.atom_detuning / w;
    d.gamma_at = p.atom_decay / w;
    d.g_at = p.atom_coupling / w;
    d.J = p.cavity_coupling / w;
    d.atom_number = p.atom_number;
    d.omega_L = p.omega_L() / w;
    d.omega_A = p.omega_A() / w;
    const double chi = scaled_coupling(p);
    const double eps = drive_amplitude(p);
    d.coupling_sq = chi * chi;
    d.drive_sq = (eps / w) * (eps / w);
    d.cavity_length = p.cavity_length;
    d.mirror_mass = p.mirror_mass;
    d.laser_wavelength = p.laser_wavelength;
    d.mech_quality = p.mech_quality;
    return d;
}

PhysicalParams to_physical(const DimensionlessParams& d) {
    const double w = d.unit_omega;
    PhysicalParams p;
    p.convention = d.convention;
    p.cavity_length = d.cavity_length;
    p.mirror_mass = d.mirror_mass;
    p.laser_wavelength = d.laser_wavelength;
    p.mech_freq = w;
    p.mech_quality = d.mech_quality;
    p.mech_damping = d.gamma_m * w;
    p.optical_decay_A = d.k_A * w;
    p.optical_decay_C = d.k_C * w;
    p.detuning_A = d.delta_A * w;
    p.detuning_C = d.delta_C * w;
    p.atom_detuning = d.delta_at * w;
    p.atom_decay = d.gamma_at * w;
    p.atom_coupling = d.g_at * w;
    p.cavity_coupling = d.J * w;
    p.atom_number = d.atom_number;
    p.laser_freq = d.omega_L * w;
    p.cavity_freq = d.omega_A * w;
    // |ε|² = 2 k_A P / (ħ ω_L)
    const double eps_sq = d.drive_sq * w * w;
    p.input_power = eps_sq * constants::hbar * p.omega_L() / (2.0 * p.optical_decay_A);
    return p;
}

double scaled_coupling(const PhysicalParams& p) {
    require(p.cavity_length > 0 && p.mirror_mass > 0 && p.mech_freq > 0, "scaled_coupling",
            "needs positive length, mass and mechanical frequency");
    const double chi = (p.omega_A() / (p.mech_freq * p.cavity_length)) *
                       std::sqrt(constants::hbar / (p.mirror_mass * p.mech_freq));
    require(std::isfinite(chi) && chi > 0, "scaled_coupling", "is not finite");
    return chi;
}

double drive_amplitude(const PhysicalParams& p) {
    require(p.input_power >= 0, "input_power", "must be >= 0");
    require(p.optical_decay_A > 0, "optical_decay_A", "must be > 0");
    const double eps = std::sqrt(2.0 * p.optical_decay_A * p.input_power / (constants::hbar * p.omega_L()));
    require(std::isfinite(eps), "drive_amplitude", "is not finite");
    return eps;
}

EffectiveCavityResponse effective_response(double k_A, double delta_A, double J, double g_at,
                                           double atom_number, double k_C, double delta_C,
                                           double gamma_at, double delta_at) {
    EffectiveCavityResponse r;
    r.A1 = g_at * g_at * atom_number + k_C * gamma_at - delta_C * delta_at;
    r.A2 = delta_C * gamma_at + k_C * delta_at;
    if (J == 0.0) {
        r.k_new = k_A;
        r.delta_new = delta_A;
    } else {
        const double den = r.A1 * r.A1 + r.A2 * r.A2;
        if (!(den > 0.0)) {
            throw Error(ErrorKind::SingularResponse,
                        "feedback cavity has neither damping nor detuning (A1 = A2 = 0)");
        }
        const double J2 = J * J;
        r.k_new = k_A + J2 * (gamma_at * r.A1 + delta_at * r.A2) / den;
        r.delta_new = delta_A + J2 * (delta_at * r.A1 - gamma_at * r.A2) / den;
    }
    if (!std::isfinite(r.k_new) || !std::isfinite(r.delta_new)) {
        throw Error(ErrorKind::InvalidParameter, "effective response is not finite");
    }
    r.damped = r.k_new > 0.0;
    return r;
}

EffectiveCavityResponse effective_response(const PhysicalParams& p) {
    return effective_response(p.optical_decay_A, p.detuning_A, p.cavity_coupling, p.atom_coupling,
                              p.atom_number, p.optical_decay_C, p.detuning_C, p.atom_decay,
                              p.atom_detuning);
}

AtomicCavityState atomic_cavity_steady_state(const PhysicalParams& p, std::complex<double> a_field) {
    using namespace std::complex_literals;
    if (p.cavity_coupling == 0.0) return {};

    const std::complex<double> atom_den{p.atom_decay, p.atom_detuning};
    const double collective = p.atom_coupling * p.atom_coupling * p.atom_number;
    if (collective != 0.0 && atom_den == 0.0) {
        throw Error(ErrorKind::SingularResponse, "atomic coherence has zero decay and detuning");
    }
    std::complex<double> den{p.optical_decay_C, p.detuning_C};
    if (collective != 0.0) den += collective / atom_den;
    if (den == 0.0) {
        throw Error(ErrorKind::SingularResponse, "feedback cavity response denominator vanishes");
    }

    AtomicCavityState s;
    s.c_field = -1i * p.cavity_coupling * a_field / den;
    s.sigma12 = p.atom_number == 0.0 || p.atom_coupling == 0.0
                    ? std::complex<double>{}
                    : -1i * p.atom_coupling * s.c_field * p.atom_number / atom_den;
    return s;
}

}  // namespace hybridom
