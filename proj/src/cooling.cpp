#include "hybridom/cooling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hybridom/error.hpp"

namespace hybridom {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

int idx(Mode m) { return static_cast<int>(m); }

void require(bool ok, const char* field, const char* rule) {
    if (!ok) throw Error(ErrorKind::InvalidParameter, std::string(field) + " " + rule);
}

}  // namespace

std::string_view to_string(DetuningConvention c) noexcept {
    return c == DetuningConvention::LaserMinusCavity ? "laser_minus_cavity" : "cavity_minus_laser";
}

std::string_view to_string(DecayConvention c) noexcept {
    return c == DecayConvention::MasterEquation ? "master_equation" : "amplitude";
}

std::optional<DetuningConvention> parse_detuning_convention(std::string_view s) noexcept {
    if (s == "cavity_minus_laser") return DetuningConvention::CavityMinusLaser;
    if (s == "laser_minus_cavity") return DetuningConvention::LaserMinusCavity;
    return std::nullopt;
}

std::optional<DecayConvention> parse_decay_convention(std::string_view s) noexcept {
    if (s == "amplitude") return DecayConvention::Amplitude;
    if (s == "master_equation") return DecayConvention::MasterEquation;
    return std::nullopt;
}

void LinearizedParams::validate() const {
    const double all[] = {detuning,     detuning_C,    atom_detuning, mech_freq,       optical_decay_A,
                          optical_decay_C, atom_decay, mech_damping,  atom_coupling,   cavity_coupling,
                          om_coupling,  thermal_occupation};
    for (double v : all) require(std::isfinite(v), "linearized parameters", "must be finite");
    require(mech_freq > 0.0, "mech_freq", "must be > 0");
    require(optical_decay_A >= 0.0, "optical_decay_A", "must be >= 0");
    require(optical_decay_C >= 0.0, "optical_decay_C", "must be >= 0");
    require(atom_decay >= 0.0, "atom_decay", "must be >= 0");
    require(mech_damping >= 0.0, "mech_damping", "must be >= 0");
    require(thermal_occupation >= 0.0, "thermal_occupation", "must be >= 0");
}

cd MomentState::normal(Mode i, Mode j) const { return second(4 + idx(i), 4 + idx(j)); }

cd MomentState::anomalous(Mode i, Mode j) const { return second(idx(i), 4 + idx(j)); }

double MomentState::occupancy(Mode m) const { return normal(m, m).real(); }

double MomentState::hermiticity_defect() const { return (second - second.adjoint()).cwiseAbs().maxCoeff(); }

MomentState MomentState::from_occupations(const std::array<double, 4>& n) {
    Eigen::Matrix4cd normal = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) normal(i, i) = n[static_cast<std::size_t>(i)];
    return from_moments(normal, Eigen::Matrix4cd::Zero());
}

// C = ⟨v v†⟩ in blocks:  ⟨o_i o_j†⟩ = δ_ij + ⟨o_j† o_i⟩,  ⟨o_i o_j⟩,  ⟨o_i† o_j†⟩,  ⟨o_i† o_j⟩.
MomentState MomentState::from_moments(const Eigen::Matrix4cd& normal, const Eigen::Matrix4cd& anomalous) {
    MomentState s;
    s.second.topLeftCorner<4, 4>() = Eigen::Matrix4cd::Identity() + normal.transpose();
    s.second.topRightCorner<4, 4>() = anomalous;
    s.second.bottomLeftCorner<4, 4>() = anomalous.conjugate();
    s.second.bottomRightCorner<4, 4>() = normal;
    return s;
}

LinearizedSystem build_linearized_system(const LinearizedParams& p) {
    p.validate();
    const double sign = p.detuning_convention == DetuningConvention::LaserMinusCavity ? -1.0 : 1.0;
    const double amp = p.decay_convention == DecayConvention::MasterEquation ? 0.5 : 1.0;
    const double k_A = amp * p.optical_decay_A;
    const double k_C = amp * p.optical_decay_C;
    const double g_at = amp * p.atom_decay;
    const double G = p.om_coupling;
    const double J = p.cavity_coupling;
    const double g = p.atom_coupling;

    const int a = 0, b = 1, c = 2, d = 3;
    Eigen::Matrix4cd U = Eigen::Matrix4cd::Zero();
    Eigen::Matrix4cd V = Eigen::Matrix4cd::Zero();
    U(a, a) = -(k_A + I * sign * p.detuning);
    U(a, b) = I * G;
    U(a, c) = -I * J;
    V(a, b) = I * G;
    U(b, b) = -(0.5 * p.mech_damping + I * p.mech_freq);
    U(b, a) = I * G;
    V(b, a) = I * G;
    U(c, c) = -(k_C + I * sign * p.detuning_C);
    U(c, a) = -I * J;
    U(c, d) = -I * g;
    U(d, d) = -(g_at + I * sign * p.atom_detuning);
    U(d, c) = -I * g;

    LinearizedSystem sys;
    sys.drift.topLeftCorner<4, 4>() = U;
    sys.drift.topRightCorner<4, 4>() = V;
    sys.drift.bottomLeftCorner<4, 4>() = V.conjugate();
    sys.drift.bottomRightCorner<4, 4>() = U.conjugate();

    // Vacuum noise for a, c, d sits in the ⟨o o†⟩ block; thermal input drives b and b†.
    sys.diffusion.setZero();
    sys.diffusion(a, a) = 2.0 * k_A;
    sys.diffusion(b, b) = p.mech_damping * (p.thermal_occupation + 1.0);
    sys.diffusion(c, c) = 2.0 * k_C;
    sys.diffusion(d, d) = 2.0 * g_at;
    sys.diffusion(4 + b, 4 + b) = p.mech_damping * p.thermal_occupation;
    return sys;
}

std::vector<cd> stability_spectrum(const LinearizedSystem& sys) {
    Eigen::ComplexEigenSolver<Matrix8cd> solver(sys.drift, false);
    std::vector<cd> ev(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::sort(ev.begin(), ev.end(), [](cd x, cd y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() > y.imag();
    });
    return ev;
}

double spectral_abscissa(const LinearizedSystem& sys) { return stability_spectrum(sys).front().real(); }

Trajectory evolve_moments(const LinearizedSystem& sys, const MomentState& init, double t_final,
                          const EvolveOptions& options) {
    if (!std::isfinite(t_final) || t_final < init.t) {
        throw Error(ErrorKind::InvalidParameter, "t_final must be finite and >= the initial time");
    }
    if (!(options.sample_interval >= 0.0) || !std::isfinite(options.sample_interval)) {
        throw Error(ErrorKind::InvalidParameter, "sample_interval must be finite and >= 0");
    }
    if (!init.second.allFinite()) throw Error(ErrorKind::InvalidParameter, "initial moments are not finite");

    std::vector<double> times;
    if (options.sample_interval > 0.0) {
        const double span = t_final - init.t;
        const auto count = static_cast<std::size_t>(std::floor(span / options.sample_interval * (1.0 + 1e-12)));
        times.reserve(count + 2);
        for (std::size_t k = 0; k <= count; ++k) {
            times.push_back(init.t + static_cast<double>(k) * options.sample_interval);
        }
        if (t_final - times.back() > 1e-12 * span) {
            times.push_back(t_final);
        } else {
            times.back() = t_final;
        }
    } else {
        times = {init.t};
        if (t_final > init.t) times.push_back(t_final);
    }

    Trajectory traj;
    traj.samples.reserve(times.size());
    const LyapunovRosenbrock stepper(sys.drift, sys.diffusion);
    const auto stats = stepper.integrate(init.t, init.second, times, options.integrator, 4 + idx(Mode::Mechanical),
                                         [&](double t, const Matrix8cd& x) {
                                             MomentState s;
                                             s.t = t;
                                             s.second = x;
                                             traj.samples.push_back(s);
                                         });
    traj.nb_error_estimate = stats.watched_error;
    traj.accepted_steps = stats.accepted;
    traj.rejected_steps = stats.rejected;
    return traj;
}

// Column-major vectorization: vec(M C + C M†) = (I ⊗ M + conj(M) ⊗ I) vec(C).
MomentState steady_state_moments(const LinearizedSystem& sys) {
    const auto spectrum = stability_spectrum(sys);
    if (!(spectrum.front().real() < 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "drift matrix is not strictly stable; eigenvalues with Re >= 0:";
        for (const auto& z : spectrum) {
            if (z.real() >= 0.0) os << " (" << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i)";
        }
        throw Error(ErrorKind::NoSteadyState, os.str());
    }

    constexpr int n = 8;
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int row = i + n * j;
            for (int k = 0; k < n; ++k) {
                K(row, k + n * j) += sys.drift(i, k);
                K(row, i + n * k) += std::conj(sys.drift(j, k));
            }
        }
    }
    Eigen::VectorXcd rhs(n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) rhs(i + n * j) = -sys.diffusion(i, j);
    }
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(K);
    Eigen::VectorXcd x = lu.solve(rhs);
    x += lu.solve(rhs - K * x);  // one refinement sweep

    MomentState s;
    s.t = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) s.second(i, j) = x(i + n * j);
    }
    s.second = 0.5 * (s.second + s.second.adjoint()).eval();
    return s;
}

}  // namespace hybridom
