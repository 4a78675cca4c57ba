#include "hybridom/lyapunov_ode.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "hybridom/error.hpp"

namespace hybridom {

namespace {

// Hairer & Wanner RODAS4 coefficients in the form used by Boost.Odeint's rosenbrock4.
struct Rodas4 {
    static constexpr double gamma = 0.25;
    static constexpr double a21 = 0.1544000000000000e+01;
    static constexpr double a31 = 0.9466785280815826e+00, a32 = 0.2557011698983284e+00;
    static constexpr double a41 = 0.3314825187068521e+01, a42 = 0.2896124015972201e+01,
                            a43 = 0.9986419139977817e+00;
    static constexpr double a51 = 0.1221224509226641e+01, a52 = 0.6019134481288629e+01,
                            a53 = 0.1253708332932087e+02, a54 = -0.6878860361058950e+00;
    static constexpr double c21 = -0.5668800000000000e+01;
    static constexpr double c31 = -0.2430093356833875e+01, c32 = -0.2063599157091915e+00;
    static constexpr double c41 = -0.1073529058151375e+00, c42 = -0.9594562251023355e+01,
                            c43 = -0.2047028614809616e+02;
    static constexpr double c51 = 0.7496443313967647e+01, c52 = -0.1024680431464352e+02,
                            c53 = -0.3399990352819905e+02, c54 = 0.1170890893206160e+02;
    static constexpr double c61 = 0.8083246795921522e+01, c62 = -0.7981132988064893e+01,
                            c63 = -0.3152159432874371e+02, c64 = 0.1631930543123136e+02,
                            c65 = -0.6058818238834054e+01;
};

[[noreturn]] void fail(double t, const std::string& why) {
    std::ostringstream os;
    os.precision(17);
    os << "moment integration failed at t = " << t << ": " << why;
    throw Error(ErrorKind::IntegrationFailure, os.str());
}

}  // namespace

LyapunovRosenbrock::LyapunovRosenbrock(const Matrix8cd& drift, const Matrix8cd& inhomogeneity) {
    Eigen::ComplexSchur<Matrix8cd> schur(drift);
    basis_ = schur.matrixU();
    triangular_ = schur.matrixT();
    q_schur_ = basis_.adjoint() * inhomogeneity * basis_;
}

Matrix8cd LyapunovRosenbrock::rhs(const Matrix8cd& x) const {
    return triangular_ * x + x * triangular_.adjoint() + q_schur_;
}

// Solves (σ − T) G + G (σ − T)† = R by back substitution; σ − T is upper triangular.
Matrix8cd LyapunovRosenbrock::solve_stage(const Matrix8cd& r, double sigma) const {
    Matrix8cd b = -triangular_;
    b.diagonal().array() += sigma;
    Matrix8cd g;
    for (int i = 7; i >= 0; --i) {
        for (int j = 7; j >= 0; --j) {
            std::complex<double> s = r(i, j);
            for (int k = i + 1; k < 8; ++k) s -= b(i, k) * g(k, j);
            for (int k = j + 1; k < 8; ++k) s -= g(i, k) * std::conj(b(j, k));
            g(i, j) = s / (b(i, i) + std::conj(b(j, j)));
        }
    }
    return g;
}

IntegratorStats LyapunovRosenbrock::integrate(double t0, const Matrix8cd& x0, const std::vector<double>& output_times,
                                              const IntegratorOptions& opt, int watch,
                                              const Observer& observe) const {
    using R = Rodas4;
    IntegratorStats stats;
    Matrix8cd x = basis_.adjoint() * x0 * basis_;
    const Eigen::Matrix<std::complex<double>, 1, 8> watch_row = basis_.row(watch);

    double t = t0;
    double h = opt.initial_step;
    std::size_t next_out = 0;
    while (next_out < output_times.size() && output_times[next_out] <= t0) {
        observe(output_times[next_out], x0);
        ++next_out;
    }

    while (next_out < output_times.size()) {
        const double target = output_times[next_out];
        if (opt.max_step > 0.0) h = std::min(h, opt.max_step);
        const bool clipped = t + h >= target;
        const double step = clipped ? target - t : h;
        if (step < opt.min_step) fail(t, "step size underflow");
        if (stats.accepted + stats.rejected >= opt.max_steps) fail(t, "step budget exhausted");

        const double sigma = 1.0 / (2.0 * R::gamma * step);
        const double inv_h = 1.0 / step;
        const Matrix8cd g1 = solve_stage(rhs(x), sigma);
        const Matrix8cd g2 = solve_stage(rhs(x + R::a21 * g1) + (R::c21 * inv_h) * g1, sigma);
        const Matrix8cd g3 = solve_stage(rhs(x + R::a31 * g1 + R::a32 * g2) + inv_h * (R::c31 * g1 + R::c32 * g2), sigma);
        const Matrix8cd g4 =
            solve_stage(rhs(x + R::a41 * g1 + R::a42 * g2 + R::a43 * g3) +
                            inv_h * (R::c41 * g1 + R::c42 * g2 + R::c43 * g3),
                        sigma);
        const Matrix8cd x5 = x + R::a51 * g1 + R::a52 * g2 + R::a53 * g3 + R::a54 * g4;
        const Matrix8cd g5 =
            solve_stage(rhs(x5) + inv_h * (R::c51 * g1 + R::c52 * g2 + R::c53 * g3 + R::c54 * g4), sigma);
        const Matrix8cd x6 = x5 + g5;
        const Matrix8cd err = solve_stage(
            rhs(x6) + inv_h * (R::c61 * g1 + R::c62 * g2 + R::c63 * g3 + R::c64 * g4 + R::c65 * g5), sigma);
        const Matrix8cd next = x6 + err;

        if (!next.allFinite()) {
            ++stats.rejected;
            h = 0.25 * step;
            if (h < opt.min_step) fail(t, "non-finite state");
            continue;
        }

        const double scale = opt.atol + opt.rtol * std::max(x.norm(), next.norm());
        const double err_norm = err.norm() / scale;
        const double factor = std::clamp(0.9 * std::pow(std::max(err_norm, 1e-10), -0.25), 0.2, 6.0);

        if (err_norm <= 1.0) {
            ++stats.accepted;
            stats.watched_error += std::abs((watch_row * err * watch_row.adjoint())(0, 0));
            t = clipped ? target : t + step;
            x = next;
            // a clipped step does not shrink the proposal for the next one
            h = clipped ? std::max(h, step * factor) : step * factor;
            while (next_out < output_times.size() && output_times[next_out] <= t) {
                observe(output_times[next_out], basis_ * x * basis_.adjoint());
                ++next_out;
            }
        } else {
            ++stats.rejected;
            h = step * factor;
        }
    }
    return stats;
}

}  // namespace hybridom
