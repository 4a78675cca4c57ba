#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstddef>
#include <functional>

namespace hybridom {

using Matrix8cd = Eigen::Matrix<std::complex<double>, 8, 8>;
using Vector8cd = Eigen::Matrix<std::complex<double>, 8, 1>;

struct IntegratorOptions {
    double rtol = 1e-8;
    double atol = 1e-8;
    double initial_step = 1e-4;
    double min_step = 1e-13;
    double max_step = 0.0;  // 0: unbounded
    std::size_t max_steps = 20'000'000;
};

struct IntegratorStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    /// Sum over accepted steps of |local error estimate| of the watched entry.
    double watched_error = 0.0;
};

/// Adaptive L-stable Rosenbrock integrator (RODAS4 tableau) for
///   dX/dt = A X + X A† + Q.
/// Work happens in the Schur basis of A so each stage is a triangular
/// Sylvester solve; states are transformed back only when reported.
class LyapunovRosenbrock {
public:
    LyapunovRosenbrock(const Matrix8cd& drift, const Matrix8cd& inhomogeneity);

    /// Observer is called with (t, X) at every requested output time.
    using Observer = std::function<void(double, const Matrix8cd&)>;

    /// Integrates from (t0, x0) through the ascending output times, which must
    /// all be >= t0. `watch` picks the diagonal entry whose error is tracked.
    IntegratorStats integrate(double t0, const Matrix8cd& x0, const std::vector<double>& output_times,
                              const IntegratorOptions& options, int watch, const Observer& observe) const;

    [[nodiscard]] const Matrix8cd& schur_vectors() const noexcept { return basis_; }
    [[nodiscard]] const Matrix8cd& schur_form() const noexcept { return triangular_; }

private:
    Matrix8cd rhs(const Matrix8cd& x) const;
    Matrix8cd solve_stage(const Matrix8cd& r, double sigma) const;

    Matrix8cd basis_;       // unitary U with A = U T U†
    Matrix8cd triangular_;  // T
    Matrix8cd q_schur_;     // U† Q U
};

}  // namespace hybridom
