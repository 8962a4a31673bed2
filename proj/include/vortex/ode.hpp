#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta step (FSAL).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace vortex {

struct Dp5Step {
    Eigen::VectorXd y;      ///< fifth-order solution
    Eigen::VectorXd error;  ///< difference between the fifth- and fourth-order solutions
    Eigen::VectorXd f_end;  ///< f(y) at the new point (first stage of the next step)
};

/// One step of size h from y with f(y) = f0. f maps VectorXd -> VectorXd and may throw
/// (for example when a stage leaves the domain); the caller treats that as a rejected step.
template <class F>
Dp5Step dp5_step(F&& f, const Eigen::VectorXd& y, const Eigen::VectorXd& f0, double h)
{
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                            b6 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    const Eigen::VectorXd& k1 = f0;
    const Eigen::VectorXd k2 = f(Eigen::VectorXd(y + h * a21 * k1));
    const Eigen::VectorXd k3 = f(Eigen::VectorXd(y + h * (a31 * k1 + a32 * k2)));
    const Eigen::VectorXd k4 = f(Eigen::VectorXd(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
    const Eigen::VectorXd k5 = f(Eigen::VectorXd(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    const Eigen::VectorXd k6 = f(Eigen::VectorXd(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    Dp5Step out;
    out.y = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    out.f_end = f(out.y);
    out.error = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * out.f_end);
    return out;
}

/// Scaled max-norm of the error estimate: max_i |e_i| / (atol + rtol * max(|y0_i|, |y1_i|)).
inline double dp5_error_norm(const Eigen::VectorXd& err, const Eigen::VectorXd& y0, const Eigen::VectorXd& y1,
                             double atol, double rtol)
{
    double worst = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double scale = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        worst = std::max(worst, std::abs(err[i]) / scale);
    }
    return worst;
}

/// Step-size factor after a step with scaled error err (safety 0.9, clamped to [0.2, 5]).
inline double dp5_factor(double err)
{
    if (err <= 0.0) {
        return 5.0;
    }
    return std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
}

}  // namespace vortex
