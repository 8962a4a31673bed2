#include "vortex/errors.hpp"
#include "vortex/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace vortex {

namespace {

constexpr double kInverseTol = 1e-12;
constexpr int kMaxNewton = 100;

bool segments_cross(Point a, Point b, Point c, Point d)
{
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

ConformalMap::ConformalMap(std::vector<Point> coeffs) : c_(std::move(coeffs))
{
    while (c_.size() > 2 && c_.back() == Point{}) {
        c_.pop_back();
    }
    if (c_.size() < 2 || std::abs(c_[1]) == 0.0) {
        throw DomainError("conformal map needs a nonzero linear coefficient");
    }
    for (const Point& a : c_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw DomainError("conformal map coefficients must be finite");
        }
    }

    const int n = kBoundarySamples;
    samples_.resize(n);
    for (int k = 0; k < n; ++k) {
        samples_[k] = curve(2.0 * kPi * k / n);
    }

    // Argument principle: f' has no zero in the closed disk iff f'(e^{it}) has winding 0.
    const int fine = 4 * n;
    double turning = 0.0;
    double min_abs_df = std::numeric_limits<double>::infinity();
    Point prev = df(Point{1.0, 0.0});
    for (int k = 1; k <= fine; ++k) {
        const Point cur = df(std::polar(1.0, 2.0 * kPi * k / fine));
        min_abs_df = std::min(min_abs_df, std::abs(cur));
        turning += std::arg(cur / prev);
        prev = cur;
    }
    if (min_abs_df < 1e-8 || std::lround(turning / (2.0 * kPi)) != 0) {
        throw DomainError("conformal map is not locally injective on the closed disk");
    }

    for (int i = 0; i < n; ++i) {
        const Point a = samples_[i];
        const Point b = samples_[(i + 1) % n];
        for (int j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) {
                continue;
            }
            if (segments_cross(a, b, samples_[j], samples_[(j + 1) % n])) {
                throw DomainError("conformal boundary image is not a simple curve");
            }
        }
    }

    // Reach: smallest ball tangent at sample i (inward side) that passes through sample j.
    double reach = std::numeric_limits<double>::infinity();
    min_kappa_ = std::numeric_limits<double>::infinity();
    std::vector<Point> normals(n);
    for (int i = 0; i < n; ++i) {
        const double theta = 2.0 * kPi * i / n;
        const Point t = curve_d1(theta);
        normals[i] = Point{0.0, 1.0} * t / std::abs(t);
        const double kappa = curvature(theta);
        min_kappa_ = std::min(min_kappa_, kappa);
        if (kappa > 0.0) {
            reach = std::min(reach, 1.0 / kappa);
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const Point diff = samples_[j] - samples_[i];
            const double along = dot(diff, normals[i]);
            if (along > 0.0) {
                reach = std::min(reach, std::norm(diff) / (2.0 * along));
            }
        }
    }
    collar_ = 0.5 * reach;

    double xmin = samples_[0].real(), xmax = xmin, ymin = samples_[0].imag(), ymax = ymin;
    for (const Point& s : samples_) {
        xmin = std::min(xmin, s.real());
        xmax = std::max(xmax, s.real());
        ymin = std::min(ymin, s.imag());
        ymax = std::max(ymax, s.imag());
    }
    bbox_ = {Point{xmin, ymin}, Point{xmax, ymax}};
}

Point ConformalMap::f(Point w) const
{
    Point acc{};
    for (std::size_t k = c_.size(); k-- > 0;) {
        acc = acc * w + c_[k];
    }
    return acc;
}

Point ConformalMap::df(Point w) const
{
    Point acc{};
    for (std::size_t k = c_.size(); k-- > 1;) {
        acc = acc * w + static_cast<double>(k) * c_[k];
    }
    return acc;
}

Point ConformalMap::d2f(Point w) const
{
    Point acc{};
    for (std::size_t k = c_.size(); k-- > 2;) {
        acc = acc * w + static_cast<double>(k * (k - 1)) * c_[k];
    }
    return acc;
}

Point ConformalMap::divided_difference(Point a, Point b) const
{
    // sum_k c_k * sum_{j<k} a^j b^{k-1-j}; S_k = a S_{k-1} + b^{k-1}.
    Point s{};
    Point bpow{1.0, 0.0};
    Point acc{};
    for (std::size_t k = 1; k < c_.size(); ++k) {
        s = a * s + bpow;
        bpow *= b;
        acc += c_[k] * s;
    }
    return acc;
}

Point ConformalMap::divided_difference_da(Point a, Point b) const
{
    // dS_k/da = a dS_{k-1}/da + S_{k-1}.
    Point s{};
    Point ds{};
    Point bpow{1.0, 0.0};
    Point acc{};
    for (std::size_t k = 1; k < c_.size(); ++k) {
        ds = a * ds + s;
        s = a * s + bpow;
        bpow *= b;
        acc += c_[k] * ds;
    }
    return acc;
}

Point ConformalMap::curve(double theta) const { return f(std::polar(1.0, theta)); }

Point ConformalMap::curve_d1(double theta) const
{
    const Point w = std::polar(1.0, theta);
    return Point{0.0, 1.0} * w * df(w);
}

Point ConformalMap::curve_d2(double theta) const
{
    const Point w = std::polar(1.0, theta);
    return -w * df(w) - w * w * d2f(w);
}

double ConformalMap::curvature(double theta) const
{
    const Point d1 = curve_d1(theta);
    const Point d2 = curve_d2(theta);
    const double speed = std::abs(d1);
    return cross(d1, d2) / (speed * speed * speed);
}

bool ConformalMap::newton_inverse(Point z, Point w0, Point& w) const
{
    w = w0;
    double res = std::abs(f(w) - z);
    for (int it = 0; it < kMaxNewton; ++it) {
        const Point d = df(w);
        if (std::abs(d) == 0.0) {
            return false;
        }
        const Point step = (f(w) - z) / d;
        double lambda = 1.0;
        Point trial = w - step;
        double trial_res = std::abs(f(trial) - z);
        while (trial_res > res && lambda > 1.0 / 1024.0) {
            lambda *= 0.5;
            trial = w - lambda * step;
            trial_res = std::abs(f(trial) - z);
        }
        w = trial;
        res = trial_res;
        if (std::abs(lambda * step) <= kInverseTol * std::max(1.0, std::abs(w))) {
            return res <= 1e-9 * (1.0 + std::abs(z));
        }
    }
    return false;
}

bool ConformalMap::try_inverse(Point z, Point& w) const
{
    Point guess = (z - c_[0]) / c_[1];
    if (std::abs(guess) > 0.95) {
        guess *= 0.95 / std::abs(guess);
    }
    if (newton_inverse(z, guess, w) && std::abs(w) < 1.0) {
        return true;
    }

    // Polar warm-start grid inside the disk.
    Point best{};
    double best_res = std::abs(f(best) - z);
    constexpr int radii = 16;
    constexpr int angles = 64;
    for (int i = 1; i <= radii; ++i) {
        const double r = static_cast<double>(i) / (radii + 0.5);
        for (int j = 0; j < angles; ++j) {
            const Point cand = std::polar(r, 2.0 * kPi * j / angles);
            const double res = std::abs(f(cand) - z);
            if (res < best_res) {
                best_res = res;
                best = cand;
            }
        }
    }
    if (newton_inverse(z, best, w)) {
        return std::abs(w) < 1.0;
    }
    if (winding_number(z) == 0) {
        return false;
    }
    throw ConvergenceError("conformal inverse did not converge in 100 Newton steps");
}

Point ConformalMap::inverse(Point z) const
{
    Point w;
    if (!try_inverse(z, w)) {
        throw DomainError("point is outside the conformal image");
    }
    return w;
}

int ConformalMap::winding_number(Point z) const
{
    double total = 0.0;
    const std::size_t n = samples_.size();
    for (std::size_t k = 0; k < n; ++k) {
        total += std::arg((samples_[(k + 1) % n] - z) / (samples_[k] - z));
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

double ConformalMap::nearest_parameter(Point z) const
{
    const int n = static_cast<int>(samples_.size());
    int best = 0;
    double best_d = std::norm(samples_[0] - z);
    for (int k = 1; k < n; ++k) {
        const double d = std::norm(samples_[k] - z);
        if (d < best_d) {
            best_d = d;
            best = k;
        }
    }
    double theta = 2.0 * kPi * best / n;
    const double cell = 2.0 * kPi / n;
    auto objective = [&](double t) { return 0.5 * std::norm(curve(t) - z); };
    double phi = objective(theta);
    for (int it = 0; it < kMaxNewton; ++it) {
        const Point r = curve(theta) - z;
        const Point d1 = curve_d1(theta);
        const Point d2 = curve_d2(theta);
        const double g = dot(r, d1);
        const double h = std::norm(d1) + dot(r, d2);
        double step = h > 0.0 ? -g / h : (g > 0.0 ? -0.25 * cell : 0.25 * cell);
        step = std::clamp(step, -cell, cell);
        double trial = theta + step;
        double trial_phi = objective(trial);
        while (trial_phi > phi && std::abs(step) > 1e-15) {
            step *= 0.5;
            trial = theta + step;
            trial_phi = objective(trial);
        }
        theta = trial;
        phi = std::min(phi, trial_phi);
        if (std::abs(step) < kInverseTol) {
            break;
        }
    }
    // The distance objective is flat to rounding near its minimum (it only resolves theta to
    // about sqrt(machine epsilon)); polish on the stationarity condition <c - z, c'> = 0 instead.
    for (int it = 0; it < 3; ++it) {
        const Point r = curve(theta) - z;
        const Point d1 = curve_d1(theta);
        const double h = std::norm(d1) + dot(r, curve_d2(theta));
        if (!(h > 0.0)) {
            break;
        }
        const double step = -dot(r, d1) / h;
        if (!(std::abs(step) < 1e-6)) {
            break;
        }
        theta += step;
    }
    theta = std::fmod(theta, 2.0 * kPi);
    if (theta < 0.0) {
        theta += 2.0 * kPi;
    }
    return theta;
}

}  // namespace vortex
