#pragma once

// Bounded planar domains, boundary frames, reflection at the boundary and
// the configuration space of N distinct points.
//
// Points are complex numbers; a real 2-vector (x, y) is x + iy.

#include <complex>
#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace vortex {

using Point = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }
/// z-component of a x b.
inline double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

// ---------------------------------------------------------------------------
// Domain models
// ---------------------------------------------------------------------------

struct UnitDisk {};

/// {r_in < |z| < 1}.
struct Annulus {
    double inner_radius;
};

/// Image f(D) of the unit disk under the polynomial f(w) = sum_k coeffs[k] w^k.
struct ConformalImage {
    std::vector<Point> coeffs;
};

/// Polynomial f injective on the closed unit disk, with cached boundary samples.
class ConformalMap {
public:
    static constexpr int kBoundarySamples = 1024;

    /// Throws DomainError unless f is injective on the closed disk
    /// (f' zero-free by the argument principle, boundary image simple).
    explicit ConformalMap(std::vector<Point> coeffs);

    const std::vector<Point>& coeffs() const { return c_; }
    std::size_t degree() const { return c_.size() - 1; }

    Point f(Point w) const;
    Point df(Point w) const;
    Point d2f(Point w) const;

    /// Divided difference (f(a) - f(b)) / (a - b), exact polynomial form (f'(a) on the diagonal).
    Point divided_difference(Point a, Point b) const;
    /// Partial derivative of divided_difference with respect to its first argument.
    Point divided_difference_da(Point a, Point b) const;

    /// Preimage w with |w| < 1 and f(w) = z.
    /// Throws DomainError if z is not in f(D), ConvergenceError if Newton fails.
    Point inverse(Point z) const;
    /// Like inverse() but reports outside points as nullopt-equivalent (false).
    bool try_inverse(Point z, Point& w) const;

    /// Boundary curve c(theta) = f(e^{i theta}) and its first two derivatives.
    Point curve(double theta) const;
    Point curve_d1(double theta) const;
    Point curve_d2(double theta) const;
    double curvature(double theta) const;

    /// Nearest boundary parameter: coarse scan of the cached samples, then damped Newton.
    double nearest_parameter(Point z) const;

    /// 0.5 * reach of the boundary curve (inscribed tangent-ball estimate).
    double collar_width() const { return collar_; }
    double min_curvature() const { return min_kappa_; }
    std::pair<Point, Point> bounding_box() const { return bbox_; }

    /// Winding number of the sampled boundary polygon around z.
    int winding_number(Point z) const;

private:
    bool newton_inverse(Point z, Point w0, Point& w) const;

    std::vector<Point> c_;
    std::vector<Point> samples_;
    double collar_ = 0.0;
    double min_kappa_ = 0.0;
    std::pair<Point, Point> bbox_;
};

enum class DomainKind { disk, annulus, conformal };

/// A point on the boundary together with its local frame.
struct BoundaryPoint {
    Point point;
    Point inward_normal;
    Point tangent;
    double curvature = 0.0;
    int component = 0;   ///< 0 = outer boundary, 1 = inner circle of the annulus
    double theta = 0.0;  ///< angle on the circle (disk, annulus) or preimage angle (conformal)
};

class Domain {
public:
    using Model = std::variant<UnitDisk, Annulus, ConformalImage>;

    static Domain unit_disk();
    static Domain annulus(double inner_radius);
    static Domain conformal(std::vector<Point> coeffs);

    DomainKind kind() const;
    const Model& model() const { return model_; }
    double inner_radius() const;
    const ConformalMap& map() const;

    /// Collar width epsilon: half the reach of the boundary.
    double collar_width() const { return collar_; }
    bool strictly_convex() const;
    /// Number of bounded complementary components.
    int hole_count() const { return kind() == DomainKind::annulus ? 1 : 0; }

    /// Origin for seed constructions: 0 for disk and annulus, f(0) for conformal images.
    Point center() const;
    std::pair<Point, Point> bounding_box() const;

    /// Boundary point at parameter s in [0, 1). Disk: angle 2 pi s. Annulus: the outer
    /// circle occupies [0, 1/(1+r)) and the inner circle the rest (arc-length weighted).
    /// Conformal: preimage angle 2 pi s.
    BoundaryPoint boundary_point(double s) const;

private:
    explicit Domain(Model m);

    Model model_;
    std::shared_ptr<const ConformalMap> map_;
    double collar_ = 0.5;
};

// ---------------------------------------------------------------------------
// Frames, reflection, membership
// ---------------------------------------------------------------------------

struct BoundaryFrame {
    Point foot;           ///< p(z)
    double dist = 0.0;    ///< d(z)
    Point inward_normal;  ///< nu_z = (z - p(z)) / d(z)
    Point tangent;        ///< tau_z, (tau, nu) positively oriented
    double curvature = 0.0;
    bool in_collar = false;
};

/// True iff z lies strictly inside the domain.
bool contains(const Domain& domain, Point z);

/// Nearest-boundary data. Throws DomainError when z is not inside the domain.
/// Equidistant points resolve to the smallest boundary parameter and report
/// in_collar = false whenever they lie outside the collar.
BoundaryFrame boundary_frame(const Domain& domain, Point z);

/// Boundary distance d(z) (cheap closed forms for disk and annulus).
double boundary_distance(const Domain& domain, Point z);

/// 2 p(z) - z. Throws CollarError outside the collar.
Point reflect(const Domain& domain, Point z);

// ---------------------------------------------------------------------------
// Configurations and the symmetric group
// ---------------------------------------------------------------------------

/// Ordered tuple of N points. Membership in F_N(Omega) is checked by validate().
struct Configuration {
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
    Point operator[](std::size_t i) const { return points[i]; }
    Point& operator[](std::size_t i) { return points[i]; }
    bool operator==(const Configuration&) const = default;
};

/// Throws ConfigurationError unless every point is inside and all points are distinct.
void validate(const Domain& domain, const Configuration& c);
bool is_valid(const Domain& domain, const Configuration& c);

/// Permutation of {0..n-1}; stores images sigma(i).
class Permutation {
public:
    Permutation() = default;
    static Permutation identity(std::size_t n);
    /// Throws std::invalid_argument unless images is a bijection of {0..n-1}.
    static Permutation from_images(std::vector<int> images);
    /// Product of cycles in 1-based notation, e.g. {{1, 2}, {3, 4, 5}} on n symbols.
    static Permutation from_cycles(std::size_t n, const std::vector<std::vector<int>>& cycles);

    std::size_t size() const { return img_.size(); }
    int operator()(std::size_t i) const { return img_[i]; }
    const std::vector<int>& images() const { return img_; }
    Permutation inverse() const;
    bool is_identity() const;
    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> img_;
};

/// sigma o rho.
Permutation compose(const Permutation& sigma, const Permutation& rho);

/// sigma * c: output slot i holds input slot sigma^{-1}(i).
Configuration permute(const Permutation& sigma, const Configuration& c);

/// Same action on any per-vortex vector (vorticities, labels).
template <class T>
std::vector<T> permute(const Permutation& sigma, std::span<const T> v);

struct LineChart {
    Point anchor;
    Point direction;  ///< unit vector
    std::vector<double> params;
    Permutation perm;
};

/// sigma^{-1} * (a + t_1 v, ..., a + t_N v).
/// ChartError for non-increasing or non-positive params, DomainError (with index) for points outside.
Configuration line_configuration(const Domain& domain, const LineChart& chart);

struct Separation {
    double min_pair = std::numeric_limits<double>::infinity();
    double min_bdry = std::numeric_limits<double>::infinity();
    double min() const { return min_pair < min_bdry ? min_pair : min_bdry; }
};

Separation min_separation(const Domain& domain, const Configuration& c);

// ---------------------------------------------------------------------------

template <class T>
std::vector<T> permute(const Permutation& sigma, std::span<const T> v)
{
    const Permutation inv = sigma.inverse();
    std::vector<T> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[static_cast<std::size_t>(inv(i))];
    }
    return out;
}

}  // namespace vortex
