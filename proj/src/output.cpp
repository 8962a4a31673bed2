#include "output.hpp"

#include "vortex/errors.hpp"
#include "vortex/random.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace vortex::out {

std::string num(double v) { return fmt::format("{:.17g}", v); }

Json header(const std::string& command, std::uint64_t seed)
{
    Json h;
    h["program"] = kProgram;
    h["version"] = kVersion;
    h["command"] = command;
    h["rng"] = Rng::algorithm;
    h["seed"] = seed;
    return h;
}

Json number(double v)
{
    if (std::isfinite(v)) {
        return v;
    }
    if (std::isnan(v)) {
        return "nan";
    }
    return v > 0 ? "inf" : "-inf";
}

Json point(Point p) { return Json::array({number(p.real()), number(p.imag())}); }

Json points(const Configuration& c)
{
    Json a = Json::array();
    for (Point p : c.points) {
        a.push_back(point(p));
    }
    return a;
}

Json indices_1based(const std::vector<int>& v)
{
    Json a = Json::array();
    for (int i : v) {
        a.push_back(i + 1);
    }
    return a;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot write " + path.string());
    }
    f << text;
}

void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

std::string coordinate_header(std::size_t n)
{
    std::string s;
    for (std::size_t i = 1; i <= n; ++i) {
        s += fmt::format("{}x_{},y_{}", i > 1 ? "," : "", i, i);
    }
    return s;
}

std::string coordinate_row(const Configuration& c)
{
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        s += fmt::format("{}{},{}", i ? "," : "", num(c[i].real()), num(c[i].imag()));
    }
    return s;
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<double>& times,
                     const std::vector<Configuration>& configs, const std::vector<double>& energies,
                     const std::vector<double>& grad_norms)
{
    const std::size_t n = configs.empty() ? 0 : configs.front().size();
    std::string s = "t," + coordinate_header(n) + ",H,grad_norm\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        s += fmt::format("{},{},{},{}\n", num(times[k]), coordinate_row(configs[k]), num(energies[k]),
                         num(grad_norms[k]));
    }
    write_text(path, s);
}

namespace {

constexpr double kSize = 600.0;
constexpr double kMargin = 20.0;

struct Frame {
    Point lo;
    double scale = 1.0;
    Point map(Point p) const
    {
        return {kMargin + scale * (p.real() - lo.real()), kSize - kMargin - scale * (p.imag() - lo.imag())};
    }
};

std::string polyline(const Frame& fr, const std::vector<Point>& pts, const std::string& color, double width)
{
    std::string s = "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + num(width) + "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point q = fr.map(pts[i]);
        s += fmt::format("{}{:.3f},{:.3f}", i ? " " : "", q.real(), q.imag());
    }
    return s + "\"/>\n";
}

}  // namespace

std::string domain_svg(const Domain& domain, const std::vector<SvgLayer>& layers)
{
    const auto [lo, hi] = domain.bounding_box();
    Frame fr;
    fr.lo = lo;
    fr.scale = (kSize - 2 * kMargin) / std::max(hi.real() - lo.real(), hi.imag() - lo.imag());
    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        kSize);
    // Boundary components from the boundary parametrization.
    std::vector<std::vector<Point>> comps(2);
    constexpr int kNodes = 720;
    for (int k = 0; k <= kNodes; ++k) {
        const double t = std::min(static_cast<double>(k) / kNodes, 1.0 - 1e-12);
        const BoundaryPoint b = domain.boundary_point(t);
        comps[static_cast<std::size_t>(b.component)].push_back(b.point);
    }
    for (const auto& c : comps) {
        if (c.size() > 1) {
            std::vector<Point> closed = c;
            closed.push_back(c.front());
            s += polyline(fr, closed, "#444444", 1.5);
        }
    }
    for (const SvgLayer& layer : layers) {
        for (const auto& pl : layer.polylines) {
            s += polyline(fr, pl, layer.color, 1.0);
        }
        for (Point p : layer.dots) {
            const Point q = fr.map(p);
            s += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"2.5\" fill=\"{}\"/>\n", q.real(), q.imag(),
                             layer.color);
        }
    }
    return s + "</svg>\n";
}

std::string curve_svg(const std::vector<double>& x, const std::vector<double>& y, const std::string& xlabel,
                      const std::string& ylabel)
{
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!x.empty()) {
        x0 = *std::min_element(x.begin(), x.end());
        x1 = *std::max_element(x.begin(), x.end());
        y0 = *std::min_element(y.begin(), y.end());
        y1 = *std::max_element(y.begin(), y.end());
    }
    if (x1 <= x0) {
        x1 = x0 + 1;
    }
    if (y1 <= y0) {
        y1 = y0 + 1;
    }
    const double w = kSize - 3 * kMargin;
    auto mx = [&](double v) { return 2 * kMargin + w * (v - x0) / (x1 - x0); };
    auto my = [&](double v) { return kSize - 2 * kMargin - w * (v - y0) / (y1 - y0); };
    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        "<text x=\"{1}\" y=\"{2}\" font-size=\"12\">{3} [{4:.6g}, {5:.6g}]</text>\n"
        "<text x=\"4\" y=\"14\" font-size=\"12\">{6} [{7:.6g}, {8:.6g}]</text>\n",
        kSize, 2 * kMargin, kSize - 4, xlabel, x0, x1, ylabel, y0, y1);
    s += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += fmt::format("{}{:.3f},{:.3f}", i ? " " : "", mx(x[i]), my(y[i]));
    }
    return s + "\"/>\n</svg>\n";
}

}  // namespace vortex::out
