#pragma once

// Artifact writers shared by the subcommands: JSON reports, fixed-header CSV
// (17 significant digits, so files round-trip and compare byte for byte) and SVG.

#include "vortex/geometry.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace vortex::out {

using Json = nlohmann::ordered_json;

inline constexpr const char* kProgram = "vortex-kr";
inline constexpr const char* kVersion = "0.1.0";

std::string num(double v);

/// {"program", "version", "command", "rng", "seed"}.
Json header(const std::string& command, std::uint64_t seed);

/// Finite doubles as numbers, non-finite ones as the strings "inf", "-inf", "nan".
Json number(double v);
Json point(Point p);
Json points(const Configuration& c);
Json indices_1based(const std::vector<int>& v);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const Json& j);

/// Header "x_1,y_1,..,x_N,y_N".
std::string coordinate_header(std::size_t n);
std::string coordinate_row(const Configuration& c);

/// Columns t, x_1, y_1, .., x_N, y_N, H, grad_norm.
void write_trace_csv(const std::filesystem::path& path, const std::vector<double>& times,
                     const std::vector<Configuration>& configs, const std::vector<double>& energies,
                     const std::vector<double>& grad_norms);

struct SvgLayer {
    std::vector<std::vector<Point>> polylines;
    std::vector<Point> dots;
    std::string color = "black";
};

/// Domain boundary plus layers, in domain coordinates.
std::string domain_svg(const Domain& domain, const std::vector<SvgLayer>& layers);

/// Simple line chart of y against x.
std::string curve_svg(const std::vector<double>& x, const std::vector<double>& y, const std::string& xlabel,
                      const std::string& ylabel);

}  // namespace vortex::out
