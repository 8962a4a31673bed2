#pragma once

// Run configuration for the command-line front end (TOML on disk).

#include "vortex/flow.hpp"
#include "vortex/linking.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vortex {

struct DomainSpec {
    DomainKind kind = DomainKind::disk;
    double inner_radius = 0.5;
    std::vector<Point> coeffs;   ///< conformal: f(w) = sum coeffs[k] w^k
    std::vector<double> periods; ///< annulus boundary circulations; empty selects the uniform default
};

struct ScanSection {
    double delta = 0.01;
    std::size_t samples = 10000;
};

struct DynamicsSection {
    double horizon = 10.0;
    double tol = 1e-10;
    double collision_delta = 1e-6;
    std::vector<Point> start;  ///< empty: random start drawn from the seed
};

struct AuditSection {
    std::size_t samples = 10000;
    double eps = 0.1;
};

struct RunConfig {
    DomainSpec domain;
    std::vector<double> gamma;
    std::uint64_t rng_seed = 1;
    unsigned threads = 0;
    FlowParams flow;
    TorusSeedSpec seeds;       ///< seeds.n follows gamma
    std::vector<Point> start;  ///< find-critical start; empty: first point of the seed grid
    ScanSection scan;
    DynamicsSection dynamics;
    AuditSection audit;
    std::size_t lemma_samples = 10000;
};

/// ConfigError (a SpecError) with a readable message for malformed input.
RunConfig parse_config(std::string_view toml_text);
RunConfig load_config(const std::string& path);

/// Canonical TOML text; parse_config(to_toml(c)) reproduces c exactly.
std::string to_toml(const RunConfig& c);

/// "disk", "annulus:R" or "conformal:FILE" (FILE holds "re im" coefficient pairs, '#' comments).
DomainSpec parse_domain_flag(const std::string& flag);

/// "1,-2,3".
std::vector<double> parse_gamma_list(const std::string& csv);

Domain make_domain(const DomainSpec& spec);
Greens make_greens(const DomainSpec& spec);

}  // namespace vortex
