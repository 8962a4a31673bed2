#pragma once

// Delta-, boundary- and line-admissibility of a vorticity vector, with witnesses.
//
// Subsets are reported as 0-based index lists. "sum != 0" on doubles means
// |sum| > 1e-12 * (sum of the moduli of the same products).

#include "vortex/geometry.hpp"

#include <span>
#include <string>
#include <vector>

namespace vortex {

inline constexpr std::size_t kMaxSubsetN = 20;
inline constexpr std::size_t kMaxPermutationN = 10;

/// Throws ConfigurationError if gamma is empty or has a zero entry.
void check_vorticity(std::span<const double> gamma);

/// sum_{i != j in C} gamma_i gamma_j (ordered pairs).
double pair_sum(std::span<const double> gamma, const std::vector<int>& subset);

struct DeltaResult {
    bool ok = true;
    std::vector<int> witness;  ///< first violating subset in bitmask order
};

struct PartialResult {
    bool ok = true;
    bool strictly_convex_variant = false;
    std::vector<int> witness;
};

enum class LKind { none, weak, strict };

struct LResult {
    LKind kind = LKind::none;
    Permutation sigma;  ///< sigma with +-iota(sigma * gamma) in Delta_N or its closure
    int sign = 1;       ///< +1: iota(sigma * gamma), -1: -iota(sigma * gamma)
};

enum class Theorem { none, general, multiply_connected };

struct AdmissibilityReport {
    DeltaResult delta;
    PartialResult partial;
    LResult l;
    Theorem theorem = Theorem::none;
};

/// CapacityError for N > 20.
DeltaResult is_delta_admissible(std::span<const double> gamma);
/// CapacityError for N > 20.
PartialResult is_partial_admissible(std::span<const double> gamma, bool strictly_convex);
/// Sort by modulus and test both sign-alternation phases.
LResult is_l_admissible(std::span<const double> gamma);
/// Search over all N! permutations (N <= 10, else CapacityError). Prefers strict witnesses.
LResult l_admissible_exhaustive(std::span<const double> gamma);

/// iota(sigma * gamma) scaled by sign: the sequence whose membership in Delta_N is tested.
std::vector<double> l_sequence(std::span<const double> gamma, const LResult& l);

AdmissibilityReport admissibility_report(std::span<const double> gamma, const Domain& domain);

std::string to_string(LKind k);
std::string to_string(Theorem t);

}  // namespace vortex
