#include "vortex/admissibility.hpp"

#include "vortex/combinatorics.hpp"
#include "vortex/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace vortex {

namespace {

constexpr double kRelTol = 1e-12;

void check_capacity(std::size_t n, std::size_t limit)
{
    if (n > limit) {
        throw CapacityError("vorticity vector too long for exhaustive enumeration (N = " + std::to_string(n) +
                            ", limit " + std::to_string(limit) + ")");
    }
}

// Classifies a candidate sequence against Delta_N: 2 = strictly increasing positive,
// 1 = nondecreasing positive, 0 = neither.
int delta_class(const std::vector<double>& t)
{
    int cls = 2;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0)) {
            return 0;
        }
        if (i > 0) {
            if (t[i] < t[i - 1]) {
                return 0;
            }
            if (t[i] == t[i - 1]) {
                cls = 1;
            }
        }
    }
    return cls;
}

std::vector<double> signed_iota(std::span<const double> gamma, const Permutation& sigma, int sign)
{
    const std::vector<double> y = permute(sigma, gamma);
    std::vector<double> t(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        // (-1)^j with 1-based j.
        t[i] = sign * ((i % 2 == 0) ? -y[i] : y[i]);
    }
    return t;
}

}  // namespace

void check_vorticity(std::span<const double> gamma)
{
    if (gamma.empty()) {
        throw ConfigurationError("vorticity vector is empty");
    }
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (gamma[i] == 0.0 || !std::isfinite(gamma[i])) {
            throw ConfigurationError("vorticity " + std::to_string(i + 1) + " must be finite and nonzero");
        }
    }
}

double pair_sum(std::span<const double> gamma, const std::vector<int>& subset)
{
    double s = 0.0;
    double sq = 0.0;
    for (int i : subset) {
        s += gamma[i];
        sq += gamma[i] * gamma[i];
    }
    return s * s - sq;
}

DeltaResult is_delta_admissible(std::span<const double> gamma)
{
    check_capacity(gamma.size(), kMaxSubsetN);
    const std::uint32_t full = (1u << gamma.size());
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        if (std::popcount(mask) < 2) {
            continue;
        }
        const std::vector<int> c = subset_indices(mask);
        double s = 0.0, sq = 0.0, abs_s = 0.0;
        for (int i : c) {
            s += gamma[i];
            sq += gamma[i] * gamma[i];
            abs_s += std::abs(gamma[i]);
        }
        const double sum = s * s - sq;
        const double scale = abs_s * abs_s - sq;
        if (!(std::abs(sum) > kRelTol * scale)) {
            return DeltaResult{false, c};
        }
    }
    return DeltaResult{};
}

PartialResult is_partial_admissible(std::span<const double> gamma, bool strictly_convex)
{
    check_capacity(gamma.size(), kMaxSubsetN);
    PartialResult out;
    out.strictly_convex_variant = strictly_convex;
    const std::uint32_t full = (1u << gamma.size());
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        if (std::popcount(mask) < 2) {
            continue;
        }
        const std::vector<int> c = subset_indices(mask);
        double sq = 0.0, pos = 0.0, neg = 0.0;
        for (int i : c) {
            sq += gamma[i] * gamma[i];
            (gamma[i] > 0.0 ? pos : neg) += std::abs(gamma[i]);
        }
        // Ordered-pair sums: all pairs (|sum|^2 - sum of squares) or opposite-sign pairs only.
        const double rhs = strictly_convex ? 2.0 * pos * neg : (pos + neg) * (pos + neg) - sq;
        if (!(sq - rhs > kRelTol * (sq + rhs))) {
            out.ok = false;
            out.witness = c;
            return out;
        }
    }
    return out;
}

LResult is_l_admissible(std::span<const double> gamma)
{
    const std::size_t n = gamma.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return std::abs(gamma[a]) < std::abs(gamma[b]); });

    LResult best;
    for (int phase : {1, -1}) {
        // phase = sign of the first entry of sigma * gamma; position k needs phase * (-1)^k.
        std::vector<int> arranged(n);
        bool ok = true;
        bool ties = false;
        for (std::size_t a = 0; a < n && ok;) {
            std::size_t b = a + 1;
            while (b < n && std::abs(gamma[order[b]]) == std::abs(gamma[order[a]])) {
                ++b;
            }
            ties = ties || (b - a > 1);
            std::vector<int> plus, minus;
            for (std::size_t k = a; k < b; ++k) {
                (gamma[order[k]] > 0.0 ? plus : minus).push_back(order[k]);
            }
            std::size_t ip = 0, im = 0;
            for (std::size_t k = a; k < b; ++k) {
                const int want = (k % 2 == 0) ? phase : -phase;
                if (want > 0 && ip < plus.size()) {
                    arranged[k] = plus[ip++];
                } else if (want < 0 && im < minus.size()) {
                    arranged[k] = minus[im++];
                } else {
                    ok = false;
                    break;
                }
            }
            a = b;
        }
        if (!ok) {
            continue;
        }
        // sigma * gamma has slot k = gamma[arranged[k]], i.e. sigma^{-1}(k) = arranged[k].
        LResult r;
        r.sigma = Permutation::from_images(arranged).inverse();
        r.sign = phase > 0 ? -1 : 1;  // first slot positive => -iota(...) has a positive first entry
        r.kind = ties ? LKind::weak : LKind::strict;
        if (best.kind == LKind::none || (best.kind == LKind::weak && r.kind == LKind::strict)) {
            best = r;
        }
    }
    return best;
}

LResult l_admissible_exhaustive(std::span<const double> gamma)
{
    const std::size_t n = gamma.size();
    check_capacity(n, kMaxPermutationN);
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    LResult best;
    do {
        const Permutation sigma = Permutation::from_images(img);
        for (int sign : {1, -1}) {
            const int cls = delta_class(signed_iota(gamma, sigma, sign));
            if (cls == 2) {
                return LResult{LKind::strict, sigma, sign};
            }
            if (cls == 1 && best.kind == LKind::none) {
                best = LResult{LKind::weak, sigma, sign};
            }
        }
    } while (std::next_permutation(img.begin(), img.end()));
    return best;
}

std::vector<double> l_sequence(std::span<const double> gamma, const LResult& l)
{
    if (l.kind == LKind::none) {
        return {};
    }
    return signed_iota(gamma, l.sigma, l.sign);
}

AdmissibilityReport admissibility_report(std::span<const double> gamma, const Domain& domain)
{
    check_vorticity(gamma);
    AdmissibilityReport r;
    r.delta = is_delta_admissible(gamma);
    r.partial = is_partial_admissible(gamma, domain.strictly_convex());
    r.l = is_l_admissible(gamma);
    if (r.delta.ok && r.partial.ok && r.l.kind != LKind::none) {
        r.theorem = Theorem::general;
    } else if (r.delta.ok && r.partial.ok && domain.hole_count() > 0) {
        r.theorem = Theorem::multiply_connected;
    }
    return r;
}

std::string to_string(LKind k)
{
    switch (k) {
    case LKind::none:
        return "none";
    case LKind::weak:
        return "weak";
    case LKind::strict:
        return "strict";
    }
    return "none";
}

std::string to_string(Theorem t)
{
    switch (t) {
    case Theorem::none:
        return "none";
    case Theorem::general:
        return "general";
    case Theorem::multiply_connected:
        return "multiply_connected";
    }
    return "none";
}

}  // namespace vortex
