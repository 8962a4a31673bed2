#pragma once

// Independent reference implementations used by the unit tests and the
// acceptance runner. Deliberately naive: direct double loops, brute force.

#include "vortex/admissibility.hpp"
#include "vortex/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace oracle {

inline std::vector<std::vector<int>> subsets_of_size_two_or_more(std::size_t n)
{
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> c;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                c.push_back(static_cast<int>(i));
            }
        }
        if (c.size() >= 2) {
            out.push_back(c);
        }
    }
    return out;
}

inline bool delta_admissible(const std::vector<double>& g)
{
    for (const auto& c : subsets_of_size_two_or_more(g.size())) {
        double sum = 0.0, mag = 0.0;
        for (int i : c) {
            for (int j : c) {
                if (i != j) {
                    sum += g[i] * g[j];
                    mag += std::abs(g[i] * g[j]);
                }
            }
        }
        if (!(std::abs(sum) > 1e-12 * mag)) {
            return false;
        }
    }
    return true;
}

inline bool partial_admissible(const std::vector<double>& g, bool strictly_convex)
{
    for (const auto& c : subsets_of_size_two_or_more(g.size())) {
        double lhs = 0.0, rhs = 0.0;
        for (int i : c) {
            lhs += g[i] * g[i];
            for (int j : c) {
                if (i != j && (!strictly_convex || g[i] * g[j] < 0)) {
                    rhs += std::abs(g[i] * g[j]);
                }
            }
        }
        if (!(lhs - rhs > 1e-12 * (lhs + rhs))) {
            return false;
        }
    }
    return true;
}

/// Brute force over all orderings and both signs: 2 strict, 1 weak, 0 none.
inline int l_admissible(const std::vector<double>& g)
{
    std::vector<std::size_t> order(g.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    int best = 0;
    do {
        for (double sign : {1.0, -1.0}) {
            int cls = 2;
            double prev = 0.0;
            for (std::size_t k = 0; k < order.size() && cls > 0; ++k) {
                const double t = sign * ((k % 2 == 0) ? -1.0 : 1.0) * g[order[k]];
                if (t <= 0 || t < prev) {
                    cls = 0;
                } else if (t == prev) {
                    cls = 1;
                }
                prev = t;
            }
            best = std::max(best, cls);
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

inline int l_rank(vortex::LKind k) { return k == vortex::LKind::strict ? 2 : k == vortex::LKind::weak ? 1 : 0; }

/// Central differences of the energy, step h.
inline Eigen::VectorXd fd_gradient(const vortex::Greens& g, std::span<const double> gamma,
                                   const vortex::Configuration& c, double h)
{
    const Eigen::VectorXd z = vortex::to_vector(c);
    Eigen::VectorXd out(z.size());
    for (Eigen::Index k = 0; k < z.size(); ++k) {
        Eigen::VectorXd p = z, m = z;
        p[k] += h;
        m[k] -= h;
        out[k] = (vortex::energy(g, gamma, vortex::from_vector(p)) - vortex::energy(g, gamma, vortex::from_vector(m))) /
                 (2 * h);
    }
    return out;
}

}  // namespace oracle
