#pragma once

// Subset and set-partition enumeration.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace vortex {

/// Indices of the set bits of mask.
inline std::vector<int> subset_indices(std::uint32_t mask)
{
    std::vector<int> out;
    for (int i = 0; mask != 0; ++i, mask >>= 1) {
        if (mask & 1u) {
            out.push_back(i);
        }
    }
    return out;
}

/// Calls fn(blocks) for every set partition of {0..n-1}, generated as
/// restricted growth strings in lexicographic order. fn returns false to stop.
template <class Fn>
void for_each_set_partition(std::size_t n, Fn&& fn)
{
    if (n == 0) {
        return;
    }
    std::vector<int> a(n, 0);  // a[i] = block of element i
    std::vector<std::vector<int>> blocks;
    for (;;) {
        int k = 0;
        for (int v : a) {
            k = v + 1 > k ? v + 1 : k;
        }
        blocks.assign(static_cast<std::size_t>(k), {});
        for (std::size_t i = 0; i < n; ++i) {
            blocks[static_cast<std::size_t>(a[i])].push_back(static_cast<int>(i));
        }
        if (!fn(static_cast<const std::vector<std::vector<int>>&>(blocks))) {
            return;
        }
        // Next restricted growth string.
        std::size_t i = n - 1;
        for (;;) {
            if (i == 0) {
                return;
            }
            int mx = 0;
            for (std::size_t j = 0; j < i; ++j) {
                mx = a[j] > mx ? a[j] : mx;
            }
            if (a[i] <= mx) {
                ++a[i];
                for (std::size_t j = i + 1; j < n; ++j) {
                    a[j] = 0;
                }
                break;
            }
            --i;
        }
    }
}

}  // namespace vortex
