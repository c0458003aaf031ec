// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive enumeration of integer partitions in multiplicity form.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hmc {

/// Calls visit(m) for every vector m = (m_1..m_n) with sum_k k m_k = n.
///
/// m is passed as a span of length n where m[k-1] is the multiplicity of part
/// k. For n = 0 the single empty partition is visited once.
inline void for_each_partition(std::size_t n, const std::function<void(std::span<const std::size_t>)>& visit)
{
    std::vector<std::size_t> counts(n, 0);
    // Fill multiplicities from the largest part down; remaining is what is
    // still to be covered by parts <= part.
    std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t part, std::size_t remaining) {
        if (remaining == 0) {
            visit(counts);
            return;
        }
        if (part == 0) {
            return;
        }
        for (std::size_t m = remaining / part + 1; m-- > 0;) {
            counts[part - 1] = m;
            recurse(part - 1, remaining - m * part);
        }
        counts[part - 1] = 0;
    };
    recurse(n, n);
}

inline std::size_t partition_count(std::size_t n)
{
    std::size_t count = 0;
    for_each_partition(n, [&](std::span<const std::size_t>) { ++count; });
    return count;
}

}  // namespace hmc
