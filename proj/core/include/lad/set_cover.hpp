#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace lad {

using ElementSet = boost::dynamic_bitset<>;

/// Repeatedly takes the set covering the most still-uncovered elements of
/// `universe`; ties go to the smaller index. Stops when nothing more can be
/// covered. Returns chosen indices in pick order.
std::vector<std::size_t> greedy_set_cover(std::span<const ElementSet> sets,
                                          const ElementSet& universe);

/// Minimum-cardinality cover of `universe` by branch and bound, seeded with
/// the greedy solution. Elements no set covers are ignored. Returns sorted
/// indices.
std::vector<std::size_t> exact_set_cover(std::span<const ElementSet> sets,
                                         const ElementSet& universe);

}  // namespace lad
