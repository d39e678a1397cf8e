// Oblivious key-value sort: an ascending bitonic network of
// compare-exchange gates (one lt + four mux each). The gate list is a
// function of the padded width alone, so the trace depends only on len.

#ifndef OBLIVGRAPH_SORT_HPP_
#define OBLIVGRAPH_SORT_HPP_

#include <utility>
#include <vector>

#include "oblivgraph/oram.hpp"

namespace oblivgraph {

// Sorts keys ascending, permuting values alongside. Both arrays must be
// integer arrays of the same length. Unstable.
void oblivious_sort(Abb& abb, ObliviousArray& keys, ObliviousArray& values,
                    PublicInt len);

// Compare-exchange gates after padding len to the next power of two
// w = 2^k: k(k+1)/2 * w/2.
PublicInt sort_gate_count(PublicInt len);

// Gate positions (lo, hi) meaning "ensure key[lo] <= key[hi]", 0-based,
// for a power-of-two width. Exposed for tests.
std::vector<std::pair<PublicInt, PublicInt>> bitonic_gates(PublicInt width);

}  // namespace oblivgraph

#endif  // OBLIVGRAPH_SORT_HPP_
