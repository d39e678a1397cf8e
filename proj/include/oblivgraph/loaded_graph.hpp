#ifndef OBLIVGRAPH_LOADED_GRAPH_HPP_
#define OBLIVGRAPH_LOADED_GRAPH_HPP_

#include "oblivgraph/graph.hpp"
#include "oblivgraph/oram.hpp"

namespace oblivgraph {

// (E, Idx) stored inside the black box. E has m+1 cells (0 sentinel
// last), Idx has n+1 cells (Idx[n+1] = m+1).
struct LoadedGraph {
  PublicInt n = 0;
  PublicInt m = 0;
  ObliviousArray e;
  ObliviousArray idx;
};

LoadedGraph load_graph(Abb& abb, const EdgeList& el, OramBackend backend);

}  // namespace oblivgraph

#endif  // OBLIVGRAPH_LOADED_GRAPH_HPP_
