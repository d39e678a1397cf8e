#include "oblivgraph/loaded_graph.hpp"

namespace oblivgraph {

LoadedGraph load_graph(Abb& abb, const EdgeList& el, OramBackend backend) {
  LoadedGraph g;
  g.n = el.n;
  g.m = el.m;
  g.e = abb.oram_init(el.m + 1, ValueKind::integer, backend);
  g.idx = abb.oram_init(el.n + 1, ValueKind::integer, backend);
  for (PublicInt t = 1; t <= el.m + 1; ++t) g.e.write_int(t, abb.store_int(el.E(t)));
  for (PublicInt u = 1; u <= el.n + 1; ++u) g.idx.write_int(u, abb.store_int(el.Idx(u)));
  return g;
}

}  // namespace oblivgraph
