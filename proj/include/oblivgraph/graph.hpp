// Edgelist graph representation (E, Idx): concatenated out-adjacency
// lists plus per-node start indices. Reveals only n and m. Includes
// assembly from per-party partitioned subgraphs.

#ifndef OBLIVGRAPH_GRAPH_HPP_
#define OBLIVGRAPH_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "oblivgraph/abb.hpp"

namespace oblivgraph {

using Edge = std::pair<PublicInt, PublicInt>;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The two-tuple (E, Idx), 1-based semantics:
//   E[1..m]   concatenated out-neighbor lists, E[m+1] = 0 sentinel
//   Idx[u]    start of u's list; Idx[u] = Idx[u+1] when od(u) = 0
//   Idx[n+1]  = m+1 (explicit sentinel so Idx[v+1] is defined for v = n)
struct EdgeList {
  PublicInt n = 0;
  PublicInt m = 0;
  std::vector<PublicInt> e;    // size m+1, slot t-1 holds E[t]
  std::vector<PublicInt> idx;  // size n+1, slot u-1 holds Idx[u]

  PublicInt E(PublicInt t) const { return e[static_cast<std::size_t>(t - 1)]; }
  PublicInt Idx(PublicInt u) const { return idx[static_cast<std::size_t>(u - 1)]; }
  PublicInt out_degree(PublicInt u) const { return Idx(u + 1) - Idx(u); }
  std::vector<Edge> edges() const;
};

// Per-party subgraph: a vertex partition plus the edges the party holds
// (all edges emanating from its partition, possibly also incoming ones
// in the both-endpoint model).
struct PartyInput {
  PublicInt party_id = 0;
  std::vector<PublicInt> vertices;
  std::vector<Edge> edges;
};

// Builds (E, Idx) from a directed simple graph. Neighbors of each node
// are stored contiguously in input order. Rejects out-of-range
// endpoints, duplicate edges and self-loops.
EdgeList build_edgelist(PublicInt n, const std::vector<Edge>& edges);

// Names of every violated EdgeList invariant; empty means valid.
std::vector<std::string> validate_edgelist(const EdgeList& el);

// Union of per-party edge sets, deduplicated on exact (u, v) identity
// (an edge may be reported by both endpoints' owners), then built.
// Throws on overlapping vertex partitions or incomplete cover of 1..n.
EdgeList merge_party_inputs(const std::vector<PartyInput>& parts, PublicInt n);

// For each (u, v) present ensures (v, u) is present too; removes
// self-loops and duplicates. First-occurrence order is kept.
std::vector<Edge> symmetrize(const std::vector<Edge>& edges);

bool is_symmetric(const std::vector<Edge>& edges);

// Out-adjacency lists (1-based outer index) for the oracle algorithms.
std::vector<std::vector<PublicInt>> adjacency_from_edges(PublicInt n,
                                                         const std::vector<Edge>& edges);

// Graph file: first line "n m", then m lines "u v" (1-based).
EdgeList read_graph_file(const std::string& path);
EdgeList parse_graph(std::istream& in, const std::string& name);
void write_graph_file(const std::string& path, const EdgeList& el);

// Party file: first line "party_id k", then k whitespace-separated node
// ids, then edge lines "u v".
PartyInput read_party_file(const std::string& path);
PartyInput parse_party(std::istream& in, const std::string& name);

}  // namespace oblivgraph

#endif  // OBLIVGRAPH_GRAPH_HPP_
