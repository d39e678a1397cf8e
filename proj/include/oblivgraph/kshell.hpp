// Oblivious K-shell decomposition: the nested peeling loops coalesced
// into a single fixed-length loop of n+m-1 iterations whose per-iteration
// work is branch-free. Plus the plain bucket-peeling oracle.

#ifndef OBLIVGRAPH_KSHELL_HPP_
#define OBLIVGRAPH_KSHELL_HPP_

#include "oblivgraph/loaded_graph.hpp"

namespace oblivgraph {

struct ShellResult {
  std::vector<PublicInt> shells;  // shells[v-1] = shell(v)
};

// Deliberately leaky variants for the obliviousness mutation tests.
// `none` is the production path; every other value re-introduces one of
// the classic leaks the coalesced protocol exists to avoid.
enum class KShellLeak {
  none,
  clear_branch,      // branch in clear on the advance condition
  direct_edge_read,  // E[j] fetched at the released secret cursor
  skip_dummy_swap,   // swap writes only performed when really swapping
  public_vert_read,  // vert[] fetched at released positions
  public_bin_write,  // bin[] updated at the released degree
};

struct KShellRun {
  ShellResult result;
  std::uint32_t e_array = 0;  // array ids, for trace-based op counting
  std::uint32_t idx_array = 0;
  std::uint32_t deg_array = 0;
  std::uint32_t vert_array = 0;
};

// Requires a symmetrized input (every edge present in both directions),
// checked in clear before any secret is created. The trace depends only
// on (n, m).
KShellRun kshell_oblivious(Abb& abb, const EdgeList& el,
                           OramBackend backend = OramBackend::linear_scan,
                           KShellLeak leak = KShellLeak::none);

// Classic peeling: repeatedly remove a minimum-degree vertex; a vertex's
// shell is its degree at removal (never letting recorded shells
// decrease). adjacency is 1-based.
ShellResult kshell_oracle(PublicInt n, const std::vector<std::vector<PublicInt>>& adjacency);

}  // namespace oblivgraph

#endif  // OBLIVGRAPH_KSHELL_HPP_
