#include "oblivgraph/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace oblivgraph {

namespace {

// Dense edge key; node ids fit in 32 bits at any size this engine runs.
std::uint64_t edge_key(PublicInt u, PublicInt v) {
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

}  // namespace

std::vector<Edge> EdgeList::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m));
  for (PublicInt u = 1; u <= n; ++u)
    for (PublicInt t = Idx(u); t < Idx(u + 1); ++t) out.emplace_back(u, E(t));
  return out;
}

EdgeList build_edgelist(PublicInt n, const std::vector<Edge>& edges) {
  if (n < 1) throw ValidationError("node count must be >= 1");
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  std::string bad;
  for (const auto& [u, v] : edges) {
    if (u < 1 || u > n || v < 1 || v > n)
      bad += "out-of-range endpoint (" + std::to_string(u) + "," + std::to_string(v) + "); ";
    else if (u == v)
      bad += "self-loop (" + std::to_string(u) + "," + std::to_string(v) + "); ";
    else if (!seen.insert(edge_key(u, v)).second)
      bad += "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + "); ";
  }
  if (!bad.empty()) throw ValidationError("invalid edges: " + bad);

  auto m = static_cast<PublicInt>(edges.size());
  EdgeList el;
  el.n = n;
  el.m = m;
  el.e.assign(static_cast<std::size_t>(m + 1), 0);
  el.idx.assign(static_cast<std::size_t>(n + 1), 0);

  std::vector<PublicInt> od(static_cast<std::size_t>(n), 0);
  for (const auto& [u, v] : edges) od[static_cast<std::size_t>(u - 1)]++;

  // CSR-style starts realize the paper's Idx rule, including the
  // cascade for zero out-degree nodes and the m+1 sentinel.
  PublicInt start = 1;
  for (PublicInt u = 1; u <= n; ++u) {
    el.idx[static_cast<std::size_t>(u - 1)] = start;
    start += od[static_cast<std::size_t>(u - 1)];
  }
  el.idx[static_cast<std::size_t>(n)] = m + 1;

  std::vector<PublicInt> cursor(el.idx.begin(), el.idx.end() - 1);
  for (const auto& [u, v] : edges) {
    auto& c = cursor[static_cast<std::size_t>(u - 1)];
    el.e[static_cast<std::size_t>(c - 1)] = v;
    ++c;
  }
  el.e[static_cast<std::size_t>(m)] = 0;  // sentinel
  return el;
}

std::vector<std::string> validate_edgelist(const EdgeList& el) {
  std::vector<std::string> bad;
  if (el.n < 1) {
    bad.push_back("node-count");
    return bad;
  }
  if (el.e.size() != static_cast<std::size_t>(el.m + 1)) bad.push_back("e-length");
  if (el.idx.size() != static_cast<std::size_t>(el.n + 1)) bad.push_back("idx-length");
  if (!bad.empty()) return bad;

  if (el.E(el.m + 1) != 0) bad.push_back("e-sentinel");
  if (el.Idx(el.n + 1) != el.m + 1) bad.push_back("idx-sentinel");

  bool monotone = true, in_range = true;
  for (PublicInt u = 1; u <= el.n + 1; ++u) {
    if (el.Idx(u) < 1 || el.Idx(u) > el.m + 1) in_range = false;
    if (u > 1 && el.Idx(u) < el.Idx(u - 1)) monotone = false;
  }
  if (!in_range) bad.push_back("idx-range");
  if (!monotone) bad.push_back("idx-monotone");

  if (in_range && monotone) {
    PublicInt degree_sum = 0;
    for (PublicInt u = 1; u <= el.n; ++u) degree_sum += el.out_degree(u);
    if (degree_sum != el.m) bad.push_back("degree-sum");
  }
  for (PublicInt t = 1; t <= el.m; ++t)
    if (el.E(t) < 1 || el.E(t) > el.n) {
      bad.push_back("neighbor-range");
      break;
    }
  return bad;
}

EdgeList merge_party_inputs(const std::vector<PartyInput>& parts, PublicInt n) {
  std::vector<bool> owned(static_cast<std::size_t>(n) + 1, false);
  for (const auto& p : parts)
    for (PublicInt v : p.vertices) {
      if (v < 1 || v > n) throw ValidationError("party vertex out of range");
      if (owned[static_cast<std::size_t>(v)])
        throw ValidationError("overlapping vertex partitions at node " + std::to_string(v));
      owned[static_cast<std::size_t>(v)] = true;
    }
  for (PublicInt v = 1; v <= n; ++v)
    if (!owned[static_cast<std::size_t>(v)])
      throw ValidationError("vertex " + std::to_string(v) + " not covered by any partition");

  // Edge ownership: the reporter must own one endpoint.
  std::vector<PublicInt> owner(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& p : parts)
    for (PublicInt v : p.vertices) owner[static_cast<std::size_t>(v)] = p.party_id;

  std::vector<Edge> merged;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& p : parts)
    for (const auto& [u, v] : p.edges) {
      if (u < 1 || u > n || v < 1 || v > n) throw ValidationError("party edge out of range");
      if (owner[static_cast<std::size_t>(u)] != p.party_id &&
          owner[static_cast<std::size_t>(v)] != p.party_id)
        throw ValidationError("party " + std::to_string(p.party_id) +
                              " reports an edge it does not own");
      if (seen.insert(edge_key(u, v)).second) merged.emplace_back(u, v);
    }
  return build_edgelist(n, merged);
}

std::vector<Edge> symmetrize(const std::vector<Edge>& edges) {
  std::vector<Edge> out;
  std::unordered_set<std::uint64_t> seen;
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    if (seen.insert(edge_key(u, v)).second) out.emplace_back(u, v);
    if (seen.insert(edge_key(v, u)).second) out.emplace_back(v, u);
  }
  return out;
}

bool is_symmetric(const std::vector<Edge>& edges) {
  std::unordered_set<std::uint64_t> seen;
  for (const auto& [u, v] : edges) seen.insert(edge_key(u, v));
  for (const auto& [u, v] : edges)
    if (u == v || !seen.count(edge_key(v, u))) return false;
  return true;
}

std::vector<std::vector<PublicInt>> adjacency_from_edges(PublicInt n,
                                                         const std::vector<Edge>& edges) {
  std::vector<std::vector<PublicInt>> adj(static_cast<std::size_t>(n) + 1);
  for (const auto& [u, v] : edges) adj[static_cast<std::size_t>(u)].push_back(v);
  return adj;
}

namespace {

struct LineReader {
  std::istream& in;
  std::string name;
  int lineno = 0;
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(name + ":" + std::to_string(lineno) + ": " + what);
  }
};

bool parse_two_ints(const std::string& line, PublicInt& a, PublicInt& b) {
  std::istringstream ss(line);
  std::string rest;
  if (!(ss >> a >> b)) return false;
  if (ss >> rest) return false;
  return true;
}

}  // namespace

EdgeList parse_graph(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  std::string line;
  PublicInt n = 0, m = 0;
  if (!r.next(line)) throw ParseError(name + ": empty file");
  if (!parse_two_ints(line, n, m)) r.fail("expected header \"n m\"");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (PublicInt i = 0; i < m; ++i) {
    if (!r.next(line)) throw ParseError(name + ": expected " + std::to_string(m) +
                                        " edges, got " + std::to_string(i));
    PublicInt u = 0, v = 0;
    if (!parse_two_ints(line, u, v)) r.fail("expected edge \"u v\"");
    edges.emplace_back(u, v);
  }
  if (r.next(line)) r.fail("trailing content after " + std::to_string(m) + " edges");
  return build_edgelist(n, edges);
}

EdgeList read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_graph(in, path);
}

void write_graph_file(const std::string& path, const EdgeList& el) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << el.n << " " << el.m << "\n";
  for (const auto& [u, v] : el.edges()) out << u << " " << v << "\n";
}

PartyInput parse_party(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  std::string line;
  if (!r.next(line)) throw ParseError(name + ": empty file");
  PublicInt id = 0, k = 0;
  if (!parse_two_ints(line, id, k)) r.fail("expected header \"party_id k\"");
  PartyInput p;
  p.party_id = id;
  // k node ids, whitespace separated, possibly spanning lines.
  while (static_cast<PublicInt>(p.vertices.size()) < k) {
    if (!r.next(line)) throw ParseError(name + ": expected " + std::to_string(k) + " node ids");
    std::istringstream ss(line);
    PublicInt v;
    while (ss >> v && static_cast<PublicInt>(p.vertices.size()) < k) p.vertices.push_back(v);
    std::string rest;
    if (static_cast<PublicInt>(p.vertices.size()) == k && ss >> rest)
      r.fail("edge lines must start on a fresh line");
  }
  while (r.next(line)) {
    PublicInt u = 0, v = 0;
    if (!parse_two_ints(line, u, v)) r.fail("expected edge \"u v\"");
    p.edges.emplace_back(u, v);
  }
  return p;
}

PartyInput read_party_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_party(in, path);
}

}  // namespace oblivgraph
