// Oblivious arrays over two backends. The linear-scan backend realizes an
// index-hiding access by touching every cell; the circuit cost-model
// backend accesses cells directly and charges ceil(log2 n)^2 units per
// access for complexity experiments.

#ifndef OBLIVGRAPH_ORAM_HPP_
#define OBLIVGRAPH_ORAM_HPP_

#include "oblivgraph/abb.hpp"

namespace oblivgraph {

// Length-public array reachable only through read/write. A thin handle;
// storage lives in the owning Abb. 1-based indices, matching the
// protocol pseudocode.
class ObliviousArray {
 public:
  ObliviousArray() = default;

  std::uint32_t id() const { return id_; }
  PublicInt length() const;
  ValueKind elem_kind() const;
  OramBackend backend() const;
  AccessCost access_cost() const;

  // Index-hiding access with a secret index. A read also rewrites every
  // cell in the linear backend so read and write traces have the same
  // shape.
  SecretInt read_int(SecretInt idx);
  void write_int(SecretInt idx, SecretInt val);
  SecretFixed read_fixed(SecretInt idx);
  void write_fixed(SecretInt idx, SecretFixed val);

  // Access at a public index. Still charged at f(n) -- the array lives in
  // the ORAM -- but the touch descriptor carries the (public) index.
  SecretInt read_int(PublicInt idx);
  void write_int(PublicInt idx, SecretInt val);
  SecretFixed read_fixed(PublicInt idx);
  void write_fixed(PublicInt idx, SecretFixed val);

 private:
  friend class Abb;
  friend void oblivious_sort(Abb& abb, ObliviousArray& keys, ObliviousArray& values,
                             PublicInt len);
  ObliviousArray(Abb* abb, std::uint32_t id) : abb_(abb), id_(id) {}
  Abb* abb_ = nullptr;
  std::uint32_t id_ = 0;
};

}  // namespace oblivgraph

#endif  // OBLIVGRAPH_ORAM_HPP_
