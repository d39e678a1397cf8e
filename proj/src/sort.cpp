#include "oblivgraph/sort.hpp"

namespace oblivgraph {

namespace {

PublicInt pad_width(PublicInt len) {
  PublicInt w = 1;
  while (w < len) w <<= 1;
  return w;
}

// Keys are degrees (bounded by n); anything >= 2^62 sinks past them.
constexpr std::int64_t kPadKey = std::int64_t{1} << 62;

}  // namespace

std::vector<std::pair<PublicInt, PublicInt>> bitonic_gates(PublicInt width) {
  std::vector<std::pair<PublicInt, PublicInt>> gates;
  for (PublicInt block = 2; block <= width; block <<= 1) {
    for (PublicInt stride = block >> 1; stride > 0; stride >>= 1) {
      for (PublicInt i = 0; i < width; ++i) {
        PublicInt partner = i ^ stride;
        if (partner > i) {
          if ((i & block) == 0)
            gates.emplace_back(i, partner);  // ascending region
          else
            gates.emplace_back(partner, i);  // descending region
        }
      }
    }
  }
  return gates;
}

PublicInt sort_gate_count(PublicInt len) {
  if (len < 1) throw SizeError("sort length must be >= 1");
  PublicInt w = pad_width(len);
  PublicInt k = 0;
  while ((PublicInt{1} << k) < w) ++k;
  return k * (k + 1) / 2 * (w / 2);
}

void oblivious_sort(Abb& abb, ObliviousArray& keys, ObliviousArray& values, PublicInt len) {
  if (keys.length() != len || values.length() != len)
    throw SizeError("key/value arrays must both have the given length");
  if (keys.elem_kind() != ValueKind::integer || values.elem_kind() != ValueKind::integer)
    throw TypeError("oblivious_sort operates on integer arrays");

  PublicInt w = pad_width(len);
  auto& kst = abb.array_state(keys.id_);
  auto& vst = abb.array_state(values.id_);

  // Working handles over the raw cells; padding slots are stored fresh so
  // the trace shape is fixed by len alone.
  std::vector<SecretInt> k(static_cast<std::size_t>(w));
  std::vector<SecretInt> v(static_cast<std::size_t>(w));
  for (PublicInt i = 0; i < len; ++i) {
    k[static_cast<std::size_t>(i)] = abb.make_int(kst.data[static_cast<std::size_t>(i)]);
    v[static_cast<std::size_t>(i)] = abb.make_int(vst.data[static_cast<std::size_t>(i)]);
    if (abb.hook_) {
      abb.hook_->on_ideal(k[static_cast<std::size_t>(i)].h, kst.data[static_cast<std::size_t>(i)]);
      abb.hook_->on_ideal(v[static_cast<std::size_t>(i)].h, vst.data[static_cast<std::size_t>(i)]);
    }
  }
  for (PublicInt i = len; i < w; ++i) {
    k[static_cast<std::size_t>(i)] = abb.store_int(kPadKey);
    v[static_cast<std::size_t>(i)] = abb.store_int(0);
  }

  for (auto [lo, hi] : bitonic_gates(w)) {
    abb.emit(OpKind::sort_compare_exchange, ValueKind::integer, 0, TouchKind::none, 0, {lo, hi});
    auto a = k[static_cast<std::size_t>(lo)];
    auto b = k[static_cast<std::size_t>(hi)];
    auto swap = abb.lt(b, a);  // out of order?
    k[static_cast<std::size_t>(lo)] = abb.mux(swap, b, a);
    k[static_cast<std::size_t>(hi)] = abb.mux(swap, a, b);
    auto x = v[static_cast<std::size_t>(lo)];
    auto y = v[static_cast<std::size_t>(hi)];
    v[static_cast<std::size_t>(lo)] = abb.mux(swap, y, x);
    v[static_cast<std::size_t>(hi)] = abb.mux(swap, x, y);
  }

  for (PublicInt i = 0; i < len; ++i) {
    kst.data[static_cast<std::size_t>(i)] = abb.peek_raw(k[static_cast<std::size_t>(i)]);
    vst.data[static_cast<std::size_t>(i)] = abb.peek_raw(v[static_cast<std::size_t>(i)]);
  }
}

}  // namespace oblivgraph
