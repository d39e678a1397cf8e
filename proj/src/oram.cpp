#include "oblivgraph/oram.hpp"

namespace oblivgraph {

PublicInt ObliviousArray::length() const { return abb_->array_state(id_).length; }
ValueKind ObliviousArray::elem_kind() const { return abb_->array_state(id_).kind; }
OramBackend ObliviousArray::backend() const { return abb_->array_state(id_).backend; }
AccessCost ObliviousArray::access_cost() const { return abb_->array_cost(id_); }

SecretInt ObliviousArray::read_int(SecretInt idx) {
  if (elem_kind() != ValueKind::integer) throw TypeError("integer read on fixed array");
  std::uint64_t v = abb_->oram_read_value(id_, idx);
  SecretInt r = abb_->make_int(v);
  if (abb_->hook_) abb_->hook_->on_ideal(r.h, v);
  return r;
}

void ObliviousArray::write_int(SecretInt idx, SecretInt val) {
  if (elem_kind() != ValueKind::integer) throw TypeError("integer write on fixed array");
  abb_->oram_write_value(id_, idx, abb_->cell(val.h, val.src).v);
}

SecretFixed ObliviousArray::read_fixed(SecretInt idx) {
  if (elem_kind() != ValueKind::fixed) throw TypeError("fixed read on integer array");
  std::uint64_t v = abb_->oram_read_value(id_, idx);
  SecretFixed r = abb_->make_fixed(v);
  if (abb_->hook_) abb_->hook_->on_ideal(r.h, v);
  return r;
}

void ObliviousArray::write_fixed(SecretInt idx, SecretFixed val) {
  if (elem_kind() != ValueKind::fixed) throw TypeError("fixed write on integer array");
  abb_->oram_write_value(id_, idx, abb_->cell(val.h, val.src).v);
}

SecretInt ObliviousArray::read_int(PublicInt idx) {
  if (elem_kind() != ValueKind::integer) throw TypeError("integer read on fixed array");
  std::uint64_t v = abb_->oram_read_value(id_, idx);
  SecretInt r = abb_->make_int(v);
  if (abb_->hook_) abb_->hook_->on_ideal(r.h, v);
  return r;
}

void ObliviousArray::write_int(PublicInt idx, SecretInt val) {
  if (elem_kind() != ValueKind::integer) throw TypeError("integer write on fixed array");
  abb_->oram_write_value(id_, idx, abb_->cell(val.h, val.src).v);
}

SecretFixed ObliviousArray::read_fixed(PublicInt idx) {
  if (elem_kind() != ValueKind::fixed) throw TypeError("fixed read on integer array");
  std::uint64_t v = abb_->oram_read_value(id_, idx);
  SecretFixed r = abb_->make_fixed(v);
  if (abb_->hook_) abb_->hook_->on_ideal(r.h, v);
  return r;
}

void ObliviousArray::write_fixed(PublicInt idx, SecretFixed val) {
  if (elem_kind() != ValueKind::fixed) throw TypeError("fixed write on integer array");
  abb_->oram_write_value(id_, idx, abb_->cell(val.h, val.src).v);
}

}  // namespace oblivgraph
