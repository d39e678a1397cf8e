#include "oblivgraph/abb.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>

#include "oblivgraph/oram.hpp"

namespace oblivgraph {

namespace {

std::atomic<std::uint32_t> g_instance_counter{1};

inline std::int64_t as_signed(std::uint64_t v) { return static_cast<std::int64_t>(v); }
inline std::uint64_t as_ring(std::int64_t v) { return static_cast<std::uint64_t>(v); }

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void append_i64(std::vector<std::uint8_t>& out, std::int64_t v) {
  auto u = static_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
}

}  // namespace

const char* op_kind_name(OpKind k) {
  switch (k) {
    case OpKind::store: return "store";
    case OpKind::add: return "add";
    case OpKind::sub: return "sub";
    case OpKind::mul: return "mul";
    case OpKind::div: return "div";
    case OpKind::lt: return "lt";
    case OpKind::eq: return "eq";
    case OpKind::mux: return "mux";
    case OpKind::release: return "release";
    case OpKind::oram_init: return "oram_init";
    case OpKind::oram_read: return "oram_read";
    case OpKind::oram_write: return "oram_write";
    case OpKind::sort_compare_exchange: return "sort_compare_exchange";
  }
  return "?";
}

void TraceEvent::append_canonical(std::vector<std::uint8_t>& out) const {
  out.push_back(static_cast<std::uint8_t>(op));
  out.push_back(static_cast<std::uint8_t>(kind));
  out.push_back(static_cast<std::uint8_t>(touch));
  out.push_back(n_pub);
  append_u32(out, array_id);
  for (int i = 0; i < n_pub; ++i) append_i64(out, pub[i]);
}

std::string digest_hex(const Digest& d) {
  static const char* hex = "0123456789abcdef";
  std::string s;
  s.reserve(64);
  for (auto b : d) {
    s.push_back(hex[b >> 4]);
    s.push_back(hex[b & 0xf]);
  }
  return s;
}

double FixedValue::to_double() const { return std::ldexp(static_cast<double>(mantissa), -kFracBits); }

std::int64_t fixed_div_round_even(__int128 num, __int128 den) {
  bool neg = (num < 0) != (den < 0);
  unsigned __int128 n = num < 0 ? static_cast<unsigned __int128>(-num) : static_cast<unsigned __int128>(num);
  unsigned __int128 d = den < 0 ? static_cast<unsigned __int128>(-den) : static_cast<unsigned __int128>(den);
  unsigned __int128 q = n / d;
  unsigned __int128 r = n % d;
  unsigned __int128 twice = r << 1;
  if (twice > d || (twice == d && (q & 1))) ++q;
  auto mag = static_cast<std::uint64_t>(q);
  return neg ? -static_cast<std::int64_t>(mag) : static_cast<std::int64_t>(mag);
}

std::uint64_t OpCounts::total() const {
  std::uint64_t t = 0;
  for (auto c : by_kind) t += c;
  return t;
}

std::uint64_t oram_access_cost(OramBackend backend, PublicInt length) {
  if (backend == OramBackend::linear_scan) return static_cast<std::uint64_t>(length);
  std::uint64_t lg = 0;
  while ((PublicInt{1} << lg) < length) ++lg;  // ceil(log2 length)
  return lg * lg;
}

struct Abb::DigestState {
  EVP_MD_CTX* ctx;
  std::vector<std::uint8_t> buf;
  DigestState() : ctx(EVP_MD_CTX_new()) { EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr); }
  ~DigestState() { EVP_MD_CTX_free(ctx); }
  void absorb(const TraceEvent& ev) {
    buf.clear();
    ev.append_canonical(buf);
    EVP_DigestUpdate(ctx, buf.data(), buf.size());
  }
  Digest finalize_copy() const {
    Digest d{};
    EVP_MD_CTX* copy = EVP_MD_CTX_new();
    EVP_MD_CTX_copy_ex(copy, ctx);
    unsigned int len = 0;
    EVP_DigestFinal_ex(copy, d.data(), &len);
    EVP_MD_CTX_free(copy);
    return d;
  }
};

Abb::Abb(TraceMode mode, bool diagnostics)
    : mode_(mode),
      diagnostics_(diagnostics),
      nonce_(g_instance_counter.fetch_add(1, std::memory_order_relaxed)) {
  cells_.push_back({0, ValueKind::none});  // handle 0 is invalid
  if (mode_ != TraceMode::off) digest_state_ = std::make_unique<DigestState>();
}

Abb::~Abb() = default;

const Abb::Cell& Abb::cell(std::uint32_t h, std::uint32_t src) const {
  if (src != nonce_ || h == 0 || h >= cells_.size())
    throw HandleError("stale or foreign secret handle");
  return cells_[h];
}

std::uint32_t Abb::new_cell(std::uint64_t v, ValueKind kind) {
  cells_.push_back({v, kind});
  return static_cast<std::uint32_t>(cells_.size() - 1);
}

SecretInt Abb::make_int(std::uint64_t v) { return {new_cell(v, ValueKind::integer), nonce_}; }
SecretFixed Abb::make_fixed(std::uint64_t v) { return {new_cell(v, ValueKind::fixed), nonce_}; }

Abb::ArrayState& Abb::array_state(std::uint32_t id) {
  if (id == 0 || id > arrays_.size()) throw HandleError("unknown oblivious array");
  return arrays_[id - 1];
}
const Abb::ArrayState& Abb::array_state(std::uint32_t id) const {
  if (id == 0 || id > arrays_.size()) throw HandleError("unknown oblivious array");
  return arrays_[id - 1];
}

void Abb::emit(OpKind op, ValueKind kind, std::uint64_t units, TouchKind touch,
               std::uint32_t array_id, std::initializer_list<std::int64_t> pub) {
  ++counts_.by_kind[static_cast<int>(op)];
  ++event_count_;
  charged_units_ += units;
  if (mode_ == TraceMode::off) return;
  TraceEvent ev;
  ev.op = op;
  ev.kind = kind;
  ev.touch = touch;
  ev.array_id = array_id;
  ev.n_pub = static_cast<std::uint8_t>(pub.size());
  int i = 0;
  for (auto p : pub) ev.pub[i++] = p;
  digest_state_->absorb(ev);
  if (mode_ == TraceMode::full) events_.push_back(ev);
}

const std::vector<TraceEvent>& Abb::events() const {
  if (mode_ != TraceMode::full) throw AbbError("event list requires TraceMode::full");
  return events_;
}

Digest Abb::digest() const {
  if (mode_ == TraceMode::off) throw AbbError("digest requires tracing enabled");
  return digest_state_->finalize_copy();
}

AccessCost Abb::array_cost(std::uint32_t array_id) const {
  const auto& st = array_state(array_id);
  return {st.backend, st.length, st.reads, st.writes, st.charged};
}

// --- integer primitives ---

SecretInt Abb::store_int(std::int64_t v) {
  auto r = make_int(as_ring(v));
  emit(OpKind::store, ValueKind::integer, 1);
  if (hook_) hook_->on_store(r.h, as_ring(v));
  return r;
}

SecretInt Abb::add(SecretInt a, SecretInt b) {
  auto r = make_int(cell(a.h, a.src).v + cell(b.h, b.src).v);
  emit(OpKind::add, ValueKind::integer, 1);
  if (hook_) hook_->on_add(r.h, a.h, b.h);
  return r;
}

SecretInt Abb::sub(SecretInt a, SecretInt b) {
  auto r = make_int(cell(a.h, a.src).v - cell(b.h, b.src).v);
  emit(OpKind::sub, ValueKind::integer, 1);
  if (hook_) hook_->on_sub(r.h, a.h, b.h);
  return r;
}

SecretInt Abb::mul(SecretInt a, SecretInt b) {
  auto r = make_int(cell(a.h, a.src).v * cell(b.h, b.src).v);
  emit(OpKind::mul, ValueKind::integer, 1);
  if (hook_) hook_->on_mul(r.h, a.h, b.h);
  return r;
}

SecretInt Abb::lt(SecretInt a, SecretInt b) {
  auto r = make_int(as_signed(cell(a.h, a.src).v) < as_signed(cell(b.h, b.src).v) ? 1 : 0);
  emit(OpKind::lt, ValueKind::integer, 1);
  if (hook_) hook_->on_ideal(r.h, cells_[r.h].v);
  return r;
}

SecretInt Abb::eq(SecretInt a, SecretInt b) {
  auto r = make_int(cell(a.h, a.src).v == cell(b.h, b.src).v ? 1 : 0);
  emit(OpKind::eq, ValueKind::integer, 1);
  if (hook_) hook_->on_ideal(r.h, cells_[r.h].v);
  return r;
}

SecretInt Abb::mux(SecretInt c, SecretInt a, SecretInt b) {
  std::uint64_t cv = cell(c.h, c.src).v;
  if (diagnostics_ && cv > 1) throw ArithmeticFault("mux selector is not a bit");
  std::uint64_t rv = cv * cell(a.h, a.src).v + (1 - cv) * cell(b.h, b.src).v;
  auto r = make_int(rv);
  emit(OpKind::mux, ValueKind::integer, 1);
  if (hook_) hook_->on_mux(r.h, c.h, a.h, b.h);
  return r;
}

std::int64_t Abb::release(SecretInt h) {
  std::uint64_t v = cell(h.h, h.src).v;
  emit(OpKind::release, ValueKind::integer, 1);
  if (hook_) {
    std::uint64_t rec = hook_->on_release(h.h);
    if (rec != v) throw ArithmeticFault("share reconstruction diverged from ideal value");
  }
  return as_signed(v);
}

// --- fixed-point primitives ---

SecretFixed Abb::store_fixed(double v) {
  if (!(std::abs(v) < kFixedRange)) throw RangeError("fixed-point store out of range");
  double scaled = std::ldexp(v, kFracBits);
  auto m = static_cast<std::int64_t>(std::llrint(scaled));  // nearest, ties to even
  auto r = make_fixed(as_ring(m));
  emit(OpKind::store, ValueKind::fixed, 1);
  if (hook_) hook_->on_store(r.h, as_ring(m));
  return r;
}

SecretFixed Abb::store_fixed_ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ArithmeticFault("zero denominator");
  std::int64_t m = fixed_div_round_even(static_cast<__int128>(num) << kFracBits, den);
  double approx = std::ldexp(static_cast<double>(m), -kFracBits);
  if (!(std::abs(approx) < kFixedRange)) throw RangeError("fixed-point store out of range");
  auto r = make_fixed(as_ring(m));
  emit(OpKind::store, ValueKind::fixed, 1);
  if (hook_) hook_->on_store(r.h, as_ring(m));
  return r;
}

SecretFixed Abb::fx_add(SecretFixed a, SecretFixed b) {
  auto r = make_fixed(cell(a.h, a.src).v + cell(b.h, b.src).v);
  emit(OpKind::add, ValueKind::fixed, 1);
  if (hook_) hook_->on_add(r.h, a.h, b.h);
  return r;
}

SecretFixed Abb::fx_sub(SecretFixed a, SecretFixed b) {
  auto r = make_fixed(cell(a.h, a.src).v - cell(b.h, b.src).v);
  emit(OpKind::sub, ValueKind::fixed, 1);
  if (hook_) hook_->on_sub(r.h, a.h, b.h);
  return r;
}

SecretFixed Abb::fx_mul(SecretFixed a, SecretFixed b) {
  __int128 p = static_cast<__int128>(as_signed(cell(a.h, a.src).v)) *
               static_cast<__int128>(as_signed(cell(b.h, b.src).v));
  std::int64_t m = fixed_div_round_even(p, static_cast<__int128>(1) << kFracBits);
  auto r = make_fixed(as_ring(m));
  emit(OpKind::mul, ValueKind::fixed, 1);
  if (hook_) hook_->on_ideal(r.h, as_ring(m));
  return r;
}

SecretFixed Abb::fx_div(SecretFixed a, SecretFixed b) {
  std::int64_t bv = as_signed(cell(b.h, b.src).v);
  std::int64_t m = 0;
  if (bv == 0) {
    if (diagnostics_) throw ArithmeticFault("fixed-point division by zero");
  } else {
    m = fixed_div_round_even(static_cast<__int128>(as_signed(cell(a.h, a.src).v)) << kFracBits, bv);
  }
  auto r = make_fixed(as_ring(m));
  emit(OpKind::div, ValueKind::fixed, 1);
  if (hook_) hook_->on_ideal(r.h, as_ring(m));
  return r;
}

SecretInt Abb::fx_lt(SecretFixed a, SecretFixed b) {
  auto r = make_int(as_signed(cell(a.h, a.src).v) < as_signed(cell(b.h, b.src).v) ? 1 : 0);
  emit(OpKind::lt, ValueKind::fixed, 1);
  if (hook_) hook_->on_ideal(r.h, cells_[r.h].v);
  return r;
}

SecretInt Abb::fx_eq(SecretFixed a, SecretFixed b) {
  auto r = make_int(cell(a.h, a.src).v == cell(b.h, b.src).v ? 1 : 0);
  emit(OpKind::eq, ValueKind::fixed, 1);
  if (hook_) hook_->on_ideal(r.h, cells_[r.h].v);
  return r;
}

SecretFixed Abb::mux(SecretInt c, SecretFixed a, SecretFixed b) {
  std::uint64_t cv = cell(c.h, c.src).v;
  if (diagnostics_ && cv > 1) throw ArithmeticFault("mux selector is not a bit");
  std::uint64_t rv = cv * cell(a.h, a.src).v + (1 - cv) * cell(b.h, b.src).v;
  auto r = make_fixed(rv);
  emit(OpKind::mux, ValueKind::fixed, 1);
  if (hook_) hook_->on_mux(r.h, c.h, a.h, b.h);
  return r;
}

SecretFixed Abb::int_to_fixed(SecretInt a) {
  // Realized as multiplication by the stored scale constant 2^F.
  SecretInt scale = store_int(std::int64_t{1} << kFracBits);
  auto r = make_fixed(cell(a.h, a.src).v * cell(scale.h, scale.src).v);
  emit(OpKind::mul, ValueKind::fixed, 1);
  if (hook_) hook_->on_mul(r.h, a.h, scale.h);
  return r;
}

FixedValue Abb::release(SecretFixed h) {
  std::uint64_t v = cell(h.h, h.src).v;
  emit(OpKind::release, ValueKind::fixed, 1);
  if (hook_) {
    std::uint64_t rec = hook_->on_release(h.h);
    if (rec != v) throw ArithmeticFault("share reconstruction diverged from ideal value");
  }
  return {as_signed(v)};
}

// --- oblivious memory ---

ObliviousArray Abb::oram_init(PublicInt length, ValueKind kind, OramBackend backend) {
  if (length < 1) throw SizeError("oblivious array length must be >= 1");
  arrays_.push_back(ArrayState{length, kind, backend,
                               std::vector<std::uint64_t>(static_cast<std::size_t>(length), 0)});
  auto id = static_cast<std::uint32_t>(arrays_.size());
  emit(OpKind::oram_init, kind, static_cast<std::uint64_t>(length), TouchKind::none, id, {length});
  return ObliviousArray(this, id);
}

std::uint64_t Abb::oram_read_value(std::uint32_t id, SecretInt idx) {
  auto& st = array_state(id);
  std::uint64_t want = cell(idx.h, idx.src).v;
  if (diagnostics_ && (as_signed(want) < 1 || as_signed(want) > st.length))
    throw OramIndexFault("secret index out of range");
  std::uint64_t out = 0;
  if (st.backend == OramBackend::linear_scan) {
    // Branch-free scan; every cell is selected against and rewritten so
    // the physical pattern is identical for every index.
    for (PublicInt t = 1; t <= st.length; ++t) {
      std::uint64_t hit = -static_cast<std::uint64_t>(static_cast<std::uint64_t>(t) == want);
      std::uint64_t& c = st.data[static_cast<std::size_t>(t - 1)];
      out |= hit & c;
      c = (hit & c) | (~hit & c);
    }
  } else {
    if (as_signed(want) >= 1 && as_signed(want) <= st.length)
      out = st.data[static_cast<std::size_t>(want - 1)];
  }
  std::uint64_t units = oram_access_cost(st.backend, st.length);
  st.reads++;
  st.charged += units;
  emit(OpKind::oram_read, st.kind,
       units, st.backend == OramBackend::linear_scan ? TouchKind::scan : TouchKind::tree, id,
       {st.length});
  return out;
}

void Abb::oram_write_value(std::uint32_t id, SecretInt idx, std::uint64_t val) {
  auto& st = array_state(id);
  std::uint64_t want = cell(idx.h, idx.src).v;
  if (diagnostics_ && (as_signed(want) < 1 || as_signed(want) > st.length))
    throw OramIndexFault("secret index out of range");
  if (st.backend == OramBackend::linear_scan) {
    for (PublicInt t = 1; t <= st.length; ++t) {
      std::uint64_t hit = -static_cast<std::uint64_t>(static_cast<std::uint64_t>(t) == want);
      std::uint64_t& c = st.data[static_cast<std::size_t>(t - 1)];
      c = (hit & val) | (~hit & c);
    }
  } else {
    if (as_signed(want) >= 1 && as_signed(want) <= st.length)
      st.data[static_cast<std::size_t>(want - 1)] = val;
  }
  std::uint64_t units = oram_access_cost(st.backend, st.length);
  st.writes++;
  st.charged += units;
  emit(OpKind::oram_write, st.kind,
       units, st.backend == OramBackend::linear_scan ? TouchKind::scan : TouchKind::tree, id,
       {st.length});
}

std::uint64_t Abb::oram_read_value(std::uint32_t id, PublicInt idx) {
  auto& st = array_state(id);
  if (idx < 1 || idx > st.length) throw RangeError("public index out of range");
  std::uint64_t out = st.data[static_cast<std::size_t>(idx - 1)];
  std::uint64_t units = oram_access_cost(st.backend, st.length);
  st.reads++;
  st.charged += units;
  emit(OpKind::oram_read, st.kind, units, TouchKind::direct, id, {st.length, idx});
  return out;
}

void Abb::oram_write_value(std::uint32_t id, PublicInt idx, std::uint64_t val) {
  auto& st = array_state(id);
  if (idx < 1 || idx > st.length) throw RangeError("public index out of range");
  st.data[static_cast<std::size_t>(idx - 1)] = val;
  std::uint64_t units = oram_access_cost(st.backend, st.length);
  st.writes++;
  st.charged += units;
  emit(OpKind::oram_write, st.kind, units, TouchKind::direct, id, {st.length, idx});
}

}  // namespace oblivgraph
