// Arithmetic black box: secret integer / fixed-point values behind opaque
// handles, the primitive operations protocols are composed of, and the
// trace hook that records one event per primitive invocation.
//
// Secrets live in a 64-bit ring (two's-complement signed interpretation).
// Fixed-point values are ring elements scaled by 2^-30. Nothing about a
// secret is observable except through release().

#ifndef OBLIVGRAPH_ABB_HPP_
#define OBLIVGRAPH_ABB_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace oblivgraph {

using PublicInt = std::int64_t;

constexpr int kRingBits = 64;
constexpr int kFracBits = 30;
// Largest magnitude storable as a fixed-point value: 2^(63-30).
constexpr double kFixedRange = 8589934592.0;

class AbbError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};
class HandleError : public AbbError {
 public:
  using AbbError::AbbError;
};
class RangeError : public AbbError {
 public:
  using AbbError::AbbError;
};
class SizeError : public AbbError {
 public:
  using AbbError::AbbError;
};
class ArithmeticFault : public AbbError {
 public:
  using AbbError::AbbError;
};
class OramIndexFault : public AbbError {
 public:
  using AbbError::AbbError;
};
class TypeError : public AbbError {
 public:
  using AbbError::AbbError;
};

enum class OpKind : std::uint8_t {
  store = 0,
  add = 1,
  sub = 2,
  mul = 3,
  div = 4,
  lt = 5,
  eq = 6,
  mux = 7,
  release = 8,
  oram_init = 9,
  oram_read = 10,
  oram_write = 11,
  sort_compare_exchange = 12,
};
constexpr int kNumOpKinds = 13;
const char* op_kind_name(OpKind k);

enum class ValueKind : std::uint8_t { none = 0, integer = 1, fixed = 2 };

// How an oram event touched memory. "scan" = full linear pass (index
// independent), "tree" = circuit cost-model access (index independent),
// "direct" = access at a public index (the index is a public operand).
enum class TouchKind : std::uint8_t { none = 0, scan = 1, tree = 2, direct = 3 };

enum class OramBackend : std::uint8_t { linear_scan = 0, circuit_cost_model = 1 };

enum class TraceMode : std::uint8_t { off = 0, digest_only = 1, full = 2 };

// One primitive invocation. Never carries a secret value or a secret
// index; public operands and the touch descriptor are all there is.
struct TraceEvent {
  OpKind op = OpKind::store;
  ValueKind kind = ValueKind::none;
  TouchKind touch = TouchKind::none;
  std::uint8_t n_pub = 0;
  std::uint32_t array_id = 0;  // 0 = no array involved
  std::array<std::int64_t, 2> pub{0, 0};

  // Canonical form: u8 op, u8 kind, u8 touch, u8 n_pub, u32 array_id LE,
  // then n_pub i64 little-endian public operands.
  void append_canonical(std::vector<std::uint8_t>& out) const;
  bool operator==(const TraceEvent&) const = default;
};

using Digest = std::array<std::uint8_t, 32>;
std::string digest_hex(const Digest& d);

// Handles. `src` ties a handle to the black-box instance that minted it.
struct SecretInt {
  std::uint32_t h = 0;
  std::uint32_t src = 0;
};
struct SecretFixed {
  std::uint32_t h = 0;
  std::uint32_t src = 0;
};

struct FixedValue {
  std::int64_t mantissa = 0;
  double to_double() const;
};

// Round-to-nearest, ties-to-even of num/den. den must be nonzero.
std::int64_t fixed_div_round_even(__int128 num, __int128 den);

struct OpCounts {
  std::array<std::uint64_t, kNumOpKinds> by_kind{};
  std::uint64_t operator[](OpKind k) const { return by_kind[static_cast<int>(k)]; }
  std::uint64_t total() const;
};

struct AccessCost {
  OramBackend backend = OramBackend::linear_scan;
  PublicInt length = 0;
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t charged_units = 0;
};

// Per-access primitive-op overhead f(n): n for the linear scan,
// ceil(log2 n)^2 for the circuit cost model.
std::uint64_t oram_access_cost(OramBackend backend, PublicInt length);

class Abb;
class ObliviousArray;
void oblivious_sort(Abb& abb, ObliviousArray& keys, ObliviousArray& values,
                    PublicInt len);

// Hook realizing store/add/mul/release over a concrete substrate (the
// mpc layer's additive shares). Everything the hybrid model services
// ideally arrives through on_ideal.
class ShareHook {
 public:
  virtual ~ShareHook() = default;
  virtual void on_store(std::uint32_t h, std::uint64_t value) = 0;
  virtual void on_add(std::uint32_t h, std::uint32_t a, std::uint32_t b) = 0;
  virtual void on_sub(std::uint32_t h, std::uint32_t a, std::uint32_t b) = 0;
  virtual void on_mul(std::uint32_t h, std::uint32_t a, std::uint32_t b) = 0;
  virtual void on_mux(std::uint32_t h, std::uint32_t c, std::uint32_t a,
                      std::uint32_t b) = 0;
  virtual void on_ideal(std::uint32_t h, std::uint64_t value) = 0;
  virtual std::uint64_t on_release(std::uint32_t h) = 0;
};

class Abb {
 public:
  explicit Abb(TraceMode mode = TraceMode::full, bool diagnostics = true);
  ~Abb();
  Abb(const Abb&) = delete;
  Abb& operator=(const Abb&) = delete;

  // --- integers ---
  SecretInt store_int(std::int64_t v);
  SecretInt add(SecretInt a, SecretInt b);
  SecretInt sub(SecretInt a, SecretInt b);
  SecretInt mul(SecretInt a, SecretInt b);
  SecretInt lt(SecretInt a, SecretInt b);  // signed a < b, result bit
  SecretInt eq(SecretInt a, SecretInt b);
  SecretInt mux(SecretInt c, SecretInt a, SecretInt b);  // c ? a : b
  std::int64_t release(SecretInt h);

  // --- fixed point ---
  SecretFixed store_fixed(double v);
  SecretFixed store_fixed_ratio(std::int64_t num, std::int64_t den);
  SecretFixed fx_add(SecretFixed a, SecretFixed b);
  SecretFixed fx_sub(SecretFixed a, SecretFixed b);
  SecretFixed fx_mul(SecretFixed a, SecretFixed b);
  // Round-to-nearest (ties to even) of the exact quotient. The engine
  // cannot test a secret divisor; with diagnostics on, a zero divisor
  // raises ArithmeticFault, otherwise the result is a defined dummy (0).
  SecretFixed fx_div(SecretFixed a, SecretFixed b);
  SecretInt fx_lt(SecretFixed a, SecretFixed b);
  SecretInt fx_eq(SecretFixed a, SecretFixed b);
  SecretFixed mux(SecretInt c, SecretFixed a, SecretFixed b);
  SecretFixed int_to_fixed(SecretInt a);
  FixedValue release(SecretFixed h);

  // --- oblivious memory ---
  ObliviousArray oram_init(PublicInt length, ValueKind kind, OramBackend backend);

  // --- instrumentation ---
  TraceMode trace_mode() const { return mode_; }
  bool diagnostics() const { return diagnostics_; }
  const OpCounts& op_counts() const { return counts_; }
  std::uint64_t event_count() const { return event_count_; }
  // Primitive-op units: 1 per scalar primitive, f(n) per oram access,
  // n per oram init.
  std::uint64_t charged_units() const { return charged_units_; }
  const std::vector<TraceEvent>& events() const;  // full mode only
  Digest digest() const;  // digest of all events emitted so far
  AccessCost array_cost(std::uint32_t array_id) const;

  void attach_share_hook(ShareHook* hook) { hook_ = hook; }

  // Host-side value inspection for diagnostics and test oracles.
  // Not a primitive: no trace event, no release semantics.
  std::uint64_t peek_raw(SecretInt h) const { return cell(h.h, h.src).v; }
  std::uint64_t peek_raw(SecretFixed h) const { return cell(h.h, h.src).v; }

 private:
  friend class ObliviousArray;
  friend void oblivious_sort(Abb& abb, ObliviousArray& keys, ObliviousArray& values,
                             PublicInt len);

  struct Cell {
    std::uint64_t v;
    ValueKind kind;
  };
  struct ArrayState {
    PublicInt length;
    ValueKind kind;
    OramBackend backend;
    std::vector<std::uint64_t> data;
    std::uint64_t reads = 0;
    std::uint64_t writes = 0;
    std::uint64_t charged = 0;
  };

  const Cell& cell(std::uint32_t h, std::uint32_t src) const;
  std::uint32_t new_cell(std::uint64_t v, ValueKind kind);
  SecretInt make_int(std::uint64_t v);
  SecretFixed make_fixed(std::uint64_t v);
  ArrayState& array_state(std::uint32_t id);
  const ArrayState& array_state(std::uint32_t id) const;

  void emit(OpKind op, ValueKind kind, std::uint64_t units, TouchKind touch = TouchKind::none,
            std::uint32_t array_id = 0, std::initializer_list<std::int64_t> pub = {});

  // oram access paths (called by ObliviousArray)
  std::uint64_t oram_read_value(std::uint32_t id, SecretInt idx);
  void oram_write_value(std::uint32_t id, SecretInt idx, std::uint64_t val);
  std::uint64_t oram_read_value(std::uint32_t id, PublicInt idx);
  void oram_write_value(std::uint32_t id, PublicInt idx, std::uint64_t val);

  TraceMode mode_;
  bool diagnostics_;
  std::uint32_t nonce_;
  std::vector<Cell> cells_;         // index 0 unused
  std::vector<ArrayState> arrays_;  // array_id - 1
  OpCounts counts_;
  std::uint64_t event_count_ = 0;
  std::uint64_t charged_units_ = 0;
  std::vector<TraceEvent> events_;
  struct DigestState;
  std::unique_ptr<DigestState> digest_state_;
  ShareHook* hook_ = nullptr;
};

}  // namespace oblivgraph

#endif  // OBLIVGRAPH_ABB_HPP_
