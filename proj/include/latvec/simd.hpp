#pragma once

// Width-generic emulation of an SVE-style vector register file: predicated
// loads/stores, structure (de)interleaving loads, fused real arithmetic,
// complex rotate-accumulate (FCMLA/FCADD analogs) and lane permutes.
//
// The vector width is a run-configuration value, not a compile-time
// constant: every register carries its lane count, chosen from a LaneShape.
// Registers are plain values; the only side effects are stores into
// caller-provided memory. Predication is zeroing only: inactive lanes of a
// load result are bit-exact zero, inactive lanes of a store leave memory
// untouched.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace latvec {

enum class ElemKind { f64, f32 };

inline const char* to_string(ElemKind k) {
  return k == ElemKind::f64 ? "f64" : "f32";
}

constexpr int kMinWidthBits = 128;
constexpr int kMaxWidthBits = 2048;

inline int elem_bits(ElemKind k) { return k == ElemKind::f64 ? 64 : 32; }

// Vector register geometry: element kind plus register width in bits.
// Valid widths are multiples of 128 between 128 and 2048.
struct LaneShape {
  ElemKind kind = ElemKind::f64;
  int width_bits = 128;

  int real_lanes() const { return width_bits / elem_bits(kind); }
  int complex_lanes() const { return real_lanes() / 2; }
};

inline LaneShape make_shape(ElemKind kind, int width_bits) {
  if (width_bits < kMinWidthBits || width_bits > kMaxWidthBits ||
      width_bits % kMinWidthBits != 0) {
    throw std::invalid_argument("vector width must be a multiple of 128 bits in [128, 2048], got " +
                                std::to_string(width_bits));
  }
  return LaneShape{kind, width_bits};
}

template <typename T>
constexpr ElemKind kind_of() {
  static_assert(std::is_same_v<T, double> || std::is_same_v<T, float>,
                "element type must be double or float");
  return std::is_same_v<T, double> ? ElemKind::f64 : ElemKind::f32;
}

template <typename T>
void require_kind(const LaneShape& s) {
  if (s.kind != kind_of<T>())
    throw std::invalid_argument("element kind of shape does not match register type");
}

enum class Granularity { real, cplx };

inline int lane_count(const LaneShape& s, Granularity g) {
  return g == Granularity::real ? s.real_lanes() : s.complex_lanes();
}

// ---------------------------------------------------------------------------
// Instruction accounting. One increment per emulated instruction (not per
// lane), kept thread-local so kernels can be compared by issue count.

struct OpCounts {
  std::uint64_t load = 0, store = 0, load2 = 0, store2 = 0;
  std::uint64_t mul = 0, add = 0, sub = 0, fma = 0;
  std::uint64_t fcmla = 0, fcadd = 0, permute = 0, convert = 0;

  std::uint64_t arithmetic() const { return mul + add + sub + fma + fcmla + fcadd; }
  std::uint64_t total() const {
    return load + store + load2 + store2 + arithmetic() + permute + convert;
  }
};

inline OpCounts& op_counts() {
  thread_local OpCounts counts;
  return counts;
}

inline void reset_op_counts() { op_counts() = OpCounts{}; }

// ---------------------------------------------------------------------------
// Predicate: one boolean per real lane.

constexpr int kMaxRealLanes = kMaxWidthBits / 32; // 64 f32 lanes at 2048 bits

struct Predicate {
  std::array<bool, kMaxRealLanes> mask{};
  int count = 0;

  bool operator[](int k) const { return mask[static_cast<std::size_t>(k)]; }
  bool any() const {
    for (int k = 0; k < count; ++k)
      if (mask[static_cast<std::size_t>(k)]) return true;
    return false;
  }
};

// All lanes of the shape active (ptrue analog).
inline Predicate all_active(const LaneShape& s) {
  Predicate p;
  p.count = s.real_lanes();
  for (int k = 0; k < p.count; ++k) p.mask[static_cast<std::size_t>(k)] = true;
  return p;
}

// whilelo analog: lane k is active while base + k < total. The resulting
// mask is monotone true-then-false, which is what makes stepping a loop
// counter by the lane count handle the array tail without extra code.
inline Predicate active_lanes(std::int64_t base, std::int64_t total, const LaneShape& s) {
  if (base < 0 || total < 0)
    throw std::invalid_argument("active_lanes: negative loop counter or element count");
  Predicate p;
  p.count = s.real_lanes();
  for (int k = 0; k < p.count; ++k)
    p.mask[static_cast<std::size_t>(k)] = base + k < total;
  return p;
}

// ---------------------------------------------------------------------------
// Vector register. Fixed lane count per value; no operation changes it.

template <typename T>
struct VReg {
  static constexpr int capacity = kMaxWidthBits / (8 * sizeof(T));

  std::array<T, static_cast<std::size_t>(capacity)> lane{};
  int count = 0;

  static VReg zeros(int n) {
    VReg r;
    r.count = n;
    return r;
  }
  static VReg splat(int n, T v) {
    VReg r;
    r.count = n;
    for (int k = 0; k < n; ++k) r.lane[static_cast<std::size_t>(k)] = v;
    return r;
  }
  // even lanes get ve, odd lanes vo
  static VReg alternating(int n, T ve, T vo) {
    VReg r;
    r.count = n;
    for (int k = 0; k < n; ++k) r.lane[static_cast<std::size_t>(k)] = (k % 2 == 0) ? ve : vo;
    return r;
  }

  T operator[](int k) const { return lane[static_cast<std::size_t>(k)]; }
  T& operator[](int k) { return lane[static_cast<std::size_t>(k)]; }
};

namespace detail {

template <typename T>
void require_same_count(const VReg<T>& a, const VReg<T>& b) {
  if (a.count != b.count) throw std::invalid_argument("vector operands differ in lane count");
}

template <typename T>
void require_pred(const VReg<T>& r, const Predicate& p) {
  if (r.count != p.count) throw std::invalid_argument("predicate length does not match lane count");
}

inline void require_pred_count(int lanes, const Predicate& p) {
  if (lanes != p.count) throw std::invalid_argument("predicate length does not match lane count");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Memory operations. An active lane reaching outside the span is a bounds
// error: it signals a harness bug, never valid tail handling.

template <typename T>
VReg<T> load_contiguous(std::span<const T> mem, std::size_t offset, const Predicate& pred) {
  ++op_counts().load;
  VReg<T> r = VReg<T>::zeros(pred.count);
  for (int k = 0; k < pred.count; ++k) {
    if (!pred[k]) continue;
    const std::size_t i = offset + static_cast<std::size_t>(k);
    if (i >= mem.size()) throw std::out_of_range("load_contiguous: active lane out of bounds");
    r[k] = mem[i];
  }
  return r;
}

template <typename T>
void store_contiguous(const VReg<T>& reg, std::span<T> mem, std::size_t offset,
                      const Predicate& pred) {
  ++op_counts().store;
  detail::require_pred(reg, pred);
  for (int k = 0; k < pred.count; ++k) {
    if (!pred[k]) continue;
    const std::size_t i = offset + static_cast<std::size_t>(k);
    if (i >= mem.size()) throw std::out_of_range("store_contiguous: active lane out of bounds");
    mem[i] = reg[k];
  }
}

// ld2 analog: active lane k reads the two-element structure at
// mem[offset + 2k]. First result gets the even (real) halves, second the
// odd (imaginary) halves.
template <typename T>
std::pair<VReg<T>, VReg<T>> load_deinterleave2(std::span<const T> mem, std::size_t offset,
                                               const Predicate& pred) {
  ++op_counts().load2;
  VReg<T> evens = VReg<T>::zeros(pred.count);
  VReg<T> odds = VReg<T>::zeros(pred.count);
  for (int k = 0; k < pred.count; ++k) {
    if (!pred[k]) continue;
    const std::size_t i = offset + 2 * static_cast<std::size_t>(k);
    if (i + 1 >= mem.size()) throw std::out_of_range("load_deinterleave2: active lane out of bounds");
    evens[k] = mem[i];
    odds[k] = mem[i + 1];
  }
  return {evens, odds};
}

// st2 analog: reassembles two-element structures and writes them back.
template <typename T>
void store_interleave2(const VReg<T>& evens, const VReg<T>& odds, std::span<T> mem,
                       std::size_t offset, const Predicate& pred) {
  ++op_counts().store2;
  detail::require_same_count(evens, odds);
  detail::require_pred(evens, pred);
  for (int k = 0; k < pred.count; ++k) {
    if (!pred[k]) continue;
    const std::size_t i = offset + 2 * static_cast<std::size_t>(k);
    if (i + 1 >= mem.size()) throw std::out_of_range("store_interleave2: active lane out of bounds");
    mem[i] = evens[k];
    mem[i + 1] = odds[k];
  }
}

// ---------------------------------------------------------------------------
// Real arithmetic. Unpredicated, one IEEE rounding per lane; fused ops use
// a single rounding for the whole multiply-accumulate.

template <typename T>
VReg<T> elementwise_mul(const VReg<T>& a, const VReg<T>& b) {
  ++op_counts().mul;
  detail::require_same_count(a, b);
  VReg<T> r = VReg<T>::zeros(a.count);
  for (int k = 0; k < a.count; ++k) r[k] = a[k] * b[k];
  return r;
}

template <typename T>
VReg<T> elementwise_add(const VReg<T>& a, const VReg<T>& b) {
  ++op_counts().add;
  detail::require_same_count(a, b);
  VReg<T> r = VReg<T>::zeros(a.count);
  for (int k = 0; k < a.count; ++k) r[k] = a[k] + b[k];
  return r;
}

template <typename T>
VReg<T> elementwise_sub(const VReg<T>& a, const VReg<T>& b) {
  ++op_counts().sub;
  detail::require_same_count(a, b);
  VReg<T> r = VReg<T>::zeros(a.count);
  for (int k = 0; k < a.count; ++k) r[k] = a[k] - b[k];
  return r;
}

enum class MulSign { add, sub };

// fmla/fmls analog: acc +- a*b, fused.
template <typename T>
VReg<T> fused_mul_add(const VReg<T>& acc, const VReg<T>& a, const VReg<T>& b, MulSign sign) {
  ++op_counts().fma;
  detail::require_same_count(acc, a);
  detail::require_same_count(a, b);
  VReg<T> r = VReg<T>::zeros(acc.count);
  for (int k = 0; k < acc.count; ++k) {
    const T m = sign == MulSign::add ? a[k] : -a[k];
    r[k] = std::fma(m, b[k], acc[k]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Complex arithmetic on interleaved lanes: even lane = real part, odd lane
// = imaginary part of complex element k = lane/2.

enum class Rotation { deg0, deg90, deg180, deg270 };

namespace detail {

template <typename T>
void require_complex(const VReg<T>& r) {
  if (r.count % 2 != 0) throw std::invalid_argument("complex operation on odd lane count");
}

} // namespace detail

// FCMLA analog. With x = a+ib, y = c+id and accumulator p+iq, one rotation
// contributes one product to each component, fused:
//   deg0:   (p + a*c, q + a*d)      deg90:  (p - b*d, q + b*c)
//   deg180: (p - a*c, q - a*d)      deg270: (p + b*d, q - b*c)
// deg0 then deg90 accumulates x*y; deg0 then deg270 accumulates conj(x)*y;
// deg180 then deg270 accumulates -x*y.
template <typename T>
VReg<T> fcmla(const VReg<T>& acc, const VReg<T>& x, const VReg<T>& y, Rotation rot) {
  ++op_counts().fcmla;
  detail::require_same_count(acc, x);
  detail::require_same_count(x, y);
  detail::require_complex(acc);
  VReg<T> r = VReg<T>::zeros(acc.count);
  for (int k = 0; k < acc.count; k += 2) {
    const T a = x[k], b = x[k + 1];
    const T c = y[k], d = y[k + 1];
    const T p = acc[k], q = acc[k + 1];
    T re = p, im = q;
    switch (rot) {
      case Rotation::deg0:
        re = std::fma(a, c, p);
        im = std::fma(a, d, q);
        break;
      case Rotation::deg90:
        re = std::fma(-b, d, p);
        im = std::fma(b, c, q);
        break;
      case Rotation::deg180:
        re = std::fma(-a, c, p);
        im = std::fma(-a, d, q);
        break;
      case Rotation::deg270:
        re = std::fma(b, d, p);
        im = std::fma(-b, c, q);
        break;
    }
    r[k] = re;
    r[k + 1] = im;
  }
  return r;
}

// FCADD analog: x + i*y (deg90) or x - i*y (deg270) per complex lane.
template <typename T>
VReg<T> fcadd(const VReg<T>& x, const VReg<T>& y, Rotation rot) {
  ++op_counts().fcadd;
  detail::require_same_count(x, y);
  detail::require_complex(x);
  if (rot != Rotation::deg90 && rot != Rotation::deg270)
    throw std::invalid_argument("fcadd rotation must be deg90 or deg270");
  VReg<T> r = VReg<T>::zeros(x.count);
  for (int k = 0; k < x.count; k += 2) {
    const T a = x[k], b = x[k + 1];
    const T c = y[k], d = y[k + 1];
    if (rot == Rotation::deg90) {
      r[k] = a - d;
      r[k + 1] = b + c;
    } else {
      r[k] = a + d;
      r[k + 1] = b - c;
    }
  }
  return r;
}

// Complex-lane permute: lane j trades places with lane j ^ (1 << level);
// real/imaginary halves move together. Levels index the binary hypercube
// of complex lanes, so the lane count must be a power of two.
template <typename T>
VReg<T> permute(const VReg<T>& reg, int level) {
  ++op_counts().permute;
  detail::require_complex(reg);
  const int cplx = reg.count / 2;
  const bool pow2 = cplx > 0 && (cplx & (cplx - 1)) == 0;
  if (!pow2 || level < 0 || (1 << level) >= cplx)
    throw std::invalid_argument("permute level out of range for complex lane count");
  VReg<T> r = VReg<T>::zeros(reg.count);
  for (int j = 0; j < cplx; ++j) {
    const int src = j ^ (1 << level);
    r[2 * j] = reg[2 * src];
    r[2 * j + 1] = reg[2 * src + 1];
  }
  return r;
}

// Intra-pair swap: real and imaginary halves exchange within each complex
// lane. Distinct from permute, which moves whole complex lanes.
template <typename T>
VReg<T> pair_swap(const VReg<T>& reg) {
  ++op_counts().permute;
  detail::require_complex(reg);
  VReg<T> r = VReg<T>::zeros(reg.count);
  for (int k = 0; k < reg.count; k += 2) {
    r[k] = reg[k + 1];
    r[k + 1] = reg[k];
  }
  return r;
}

// ---------------------------------------------------------------------------
// Precision conversion. Lane count is preserved; the f32 result logically
// occupies half the register width. f64 -> f32 rounds to nearest-even
// (overflow gives an IEEE infinity); f32 -> f64 is exact.

inline VReg<float> convert_precision(const VReg<double>& reg) {
  ++op_counts().convert;
  VReg<float> r = VReg<float>::zeros(reg.count);
  for (int k = 0; k < reg.count; ++k) r[k] = static_cast<float>(reg[k]);
  return r;
}

inline VReg<double> convert_precision(const VReg<float>& reg) {
  ++op_counts().convert;
  VReg<double> r = VReg<double>::zeros(reg.count);
  for (int k = 0; k < reg.count; ++k) r[k] = static_cast<double>(reg[k]);
  return r;
}

} // namespace latvec
