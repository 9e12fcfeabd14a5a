#pragma once

// Interchangeable complex-multiplication kernels over interleaved data:
//
//   scalar_ref    - unfused scalar reference, the oracle
//   deinterleave  - structure loads split re/im, real mul/fmla/fmls, st2
//   fcmla         - rotate-accumulate on interleaved registers, no splitting
//   real_permute  - real arithmetic plus intra-pair swaps, no fcmla, no
//                   structure memory ops (higher instruction count)
//
// plus fixed-width block operations on VecBlock, the register-sized array
// type the field kernels are built from.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "latvec/simd.hpp"

namespace latvec {

enum class Strategy { fcmla, deinterleave, real_permute, scalar_ref };

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::fcmla: return "fcmla";
    case Strategy::deinterleave: return "deinterleave";
    case Strategy::real_permute: return "real_permute";
    case Strategy::scalar_ref: return "scalar_ref";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// VecBlock: a register's worth of reals backed by an ordinary array, so it
// can live inside field containers of any layout. Total byte size always
// equals the configured register width; serialized arrays of blocks are
// contiguous, block k starting at offset k * real_lanes.

template <typename T>
struct VecBlock {
  std::array<T, static_cast<std::size_t>(VReg<T>::capacity)> v{};
  int count = 0; // real lanes of the configured shape

  static VecBlock zeros(const LaneShape& shape) {
    require_kind<T>(shape);
    VecBlock b;
    b.count = shape.real_lanes();
    return b;
  }

  std::span<T> reals() { return {v.data(), static_cast<std::size_t>(count)}; }
  std::span<const T> reals() const { return {v.data(), static_cast<std::size_t>(count)}; }

  std::complex<T> cplx(int j) const { return {v[2 * j], v[2 * j + 1]}; }
  void set_cplx(int j, std::complex<T> z) {
    v[2 * j] = z.real();
    v[2 * j + 1] = z.imag();
  }
};

namespace detail {

template <typename T>
void require_block(const VecBlock<T>& b, const LaneShape& shape) {
  require_kind<T>(shape);
  if (b.count != shape.real_lanes())
    throw std::invalid_argument("block size does not match configured vector width");
}

} // namespace detail

// ---------------------------------------------------------------------------
// ComplexArray: n complex numbers stored as 2n interleaved reals
// (re0, im0, re1, im1, ...).

template <typename T>
struct ComplexArray {
  std::vector<T> data;

  ComplexArray() = default;
  explicit ComplexArray(std::size_t n) : data(2 * n, T(0)) {}
  explicit ComplexArray(std::vector<T> reals) : data(std::move(reals)) {
    if (data.size() % 2 != 0)
      throw std::invalid_argument("interleaved complex array must have even length");
  }

  std::size_t size() const { return data.size() / 2; }
  std::complex<T> operator[](std::size_t j) const { return {data[2 * j], data[2 * j + 1]}; }
  void set(std::size_t j, std::complex<T> z) {
    data[2 * j] = z.real();
    data[2 * j + 1] = z.imag();
  }
};

namespace detail {

template <typename T>
void require_equal_n(const ComplexArray<T>& x, const ComplexArray<T>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("complex arrays differ in length");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Scalar reference: z_j = x_j * y_j as (ac-bd, ad+bc), unfused, evaluated
// left to right. Every vector strategy is checked against this.

template <typename T>
ComplexArray<T> cmul_scalar_ref(const ComplexArray<T>& x, const ComplexArray<T>& y) {
  detail::require_equal_n(x, y);
  ComplexArray<T> z(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const T a = x.data[2 * j], b = x.data[2 * j + 1];
    const T c = y.data[2 * j], d = y.data[2 * j + 1];
    z.data[2 * j] = a * c - b * d;
    z.data[2 * j + 1] = a * d + b * c;
  }
  return z;
}

// ---------------------------------------------------------------------------
// Structure-load strategy: ld2 splits each input into re/im registers, the
// products are assembled with real arithmetic in the fixed order
// mul, fmls (real part), mul, fmla (imaginary part), and st2 reassembles.

template <typename T>
ComplexArray<T> cmul_deinterleave(const ComplexArray<T>& x, const ComplexArray<T>& y,
                                  const LaneShape& shape) {
  detail::require_equal_n(x, y);
  require_kind<T>(shape);
  ComplexArray<T> z(x.size());
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  const int step = shape.real_lanes(); // structures per iteration
  for (std::int64_t base = 0; base < n; base += step) {
    const Predicate pg = active_lanes(base, n, shape);
    const std::size_t off = 2 * static_cast<std::size_t>(base);
    auto [a, b] = load_deinterleave2<T>(x.data, off, pg);
    auto [c, d] = load_deinterleave2<T>(y.data, off, pg);
    VReg<T> re = elementwise_mul(a, c);
    re = fused_mul_add(re, b, d, MulSign::sub);
    VReg<T> im = elementwise_mul(a, d);
    im = fused_mul_add(im, b, c, MulSign::add);
    store_interleave2(re, im, std::span<T>(z.data), off, pg);
  }
  return z;
}

// ---------------------------------------------------------------------------
// FCMLA strategy, vector-length agnostic: interleaved data is processed in
// place, two rotations per register, tail handled by the predicate.

template <typename T>
ComplexArray<T> cmul_fcmla_vla(const ComplexArray<T>& x, const ComplexArray<T>& y,
                               const LaneShape& shape) {
  detail::require_equal_n(x, y);
  require_kind<T>(shape);
  ComplexArray<T> z(x.size());
  const std::int64_t len = static_cast<std::int64_t>(x.data.size());
  const int step = shape.real_lanes();
  for (std::int64_t base = 0; base < len; base += step) {
    const Predicate pg = active_lanes(base, len, shape);
    const std::size_t off = static_cast<std::size_t>(base);
    const VReg<T> xr = load_contiguous<T>(x.data, off, pg);
    const VReg<T> yr = load_contiguous<T>(y.data, off, pg);
    VReg<T> acc = VReg<T>::zeros(pg.count);
    acc = fcmla(acc, xr, yr, Rotation::deg0);
    acc = fcmla(acc, xr, yr, Rotation::deg90);
    store_contiguous(acc, std::span<T>(z.data), off, pg);
  }
  return z;
}

// ---------------------------------------------------------------------------
// Fixed-width block kernels: exactly one register's worth of complex pairs,
// full predicate, no loop.

template <typename T>
VecBlock<T> cmul_fcmla_fixed(const VecBlock<T>& x, const VecBlock<T>& y, const LaneShape& shape) {
  detail::require_block(x, shape);
  detail::require_block(y, shape);
  const Predicate pg = all_active(shape);
  const VReg<T> xr = load_contiguous<T>(x.reals(), 0, pg);
  const VReg<T> yr = load_contiguous<T>(y.reals(), 0, pg);
  VReg<T> acc = VReg<T>::zeros(pg.count);
  acc = fcmla(acc, xr, yr, Rotation::deg0);
  acc = fcmla(acc, xr, yr, Rotation::deg90);
  VecBlock<T> z = VecBlock<T>::zeros(shape);
  store_contiguous(acc, z.reals(), 0, pg);
  return z;
}

// z + x*y (deg0, deg90) or z - x*y (deg180, deg270); the subtraction stays
// within the rotation vocabulary instead of negating an input.
template <typename T>
VecBlock<T> cmadd_fcmla(const VecBlock<T>& z, const VecBlock<T>& x, const VecBlock<T>& y,
                        MulSign sign, const LaneShape& shape) {
  detail::require_block(z, shape);
  detail::require_block(x, shape);
  detail::require_block(y, shape);
  const Predicate pg = all_active(shape);
  const VReg<T> xr = load_contiguous<T>(x.reals(), 0, pg);
  const VReg<T> yr = load_contiguous<T>(y.reals(), 0, pg);
  VReg<T> acc = load_contiguous<T>(z.reals(), 0, pg);
  if (sign == MulSign::add) {
    acc = fcmla(acc, xr, yr, Rotation::deg0);
    acc = fcmla(acc, xr, yr, Rotation::deg90);
  } else {
    acc = fcmla(acc, xr, yr, Rotation::deg180);
    acc = fcmla(acc, xr, yr, Rotation::deg270);
  }
  VecBlock<T> out = VecBlock<T>::zeros(shape);
  store_contiguous(acc, out.reals(), 0, pg);
  return out;
}

// conj(x) * y via deg0 then deg270.
template <typename T>
VecBlock<T> cconjmul_fcmla(const VecBlock<T>& x, const VecBlock<T>& y, const LaneShape& shape) {
  detail::require_block(x, shape);
  detail::require_block(y, shape);
  const Predicate pg = all_active(shape);
  const VReg<T> xr = load_contiguous<T>(x.reals(), 0, pg);
  const VReg<T> yr = load_contiguous<T>(y.reals(), 0, pg);
  VReg<T> acc = VReg<T>::zeros(pg.count);
  acc = fcmla(acc, xr, yr, Rotation::deg0);
  acc = fcmla(acc, xr, yr, Rotation::deg270);
  VecBlock<T> z = VecBlock<T>::zeros(shape);
  store_contiguous(acc, z.reals(), 0, pg);
  return z;
}

// ---------------------------------------------------------------------------
// Real-arithmetic fallback: complex multiply on interleaved registers using
// only mul, fma and intra-pair swaps. With x = |a|b| and y = |c|d| per lane:
//
//   u = x*y          -> |ac|bd|        v = swap(x)*y     -> |bc|ad|
//   t = blend(u, v)  -> |ac|ad|        s = blend(~u, ~v) -> |bd|bc|
//   out = t + s*(-1|+1)  -> |ac-bd|ad+bc|
//
// The blends are mul/fma against constant 0/1 masks, so the whole sequence
// stays in the real-arithmetic vocabulary.

namespace detail {

template <typename T>
VReg<T> cmul_permute_real_regs(const VReg<T>& xr, const VReg<T>& yr) {
  const int n = xr.count;
  const VReg<T> m_even = VReg<T>::alternating(n, T(1), T(0));
  const VReg<T> m_odd = VReg<T>::alternating(n, T(0), T(1));
  const VReg<T> u = elementwise_mul(xr, yr);
  const VReg<T> v = elementwise_mul(pair_swap(xr), yr);
  const VReg<T> t = fused_mul_add(elementwise_mul(u, m_even), v, m_odd, MulSign::add);
  const VReg<T> s = fused_mul_add(elementwise_mul(pair_swap(u), m_even), pair_swap(v), m_odd,
                                  MulSign::add);
  // sgn folds the per-lane sign into the final fused accumulate
  const VReg<T> sgn = VReg<T>::alternating(n, T(-1), T(1));
  return fused_mul_add(t, s, sgn, MulSign::add);
}

} // namespace detail

template <typename T>
VecBlock<T> cmul_permute_real(const VecBlock<T>& x, const VecBlock<T>& y, const LaneShape& shape) {
  detail::require_block(x, shape);
  detail::require_block(y, shape);
  const Predicate pg = all_active(shape);
  const VReg<T> xr = load_contiguous<T>(x.reals(), 0, pg);
  const VReg<T> yr = load_contiguous<T>(y.reals(), 0, pg);
  const VReg<T> out = detail::cmul_permute_real_regs(xr, yr);
  VecBlock<T> z = VecBlock<T>::zeros(shape);
  store_contiguous(out, z.reals(), 0, pg);
  return z;
}

// ---------------------------------------------------------------------------
// Block engine: the same kernels applied to interleaved component blocks of
// any complex count, iterated VLA-style in register-sized chunks. This is
// what the stencil kernel is assembled from.

namespace blockops {

// acc += x*y (or conj(x)*y) per complex element, by strategy.
template <typename T>
void cmadd(Strategy strat, const LaneShape& shape, std::span<T> acc, std::span<const T> x,
           std::span<const T> y, bool conj_x) {
  const std::int64_t len = static_cast<std::int64_t>(acc.size());
  const int step = shape.real_lanes();
  switch (strat) {
    case Strategy::fcmla:
      for (std::int64_t base = 0; base < len; base += step) {
        const Predicate pg = active_lanes(base, len, shape);
        const std::size_t off = static_cast<std::size_t>(base);
        const VReg<T> xr = load_contiguous<T>(x, off, pg);
        const VReg<T> yr = load_contiguous<T>(y, off, pg);
        VReg<T> a = load_contiguous<T>(acc, off, pg);
        a = fcmla(a, xr, yr, Rotation::deg0);
        a = fcmla(a, xr, yr, conj_x ? Rotation::deg270 : Rotation::deg90);
        store_contiguous(a, acc, off, pg);
      }
      return;
    case Strategy::deinterleave: {
      const std::int64_t n = len / 2;
      for (std::int64_t base = 0; base < n; base += step) {
        const Predicate pg = active_lanes(base, n, shape);
        const std::size_t off = 2 * static_cast<std::size_t>(base);
        auto [ar, ai] = load_deinterleave2<T>(acc, off, pg);
        auto [a, b] = load_deinterleave2<T>(x, off, pg);
        auto [c, d] = load_deinterleave2<T>(y, off, pg);
        ar = fused_mul_add(ar, a, c, MulSign::add);
        ar = fused_mul_add(ar, b, d, conj_x ? MulSign::add : MulSign::sub);
        ai = fused_mul_add(ai, a, d, MulSign::add);
        ai = fused_mul_add(ai, b, c, conj_x ? MulSign::sub : MulSign::add);
        store_interleave2(ar, ai, acc, off, pg);
      }
      return;
    }
    case Strategy::real_permute:
      for (std::int64_t base = 0; base < len; base += step) {
        const Predicate pg = active_lanes(base, len, shape);
        const std::size_t off = static_cast<std::size_t>(base);
        const VReg<T> xr = load_contiguous<T>(x, off, pg);
        const VReg<T> yr = load_contiguous<T>(y, off, pg);
        const VReg<T> a = load_contiguous<T>(acc, off, pg);
        const VReg<T> m_even = VReg<T>::alternating(pg.count, T(1), T(0));
        const VReg<T> m_odd = VReg<T>::alternating(pg.count, T(0), T(1));
        const VReg<T> ones = VReg<T>::splat(pg.count, T(1));
        const VReg<T> u = elementwise_mul(xr, yr);
        const VReg<T> v = elementwise_mul(pair_swap(xr), yr);
        const VReg<T> t = fused_mul_add(elementwise_mul(u, m_even), v, m_odd, MulSign::add);
        const VReg<T> s = fused_mul_add(elementwise_mul(pair_swap(u), m_even), pair_swap(v),
                                        m_odd, MulSign::add);
        const VReg<T> sgn = conj_x ? VReg<T>::alternating(pg.count, T(1), T(-1))
                                   : VReg<T>::alternating(pg.count, T(-1), T(1));
        VReg<T> r = fused_mul_add(a, s, sgn, MulSign::add);
        r = fused_mul_add(r, t, ones, MulSign::add);
        store_contiguous(r, acc, off, pg);
      }
      return;
    case Strategy::scalar_ref:
      break;
  }
  throw std::invalid_argument("scalar_ref is not a vector block strategy");
}

enum class Combine { add, sub, add_i, sub_i };

// dst = a (+|-) b or a (+|-) i*b per complex element.
template <typename T>
void combine(Combine mode, const LaneShape& shape, std::span<T> dst, std::span<const T> a,
             std::span<const T> b) {
  const std::int64_t len = static_cast<std::int64_t>(dst.size());
  const int step = shape.real_lanes();
  for (std::int64_t base = 0; base < len; base += step) {
    const Predicate pg = active_lanes(base, len, shape);
    const std::size_t off = static_cast<std::size_t>(base);
    const VReg<T> ar = load_contiguous<T>(a, off, pg);
    const VReg<T> br = load_contiguous<T>(b, off, pg);
    VReg<T> r;
    switch (mode) {
      case Combine::add: r = elementwise_add(ar, br); break;
      case Combine::sub: r = elementwise_sub(ar, br); break;
      case Combine::add_i: r = fcadd(ar, br, Rotation::deg90); break;
      case Combine::sub_i: r = fcadd(ar, br, Rotation::deg270); break;
    }
    store_contiguous(r, dst, off, pg);
  }
}

// Virtual-node neighbor exchange on one component block: complex element j
// of dst takes element j ^ (1 << level) of src. When the block fits in a
// single register this is one predicated load, a lane permute and a store;
// wider blocks exchange whole register chunks by addressing. dst and src
// must not overlap.
template <typename T>
void lane_exchange(const LaneShape& shape, std::span<T> dst, std::span<const T> src, int level) {
  if (dst.size() != src.size() || dst.size() % 2 != 0)
    throw std::invalid_argument("lane_exchange: bad block sizes");
  const int n_cplx = static_cast<int>(dst.size() / 2);
  if (n_cplx <= 0 || (n_cplx & (n_cplx - 1)) != 0 || level < 0 || (1 << level) >= n_cplx)
    throw std::invalid_argument("lane_exchange: level out of range for block");
  const int creg = shape.complex_lanes();
  const bool creg_pow2 = (creg & (creg - 1)) == 0;
  const int stride = 1 << level;

  if (creg_pow2 && n_cplx <= creg) {
    const Predicate pg = active_lanes(0, 2 * n_cplx, shape);
    store_contiguous(permute(load_contiguous<T>(src, 0, pg), level), dst, 0, pg);
  } else if (creg_pow2 && stride < creg) {
    // pairs sit inside each register chunk
    const Predicate pg = all_active(shape);
    for (int base = 0; base < n_cplx; base += creg) {
      const std::size_t off = 2 * static_cast<std::size_t>(base);
      store_contiguous(permute(load_contiguous<T>(src, off, pg), level), dst, off, pg);
    }
  } else if (creg_pow2) {
    // pairs are whole register chunks apart: exchange by addressing
    const Predicate pg = all_active(shape);
    const int chunk_stride = stride / creg;
    for (int chunk = 0; chunk < n_cplx / creg; ++chunk) {
      const std::size_t src_off = 2 * static_cast<std::size_t>((chunk ^ chunk_stride) * creg);
      const std::size_t dst_off = 2 * static_cast<std::size_t>(chunk * creg);
      store_contiguous(load_contiguous<T>(src, src_off, pg), dst, dst_off, pg);
    }
  } else {
    // non-power-of-two register: plain index remap
    for (int j = 0; j < n_cplx; ++j) {
      const int sj = j ^ stride;
      dst[2 * static_cast<std::size_t>(j)] = src[2 * static_cast<std::size_t>(sj)];
      dst[2 * static_cast<std::size_t>(j) + 1] = src[2 * static_cast<std::size_t>(sj) + 1];
    }
  }
}

} // namespace blockops

} // namespace latvec
