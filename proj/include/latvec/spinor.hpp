#pragma once

// Color-spin payload types: SU(3) link matrices, 4x3 Wilson spinors and the
// rank-2 half spinors produced by spin projection. Scalar arithmetic here is
// plain std::complex -- this is the reference side of the artifact.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

#include "latvec/rng.hpp"

namespace latvec {

template <typename T>
using ColorVec = std::array<std::complex<T>, 3>;

// Row-major 3x3 complex matrix, unitary with unit determinant when produced
// by random_su3.
template <typename T>
struct SU3Matrix {
  std::array<std::complex<T>, 9> m{};

  std::complex<T>& operator()(int r, int c) { return m[3 * r + c]; }
  const std::complex<T>& operator()(int r, int c) const { return m[3 * r + c]; }

  static SU3Matrix identity() {
    SU3Matrix u;
    u(0, 0) = u(1, 1) = u(2, 2) = std::complex<T>(1);
    return u;
  }
};

// 4 spin x 3 color components, spin-major: component (s, a) at index 3s + a.
template <typename T>
struct WilsonSpinor {
  std::array<std::complex<T>, 12> c{};

  std::complex<T>& operator()(int s, int a) { return c[3 * s + a]; }
  const std::complex<T>& operator()(int s, int a) const { return c[3 * s + a]; }
};

// 2 spin x 3 color.
template <typename T>
struct HalfSpinor {
  std::array<std::complex<T>, 6> c{};

  std::complex<T>& operator()(int s, int a) { return c[3 * s + a]; }
  const std::complex<T>& operator()(int s, int a) const { return c[3 * s + a]; }
};

// U v or U^dag v.
template <typename T>
ColorVec<T> su3_mul(const SU3Matrix<T>& u, const ColorVec<T>& v, bool adjoint = false) {
  ColorVec<T> out{};
  for (int r = 0; r < 3; ++r) {
    std::complex<T> acc(0);
    for (int c = 0; c < 3; ++c) acc += (adjoint ? std::conj(u(c, r)) : u(r, c)) * v[c];
    out[r] = acc;
  }
  return out;
}

template <typename T>
SU3Matrix<T> su3_adjoint(const SU3Matrix<T>& u) {
  SU3Matrix<T> a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = std::conj(u(c, r));
  return a;
}

template <typename T>
SU3Matrix<T> su3_mat_mul(const SU3Matrix<T>& a, const SU3Matrix<T>& b) {
  SU3Matrix<T> out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      std::complex<T> acc(0);
      for (int k = 0; k < 3; ++k) acc += a(r, k) * b(k, c);
      out(r, c) = acc;
    }
  return out;
}

template <typename T>
std::complex<T> su3_det(const SU3Matrix<T>& u) {
  return u(0, 0) * (u(1, 1) * u(2, 2) - u(1, 2) * u(2, 1)) -
         u(0, 1) * (u(1, 0) * u(2, 2) - u(1, 2) * u(2, 0)) +
         u(0, 2) * (u(1, 0) * u(2, 1) - u(1, 1) * u(2, 0));
}

namespace detail {

inline constexpr std::uint64_t kGaugeStream = 0x5347u; // domain separation tags
inline constexpr std::uint64_t kAttemptStride = 0x1000000u;

inline std::complex<double> cdot3(const std::array<std::complex<double>, 3>& a,
                                  const std::array<std::complex<double>, 3>& b) {
  std::complex<double> s(0);
  for (int k = 0; k < 3; ++k) s += std::conj(a[k]) * b[k];
  return s;
}

} // namespace detail

// Deterministic random SU(3) matrix from (seed, site, mu): two rows of
// counter-based uniforms are Gram-Schmidt orthonormalized in double, the
// third row is the conjugate cross product, which fixes det U = 1. The
// construction retries with a bumped counter in the (practically
// unreachable) degenerate cases.
template <typename T>
SU3Matrix<T> random_su3(std::uint64_t seed, std::int64_t site, int mu) {
  using C = std::complex<double>;
  std::array<std::array<C, 3>, 3> r{};
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t tag = detail::kGaugeStream + attempt * detail::kAttemptStride;
    for (int row = 0; row < 2; ++row)
      for (int k = 0; k < 3; ++k)
        r[row][k] = C(uniform_signed(seed, tag, site, mu, 2 * (3 * row + k)),
                      uniform_signed(seed, tag, site, mu, 2 * (3 * row + k) + 1));

    double n0 = 0;
    for (int k = 0; k < 3; ++k) n0 += std::norm(r[0][k]);
    if (n0 < 1e-12) continue;
    const double inv0 = 1.0 / std::sqrt(n0);
    for (int k = 0; k < 3; ++k) r[0][k] *= inv0;

    const C proj = detail::cdot3(r[0], r[1]);
    for (int k = 0; k < 3; ++k) r[1][k] -= proj * r[0][k];
    double n1 = 0;
    for (int k = 0; k < 3; ++k) n1 += std::norm(r[1][k]);
    if (n1 < 1e-12) continue;
    const double inv1 = 1.0 / std::sqrt(n1);
    for (int k = 0; k < 3; ++k) r[1][k] *= inv1;

    // r2 = conj(r0 x r1)
    r[2][0] = std::conj(r[0][1] * r[1][2] - r[0][2] * r[1][1]);
    r[2][1] = std::conj(r[0][2] * r[1][0] - r[0][0] * r[1][2]);
    r[2][2] = std::conj(r[0][0] * r[1][1] - r[0][1] * r[1][0]);
    break;
  }
  SU3Matrix<T> u;
  for (int row = 0; row < 3; ++row)
    for (int k = 0; k < 3; ++k)
      u(row, k) = std::complex<T>(static_cast<T>(r[row][k].real()),
                                  static_cast<T>(r[row][k].imag()));
  return u;
}

} // namespace latvec
