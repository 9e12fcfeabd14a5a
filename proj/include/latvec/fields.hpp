#pragma once

// Whole-lattice fields in scalar (lexicographic) order, their deterministic
// random generation, and the field-level transforms used for verification.
//
// Storage orders, fixed once:
//   spinor field: per site, spin-major then color, complex entries
//   gauge field:  per site, direction-major then row-major 3x3

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "latvec/gamma.hpp"
#include "latvec/layout.hpp"
#include "latvec/rng.hpp"
#include "latvec/spinor.hpp"

namespace latvec {

template <typename T>
struct SpinorField {
  Geometry geometry;
  std::vector<std::complex<T>> data; // volume * 12

  explicit SpinorField(const Geometry& g) : geometry(g), data(g.volume() * 12) {}

  WilsonSpinor<T> site(std::int64_t x) const {
    WilsonSpinor<T> s;
    for (int k = 0; k < 12; ++k) s.c[k] = data[x * 12 + k];
    return s;
  }
  void set_site(std::int64_t x, const WilsonSpinor<T>& s) {
    for (int k = 0; k < 12; ++k) data[x * 12 + k] = s.c[k];
  }
};

template <typename T>
struct GaugeField {
  Geometry geometry;
  std::vector<std::complex<T>> data; // volume * 4 * 9

  explicit GaugeField(const Geometry& g) : geometry(g), data(g.volume() * 36) {}

  SU3Matrix<T> link(std::int64_t x, int mu) const {
    SU3Matrix<T> u;
    for (int k = 0; k < 9; ++k) u.m[k] = data[(x * 4 + mu) * 9 + k];
    return u;
  }
  void set_link(std::int64_t x, int mu, const SU3Matrix<T>& u) {
    for (int k = 0; k < 9; ++k) data[(x * 4 + mu) * 9 + k] = u.m[k];
  }
};

// std::complex<T> is layout-compatible with T[2], so fields expose their
// storage as interleaved reals for packing and I/O.
template <typename T>
std::span<const T> as_reals(const std::vector<std::complex<T>>& v) {
  return {reinterpret_cast<const T*>(v.data()), v.size() * 2};
}

template <typename T>
std::span<T> as_reals(std::vector<std::complex<T>>& v) {
  return {reinterpret_cast<T*>(v.data()), v.size() * 2};
}

// ---------------------------------------------------------------------------
// Deterministic random fields.

namespace detail {
inline constexpr std::uint64_t kSpinorStream = 0x5350u;
}

template <typename T>
GaugeField<T> random_gauge_field(const Geometry& g, std::uint64_t seed) {
  GaugeField<T> u(g);
  for (std::int64_t x = 0; x < g.volume(); ++x)
    for (int mu = 0; mu < 4; ++mu) u.set_link(x, mu, random_su3<T>(seed, x, mu));
  return u;
}

template <typename T>
GaugeField<T> unit_gauge_field(const Geometry& g) {
  GaugeField<T> u(g);
  for (std::int64_t x = 0; x < g.volume(); ++x)
    for (int mu = 0; mu < 4; ++mu) u.set_link(x, mu, SU3Matrix<T>::identity());
  return u;
}

// stream distinguishes independent fields drawn from the same seed.
template <typename T>
SpinorField<T> random_spinor_field(const Geometry& g, std::uint64_t seed,
                                   std::uint64_t stream = 0) {
  SpinorField<T> psi(g);
  for (std::int64_t x = 0; x < g.volume(); ++x)
    for (int k = 0; k < 12; ++k)
      psi.data[x * 12 + k] = std::complex<T>(
          static_cast<T>(uniform_signed(seed, detail::kSpinorStream + stream, x, 2 * k)),
          static_cast<T>(uniform_signed(seed, detail::kSpinorStream + stream, x, 2 * k + 1)));
  return psi;
}

template <typename T>
SpinorField<T> constant_spinor_field(const Geometry& g, const WilsonSpinor<T>& amplitude) {
  SpinorField<T> psi(g);
  for (std::int64_t x = 0; x < g.volume(); ++x) psi.set_site(x, amplitude);
  return psi;
}

// psi_x = exp(i p.x) * amplitude with momenta p_d = 2 pi n_d / L_d.
template <typename T>
SpinorField<T> plane_wave(const Geometry& g, const std::array<int, 4>& mode,
                          const WilsonSpinor<T>& amplitude) {
  SpinorField<T> psi(g);
  for (std::int64_t x = 0; x < g.volume(); ++x) {
    const std::array<int, 4> c = lex_coord(x, g.dims);
    double phase = 0;
    for (int d = 0; d < 4; ++d)
      phase += 2.0 * std::numbers::pi * mode[d] * c[d] / g.dims[d];
    const std::complex<double> f(std::cos(phase), std::sin(phase));
    WilsonSpinor<T> s;
    for (int k = 0; k < 12; ++k) {
      const std::complex<double> z =
          f * std::complex<double>(amplitude.c[k].real(), amplitude.c[k].imag());
      s.c[k] = std::complex<T>(static_cast<T>(z.real()), static_cast<T>(z.imag()));
    }
    psi.set_site(x, s);
  }
  return psi;
}

// ---------------------------------------------------------------------------
// Site-local SU(3) rotation of links and matter field:
//   psi_x -> W_x psi_x,   U_{x,mu} -> W_x U_{x,mu} W^dag_{x+mu}

template <typename T>
SpinorField<T> gauge_rotate_spinor(const SpinorField<T>& psi,
                                   const std::vector<SU3Matrix<T>>& omega) {
  if (std::int64_t(omega.size()) != psi.geometry.volume())
    throw std::invalid_argument("rotation field size does not match geometry");
  SpinorField<T> out(psi.geometry);
  for (std::int64_t x = 0; x < psi.geometry.volume(); ++x) {
    const WilsonSpinor<T> s = psi.site(x);
    WilsonSpinor<T> r;
    for (int sp = 0; sp < 4; ++sp) {
      const ColorVec<T> v = su3_mul(omega[x], ColorVec<T>{s(sp, 0), s(sp, 1), s(sp, 2)});
      for (int a = 0; a < 3; ++a) r(sp, a) = v[a];
    }
    out.set_site(x, r);
  }
  return out;
}

template <typename T>
std::pair<GaugeField<T>, SpinorField<T>> gauge_transform(const GaugeField<T>& u,
                                                         const SpinorField<T>& psi,
                                                         const std::vector<SU3Matrix<T>>& omega) {
  const Geometry& g = u.geometry;
  if (g.dims != psi.geometry.dims || std::int64_t(omega.size()) != g.volume())
    throw std::invalid_argument("gauge transform operands differ in geometry");
  GaugeField<T> out(g);
  for (std::int64_t x = 0; x < g.volume(); ++x) {
    std::array<int, 4> c = lex_coord(x, g.dims);
    for (int mu = 0; mu < 4; ++mu) {
      std::array<int, 4> cf = c;
      cf[mu] = (cf[mu] + 1) % g.dims[mu];
      const std::int64_t xf = lex_index(cf, g.dims);
      out.set_link(x, mu, su3_mat_mul(su3_mat_mul(omega[x], u.link(x, mu)), su3_adjoint(omega[xf])));
    }
  }
  return {std::move(out), gauge_rotate_spinor(psi, omega)};
}

template <typename T>
std::vector<SU3Matrix<T>> random_rotation_field(const Geometry& g, std::uint64_t seed) {
  std::vector<SU3Matrix<T>> omega(g.volume());
  for (std::int64_t x = 0; x < g.volume(); ++x)
    omega[x] = random_su3<T>(seed, x, 4); // mu = 4: distinct from link directions
  return omega;
}

// ---------------------------------------------------------------------------
// Reductions, accumulated in double regardless of the field precision.

template <typename T>
std::complex<double> inner_product(const SpinorField<T>& a, const SpinorField<T>& b) {
  if (a.geometry.dims != b.geometry.dims)
    throw std::invalid_argument("inner product operands differ in geometry");
  std::complex<double> acc(0);
  for (std::size_t k = 0; k < a.data.size(); ++k) {
    const std::complex<double> x(a.data[k].real(), a.data[k].imag());
    const std::complex<double> y(b.data[k].real(), b.data[k].imag());
    acc += std::conj(x) * y;
  }
  return acc;
}

template <typename T>
double norm_sq(const SpinorField<T>& a) {
  double acc = 0;
  for (const auto& z : a.data) acc += double(z.real()) * z.real() + double(z.imag()) * z.imag();
  return acc;
}

// max |a_i - b_i| / max |b_i| over all complex components.
template <typename T>
double max_rel_deviation(const SpinorField<T>& a, const SpinorField<T>& b) {
  if (a.geometry.dims != b.geometry.dims)
    throw std::invalid_argument("deviation operands differ in geometry");
  double num = 0, den = 0;
  for (std::size_t k = 0; k < a.data.size(); ++k) {
    const std::complex<double> x(a.data[k].real(), a.data[k].imag());
    const std::complex<double> y(b.data[k].real(), b.data[k].imag());
    num = std::max(num, std::abs(x - y));
    den = std::max(den, std::abs(y));
  }
  if (den == 0) return num == 0 ? 0 : std::numeric_limits<double>::infinity();
  return num / den;
}

} // namespace latvec
