#pragma once

// Dirac matrices in the chiral (DeGrand-Rossi) basis, with
// gamma5 = diag(1, 1, -1, -1), plus the rank-2 spin projection and
// reconstruction tables for (1 +- gamma_mu). All entries are 0, +-1 or
// +-i, so projection and reconstruction are exact up to single additions.

#include <array>
#include <complex>
#include <stdexcept>

#include "latvec/spinor.hpp"

namespace latvec {

using Mat4 = std::array<std::complex<double>, 16>; // row-major 4x4

struct GammaSet {
  std::array<Mat4, 4> gamma; // x, y, z, t
  Mat4 gamma5;
};

inline const GammaSet& gamma_set() {
  static const GammaSet g = [] {
    const std::complex<double> I(0, 1);
    GammaSet s{};
    // gamma_x
    s.gamma[0] = {0, 0, 0, I, /**/ 0, 0, I, 0, /**/ 0, -I, 0, 0, /**/ -I, 0, 0, 0};
    // gamma_y
    s.gamma[1] = {0, 0, 0, -1, /**/ 0, 0, 1, 0, /**/ 0, 1, 0, 0, /**/ -1, 0, 0, 0};
    // gamma_z
    s.gamma[2] = {0, 0, I, 0, /**/ 0, 0, 0, -I, /**/ -I, 0, 0, 0, /**/ 0, I, 0, 0};
    // gamma_t
    s.gamma[3] = {0, 0, 1, 0, /**/ 0, 0, 0, 1, /**/ 1, 0, 0, 0, /**/ 0, 1, 0, 0};
    s.gamma5 = {1, 0, 0, 0, /**/ 0, 1, 0, 0, /**/ 0, 0, -1, 0, /**/ 0, 0, 0, -1};
    return s;
  }();
  return g;
}

// Dense application of a 4x4 spin matrix to a spinor, color by color.
template <typename T>
WilsonSpinor<T> apply_spin_matrix(const Mat4& m, const WilsonSpinor<T>& s) {
  WilsonSpinor<T> out;
  for (int r = 0; r < 4; ++r)
    for (int a = 0; a < 3; ++a) {
      std::complex<T> acc(0);
      for (int c = 0; c < 4; ++c) {
        const std::complex<double>& e = m[4 * r + c];
        if (e.real() == 0.0 && e.imag() == 0.0) continue;
        acc += std::complex<T>(static_cast<T>(e.real()), static_cast<T>(e.imag())) * s(c, a);
      }
      out(r, a) = acc;
    }
  return out;
}

// (1 +- gamma_mu) s computed densely; the oracle for the projection tables.
template <typename T>
WilsonSpinor<T> one_pm_gamma_dense(int mu, int sign, const WilsonSpinor<T>& s) {
  const Mat4& g = gamma_set().gamma[mu];
  WilsonSpinor<T> gs = apply_spin_matrix(g, s);
  WilsonSpinor<T> out;
  for (int k = 0; k < 12; ++k)
    out.c[k] = sign > 0 ? s.c[k] + gs.c[k] : s.c[k] - gs.c[k];
  return out;
}

// ---------------------------------------------------------------------------
// Projection tables. (1 +- gamma_mu) has rank 2: the result is determined
// by two half-spinor components
//     h_k = s_k + proj_coeff[k] * s_partner[k],       k = 0, 1
// and reconstructed as rows (h_0, h_1, rc_0 * h_{rs_0}, rc_1 * h_{rs_1}).
// Coefficients are +-1 or +-i only.

enum class SpinCoeff { one, minus_one, i, minus_i };

template <typename T>
std::complex<T> apply_coeff(SpinCoeff c, const std::complex<T>& z) {
  switch (c) {
    case SpinCoeff::one: return z;
    case SpinCoeff::minus_one: return -z;
    case SpinCoeff::i: return {-z.imag(), z.real()};
    case SpinCoeff::minus_i: return {z.imag(), -z.real()};
  }
  return z;
}

struct SpinProjTable {
  std::array<int, 2> partner;          // source spin for the projected add
  std::array<SpinCoeff, 2> proj_coeff; // factor on the partner component
  std::array<int, 2> recon_src;        // which h feeds rows 2 and 3
  std::array<SpinCoeff, 2> recon_coeff;
};

// Indexed by [mu][sign], sign 0 = plus, 1 = minus.
inline const SpinProjTable& spin_table(int mu, int sign) {
  using C = SpinCoeff;
  static const SpinProjTable tables[4][2] = {
      // mu = x: h = (s0 +- i s3, s1 +- i s2), rows 2,3 = -+i h1, -+i h0
      {{{3, 2}, {C::i, C::i}, {1, 0}, {C::minus_i, C::minus_i}},
       {{3, 2}, {C::minus_i, C::minus_i}, {1, 0}, {C::i, C::i}}},
      // mu = y: h = (s0 -+ s3, s1 +- s2), rows 2,3 = +-h1, -+h0
      {{{3, 2}, {C::minus_one, C::one}, {1, 0}, {C::one, C::minus_one}},
       {{3, 2}, {C::one, C::minus_one}, {1, 0}, {C::minus_one, C::one}}},
      // mu = z: h = (s0 +- i s2, s1 -+ i s3), rows 2,3 = -+i h0, +-i h1
      {{{2, 3}, {C::i, C::minus_i}, {0, 1}, {C::minus_i, C::i}},
       {{2, 3}, {C::minus_i, C::i}, {0, 1}, {C::i, C::minus_i}}},
      // mu = t: h = (s0 +- s2, s1 +- s3), rows 2,3 = +-h0, +-h1
      {{{2, 3}, {C::one, C::one}, {0, 1}, {C::one, C::one}},
       {{2, 3}, {C::minus_one, C::minus_one}, {0, 1}, {C::minus_one, C::minus_one}}},
  };
  if (mu < 0 || mu > 3) throw std::invalid_argument("direction index out of range");
  return tables[mu][sign > 0 ? 0 : 1];
}

// Two independent spin components of (1 +- gamma_mu) s.
template <typename T>
HalfSpinor<T> spin_project(const WilsonSpinor<T>& s, int mu, int sign) {
  const SpinProjTable& t = spin_table(mu, sign);
  HalfSpinor<T> h;
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a < 3; ++a)
      h(k, a) = s(k, a) + apply_coeff(t.proj_coeff[k], s(t.partner[k], a));
  return h;
}

template <typename T>
WilsonSpinor<T> spin_reconstruct(const HalfSpinor<T>& h, int mu, int sign) {
  const SpinProjTable& t = spin_table(mu, sign);
  WilsonSpinor<T> s;
  for (int a = 0; a < 3; ++a) {
    s(0, a) = h(0, a);
    s(1, a) = h(1, a);
    s(2, a) = apply_coeff(t.recon_coeff[0], h(t.recon_src[0], a));
    s(3, a) = apply_coeff(t.recon_coeff[1], h(t.recon_src[1], a));
  }
  return s;
}

} // namespace latvec
