#pragma once

// The Wilson hopping term
//
//   psi'_x = sum_mu { U_{x,mu} (1 + gamma_mu) psi_{x+mu}
//                   + U^dag_{x-mu,mu} (1 - gamma_mu) psi_{x-mu} }
//
// in two forms: a scalar reference that applies (1 +- gamma_mu) densely and
// uses plain complex arithmetic, and a vectorized kernel over the
// virtual-node layout that spin-projects to half spinors, multiplies SU(3)
// per color row with a selectable complex strategy, and exchanges lanes via
// permutes when a neighbor access crosses a virtual-node boundary.
//
// Conventions: the hopping term exactly as written above, no mass or
// normalization factor; periodic boundaries in all four dimensions.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "latvec/complex_kernels.hpp"
#include "latvec/fields.hpp"
#include "latvec/gamma.hpp"
#include "latvec/layout.hpp"
#include "latvec/simd.hpp"
#include "latvec/spinor.hpp"

namespace latvec {

// Standard operation-count model for one Wilson hopping-term application:
// 8 SU(3) half-spinor multiplies plus projections, reconstructions and
// accumulations per site. Used for reporting only.
constexpr double kFlopsPerSite = 1320.0;

// ---------------------------------------------------------------------------
// Scalar reference. Single-threaded, dense gamma application, no projection
// trick: the independent oracle the vector path is checked against.

template <typename T>
SpinorField<T> dslash_ref(const GaugeField<T>& u, const SpinorField<T>& psi) {
  const Geometry& g = u.geometry;
  if (g.dims != psi.geometry.dims)
    throw std::invalid_argument("gauge and spinor field geometry mismatch");
  SpinorField<T> out(g);
  for (std::int64_t x = 0; x < g.volume(); ++x) {
    const std::array<int, 4> c = lex_coord(x, g.dims);
    WilsonSpinor<T> acc;
    for (int mu = 0; mu < 4; ++mu) {
      std::array<int, 4> cf = c, cb = c;
      cf[mu] = (cf[mu] + 1) % g.dims[mu];
      cb[mu] = (cb[mu] + g.dims[mu] - 1) % g.dims[mu];
      const std::int64_t xf = lex_index(cf, g.dims);
      const std::int64_t xb = lex_index(cb, g.dims);

      const WilsonSpinor<T> fwd = one_pm_gamma_dense(mu, +1, psi.site(xf));
      const SU3Matrix<T> uf = u.link(x, mu);
      const WilsonSpinor<T> bwd = one_pm_gamma_dense(mu, -1, psi.site(xb));
      const SU3Matrix<T> ub = u.link(xb, mu);
      for (int s = 0; s < 4; ++s) {
        const ColorVec<T> vf = su3_mul(uf, ColorVec<T>{fwd(s, 0), fwd(s, 1), fwd(s, 2)});
        const ColorVec<T> vb = su3_mul(ub, ColorVec<T>{bwd(s, 0), bwd(s, 1), bwd(s, 2)},
                                       /*adjoint=*/true);
        for (int a = 0; a < 3; ++a) acc(s, a) += vf[a] + vb[a];
      }
    }
    out.set_site(x, acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Packed fields: pack_field output of the scalar storage under a layout.

template <typename T>
struct PackedSpinorField {
  VirtualNodeLayout layout;
  std::vector<T> data; // outer-site-major, 12 component blocks of 2*lanes reals

  std::span<T> comp(std::int64_t outer, int k) {
    const std::int64_t b = 2 * std::int64_t(layout.lanes);
    return {data.data() + (outer * 12 + k) * b, static_cast<std::size_t>(b)};
  }
  std::span<const T> comp(std::int64_t outer, int k) const {
    const std::int64_t b = 2 * std::int64_t(layout.lanes);
    return {data.data() + (outer * 12 + k) * b, static_cast<std::size_t>(b)};
  }
};

template <typename T>
struct PackedGaugeField {
  VirtualNodeLayout layout;
  std::vector<T> data; // outer-site-major, 4 * 9 component blocks

  std::span<const T> comp(std::int64_t outer, int mu, int r, int c) const {
    const std::int64_t b = 2 * std::int64_t(layout.lanes);
    return {data.data() + (outer * 36 + mu * 9 + r * 3 + c) * b, static_cast<std::size_t>(b)};
  }
};

template <typename T>
PackedSpinorField<T> pack_spinor(const VirtualNodeLayout& ly, const SpinorField<T>& psi) {
  return {ly, pack_field<T>(ly, as_reals(psi.data), 24)};
}

template <typename T>
SpinorField<T> unpack_spinor(const PackedSpinorField<T>& p) {
  SpinorField<T> psi(p.layout.geometry);
  std::vector<T> scalar = unpack_field<T>(p.layout, p.data, 24);
  std::span<T> dst = as_reals(psi.data);
  std::copy(scalar.begin(), scalar.end(), dst.begin());
  return psi;
}

template <typename T>
PackedGaugeField<T> pack_gauge(const VirtualNodeLayout& ly, const GaugeField<T>& u) {
  return {ly, pack_field<T>(ly, as_reals(u.data), 72)};
}

template <typename T>
GaugeField<T> unpack_gauge(const PackedGaugeField<T>& p) {
  GaugeField<T> u(p.layout.geometry);
  std::vector<T> scalar = unpack_field<T>(p.layout, p.data, 72);
  std::span<T> dst = as_reals(u.data);
  std::copy(scalar.begin(), scalar.end(), dst.begin());
  return u;
}

// ---------------------------------------------------------------------------
// Vectorized hopping term.

namespace detail {

inline blockops::Combine combine_of(SpinCoeff c) {
  switch (c) {
    case SpinCoeff::one: return blockops::Combine::add;
    case SpinCoeff::minus_one: return blockops::Combine::sub;
    case SpinCoeff::i: return blockops::Combine::add_i;
    case SpinCoeff::minus_i: return blockops::Combine::sub_i;
  }
  return blockops::Combine::add;
}

// Half-spinor and result temporaries: component blocks of at most 16
// complex lanes each.
constexpr int kMaxBlockReals = 32;

template <typename T>
struct BlockSet6 {
  std::array<T, 6 * kMaxBlockReals> data{};
  int block = 0;
  std::span<T> comp(int k) { return {data.data() + k * block, static_cast<std::size_t>(block)}; }
  std::span<const T> comp(int k) const {
    return {data.data() + k * block, static_cast<std::size_t>(block)};
  }
};

} // namespace detail

// U v or U^dag v on lane-blocked color vectors: u holds the nine row-major
// link components, in/out the three color components, each an interleaved
// block of the layout's lanes. The complex multiply-accumulates run under
// the selected strategy.
template <typename T>
void su3_mul_blocks(Strategy strat, const LaneShape& shape,
                    const std::array<std::span<const T>, 9>& u,
                    const std::array<std::span<const T>, 3>& in,
                    const std::array<std::span<T>, 3>& out, bool adjoint) {
  for (int r = 0; r < 3; ++r) {
    std::fill(out[r].begin(), out[r].end(), T(0));
    for (int c = 0; c < 3; ++c)
      blockops::cmadd<T>(strat, shape, out[r], adjoint ? u[3 * c + r] : u[3 * r + c], in[c],
                         /*conj_x=*/adjoint);
  }
}

// One direction-and-orientation term of the hopping sum, accumulated into
// the 12 result component blocks of one outer site.
template <typename T>
void dslash_vec_term(const PackedGaugeField<T>& u, const PackedSpinorField<T>& psi,
                     Strategy strat, const LaneShape& shape, std::int64_t outer, int mu, Dir dir,
                     std::array<std::span<T>, 12>& res) {
  const VirtualNodeLayout& ly = psi.layout;
  const int sign = dir == Dir::fwd ? +1 : -1;
  const NeighborView nv = neighbor_view(ly, outer, mu, dir);
  const SpinProjTable& table = spin_table(mu, sign);
  const int block = 2 * ly.lanes;

  // project the neighbor spinor onto two half-spinor rows
  detail::BlockSet6<T> h;
  h.block = block;
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a < 3; ++a)
      blockops::combine<T>(detail::combine_of(table.proj_coeff[k]), shape, h.comp(3 * k + a),
                           psi.comp(nv.outer_index, 3 * k + a),
                           psi.comp(nv.outer_index, 3 * table.partner[k] + a));

  // forward: the link lives at the home site, so cross-boundary data must
  // be brought into the home lane frame before the multiply
  if (dir == Dir::fwd && nv.permute_level >= 0) {
    detail::BlockSet6<T> hx;
    hx.block = block;
    for (int k = 0; k < 6; ++k)
      blockops::lane_exchange<T>(shape, hx.comp(k), h.comp(k), nv.permute_level);
    h = hx;
  }

  // U h (forward) or U^dag h (backward), per half-spin row
  const std::int64_t u_site = dir == Dir::fwd ? outer : nv.outer_index;
  std::array<std::span<const T>, 9> link;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) link[3 * r + c] = u.comp(u_site, mu, r, c);
  detail::BlockSet6<T> uh;
  uh.block = block;
  for (int k = 0; k < 2; ++k) {
    const std::array<std::span<const T>, 3> in{h.comp(3 * k), h.comp(3 * k + 1),
                                               h.comp(3 * k + 2)};
    const std::array<std::span<T>, 3> out{uh.comp(3 * k), uh.comp(3 * k + 1), uh.comp(3 * k + 2)};
    su3_mul_blocks<T>(strat, shape, link, in, out, /*adjoint=*/dir == Dir::bwd);
  }

  // backward: link and spinor were both in the neighbor frame, so the
  // exchange is deferred to the product
  if (dir == Dir::bwd && nv.permute_level >= 0) {
    detail::BlockSet6<T> ux;
    ux.block = block;
    for (int k = 0; k < 6; ++k)
      blockops::lane_exchange<T>(shape, ux.comp(k), uh.comp(k), nv.permute_level);
    uh = ux;
  }

  // reconstruct to four spin rows and accumulate
  for (int a = 0; a < 3; ++a) {
    blockops::combine<T>(blockops::Combine::add, shape, res[0 * 3 + a], res[0 * 3 + a],
                         uh.comp(a));
    blockops::combine<T>(blockops::Combine::add, shape, res[1 * 3 + a], res[1 * 3 + a],
                         uh.comp(3 + a));
    blockops::combine<T>(detail::combine_of(table.recon_coeff[0]), shape, res[2 * 3 + a],
                         res[2 * 3 + a], uh.comp(3 * table.recon_src[0] + a));
    blockops::combine<T>(detail::combine_of(table.recon_coeff[1]), shape, res[3 * 3 + a],
                         res[3 * 3 + a], uh.comp(3 * table.recon_src[1] + a));
  }
}

template <typename T>
PackedSpinorField<T> dslash_vec(const PackedGaugeField<T>& u, const PackedSpinorField<T>& psi,
                                Strategy strat, const LaneShape& shape) {
  if (strat == Strategy::scalar_ref)
    throw std::invalid_argument("scalar_ref is not a vector strategy; use dslash_ref");
  require_kind<T>(shape);
  if (u.layout.geometry.dims != psi.layout.geometry.dims || u.layout.lanes != psi.layout.lanes)
    throw std::invalid_argument("gauge and spinor fields packed under different layouts");

  const VirtualNodeLayout& ly = psi.layout;
  PackedSpinorField<T> out{ly, std::vector<T>(psi.data.size(), T(0))};

  std::array<std::array<T, detail::kMaxBlockReals>, 12> res_store{};
  for (std::int64_t outer = 0; outer < ly.outer_volume(); ++outer) {
    std::array<std::span<T>, 12> res;
    for (int k = 0; k < 12; ++k) {
      res_store[k].fill(T(0));
      res[k] = std::span<T>(res_store[k].data(), static_cast<std::size_t>(2 * ly.lanes));
    }
    for (int mu = 0; mu < 4; ++mu) {
      dslash_vec_term(u, psi, strat, shape, outer, mu, Dir::fwd, res);
      dslash_vec_term(u, psi, strat, shape, outer, mu, Dir::bwd, res);
    }
    for (int k = 0; k < 12; ++k) {
      std::span<T> dst = out.comp(outer, k);
      std::copy(res[k].begin(), res[k].end(), dst.begin());
    }
  }
  return out;
}

} // namespace latvec
