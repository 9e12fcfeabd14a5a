#pragma once

// Virtual-node decomposition of a 4-D lattice over SIMD lanes. Each split
// dimension contributes one factor of 2: the lattice is halved into two
// sub-lattices whose matching sites sit in lanes that differ in exactly one
// bit of the lane index. A nearest-neighbor access that crosses a
// sub-lattice boundary therefore maps to a single XOR-bit lane permute.
//
// Conventions, fixed once: lexicographic site order with x fastest; split
// factors assigned cyclically starting at x; periodic wrap in all four
// dimensions.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace latvec {

struct Geometry {
  std::array<int, 4> dims{};

  std::int64_t volume() const {
    return std::int64_t(dims[0]) * dims[1] * dims[2] * dims[3];
  }
};

inline Geometry make_geometry(std::array<int, 4> dims) {
  for (int d = 0; d < 4; ++d) {
    if (dims[d] < 2 || dims[d] % 2 != 0)
      throw std::invalid_argument("lattice extent " + std::to_string(d) +
                                  " must be even and at least 2");
  }
  return Geometry{dims};
}

inline std::int64_t lex_index(const std::array<int, 4>& coord, const std::array<int, 4>& dims) {
  return coord[0] +
         std::int64_t(dims[0]) * (coord[1] + std::int64_t(dims[1]) * (coord[2] + std::int64_t(dims[2]) * coord[3]));
}

inline std::array<int, 4> lex_coord(std::int64_t index, const std::array<int, 4>& dims) {
  std::array<int, 4> c{};
  for (int d = 0; d < 4; ++d) {
    c[d] = static_cast<int>(index % dims[d]);
    index /= dims[d];
  }
  return c;
}

// One lattice site addressed inside the decomposition: which outer site,
// which virtual node.
struct SiteRef {
  std::int64_t outer_index = 0;
  int lane = 0;
};

struct VirtualNodeLayout {
  Geometry geometry;
  int lanes = 1;                       // virtual nodes = complex lanes
  std::array<int, 4> simd_extent{};    // 1 or 2 per dimension
  std::array<int, 4> outer_dims{};     // dims / simd_extent
  std::array<int, 4> permute_bit{};    // lane bit per split dimension, -1 otherwise

  std::int64_t outer_volume() const {
    return std::int64_t(outer_dims[0]) * outer_dims[1] * outer_dims[2] * outer_dims[3];
  }
};

// Splits the lattice over `lanes` virtual nodes. Factors of 2 are assigned
// to dimensions cyclically starting at x while the dimension's outer extent
// stays even; each dimension takes at most one factor, so lane exchange in
// any direction is a single-bit permute and lanes is capped at 16.
inline VirtualNodeLayout make_layout(const Geometry& geometry, int lanes) {
  if (lanes < 1 || lanes > 16 || (lanes & (lanes - 1)) != 0)
    throw std::invalid_argument("virtual-node count must be 1, 2, 4, 8 or 16, got " +
                                std::to_string(lanes));
  VirtualNodeLayout ly;
  ly.geometry = geometry;
  ly.lanes = lanes;
  ly.simd_extent.fill(1);
  ly.outer_dims = geometry.dims;
  ly.permute_bit.fill(-1);

  int bit = 0;
  int remaining = 0;
  for (int l = lanes; l > 1; l /= 2) ++remaining;
  int d = 0;
  int visited_without_progress = 0;
  while (remaining > 0) {
    if (ly.simd_extent[d] == 1 && ly.outer_dims[d] % 2 == 0) {
      ly.simd_extent[d] = 2;
      ly.outer_dims[d] /= 2;
      ly.permute_bit[d] = bit++;
      --remaining;
      visited_without_progress = 0;
    } else if (++visited_without_progress >= 4) {
      throw std::invalid_argument("lattice dimensions cannot absorb " + std::to_string(lanes) +
                                  " virtual nodes");
    }
    d = (d + 1) % 4;
  }
  return ly;
}

inline SiteRef split_site(const VirtualNodeLayout& ly, const std::array<int, 4>& coord) {
  std::array<int, 4> outer{};
  int lane = 0;
  for (int d = 0; d < 4; ++d) {
    if (coord[d] < 0 || coord[d] >= ly.geometry.dims[d])
      throw std::invalid_argument("site coordinate out of range");
    const int sub = coord[d] / ly.outer_dims[d]; // which virtual node along d
    outer[d] = coord[d] % ly.outer_dims[d];
    if (sub != 0) lane |= sub << ly.permute_bit[d];
  }
  return SiteRef{lex_index(outer, ly.outer_dims), lane};
}

inline std::array<int, 4> join_site(const VirtualNodeLayout& ly, const SiteRef& ref) {
  if (ref.outer_index < 0 || ref.outer_index >= ly.outer_volume() || ref.lane < 0 ||
      ref.lane >= ly.lanes)
    throw std::invalid_argument("site reference out of range");
  std::array<int, 4> coord = lex_coord(ref.outer_index, ly.outer_dims);
  for (int d = 0; d < 4; ++d) {
    if (ly.simd_extent[d] == 2 && ((ref.lane >> ly.permute_bit[d]) & 1))
      coord[d] += ly.outer_dims[d];
  }
  return coord;
}

enum class Dir { fwd, bwd };

// Neighbor of an outer site in direction d. permute_level is the lane bit
// to exchange when the step crosses the virtual-node boundary, -1 when the
// access stays within every node's own sub-lattice.
struct NeighborView {
  std::int64_t outer_index = 0;
  int permute_level = -1;
};

inline NeighborView neighbor_view(const VirtualNodeLayout& ly, std::int64_t outer_index, int d,
                                  Dir dir) {
  if (d < 0 || d > 3) throw std::invalid_argument("direction index out of range");
  if (outer_index < 0 || outer_index >= ly.outer_volume())
    throw std::invalid_argument("outer index out of range");
  std::array<int, 4> o = lex_coord(outer_index, ly.outer_dims);
  const int extent = ly.outer_dims[d];
  bool wrapped = false;
  if (dir == Dir::fwd) {
    if (++o[d] == extent) {
      o[d] = 0;
      wrapped = true;
    }
  } else {
    if (o[d]-- == 0) {
      o[d] = extent - 1;
      wrapped = true;
    }
  }
  NeighborView nv;
  nv.outer_index = lex_index(o, ly.outer_dims);
  nv.permute_level = (wrapped && ly.simd_extent[d] == 2) ? ly.permute_bit[d] : -1;
  return nv;
}

// ---------------------------------------------------------------------------
// Field packing. A scalar field is one record of `record_size` reals per
// site in lexicographic order, each record an array of complex pairs. The
// packed form groups, per outer site and per record component, the `lanes`
// interleaved complex values of the virtual nodes -- component blocks at
// exactly the granularity the block kernels consume.

template <typename T>
std::vector<T> pack_field(const VirtualNodeLayout& ly, std::span<const T> scalar_field,
                          int record_size) {
  if (record_size <= 0 || record_size % 2 != 0)
    throw std::invalid_argument("record size must be a positive even real count");
  const std::int64_t volume = ly.geometry.volume();
  if (std::int64_t(scalar_field.size()) != volume * record_size)
    throw std::invalid_argument("scalar field size does not match geometry");
  const int ncomp = record_size / 2;
  const int lanes = ly.lanes;
  std::vector<T> packed(scalar_field.size());
  for (std::int64_t outer = 0; outer < ly.outer_volume(); ++outer) {
    for (int j = 0; j < lanes; ++j) {
      const std::int64_t site = lex_index(join_site(ly, SiteRef{outer, j}), ly.geometry.dims);
      const T* src = scalar_field.data() + site * record_size;
      T* dst = packed.data() + outer * record_size * lanes;
      for (int c = 0; c < ncomp; ++c) {
        dst[(std::int64_t(c) * lanes + j) * 2] = src[2 * c];
        dst[(std::int64_t(c) * lanes + j) * 2 + 1] = src[2 * c + 1];
      }
    }
  }
  return packed;
}

template <typename T>
std::vector<T> unpack_field(const VirtualNodeLayout& ly, std::span<const T> packed,
                            int record_size) {
  if (record_size <= 0 || record_size % 2 != 0)
    throw std::invalid_argument("record size must be a positive even real count");
  const std::int64_t volume = ly.geometry.volume();
  if (std::int64_t(packed.size()) != volume * record_size)
    throw std::invalid_argument("packed field size does not match geometry");
  const int ncomp = record_size / 2;
  const int lanes = ly.lanes;
  std::vector<T> scalar_field(packed.size());
  for (std::int64_t outer = 0; outer < ly.outer_volume(); ++outer) {
    for (int j = 0; j < lanes; ++j) {
      const std::int64_t site = lex_index(join_site(ly, SiteRef{outer, j}), ly.geometry.dims);
      T* dst = scalar_field.data() + site * record_size;
      const T* src = packed.data() + outer * record_size * lanes;
      for (int c = 0; c < ncomp; ++c) {
        dst[2 * c] = src[(std::int64_t(c) * lanes + j) * 2];
        dst[2 * c + 1] = src[(std::int64_t(c) * lanes + j) * 2 + 1];
      }
    }
  }
  return scalar_field;
}

} // namespace latvec
