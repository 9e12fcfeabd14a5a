#include "latvec/layout.hpp"

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "test_util.hpp"

using namespace latvec;

TEST(Geometry, Validation) {
  EXPECT_NO_THROW(make_geometry({2, 2, 2, 2}));
  EXPECT_NO_THROW(make_geometry({8, 8, 8, 16}));
  EXPECT_THROW(make_geometry({3, 4, 4, 4}), std::invalid_argument);
  EXPECT_THROW(make_geometry({0, 4, 4, 4}), std::invalid_argument);
  EXPECT_THROW(make_geometry({4, 4, 4, 1}), std::invalid_argument);
}

TEST(MakeLayout, CyclicSplitStartingAtX) {
  const VirtualNodeLayout l4 = make_layout(make_geometry({8, 8, 8, 16}), 4);
  EXPECT_EQ(l4.simd_extent, (std::array<int, 4>{2, 2, 1, 1}));
  EXPECT_EQ(l4.outer_dims, (std::array<int, 4>{4, 4, 8, 16}));
  EXPECT_EQ(l4.permute_bit[0], 0);
  EXPECT_EQ(l4.permute_bit[1], 1);
  EXPECT_EQ(l4.permute_bit[2], -1);

  const VirtualNodeLayout l16 = make_layout(make_geometry({8, 8, 8, 16}), 16);
  EXPECT_EQ(l16.simd_extent, (std::array<int, 4>{2, 2, 2, 2}));
  EXPECT_EQ(l16.outer_dims, (std::array<int, 4>{4, 4, 4, 8}));

  // one site per virtual node is legal
  const VirtualNodeLayout tiny = make_layout(make_geometry({2, 2, 2, 2}), 16);
  EXPECT_EQ(tiny.simd_extent, (std::array<int, 4>{2, 2, 2, 2}));
  EXPECT_EQ(tiny.outer_dims, (std::array<int, 4>{1, 1, 1, 1}));
  EXPECT_EQ(tiny.outer_volume(), 1);

  EXPECT_THROW(make_layout(make_geometry({8, 8, 8, 8}), 3), std::invalid_argument);
  EXPECT_THROW(make_layout(make_geometry({8, 8, 8, 8}), 32), std::invalid_argument);
  EXPECT_THROW(make_layout(make_geometry({8, 8, 8, 8}), 0), std::invalid_argument);
}

TEST(SplitSite, SubLatticeCoordinates) {
  const VirtualNodeLayout ly = make_layout(make_geometry({8, 8, 8, 16}), 4);
  // x extent 8 halves into sub-lattices [0,4) and [4,8)
  const SiteRef a = split_site(ly, {3, 0, 0, 0});
  EXPECT_EQ(a.lane, 0);
  EXPECT_EQ(a.outer_index, 3);
  const SiteRef b = split_site(ly, {4, 0, 0, 0});
  EXPECT_EQ(b.lane, 1);
  EXPECT_EQ(b.outer_index, 0);

  EXPECT_THROW(split_site(ly, {8, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(split_site(ly, {-1, 0, 0, 0}), std::invalid_argument);
}

TEST(SplitSite, SingleLaneIsLexicographic) {
  const VirtualNodeLayout ly = make_layout(make_geometry({4, 4, 4, 4}), 1);
  for (std::int64_t x = 0; x < ly.geometry.volume(); ++x) {
    const SiteRef r = split_site(ly, lex_coord(x, ly.geometry.dims));
    EXPECT_EQ(r.lane, 0);
    EXPECT_EQ(r.outer_index, x);
  }
}

TEST(SplitJoin, ExhaustiveBijection) {
  for (const std::array<int, 4> dims :
       {std::array<int, 4>{4, 4, 4, 4}, std::array<int, 4>{8, 8, 8, 16}}) {
    const Geometry g = make_geometry(dims);
    for (int lanes : {1, 2, 4, 8, 16}) {
      const VirtualNodeLayout ly = make_layout(g, lanes);
      std::set<std::pair<std::int64_t, int>> seen;
      for (std::int64_t x = 0; x < g.volume(); ++x) {
        const std::array<int, 4> coord = lex_coord(x, g.dims);
        const SiteRef r = split_site(ly, coord);
        ASSERT_LT(r.outer_index, ly.outer_volume());
        ASSERT_LT(r.lane, lanes);
        ASSERT_EQ(join_site(ly, r), coord);
        seen.insert({r.outer_index, r.lane});
      }
      ASSERT_EQ(std::int64_t(seen.size()), g.volume()) << "lanes " << lanes;
    }
  }
}

TEST(NeighborView, StepAndBoundaryPermute) {
  const VirtualNodeLayout ly = make_layout(make_geometry({8, 8, 8, 16}), 4);
  // interior step in x: outer size 4, o_x 1 -> 2, no permute
  const std::int64_t from = lex_index({1, 2, 3, 4}, ly.outer_dims);
  const NeighborView step = neighbor_view(ly, from, 0, Dir::fwd);
  EXPECT_EQ(step.outer_index, lex_index({2, 2, 3, 4}, ly.outer_dims));
  EXPECT_EQ(step.permute_level, -1);

  // crossing the sub-lattice edge in x exchanges at that dimension's bit
  const std::int64_t edge = lex_index({3, 2, 3, 4}, ly.outer_dims);
  const NeighborView cross = neighbor_view(ly, edge, 0, Dir::fwd);
  EXPECT_EQ(cross.outer_index, lex_index({0, 2, 3, 4}, ly.outer_dims));
  EXPECT_EQ(cross.permute_level, ly.permute_bit[0]);

  // unsplit dimension wraps periodically with no permute
  const std::int64_t tedge = lex_index({0, 0, 0, 15}, ly.outer_dims);
  const NeighborView twrap = neighbor_view(ly, tedge, 3, Dir::fwd);
  EXPECT_EQ(twrap.outer_index, lex_index({0, 0, 0, 0}, ly.outer_dims));
  EXPECT_EQ(twrap.permute_level, -1);

  EXPECT_THROW(neighbor_view(ly, -1, 0, Dir::fwd), std::invalid_argument);
  EXPECT_THROW(neighbor_view(ly, 0, 4, Dir::fwd), std::invalid_argument);
}

TEST(NeighborView, ForwardThenBackwardReturns) {
  for (int lanes : {1, 2, 4, 8, 16}) {
    const VirtualNodeLayout ly = make_layout(make_geometry({4, 4, 4, 4}), lanes);
    for (std::int64_t o = 0; o < ly.outer_volume(); ++o) {
      for (int d = 0; d < 4; ++d) {
        const NeighborView f = neighbor_view(ly, o, d, Dir::fwd);
        const NeighborView back = neighbor_view(ly, f.outer_index, d, Dir::bwd);
        ASSERT_EQ(back.outer_index, o);
        // permute levels met on the way out and back are the same bit
        ASSERT_EQ(back.permute_level, f.permute_level);
      }
    }
  }
}

TEST(NeighborView, CrossBoundaryNeighborsLandInDifferentLanes) {
  // exhaustive on 4^4: whenever two global nearest neighbors split across a
  // virtual-node boundary they sit in different lanes
  const Geometry g = make_geometry({4, 4, 4, 4});
  for (int lanes : {2, 4, 8, 16}) {
    const VirtualNodeLayout ly = make_layout(g, lanes);
    for (std::int64_t x = 0; x < g.volume(); ++x) {
      const std::array<int, 4> c = lex_coord(x, g.dims);
      const SiteRef here = split_site(ly, c);
      for (int d = 0; d < 4; ++d) {
        std::array<int, 4> cf = c;
        cf[d] = (cf[d] + 1) % g.dims[d];
        const SiteRef there = split_site(ly, cf);
        const NeighborView nv = neighbor_view(ly, here.outer_index, d, Dir::fwd);
        ASSERT_EQ(nv.outer_index, there.outer_index);
        if (nv.permute_level >= 0) {
          ASSERT_NE(here.lane, there.lane);
          ASSERT_EQ(here.lane ^ (1 << nv.permute_level), there.lane);
        } else {
          ASSERT_EQ(here.lane, there.lane);
        }
      }
    }
  }
}

TEST(PackField, SingleLaneIsIdentity) {
  const VirtualNodeLayout ly = make_layout(make_geometry({4, 4, 4, 4}), 1);
  const std::vector<double> field =
      testutil::random_reals<double>(ly.geometry.volume() * 24, 5);
  EXPECT_EQ(pack_field<double>(ly, field, 24), field);
  EXPECT_EQ(unpack_field<double>(ly, field, 24), field);
}

TEST(PackField, RoundtripBitwise) {
  const Geometry g = make_geometry({4, 4, 4, 4});
  for (int lanes : {2, 4, 8, 16}) {
    const VirtualNodeLayout ly = make_layout(g, lanes);
    for (int record : {2, 18, 24, 72}) {
      const std::vector<double> field =
          testutil::random_reals<double>(g.volume() * record, 7, record);
      const std::vector<double> packed = pack_field<double>(ly, field, record);
      ASSERT_EQ(unpack_field<double>(ly, packed, record), field)
          << "lanes " << lanes << " record " << record;
    }
  }
}

TEST(PackField, LaneBlockHoldsVirtualNodeValues) {
  // single outer site: dims 2x2x2x2 with 2 lanes -> outer volume 8; check
  // that component c of outer block o holds, lane by lane, the value of the
  // corresponding virtual node site
  const Geometry g = make_geometry({2, 2, 2, 2});
  const VirtualNodeLayout ly = make_layout(g, 2);
  const int record = 2; // one complex per site
  std::vector<double> field(g.volume() * record);
  for (std::int64_t x = 0; x < g.volume(); ++x) {
    field[2 * x] = double(x);
    field[2 * x + 1] = double(x) + 0.5;
  }
  const std::vector<double> packed = pack_field<double>(ly, field, record);
  for (std::int64_t o = 0; o < ly.outer_volume(); ++o) {
    for (int j = 0; j < 2; ++j) {
      const std::int64_t site = lex_index(join_site(ly, SiteRef{o, j}), g.dims);
      EXPECT_EQ(packed[(o * 2 + j) * 2], double(site));
      EXPECT_EQ(packed[(o * 2 + j) * 2 + 1], double(site) + 0.5);
    }
  }
}

TEST(PackField, SizeValidation) {
  const VirtualNodeLayout ly = make_layout(make_geometry({4, 4, 4, 4}), 2);
  std::vector<double> wrong(13);
  EXPECT_THROW(pack_field<double>(ly, wrong, 24), std::invalid_argument);
  EXPECT_THROW(unpack_field<double>(ly, wrong, 24), std::invalid_argument);
  std::vector<double> odd_record(ly.geometry.volume() * 3);
  EXPECT_THROW(pack_field<double>(ly, odd_record, 3), std::invalid_argument);
}
