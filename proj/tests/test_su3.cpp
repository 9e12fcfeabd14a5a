#include "latvec/spinor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "latvec/dslash.hpp"
#include "test_util.hpp"

using namespace latvec;
using C = std::complex<double>;

namespace {

template <typename T>
double unitarity_defect(const SU3Matrix<T>& u) {
  // max entry of U^dag U - 1, evaluated by direct multiplication
  double worst = 0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      C acc(0);
      for (int k = 0; k < 3; ++k)
        acc += std::conj(C(u(k, r).real(), u(k, r).imag())) * C(u(k, c).real(), u(k, c).imag());
      worst = std::max(worst, std::abs(acc - (r == c ? C(1) : C(0))));
    }
  return worst;
}

template <typename T>
ColorVec<T> random_color(std::uint64_t seed) {
  ColorVec<T> v;
  for (int k = 0; k < 3; ++k)
    v[k] = std::complex<T>(static_cast<T>(uniform_signed(seed, 2 * k)),
                           static_cast<T>(uniform_signed(seed, 2 * k + 1)));
  return v;
}

template <typename T>
double cnorm(const ColorVec<T>& v) {
  double n = 0;
  for (const auto& z : v) n += double(z.real()) * z.real() + double(z.imag()) * z.imag();
  return std::sqrt(n);
}

} // namespace

TEST(RandomSU3, DeterministicBitwise) {
  const SU3Matrix<double> a = random_su3<double>(42, 17, 2);
  const SU3Matrix<double> b = random_su3<double>(42, 17, 2);
  for (int k = 0; k < 9; ++k) EXPECT_EQ(a.m[k], b.m[k]);
  // different keys give different matrices
  const SU3Matrix<double> c = random_su3<double>(42, 17, 3);
  bool any_diff = false;
  for (int k = 0; k < 9; ++k) any_diff |= a.m[k] != c.m[k];
  EXPECT_TRUE(any_diff);
}

TEST(RandomSU3, UnitaryWithUnitDeterminant) {
  for (int site = 0; site < 200; ++site)
    for (int mu = 0; mu < 4; ++mu) {
      const SU3Matrix<double> u = random_su3<double>(7, site, mu);
      EXPECT_LT(unitarity_defect(u), 1e-13);
      EXPECT_LT(std::abs(su3_det(u) - C(1)), 1e-13);
    }
}

TEST(RandomSU3, F32WithinTolerance) {
  for (int site = 0; site < 50; ++site) {
    const SU3Matrix<float> u = random_su3<float>(7, site, 1);
    EXPECT_LT(unitarity_defect(u), 1e-5);
    const std::complex<float> det = su3_det(u);
    EXPECT_LT(std::abs(C(det.real(), det.imag()) - C(1)), 1e-5);
  }
}

TEST(Su3Mul, IdentityAndNormPreservation) {
  const ColorVec<double> v = random_color<double>(3);
  const ColorVec<double> iv = su3_mul(SU3Matrix<double>::identity(), v);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(iv[k], v[k]);

  for (int trial = 0; trial < 50; ++trial) {
    const SU3Matrix<double> u = random_su3<double>(11, trial, 0);
    const ColorVec<double> w = random_color<double>(100 + trial);
    const ColorVec<double> uw = su3_mul(u, w);
    EXPECT_NEAR(cnorm(uw), cnorm(w), 1e-12 * cnorm(w));

    // U^dag (U w) = w
    const ColorVec<double> back = su3_mul(u, uw, /*adjoint=*/true);
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(back[k].real(), w[k].real(), 1e-12);
      EXPECT_NEAR(back[k].imag(), w[k].imag(), 1e-12);
    }
  }
}

TEST(Su3Mul, AdjointMatchesExplicitAdjoint) {
  const SU3Matrix<double> u = random_su3<double>(13, 5, 2);
  const ColorVec<double> v = random_color<double>(9);
  const ColorVec<double> a = su3_mul(u, v, /*adjoint=*/true);
  const ColorVec<double> b = su3_mul(su3_adjoint(u), v);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(a[k], b[k]);
}

TEST(Su3MulBlocks, EveryStrategyMatchesScalarPerLane) {
  // one independent SU(3) matrix and color vector per lane, multiplied
  // through the lane-blocked path under each strategy
  const LaneShape shape = make_shape(ElemKind::f64, 512);
  for (int lanes : {1, 2, 4, 8}) {
    std::vector<SU3Matrix<double>> us(lanes);
    std::vector<ColorVec<double>> vs(lanes);
    for (int j = 0; j < lanes; ++j) {
      us[j] = random_su3<double>(31, j, 0);
      vs[j] = random_color<double>(500 + j);
    }
    std::vector<std::vector<double>> ub(9, std::vector<double>(2 * lanes));
    std::vector<std::vector<double>> vb(3, std::vector<double>(2 * lanes));
    for (int j = 0; j < lanes; ++j) {
      for (int k = 0; k < 9; ++k) {
        ub[k][2 * j] = us[j].m[k].real();
        ub[k][2 * j + 1] = us[j].m[k].imag();
      }
      for (int c = 0; c < 3; ++c) {
        vb[c][2 * j] = vs[j][c].real();
        vb[c][2 * j + 1] = vs[j][c].imag();
      }
    }
    std::array<std::span<const double>, 9> uspans;
    for (int k = 0; k < 9; ++k) uspans[k] = ub[k];
    std::array<std::span<const double>, 3> vspans;
    for (int c = 0; c < 3; ++c) vspans[c] = vb[c];

    for (Strategy strat : {Strategy::fcmla, Strategy::deinterleave, Strategy::real_permute}) {
      for (bool adjoint : {false, true}) {
        std::vector<std::vector<double>> ob(3, std::vector<double>(2 * lanes));
        std::array<std::span<double>, 3> ospans;
        for (int c = 0; c < 3; ++c) ospans[c] = ob[c];
        su3_mul_blocks<double>(strat, shape, uspans, vspans, ospans, adjoint);
        for (int j = 0; j < lanes; ++j) {
          const ColorVec<double> want = su3_mul(us[j], vs[j], adjoint);
          for (int c = 0; c < 3; ++c) {
            ASSERT_NEAR(ob[c][2 * j], want[c].real(), 1e-13)
                << to_string(strat) << " lanes " << lanes << " adj " << adjoint;
            ASSERT_NEAR(ob[c][2 * j + 1], want[c].imag(), 1e-13);
          }
        }
      }
    }
  }
}
