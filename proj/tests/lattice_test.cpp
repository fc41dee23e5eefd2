#include <gtest/gtest.h>

#include <cmath>

#include "dnkg/error.hpp"
#include "dnkg/lattice.hpp"

namespace dnkg {
namespace {

TEST(LatticeTest, IndexMapIsBijection) {
  for (int n = 1; n <= 3; ++n) {
    BoxDomain box(n, 3);
    EXPECT_EQ(box.size(), static_cast<Index>(std::pow(7, n)));
    for (Index i = 0; i < box.size(); ++i) EXPECT_EQ(box.index(box.site(i)), i);
    EXPECT_EQ(box.index(Site::Zero(n)), box.origin());
  }
}

TEST(LatticeTest, StridesAreRowMajor) {
  BoxDomain box(2, 2);
  Site x(2);
  x << -2, -2;
  EXPECT_EQ(box.index(x), 0);
  x << -2, -1;
  EXPECT_EQ(box.index(x), 1);
  x << -1, -2;
  EXPECT_EQ(box.index(x), 5);
}

TEST(LatticeTest, OutOfBox) {
  BoxDomain box(1, 2);
  Site x(1);
  x << 3;
  EXPECT_THROW(box.index(x), Error);
  try {
    box.index(x);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfBox);
  }
}

TEST(LatticeTest, GeometryHelpers) {
  BoxDomain box(2, 4);
  Site x(2);
  x << 4, -1;
  const Index i = box.index(x);
  EXPECT_TRUE(box.on_boundary(i));
  EXPECT_EQ(box.linf(i), 4);
  EXPECT_EQ(box.norm_sq(i), 17.0);
  EXPECT_EQ(box.parity(i), 1);
  EXPECT_FALSE(box.on_boundary(box.origin()));
}

TEST(LatticeTest, GridFlags) {
  const auto g = GridParams::exact_ratio(2, 0.5, 1.0);
  EXPECT_TRUE(g.ratio_ok());
  EXPECT_TRUE(g.ratio_exact());
  const auto h = GridParams::make(2, 1.0, 0.5, 1.0);
  EXPECT_TRUE(h.ratio_ok());
  EXPECT_FALSE(h.ratio_exact());
  const auto k = GridParams::make(1, 1.0, 1.1, 1.0);
  EXPECT_FALSE(k.ratio_ok());
  EXPECT_THROW(GridParams::make(1, 1.0, -1.0, 1.0), Error);
  EXPECT_THROW(GridParams::make(0, 1.0, 1.0, 1.0), Error);
}

TEST(LatticeTest, OmegaMShrinksWithTau) {
  double prev = M_PI;
  for (double tau : {1.0, 0.5, 0.1, 0.01}) {
    const double w = GridParams::exact_ratio(1, tau, 1.0).omega_m();
    EXPECT_GT(w, 0.0);
    EXPECT_LT(w, M_PI / 2);
    EXPECT_LT(w, prev);
    prev = w;
  }
  EXPECT_LT(prev, 0.011);
}

TEST(LatticeTest, StateValidation) {
  BoxDomain box(1, 3);
  auto s = FieldState::zeros(box);
  EXPECT_NO_THROW(s.validate());
  s.curr[2] = Complex(std::nan(""), 0);
  EXPECT_THROW(s.validate(), Error);
  s.curr.resize(3);
  EXPECT_THROW(s.validate(), Error);
}

}  // namespace
}  // namespace dnkg
