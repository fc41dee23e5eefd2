#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dnkg/error.hpp"
#include "dnkg/titchmarsh.hpp"

namespace dnkg {
namespace {

CircleAngle pi_q(std::int64_t num, std::int64_t den = 64) { return CircleAngle::pi_fraction(num, den); }
CircleMeasure d(CircleAngle a, Complex w = 1.0) { return CircleMeasure::delta(a, w); }
const CircleAngle kPiAngle = CircleAngle::pi_fraction(1, 1);

CircleMeasure random_measure(std::mt19937_64& rng, int max_atoms, std::int64_t lo, std::int64_t hi,
                             std::int64_t den = 64) {
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_int_distribution<std::int64_t> pos(lo, hi);
  std::normal_distribution<double> w(0.0, 1.0);
  std::vector<Atom> atoms;
  for (int k = count(rng); k > 0; --k) atoms.push_back({pi_q(pos(rng), den), Complex(w(rng), w(rng))});
  return CircleMeasure(atoms);
}

TEST(TitchmarshTest, ConvolutionExamples) {
  const auto c = convolve(d(CircleAngle::radians(1.0)), d(CircleAngle::radians(5.5)));
  ASSERT_EQ(c.size(), 1u);
  EXPECT_NEAR(c.atoms()[0].angle.value, 6.5 - 2 * M_PI, 1e-15);
  EXPECT_TRUE(convolve(d(pi_q(0)) + d(kPiAngle), d(pi_q(0)) - d(kPiAngle)).empty());
  // The same with float angles: the merge tolerance absorbs the rounding.
  const auto fpi = CircleAngle::radians(M_PI);
  EXPECT_TRUE(convolve(d(CircleAngle::radians(0)) + d(fpi), d(CircleAngle::radians(0)) - d(fpi)).empty());
  std::mt19937_64 rng(1);
  const auto f = random_measure(rng, 8, 0, 127);
  EXPECT_TRUE(approx_equal(convolve(d(pi_q(0)), f), f, 0.0));
}

TEST(TitchmarshTest, ShiftAndSharp) {
  const auto s = shift(d(pi_q(3)), pi_q(130));
  EXPECT_EQ(s.atoms()[0].angle.rational->num, 5);
  EXPECT_EQ(s.atoms()[0].angle.rational->den, 64);
  const auto sh = sharp(d(pi_q(10), Complex(1, 2)));
  EXPECT_EQ(sh.atoms()[0].angle.rational->num, 59);
  EXPECT_EQ(sh.atoms()[0].angle.rational->den, 32);
  EXPECT_EQ(sh.atoms()[0].weight, Complex(1, -2));
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const auto f = random_measure(rng, 8, 0, 127);
    EXPECT_TRUE(approx_equal(sharp(sharp(f)), f, 0.0));
  }
}

TEST(TitchmarshTest, CanonicalForm) {
  const CircleMeasure a({{CircleAngle::radians(0.3), 1.0}, {CircleAngle::radians(0.3 + 1e-13), 2.0},
                         {CircleAngle::radians(2 * M_PI - 1e-13), 1.0}, {CircleAngle::radians(0.0), -1.0}});
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a.atoms()[0].weight, 3.0);
  const CircleMeasure b({{CircleAngle::radians(2.0), 1.0}, {CircleAngle::radians(1.0), 1.0}});
  EXPECT_LT(b.atoms()[0].angle.value, b.atoms()[1].angle.value);
  EXPECT_TRUE(CircleMeasure({{pi_q(1), 0.0}}).empty());
}

TEST(TitchmarshTest, HullExamples) {
  const auto h = supp_mod_pi_hull(d(CircleAngle::radians(0.1)) + d(CircleAngle::radians(M_PI + 0.3)));
  EXPECT_NEAR(h.lo, 0.1, 1e-15);
  EXPECT_NEAR(h.hi, 0.3, 1e-15);
  const auto p = supp_mod_pi_hull(d(CircleAngle::radians(-1.2)));
  EXPECT_NEAR(p.lo, -1.2, 1e-15);
  EXPECT_EQ(p.lo, p.hi);
  EXPECT_TRUE(supp_mod_pi_hull(CircleMeasure()).empty);
  EXPECT_THROW(supp_mod_pi_hull(d(pi_q(1, 2))), Error);
  EXPECT_THROW(supp_mod_pi_hull(d(CircleAngle::radians(3 * M_PI / 2))), Error);
}

TEST(TitchmarshTest, MinimalArcCrossesHalfPi) {
  // Mod pi, 1.5 and 1.6 are 0.1 apart across pi/2.
  const auto I = minimal_mod_pi_arc(d(CircleAngle::radians(1.5)) + d(CircleAngle::radians(1.6)));
  EXPECT_NEAR(I.length(), 0.1, 1e-14);
}

// 1000 random triples, at most 8 atoms each.
TEST(TitchmarshTest, ConvolutionAlgebra) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> w(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const auto f = random_measure(rng, 8, 0, 127), g = random_measure(rng, 8, 0, 127),
               h = random_measure(rng, 8, 0, 127);
    EXPECT_TRUE(approx_equal(convolve(f, g), convolve(g, f), 0.0));
    EXPECT_TRUE(approx_equal(convolve(convolve(f, g), h), convolve(f, convolve(g, h)), 1e-12));
    const Complex a(w(rng), w(rng)), b(w(rng), w(rng));
    EXPECT_TRUE(approx_equal(convolve(f * a + g * b, h), convolve(f, h) * a + convolve(g, h) * b, 1e-12));
    EXPECT_TRUE(approx_equal(convolve(h, f * a + g * b), convolve(h, f) * a + convolve(h, g) * b, 1e-12));
  }
}

TEST(TitchmarshTest, ZeroDivisorIdentityExact) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 500; ++k) {
    const auto f = random_measure(rng, 8, 0, 127), g = random_measure(rng, 8, 0, 127);
    const auto lhs = convolve(f + shift(f, kPiAngle), g - shift(g, kPiAngle));
    EXPECT_TRUE(lhs.empty());
  }
}

TEST(TitchmarshTest, LineAnalogueOnShortArcs) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> start(0, 20);
  for (int k = 0; k < 300; ++k) {
    const std::int64_t a = start(rng), b = start(rng);
    const auto f = random_measure(rng, 8, a, a + 15), g = random_measure(rng, 8, b, b + 15);
    const auto h = convolve(f, g);
    auto lo = [](const CircleMeasure& m) { return m.atoms().front().angle.value; };
    auto hi = [](const CircleMeasure& m) { return m.atoms().back().angle.value; };
    ASSERT_FALSE(h.empty());
    EXPECT_NEAR(lo(h), lo(f) + lo(g), 1e-14);
    EXPECT_NEAR(hi(h), hi(f) + hi(g), 1e-14);
    EXPECT_EQ(h.atoms().front().weight, f.atoms().front().weight * g.atoms().front().weight);
  }
}

TEST(TitchmarshTest, TwoIntervalExamples) {
  const auto nt = check_two_interval_theorem(d(pi_q(0)) + d(kPiAngle), d(pi_q(0)) - d(kPiAngle));
  EXPECT_TRUE(std::isinf(nt.lambda));
  // f = S_pi f and g = -S_pi g.
  EXPECT_EQ(nt.left_symmetry, std::optional<int>(1));
  EXPECT_TRUE(nt.consistent);

  const auto a = pi_q(5), b = pi_q(-9);
  const auto f = d(a) + d(a + kPiAngle), g = d(b) - d(b + kPiAngle);
  EXPECT_TRUE(convolve(f, g).empty());
  const auto r = check_two_interval_theorem(f, g);
  EXPECT_TRUE(std::isinf(r.lambda));
  EXPECT_TRUE(r.lambda_positive && r.rho_positive && r.consistent);

  EXPECT_THROW(check_two_interval_theorem(d(pi_q(0)) + d(pi_q(32)), d(pi_q(0)) + d(pi_q(32))), Error);
}

TEST(TitchmarshTest, TwoIntervalGenericInstances) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 500; ++k) {
    const auto f = random_measure(rng, 6, 0, 20), g = random_measure(rng, 6, 64, 84);
    const auto r = check_two_interval_theorem(f, g);
    EXPECT_TRUE(r.consistent) << k;
    EXPECT_FALSE(r.lambda_positive);
    EXPECT_FALSE(r.left_symmetry.has_value());
  }
}

// f + s S_pi f and g - s S_pi g vanish on the first `width` grid steps of I and J.
TEST(TitchmarshTest, TwoIntervalStructuredInstances) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> width(1, 6), coin(0, 1), cnt(2, 5), off(0, 20);
  std::normal_distribution<double> w(0.0, 1.0);
  int positive = 0;
  for (int k = 0; k < 500; ++k) {
    const int s = coin(rng) ? 1 : -1, lam = width(rng);
    const bool right_end = coin(rng);
    auto build = [&](std::int64_t base, int pair_sign) {
      // pair_sign: weight at x + pi is pair_sign * weight at x inside the window.
      std::vector<Atom> atoms;
      const int n = cnt(rng);
      for (int j = 0; j < n; ++j) {
        const std::int64_t x = j == 0 ? base : base + off(rng);
        const Complex v(w(rng), w(rng));
        const std::int64_t edge = right_end ? base + 20 - x : x - base;
        atoms.push_back({pi_q(x), v});
        if (edge < lam)
          atoms.push_back({pi_q(x + 64), double(pair_sign) * v});
        else
          atoms.push_back({pi_q(x + 64), Complex(w(rng), w(rng))});
      }
      if (right_end) {
        atoms.push_back({pi_q(base + 20), 1.0});
        atoms.push_back({pi_q(base + 84), double(pair_sign)});
      }
      return CircleMeasure(atoms);
    };
    const std::int64_t fb = off(rng), gb = off(rng);
    const auto f = build(fb, -s), g = build(gb, s);
    const auto r = check_two_interval_theorem(f, g);
    EXPECT_TRUE(r.consistent) << k;
    if (right_end) {
      EXPECT_TRUE(r.rho_positive) << k;
      EXPECT_GE(r.rho, lam * M_PI / 64 - 1e-12);
    } else {
      EXPECT_TRUE(r.lambda_positive) << k;
      EXPECT_GE(r.lambda, lam * M_PI / 64 - 1e-12);
      if (r.left_symmetry) EXPECT_EQ(*r.left_symmetry, -s);
    }
    positive += r.lambda_positive || r.rho_positive;
  }
  EXPECT_EQ(positive, 500);
}

TEST(TitchmarshTest, PowersExamples) {
  const auto one = check_powers_theorem(d(pi_q(3)), 5);
  EXPECT_TRUE(one.equal);
  EXPECT_NEAR(one.K.lo, 15 * M_PI / 64, 1e-14);

  const auto two = check_powers_theorem(d(CircleAngle::radians(0.1)) + d(CircleAngle::radians(0.2)), 2);
  ASSERT_EQ(two.power.size(), 3u);
  EXPECT_NEAR(two.power.atoms()[0].angle.value, 0.2, 1e-15);
  EXPECT_NEAR(two.power.atoms()[1].angle.value, 0.3, 1e-15);
  EXPECT_NEAR(two.power.atoms()[2].angle.value, 0.4, 1e-15);
  EXPECT_EQ(two.power.atoms()[1].weight, 2.0);
  EXPECT_NEAR(two.K.lo, 0.2, 1e-15);
  EXPECT_NEAR(two.K.hi, 0.4, 1e-15);
  EXPECT_TRUE(two.equal);

  EXPECT_THROW(check_powers_theorem(d(pi_q(0)) + d(pi_q(30)), 3), Error);
}

TEST(TitchmarshTest, PowersRandom) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> pp(1, 5);
  for (int k = 0; k < 300; ++k) {
    const int p = pp(rng);
    const std::int64_t width = 64 / p - 1;
    const auto f = random_measure(rng, 6, 0, width) + random_measure(rng, 4, 64, 64 + width);
    const auto r = check_powers_theorem(f, p);
    EXPECT_TRUE(r.equal) << k;
  }
}

TEST(TitchmarshTest, PointSupportExamples) {
  const auto a = pi_q(5), b = pi_q(-9);
  const auto single = classify_point_support(d(a) + d(a + kPiAngle));
  EXPECT_TRUE(single.support_ok);
  ASSERT_EQ(single.mu.size(), 1u);
  EXPECT_EQ(single.mu.atoms()[0].weight, 1.0);
  EXPECT_TRUE(single.nu.empty());

  const auto f = d(a) + d(a + kPiAngle) + d(b) - d(b + kPiAngle);
  const auto r = classify_point_support(f);
  EXPECT_TRUE(r.support_ok);
  // b < a: f + S_pi f vanishes on (a - pi, a), so mu sits at a.
  EXPECT_EQ(r.sigma, 1);
  EXPECT_TRUE(approx_equal(r.mu, d(a), 0.0));
  EXPECT_TRUE(approx_equal(r.nu, d(b), 0.0));
  EXPECT_EQ(r.reconstruction_error, 0.0);

  try {
    classify_point_support(d(pi_q(0)) + d(pi_q(10), 2.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisViolation);
  }
}

TEST(TitchmarshTest, PointSupportRecoversDecomposition) {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<std::int64_t> pos(-15, 15);
  std::normal_distribution<double> w(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const auto mu = d(pi_q(pos(rng)), Complex(w(rng), w(rng)));
    const auto nu = d(pi_q(pos(rng)), Complex(w(rng), w(rng)));
    const auto f = mu + shift(mu, kPiAngle) + nu - shift(nu, kPiAngle);
    if (f.empty()) continue;
    const auto r = classify_point_support(f);
    EXPECT_TRUE(r.support_ok);
    EXPECT_LE(r.reconstruction_error, 1e-15);
    if (supp_mod_pi_hull(f).length() > 0) {
      EXPECT_TRUE(approx_equal(r.mu, mu, 1e-15));
      EXPECT_TRUE(approx_equal(r.nu, nu, 1e-15));
    }
  }
}

}  // namespace
}  // namespace dnkg
