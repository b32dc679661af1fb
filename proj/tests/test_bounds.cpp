#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "phip/bounds.hpp"
#include "phip/families.hpp"

using namespace phip;
using testing_util::code_of;
using testing_util::directed_cycle;
using testing_util::swap2;

TEST(MainTheorem, TwoStateSwap) {
  auto r = check_main_theorem(swap2(), 1.0, false);
  EXPECT_DOUBLE_EQ(r.lhs, 1.0);
  EXPECT_NEAR(r.rhs, 8.0, 1e-12);
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.slack, 7.0, 1e-12);
  ASSERT_TRUE(r.cut.has_value());
  EXPECT_EQ(r.cut->method, CutMethod::Exact);
  ASSERT_TRUE(r.lambda2.has_value());
  EXPECT_NEAR(*r.lambda2, 2.0, 1e-12);
}

TEST(MainTheorem, FourCycleThreeQuarters) {
  auto r = check_main_theorem(gen_cycle(4), 0.75, false);
  EXPECT_NEAR(r.rhs, 8.0, 1e-12);
  EXPECT_TRUE(r.holds);
}

TEST(MainTheorem, ExponentDomain) {
  EXPECT_EQ(code_of([] { check_main_theorem(swap2(), 0.5, false); }),
            ErrorCode::ExponentOutOfRange);
  EXPECT_EQ(code_of([] { check_main_theorem(swap2(), 1.1, false); }),
            ErrorCode::ExponentOutOfRange);
}

TEST(MainTheorem, SweepSourceStillHolds) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto c = gen_random_reversible(6 + seed % 6, 0.3, seed);
    auto r = check_main_theorem(c, 0.75, false, {PhiSource::Sweep, {}});
    EXPECT_EQ(r.cut->method, CutMethod::Sweep);
    EXPECT_TRUE(r.holds);
  }
}

TEST(MainTheorem, AutoFallsBackToSweepAboveCap) {
  auto c = gen_cycle(12);
  auto r = check_main_theorem(c, 1.0, false, {PhiSource::Auto, {8, 1}});
  EXPECT_EQ(r.cut->method, CutMethod::Sweep);
  r = check_main_theorem(c, 1.0, false, {PhiSource::Auto, {12, 1}});
  EXPECT_EQ(r.cut->method, CutMethod::Exact);
}

TEST(MorrisPeres, TwoStateSwap) {
  auto r = check_morris_peres(swap2(), false);
  EXPECT_NEAR(r.lhs, 1.0 / (8.0 * std::log(2.0)), 1e-15);
  EXPECT_NEAR(r.rhs, 2.0, 1e-12);
  EXPECT_TRUE(r.holds);
}

TEST(MorrisPeres, LazySwap) {
  for (double delta : {0.1, 0.5}) {
    auto r = check_morris_peres(lazy_transform(swap2(), delta), false);
    const double phi = std::sqrt(delta);
    EXPECT_NEAR(r.lhs, phi * phi / (8.0 * std::log(2.0 / phi)), 1e-14);
    EXPECT_NEAR(r.rhs, 2.0 * delta, 1e-12);
    EXPECT_TRUE(r.holds);
  }
}

TEST(MorrisPeres, CounterexampleSixteen) {
  auto r = check_morris_peres(gen_ht_counterexample(16).chain, false);
  EXPECT_TRUE(r.holds);
  EXPECT_GT(r.slack, 0.0);
}

TEST(Cheeger, Examples) {
  auto [e1, h1] = check_cheeger(swap2());
  EXPECT_NEAR(e1.lhs, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(e1.rhs, 1.0);
  EXPECT_NEAR(h1.rhs, 2.0, 1e-12);
  EXPECT_TRUE(e1.holds && h1.holds);

  auto [e2, h2] = check_cheeger(gen_cycle(4));
  EXPECT_NEAR(e2.lhs, 0.5, 1e-12);
  EXPECT_NEAR(e2.rhs, 0.5, 1e-12);
  EXPECT_NEAR(h2.rhs, std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(e2.holds && h2.holds);

  auto [e3, h3] = check_cheeger(gen_hypercube(3));
  EXPECT_NEAR(e3.lhs, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(h3.lhs, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(h3.rhs, std::sqrt(4.0 / 3.0), 1e-12);
  EXPECT_TRUE(e3.holds && h3.holds);
}

TEST(Chung, DirectedCycles) {
  auto [l3, u3] = check_chung(directed_cycle(3));
  EXPECT_NEAR(l3.lhs, 0.5, 1e-12);
  EXPECT_NEAR(l3.rhs, 1.5, 1e-12);
  EXPECT_NEAR(u3.rhs, 2.0, 1e-12);
  EXPECT_TRUE(l3.holds && u3.holds);

  auto [l4, u4] = check_chung(directed_cycle(4));
  EXPECT_NEAR(l4.rhs, 1.0, 1e-12);
  EXPECT_TRUE(l4.holds && u4.holds);
}

TEST(Chung, ReversibleMatchesClassical) {
  auto c = gen_random_reversible(8, 0.4, 2);
  auto [lower, upper] = check_chung(c);
  auto [easy, hard] = check_cheeger(c);
  EXPECT_NEAR(upper.lhs, 2.0 * easy.lhs, 1e-8);
  EXPECT_NEAR(lower.lhs, 0.5 * hard.lhs * hard.lhs, 1e-12);
}

TEST(Ratio, SwapAndLazyInvariance) {
  EXPECT_NEAR(check_conjecture_ratio(swap2()), 1.0 / std::sqrt(2.0), 1e-12);
  auto c = gen_random_reversible(9, 0.35, 7);
  const double r = check_conjecture_ratio(c);
  for (double delta : {0.1, 0.5, 0.9})
    EXPECT_NEAR(check_conjecture_ratio(lazy_transform(c, delta)), r, 1e-9);
  EXPECT_EQ(code_of([] { conjecture_ratio(1.0, 0.0); }), ErrorCode::InvalidArgument);
}

TEST(Gadgets, SumExamples) {
  std::vector<double> step{1.0};
  EXPECT_DOUBLE_EQ(gadget_C_sum(0.75, step), 1.0);
  std::vector<double> seq{0.1, 0.4, 0.4, 0.9};
  EXPECT_NEAR(gadget_C_sum(1.0, seq), 0.9, 1e-15);
  std::vector<double> bad{0.5, 0.2};
  EXPECT_EQ(code_of([&] { gadget_C_sum(0.75, bad); }), ErrorCode::InvalidArgument);
}

TEST(Gadgets, Supremum) {
  EXPECT_LE(gadget_C_supremum(1.0, 2000, 1), 1.0 + 1e-9);
  EXPECT_LE(gadget_C_supremum(0.6, 2000, 1), 5.0 + 1e-9);
  EXPECT_EQ(gadget_C_supremum(0.75, 500, 9), gadget_C_supremum(0.75, 500, 9));
  EXPECT_EQ(code_of([] { gadget_C_supremum(0.5, 10, 1); }), ErrorCode::ExponentOutOfRange);
}

TEST(Gadgets, LogChain) {
  for (std::uint64_t m : {0u, 1u, 10u}) EXPECT_EQ(gadget_log_chain(1.0, m), 0.0);
  for (double b0 : {0.01, 0.25, 0.9})
    EXPECT_NEAR(gadget_log_chain(b0, 0), (1 - b0) / (1 + b0), 1e-15);
  EXPECT_NEAR(gadget_log_chain(0.25, 1000000), 0.5 * std::log(4.0), 1e-4);
  // Closed form (m+1)(1 - b^{1/(m+1)}) / (1 + b^{1/(m+1)}).
  const double r = std::pow(0.3, 1.0 / 6.0);
  EXPECT_NEAR(gadget_log_chain(0.3, 5), 6.0 * (1 - r) / (1 + r), 1e-14);
  EXPECT_EQ(code_of([] { gadget_log_chain(0.0, 1); }), ErrorCode::InvalidArgument);
}
