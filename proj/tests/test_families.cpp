#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "oracles.hpp"
#include "phip/families.hpp"
#include "phip/isoperimetry.hpp"
#include "phip/spectral.hpp"

using namespace phip;
using testing_util::code_of;
using testing_util::swap2;

TEST(HtCounterexample, FourVertices) {
  auto g = gen_ht_counterexample(4);
  EXPECT_NEAR(g.meta.C, 2.125, 1e-15);
  EXPECT_NEAR(g.chain.P(0, 1), 8.0 / 17.0, 1e-15);
  EXPECT_NEAR(g.chain.P(0, 2), 1.0 / 17.0, 1e-15);
  EXPECT_NEAR(g.chain.P(0, 3), 8.0 / 17.0, 1e-15);
  EXPECT_EQ(g.chain.P(0, 0), 0.0);
  EXPECT_NEAR(lambda2_reversible(g.chain).lambda2, 18.0 / 17.0, 1e-12);
  EXPECT_NEAR(circulant_lambda2_analytic(ht_first_row_laplacian(4)), 18.0 / 17.0, 1e-14);
  EXPECT_NEAR(ht_lambda2_closed_form(4), 18.0 / 17.0, 1e-14);
}

TEST(HtCounterexample, RowsSumToOneAndNormalizer) {
  for (std::size_t n : {3, 5, 8, 31, 64, 100}) {
    auto g = gen_ht_counterexample(n);
    EXPECT_NEAR(g.meta.C, static_cast<double>(oracle::ht_C(n)), 1e-14);
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0;
      for (std::size_t j = 0; j < n; ++j) row += g.chain.P(i, j);
      EXPECT_NEAR(row, 1.0, 1e-12);
    }
  }
  EXPECT_EQ(code_of([] { gen_ht_counterexample(2); }), ErrorCode::TooSmall);
}

TEST(Circulant, Examples) {
  std::vector<double> c4{1, -0.5, 0, -0.5}, c3{1, -0.5, -0.5}, skew{1, -0.7, -0.3};
  EXPECT_NEAR(circulant_lambda2_analytic(c4), 1.0, 1e-15);
  EXPECT_NEAR(circulant_lambda2_analytic(c3), 1.5, 1e-15);
  EXPECT_EQ(code_of([&] { circulant_lambda2_analytic(skew); }), ErrorCode::NonSymmetricCirculant);
}

TEST(Circulant, AnalyticMatchesDense) {
  for (std::size_t n : {4, 5, 8, 16, 33, 64, 128, 256}) {
    const auto row = ht_first_row_laplacian(n);
    const double a = circulant_lambda2_analytic(row);
    EXPECT_NEAR(a, oracle::circulant_lambda2_dense(row), 1e-8) << n;
    EXPECT_NEAR(a, ht_lambda2_closed_form(n), 1e-12) << n;
    std::vector<double> cyc(n, 0.0);
    cyc[0] = 1;
    cyc[1] = cyc[n - 1] = -0.5;
    EXPECT_NEAR(circulant_lambda2_analytic(cyc), oracle::circulant_lambda2_dense(cyc), 1e-8) << n;
  }
}

TEST(Graphs, Hypercube) {
  auto c = gen_hypercube(3);
  ASSERT_EQ(c.n(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    int third = 0;
    for (std::size_t j = 0; j < 8; ++j)
      if (c.P(i, j) != 0) {
        EXPECT_NEAR(c.P(i, j), 1.0 / 3.0, 1e-15);
        ++third;
      }
    EXPECT_EQ(third, 3);
  }
  EXPECT_EQ(code_of([] { hypercube_graph(0); }), ErrorCode::DimensionTooLarge);
  EXPECT_EQ(code_of([] { hypercube_graph(15); }), ErrorCode::DimensionTooLarge);
}

TEST(Graphs, CycleMatchesRing) {
  auto a = gen_cycle(4);
  auto b = chain_from_undirected({4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}}, false, false});
  EXPECT_EQ(a.P(), b.P());
}

TEST(Graphs, DumbbellConductance) {
  auto c = gen_dumbbell(4);
  auto r = phi_p_exact(c, 1.0);
  EXPECT_NEAR(r.phi, 1.0 / 13.0, 1e-14);
  EXPECT_NEAR(r.phi, static_cast<double>(oracle::phi_p_min(c, 1.0)), 1e-14);
}

TEST(Graphs, RandomAreSeeded) {
  EXPECT_EQ(gen_random_reversible(9, 0.4, 3).P(), gen_random_reversible(9, 0.4, 3).P());
  EXPECT_NE(gen_random_reversible(9, 0.4, 3).P(), gen_random_reversible(9, 0.4, 4).P());
  EXPECT_EQ(gen_random_directed(9, 0.4, 3).P(), gen_random_directed(9, 0.4, 3).P());
}

TEST(Hypercube, Quantities) {
  for (std::size_t d : {2, 3, 5}) {
    Subset dictator;
    for (std::size_t x = 0; x < (std::size_t{1} << d); ++x)
      if ((x & 1) == 0) dictator.push_back(x);
    auto q = hypercube_quantities(d, dictator);
    EXPECT_NEAR(q.talagrand_num, 0.5, 1e-15);
    EXPECT_NEAR(q.poincare_num, 0.5, 1e-15);
    EXPECT_NEAR(q.vertex_boundary, 0.5, 1e-15);
    EXPECT_NEAR(q.mass, 0.5, 1e-15);
  }
  auto point = hypercube_quantities(3, {5});
  EXPECT_NEAR(point.talagrand_num, std::sqrt(3.0) / 8.0, 1e-15);
  EXPECT_NEAR(point.poincare_num, 3.0 / 8.0, 1e-15);
  Subset all{0, 1, 2, 3};
  EXPECT_EQ(code_of([&] { hypercube_quantities(2, all); }), ErrorCode::MassTooLarge);
}

TEST(CrossWeight, Examples) {
  EXPECT_DOUBLE_EQ(f_sqrt_crossweight(swap2(), {0}, {1}), 1.0);
  EXPECT_NEAR(f_sqrt_crossweight(gen_cycle(4), {0, 1}, {2, 3}), std::sqrt(2.0), 1e-15);
  auto g4 = gen_ht_counterexample(4).chain;
  EXPECT_NEAR(f_sqrt_crossweight(g4, {0, 1}, {2, 3}), 2.0 * phi_p_of_set(g4, {0, 1}, 0.5).phi,
              1e-15);
  EXPECT_EQ(code_of([&] { f_sqrt_crossweight(g4, {}, {1}); }), ErrorCode::EmptySet);
  EXPECT_EQ(code_of([&] { f_sqrt_crossweight(g4, {0, 1}, {1}); }), ErrorCode::OverlappingSets);
}

TEST(Blocks, FromColoring) {
  auto pb = PartitionBlocks::from_coloring({false, true, true, false, true, false});
  // Runs starting from the first A-run: A{1,2} B{3} A{4} B{5,0}.
  EXPECT_EQ(pb.sizes, (std::vector<std::size_t>{2, 1, 1, 2}));
  EXPECT_EQ(pb.n(), 6u);
  EXPECT_EQ(pb.k(), 2u);
  EXPECT_EQ(code_of([] { PartitionBlocks::from_coloring({true, true}); }), ErrorCode::InvalidBlocks);
}

TEST(Blocks, Examples) {
  EXPECT_NEAR(blocks_h({{2, 2}}), 2 * std::log(3.0) - std::log(5.0), 1e-15);
  EXPECT_NEAR(blocks_h({{0, 9}}), 0.0, 1e-15);
  EXPECT_NEAR(blocks_h({{1, 1, 1, 1}}), static_cast<double>(oracle::blocks_h({1, 1, 1, 1})), 1e-14);
}

TEST(Blocks, MatchesPerStartExpansion) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 1 + rng() % 5;
    std::vector<std::size_t> s(2 * k);
    for (auto& x : s) x = rng() % 6;
    EXPECT_NEAR(blocks_h({s}), static_cast<double>(oracle::blocks_h(s)), 1e-11);
  }
}

TEST(Blocks, Merge) {
  EXPECT_EQ(merge_zero_block({{2, 0, 3, 4}}).sizes, (std::vector<std::size_t>{5, 4}));
  EXPECT_EQ(merge_zero_block({{1, 2, 0, 3}}).sizes, (std::vector<std::size_t>{5, 1}));
  EXPECT_LE(blocks_merge_check({{2, 0, 3, 4}}), 1e-12);
  EXPECT_LE(blocks_merge_check({{1, 2, 0, 3}}), 1e-12);
  EXPECT_EQ(code_of([] { merge_zero_block({{3, 0}}); }), ErrorCode::InvalidBlocks);
  EXPECT_EQ(code_of([] { merge_zero_block({{1, 2, 3, 4}}); }), ErrorCode::NoZeroBlock);
  EXPECT_EQ(code_of([] { merge_zero_block({{0, 2, 0, 4}}); }), ErrorCode::InvalidBlocks);
}

TEST(Blocks, LowerBoundExamples) {
  auto g16 = gen_ht_counterexample(16).chain;
  auto half = lower_bound_fab_check(g16, {{8, 8}});
  EXPECT_TRUE(half.holds);
  EXPECT_EQ(half.name, "log_sum_lower_bound");
  std::vector<std::size_t> alt(16, 1);
  EXPECT_TRUE(lower_bound_fab_check(g16, {alt}).holds);
  auto g4 = gen_ht_counterexample(4);
  auto r4 = lower_bound_fab_check(g4.chain, {{2, 2}});
  EXPECT_TRUE(r4.holds);
  EXPECT_NEAR(r4.lhs, 2 * std::log(3.0) - std::log(5.0), 1e-15);
  EXPECT_NEAR(r4.rhs, std::sqrt(2 * g4.meta.C) * f_sqrt_crossweight(g4.chain, {0, 1}, {2, 3}),
              1e-14);
  EXPECT_ANY_THROW(lower_bound_fab_check(g16, {{4, 4}}));
  EXPECT_ANY_THROW(lower_bound_fab_check(gen_cycle(4), {{2, 2}}));
}

TEST(Arcs, MatchMaterializedChain) {
  for (std::size_t n : {4, 7, 16, 64, 200, 512}) {
    const std::size_t step = std::max<std::size_t>(1, n / 16);
    auto g = gen_ht_counterexample(n).chain;
    for (std::size_t l = 1; l <= n / 2; l += step) {
      Subset arc(l);
      for (std::size_t i = 0; i < l; ++i) arc[i] = i;
      const double fast = arc_phi_half(n, l);
      EXPECT_NEAR(fast, phi_p_of_set(g, arc, 0.5).phi, 1e-10) << n << " " << l;
      EXPECT_NEAR(fast, static_cast<double>(oracle::arc_phi_half(n, l)), 1e-10) << n << " " << l;
    }
  }
  EXPECT_NEAR(arc_phi_half(100, 1), 1.0, 1e-12);
  EXPECT_EQ(code_of([] { arc_phi_half(10, 6); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { arc_phi_half(10, 0); }), ErrorCode::InvalidArgument);
}

TEST(Arcs, KernelSum) {
  ArcEvaluator ev(10);
  double direct = 0;
  for (std::size_t d = 2; d <= 8; ++d) direct += ht_kernel(10, d);
  EXPECT_NEAR(ev.kernel_sum(2, 8), direct, 1e-15);
  EXPECT_NEAR(ev.kernel_sum(1, 9), ev.C(), 1e-15);
}

TEST(Arcs, MinimumIsUpperBoundOnExact) {
  for (std::size_t n : {8, 12, 16}) {
    const double exact = phi_p_exact(gen_ht_counterexample(n).chain, 0.5).phi;
    EXPECT_LE(exact, arc_min_phi_half(n).phi + 1e-12) << n;
  }
}

TEST(Scan, RowsAndCsv) {
  auto rows = scaling_scan({128, 64}, 2);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].n, 64u);
  EXPECT_EQ(rows[1].n, 128u);
  EXPECT_GT(rows[1].rho, rows[0].rho);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.rho, r.phi_half_arc / std::sqrt(r.lambda2), 1e-15);
    const double ln = std::log(static_cast<double>(r.n));
    EXPECT_NEAR(r.lambda2_scaled, r.lambda2 * r.n * r.n / ln, 1e-12);
    EXPECT_NEAR(r.phi_scaled, r.phi_half_arc * r.n / ln, 1e-12);
  }
  std::ostringstream csv;
  write_scan_csv(rows, csv);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "n,lambda2,phi_half_arc,rho,lambda2_scaled,phi_scaled");
  EXPECT_EQ(code_of([] { scaling_scan({4}); }), ErrorCode::TooSmall);
  EXPECT_EQ(scaling_scan({64, 128}, 1)[1].rho, rows[1].rho);
}
