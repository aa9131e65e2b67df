#include <gtest/gtest.h>

#include <prio/prio.hpp>

#include "fixtures.hpp"

using namespace prio;

namespace {

metric_space line(const std::vector<double>& xs) {
    std::vector<std::vector<double>> pts;
    for (double x : xs) {
        pts.push_back({x});
    }
    return metric_space::euclidean(pts);
}

instance lottery_instance(const std::vector<double>& xs, std::vector<double> prob, constraint_spec c) {
    instance inst = fx::line_instance(xs, std::vector<double>(xs.size(), 1.0), std::move(c),
                                      static_cast<int>(xs.size()));
    inst.prob_demand = std::move(prob);
    validate(inst);
    return inst;
}

}  // namespace

TEST(NeighborhoodRadius, Line) {
    EXPECT_EQ(compute_nr_radii(line({0, 1, 2, 3}), 2), (std::vector<double>{1, 1, 1, 1}));
    EXPECT_EQ(compute_nr_radii(line({0, 1, 2, 3}), 1), (std::vector<double>{3, 2, 2, 3}));
    EXPECT_EQ(compute_nr_radii(line({0, 1, 2, 3}), 4), (std::vector<double>(4, 0.0)));
    EXPECT_EQ(compute_nr_radii(line({5}), 1), std::vector<double>{0.0});
    EXPECT_THROW(compute_nr_radii(line({0, 1}), 0), error);
}

TEST(Jkl, LineTwoCenters) {
    metric_space d = line({0, 1, 2, 3});
    solution s = solve_jkl_fair(d, 2);
    ASSERT_EQ(s.status, solve_status::feasible);
    EXPECT_LE(s.centers.size(), 2u);
    EXPECT_LE(s.alpha, 2.0);
    for (int v = 0; v < 4; ++v) {
        double best = inf;
        for (int c : s.centers) {
            best = std::min(best, d(v, c));
        }
        EXPECT_LE(best, 2.0);
    }
}

TEST(Jkl, Degenerate) {
    solution one = solve_jkl_fair(line({7}), 1);
    EXPECT_EQ(one.centers, std::vector<int>{0});
    EXPECT_EQ(one.alpha, 0);
    solution all = solve_jkl_fair(line({0, 1, 5}), 3);
    EXPECT_EQ(all.centers.size(), 3u);
    EXPECT_EQ(all.alpha, 0);
}

TEST(Jkl, DuplicatedPoints) {
    metric_space d = line({0, 0, 0, 4, 9});
    solution s = solve_jkl_fair(d, 2);
    std::vector<double> nr = compute_nr_radii(d, 2);
    EXPECT_LE(s.centers.size(), 2u);
    for (int v = 0; v < 5; ++v) {
        double best = inf;
        for (int c : s.centers) {
            best = std::min(best, d(v, c));
        }
        EXPECT_LE(best, 2 * nr[v] + 1e-9) << v;
    }
}

TEST(Lottery, AllZeroDemand) {
    instance inst = lottery_instance({0, 10}, {0, 0}, cardinality{1});
    lottery_solution l = solve_lottery(inst);
    ASSERT_EQ(l.status, solve_status::feasible);
    ASSERT_EQ(l.support.size(), 1u);
    EXPECT_DOUBLE_EQ(l.probability[0], 1.0);
    EXPECT_EQ(check_lottery(inst, l), "");
}

TEST(Lottery, OnePoint) {
    instance inst = lottery_instance({0}, {1}, cardinality{1});
    lottery_solution l = solve_lottery(inst);
    ASSERT_EQ(l.status, solve_status::feasible);
    ASSERT_EQ(l.support.size(), 1u);
    EXPECT_EQ(l.support[0], std::vector<int>{0});
    EXPECT_EQ(l.achieved_alpha, 0);
}

TEST(Lottery, TwoFarPointsSplit) {
    instance inst = lottery_instance({0, 10}, {0.5, 0.5}, cardinality{1});
    lottery_solution l = solve_lottery(inst);
    ASSERT_EQ(l.status, solve_status::feasible);
    EXPECT_EQ(check_lottery(inst, l), "");
    ASSERT_EQ(l.support.size(), 2u);
    EXPECT_NEAR(l.probability[0], 0.5, 1e-7);
    EXPECT_NEAR(l.probability[1], 0.5, 1e-7);
    EXPECT_NEAR(l.achieved[0], 0.5, 1e-7);
}

TEST(Lottery, UnmeetableDemand) {
    instance inst = lottery_instance({0, 100}, {1, 1}, cardinality{1});
    lottery_solution l = solve_lottery(inst);
    EXPECT_EQ(l.status, solve_status::infeasible);
    EXPECT_FALSE(l.certificate.empty());
}

TEST(Lottery, KnapsackAndPartition) {
    instance k = lottery_instance({0, 100, 200}, {0.5, 0.5, 0}, knapsack{{1, 1, 2}, 1});
    lottery_solution lk = solve_lottery(k);
    ASSERT_EQ(lk.status, solve_status::feasible);
    EXPECT_EQ(check_lottery(k, lk), "");
    instance p = lottery_instance({0, 100, 200}, {0.5, 0.5, 1}, partition_matroid{{0, 0, 1}, {1, 1}});
    lottery_solution lp = solve_lottery(p);
    ASSERT_EQ(lp.status, solve_status::feasible);
    EXPECT_EQ(check_lottery(p, lp), "");
}

TEST(Lottery, MatchesExistenceOracle) {
    fx::rng_t rng(101);
    for (int it = 0; it < 20; ++it) {
        auto kind = it % 2 ? constraint_kind::partition : constraint_kind::cardinality;
        instance inst = fx::planted_lottery(rng, rng(), kind);
        lottery_solution l = solve_lottery(inst);
        ASSERT_EQ(l.status, solve_status::feasible) << it;
        EXPECT_EQ(check_lottery(inst, l), "");
        EXPECT_TRUE(fx::distribution_exists(inst, l.alpha));
    }
}

TEST(Lottery, GeneralMatroidUnsupported) {
    instance inst = lottery_instance({0, 1}, {1, 1}, general_matroid{{{}, {0}, {1}}});
    EXPECT_THROW(solve_lottery(inst), unsupported_error);
}

TEST(Fpfc, FindsHeavyCover) {
    instance inst = fx::line_instance({0, 1, 50}, {1, 1, 1}, cardinality{1}, 3);
    fpfc_result r = solve_fpfc(inst, {1, 1, 0.5}, 1.5);
    ASSERT_EQ(r.status, solve_status::feasible);
    EXPECT_EQ(r.centers.size(), 1u);
    EXPECT_EQ(solve_fpfc(inst, {1, 1, 0.5}, 2.5).status, solve_status::infeasible);
}
