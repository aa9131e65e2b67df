#include <gtest/gtest.h>

#include <prio/prio.hpp>

#include "fixtures.hpp"

using namespace prio;

TEST(Oracle, TwoFarPoints) {
    solution s = brute_force_optimum(fx::line_instance({0, 10}, {1, 1}, cardinality{1}, 2));
    ASSERT_EQ(s.status, solve_status::feasible);
    EXPECT_DOUBLE_EQ(s.alpha, 10);
}

TEST(Oracle, ZeroTarget) {
    solution s = brute_force_optimum(fx::line_instance({0, 10}, {1, 1}, cardinality{1}, 0));
    ASSERT_EQ(s.status, solve_status::feasible);
    EXPECT_EQ(s.alpha, 0);
    EXPECT_TRUE(s.covered.empty());
    EXPECT_TRUE(s.centers.empty());
}

TEST(Oracle, CoincidentFacility) {
    solution s = brute_force_optimum(fx::line_supplier({3}, {3}, {1}, cardinality{1}, 1));
    EXPECT_EQ(s.alpha, 0);
}

TEST(Oracle, RespectsRadiiAndConstraints) {
    // radius 5 on the far point makes the middle facility enough
    instance inst = fx::line_supplier({0, 10}, {1, 9}, {1, 5}, cardinality{1}, 2);
    EXPECT_DOUBLE_EQ(brute_force_optimum(inst).alpha, 1.8);
    inst.constraint = knapsack{{3, 1}, 1};
    EXPECT_DOUBLE_EQ(brute_force_optimum(inst).alpha, 9);
    inst.constraint = knapsack{{3, 3}, 1};
    EXPECT_EQ(brute_force_optimum(inst).status, solve_status::infeasible);
}

TEST(Oracle, FeasibleAt) {
    instance inst = fx::line_instance({0, 10}, {1, 1}, cardinality{1}, 2);
    EXPECT_TRUE(brute_force_feasible_at(inst, 10));
    EXPECT_FALSE(brute_force_feasible_at(inst, 9.99));
}

TEST(Oracle, SizeLimit) {
    std::vector<double> xs(17);
    std::iota(xs.begin(), xs.end(), 0.0);
    instance inst = fx::line_instance(xs, std::vector<double>(17, 1.0), cardinality{1}, 1);
    EXPECT_THROW(brute_force_optimum(inst), unsupported_error);
}

TEST(PackingOracle, Chain) {
    contact_graph g;
    for (double l : {2.0, 3.0, 4.0}) {
        contact_vertex v;
        v.lambda = l;
        v.candidates = {0};
        g.vertices.push_back(v);
    }
    g.vertices[0].level = 3;
    g.vertices[1].level = 2;
    g.arcs = {{0, 1, 0}, {1, 2, 0}};
    EXPECT_DOUBLE_EQ(brute_force_path_packing(g, 1).value, 9);
    EXPECT_DOUBLE_EQ(brute_force_path_packing(g, 0).value, 0);
    EXPECT_DOUBLE_EQ(brute_force_path_packing(contact_graph{}, 2).value, 0);
}
