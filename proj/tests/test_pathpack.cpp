#include <gtest/gtest.h>

#include <prio/prio.hpp>

#include "fixtures.hpp"

using namespace prio;

namespace {

contact_vertex vert(int level, double lambda, std::vector<int> y) {
    contact_vertex v;
    v.level = level;
    v.lambda = lambda;
    v.candidates = std::move(y);
    return v;
}

contact_graph chain() {
    contact_graph g;
    g.vertices = {vert(3, 5, {0}), vert(2, 1, {1}), vert(1, 2, {2})};
    g.arcs = {{0, 1, 1}, {1, 2, 2}};
    return g;
}

// root (lambda 1, Y={0}) over children (lambda 4, Y={1}) and (lambda 4, Y={2})
contact_graph star() {
    contact_graph g;
    g.kind = contact_kind::forest;
    g.vertices = {vert(2, 1, {0}), vert(1, 4, {1}), vert(1, 4, {2})};
    g.arcs = {{0, 1, 1}, {0, 2, 2}};
    return g;
}

}  // namespace

TEST(Wkpp, ChainOnePath) {
    contact_graph g = chain();
    path_packing p = solve_wkpp(g, 1);
    EXPECT_DOUBLE_EQ(p.value, 8);
    ASSERT_EQ(p.paths.size(), 1u);
    EXPECT_EQ(p.paths[0], (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(validate_packing(g, p), "");
}

TEST(Wkpp, SingletonsAndZero) {
    contact_graph g;
    g.vertices = {vert(1, 3, {0}), vert(1, 4, {1})};
    EXPECT_DOUBLE_EQ(solve_wkpp(g, 2).value, 7);
    EXPECT_DOUBLE_EQ(solve_wkpp(g, 1).value, 4);
    path_packing none = solve_wkpp(g, 0);
    EXPECT_TRUE(none.paths.empty());
    EXPECT_DOUBLE_EQ(none.value, 0);
}

TEST(Wkpp, SinkNeedsCandidates) {
    contact_graph g = chain();
    g.vertices[2].candidates.clear();
    path_packing p = solve_wkpp(g, 1);
    EXPECT_DOUBLE_EQ(p.value, 6);
    g.sinks_need_candidates = false;
    EXPECT_DOUBLE_EQ(solve_wkpp(g, 1).value, 8);
}

TEST(Wkpp, MatchesEnumeration) {
    fx::rng_t rng(3);
    for (int it = 0; it < 100; ++it) {
        contact_graph g = fx::random_dag(rng, fx::uniform(rng, 1, 8), 4);
        int k = fx::uniform(rng, 0, 3);
        path_packing p = solve_wkpp(g, k);
        EXPECT_EQ(validate_packing(g, p), "");
        EXPECT_LE(static_cast<int>(p.paths.size()), k);
        EXPECT_NEAR(p.value, brute_force_path_packing(g, k).value, 1e-9) << it;
    }
}

TEST(Wmatpp, SingleVertex) {
    contact_graph g;
    g.vertices = {vert(1, 2, {0})};
    instance inst = fx::line_instance({0}, {1}, partition_matroid{{0}, {1}}, 1);
    path_packing p = solve_wmatpp(g, constraint_oracle(inst));
    ASSERT_EQ(p.paths.size(), 1u);
    EXPECT_EQ(p.sink_facility, std::vector<int>{0});
}

TEST(Wmatpp, SharedFacilityCap) {
    contact_graph g;
    g.vertices = {vert(1, 2, {0}), vert(1, 5, {0})};
    instance inst = fx::line_instance({0, 1}, {1, 1}, partition_matroid{{0, 0}, {1}}, 1);
    path_packing p = solve_wmatpp(g, constraint_oracle(inst));
    EXPECT_DOUBLE_EQ(p.value, 5);
    ASSERT_EQ(p.paths.size(), 1u);
    EXPECT_EQ(p.paths[0], std::vector<int>{1});
}

TEST(Wmatpp, ZeroCaps) {
    contact_graph g = chain();
    instance inst = fx::line_instance({0, 1, 2}, {1, 1, 1}, partition_matroid{{0, 0, 1}, {0, 0}}, 1);
    EXPECT_TRUE(solve_wmatpp(g, constraint_oracle(inst)).paths.empty());
}

TEST(Wmatpp, GeneralMatroidMatchesEnumeration) {
    fx::rng_t rng(8);
    for (int it = 0; it < 60; ++it) {
        generation_options opt;
        opt.constraint = it % 2 ? constraint_kind::matroid : constraint_kind::partition;
        instance inst = generate_instance(rng(), 5, "uniform-radii", opt);
        contact_graph g = fx::random_dag(rng, fx::uniform(rng, 1, 7), 5);
        constraint_oracle oracle(inst);
        path_packing p = solve_wmatpp(g, oracle);
        EXPECT_EQ(validate_packing(g, p), "");
        std::vector<int> sinks = p.sink_facility;
        EXPECT_TRUE(oracle.feasible(sinks));
        EXPECT_NEAR(p.value, brute_force_path_packing(g, oracle).value, 1e-9) << it;
    }
}

TEST(Wnappp, SingleVertexBudget) {
    contact_graph g;
    g.kind = contact_kind::forest;
    g.vertices = {vert(1, 3, {0})};
    for (auto mode : {dp_index::value, dp_index::weight}) {
        EXPECT_DOUBLE_EQ(solve_wnappp_dp(g, {2}, 1, mode).value, 0);
        EXPECT_TRUE(solve_wnappp_dp(g, {2}, 1, mode).paths.empty());
        EXPECT_DOUBLE_EQ(solve_wnappp_dp(g, {2}, 2, mode).value, 3);
    }
}

TEST(Wnappp, Star) {
    contact_graph g = star();
    for (auto mode : {dp_index::value, dp_index::weight}) {
        path_packing p = solve_wnappp_dp(g, {5, 1, 1}, 2, mode);
        EXPECT_DOUBLE_EQ(p.value, 9);
        EXPECT_EQ(p.paths.size(), 2u);
        EXPECT_EQ(validate_packing(g, p), "");
        long long w = 0;
        for (int f : p.sink_facility) {
            w += std::vector<long long>{5, 1, 1}[f];
        }
        EXPECT_EQ(w, 2);
    }
}

TEST(Wnappp, MatchesEnumeration) {
    fx::rng_t rng(12);
    for (int it = 0; it < 100; ++it) {
        contact_graph g = fx::random_forest(rng, fx::uniform(rng, 1, 9), 4);
        std::vector<long long> w(4);
        for (auto& x : w) {
            x = fx::uniform(rng, 0, 4);
        }
        long long budget = fx::uniform(rng, 0, 8);
        double ref = brute_force_path_packing(g, w, budget).value;
        for (auto mode : {dp_index::value, dp_index::weight}) {
            path_packing p = solve_wnappp_dp(g, w, budget, mode);
            EXPECT_EQ(validate_packing(g, p), "");
            EXPECT_NEAR(p.value, ref, 1e-9) << it;
        }
    }
}

TEST(ExtractCenters, Rules) {
    instance inst = fx::line_instance({0, 5}, {1, 1}, cardinality{2}, 2);
    contact_graph g;
    g.vertices = {vert(1, 1, {0}), vert(1, 1, {1})};
    g.vertices[0].point = 0;
    g.vertices[1].point = 1;
    path_packing p;
    p.paths = {{0}};
    EXPECT_EQ(extract_centers(p, g, inst, center_rule::center_sink), std::vector<int>{0});
    p.paths = {{0}, {1}};
    EXPECT_EQ(extract_centers(p, g, inst, center_rule::facility_near_sink).size(), 2u);

    instance sup = fx::line_supplier({0}, {0.5}, {1}, cardinality{1}, 1);
    contact_graph h;
    h.vertices = {vert(1, 1, {0})};
    h.vertices[0].point = 0;
    path_packing q;
    q.paths = {{0}};
    EXPECT_EQ(extract_centers(q, h, sup, center_rule::facility_near_sink), std::vector<int>{0});
    EXPECT_THROW(extract_centers(q, h, sup, center_rule::center_sink), error);
}
